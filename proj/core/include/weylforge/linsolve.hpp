#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "weylforge/scalar.hpp"

namespace weylforge {

/// Sparse row: column index -> nonzero coefficient.
using SparseRow = std::map<std::size_t, Scalar>;

/// Exact solve of A x = b_k for several right-hand sides at once. Each row of
/// `augmented` holds the coefficients of A in columns [0, columns) and the
/// entries of b_0, b_1, ... in the columns after that. Rows are eliminated in
/// input order, each taking its first remaining column as pivot; free
/// variables are set to zero. A system without solution yields nullopt.
std::vector<std::optional<std::vector<Scalar>>> solve_linear_systems(
    const std::vector<SparseRow>& augmented, std::size_t columns, std::size_t rhs_count,
    FieldCtx ctx);

std::optional<std::vector<Scalar>> solve_linear_system(const std::vector<SparseRow>& rows,
                                                       const std::vector<Scalar>& rhs,
                                                       std::size_t columns, FieldCtx ctx);

}  // namespace weylforge
