#include "weylforge/linsolve.hpp"

#include "weylforge/error.hpp"

namespace weylforge {

std::vector<std::optional<std::vector<Scalar>>> solve_linear_systems(
    const std::vector<SparseRow>& augmented, std::size_t columns, std::size_t rhs_count,
    FieldCtx ctx) {
  const std::size_t width = columns + rhs_count;
  std::vector<bool> consistent(rhs_count, true);
  std::map<std::size_t, SparseRow> pivots;  // pivot column -> normalized row

  for (const SparseRow& input : augmented) {
    SparseRow row;
    for (const auto& [c, v] : input) {
      if (c >= width) throw InvalidArgument("column index out of range");
      if (v.ctx() != ctx) throw Mismatch("linear system mixes coefficient fields");
      if (!v.is_zero()) row.emplace(c, v);
    }
    while (true) {
      std::optional<std::size_t> hit;
      for (const auto& [c, v] : row) {
        if (c >= columns) break;
        if (pivots.count(c)) {
          hit = c;
          break;
        }
      }
      if (!hit) break;
      const Scalar factor = row.at(*hit);
      for (const auto& [c, v] : pivots.at(*hit)) {
        auto [it, inserted] = row.try_emplace(c, -(factor * v));
        if (!inserted) {
          it->second -= factor * v;
          if (it->second.is_zero()) row.erase(it);
        }
      }
    }
    if (row.empty()) continue;
    const std::size_t lead = row.begin()->first;
    if (lead >= columns) {
      for (const auto& [c, v] : row) consistent[c - columns] = false;
      continue;
    }
    const Scalar inv = row.begin()->second.inv();
    for (auto& [c, v] : row) v *= inv;
    pivots.emplace(lead, std::move(row));
  }

  std::vector<std::optional<std::vector<Scalar>>> out(rhs_count);
  for (std::size_t k = 0; k < rhs_count; ++k) {
    if (!consistent[k]) continue;
    std::vector<Scalar> x(columns, Scalar::zero(ctx));
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      const std::size_t col = it->first;
      Scalar value = Scalar::zero(ctx);
      for (const auto& [c, v] : it->second) {
        if (c == columns + k) {
          value += v;
        } else if (c < columns && c != col) {
          value -= v * x[c];
        }
      }
      x[col] = value;
    }
    out[k] = std::move(x);
  }
  return out;
}

std::optional<std::vector<Scalar>> solve_linear_system(const std::vector<SparseRow>& rows,
                                                       const std::vector<Scalar>& rhs,
                                                       std::size_t columns, FieldCtx ctx) {
  if (rows.size() != rhs.size()) throw InvalidArgument("right-hand side length mismatch");
  std::vector<SparseRow> augmented(rows);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, v] : rows[r]) {
      if (c >= columns) throw InvalidArgument("column index out of range");
    }
    if (!rhs[r].is_zero()) augmented[r].emplace(columns, rhs[r]);
  }
  return solve_linear_systems(augmented, columns, 1, ctx).front();
}

}  // namespace weylforge
