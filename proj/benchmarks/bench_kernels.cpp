#include <benchmark/benchmark.h>

#include "weylforge/charp.hpp"
#include "weylforge/groebner.hpp"
#include "weylforge/text.hpp"

using namespace weylforge;

namespace {

void BM_WeylMul(benchmark::State& state) {
  const auto e = static_cast<unsigned>(state.range(0));
  const FieldCtx qq = FieldCtx::rationals();
  const WeylElement a = parse_weyl("d1 + x1^2 + x2*d1*d2 - 3", 2, qq).pow(e);
  const WeylElement b = parse_weyl("x1 + d2^2 - 1/2*x2", 2, qq).pow(e);
  for (auto _ : state) benchmark::DoNotOptimize(weyl_mul(a, b));
}
BENCHMARK(BM_WeylMul)->Arg(1)->Arg(2)->Arg(4);

void BM_PthPower(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const FieldCtx fp = FieldCtx::prime_field(p);
  const WeylElement a = parse_weyl("d1 + x1^2 + x1*d1", 1, fp);
  for (auto _ : state) benchmark::DoNotOptimize(a.pow(p));
}
BENCHMARK(BM_PthPower)->Arg(5)->Arg(11)->Arg(29);

void BM_TwistedCubic(benchmark::State& state) {
  const FieldCtx qq = FieldCtx::rationals();
  const RingDescriptor ring = RingDescriptor::poly(3, qq);
  const std::vector<Poly> f{parse_poly("x2 - x1^2", ring), parse_poly("x3 - x1^3", ring)};
  for (auto _ : state) benchmark::DoNotOptimize(buchberger(f, TermOrder::lex(3)));
}
BENCHMARK(BM_TwistedCubic);

void BM_RestrictCenter(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  const FieldCtx fp = FieldCtx::prime_field(p);
  const WeylEndo shear({parse_weyl("x1 + d1^2", 1, fp)}, {parse_weyl("d1", 1, fp)});
  const WeylEndo twist({parse_weyl("x1", 1, fp)}, {parse_weyl("d1 + x1^3", 1, fp)});
  const WeylEndo phi = compose_endo(twist, shear);
  for (auto _ : state) benchmark::DoNotOptimize(restrict_center(phi));
}
BENCHMARK(BM_RestrictCenter)->Arg(7)->Arg(13);

}  // namespace

BENCHMARK_MAIN();
