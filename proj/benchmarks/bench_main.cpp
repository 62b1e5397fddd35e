#include <benchmark/benchmark.h>

#include <random>

#include "snforge/backends.hpp"
#include "snforge/serialize.hpp"

using namespace snforge;

namespace {

const Field kQ = Field::rationals();

Poly random_poly(std::mt19937_64& rng, unsigned degree) {
  std::vector<long> c(degree + 1);
  for (auto& x : c) x = static_cast<long>(rng() % 19) - 9;
  c.back() = 1;
  return Poly::from_coefficients(kQ, c);
}

// (I + t e_ij) products in M_n(S), n = dim of r's matrix size.
TensorElement unipotent(const AlgebraPtr& r, std::size_t n, const RingPtr& s, const std::vector<RingElement>& ts) {
  TensorElement a = TensorElement::one(r, s);
  std::size_t k = 0;
  for (const auto& t : ts) {
    const std::size_t i = k % n, j = (k + 1) % n;
    a = a * (TensorElement::one(r, s) + TensorElement::pure(r, s, r->basis_vector(i * n + j), t));
    ++k;
  }
  return a;
}

void BM_PolyGcd(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto d = static_cast<unsigned>(state.range(0));
  const Poly g = random_poly(rng, d);
  const Poly a = g * random_poly(rng, d), b = g * random_poly(rng, d);
  for (auto _ : state) benchmark::DoNotOptimize(gcd(a, b));
}
BENCHMARK(BM_PolyGcd)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SolveFindimTruncated(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AlgebraPtr r = matrix_algebra(kQ, n);
  const RingPtr s = Ring::findim(truncated_polynomial_algebra(kQ, 3));
  const RingElement t = RingElement::findim(s, {FieldElement(kQ, 1L), FieldElement(kQ, 2L), FieldElement(kQ, -1L)});
  const HomSpec phi = require_hom(r, s, conjugation_images(unipotent(r, n, s, {t, t, t})));
  SolveRequest req;
  req.phi = phi;
  req.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_findim(req));
}
BENCHMARK(BM_SolveFindimTruncated)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SolveUfd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AlgebraPtr r = matrix_algebra(kQ, n);
  const RingPtr s = Ring::polynomial(kQ, 2);
  const RingElement t1 = io::parse_element(s, "x^2 - y"), t2 = io::parse_element(s, "x*y + 3");
  const HomSpec phi = require_hom(r, s, conjugation_images(unipotent(r, n, s, {t1, t2, t1})));
  SolveRequest req;
  req.phi = phi;
  req.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_ufd(req));
}
BENCHMARK(BM_SolveUfd)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SeriesSolve(benchmark::State& state) {
  const auto order = static_cast<std::size_t>(state.range(0));
  const AlgebraPtr r = matrix_algebra(kQ, 2);
  const RingPtr base = Ring::field(kQ);
  const RingPtr s = Ring::series(base, order);
  std::vector<RingElement> c(order, RingElement::zero(base));
  c[1 % order] = RingElement::one(base);
  const RingElement t = RingElement::series(s, c);
  const HomSpec phi = require_hom(r, s, conjugation_images(unipotent(r, 2, s, {t, t * t, t})));
  SolveRequest req;
  req.phi = phi;
  req.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_power_series(req));
}
BENCHMARK(BM_SeriesSolve)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Radical(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AlgebraPtr a = tensor_product(matrix_algebra(kQ, n), upper_triangular_algebra(kQ, 2));
  for (auto _ : state) benchmark::DoNotOptimize(jacobson_radical(*a));
}
BENCHMARK(BM_Radical)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
