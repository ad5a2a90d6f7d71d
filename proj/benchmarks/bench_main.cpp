#include "hpoincare/bessel.hpp"
#include "hpoincare/kloosterman.hpp"
#include "hpoincare/poincare.hpp"

#include <benchmark/benchmark.h>

using namespace hpoincare;

namespace {

FElement delta_inverse(const QuadraticField& F) { return FElement(F.one()) / FElement(*F.delta()); }

// S(delta^{-1}, delta^{-1} (1 + w); q) for q = 2^e.
void BM_KloostermanExact(benchmark::State& state) {
  auto F = QuadraticField::make(5);
  FElement di = delta_inverse(F);
  OElement q = F.integer(2).pow(static_cast<unsigned>(state.range(0)));
  auto query = principal_query(di, di * FElement(F.elem(1, 1)), q);
  KloostermanOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_exact(F, query, opt));
  state.counters["N(q)"] = mpz_class(abs(q.norm())).get_d();
}
BENCHMARK(BM_KloostermanExact)->DenseRange(2, 6, 2);

void BM_KloostermanFloat(benchmark::State& state) {
  auto F = QuadraticField::make(5);
  FElement di = delta_inverse(F);
  OElement q = F.integer(2).pow(static_cast<unsigned>(state.range(0)));
  auto query = principal_query(di, di * FElement(F.elem(1, 1)), q);
  KloostermanOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman_float(F, query, opt));
}
BENCHMARK(BM_KloostermanFloat)->DenseRange(2, 6, 2);

void BM_Bessel(benchmark::State& state) {
  Interval x = Interval::from_double(static_cast<double>(state.range(1)) + 0.37);
  for (auto _ : state) benchmark::DoNotOptimize(besselJ(state.range(0), x));
}
BENCHMARK(BM_Bessel)->ArgsProduct({{3, 11, 19}, {1, 10, 50}});

void BM_Coefficient(benchmark::State& state) {
  auto F = QuadraticField::make(5);
  Ideal O = Ideal::unit(F.basis());
  PoincareParams P = make_params(F, 8, FractionalIdeal(O), O);
  FElement one(F.one());
  Cutoffs cut{static_cast<std::uint64_t>(state.range(0)), 3, mpq_class(1, 2)};
  CoefficientOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(coefficient(P, one, one, cut, opt));
}
BENCHMARK(BM_Coefficient)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

// The packaged benchmark_main archive is LTO bytecode from another compiler
// release, so the main function is defined here.
BENCHMARK_MAIN();
