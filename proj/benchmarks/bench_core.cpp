#include <benchmark/benchmark.h>

#include "dfforge/catalog.hpp"
#include "dfforge/df_estimator.hpp"
#include "dfforge/hessian_frame.hpp"
#include "dfforge/transport.hpp"
#include "dfforge/verify.hpp"
#include "dfforge/weight.hpp"

using namespace dfforge;

namespace {

const CPoint kPoint(cd(0.31, -0.22), cd(0.12, 0.05));

void BM_Jet2Exact(benchmark::State& st) {
  const CatalogEntry e = make_entry("exp_flat");
  for (auto _ : st) benchmark::DoNotOptimize(jet2(e.rho.field, kPoint));
}
BENCHMARK(BM_Jet2Exact);

void BM_Jet2Numeric(benchmark::State& st) {
  const CatalogEntry e = make_entry("exp_flat");
  DiffScheme s;
  s.mode = DiffScheme::Mode::Numeric;
  for (auto _ : st) benchmark::DoNotOptimize(jet2(e.rho.field, kPoint, s));
}
BENCHMARK(BM_Jet2Numeric);

void BM_ThirdDerivative(benchmark::State& st) {
  const CatalogEntry e = make_entry("exp_flat");
  for (auto _ : st) benchmark::DoNotOptimize(third_derivative(e.rho.field, kPoint, {WDir::w, WDir::w, WDir::wb}));
}
BENCHMARK(BM_ThirdDerivative);

void BM_CandidateJet(benchmark::State& st) {
  const CatalogEntry e = make_entry("exp_flat");
  const WeightedCandidate wc = build_candidate(e.rho.field, 1.0, 0.5, 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(jet2(wc.candidate, kPoint));
}
BENCHMARK(BM_CandidateJet);

void BM_PsdEtaMax(benchmark::State& st) {
  const CatalogEntry e = make_entry("worm");
  const auto pts = interior_points(e.rho, 64, 1, 1e-3);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(psd_eta_max(e.rho, pts[i++ % pts.size()]));
}
BENCHMARK(BM_PsdEtaMax);

void BM_BoundarySample(benchmark::State& st) {
  const CatalogEntry e = make_entry("exp_flat");
  for (auto _ : st) benchmark::DoNotOptimize(boundary_sample(e.rho, static_cast<std::size_t>(st.range(0)), 1));
}
BENCHMARK(BM_BoundarySample)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_LeviFlatScan(benchmark::State& st) {
  const CatalogEntry e = make_entry("exp_flat");
  LeviScanOptions o;
  o.n_samples = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(levi_flat_scan(e.rho, o));
}
BENCHMARK(BM_LeviFlatScan)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EstimateExponent(benchmark::State& st) {
  const CatalogEntry e = make_entry("worm");
  CollarSpec spec;
  spec.n_boundary = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(estimate_exponent(e.rho, spec));
}
BENCHMARK(BM_EstimateExponent)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_TransportSolve(benchmark::State& st) {
  const CatalogEntry e = make_entry("exp_flat");
  const DefiningFunction rho = perturbed(e.rho, 0.1, 'w');
  const Curve c = flat_circle(e);
  for (auto _ : st) benchmark::DoNotOptimize(solve_on_curve(c, rho, obstruction_rhs_fn(rho)));
}
BENCHMARK(BM_TransportSolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
