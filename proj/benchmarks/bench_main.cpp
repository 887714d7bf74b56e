#include <benchmark/benchmark.h>

#include <cmath>

#include "ldx/affine.hpp"
#include "ldx/density_family.hpp"
#include "ldx/heston.hpp"
#include "ldx/laplace.hpp"
#include "ldx/legendre.hpp"
#include "ldx/monte_carlo.hpp"

namespace {

const ldx::HestonParams kSkewed{0.03, -0.5, 0.2, 1.5, 0.6, -0.5, 0.1, 0.04};

void BM_LaplaceQuadrature(benchmark::State& state) {
  const ldx::LaplaceProblem p{
      ldx::SmoothScalarFn::constant(1.0),
      ldx::SmoothScalarFn::from_generic([](auto z) { return z * z * 0.5 + z * z * z / 6.0; }), -2, 6, 0};
  const double eps = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ldx::quadrature_reference_scaled(p, eps));
}
BENCHMARK(BM_LaplaceQuadrature)->Arg(4)->Arg(10);

void BM_RateDataBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ldx::RateData(ldx::heston_cgf(kSkewed)));
}
BENCHMARK(BM_RateDataBuild);

void BM_Ustar(benchmark::State& state) {
  const ldx::RateData rd(ldx::heston_cgf(kSkewed));
  double z = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rd.ustar(z));
    z = z > 0.5 ? -0.5 : z + 1e-3;
  }
}
BENCHMARK(BM_Ustar);

void BM_HestonClosedForms(benchmark::State& state) {
  double u = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ldx::lambda0(kSkewed, u) + ldx::lambda1(kSkewed, u) +
                             ldx::lambda2(kSkewed, u));
    u = u > 1.0 ? -1.0 : u + 1e-3;
  }
}
BENCHMARK(BM_HestonClosedForms);

void BM_FamilyC1(benchmark::State& state) {
  const ldx::EquivalentFamily fam{ldx::RateData(ldx::heston_cgf(kSkewed))};
  double z = -0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fam.c1(z));
    z = z > 0.3 ? -0.3 : z + 1e-3;
  }
}
BENCHMARK(BM_FamilyC1);

void BM_RiccatiSolve(benchmark::State& state) {
  const auto md = ldx::heston_embedding(kSkewed);
  const Eigen::VectorXd u = (Eigen::VectorXd(2) << 0.0, -0.5).finished();
  for (auto _ : state) benchmark::DoNotOptimize(ldx::solve_riccati(md, u, 1.0).phi);
}
BENCHMARK(BM_RiccatiSolve);

void BM_RiccatiSeries(benchmark::State& state) {
  const auto md = ldx::heston_embedding(kSkewed);
  const Eigen::VectorXd u = (Eigen::VectorXd(2) << 0.0, -0.5).finished();
  for (auto _ : state) benchmark::DoNotOptimize(ldx::series(md, u, 1.0, 2).phi_coeffs[2]);
}
BENCHMARK(BM_RiccatiSeries)->Unit(benchmark::kMillisecond);

void BM_SimulateHeston(benchmark::State& state) {
  ldx::MCConfig cfg;
  cfg.n_paths = state.range(0);
  cfg.n_steps = 200;
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ldx::simulate_heston(ldx::HestonParams{}, 0.1, cfg).data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateHeston)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
