#include <benchmark/benchmark.h>

#include <random>

#include "lie_cubics/integrators.hpp"
#include "lie_cubics/planner.hpp"

namespace {

using namespace lie_cubics;

HOHPState sample_state() {
  return HOHPState{cay(AlgebraVector(0.3, -0.8, 0.4)), AlgebraVector(-6.0, 1.0, 0.0),
                   CoVector(0.0, 36.0, 0.0), CoVector(0.0, 0.0, 6.0)};
}

void BM_cay(benchmark::State& state) {
  const AlgebraVector x(0.12, -0.7, 0.35);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cay(x));
  }
}
BENCHMARK(BM_cay);

void BM_cay_by_solve(benchmark::State& state) {
  const AlgebraVector x(0.12, -0.7, 0.35);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cay_by_solve(x));
  }
}
BENCHMARK(BM_cay_by_solve);

void BM_dcay_star(benchmark::State& state) {
  const AlgebraVector x(0.12, -0.7, 0.35);
  const CoVector m(3.0, -1.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcay_star(x, m));
  }
}
BENCHMARK(BM_dcay_star);

void BM_euler_step(benchmark::State& state) {
  StepParams p;
  p.h = 1e-3;
  HOHPState s = sample_state();
  for (auto _ : state) {
    s = euler_step(s, p);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_euler_step);

void BM_sv_step(benchmark::State& state) {
  StepParams p;
  p.h = 1e-3;
  HOHPState s = sample_state();
  for (auto _ : state) {
    s = sv_step(s, p);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_sv_step);

PlanningProblem sphere_problem() {
  PlanningProblem prob;
  prob.template_point = Vec3(1, 0, 0);
  prob.sigma = 0.1;
  prob.xi0 = AlgebraVector(0, 0, 2);
  prob.h = 0.002;
  prob.steps = 500;
  prob.targets = {Target{100, Vec3(0, 1, 0)}, Target{300, Vec3(0, 0, 1)},
                  Target{500, Vec3(1, 0, 0)}};
  return prob;
}

void BM_forward_shoot(benchmark::State& state) {
  const PlanningProblem prob = sphere_problem();
  const CoVector mu0(0.1, 0.2, -0.3);
  const CoVector nu0(0.0, 0.1, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_shoot(prob, mu0, nu0));
  }
}
BENCHMARK(BM_forward_shoot);

void BM_backward_adjoint(benchmark::State& state) {
  const PlanningProblem prob = sphere_problem();
  const auto shot = forward_shoot(prob, CoVector(0.1, 0.2, -0.3), CoVector(0.0, 0.1, 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(backward_adjoint(prob, shot.trajectory));
  }
}
BENCHMARK(BM_backward_adjoint);

}  // namespace

BENCHMARK_MAIN();
