#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lie_cubics/diagnostics.hpp"
#include "lie_cubics/integrators.hpp"
#include "support/oracles.hpp"

using namespace lie_cubics;

namespace {

StepParams params(double h) {
  StepParams p;
  p.h = h;
  return p;
}

}  // namespace

TEST_CASE("StepParams validation") {
  CHECK_THROWS_AS(euler_step(HOHPState{}, params(0.0)), Error);
  StepParams bad = params(0.1);
  bad.fp_tol = 0.0;
  CHECK_THROWS_AS(sv_step(HOHPState{}, bad), Error);
  bad = params(0.1);
  bad.fp_max_iter = 0;
  CHECK_THROWS_AS(sv_step(HOHPState{}, bad), Error);
}

TEST_CASE("zero-momentum states rotate uniformly") {
  oracle::Rng rng(31);
  const double h = 0.05;
  HOHPState s{rng.rotation(), AlgebraVector(rng.vec(3.0)), CoVector(), CoVector()};

  for (auto scheme : {Scheme::euler, Scheme::sv}) {
    const HOHPState n = step(scheme, s, params(h));
    CHECK((n.xi - s.xi).norm() == 0.0);
    CHECK(n.mu.norm() == 0.0);
    CHECK(n.nu.norm() == 0.0);
    CHECK((n.g.matrix() - (s.g * cay(h * s.xi)).matrix()).norm() <= 1e-15);
  }
}

TEST_CASE("euler velocity update reads off nu") {
  const CoVector nu0(0.4, -0.2, 0.7);
  HOHPState s{GroupElement::Identity(), AlgebraVector(), CoVector(), nu0};
  const double h = 0.01;
  const HOHPState n = euler_step(s, params(h));
  CHECK((n.xi.v - h * nu0.m).norm() == 0.0);
}

TEST_CASE("euler_step agrees with the extended-precision transcription") {
  oracle::Rng rng(32);
  for (int i = 0; i < 25; ++i) {
    const HOHPState s = rng.state(4.0, 4.0);
    const oracle::StateL ref = oracle::euler_step(oracle::from_state(s), 1e-2L);
    const HOHPState n = euler_step(s, params(1e-2));
    CHECK(oracle::distance(ref, n) <= 1e-13);
  }
}

TEST_CASE("sv_step agrees with the extended-precision transcription") {
  SUBCASE("periodic initial data, one step") {
    const HOHPState s = oracle::periodic_state();
    const double h = 2.0 * std::numbers::pi / 1000.0;
    StepParams p = params(h);
    p.fp_tol = 1e-15;
    p.fp_max_iter = 200;
    const oracle::StateL ref = oracle::sv_step(oracle::from_state(s), static_cast<oracle::Ld>(h));
    CHECK(oracle::distance(ref, sv_step(s, p)) <= 1e-12);
  }

  SUBCASE("random states") {
    oracle::Rng rng(33);
    for (int i = 0; i < 25; ++i) {
      const HOHPState s = rng.state(4.0, 4.0);
      StepParams p = params(1e-2);
      p.fp_tol = 1e-15;
      p.fp_max_iter = 200;
      const oracle::StateL ref = oracle::sv_step(oracle::from_state(s), 1e-2L);
      CHECK(oracle::distance(ref, sv_step(s, p)) <= 1e-12);
    }
  }
}

TEST_CASE("sv_step reports non-convergence instead of silently degrading") {
  HOHPState s{GroupElement::Identity(), AlgebraVector(1, 0, 0), CoVector(0, 5, 0),
              CoVector(0, 0, 5)};
  StepParams p = params(0.1);
  p.fp_max_iter = 1;  // starves the iteration; signals too-large h
  CHECK_THROWS_AS(sv_step(s, p), NonConvergence);
  try {
    sv_step(s, p);
  } catch (const NonConvergence& e) {
    CHECK(e.iterations == 1);
    CHECK(e.residual > p.fp_tol);
    CHECK(e.step_index == -1);
  }
}

TEST_CASE("flow basics") {
  oracle::Rng rng(34);
  const HOHPState s0 = rng.state();
  const StepParams p = params(5e-3);

  SUBCASE("n = 0") {
    const auto traj = flow(s0, p, 0, Scheme::euler);
    CHECK(traj.size() == 1);
    CHECK(state_distance(traj[0], s0) == 0.0);
  }

  SUBCASE("semigroup property") {
    for (auto scheme : {Scheme::euler, Scheme::sv}) {
      const auto whole = flow(s0, p, 7, scheme);
      const auto head = flow(s0, p, 3, scheme);
      const auto tail = flow(head.back(), p, 4, scheme);
      CHECK(whole.size() == 8);
      CHECK(state_distance(whole.back(), tail.back()) <= 1e-14);
    }
  }

  SUBCASE("non-convergence carries the failing step index") {
    StepParams starved = p;
    starved.fp_max_iter = 1;
    HOHPState s = s0;
    s.nu = CoVector(1.0, 0.0, 0.0);
    try {
      flow(s, starved, 5, Scheme::sv);
      CHECK(false);
    } catch (const NonConvergence& e) {
      CHECK(e.step_index == 0);
    }
  }
}

TEST_CASE("discrete momentum is conserved to round-off over long runs") {
  oracle::Rng rng(35);
  for (auto scheme : {Scheme::euler, Scheme::sv}) {
    HOHPState s = rng.state(3.0, 3.0);
    const CoVector j0 = momentum_map(s);
    const double scale = 1.0 + s.mu.norm();
    const StepParams p = params(1e-3);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
      s = step(scheme, s, p);
      worst = std::max(worst, (momentum_map(s) - j0).norm());
    }
    CHECK(worst <= 1e-11 * scale);
  }
}

TEST_CASE("steps commute with left translation") {
  oracle::Rng rng(36);
  const StepParams p = params(2e-2);
  for (int i = 0; i < 10; ++i) {
    const HOHPState s = rng.state();
    const GroupElement left = rng.rotation();
    for (auto scheme : {Scheme::euler, Scheme::sv}) {
      const HOHPState stepped = step(scheme, s, p);
      HOHPState translated = s;
      translated.g = left * s.g;
      const HOHPState out = step(scheme, translated, p);
      CHECK((out.xi - stepped.xi).norm() == 0.0);
      CHECK((out.mu - stepped.mu).norm() == 0.0);
      CHECK((out.nu - stepped.nu).norm() == 0.0);
      CHECK((out.g.matrix() - (left * stepped.g).matrix()).norm() <= 1e-13);
    }
  }
}

TEST_CASE("sv global error shrinks fourfold when the step halves") {
  const HOHPState s0 = oracle::periodic_state();
  const double T = 2.0 * std::numbers::pi;

  auto endpoint = [&](double h) {
    HOHPState s = s0;
    const auto n = static_cast<int>(std::llround(T / h));
    StepParams p = params(h);
    for (int k = 0; k < n; ++k) s = sv_step(s, p);
    return s;
  };

  const HOHPState ref = endpoint(T / 8000.0);
  const double e1 = state_distance(endpoint(T / 250.0), ref);
  const double e2 = state_distance(endpoint(T / 500.0), ref);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("the periodic trajectory closes after one period") {
  const double h = 2.0 * std::numbers::pi / 1000.0;
  const auto traj = flow(oracle::periodic_state(), StepParams{h}, 1000, Scheme::sv);
  const HOHPState& s0 = traj.front();
  const HOHPState& sN = traj.back();
  const double disc = (sN.g.matrix() - s0.g.matrix()).norm() + (sN.xi - s0.xi).norm();
  CHECK(disc <= 1e-2);  // second-order return defect at this step size
  CHECK((momentum_map(sN) - momentum_map(s0)).norm() <= 1e-11 * (1.0 + s0.mu.norm()));
}

TEST_CASE("hamiltonian oscillates without secular drift under sv") {
  StepParams p = params(2.0 * std::numbers::pi / 40.0);
  HOHPState s = oracle::periodic_state();
  const double h0 = hamiltonian(s);
  CHECK(h0 == doctest::Approx(54.0).epsilon(1e-14));
  double drift = 0.0;
  double one_step = 0.0;
  double prev = h0;
  for (int k = 0; k < 10000; ++k) {
    s = sv_step(s, p);
    const double hk = hamiltonian(s);
    drift = std::max(drift, std::abs(hk - h0));
    one_step = std::max(one_step, std::abs(hk - prev));
    prev = hk;
  }
  CHECK(drift < 10.0 * one_step);
}
