#include "doctest.h"
#include "qfisim/protocol.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace qfisim;

namespace {

constexpr double kPi = std::numbers::pi;

RealVector p1(double a) {
  RealVector v(1);
  v << a;
  return v;
}

RealVector p2(double a, double b) {
  RealVector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("measure_sah and measure_variance on eigenstates and superpositions") {
  const ModelSpec spec = TfimModel{1.0, 3};
  const auto h = hamiltonian(spec, p1(0.7));
  const auto s = eigensystem(h);
  const double e0 = s.energies(0);

  for (int n : {0, 2, 5}) {
    const StateVector psi(s.eigenvectors.col(n));
    const double gap = s.energies(n) - e0;
    CHECK(measure_sah(h, e0, psi) == doctest::Approx(gap * gap).epsilon(1e-10));
    CHECK(measure_variance(h, psi) == doctest::Approx(0.0));
  }

  // For any state, sah - variance = (<H> - E0)^2.
  std::mt19937 rng(42);
  std::normal_distribution<double> dist;
  Vector raw(h.dim());
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw(i) = Complex(dist(rng), dist(rng));
  const StateVector psi = StateVector::normalized(raw);
  const double mean = expectation(h, psi);
  CHECK(measure_sah(h, e0, psi) - measure_variance(h, psi) ==
        doctest::Approx((mean - e0) * (mean - e0)).epsilon(1e-9));

  CHECK_THROWS_AS(measure_sah(hamiltonian(spec, p1(0.7)), 0.0,
                              StateVector::normalized(Vector::Ones(4))),
                  DimensionMismatchError);
}

TEST_CASE("sah measurement is gauge invariant under H -> H + c") {
  const ModelSpec spec = TwoLevelModel{1.0};
  const auto h = hamiltonian(spec, p2(0.8, 0.3));
  const auto g = ground_state(h, 1e-8);
  const auto excited = eigensystem(h);
  Vector mix = 0.8 * excited.eigenvectors.col(0) + 0.6 * excited.eigenvectors.col(1);
  const StateVector psi = StateVector::normalized(mix);
  const double base = measure_sah(h, g.energy, psi);
  for (double c : {-3.0, 1.5, 100.0})
    CHECK(measure_sah(h.shifted(c), g.energy + c, psi) ==
          doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("two-level extraction reproduces the oracle at small velocity") {
  const auto est = extract_qfi(TwoLevelModel{1.0}, p2(kPi / 3.0, 0.0), 0, 0.5, 0.02);
  REQUIRE(est.oracle.has_value());
  CHECK(*est.oracle == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(est.rel_error.has_value());
  CHECK(*est.rel_error < 0.02);  // residual is first order in v
  CHECK(est.value == doctest::Approx(4.0 * est.sah / (0.02 * 0.02)));
  CHECK(est.excited_population < 0.01);
  CHECK_FALSE(est.adiabatic_warning);
  // The residual sah - variance = (<H> - E0)^2 is higher order in v.
  CHECK(std::abs(est.sah - est.variance) < 1e-4 * est.sah);
}

TEST_CASE("extraction argument validation") {
  CHECK_THROWS_AS(extract_qfi(TwoLevelModel{1.0}, p2(1.0, 0.0), 0, 0.0, 0.02),
                  InvalidArgumentError);
  CHECK_THROWS_AS(extract_qfi(TwoLevelModel{1.0}, p2(1.0, 0.0), 0, 0.5, -0.1),
                  InvalidArgumentError);
  CHECK_THROWS_AS(extract_qfi(TwoLevelModel{1.0}, p2(1.0, 0.0), 3, 0.5, 0.1),
                  InvalidArgumentError);
  // Target sitting on a level crossing is refused.
  CHECK_THROWS_AS(extract_qfi(HeisenbergModel{-0.5, 4}, p1(kPi / 2.0), 0, 0.3, 0.05),
                  DegenerateGroundStateError);
}

TEST_CASE("step-doubling check passes and records the change for a smooth run") {
  ExtractOptions opts;
  opts.doubling_check = true;
  opts.evolution.steps = 400;
  const auto est = extract_qfi(TwoLevelModel{1.0}, p2(1.0, 0.0), 0, 0.4, 0.05, opts);
  REQUIRE(est.step_doubling_change.has_value());
  CHECK(*est.step_doubling_change < 1e-3);
}

TEST_CASE("velocity sweep: quadratic sah scaling and v -> 0 extrapolation") {
  const std::vector<double> velocities = {0.08, 0.04, 0.02};
  const auto sweep =
      extract_qfi_sweep(TwoLevelModel{1.0}, p2(kPi / 3.0, 0.0), 0, 0.5, velocities);
  REQUIRE(sweep.estimates.size() == 3);
  // sah grows with v (leading order v^2 F / 4).
  CHECK(sweep.sahs[0] > sweep.sahs[1]);
  CHECK(sweep.sahs[1] > sweep.sahs[2]);
  CHECK(sweep.slope_loglog == doctest::Approx(2.0).epsilon(0.05));
  CHECK(sweep.extrapolated == doctest::Approx(1.0).epsilon(5e-3));
  CHECK_THROWS_AS(
      extract_qfi_sweep(TwoLevelModel{1.0}, p2(1.0, 0.0), 0, 0.5, {0.1, 0.05}),
      InvalidArgumentError);
}

TEST_CASE("qfim sum extraction matches the oracle block sum and is pair symmetric") {
  const double delta = 0.1, v = 0.002;
  const RealVector target = p2(0.75 * kPi, 0.5 * kPi);
  const RealVector start = p2(target(0) - delta, target(1) - delta);

  const double sum01 = extract_qfim_sum(TwoParamModel{}, start, {0, 1}, delta, v);
  const double sum10 = extract_qfim_sum(TwoParamModel{}, start, {1, 0}, delta, v);
  CHECK(sum01 == doctest::Approx(sum10).epsilon(1e-6));

  const auto f = qfim_ground(TwoParamModel{}, target, {0, 1});
  const double expected = f.values(0, 0) + f.values(1, 1) + 2.0 * f.values(0, 1);
  CHECK(sum01 == doctest::Approx(expected).epsilon(0.02));

  const double off = qfim_offdiagonal(sum01, f.values(0, 0), f.values(1, 1));
  CHECK(off == doctest::Approx(f.values(0, 1)).epsilon(0.1));

  CHECK_THROWS_AS(extract_qfim_sum(TwoParamModel{}, start, {0, 0}, delta, v),
                  InvalidArgumentError);
  CHECK_THROWS_AS(extract_qfim_sum(TwoParamModel{}, start, {0, 1}, 0.0, v),
                  InvalidArgumentError);
}

TEST_CASE("TFIM extraction stays within a few percent of the analytic curve") {
  ExtractOptions opts;
  opts.evolution.steps = 800;
  const auto est = extract_qfi(TfimModel{10.0, 4}, p1(5.0), 0, 2.0, 0.5, opts);
  REQUIRE(est.oracle.has_value());
  CHECK(*est.oracle == doctest::Approx(tfim_qfi_analytic(10.0, 5.0, 4)).epsilon(1e-10));
  REQUIRE(est.rel_error.has_value());
  CHECK(*est.rel_error < 0.05);
}

TEST_CASE("Heisenberg crossing scan localizes both ground-state changeovers") {
  // Grid chosen so neither crossing lands exactly on a grid point.
  std::vector<double> grid;
  for (double j = -0.600; j < -0.10 + 1e-12; j += 0.055) grid.push_back(j);
  const auto scan = scan_ground_crossings(HeisenbergModel{0.0, 4}, grid, kPi / 2.0);
  REQUIRE(scan.gaps.size() == grid.size());
  REQUIRE(scan.overlaps.size() == grid.size() - 1);
  CHECK(scan.degenerate_points.empty());
  REQUIRE(scan.crossings.size() == 2);
  CHECK(scan.crossings[0].first < -0.5);
  CHECK(scan.crossings[0].second > -0.5);
  CHECK(scan.crossings[1].first < -0.25);
  CHECK(scan.crossings[1].second > -0.25);

  // A grid point landing on the exact crossing is recorded, not thrown.
  const auto exact = scan_ground_crossings(HeisenbergModel{0.0, 4},
                                           {-0.55, -0.5, -0.45}, kPi / 2.0);
  REQUIRE(exact.degenerate_points.size() == 1);
  CHECK(exact.degenerate_points[0] == doctest::Approx(-0.5));
  REQUIRE(exact.crossings.size() == 1);
  CHECK(exact.crossings[0].first == doctest::Approx(-0.5));
  CHECK(exact.crossings[0].second == doctest::Approx(-0.5));
}
