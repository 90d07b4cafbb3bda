#include "doctest.h"
#include "qfisim/models.hpp"

#include <cmath>
#include <numbers>

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

// Central finite difference computed on the test side, step independent of
// the library's internal choice.
Matrix fd_dh(const ModelSpec& spec, const RealVector& params, int which, double step) {
  RealVector up = params, down = params;
  up(which) += step;
  down(which) -= step;
  return (hamiltonian(spec, up).matrix() - hamiltonian(spec, down).matrix()) / (2.0 * step);
}

}  // namespace

TEST_CASE("parameter names and counts") {
  CHECK(param_names(TwoLevelModel{}) == std::vector<std::string>{"theta", "phi"});
  CHECK(param_names(TwoParamModel{}) == std::vector<std::string>{"x", "y"});
  CHECK(param_names(nv_default()) == std::vector<std::string>{"theta", "phi"});
  CHECK(param_names(TfimModel{1.0, 4}) == std::vector<std::string>{"B"});
  CHECK(param_names(HeisenbergModel{1.0, 4}) == std::vector<std::string>{"theta"});
  CHECK(param_count(TfimModel{1.0, 4}) == 1);
  CHECK(param_count(TwoLevelModel{}) == 2);
  CHECK_THROWS_AS(hamiltonian(TfimModel{1.0, 4}, p2(1.0, 2.0)), InvalidArgumentError);
}

TEST_CASE("two-level Hamiltonian matches B n.sigma entry by entry") {
  const double b = 1.7, theta = 0.8, phi = -1.1;
  const auto h = hamiltonian(TwoLevelModel{b}, p2(theta, phi)).matrix();
  const Complex i(0.0, 1.0);
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  CHECK(std::abs(h(0, 0) - b * nz) < 1e-14);
  CHECK(std::abs(h(1, 1) + b * nz) < 1e-14);
  CHECK(std::abs(h(0, 1) - b * (nx - i * ny)) < 1e-14);

  // Spectrum is (-B, +B) for every direction.
  for (double th : {0.0, 0.4, 1.3, 2.9})
    for (double ph : {0.0, 1.0, 4.0}) {
      const auto s = eigensystem(hamiltonian(TwoLevelModel{b}, p2(th, ph)));
      CHECK(s.energies(0) == doctest::Approx(-b).epsilon(1e-12));
      CHECK(s.energies(1) == doctest::Approx(b).epsilon(1e-12));
    }
  CHECK_THROWS_AS(hamiltonian(TwoLevelModel{-1.0}, p2(0.0, 0.0)), InvalidArgumentError);
}

TEST_CASE("two-parameter model keeps a unit Bloch vector") {
  for (double x : {0.1, 0.9, 2.0})
    for (double y : {-0.7, 0.3, 1.6}) {
      const auto s = eigensystem(hamiltonian(TwoParamModel{}, p2(x, y)));
      CHECK(s.energies(0) == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(s.energies(1) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("NV two-qubit Hamiltonian: independent reconstruction and golden energy") {
  const NVTwoQubitModel m = nv_default();
  const double theta = kPi / 4.0, phi = 0.0;
  const auto h = hamiltonian(m, p2(theta, phi)).matrix();

  // Rebuild from explicit 4x4 Kronecker blocks, coded separately from the
  // library's embed-based construction.
  const Complex i(0.0, 1.0);
  Matrix sx(2, 2), sy(2, 2), sz(2, 2), id(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  id << 1, 0, 0, 1;
  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c)
        out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
  };
  Matrix expected =
      0.5 * m.rabi *
      (std::cos(theta) * kron(sz, id) +
       std::sin(theta) * (std::cos(phi) * kron(sx, id) + std::sin(phi) * kron(sy, id)));
  expected += (0.5 * m.nuclear_zeeman - 0.25 * m.hyperfine_z) * kron(id, sz);
  expected += -0.25 * m.hyperfine_x * kron(id, sx);
  expected += -0.25 * m.hyperfine_z * kron(sz, sz);
  expected += -0.25 * m.hyperfine_x * kron(sz, sx);
  CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-12);

  // Golden ground energy, frozen from an independent numerical route.
  const auto g = ground_state(hamiltonian(m, p2(theta, phi)), 1e-8);
  CHECK(g.energy == doctest::Approx(-31.771949011529923).epsilon(1e-12));
}

TEST_CASE("NV printed-drive switch swaps the sigma_x drive for sigma_z") {
  NVTwoQubitModel alt = nv_default();
  alt.printed_sz_drive = true;
  const auto h_x = hamiltonian(nv_default(), p2(0.6, 0.0)).matrix();
  const auto h_z = hamiltonian(alt, p2(0.6, 0.0)).matrix();
  CHECK((h_x - h_z).cwiseAbs().maxCoeff() > 1.0);  // genuinely different
  // At theta = 0 the drive term vanishes and both agree.
  const auto a0 = hamiltonian(nv_default(), p2(0.0, 0.3)).matrix();
  const auto b0 = hamiltonian(alt, p2(0.0, 0.3)).matrix();
  CHECK((a0 - b0).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("TFIM construction: size limits, N=2 double bond, known spectra") {
  CHECK_THROWS_AS(hamiltonian(TfimModel{1.0, 1}, p1(1.0)), InvalidArgumentError);
  CHECK_THROWS_AS(hamiltonian(TfimModel{1.0, 13}, p1(1.0)), InvalidArgumentError);

  // N = 2 periodic chain counts the single bond twice:
  // H = -2J X0 X1 - B(Z0 + Z1).
  const double j = 0.7, b = 1.3;
  const auto h2 = hamiltonian(TfimModel{j, 2}, p1(b)).matrix();
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = -2 * b;
  expected(3, 3) = 2 * b;
  expected(0, 3) = expected(3, 0) = -2 * j;
  expected(1, 2) = expected(2, 1) = -2 * j;
  CHECK((h2 - expected).cwiseAbs().maxCoeff() < 1e-13);
  // Its exact ground energy is -2 sqrt(J^2 + B^2).
  const auto s2 = eigensystem(hamiltonian(TfimModel{j, 2}, p1(b)));
  CHECK(s2.energies(0) == doctest::Approx(-2.0 * std::hypot(j, b)).epsilon(1e-12));

  // At J = 0 the model is N free spins: E0 = -N B.
  for (int n : {4, 6}) {
    const auto s = eigensystem(hamiltonian(TfimModel{0.0, n}, p1(2.0)));
    CHECK(s.energies(0) == doctest::Approx(-2.0 * n).epsilon(1e-12));
  }
}

TEST_CASE("spin-chain Hamiltonians match the operator-product construction") {
  // Rebuild both chains from explicit embedded-operator products; the library
  // assembles them in the computational basis instead.
  const int n = 3;
  const double j = 1.3, b = 0.7, theta = 0.9;
  auto x = [&](int i) { return embed_site_operator(Pauli::X, i, n).matrix(); };
  auto y = [&](int i) { return embed_site_operator(Pauli::Y, i, n).matrix(); };
  auto z = [&](int i) { return embed_site_operator(Pauli::Z, i, n).matrix(); };

  Matrix tfim = Matrix::Zero(8, 8);
  for (int i = 0; i < n; ++i) tfim -= j * (x(i) * x((i + 1) % n)) + b * z(i);
  CHECK((hamiltonian(TfimModel{j, n}, p1(b)).matrix() - tfim).cwiseAbs().maxCoeff() <
        1e-13);

  Matrix heis = Matrix::Zero(8, 8);
  for (int i = 0; i < n; ++i) {
    const int k = (i + 1) % n;
    heis -= -0.4 * (x(i) * x(k) + y(i) * y(k) + z(i) * z(k));
    heis -= std::sin(theta) * x(i) + std::cos(theta) * z(i);
  }
  CHECK((hamiltonian(HeisenbergModel{-0.4, n}, p1(theta)).matrix() - heis)
            .cwiseAbs()
            .maxCoeff() < 1e-13);
}

TEST_CASE("TFIM commutes with one-site translation") {
  const int n = 4;
  const Eigen::Index dim = 16;
  // Translation permutation on 4 sites (site 0 is the most significant bit,
  // matching the embedding order used by kron chains).
  Matrix t = Matrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const Eigen::Index shifted = ((b << 1) & (dim - 1)) | (b >> (n - 1));
    t(shifted, b) = 1.0;
  }
  const auto h = hamiltonian(TfimModel{1.3, n}, p1(0.9)).matrix();
  CHECK((h * t - t * h).cwiseAbs().maxCoeff() < 1e-12);

  // And with global spin-flip parity P = prod Z_i.
  Matrix parity = Matrix::Identity(dim, dim);
  for (int i = 0; i < n; ++i)
    parity = (parity * embed_site_operator(Pauli::Z, i, n).matrix()).eval();
  CHECK((h * parity - parity * h).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Heisenberg spectrum is independent of the field angle theta") {
  const HeisenbergModel m{-0.4, 4};
  const auto s0 = eigensystem(hamiltonian(m, p1(0.0)));
  for (double theta : {0.3, 1.0, kPi / 2.0, 2.5}) {
    const auto s = eigensystem(hamiltonian(m, p1(theta)));
    CHECK((s.energies - s0.energies).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK_THROWS_AS(hamiltonian(HeisenbergModel{1.0, 11}, p1(0.0)), InvalidArgumentError);
}

TEST_CASE("analytic d_hamiltonian matches test-side finite differences") {
  struct Case {
    ModelSpec spec;
    RealVector params;
    int which;
  };
  const std::vector<Case> cases = {
      {TwoLevelModel{1.0}, p2(0.7, 1.2), 0},
      {TwoLevelModel{2.5}, p2(0.7, 1.2), 1},
      {TfimModel{1.0, 4}, p1(0.8), 0},
      {HeisenbergModel{-0.3, 4}, p1(1.1), 0},
  };
  for (const auto& c : cases) {
    const Matrix analytic = d_hamiltonian(c.spec, c.params, c.which).matrix();
    const Matrix fd = fd_dh(c.spec, c.params, c.which, 1e-6);
    CHECK((analytic - fd).cwiseAbs().maxCoeff() < 1e-7);
  }

  // FD-backed models agree with a different step choice too.
  const Matrix dx = d_hamiltonian(TwoParamModel{}, p2(0.5, 0.9), 0).matrix();
  CHECK((dx - fd_dh(TwoParamModel{}, p2(0.5, 0.9), 0, 1e-6)).cwiseAbs().maxCoeff() < 1e-7);
  const Matrix dth = d_hamiltonian(nv_default(), p2(0.8, 0.2), 0).matrix();
  CHECK((dth - fd_dh(nv_default(), p2(0.8, 0.2), 0, 1e-6)).cwiseAbs().maxCoeff() < 1e-5);

  CHECK_THROWS_AS(d_hamiltonian(TfimModel{1.0, 4}, p1(1.0), 1), InvalidArgumentError);
  CHECK_THROWS_AS(d_hamiltonian(TfimModel{1.0, 4}, p1(1.0), -1), InvalidArgumentError);
}
