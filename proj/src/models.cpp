#include "qfisim/models.hpp"

#include <cmath>
#include <numbers>

namespace qfisim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_params(const ModelSpec& spec, const RealVector& params) {
  if (params.size() != param_count(spec))
    throw InvalidArgumentError("expected " + std::to_string(param_count(spec)) +
                               " parameters, got " + std::to_string(params.size()));
}

Matrix bloch_hamiltonian(double b, double nx, double ny, double nz) {
  const Complex i(0.0, 1.0);
  Matrix h(2, 2);
  h << nz, nx - i * ny, nx + i * ny, -nz;
  return b * h;
}

HermitianOperator two_level_h(const TwoLevelModel& m, double theta, double phi) {
  if (m.field <= 0) throw InvalidArgumentError("two-level field must be positive");
  return HermitianOperator(bloch_hamiltonian(
      m.field, std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
      std::cos(theta)));
}

HermitianOperator two_param_h(const TwoParamModel& m, double x, double y) {
  const double s = x + y, p = x * y;
  return HermitianOperator(bloch_hamiltonian(
      m.field, std::sin(s) * std::cos(p), std::sin(s) * std::sin(p), std::cos(s)));
}

HermitianOperator nv_h(const NVTwoQubitModel& m, double theta, double phi) {
  const auto sx = embed_site_operator(Pauli::X, 0, 2).matrix();
  const auto sy = embed_site_operator(Pauli::Y, 0, 2).matrix();
  const auto sz = embed_site_operator(Pauli::Z, 0, 2).matrix();
  const auto tx = embed_site_operator(Pauli::X, 1, 2).matrix();
  const auto tz = embed_site_operator(Pauli::Z, 1, 2).matrix();
  const Matrix drive_x = m.printed_sz_drive ? sz : sx;
  Matrix h = 0.5 * m.rabi *
             (std::cos(theta) * sz +
              std::sin(theta) * (std::cos(phi) * drive_x + std::sin(phi) * sy));
  h += (0.5 * m.nuclear_zeeman - 0.25 * m.hyperfine_z) * tz;
  h -= 0.25 * m.hyperfine_x * tx;
  h -= 0.25 * m.hyperfine_z * (sz * tz);
  h -= 0.25 * m.hyperfine_x * (sz * tx);
  return HermitianOperator(std::move(h));
}

// The spin-chain Hamiltonians are assembled directly in the computational
// basis rather than via dense operator products: site 0 maps to the most
// significant bit (matching the Kronecker order of embed_site_operator), a
// clear bit carries sigma_z eigenvalue +1, and sigma_x flips the bit. This
// keeps per-call cost at O(dim * sites), which matters because the
// propagator rebuilds H at every midpoint.
inline double z_eigenvalue(Eigen::Index basis, int bit) {
  return (basis >> bit) & 1 ? -1.0 : 1.0;
}

HermitianOperator tfim_h(const TfimModel& m, double b) {
  if (m.sites < 2 || m.sites > 12)
    throw InvalidArgumentError("TFIM sites must be in [2, 12]");
  const int n = m.sites;
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index basis = 0; basis < dim; ++basis) {
    double diag = 0.0;
    for (int i = 0; i < n; ++i) diag -= b * z_eigenvalue(basis, n - 1 - i);
    h(basis, basis) = diag;
    for (int i = 0; i < n; ++i) {
      // -J X_i X_{i+1} flips the two bits; the N=2 ring visits its single
      // bond twice, doubling the coefficient.
      const Eigen::Index mask =
          (Eigen::Index(1) << (n - 1 - i)) | (Eigen::Index(1) << (n - 1 - (i + 1) % n));
      h(basis ^ mask, basis) -= m.coupling;
    }
  }
  return HermitianOperator(std::move(h));
}

HermitianOperator heisenberg_h(const HeisenbergModel& m, double theta) {
  if (m.sites < 2 || m.sites > 10)
    throw InvalidArgumentError("Heisenberg sites must be in [2, 10]");
  const int n = m.sites;
  const Eigen::Index dim = Eigen::Index(1) << n;
  const double hx = std::sin(theta), hz = std::cos(theta);
  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index basis = 0; basis < dim; ++basis) {
    double diag = 0.0;
    for (int i = 0; i < n; ++i) {
      const int bi = n - 1 - i, bj = n - 1 - (i + 1) % n;
      const double zi = z_eigenvalue(basis, bi), zj = z_eigenvalue(basis, bj);
      diag -= m.coupling * zi * zj;  // -J Z_i Z_j
      diag -= hz * zi;               // field, z component
      // -J (X_i X_j + Y_i Y_j): nonzero only on anti-aligned pairs, where the
      // two terms add to 2.
      if (zi != zj) {
        const Eigen::Index mask = (Eigen::Index(1) << bi) | (Eigen::Index(1) << bj);
        h(basis ^ mask, basis) -= 2.0 * m.coupling;
      }
      // field, x component: flips one bit
      h(basis ^ (Eigen::Index(1) << bi), basis) -= hx;
    }
    h(basis, basis) = diag;
  }
  return HermitianOperator(std::move(h));
}

HermitianOperator finite_difference_dh(const ModelSpec& spec, const RealVector& params,
                                       int which) {
  const double step = 1e-5 * std::max(1.0, std::abs(params(which)));
  RealVector up = params, down = params;
  up(which) += step;
  down(which) -= step;
  Matrix diff =
      (hamiltonian(spec, up).matrix() - hamiltonian(spec, down).matrix()) / (2.0 * step);
  diff = 0.5 * (diff + diff.adjoint().eval());
  return HermitianOperator(std::move(diff));
}

}  // namespace

NVTwoQubitModel nv_default() {
  NVTwoQubitModel m;
  m.hyperfine_x = kTwoPi * 2.79;
  m.hyperfine_z = kTwoPi * 11.832;
  m.rabi = kTwoPi * 2.13;
  m.nuclear_zeeman = kTwoPi * 1.07 * 0.74932;
  return m;
}

std::vector<std::string> param_names(const ModelSpec& spec) {
  return std::visit(
      []<typename T>(const T&) -> std::vector<std::string> {
        if constexpr (std::is_same_v<T, TwoLevelModel>) return {"theta", "phi"};
        if constexpr (std::is_same_v<T, TwoParamModel>) return {"x", "y"};
        if constexpr (std::is_same_v<T, NVTwoQubitModel>) return {"theta", "phi"};
        if constexpr (std::is_same_v<T, TfimModel>) return {"B"};
        if constexpr (std::is_same_v<T, HeisenbergModel>) return {"theta"};
      },
      spec);
}

int param_count(const ModelSpec& spec) { return int(param_names(spec).size()); }

HermitianOperator hamiltonian(const ModelSpec& spec, const RealVector& params) {
  check_params(spec, params);
  return std::visit(
      [&]<typename T>(const T& m) -> HermitianOperator {
        if constexpr (std::is_same_v<T, TwoLevelModel>)
          return two_level_h(m, params(0), params(1));
        else if constexpr (std::is_same_v<T, TwoParamModel>)
          return two_param_h(m, params(0), params(1));
        else if constexpr (std::is_same_v<T, NVTwoQubitModel>)
          return nv_h(m, params(0), params(1));
        else if constexpr (std::is_same_v<T, TfimModel>)
          return tfim_h(m, params(0));
        else
          return heisenberg_h(m, params(0));
      },
      spec);
}

HermitianOperator d_hamiltonian(const ModelSpec& spec, const RealVector& params, int which) {
  check_params(spec, params);
  if (which < 0 || which >= param_count(spec))
    throw InvalidArgumentError("parameter index " + std::to_string(which) + " out of range");
  return std::visit(
      [&]<typename T>(const T& m) -> HermitianOperator {
        if constexpr (std::is_same_v<T, TwoLevelModel>) {
          const double theta = params(0), phi = params(1);
          if (which == 0)
            return HermitianOperator(bloch_hamiltonian(
                m.field, std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi),
                -std::sin(theta)));
          return HermitianOperator(bloch_hamiltonian(
              m.field, -std::sin(theta) * std::sin(phi), std::sin(theta) * std::cos(phi),
              0.0));
        } else if constexpr (std::is_same_v<T, TfimModel>) {
          const int n = m.sites;
          const Eigen::Index dim = Eigen::Index(1) << n;
          Matrix dh = Matrix::Zero(dim, dim);
          for (int i = 0; i < n; ++i)
            dh -= embed_site_operator(Pauli::Z, i, n).matrix();
          return HermitianOperator(std::move(dh));
        } else if constexpr (std::is_same_v<T, HeisenbergModel>) {
          const double theta = params(0);
          const int n = m.sites;
          const Eigen::Index dim = Eigen::Index(1) << n;
          Matrix dh = Matrix::Zero(dim, dim);
          for (int i = 0; i < n; ++i) {
            dh -= std::cos(theta) * embed_site_operator(Pauli::X, i, n).matrix();
            dh += std::sin(theta) * embed_site_operator(Pauli::Z, i, n).matrix();
          }
          return HermitianOperator(std::move(dh));
        } else {
          return finite_difference_dh(spec, params, which);
        }
      },
      spec);
}

}  // namespace qfisim
