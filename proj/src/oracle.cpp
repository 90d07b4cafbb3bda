#include "qfisim/oracle.hpp"

#include <cmath>
#include <numbers>

namespace qfisim {

namespace {

Spectrum checked_spectrum(const HermitianOperator& h, double gap_tol) {
  Spectrum s = eigensystem(h);
  const double scale = std::max(1.0, std::max(std::abs(s.energies(0)),
                                              std::abs(s.energies(s.energies.size() - 1))));
  if (s.energies.size() > 1 && s.gap0 < gap_tol * scale)
    throw DegenerateGroundStateError("ground-state gap " + std::to_string(s.gap0) +
                                     " below tolerance");
  return s;
}

}  // namespace

double qfi_ground(const ModelSpec& spec, const RealVector& params, int which, double gap_tol) {
  const Spectrum s = checked_spectrum(hamiltonian(spec, params), gap_tol);
  const Matrix dh = d_hamiltonian(spec, params, which).matrix();
  const Vector dh_ground = dh * s.eigenvectors.col(0);
  double f = 0.0;
  for (Eigen::Index n = 1; n < s.energies.size(); ++n) {
    const Complex m = s.eigenvectors.col(n).dot(dh_ground);
    const double gap = s.energies(n) - s.energies(0);
    f += std::norm(m) / (gap * gap);
  }
  return 4.0 * f;
}

QfimMatrix qfim_ground(const ModelSpec& spec, const RealVector& params,
                       const std::vector<int>& which, double gap_tol) {
  const Spectrum s = checked_spectrum(hamiltonian(spec, params), gap_tol);
  const Eigen::Index dim = s.energies.size();
  const int np = int(which.size());

  // a(mu, n) = <phi_n| dH_mu |phi_0> / (E_n - E_0), i.e. <phi_n|d_mu phi_0>
  // up to sign, which cancels in the products below.
  Matrix a(np, dim - 1);
  for (int mu = 0; mu < np; ++mu) {
    const Vector dh_ground =
        d_hamiltonian(spec, params, which[mu]).matrix() * s.eigenvectors.col(0);
    for (Eigen::Index n = 1; n < dim; ++n)
      a(mu, n - 1) = s.eigenvectors.col(n).dot(dh_ground) / (s.energies(n) - s.energies(0));
  }

  QfimMatrix out;
  out.param_indices = which;
  out.values.resize(np, np);
  for (int mu = 0; mu < np; ++mu)
    for (int nu = 0; nu < np; ++nu) {
      Complex acc = 0.0;
      for (Eigen::Index n = 0; n < dim - 1; ++n) acc += std::conj(a(mu, n)) * a(nu, n);
      out.values(mu, nu) = 4.0 * acc.real();
    }
  // Exact symmetry, up to roundoff of the accumulation order.
  out.values = 0.5 * (out.values + out.values.transpose().eval());
  return out;
}

double tfim_qfi_analytic(double coupling, double field, int sites) {
  if (sites < 2 || sites > 12 || sites % 2 != 0)
    throw InvalidArgumentError("analytic TFIM QFI needs even sites in [2, 12]");
  double f = 0.0;
  for (int m = 1; m <= sites / 2; ++m) {
    const double k = (2.0 * m - 1.0) * std::numbers::pi / sites;
    const double denom =
        coupling * coupling + field * field - 2.0 * coupling * field * std::cos(k);
    f += coupling * coupling * std::sin(k) * std::sin(k) / (denom * denom);
  }
  return f;
}

std::vector<double> perturbative_transition_probs(const ModelSpec& spec,
                                                  const RealVector& params, double rate,
                                                  int which, double gap_tol) {
  const Spectrum s = checked_spectrum(hamiltonian(spec, params), gap_tol);
  const Vector dh_ground =
      d_hamiltonian(spec, params, which).matrix() * s.eigenvectors.col(0);
  std::vector<double> probs(s.energies.size() - 1);
  for (Eigen::Index n = 1; n < s.energies.size(); ++n) {
    const Complex m = s.eigenvectors.col(n).dot(dh_ground);
    const double gap = s.energies(n) - s.energies(0);
    probs[n - 1] = rate * rate * std::norm(m) / (gap * gap * gap * gap);
  }
  return probs;
}

}  // namespace qfisim
