#include "qfisim/propagator.hpp"

#include <algorithm>
#include <cmath>

namespace qfisim {

namespace {

constexpr Eigen::Index kDirectExponentialMaxDim = 64;

/// |psi> <- exp(-i H dt) |psi> by full eigendecomposition.
void expm_apply_direct(const Matrix& h, double dt, Vector& psi) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector coeffs = es.eigenvectors().adjoint() * psi;
  Vector phased(coeffs.size());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    phased(i) = std::polar(1.0, -es.eigenvalues()(i) * dt) * coeffs(i);
  psi.noalias() = es.eigenvectors() * phased;
}

/// |psi> <- exp(-i H dt) |psi> by a Lanczos (Krylov) approximation of the
/// exponential action, converged to ~1e-13. Numerically indistinguishable
/// from the direct eigendecomposition route and far cheaper at large dims.
void expm_apply_lanczos(const Matrix& h, double dt, Vector& psi) {
  constexpr int kMaxKrylov = 48;
  constexpr double kTol = 1e-13;
  const Eigen::Index dim = h.rows();
  const int m_cap = int(std::min<Eigen::Index>(kMaxKrylov, dim));

  Matrix basis(dim, m_cap);
  RealVector alpha(m_cap), beta(m_cap);
  basis.col(0) = psi;  // psi is unit-norm

  Vector w(dim);
  int m = 0;
  bool breakdown = false;
  Vector small_result;
  for (int j = 0; j < m_cap; ++j) {
    w.noalias() = h * basis.col(j);
    if (j > 0) w -= beta(j - 1) * basis.col(j - 1);
    alpha(j) = std::real(basis.col(j).dot(w));
    w -= alpha(j) * basis.col(j);
    // full reorthogonalization; m is small
    for (int k = 0; k <= j; ++k) w -= basis.col(k).dot(w) * basis.col(k);
    beta(j) = w.norm();
    m = j + 1;

    // exp(-i dt T_m) e1 on the tridiagonal projection
    RealMatrix t = RealMatrix::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      t(k, k) = alpha(k);
      if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta(k);
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(t);
    Vector e1 = Vector::Zero(m);
    e1(0) = 1.0;
    Vector c = es.eigenvectors().transpose().cast<Complex>() * e1;
    for (int k = 0; k < m; ++k) c(k) *= std::polar(1.0, -es.eigenvalues()(k) * dt);
    small_result = es.eigenvectors().cast<Complex>() * c;

    if (beta(j) < 1e-13 * std::max(1.0, std::abs(alpha(j)))) {
      breakdown = true;  // invariant subspace: result exact
      break;
    }
    if (std::abs(small_result(m - 1)) * beta(j) * std::abs(dt) < kTol && m >= 3) break;
    if (j + 1 < m_cap) basis.col(j + 1) = w / beta(j);
  }
  (void)breakdown;
  psi.noalias() = basis.leftCols(m) * small_result;
}

void expm_apply(const Matrix& h, double dt, Vector& psi) {
  if (h.rows() <= kDirectExponentialMaxDim)
    expm_apply_direct(h, dt, psi);
  else
    expm_apply_lanczos(h, dt, psi);
}

void check_ramps(const ModelSpec& spec, const RealVector& base_params,
                 const std::vector<QuadraticRamp>& ramps) {
  if (ramps.empty()) throw InvalidArgumentError("at least one ramp is required");
  if (base_params.size() != param_count(spec))
    throw InvalidArgumentError("base parameter count does not match the model");
  const double tf = ramps.front().duration();
  for (const auto& r : ramps) {
    if (r.param_index < 0 || r.param_index >= param_count(spec))
      throw InvalidArgumentError("ramp parameter index out of range");
    if (std::abs(r.duration() - tf) > 1e-9 * std::max(1.0, tf))
      throw InvalidArgumentError("all ramps must share one duration");
  }
}

RealVector params_at(const RealVector& base, const std::vector<QuadraticRamp>& ramps,
                     double t) {
  RealVector p = base;
  for (const auto& r : ramps) p(r.param_index) = r.value(t);
  return p;
}

double spectral_radius_estimate(const HermitianOperator& h) {
  if (h.dim() <= 256) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
    return std::max(std::abs(es.eigenvalues()(0)),
                    std::abs(es.eigenvalues()(h.dim() - 1)));
  }
  // Row-sum bound; mildly conservative, cheap at large dims.
  return h.matrix().cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

double QuadraticRamp::duration() const {
  if (rate <= 0.0) throw InvalidArgumentError("ramp rate must be positive");
  if (excursion == 0.0) throw InvalidArgumentError("ramp excursion must be nonzero");
  return 2.0 * std::abs(excursion) / rate;
}

double QuadraticRamp::value(double t) const {
  const double tf = duration();
  if (t < -1e-12 * tf || t > tf * (1.0 + 1e-12))
    throw InvalidArgumentError("time outside [0, t_f]");
  return start + excursion * (t / tf) * (t / tf);
}

double QuadraticRamp::rate_at(double t) const {
  const double tf = duration();
  if (t < -1e-12 * tf || t > tf * (1.0 + 1e-12))
    throw InvalidArgumentError("time outside [0, t_f]");
  return 2.0 * excursion * t / (tf * tf);
}

int default_step_count(const ModelSpec& spec, const RealVector& base_params,
                       const std::vector<QuadraticRamp>& ramps) {
  check_ramps(spec, base_params, ramps);
  const double tf = ramps.front().duration();
  const double h0 = spectral_radius_estimate(hamiltonian(spec, params_at(base_params, ramps, 0.0)));
  const double h1 = spectral_radius_estimate(hamiltonian(spec, params_at(base_params, ramps, tf)));
  const double hmax = std::max(h0, h1);
  return std::max(100, int(std::ceil(20.0 * tf * hmax)));
}

EvolutionResult evolve(const ModelSpec& spec, const RealVector& base_params,
                       const std::vector<QuadraticRamp>& ramps, const StateVector& psi0,
                       const EvolutionConfig& config) {
  check_ramps(spec, base_params, ramps);
  const double tf = ramps.front().duration();
  const int steps =
      config.steps > 0 ? std::max(100, config.steps) : default_step_count(spec, base_params, ramps);
  const double dt = tf / steps;

  Vector psi = psi0.amplitudes();
  if (psi.size() != hamiltonian(spec, base_params).dim())
    throw DimensionMismatchError("initial state does not match the model dimension");

  std::vector<TrajectorySample> trajectory;
  const int sample_stride =
      config.record_trajectory ? std::max(1, steps / std::max(1, config.trajectory_samples)) : 0;

  double max_drift = 0.0;
  for (int s = 0; s < steps; ++s) {
    const double t_mid = (s + 0.5) * dt;
    const HermitianOperator h = hamiltonian(spec, params_at(base_params, ramps, t_mid));
    expm_apply(h.matrix(), dt, psi);
    max_drift = std::max(max_drift, std::abs(psi.norm() - 1.0));

    if (sample_stride > 0 && ((s + 1) % sample_stride == 0 || s + 1 == steps)) {
      const double t = (s + 1) * dt;
      TrajectorySample sample;
      sample.t = t;
      sample.params = params_at(base_params, ramps, t);
      const Spectrum spec_t = eigensystem(hamiltonian(spec, sample.params));
      const int n_pop = int(std::min<Eigen::Index>(config.population_cap + 1, psi.size()));
      sample.populations.resize(n_pop);
      for (int k = 0; k < n_pop; ++k)
        sample.populations(k) = std::norm(spec_t.eigenvectors.col(k).dot(psi));
      trajectory.push_back(std::move(sample));
    }
  }

  if (max_drift > config.norm_tol)
    throw NormDriftError("norm drift " + std::to_string(max_drift) + " exceeds tolerance");

  RealVector final_rates = RealVector::Zero(param_count(spec));
  for (const auto& r : ramps) final_rates(r.param_index) = r.rate_at(tf);
  return EvolutionResult{StateVector(std::move(psi)), params_at(base_params, ramps, tf),
                         std::move(final_rates), max_drift, steps, std::move(trajectory)};
}

}  // namespace qfisim
