#include "qfisim/protocol.hpp"

#include <cmath>

namespace qfisim {

namespace {

double run_sah_once(const ModelSpec& spec, const RealVector& base_params,
                    const std::vector<QuadraticRamp>& ramps, const StateVector& psi0,
                    const HermitianOperator& h_final, double e0_final,
                    const EvolutionConfig& cfg, StateVector* final_state_out) {
  const EvolutionResult r = evolve(spec, base_params, ramps, psi0, cfg);
  if (final_state_out) *final_state_out = r.final_state;
  return measure_sah(h_final, e0_final, r.final_state);
}

struct LineFit {
  double slope;
  double intercept;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  return {(n * sxy - sx * sy) / denom, (sxx * sy - sx * sxy) / denom};
}

}  // namespace

double measure_sah(const HermitianOperator& h, double e0, const StateVector& psi) {
  if (h.dim() != psi.dim()) throw DimensionMismatchError("operator/state dimensions differ");
  const Vector shifted = h.matrix() * psi.amplitudes() - e0 * psi.amplitudes();
  return shifted.squaredNorm();
}

double measure_variance(const HermitianOperator& h, const StateVector& psi) {
  if (h.dim() != psi.dim()) throw DimensionMismatchError("operator/state dimensions differ");
  const Vector hpsi = h.matrix() * psi.amplitudes();
  const double mean = std::real(psi.amplitudes().dot(hpsi));
  return std::max(0.0, hpsi.squaredNorm() - mean * mean);
}

QfiEstimate extract_qfi(const ModelSpec& spec, const RealVector& target_params, int which,
                        double excursion, double v, const ExtractOptions& opts) {
  if (excursion == 0.0)
    throw InvalidArgumentError("degenerate schedule: excursion must be nonzero");
  if (v <= 0.0) throw InvalidArgumentError("velocity must be positive");
  if (which < 0 || which >= param_count(spec))
    throw InvalidArgumentError("parameter index out of range");

  RealVector start_params = target_params;
  start_params(which) -= excursion;

  const GroundState initial = ground_state(hamiltonian(spec, start_params), opts.gap_tol);
  const std::vector<QuadraticRamp> ramps = {
      QuadraticRamp{which, start_params(which), excursion, v}};

  const HermitianOperator h_final = hamiltonian(spec, target_params);
  const Spectrum final_spectrum = eigensystem(h_final);
  {
    const double scale = std::max(1.0, std::max(std::abs(final_spectrum.energies(0)),
                                                std::abs(final_spectrum.energies(
                                                    final_spectrum.energies.size() - 1))));
    if (final_spectrum.gap0 < opts.gap_tol * scale)
      throw DegenerateGroundStateError("final Hamiltonian ground state is degenerate");
  }
  const double e0 = final_spectrum.energies(0);

  StateVector final_state = initial.state;  // overwritten below
  const double sah = run_sah_once(spec, start_params, ramps, initial.state, h_final, e0,
                                  opts.evolution, &final_state);

  QfiEstimate est;
  est.v_used = v;
  est.sah = sah;
  est.value = 4.0 * sah / (v * v);
  est.variance = measure_variance(h_final, final_state);
  est.excited_population =
      1.0 - std::norm(final_spectrum.eigenvectors.col(0).dot(final_state.amplitudes()));
  est.adiabatic_warning = est.excited_population > 0.05;

  if (opts.doubling_check) {
    EvolutionConfig doubled = opts.evolution;
    doubled.steps = 2 * (opts.evolution.steps > 0
                             ? std::max(100, opts.evolution.steps)
                             : default_step_count(spec, start_params, ramps));
    const double sah2 = run_sah_once(spec, start_params, ramps, initial.state, h_final, e0,
                                     doubled, nullptr);
    const double change = std::abs(sah2 - sah) / std::max(std::abs(sah2), 1e-300);
    est.step_doubling_change = change;
    if (change > 1e-3)
      throw ConvergenceError("step doubling moved <SAH> by " + std::to_string(change));
  }

  if (opts.compute_oracle) {
    est.oracle = qfi_ground(spec, target_params, which, opts.gap_tol);
    if (std::abs(*est.oracle) > 0)
      est.rel_error = std::abs(est.value - *est.oracle) / std::abs(*est.oracle);
  }
  return est;
}

SweepResult extract_qfi_sweep(const ModelSpec& spec, const RealVector& target_params,
                              int which, double excursion,
                              const std::vector<double>& velocities,
                              const ExtractOptions& opts) {
  if (velocities.size() < 3)
    throw InvalidArgumentError("sweep needs at least three velocities");
  SweepResult out;
  out.velocities = velocities;
  for (double v : velocities) {
    const QfiEstimate e = extract_qfi(spec, target_params, which, excursion, v, opts);
    out.sahs.push_back(e.sah);
    out.variances.push_back(e.variance);
    out.estimates.push_back(e.value);
  }
  out.extrapolated = least_squares(out.velocities, out.estimates).intercept;
  std::vector<double> log_v, log_sah;
  for (size_t i = 0; i < velocities.size(); ++i) {
    log_v.push_back(std::log(velocities[i]));
    log_sah.push_back(std::log(out.sahs[i]));
  }
  out.slope_loglog = least_squares(log_v, log_sah).slope;
  return out;
}

double extract_qfim_sum(const ModelSpec& spec, const RealVector& start_params,
                        std::pair<int, int> param_pair, double excursion, double v,
                        const ExtractOptions& opts) {
  if (excursion == 0.0)
    throw InvalidArgumentError("degenerate schedule: excursion must be nonzero");
  if (param_pair.first == param_pair.second)
    throw InvalidArgumentError("the two driven parameters must differ");
  const GroundState initial = ground_state(hamiltonian(spec, start_params), opts.gap_tol);
  const std::vector<QuadraticRamp> ramps = {
      QuadraticRamp{param_pair.first, start_params(param_pair.first), excursion, v},
      QuadraticRamp{param_pair.second, start_params(param_pair.second), excursion, v}};

  RealVector target = start_params;
  target(param_pair.first) += excursion;
  target(param_pair.second) += excursion;
  const HermitianOperator h_final = hamiltonian(spec, target);
  const GroundState final_ground = ground_state(h_final, opts.gap_tol);

  const double sah = run_sah_once(spec, start_params, ramps, initial.state, h_final,
                                  final_ground.energy, opts.evolution, nullptr);
  return 4.0 * sah / (v * v);
}

double qfim_offdiagonal(double sum, double f_aa, double f_bb) {
  return 0.5 * (sum - f_aa - f_bb);
}

CrossingScan scan_ground_crossings(const HeisenbergModel& family,
                                   const std::vector<double>& coupling_grid,
                                   double theta_final, double gap_tol) {
  CrossingScan out;
  out.coupling_values = coupling_grid;
  std::vector<Vector> grounds;
  std::vector<bool> degenerate;
  RealVector params(1);
  params << theta_final;
  for (double j : coupling_grid) {
    HeisenbergModel m = family;
    m.coupling = j;
    const Spectrum s = eigensystem(hamiltonian(ModelSpec{m}, params));
    out.gaps.push_back(s.gap0);
    const double scale = std::max(1.0, std::max(std::abs(s.energies(0)),
                                                std::abs(s.energies(s.energies.size() - 1))));
    const bool deg = s.gap0 < gap_tol * scale;
    degenerate.push_back(deg);
    if (deg) {
      out.degenerate_points.push_back(j);
      // A grid point sitting on the crossing is itself the locus.
      out.crossings.emplace_back(j, j);
    }
    grounds.push_back(s.eigenvectors.col(0));
  }
  for (size_t i = 0; i + 1 < grounds.size(); ++i) {
    const double ovl = std::abs(grounds[i].dot(grounds[i + 1]));
    out.overlaps.push_back(ovl);
    // At a degenerate endpoint the ground vector is an arbitrary mix, so the
    // overlap criterion is meaningless there; the point itself was already
    // recorded as a crossing above.
    if (ovl < 0.5 && !degenerate[i] && !degenerate[i + 1])
      out.crossings.emplace_back(coupling_grid[i], coupling_grid[i + 1]);
  }
  return out;
}

}  // namespace qfisim
