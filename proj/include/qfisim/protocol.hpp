#pragma once

#include "qfisim/oracle.hpp"
#include "qfisim/propagator.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qfisim {

struct QfiEstimate {
  double value = 0.0;   // 4 * sah / v^2
  double v_used = 0.0;
  double sah = 0.0;       // <(H - E0)^2> in the final state
  double variance = 0.0;  // <H^2> - <H>^2 in the final state
  std::optional<double> oracle;
  std::optional<double> rel_error;
  double excited_population = 0.0;  // 1 - |<phi_0|psi_f>|^2
  bool adiabatic_warning = false;   // excited population above 5%
  std::optional<double> step_doubling_change;  // relative sah change, if checked
};

struct SweepResult {
  std::vector<double> velocities;
  std::vector<double> sahs;
  std::vector<double> variances;
  std::vector<double> estimates;
  double extrapolated = 0.0;   // intercept of estimate(v) = F + c v
  double slope_loglog = 0.0;   // d log(sah) / d log(v); 2 at leading order
};

struct ExtractOptions {
  EvolutionConfig evolution;
  double gap_tol = 1e-8;
  bool compute_oracle = true;
  /// Re-run at doubled steps and require the measured <SAH> to move by less
  /// than 0.1% relative; throws ConvergenceError otherwise.
  bool doubling_check = false;
};

/// <psi|(H - E0)^2|psi> = ||(H - E0)|psi>||^2.
double measure_sah(const HermitianOperator& h, double e0, const StateVector& psi);

/// <H^2> - <H>^2.
double measure_variance(const HermitianOperator& h, const StateVector& psi);

/// Full extraction run: prepare the ground state at target - excursion,
/// ramp the chosen parameter quadratically to the target, measure the SAH
/// against the final Hamiltonian's spectral ground energy, and return
/// 4 * sah / v^2.
QfiEstimate extract_qfi(const ModelSpec& spec, const RealVector& target_params, int which,
                        double excursion, double v, const ExtractOptions& opts = {});

/// extract_qfi per velocity plus a linear v -> 0 extrapolation of the
/// estimates. Requires at least three velocities.
SweepResult extract_qfi_sweep(const ModelSpec& spec, const RealVector& target_params,
                              int which, double excursion,
                              const std::vector<double>& velocities,
                              const ExtractOptions& opts = {});

/// Drives the two chosen parameters with one shared quadratic schedule from
/// start_params and returns 4 * sah / v^2, the 2x2 QFIM block sum
/// F_aa + F_bb + 2 F_ab at the target point.
double extract_qfim_sum(const ModelSpec& spec, const RealVector& start_params,
                        std::pair<int, int> param_pair, double excursion, double v,
                        const ExtractOptions& opts = {});

/// F_ab = (sum - f_aa - f_bb) / 2.
double qfim_offdiagonal(double sum, double f_aa, double f_bb);

struct CrossingScan {
  std::vector<double> coupling_values;
  std::vector<double> gaps;               // E1 - E0 per grid point
  std::vector<double> overlaps;           // |<phi0(J_i)|phi0(J_{i+1})>|, size - 1
  std::vector<std::pair<double, double>> crossings;  // grid intervals with overlap < 0.5
  std::vector<double> degenerate_points;  // grid points landing on a crossing
};

/// Ground-state changeover scan of the final Heisenberg Hamiltonian over a
/// coupling grid. An adjacent-pair interval counts as a crossing when the
/// successive ground-state overlap drops below 0.5; a grid point whose gap
/// is below tolerance is recorded both as an exact crossing locus (a
/// zero-width crossing interval) and in degenerate_points, and the overlap
/// criterion is skipped next to it since the ground vector is arbitrary
/// there.
CrossingScan scan_ground_crossings(const HeisenbergModel& family,
                                   const std::vector<double>& coupling_grid,
                                   double theta_final, double gap_tol = 1e-8);

}  // namespace qfisim
