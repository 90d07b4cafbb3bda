#pragma once

#include "qfisim/models.hpp"

#include <vector>

namespace qfisim {

/// Quadratic schedule lambda(t) = start + excursion * (t / t_f)^2 with
/// t_f = 2|excursion| / rate. The switching-on velocity vanishes,
/// lambda'(0) = 0, and |lambda'(t_f)| = rate.
struct QuadraticRamp {
  int param_index = 0;
  double start = 0.0;
  double excursion = 0.0;  // total signed excursion, nonzero
  double rate = 0.0;       // final |dlambda/dt|, positive

  double duration() const;
  double value(double t) const;
  double rate_at(double t) const;
};

struct EvolutionConfig {
  /// 0 selects the default rule
  /// steps = max(100, ceil(20 * t_f * max_endpoint_spectral_radius)).
  int steps = 0;
  bool record_trajectory = false;
  double norm_tol = 1e-9;
  int trajectory_samples = 200;
  int population_cap = 8;  // populations recorded per sample: p_0..p_cap
};

struct TrajectorySample {
  double t;
  RealVector params;
  RealVector populations;  // instantaneous-eigenbasis populations
};

struct EvolutionResult {
  StateVector final_state;
  RealVector final_params;
  RealVector final_rates;  // per model parameter; zero for frozen ones
  double norm_drift = 0.0;
  int steps_used = 0;
  std::vector<TrajectorySample> trajectory;
};

/// Step count chosen by the default per-step phase rule for the given ramps.
int default_step_count(const ModelSpec& spec, const RealVector& base_params,
                       const std::vector<QuadraticRamp>& ramps);

/// Integrates i d|psi>/dt = H(lambda(t)) |psi> from 0 to the common ramp
/// duration with per-step midpoint exponential propagation
/// |psi> <- exp(-i H(t + dt/2) dt) |psi>. All ramps must share one duration;
/// non-ramped parameters stay frozen at base_params. Throws NormDriftError
/// if the final norm drifts beyond config.norm_tol.
EvolutionResult evolve(const ModelSpec& spec, const RealVector& base_params,
                       const std::vector<QuadraticRamp>& ramps, const StateVector& psi0,
                       const EvolutionConfig& config = {});

}  // namespace qfisim
