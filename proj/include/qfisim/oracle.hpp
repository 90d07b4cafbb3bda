#pragma once

#include "qfisim/models.hpp"

#include <vector>

namespace qfisim {

/// Real symmetric, positive semidefinite QFI matrix block.
struct QfimMatrix {
  std::vector<int> param_indices;
  RealMatrix values;
};

/// Ground-state QFI from the spectrum:
///   F = 4 sum_{n>0} |<phi_n| dH |phi_0>|^2 / (E_n - E_0)^2.
/// The eigenstate derivative is always expressed through this
/// matrix-element form; eigenvectors are never differentiated directly.
double qfi_ground(const ModelSpec& spec, const RealVector& params, int which,
                  double gap_tol = 1e-8);

/// F_{mu nu} = 4 Re sum_{n>0} <phi_0|dH_mu|phi_n><phi_n|dH_nu|phi_0> / (E_n - E_0)^2.
QfimMatrix qfim_ground(const ModelSpec& spec, const RealVector& params,
                       const std::vector<int>& which, double gap_tol = 1e-8);

/// Closed-form ground-state QFI of the periodic transverse-field Ising chain
/// with respect to the field:
///   F_B = sum_{k>0} J^2 sin^2 k / (J^2 + B^2 - 2 J B cos k)^2,
/// momenta k = (2m - 1) pi / N, m = 1..N/2 (positive-parity sector).
double tfim_qfi_analytic(double coupling, double field, int sites);

/// Leading-order predicted excited-state populations after a slow ramp
/// ending with parameter rate `rate`:
///   p_k = rate^2 |<phi_k| dH |phi_0>|^2 / (E_k - E_0)^4,  k = 1..dim-1.
/// Satisfies sum_k (E_k - E_0)^2 p_k = rate^2 * F / 4 identically.
std::vector<double> perturbative_transition_probs(const ModelSpec& spec,
                                                  const RealVector& params, double rate,
                                                  int which = 0, double gap_tol = 1e-8);

}  // namespace qfisim
