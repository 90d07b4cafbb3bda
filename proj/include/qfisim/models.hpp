#pragma once

#include "qfisim/core.hpp"

#include <string>
#include <variant>
#include <vector>

namespace qfisim {

/// H = B n(theta, phi) . sigma with n the unit Bloch vector. Params (theta, phi).
struct TwoLevelModel {
  double field = 1.0;  // B > 0
};

/// H = n(x, y) . sigma with
/// n = (sin(x+y) cos(xy), sin(x+y) sin(xy), cos(x+y)). Params (x, y).
/// The overall field is fixed to 1; the QFI with respect to the angles does
/// not depend on it.
struct TwoParamModel {
  double field = 1.0;
};

/// Rotating-frame electron-nuclear two-qubit model. Constants in angular
/// frequency (rad/us); params (theta, phi).
///
/// Drive term: sin(theta) (cos(phi) sigma_x + sin(phi) sigma_y). Setting
/// `printed_sz_drive` replaces sigma_x by sigma_z; see configs for the switch.
struct NVTwoQubitModel {
  double hyperfine_x;     // A_x
  double hyperfine_z;     // A_z
  double rabi;            // Omega_mw
  double nuclear_zeeman;  // gamma_n * B_parallel
  bool printed_sz_drive = false;
};

/// Returns the default operating point: A_x = 2.79 MHz, A_z = 11.832 MHz,
/// Omega_mw = 2.13 MHz, gamma_n B_par = 1.07 x 749.32 kHz, all converted to
/// angular frequency.
NVTwoQubitModel nv_default();

/// H = -J sum_i sigma^x_i sigma^x_{i+1} - B sum_i sigma^z_i, periodic
/// boundaries (at N = 2 the single bond appears twice). Param (B).
struct TfimModel {
  double coupling;  // J
  int sites;        // 2..12
};

/// H = -J sum_i vec(sigma)_i . vec(sigma)_{i+1} - sum_i h(theta) . vec(sigma)_i
/// with h = (sin theta, 0, cos theta), periodic boundaries. Param (theta).
struct HeisenbergModel {
  double coupling;  // J
  int sites;        // 2..10
};

using ModelSpec =
    std::variant<TwoLevelModel, TwoParamModel, NVTwoQubitModel, TfimModel, HeisenbergModel>;

std::vector<std::string> param_names(const ModelSpec& spec);
int param_count(const ModelSpec& spec);

HermitianOperator hamiltonian(const ModelSpec& spec, const RealVector& params);

/// dH/dparams[which]. Analytic where the dependence is simple (TwoLevel,
/// TFIM, Heisenberg); central finite differences with step
/// 1e-5 * max(1, |param|) otherwise, re-symmetrized.
HermitianOperator d_hamiltonian(const ModelSpec& spec, const RealVector& params, int which);

}  // namespace qfisim
