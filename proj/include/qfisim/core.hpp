#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qfisim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Base error with a stable machine-readable name, echoed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct DimensionMismatchError : Error {
  explicit DimensionMismatchError(const std::string& w) : Error("DimensionMismatch", w) {}
};
struct NonHermitianError : Error {
  explicit NonHermitianError(const std::string& w) : Error("NonHermitian", w) {}
};
struct NormalizationError : Error {
  explicit NormalizationError(const std::string& w) : Error("Normalization", w) {}
};
struct DegenerateGroundStateError : Error {
  explicit DegenerateGroundStateError(const std::string& w) : Error("DegenerateGroundState", w) {}
};
struct NormDriftError : Error {
  explicit NormDriftError(const std::string& w) : Error("NormDrift", w) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& w) : Error("ConvergenceCheck", w) {}
};
struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& w) : Error("InvalidArgument", w) {}
};

/// Dense complex square matrix certified Hermitian on construction.
/// The stored entries are the symmetrized (A + A^dagger)/2, accepted only if
/// the input deviates from Hermiticity by at most 1e-12 * max(1, |A|_max).
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

  /// H + c*I (gauge shift of the energy origin).
  HermitianOperator shifted(double c) const;

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator*(double c, const HermitianOperator& a);

 private:
  struct Certified {};
  HermitianOperator(Matrix entries, Certified) : entries_(std::move(entries)) {}
  Matrix entries_;
};

/// Normalized complex amplitude vector; |norm - 1| <= 1e-9 is certified.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  /// Rescales to unit norm first (rejects the zero vector).
  static StateVector normalized(Vector amplitudes);

  Eigen::Index dim() const { return amplitudes_.rows(); }
  const Vector& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

 private:
  Vector amplitudes_;
};

/// Full ascending eigensystem of a Hermitian operator.
/// Eigenvector columns are phase-fixed: the largest-magnitude component is
/// made real and positive.
struct Spectrum {
  RealVector energies;    // ascending
  Matrix eigenvectors;    // column n <-> energies[n]
  double gap0 = 0.0;      // E1 - E0

  StateVector eigenstate(Eigen::Index n) const { return StateVector(eigenvectors.col(n)); }
};

struct GroundState {
  double energy;
  StateVector state;
};

enum class Pauli { I, X, Y, Z };

inline constexpr int kMaxSites = 14;

/// I (x) ... (x) sigma_label (x) ... (x) I with the Pauli at `site`,
/// dimension 2^n_sites.
HermitianOperator embed_site_operator(Pauli label, int site, int n_sites,
                                      int max_sites = kMaxSites);

/// Re <psi|op|psi>. The imaginary part of the raw quadratic form must be
/// negligible (<= 1e-10 relative); a larger one indicates a corrupted input.
double expectation(const HermitianOperator& op, const StateVector& psi);

Spectrum eigensystem(const HermitianOperator& op);

/// Lowest eigenpair. Throws DegenerateGroundStateError when
/// E1 - E0 < gap_tol * max(1, |H|) -- the protocol's nondegeneracy
/// assumption is violated there.
GroundState ground_state(const HermitianOperator& op, double gap_tol = 1e-8);

}  // namespace qfisim
