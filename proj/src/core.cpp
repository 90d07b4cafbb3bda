#include "qfisim/core.hpp"

#include <cmath>

namespace qfisim {

namespace {

Matrix pauli_matrix(Pauli p) {
  Matrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw DimensionMismatchError("operator must be square and nonempty");
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  const double dev = (entries - entries.adjoint().eval()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * scale)
    throw NonHermitianError("matrix deviates from Hermiticity by " + std::to_string(dev));
  entries_ = 0.5 * (entries + entries.adjoint().eval());
}

HermitianOperator HermitianOperator::shifted(double c) const {
  Matrix m = entries_;
  m.diagonal().array() += c;
  return HermitianOperator(std::move(m), Certified{});
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("operator dimensions differ");
  return HermitianOperator(a.entries_ + b.entries_, HermitianOperator::Certified{});
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("operator dimensions differ");
  return HermitianOperator(a.entries_ - b.entries_, HermitianOperator::Certified{});
}

HermitianOperator operator*(double c, const HermitianOperator& a) {
  return HermitianOperator(c * a.entries_, HermitianOperator::Certified{});
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.rows() == 0) throw DimensionMismatchError("empty state vector");
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > 1e-9)
    throw NormalizationError("state norm " + std::to_string(n) + " is not 1");
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (n < 1e-300) throw NormalizationError("cannot normalize the zero vector");
  return StateVector(amplitudes / n);
}

HermitianOperator embed_site_operator(Pauli label, int site, int n_sites, int max_sites) {
  if (n_sites < 1 || n_sites > max_sites)
    throw InvalidArgumentError("n_sites " + std::to_string(n_sites) +
                               " outside supported range [1, " + std::to_string(max_sites) + "]");
  if (site < 0 || site >= n_sites)
    throw InvalidArgumentError("site " + std::to_string(site) + " out of range");
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < n_sites; ++i)
    out = kron(out, pauli_matrix(i == site ? label : Pauli::I));
  return HermitianOperator(std::move(out));
}

double expectation(const HermitianOperator& op, const StateVector& psi) {
  if (op.dim() != psi.dim()) throw DimensionMismatchError("operator/state dimensions differ");
  const Complex q = psi.amplitudes().dot(op.matrix() * psi.amplitudes());
  if (std::abs(q.imag()) > 1e-10 * std::max(1.0, std::abs(q.real())))
    throw NonHermitianError("quadratic form has imaginary part " + std::to_string(q.imag()));
  return q.real();
}

Spectrum eigensystem(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  if (solver.info() != Eigen::Success)
    throw Error("EigensolverFailure", "dense Hermitian eigensolver did not converge");
  Spectrum s;
  s.energies = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  // Phase convention: largest-magnitude component real-positive.
  for (Eigen::Index n = 0; n < s.eigenvectors.cols(); ++n) {
    Eigen::Index imax = 0;
    s.eigenvectors.col(n).cwiseAbs().maxCoeff(&imax);
    const Complex c = s.eigenvectors(imax, n);
    if (std::abs(c) > 0) s.eigenvectors.col(n) *= std::conj(c) / std::abs(c);
  }
  s.gap0 = s.energies.size() > 1 ? s.energies(1) - s.energies(0) : 0.0;
  return s;
}

GroundState ground_state(const HermitianOperator& op, double gap_tol) {
  const Spectrum s = eigensystem(op);
  const double scale = std::max(1.0, std::max(std::abs(s.energies(0)),
                                              std::abs(s.energies(s.energies.size() - 1))));
  if (s.energies.size() > 1 && s.gap0 < gap_tol * scale)
    throw DegenerateGroundStateError("ground-state gap " + std::to_string(s.gap0) +
                                     " below tolerance " + std::to_string(gap_tol * scale));
  return GroundState{s.energies(0), s.eigenstate(0)};
}

}  // namespace qfisim
