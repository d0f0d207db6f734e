#pragma once

#include "qexlab/linalg.hpp"

#include <vector>

namespace qexlab {

struct DensityValidation {
  double hermitian_residual = 0.0;
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;
  bool ok = false;
};

DensityValidation validate_density(const CMatrix& m);

/// Hermitian, PSD, unit-trace N x N matrix. Construction validates.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix m);

  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix pure(const CVector& psi);
  /// Diagonal state with the given probabilities.
  static DensityMatrix classical(const RVector& probabilities);

  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  /// Eigenvalues, descending, clipped at zero.
  RVector spectrum() const;

 private:
  CMatrix m_;
};

/// 1/2 ||a - b||_1
double trace_distance(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Number of qubits for a power-of-two dimension; throws otherwise.
std::size_t qubit_count(std::size_t dim);

/// Traces out the listed qubits (qubit 0 is the most significant).
CMatrix partial_trace(const CMatrix& rho, std::size_t qubits, const std::vector<std::size_t>& traced);

/// Applies a 2^k x 2^k gate to the listed target qubits: rho -> G rho G^dagger.
CMatrix apply_gate(const CMatrix& rho, std::size_t qubits, const std::vector<std::size_t>& targets, const CMatrix& gate);

/// Removes off-diagonal coherence on the listed qubits (computational basis).
CMatrix dephase(const CMatrix& rho, std::size_t qubits, const std::vector<std::size_t>& targets);

}  // namespace qexlab
