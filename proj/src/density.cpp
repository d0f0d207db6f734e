#include "qexlab/density.hpp"

#include "qexlab/error.hpp"
#include "qexlab/tolerances.hpp"

#include <algorithm>

namespace qexlab {

DensityValidation validate_density(const CMatrix& m) {
  DensityValidation v;
  if (m.rows() != m.cols() || m.rows() == 0) return v;
  v.hermitian_residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const RVector ev = hermitian_eigenvalues(0.5 * (m + m.adjoint()));
  v.min_eigenvalue = ev(ev.size() - 1);
  v.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  v.ok = v.hermitian_residual <= tol::density_hermitian && v.min_eigenvalue >= -tol::density_psd &&
         v.trace_error <= tol::density_trace;
  return v;
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  const auto v = validate_density(m_);
  require(v.ok, ErrorKind::precondition,
          "not a density matrix (hermitian " + std::to_string(v.hermitian_residual) + ", min eigenvalue " +
              std::to_string(v.min_eigenvalue) + ", trace error " + std::to_string(v.trace_error) + ")");
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  require(dim >= 1, ErrorKind::invalid_input, "dimension must be positive");
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double n = psi.norm();
  require(n > 0, ErrorKind::invalid_input, "zero state vector");
  const CVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::classical(const RVector& p) {
  return DensityMatrix(p.cast<Complex>().asDiagonal().toDenseMatrix());
}

RVector DensityMatrix::spectrum() const { return hermitian_eigenvalues(m_).cwiseMax(0.0); }

double trace_distance(const CMatrix& a, const CMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::invalid_input, "dimension mismatch");
  const CMatrix d = a - b;
  // Hermitian difference: eigenvalues are cheaper than an SVD.
  if ((d - d.adjoint()).cwiseAbs().maxCoeff() <= 1e-12) return 0.5 * hermitian_eigenvalues(0.5 * (d + d.adjoint())).cwiseAbs().sum();
  return 0.5 * trace_norm(d);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::size_t qubit_count(std::size_t dim) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  require((std::size_t{1} << n) == dim, ErrorKind::invalid_input, "dimension is not a power of two");
  return n;
}

namespace {

std::size_t bit(std::size_t index, std::size_t qubits, std::size_t q) { return (index >> (qubits - 1 - q)) & 1U; }

void check_targets(std::size_t qubits, const std::vector<std::size_t>& targets) {
  std::vector<bool> seen(qubits, false);
  for (auto t : targets) {
    require(t < qubits, ErrorKind::invalid_input, "qubit index out of range");
    require(!seen[t], ErrorKind::invalid_input, "repeated qubit index");
    seen[t] = true;
  }
}

}  // namespace

CMatrix partial_trace(const CMatrix& rho, std::size_t qubits, const std::vector<std::size_t>& traced) {
  check_targets(qubits, traced);
  std::vector<std::size_t> kept;
  for (std::size_t q = 0; q < qubits; ++q)
    if (std::find(traced.begin(), traced.end(), q) == traced.end()) kept.push_back(q);
  const std::size_t dk = std::size_t{1} << kept.size();
  const std::size_t dim = std::size_t{1} << qubits;
  CMatrix out = CMatrix::Zero(dk, dk);
  auto project = [&](std::size_t idx, const std::vector<std::size_t>& which) {
    std::size_t r = 0;
    for (auto q : which) r = (r << 1) | bit(idx, qubits, q);
    return r;
  };
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      if (project(a, traced) != project(b, traced)) continue;
      out(project(a, kept), project(b, kept)) += rho(a, b);
    }
  return out;
}

CMatrix apply_gate(const CMatrix& rho, std::size_t qubits, const std::vector<std::size_t>& targets,
                   const CMatrix& gate) {
  check_targets(qubits, targets);
  const std::size_t k = targets.size();
  require(gate.rows() == static_cast<Eigen::Index>(std::size_t{1} << k) && gate.cols() == gate.rows(),
          ErrorKind::invalid_input, "gate size does not match its targets");
  const std::size_t dim = std::size_t{1} << qubits;
  // Embed the gate as a full operator; dimensions are at most 2^10.
  CMatrix full = CMatrix::Zero(dim, dim);
  std::size_t mask = 0;
  for (auto t : targets) mask |= std::size_t{1} << (qubits - 1 - t);
  auto sub = [&](std::size_t idx) {
    std::size_t r = 0;
    for (auto t : targets) r = (r << 1) | bit(idx, qubits, t);
    return r;
  };
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      if ((a & ~mask) == (b & ~mask)) full(a, b) = gate(sub(a), sub(b));
  return full * rho * full.adjoint();
}

CMatrix dephase(const CMatrix& rho, std::size_t qubits, const std::vector<std::size_t>& targets) {
  check_targets(qubits, targets);
  std::size_t mask = 0;
  for (auto t : targets) mask |= std::size_t{1} << (qubits - 1 - t);
  CMatrix out = rho;
  for (Eigen::Index a = 0; a < out.rows(); ++a)
    for (Eigen::Index b = 0; b < out.cols(); ++b)
      if ((static_cast<std::size_t>(a) & mask) != (static_cast<std::size_t>(b) & mask)) out(a, b) = 0.0;
  return out;
}

}  // namespace qexlab
