#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qexlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// max_ij |(A A^dagger - I)_ij|
double unitarity_residual(const CMatrix& a);

/// Eigenvalues of a Hermitian matrix, sorted descending.
RVector hermitian_eigenvalues(const CMatrix& a);

/// Sum of singular values.
double trace_norm(const CMatrix& a);

/// Hilbert-Schmidt inner product Tr(A^dagger B).
Complex hs_inner(const CMatrix& a, const CMatrix& b);

/// Haar-ish random unitary from the QR decomposition of a complex Gaussian matrix.
CMatrix random_unitary(std::size_t n, Rng& rng);

/// Complex Gaussian matrix with unit-variance entries.
CMatrix random_complex_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Random density matrix of full rank (Wishart-style).
CMatrix random_density(std::size_t n, Rng& rng);

/// Derives a per-trial seed from a base seed; splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Numerical rank of a matrix: singular values above `relative` times the largest.
std::size_t numerical_rank(const CMatrix& a, double relative);

}  // namespace qexlab
