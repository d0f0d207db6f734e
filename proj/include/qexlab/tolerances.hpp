#pragma once

// Numerical tolerances shared by every module. Reports echo these values.

namespace qexlab::tol {

inline constexpr double construction = 1e-8;
inline constexpr double verification = 1e-6;

inline constexpr double symmetric = 1e-12;
inline constexpr double unitary = 1e-9;
inline constexpr double density_hermitian = 1e-10;
inline constexpr double density_psd = 1e-9;
inline constexpr double density_trace = 1e-10;

inline constexpr double good_basis = 1e-7;
inline constexpr double t_certificate = 1e-7;
inline constexpr double gap_relative_residual = 1e-9;
inline constexpr double ramanujan = 1e-9;
inline constexpr double lower_bound = 1e-9;
inline constexpr double numerical_rank = 1e-9;

inline constexpr double projector_rank = 1e-6;

}  // namespace qexlab::tol
