#pragma once

// Explicit dual certificates for the Bell-plus-resource and four maximally
// entangled state problems, the positive maps behind them, and the
// Breuer-Hall witness family.

#include <array>

#include "sepcert/discrimination.hpp"

namespace sepcert {

// --- Positive maps on 2x2 and 4x4 matrices -----------------------------------

/// [[a, b], [c, d]] -> [[t a, b], [c, d / t]]
ComplexMatrix psi_map(double t, const ComplexMatrix& m);
/// [[a, b], [c, d]] -> [[d, -b], [-c, a]]
ComplexMatrix phi_map(const ComplexMatrix& m);
/// 2x2 blocks [[A, B], [C, D]] -> [[Psi_t(D) + Phi(D), Psi_t(B) + Phi(C)],
///                                  [Psi_t(C) + Phi(B), Psi_t(A) + Phi(A)]]
ComplexMatrix xi_map(double t, const ComplexMatrix& m);
/// [[conj(a), conj(b)], [-b, a]] for u = (a, b).
ComplexMatrix m_u(const ComplexVector& u);

/// The map whose Choi operator is q: Lambda(E_jk)[x, x'] = q[(x, j), (x', k)].
ComplexMatrix apply_choi(const ComplexMatrix& q, int dim_x, int dim_y, const ComplexMatrix& y);

// --- Three Bell states with a partially entangled resource -------------------

struct ThreeBellCertificate {
  DualCertificate certificate;        // on (X1 X2):(Y1 Y2)
  std::array<HermitianOperator, 3> q;  // H - (1/3) rho_k
  double epsilon = 0.0;
};

/// Rejects eps outside the open interval (0, 1).
ThreeBellCertificate three_bell_resource_certificate(double eps);

/// max over matrix units E_jk of ||Lambda_1(E_jk) - c (s3 (x) 1) Xi_t(E_jk) (s3 (x) 1)||,
/// with Lambda_1 the map of q[0], c = sqrt(1 - eps^2) / 12 and t = sqrt((1+eps)/(1-eps)).
double choi_link_residual(const ThreeBellCertificate& c);

/// Frobenius residuals of q[1] and q[2] against the local-unitary conjugates of q[0].
std::array<double, 2> conjugation_residuals(const ThreeBellCertificate& c);

/// U = diag(1, i) and V = (1/sqrt2)[[1, i], [i, 1]].
ComplexMatrix bell_phase_u();
ComplexMatrix bell_phase_v();

// --- Four Bell states with a partially entangled resource --------------------

/// Certificate on (X1 X2):(Y1 Y2); valid for eps in [0, 1].
DualCertificate four_bell_resource_certificate(double eps);

/// Minimum eigenvalue of T_X(H - (1/4) rho_k) for each of the four states.
std::array<double, 4> four_bell_partial_transpose_min_eigenvalues(double eps);

// --- Breuer-Hall witnesses -----------------------------------------------------

/// 1 - vec(U)vec(U)* - T_X(vec(V)vec(V)*). Requires U, V unitary and V^T U skew-symmetric.
HermitianOperator breuer_hall_witness(const ComplexMatrix& u, const ComplexMatrix& v);

/// ||(V^T U)^T + V^T U||_F
double skew_symmetry_residual(const ComplexMatrix& u, const ComplexMatrix& v);

/// (1 (x) y*) H (1 (x) y) on X, for y on Y.
ComplexMatrix compress_y(const ComplexMatrix& h, int dim_x, int dim_y, const ComplexVector& y);
/// (x* (x) 1) H (x (x) 1) on Y, for x on X.
ComplexMatrix compress_x(const ComplexMatrix& h, int dim_x, int dim_y, const ComplexVector& x);

/// Unitaries U_1..U_4 with phi_k = (1/2) vec(U_k) for the "ydy" family.
std::array<ComplexMatrix, 4> ydy_unitaries();
/// i sigma_2 (x) sigma_3
ComplexMatrix ydy_v();
/// (1/16)(1 - T_X(vec(V)vec(V)*)) on C^4 (x) C^4.
DualCertificate ydy_certificate();

}  // namespace sepcert
