#pragma once

// Dense complex linear algebra shared by every other module: Hermitian
// operators, bipartite tensor structure, partial transpose/trace, vec and a
// deterministic Hermitian eigensolver.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sepcert/errors.hpp"

namespace sepcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance used to accept a matrix as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;

/// A square matrix that is Hermitian to within kHermitianTolerance (relative).
/// Inputs outside tolerance are rejected, never symmetrized.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(ComplexMatrix matrix);

  /// |v><v| for a column vector v.
  static HermitianOperator projector(const ComplexVector& v);
  static HermitianOperator identity(int dim);
  static HermitianOperator zero(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  ComplexMatrix matrix_;
};

bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTolerance);

/// Which part of a bipartite space an operation acts on.
enum class Side { X, Y };

/// A whole side, or one of its nested tensor factors (e.g. X2 of X = X1 (x) X2).
struct Factor {
  Side side = Side::X;
  std::optional<int> nested;

  static Factor x() { return {Side::X, std::nullopt}; }
  static Factor y() { return {Side::Y, std::nullopt}; }
  static Factor x_part(int i) { return {Side::X, i}; }
  static Factor y_part(int i) { return {Side::Y, i}; }
};

/// X (x) Y with optional nested factorizations of each side. Subsystems are
/// ordered X-factors first, then Y-factors.
class BipartiteSpace {
 public:
  BipartiteSpace() = default;
  BipartiteSpace(int dim_x, int dim_y);
  BipartiteSpace(std::vector<int> x_factors, std::vector<int> y_factors);

  int dim_x() const { return dim_x_; }
  int dim_y() const { return dim_y_; }
  int dim() const { return dim_x_ * dim_y_; }
  const std::vector<int>& x_factors() const { return x_factors_; }
  const std::vector<int>& y_factors() const { return y_factors_; }
  bool nested() const { return x_factors_.size() > 1 || y_factors_.size() > 1; }

  /// Local dimensions of all subsystems in storage order.
  std::vector<int> subsystem_dims() const;
  /// Indices into subsystem_dims() covered by the given factor.
  std::vector<int> subsystems(const Factor& f) const;

  bool operator==(const BipartiteSpace&) const = default;

 private:
  int dim_x_ = 1;
  int dim_y_ = 1;
  std::vector<int> x_factors_{1};
  std::vector<int> y_factors_{1};
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Reorders tensor subsystems: output subsystem i is input subsystem perm[i].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> perm);
ComplexVector permute_subsystems(const ComplexVector& v, std::span<const int> dims,
                                 std::span<const int> perm);
/// Unitary permutation matrix P with P (v_0 (x) ... ) = v_perm[0] (x) ...
ComplexMatrix subsystem_permutation(std::span<const int> dims, std::span<const int> perm);

/// Transposes the listed subsystems in the standard basis.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const int> dims,
                                std::span<const int> which);
HermitianOperator partial_transpose(const HermitianOperator& h, const BipartiteSpace& space,
                                    const Factor& factor);

/// Traces out the listed subsystems; the result acts on the remaining ones.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> traced);
HermitianOperator partial_trace(const HermitianOperator& h, const BipartiteSpace& space,
                                const Factor& traced);

/// vec(|k><j|) = |k>|j>: the coefficient of |a>|b> is m(a, b).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, int rows, int cols);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns, orthonormal
};

HermitianEigen eig_hermitian(const HermitianOperator& h);
double min_eigenvalue(const ComplexMatrix& hermitian);
double max_eigenvalue(const ComplexMatrix& hermitian);
/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

/// Real Hilbert-Schmidt inner product Re Tr(A* B).
double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pauli operators sigma_0 .. sigma_3.
ComplexMatrix pauli(int index);

// --- Orthonormal real basis of Herm(C^d) -----------------------------------
//
// Element (a, b) for a, b in [0, d): a == b gives |a><a|; a < b gives
// (|a><b| + |b><a|)/sqrt2; a > b gives (-i|b><a| + i|a><b|)/sqrt2. The flat
// index is a * d + b.

struct SparseEntry {
  int row;
  int col;
  Complex value;
};
using SparseHermitian = std::vector<SparseEntry>;

SparseHermitian hermitian_basis_element(int dim, int index);
/// Coordinates <B_i, H> in the basis above.
RealVector hermitian_coordinates(const ComplexMatrix& h);
ComplexMatrix from_hermitian_coordinates(const RealVector& coords, int dim);

/// Re Tr(S M) for sparse Hermitian S.
double sparse_inner(const SparseHermitian& s, const ComplexMatrix& m);
ComplexMatrix to_dense(const SparseHermitian& s, int dim);
/// Applies a subsystem transpose to a sparse operator by permuting entries.
SparseHermitian partial_transpose(const SparseHermitian& s, std::span<const int> dims,
                                  std::span<const int> which);

}  // namespace sepcert
