#include "sepcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace sepcert {

namespace {

int product(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

std::vector<int> strides_of(std::span<const int> dims) {
  std::vector<int> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) s[i] = s[i + 1] * dims[i + 1];
  return s;
}

void check_dims(std::span<const int> dims, Eigen::Index n, const char* what) {
  for (int d : dims)
    if (d <= 0) throw InputError(std::string(what) + ": subsystem dimensions must be positive");
  if (product(dims) != n)
    throw InputError(std::string(what) + ": dimension mismatch (product of subsystem dims " +
                     std::to_string(product(dims)) + " vs " + std::to_string(n) + ")");
}

void check_subsystems(std::span<const int> which, std::size_t count, const char* what) {
  for (int w : which)
    if (w < 0 || static_cast<std::size_t>(w) >= count)
      throw InputError(std::string(what) + ": subsystem index out of range");
}

// Maps each output flat index to the input flat index under a subsystem permutation.
std::vector<int> permutation_map(std::span<const int> dims, std::span<const int> perm) {
  const int n = product(dims);
  const std::size_t k = dims.size();
  if (perm.size() != k) throw InputError("permute_subsystems: permutation length mismatch");
  std::vector<int> seen(k, 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= k || seen[p]++)
      throw InputError("permute_subsystems: not a permutation");
  }
  std::vector<int> out_dims(k);
  for (std::size_t i = 0; i < k; ++i) out_dims[i] = dims[perm[i]];
  const auto in_strides = strides_of(dims);
  const auto out_strides = strides_of(out_dims);
  std::vector<int> map(n);
  for (int o = 0; o < n; ++o) {
    int in = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const int digit = (o / out_strides[i]) % out_dims[i];
      in += digit * in_strides[perm[i]];
    }
    map[o] = in;
  }
  return map;
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  if (!m.allFinite()) return false;
  const double scale = 1.0 + (m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  const double asym = m.size() ? (m - m.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  return asym <= rel_tol * scale;
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0) throw InputError("HermitianOperator: empty matrix");
  if (matrix_.rows() != matrix_.cols()) throw InputError("HermitianOperator: matrix is not square");
  if (!is_hermitian(matrix_)) throw InputError("HermitianOperator: matrix is not Hermitian");
}

HermitianOperator HermitianOperator::projector(const ComplexVector& v) {
  ComplexMatrix p = v * v.adjoint();
  // Outer products are Hermitian up to rounding in the diagonal imaginary part only.
  p.diagonal() = p.diagonal().real().cast<Complex>();
  return HermitianOperator(std::move(p));
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(ComplexMatrix::Zero(dim, dim));
}

BipartiteSpace::BipartiteSpace(int dim_x, int dim_y)
    : BipartiteSpace(std::vector<int>{dim_x}, std::vector<int>{dim_y}) {}

BipartiteSpace::BipartiteSpace(std::vector<int> x_factors, std::vector<int> y_factors)
    : x_factors_(std::move(x_factors)), y_factors_(std::move(y_factors)) {
  if (x_factors_.empty() || y_factors_.empty())
    throw InputError("BipartiteSpace: each side needs at least one factor");
  for (int d : x_factors_)
    if (d <= 0) throw InputError("BipartiteSpace: dimensions must be positive");
  for (int d : y_factors_)
    if (d <= 0) throw InputError("BipartiteSpace: dimensions must be positive");
  dim_x_ = product(x_factors_);
  dim_y_ = product(y_factors_);
}

std::vector<int> BipartiteSpace::subsystem_dims() const {
  std::vector<int> dims = x_factors_;
  dims.insert(dims.end(), y_factors_.begin(), y_factors_.end());
  return dims;
}

std::vector<int> BipartiteSpace::subsystems(const Factor& f) const {
  const int offset = f.side == Side::X ? 0 : static_cast<int>(x_factors_.size());
  const int count = static_cast<int>(f.side == Side::X ? x_factors_.size() : y_factors_.size());
  if (f.nested) {
    if (*f.nested < 0 || *f.nested >= count) throw InputError("BipartiteSpace: no such nested factor");
    return {offset + *f.nested};
  }
  std::vector<int> idx(count);
  std::iota(idx.begin(), idx.end(), offset);
  return idx;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const int> dims,
                                 std::span<const int> perm) {
  check_dims(dims, m.rows(), "permute_subsystems");
  if (m.rows() != m.cols()) throw InputError("permute_subsystems: matrix is not square");
  const auto map = permutation_map(dims, perm);
  const int n = static_cast<int>(map.size());
  ComplexMatrix out(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) out(r, c) = m(map[r], map[c]);
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, std::span<const int> dims,
                                 std::span<const int> perm) {
  check_dims(dims, v.size(), "permute_subsystems");
  const auto map = permutation_map(dims, perm);
  ComplexVector out(v.size());
  for (std::size_t o = 0; o < map.size(); ++o) out(o) = v(map[o]);
  return out;
}

ComplexMatrix subsystem_permutation(std::span<const int> dims, std::span<const int> perm) {
  const auto map = permutation_map(dims, perm);
  const int n = static_cast<int>(map.size());
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (int o = 0; o < n; ++o) p(o, map[o]) = 1.0;
  return p;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const int> dims,
                                std::span<const int> which) {
  check_dims(dims, m.rows(), "partial_transpose");
  if (m.rows() != m.cols()) throw InputError("partial_transpose: matrix is not square");
  check_subsystems(which, dims.size(), "partial_transpose");
  const auto strides = strides_of(dims);
  const int n = static_cast<int>(m.rows());
  ComplexMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      int rr = r;
      int cc = c;
      for (int s : which) {
        const int dr = (r / strides[s]) % dims[s];
        const int dc = (c / strides[s]) % dims[s];
        rr += (dc - dr) * strides[s];
        cc += (dr - dc) * strides[s];
      }
      out(rr, cc) = m(r, c);
    }
  }
  return out;
}

HermitianOperator partial_transpose(const HermitianOperator& h, const BipartiteSpace& space,
                                    const Factor& factor) {
  if (h.dim() != space.dim()) throw InputError("partial_transpose: dimension mismatch");
  const auto dims = space.subsystem_dims();
  const auto which = space.subsystems(factor);
  return HermitianOperator(partial_transpose(h.matrix(), dims, which));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> traced) {
  check_dims(dims, m.rows(), "partial_trace");
  if (m.rows() != m.cols()) throw InputError("partial_trace: matrix is not square");
  check_subsystems(traced, dims.size(), "partial_trace");
  std::vector<bool> is_traced(dims.size(), false);
  for (int t : traced) is_traced[t] = true;
  std::vector<int> kept_dims;
  std::vector<int> traced_dims;
  for (std::size_t i = 0; i < dims.size(); ++i)
    (is_traced[i] ? traced_dims : kept_dims).push_back(dims[i]);
  const int nk = product(kept_dims);
  const int nt = product(traced_dims);
  const auto strides = strides_of(dims);
  const auto kstrides = strides_of(kept_dims);
  const auto tstrides = strides_of(traced_dims);

  // Flat index of the full space from (kept index, traced index).
  auto combine = [&](int k, int t) {
    int full = 0;
    int ki = 0;
    int ti = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (is_traced[i]) {
        full += ((t / tstrides[ti]) % traced_dims[ti]) * strides[i];
        ++ti;
      } else {
        full += ((k / kstrides[ki]) % kept_dims[ki]) * strides[i];
        ++ki;
      }
    }
    return full;
  };

  ComplexMatrix out = ComplexMatrix::Zero(nk, nk);
  for (int r = 0; r < nk; ++r)
    for (int c = 0; c < nk; ++c)
      for (int t = 0; t < nt; ++t) out(r, c) += m(combine(r, t), combine(c, t));
  return out;
}

HermitianOperator partial_trace(const HermitianOperator& h, const BipartiteSpace& space,
                                const Factor& traced) {
  if (h.dim() != space.dim()) throw InputError("partial_trace: dimension mismatch");
  const auto dims = space.subsystem_dims();
  const auto which = space.subsystems(traced);
  return HermitianOperator(partial_trace(h.matrix(), dims, which));
}

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index a = 0; a < m.rows(); ++a)
    for (Eigen::Index b = 0; b < m.cols(); ++b) v(a * m.cols() + b) = m(a, b);
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) throw InputError("unvec: size mismatch");
  ComplexMatrix m(rows, cols);
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < cols; ++b) m(a, b) = v(a * cols + b);
  return m;
}

HermitianEigen eig_hermitian(const HermitianOperator& h) {
  // SelfAdjointEigenSolver: Householder tridiagonalization + implicit QL, no randomness.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
  if (es.info() != Eigen::Success) throw SolverError("eig_hermitian: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

ComplexMatrix pauli(int index) {
  ComplexMatrix s(2, 2);
  const Complex i(0.0, 1.0);
  switch (index) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw InputError("pauli: index must be 0..3");
  }
  return s;
}

SparseHermitian hermitian_basis_element(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim * dim)
    throw InputError("hermitian_basis_element: index out of range");
  const int a = index / dim;
  const int b = index % dim;
  const double r = 1.0 / std::sqrt(2.0);
  if (a == b) return {{a, a, 1.0}};
  if (a < b) return {{a, b, r}, {b, a, r}};
  // a > b: imaginary antisymmetric pair on (b, a).
  return {{b, a, Complex(0.0, -r)}, {a, b, Complex(0.0, r)}};
}

RealVector hermitian_coordinates(const ComplexMatrix& h) {
  const int d = static_cast<int>(h.rows());
  RealVector c(d * d);
  const double s = std::sqrt(2.0);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (a == b)
        c(a * d + b) = h(a, a).real();
      else if (a < b)
        c(a * d + b) = s * 0.5 * (h(a, b) + h(b, a)).real();
      else  // pair (b, a): <B, H> = (-i H(a,b) + i H(b,a)) / sqrt2
        c(a * d + b) = (Complex(0.0, -1.0) * h(a, b) + Complex(0.0, 1.0) * h(b, a)).real() / s;
    }
  }
  return c;
}

ComplexMatrix from_hermitian_coordinates(const RealVector& coords, int dim) {
  if (coords.size() != static_cast<Eigen::Index>(dim) * dim)
    throw InputError("from_hermitian_coordinates: size mismatch");
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim * dim; ++i)
    for (const auto& e : hermitian_basis_element(dim, i)) h(e.row, e.col) += coords(i) * e.value;
  return h;
}

double sparse_inner(const SparseHermitian& s, const ComplexMatrix& m) {
  Complex acc = 0.0;
  for (const auto& e : s) acc += e.value * m(e.col, e.row);
  return acc.real();
}

ComplexMatrix to_dense(const SparseHermitian& s, int dim) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& e : s) m(e.row, e.col) += e.value;
  return m;
}

SparseHermitian partial_transpose(const SparseHermitian& s, std::span<const int> dims,
                                  std::span<const int> which) {
  check_subsystems(which, dims.size(), "partial_transpose");
  const auto strides = strides_of(dims);
  SparseHermitian out;
  out.reserve(s.size());
  for (const auto& e : s) {
    int rr = e.row;
    int cc = e.col;
    for (int w : which) {
      const int dr = (e.row / strides[w]) % dims[w];
      const int dc = (e.col / strides[w]) % dims[w];
      rr += (dc - dr) * strides[w];
      cc += (dr - dc) * strides[w];
    }
    out.push_back({rr, cc, e.value});
  }
  return out;
}

}  // namespace sepcert
