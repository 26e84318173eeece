#include "sepcert/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace sepcert {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

void require_shape(const ComplexMatrix& m, int d, const char* what) {
  if (m.rows() != d || m.cols() != d) throw InputError(std::string(what) + ": wrong matrix size");
}

ComplexMatrix id(int d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix proj(const ComplexVector& v) { return v * v.adjoint(); }

const std::array<int, 4> kQubits4{2, 2, 2, 2};

}  // namespace

ComplexMatrix psi_map(double t, const ComplexMatrix& m) {
  if (!(t > 0.0)) throw InputError("psi_map: t must be positive");
  require_shape(m, 2, "psi_map");
  ComplexMatrix r = m;
  r(0, 0) *= t;
  r(1, 1) /= t;
  return r;
}

ComplexMatrix phi_map(const ComplexMatrix& m) {
  require_shape(m, 2, "phi_map");
  ComplexMatrix r(2, 2);
  r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return r;
}

ComplexMatrix xi_map(double t, const ComplexMatrix& m) {
  require_shape(m, 4, "xi_map");
  const ComplexMatrix a = m.topLeftCorner(2, 2), b = m.topRightCorner(2, 2);
  const ComplexMatrix c = m.bottomLeftCorner(2, 2), d = m.bottomRightCorner(2, 2);
  ComplexMatrix r(4, 4);
  r.topLeftCorner(2, 2) = psi_map(t, d) + phi_map(d);
  r.topRightCorner(2, 2) = psi_map(t, b) + phi_map(c);
  r.bottomLeftCorner(2, 2) = psi_map(t, c) + phi_map(b);
  r.bottomRightCorner(2, 2) = psi_map(t, a) + phi_map(a);
  return r;
}

ComplexMatrix m_u(const ComplexVector& u) {
  if (u.size() != 2) throw InputError("m_u: vector must have length 2");
  ComplexMatrix r(2, 2);
  r << std::conj(u(0)), std::conj(u(1)), -u(1), u(0);
  return r;
}

ComplexMatrix apply_choi(const ComplexMatrix& q, int dim_x, int dim_y, const ComplexMatrix& y) {
  require_shape(q, dim_x * dim_y, "apply_choi");
  require_shape(y, dim_y, "apply_choi");
  ComplexMatrix out = ComplexMatrix::Zero(dim_x, dim_x);
  for (int j = 0; j < dim_y; ++j)
    for (int k = 0; k < dim_y; ++k) {
      if (y(j, k) == Complex(0.0)) continue;
      for (int a = 0; a < dim_x; ++a)
        for (int b = 0; b < dim_x; ++b) out(a, b) += q(a * dim_y + j, b * dim_y + k) * y(j, k);
    }
  return out;
}

ComplexMatrix bell_phase_u() {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = 1.0;
  u(1, 1) = Complex(0.0, 1.0);
  return u;
}

ComplexMatrix bell_phase_v() {
  ComplexMatrix v(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  v << r, Complex(0.0, r), Complex(0.0, r), r;
  return v;
}

ThreeBellCertificate three_bell_resource_certificate(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw InputError("three_bell_resource_certificate: epsilon must lie strictly between 0 and 1");
  const ComplexMatrix t = proj(tau(eps));
  const ComplexMatrix p4 = proj(bell(4));
  const std::array<int, 2> pair{2, 2};
  const std::array<int, 1> first{0};
  const double s = std::sqrt(1.0 - eps * eps);
  // Ordered X1 Y1 X2 Y2 here; W* . W moves it to X1 X2 Y1 Y2.
  const ComplexMatrix h = (kron(id(4), t) / 2.0 + s * kron(p4, partial_transpose(p4, pair, first))) / 3.0;
  const ComplexMatrix w = reorder_swap_w();
  const ComplexMatrix hw = hermitian_part(w.adjoint() * h * w);

  ThreeBellCertificate c;
  c.epsilon = eps;
  c.certificate = DualCertificate::make(HermitianOperator(hw), ConeTag::SepDual, "three-bell-resource", eps);
  for (int k = 0; k < 3; ++k) {
    const ComplexMatrix rho = w.adjoint() * kron(proj(bell(k + 1)), t) * w;
    c.q[k] = HermitianOperator(hermitian_part(hw - rho / 3.0));
  }
  return c;
}

double choi_link_residual(const ThreeBellCertificate& c) {
  const double eps = c.epsilon;
  const double scale = std::sqrt(1.0 - eps * eps) / 12.0;
  const double t = std::sqrt((1.0 + eps) / (1.0 - eps));
  const ComplexMatrix s = kron(pauli(3), pauli(0));
  double worst = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      ComplexMatrix e = ComplexMatrix::Zero(4, 4);
      e(j, k) = 1.0;
      const ComplexMatrix lhs = apply_choi(c.q[0].matrix(), 4, 4, e);
      const ComplexMatrix rhs = scale * s * xi_map(t, e) * s;
      worst = std::max(worst, (lhs - rhs).norm());
    }
  return worst;
}

std::array<double, 2> conjugation_residuals(const ThreeBellCertificate& c) {
  // U acts on X1 and Y1, i.e. subsystems 0 and 2 of X1 X2 Y1 Y2.
  auto conj = [](const ComplexMatrix& u, const ComplexMatrix& q) {
    const ComplexMatrix full = kron(kron(u, id(2)), kron(u, id(2)));
    return ComplexMatrix(full.adjoint() * q * full);
  };
  const ComplexMatrix& q1 = c.q[0].matrix();
  return {(c.q[1].matrix() - conj(bell_phase_u(), q1)).norm(),
          (c.q[2].matrix() - conj(bell_phase_v(), q1)).norm()};
}

DualCertificate four_bell_resource_certificate(double eps) {
  const ComplexMatrix t = proj(tau(eps));
  const ComplexMatrix p4 = proj(bell(4));
  const std::array<int, 2> pair{2, 2};
  const std::array<int, 1> first{0};
  const double s = std::sqrt(1.0 - eps * eps);
  const ComplexMatrix h = (kron(id(4), t) + s * kron(id(4), partial_transpose(p4, pair, first))) / 8.0;
  const ComplexMatrix w = reorder_swap_w();
  return DualCertificate::make(HermitianOperator(hermitian_part(w.adjoint() * h * w)), ConeTag::PptDual,
                               "four-bell-resource", eps);
}

std::array<double, 4> four_bell_partial_transpose_min_eigenvalues(double eps) {
  const DualCertificate c = four_bell_resource_certificate(eps);
  const ComplexMatrix w = reorder_swap_w();
  const ComplexMatrix t = proj(tau(eps));
  const std::array<int, 2> x_sys{0, 1};
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix rho = w.adjoint() * kron(proj(bell(k + 1)), t) * w;
    const ComplexMatrix diff = hermitian_part(c.h.matrix() - rho / 4.0);
    out[k] = min_eigenvalue(hermitian_part(partial_transpose(diff, kQubits4, x_sys)));
  }
  return out;
}

double skew_symmetry_residual(const ComplexMatrix& u, const ComplexMatrix& v) {
  const ComplexMatrix m = v.transpose() * u;
  return (m.transpose() + m).norm();
}

HermitianOperator breuer_hall_witness(const ComplexMatrix& u, const ComplexMatrix& v) {
  const int n = static_cast<int>(u.rows());
  require_shape(u, n, "breuer_hall_witness");
  require_shape(v, n, "breuer_hall_witness");
  if ((u.adjoint() * u - id(n)).norm() > 1e-10 || (v.adjoint() * v - id(n)).norm() > 1e-10)
    throw InputError("breuer_hall_witness: U and V must be unitary");
  if (skew_symmetry_residual(u, v) > 1e-10) throw InputError("breuer_hall_witness: V^T U is not skew-symmetric");
  const std::array<int, 2> dims{n, n};
  const std::array<int, 1> x{0};
  const ComplexVector vu = vec(u), vv = vec(v);
  const ComplexMatrix w = id(n * n) - proj(vu) - partial_transpose(proj(vv), dims, x);
  return HermitianOperator(hermitian_part(w));
}

ComplexMatrix compress_y(const ComplexMatrix& h, int dim_x, int dim_y, const ComplexVector& y) {
  require_shape(h, dim_x * dim_y, "compress_y");
  if (y.size() != dim_y) throw InputError("compress_y: vector has the wrong length");
  const ComplexMatrix iy = kron(id(dim_x), ComplexMatrix(y));
  return hermitian_part(iy.adjoint() * h * iy);
}

ComplexMatrix compress_x(const ComplexMatrix& h, int dim_x, int dim_y, const ComplexVector& x) {
  require_shape(h, dim_x * dim_y, "compress_x");
  if (x.size() != dim_x) throw InputError("compress_x: vector has the wrong length");
  const ComplexMatrix xi = kron(ComplexMatrix(x), id(dim_y));
  return hermitian_part(xi.adjoint() * h * xi);
}

std::array<ComplexMatrix, 4> ydy_unitaries() {
  const ComplexMatrix is2 = Complex(0.0, 1.0) * pauli(2);
  return {kron(pauli(0), pauli(0)), kron(pauli(1), pauli(1)), kron(is2, pauli(1)), kron(pauli(3), pauli(1))};
}

ComplexMatrix ydy_v() { return kron(ComplexMatrix(Complex(0.0, 1.0) * pauli(2)), pauli(3)); }

DualCertificate ydy_certificate() {
  const std::array<int, 2> dims{4, 4};
  const std::array<int, 1> x{0};
  const ComplexMatrix h = (id(16) - partial_transpose(proj(vec(ydy_v())), dims, x)) / 16.0;
  return DualCertificate::make(HermitianOperator(hermitian_part(h)), ConeTag::SepDual, "ydy");
}

// --- See-saw search ------------------------------------------------------------

std::uint64_t restart_seed(std::uint64_t master, int restart) {
  std::uint64_t z = master + static_cast<std::uint64_t>(restart) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double product_overlap(const HermitianOperator& h, const ProductVector& v) {
  const ComplexVector k = v.ket();
  if (k.size() != h.dim()) throw InputError("product_overlap: dimension mismatch");
  return k.dot(h.matrix() * k).real();
}

namespace {

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  ComplexVector x, y;
  int alternations = 0;
};

ComplexVector min_eigenvector(const ComplexMatrix& m, double& value) {
  const auto e = eig_hermitian(HermitianOperator(m));
  value = e.values(0);
  return e.vectors.col(0);
}

RestartOutcome run_restart(const ComplexMatrix& h, int dx, int dy, std::uint64_t seed, const SearchBudget& b) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ComplexVector y(dy);
  for (int i = 0; i < dy; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    y(i) = Complex(re, im);
  }
  y /= y.norm();
  RestartOutcome out;
  ComplexVector x;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= b.max_alternations; ++it) {
    double vx = 0.0, vy = 0.0;
    x = min_eigenvector(compress_y(h, dx, dy, y), vx);
    y = min_eigenvector(compress_x(h, dx, dy, x), vy);
    out.alternations = it;
    if (vy < out.value) {
      out.value = vy;
      out.x = x;
      out.y = y;
    }
    if (prev - vy < b.tolerance) break;
    prev = vy;
  }
  return out;
}

}  // namespace

ConeSearchReport block_positivity_search(const HermitianOperator& h, const BipartiteSpace& space,
                                         const SearchBudget& budget) {
  if (h.dim() != space.dim()) throw InputError("block_positivity_search: dimension mismatch");
  if (budget.restarts <= 0) throw InputError("block_positivity_search: restarts must be positive");
  if (budget.max_alternations <= 0) throw InputError("block_positivity_search: alternation cap must be positive");
  const int dx = space.dim_x(), dy = space.dim_y();
  std::vector<RestartOutcome> outcomes(budget.restarts);
  const int threads = std::clamp(budget.threads, 1, budget.restarts);
  auto work = [&](int first, int stride) {
    for (int i = first; i < budget.restarts; i += stride)
      outcomes[i] = run_restart(h.matrix(), dx, dy, restart_seed(budget.seed, i), budget);
  };
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  ConeSearchReport rep;
  rep.restarts = budget.restarts;
  rep.seed = budget.seed;
  rep.iterations_per_restart = budget.max_alternations;
  int best = 0;
  for (int i = 0; i < budget.restarts; ++i) {
    rep.max_alternations_used = std::max(rep.max_alternations_used, outcomes[i].alternations);
    if (outcomes[i].value < outcomes[best].value) best = i;
  }
  rep.best_restart = best;
  rep.witness = ProductVector::make(outcomes[best].x, outcomes[best].y);
  rep.min_overlap = product_overlap(h, rep.witness);
  return rep;
}

}  // namespace sepcert
