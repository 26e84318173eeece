#include "sepcert/ups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

namespace sepcert {

namespace {

constexpr double kNullThreshold = 1e-10;
constexpr double kSameState = 1.0 - 1e-9;

// Orthonormal basis (columns) of the vectors orthogonal to every listed vector.
ComplexMatrix null_space(const std::vector<const ComplexVector*>& vs, int dim) {
  if (vs.empty()) return ComplexMatrix::Identity(dim, dim);
  ComplexMatrix a(static_cast<Eigen::Index>(vs.size()), dim);
  for (std::size_t i = 0; i < vs.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = vs[i]->adjoint();
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kNullThreshold * sv(0)) ++rank;
  return svd.matrixV().rightCols(dim - rank);
}

void check_size(const UPSet& s) {
  if (s.size() > kMaxUpsSize) throw InputError("UPS enumeration is limited to 20 members");
}

std::vector<ProductVector> enumerate_for(const UPSet& s, int k) {
  const int n = s.size();
  const auto& m = s.members();
  std::vector<int> others;
  for (int j = 0; j < n; ++j)
    if (j != k) others.push_back(j);
  const int no = static_cast<int>(others.size());
  std::vector<ProductVector> found;
  for (std::uint32_t mask = 0; mask < (1u << no); ++mask) {
    std::vector<const ComplexVector*> xs, ys;
    for (int b = 0; b < no; ++b) {
      if (mask & (1u << b))
        xs.push_back(&m[others[b]].x);
      else
        ys.push_back(&m[others[b]].y);
    }
    const ComplexMatrix nx = null_space(xs, s.space().dim_x());
    if (nx.cols() == 0) continue;
    const ComplexMatrix ny = null_space(ys, s.space().dim_y());
    if (ny.cols() == 0) continue;
    if (nx.cols() > 1 || ny.cols() > 1)
      throw InputError("replacement_projections: the set is extendable (a product family is orthogonal to all members)");
    ProductVector cand = ProductVector::make(nx.col(0), ny.col(0));
    const ComplexVector ck = cand.ket();
    bool duplicate = false;
    for (const auto& f : found)
      if (std::abs(f.ket().dot(ck)) > kSameState) {
        duplicate = true;
        break;
      }
    if (!duplicate) found.push_back(std::move(cand));
  }
  return found;
}

}  // namespace

ExtensionCheck is_unextendable(const UPSet& s) {
  check_size(s);
  const int n = s.size();
  const auto& m = s.members();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<const ComplexVector*> xs, ys;
    for (int j = 0; j < n; ++j) {
      if (mask & (1u << j))
        xs.push_back(&m[j].x);
      else
        ys.push_back(&m[j].y);
    }
    const ComplexMatrix nx = null_space(xs, s.space().dim_x());
    if (nx.cols() == 0) continue;
    const ComplexMatrix ny = null_space(ys, s.space().dim_y());
    if (ny.cols() == 0) continue;
    return {false, ProductVector::make(nx.col(0), ny.col(0))};
  }
  return {true, std::nullopt};
}

std::vector<int> ReplacementSet::counts() const {
  std::vector<int> c;
  for (const auto& l : lists) c.push_back(static_cast<int>(l.size()));
  return c;
}

int ReplacementSet::total() const {
  const auto c = counts();
  return std::accumulate(c.begin(), c.end(), 0);
}

ReplacementSet replacement_projections(const UPSet& s, int threads) {
  check_size(s);
  const int n = s.size();
  ReplacementSet r;
  r.lists.resize(n);
  const int t = std::clamp(threads, 1, n);
  if (t == 1) {
    for (int k = 0; k < n; ++k) r.lists[k] = enumerate_for(s, k);
    return r;
  }
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < t; ++w)
      pool.emplace_back([&, w] {
        for (int k = w; k < n; k += t) {
          try {
            r.lists[k] = enumerate_for(s, k);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return r;
}

SeparableDiscrimination separable_perfect_discrimination(const UPSet& s, const ReplacementSet& r) {
  if (static_cast<int>(r.lists.size()) != s.size())
    throw InputError("separable_perfect_discrimination: replacement lists do not match the set");
  const int d = s.space().dim();
  std::vector<HermitianOperator> columns;
  std::vector<int> owner;
  for (int k = 0; k < s.size(); ++k)
    for (const auto& p : r.lists[k]) {
      columns.push_back(HermitianOperator::projector(p.ket()));
      owner.push_back(k);
    }
  SeparableDiscrimination out;
  out.lp = solve_lp_feasibility(columns, HermitianOperator::identity(d));
  if (!out.lp.feasible()) return out;

  std::vector<ComplexMatrix> ops(s.size(), ComplexMatrix::Zero(d, d));
  for (std::size_t i = 0; i < columns.size(); ++i) ops[owner[i]] += (*out.lp.weights)(static_cast<Eigen::Index>(i)) * columns[i].matrix();
  std::vector<HermitianOperator> hops;
  for (auto& m : ops) hops.emplace_back(0.5 * (m + m.adjoint()));
  out.measurement = Measurement(std::move(hops));
  for (int k = 0; k < s.size(); ++k)
    for (int l = 0; l < s.size(); ++l) {
      const ComplexVector kl = s.members()[l].ket();
      const double v = kl.dot(out.measurement->operators()[k].matrix() * kl).real();
      if (k == l)
        out.diagonal_sum += v;
      else
        out.max_cross_term = std::max(out.max_cross_term, v);
    }
  return out;
}

SeparableDiscrimination separable_perfect_discrimination(const UPSet& s) {
  return separable_perfect_discrimination(s, replacement_projections(s));
}

double identity_span_residual(const UPSet& s, const ReplacementSet& r) {
  const int d = s.space().dim();
  std::vector<RealVector> cols;
  for (const auto& l : r.lists)
    for (const auto& p : l) cols.push_back(hermitian_coordinates(HermitianOperator::projector(p.ket()).matrix()));
  if (cols.empty()) return static_cast<double>(d) > 0 ? std::sqrt(static_cast<double>(d)) : 0.0;
  Eigen::MatrixXd a(d * d, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = cols[i];
  const RealVector target = hermitian_coordinates(ComplexMatrix::Identity(d, d));
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  return (a * cod.solve(target) - target).norm();
}

ConeSearchReport min_product_overlap(const UPSet& s, const SearchBudget& budget) {
  return block_positivity_search(s.projection_sum(), s.space(), budget);
}

UpsBound ups_plus_state_bound(const UPSet& s, const ComplexVector& z, double lambda) {
  const int d = s.space().dim();
  if (z.size() != d) throw InputError("ups_plus_state_bound: z has the wrong dimension");
  if (std::abs(z.norm() - 1.0) > 1e-12) throw InputError("ups_plus_state_bound: z must be a unit vector");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("ups_plus_state_bound: lambda must be positive");
  for (const auto& m : s.members())
    if (std::abs(m.ket().dot(z)) > 1e-10) throw InputError("ups_plus_state_bound: z is not orthogonal to the set");

  UpsBound out;
  out.lambda = lambda;
  const ComplexMatrix zz = z * z.adjoint();
  out.delta = spectral_norm(partial_trace(zz, std::array<int, 2>{s.space().dim_x(), s.space().dim_y()},
                                          std::array<int, 1>{0}));
  const double n1 = static_cast<double>(s.size() + 1);
  out.bound = 1.0 - lambda / (n1 * out.delta);
  const ComplexMatrix pi = s.projection_sum().matrix();
  ComplexMatrix h = (pi + (1.0 - lambda / out.delta) * zz) / n1;
  h = 0.5 * (h + h.adjoint());
  out.certificate = DualCertificate::make(HermitianOperator(h), ConeTag::SepDual, "ups-plus-state");
  out.member_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& m : s.members()) {
    const ComplexVector k = m.ket();
    const ComplexMatrix diff = h - k * k.adjoint() / n1;
    out.member_min_eigenvalue = std::min(out.member_min_eigenvalue, min_eigenvalue(0.5 * (diff + diff.adjoint())));
  }
  const ComplexMatrix extra = pi - (lambda / out.delta) * zz;
  out.extra_part = HermitianOperator(0.5 * (extra + extra.adjoint()));
  return out;
}

double tiles_lambda_lower_bound() {
  const double a = 1.0 - std::sqrt(5.0 / 6.0);
  return a * a / 9.0;
}

}  // namespace sepcert
