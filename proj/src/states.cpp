#include "sepcert/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace sepcert {

namespace {

constexpr double kStateTolerance = 1e-10;
constexpr double kProbTolerance = 1e-12;
constexpr double kOrthoTolerance = 1e-10;

ComplexVector ket2(int a, int b, int d) { return kron(basis_ket(a, d), basis_ket(b, d)); }

ComplexVector from_reals(std::initializer_list<double> coeffs) {
  ComplexVector v(static_cast<Eigen::Index>(coeffs.size()));
  Eigen::Index i = 0;
  for (double c : coeffs) v(i++) = c;
  return v;
}

}  // namespace

ComplexVector canonical_phase(const ComplexVector& v, double zero_tol) {
  const double scale = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > zero_tol * std::max(1.0, scale)) {
      const Complex phase = std::conj(v(i)) / std::abs(v(i));
      ComplexVector out = v * phase;
      out(i) = std::abs(v(i));
      return out;
    }
  }
  return v;
}

ProductVector ProductVector::make(ComplexVector x, ComplexVector y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) throw InputError("ProductVector: zero factor");
  return {canonical_phase(x / nx), canonical_phase(y / ny)};
}

Ensemble::Ensemble(BipartiteSpace space, std::vector<HermitianOperator> states,
                   std::vector<double> probs)
    : space_(std::move(space)), states_(std::move(states)), probs_(std::move(probs)) {
  if (states_.empty()) throw InputError("Ensemble: no states");
  if (states_.size() != probs_.size()) throw InputError("Ensemble: states/probabilities length mismatch");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InputError("Ensemble: probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > kProbTolerance) throw InputError("Ensemble: probabilities must sum to 1");
  for (const auto& rho : states_) {
    if (rho.dim() != space_.dim()) throw InputError("Ensemble: state dimension does not match the space");
    if (std::abs(rho.trace() - 1.0) > kStateTolerance) throw InputError("Ensemble: state trace is not 1");
    if (min_eigenvalue(rho.matrix()) < -kStateTolerance)
      throw InputError("Ensemble: state is not positive semidefinite");
  }
}

Ensemble Ensemble::pure(BipartiteSpace space, std::span<const ComplexVector> kets,
                        std::vector<double> probs) {
  std::vector<HermitianOperator> states;
  states.reserve(kets.size());
  for (const auto& k : kets) {
    if (std::abs(k.norm() - 1.0) > 1e-12) throw InputError("Ensemble: pure state is not unit norm");
    states.push_back(HermitianOperator::projector(k));
  }
  return Ensemble(std::move(space), std::move(states), std::move(probs));
}

Ensemble Ensemble::uniform_pure(BipartiteSpace space, std::span<const ComplexVector> kets) {
  std::vector<double> probs(kets.size(), kets.empty() ? 0.0 : 1.0 / static_cast<double>(kets.size()));
  return pure(std::move(space), kets, std::move(probs));
}

Ensemble Ensemble::with_probs(std::vector<double> probs) const {
  return Ensemble(space_, states_, std::move(probs));
}

UPSet::UPSet(BipartiteSpace space, std::vector<ProductVector> members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (members_.empty()) throw InputError("UPSet: empty set");
  for (const auto& m : members_) {
    if (m.x.size() != space_.dim_x() || m.y.size() != space_.dim_y())
      throw InputError("UPSet: member dimension does not match the space");
    if (std::abs(m.x.norm() - 1.0) > 1e-12 || std::abs(m.y.norm() - 1.0) > 1e-12)
      throw InputError("UPSet: member factors must be unit vectors");
  }
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = i + 1; j < members_.size(); ++j) {
      const Complex ov = members_[i].x.dot(members_[j].x) * members_[i].y.dot(members_[j].y);
      if (std::abs(ov) > kOrthoTolerance) throw InputError("UPSet: members are not orthogonal");
    }
}

HermitianOperator UPSet::projection_sum() const {
  ComplexMatrix sum = ComplexMatrix::Zero(space_.dim(), space_.dim());
  for (const auto& m : members_) {
    const ComplexVector k = m.ket();
    sum += k * k.adjoint();
  }
  return HermitianOperator(0.5 * (sum + sum.adjoint()));
}

Ensemble UPSet::ensemble(std::span<const ComplexVector> extra) const {
  std::vector<ComplexVector> kets;
  for (const auto& m : members_) kets.push_back(m.ket());
  kets.insert(kets.end(), extra.begin(), extra.end());
  return Ensemble::uniform_pure(space_, kets);
}

ComplexVector basis_ket(int i, int d) {
  if (i < 0 || i >= d) throw InputError("basis_ket: index out of range");
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

ComplexVector normalized(std::initializer_list<double> coeffs) {
  ComplexVector v = from_reals(coeffs);
  return v / v.norm();
}

ComplexVector bell(int k) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (k) {
    case 1: return r * (ket2(0, 0, 2) + ket2(1, 1, 2));
    case 2: return r * (ket2(0, 0, 2) - ket2(1, 1, 2));
    case 3: return r * (ket2(0, 1, 2) + ket2(1, 0, 2));
    case 4: return r * (ket2(0, 1, 2) - ket2(1, 0, 2));
    default: throw InputError("bell: index must be in 1..4");
  }
}

ComplexVector tau(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InputError("tau: epsilon must lie in [0,1]");
  return std::sqrt((1.0 + eps) / 2.0) * ket2(0, 0, 2) + std::sqrt((1.0 - eps) / 2.0) * ket2(1, 1, 2);
}

ComplexMatrix reorder_swap_w() {
  // Output order (X1, Y1, X2, Y2) = input subsystems (0, 2, 1, 3).
  static constexpr std::array<int, 4> dims{2, 2, 2, 2};
  static constexpr std::array<int, 4> perm{0, 2, 1, 3};
  return subsystem_permutation(dims, perm);
}

Ensemble extend_with_resource(std::span<const ComplexVector> kets, double eps,
                              std::vector<double> probs) {
  const ComplexVector t = tau(eps);
  const ComplexMatrix w = reorder_swap_w();
  std::vector<ComplexVector> extended;
  for (const auto& k : kets) {
    if (k.size() != 4) throw InputError("extend_with_resource: input states must live on C^2 (x) C^2");
    extended.push_back(w.adjoint() * kron(k, t));
  }
  BipartiteSpace space({2, 2}, {2, 2});
  if (probs.empty()) return Ensemble::uniform_pure(space, extended);
  return Ensemble::pure(space, extended, std::move(probs));
}

ComplexVector tiles_psi() {
  return 0.5 * (ket2(0, 0, 3) + ket2(0, 1, 3) - ket2(0, 2, 3) - ket2(1, 2, 3));
}

namespace {

UPSet tiles_set() {
  std::vector<ProductVector> m;
  m.push_back(ProductVector::make(normalized({1, 0, 0}), normalized({1, -1, 0})));
  m.push_back(ProductVector::make(normalized({0, 0, 1}), normalized({0, 1, -1})));
  m.push_back(ProductVector::make(normalized({1, -1, 0}), normalized({0, 0, 1})));
  m.push_back(ProductVector::make(normalized({0, 1, -1}), normalized({1, 0, 0})));
  m.push_back(ProductVector::make(normalized({1, 1, 1}), normalized({1, 1, 1})));
  return UPSet(BipartiteSpace(3, 3), std::move(m));
}

UPSet feng_set() {
  std::vector<ProductVector> m;
  m.push_back(ProductVector::make(normalized({1, 0, 0, 0}), normalized({1, 0, 0, 0})));
  m.push_back(ProductVector::make(normalized({0, 1, 0, 0}), normalized({1, 0, -1, 1})));
  m.push_back(ProductVector::make(normalized({0, 0, 1, 0}), normalized({1, 1, 0, -1})));
  m.push_back(ProductVector::make(normalized({0, 0, 0, 1}), normalized({0, 0, 0, 1})));
  m.push_back(ProductVector::make(normalized({0, 1, 1, 1}), normalized({1, -1, 1, 0})));
  m.push_back(ProductVector::make(normalized({1, 0, -1, 1}), normalized({0, 0, 1, 0})));
  m.push_back(ProductVector::make(normalized({1, 1, 0, -1}), normalized({0, 1, 0, 0})));
  // Second factor (|1>+|2>+|3>): the only choice orthogonal to members 1 and 3.
  m.push_back(ProductVector::make(normalized({1, -1, 1, 0}), normalized({0, 1, 1, 1})));
  return UPSet(BipartiteSpace(4, 4), std::move(m));
}

Ensemble domino() {
  const double r = 1.0 / std::sqrt(2.0);
  auto k = [](int i) { return basis_ket(i, 3); };
  std::vector<ComplexVector> s{
      kron(k(1), k(1)),
      kron(k(0), ComplexVector(r * (k(0) + k(1)))),
      kron(k(2), ComplexVector(r * (k(1) + k(2)))),
      kron(ComplexVector(r * (k(1) + k(2))), k(0)),
      kron(ComplexVector(r * (k(0) + k(1))), k(2)),
      kron(k(0), ComplexVector(r * (k(0) - k(1)))),
      kron(k(2), ComplexVector(r * (k(1) - k(2)))),
      kron(ComplexVector(r * (k(1) - k(2))), k(0)),
      kron(ComplexVector(r * (k(0) - k(1))), k(2)),
  };
  return Ensemble::uniform_pure(BipartiteSpace(3, 3), s);
}

Ensemble ydy() {
  auto k = [](int a, int b) { return ket2(a, b, 4); };
  std::vector<ComplexVector> s{
      0.5 * (k(0, 0) + k(1, 1) + k(2, 2) + k(3, 3)),
      0.5 * (k(0, 3) + k(1, 2) + k(2, 1) + k(3, 0)),
      0.5 * (k(0, 3) + k(1, 2) - k(2, 1) - k(3, 0)),
      0.5 * (k(0, 1) + k(1, 0) - k(2, 3) - k(3, 2)),
  };
  return Ensemble::uniform_pure(BipartiteSpace(4, 4), s);
}

}  // namespace

CatalogEntry catalog(std::string_view name) {
  if (name == "bell3" || name == "bell4") {
    const int n = name == "bell3" ? 3 : 4;
    std::vector<ComplexVector> s;
    for (int k = 1; k <= n; ++k) s.push_back(bell(k));
    return Ensemble::uniform_pure(BipartiteSpace(2, 2), s);
  }
  if (name == "ydy") return ydy();
  if (name == "domino") return domino();
  if (name == "tiles") return tiles_set();
  if (name == "feng") return feng_set();
  if (name == "tiles_psi") {
    const ComplexVector psi = tiles_psi();
    return tiles_set().ensemble(std::span<const ComplexVector>(&psi, 1));
  }
  throw InputError("catalog: unknown family '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"bell3", "bell4", "ydy", "domino", "tiles", "feng", "tiles_psi"};
}

}  // namespace sepcert
