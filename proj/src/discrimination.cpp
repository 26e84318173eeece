#include "sepcert/discrimination.hpp"

#include <cmath>
#include <sstream>

namespace sepcert {

Measurement::Measurement(std::vector<HermitianOperator> operators) : operators_(std::move(operators)) {
  if (operators_.empty()) throw InputError("Measurement: no operators");
  const int d = operators_.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& p : operators_) {
    if (p.dim() != d) throw InputError("Measurement: operators differ in dimension");
    if (min_eigenvalue(p.matrix()) < -1e-9) throw InputError("Measurement: operator is not positive semidefinite");
    sum += p.matrix();
  }
  if ((sum - ComplexMatrix::Identity(d, d)).norm() > 1e-8)
    throw InputError("Measurement: operators do not sum to the identity");
}

std::string to_string(ConeTag t) {
  switch (t) {
    case ConeTag::PsdDual: return "psd-dual";
    case ConeTag::PptDual: return "ppt-dual";
    case ConeTag::SepDual: return "sep-dual";
  }
  return "unknown";
}

ConeTag cone_tag_from_string(const std::string& s) {
  if (s == "psd-dual") return ConeTag::PsdDual;
  if (s == "ppt-dual") return ConeTag::PptDual;
  if (s == "sep-dual") return ConeTag::SepDual;
  throw InputError("unknown cone tag '" + s + "'");
}

DualCertificate DualCertificate::make(HermitianOperator h, ConeTag cone, std::string construction,
                                      std::optional<double> epsilon) {
  DualCertificate c;
  c.claimed_value = h.trace();
  c.h = std::move(h);
  c.cone = cone;
  c.construction = std::move(construction);
  c.epsilon = epsilon;
  return c;
}

double success_probability(const Ensemble& e, const Measurement& m) {
  if (m.size() != e.size()) throw InputError("success_probability: measurement and ensemble sizes differ");
  double s = 0.0;
  for (int k = 0; k < e.size(); ++k) {
    if (m.operators()[k].dim() != e.dim()) throw InputError("success_probability: dimension mismatch");
    s += e.probs()[k] * hs_inner(e.states()[k].matrix(), m.operators()[k].matrix());
  }
  return s;
}

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Blocks P_1..P_N, then (for PPT) Q_1..Q_N with Q_k = T_X(P_k).
DiscriminationResult solve_discrimination(const Ensemble& e, bool ppt, const SolverOptions& options) {
  const int n = e.size();
  const int d = e.dim();
  const int d2 = d * d;
  const auto dims = e.space().subsystem_dims();
  const auto x_sys = e.space().subsystems(Factor::x());

  SDPProblem p;
  p.block_dims.assign(ppt ? 2 * n : n, d);
  for (int k = 0; k < n; ++k) p.objective.push_back(e.probs()[k] * e.states()[k].matrix());
  if (ppt)
    for (int k = 0; k < n; ++k) p.objective.push_back(ComplexMatrix::Zero(d, d));

  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<SparseHermitian> basis(d2);
  for (int i = 0; i < d2; ++i) basis[i] = hermitian_basis_element(d, i);
  for (int i = 0; i < d2; ++i) {
    Constraint c;
    for (int k = 0; k < n; ++k) c.terms.push_back({k, basis[i]});
    c.rhs = sparse_inner(basis[i], id);
    p.constraints.push_back(std::move(c));
  }
  if (ppt) {
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < d2; ++i) {
        SparseHermitian neg = partial_transpose(basis[i], dims, x_sys);
        for (auto& en : neg) en.value = -en.value;
        p.constraints.push_back({{{n + k, basis[i]}, {k, std::move(neg)}}, 0.0});
      }
  }
  p.primal_start = BlockMatrices(p.block_dims.size(), id / static_cast<double>(n));

  DiscriminationResult r;
  r.solution = solve_sdp(p, options);
  const auto& s = r.solution;
  if (s.status != SolveStatus::Optimal) {
    std::ostringstream msg;
    msg << (ppt ? "optimal_ppt" : "optimal_global") << ": solver ended with status " << to_string(s.status)
        << " after " << s.iterations << " iterations (gap " << s.gap << ")";
    throw SolverError(msg.str());
  }
  r.value = s.primal_value;
  r.dual_value = s.dual_value;
  r.gap = s.gap;

  std::vector<HermitianOperator> ops;
  for (int k = 0; k < n; ++k) ops.emplace_back(hermitian_part(s.x[k]));
  r.measurement = Measurement(std::move(ops));

  RealVector yh = s.y.head(d2);
  const ComplexMatrix h = from_hermitian_coordinates(yh, d);
  r.certificate = DualCertificate::make(HermitianOperator(hermitian_part(h)), ppt ? ConeTag::PptDual : ConeTag::PsdDual,
                                        ppt ? "ppt-solver-dual" : "global-solver-dual");
  for (int k = 0; k < n; ++k) {
    r.psd_parts.push_back(s.z[k]);
    ComplexMatrix rest = h - e.probs()[k] * e.states()[k].matrix() - s.z[k];
    if (ppt) {
      r.pt_parts.push_back(s.z[n + k]);
      rest -= partial_transpose(s.z[n + k], dims, x_sys);
    }
    r.decomposition_residual = std::max(r.decomposition_residual, rest.norm());
  }
  return r;
}

}  // namespace

DiscriminationResult optimal_global(const Ensemble& e, const SolverOptions& options) {
  return solve_discrimination(e, false, options);
}

DiscriminationResult optimal_ppt(const Ensemble& e, const SolverOptions& options) {
  return solve_discrimination(e, true, options);
}

SepBoundReport sep_bound_from_certificate(const Ensemble& e, const DualCertificate& cert,
                                          const SearchBudget& budget) {
  if (cert.h.dim() != e.dim()) throw InputError("sep_bound_from_certificate: certificate dimension mismatch");
  SepBoundReport rep;
  rep.bound = cert.h.trace();
  for (int k = 0; k < e.size(); ++k) {
    const HermitianOperator diff(cert.h.matrix() - e.probs()[k] * e.states()[k].matrix());
    rep.searches.push_back(block_positivity_search(diff, e.space(), budget));
    if (rep.searches.back().min_overlap < -1e-9) rep.unrefuted = false;
  }
  return rep;
}

double three_bell_value(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InputError("three_bell_value: epsilon must lie in [0,1]");
  return (2.0 + std::sqrt(1.0 - eps * eps)) / 3.0;
}

double four_bell_value(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw InputError("four_bell_value: epsilon must lie in [0,1]");
  return (1.0 + std::sqrt(1.0 - eps * eps)) / 2.0;
}

Measurement bell_measure_and_compare(int num_states) {
  if (num_states < 3 || num_states > 4)
    throw InputError("bell_measure_and_compare: only 3 or 4 Bell states are supported");
  auto proj = [](int a, int b) {
    return HermitianOperator::projector(kron(basis_ket(a, 2), basis_ket(b, 2))).matrix();
  };
  std::vector<HermitianOperator> ops(num_states, HermitianOperator::zero(4));
  ops[0] = HermitianOperator(proj(0, 0) + proj(1, 1));
  ops[2] = HermitianOperator(proj(0, 1) + proj(1, 0));
  return Measurement(std::move(ops));
}

Measurement ydy_standard_basis_measurement() {
  std::vector<ComplexMatrix> ops(4, ComplexMatrix::Zero(16, 16));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      int k;
      if (a == b)
        k = 0;
      else if (a + b == 3)
        k = 1;
      else if (a / 2 == b / 2)  // {0,1} or {2,3}
        k = 3;
      else
        k = 2;
      ops[k](a * 4 + b, a * 4 + b) = 1.0;
    }
  std::vector<HermitianOperator> h;
  for (auto& m : ops) h.emplace_back(std::move(m));
  return Measurement(std::move(h));
}

}  // namespace sepcert
