#include "sepcert/conesolve.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace sepcert {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::InfeasibleDetected: return "infeasible-detected";
    case SolveStatus::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

void write_iterate(std::ostream& out, const IterateRecord& r) {
  std::ostringstream line;
  line << std::setprecision(17) << r.iteration << '\t' << r.primal << '\t' << r.dual << '\t' << r.gap
       << '\t' << r.primal_residual << '\t' << r.dual_residual << '\n';
  out << line.str();
}

namespace {

constexpr double kDependentRow = 1e-10;
constexpr double kDivergence = 1e12;

// A single sparse entry of constraint `row` inside one block.
struct Entry {
  int row;
  int r;
  int c;
  Complex v;
};

double block_inner(const BlockMatrices& a, const BlockMatrices& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += hs_inner(a[k], b[k]);
  return s;
}

double block_norm(const BlockMatrices& a) { return std::sqrt(std::max(0.0, block_inner(a, a))); }

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

class Engine {
 public:
  Engine(const SDPProblem& p, const SolverOptions& o) : p_(p), o_(o) {
    validate();
    preprocess();
  }

  SDPSolution run();

 private:
  void validate() const;
  void preprocess();
  void build_entries();

  // A(M)_i = Re Tr(A_i M) over kept rows.
  RealVector apply_a(const BlockMatrices& m) const;
  // A*(y) = sum_i y_i A_i over kept rows.
  BlockMatrices apply_a_adjoint(const RealVector& y) const;
  Eigen::MatrixXd schur(const BlockMatrices& x, const BlockMatrices& zinv) const;
  double max_step(const ComplexMatrix& m, const ComplexMatrix& dm) const;

  const SDPProblem& p_;
  const SolverOptions& o_;
  int nblocks_ = 0;
  std::vector<int> kept_;  // original constraint indices
  RealVector b_;
  std::vector<std::vector<Entry>> by_block_;  // entries of kept rows per block
  std::vector<std::vector<int>> rows_in_block_;
  Eigen::LLT<Eigen::MatrixXd> gram_llt_;
};

void Engine::validate() const {
  if (p_.block_dims.empty()) throw InputError("solve_sdp: no blocks");
  if (p_.objective.size() != p_.block_dims.size())
    throw InputError("solve_sdp: objective must have one matrix per block");
  for (std::size_t k = 0; k < p_.block_dims.size(); ++k) {
    const int d = p_.block_dims[k];
    if (d <= 0) throw InputError("solve_sdp: block dimensions must be positive");
    if (p_.objective[k].rows() != d || p_.objective[k].cols() != d)
      throw InputError("solve_sdp: objective block has the wrong size");
    if (!is_hermitian(p_.objective[k])) throw InputError("solve_sdp: objective block is not Hermitian");
  }
  for (const auto& con : p_.constraints) {
    for (const auto& t : con.terms) {
      if (t.block < 0 || t.block >= static_cast<int>(p_.block_dims.size()))
        throw InputError("solve_sdp: constraint refers to a missing block");
      const int d = p_.block_dims[t.block];
      for (const auto& e : t.op)
        if (e.row < 0 || e.row >= d || e.col < 0 || e.col >= d)
          throw InputError("solve_sdp: constraint entry out of range");
      if (!is_hermitian(to_dense(t.op, d))) throw InputError("solve_sdp: constraint operator is not Hermitian");
    }
    if (!std::isfinite(con.rhs)) throw InputError("solve_sdp: non-finite right-hand side");
  }
}

void Engine::build_entries() {
  by_block_.assign(nblocks_, {});
  rows_in_block_.assign(nblocks_, {});
  for (int i = 0; i < static_cast<int>(kept_.size()); ++i) {
    for (const auto& t : p_.constraints[kept_[i]].terms) {
      if (t.op.empty()) continue;
      auto& rows = rows_in_block_[t.block];
      if (rows.empty() || rows.back() != i) rows.push_back(i);
      for (const auto& e : t.op) by_block_[t.block].push_back({i, e.row, e.col, e.value});
    }
  }
}

void Engine::preprocess() {
  nblocks_ = static_cast<int>(p_.block_dims.size());
  const int m = static_cast<int>(p_.constraints.size());
  kept_.resize(m);
  for (int i = 0; i < m; ++i) kept_[i] = i;
  build_entries();

  // Gram matrix G_ij = <A_i, A_j>, using the transposed-position pairing.
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < nblocks_; ++k) {
    const int d = p_.block_dims[k];
    std::vector<std::vector<std::pair<int, Complex>>> at(static_cast<std::size_t>(d) * d);
    for (const auto& e : by_block_[k]) at[static_cast<std::size_t>(e.r) * d + e.c].push_back({e.row, e.v});
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        for (const auto& [i, vi] : at[static_cast<std::size_t>(r) * d + c])
          for (const auto& [j, vj] : at[static_cast<std::size_t>(c) * d + r]) g(i, j) += (vi * vj).real();
  }
  RealVector b(m);
  for (int i = 0; i < m; ++i) b(i) = p_.constraints[i].rhs;

  bool all_independent = m > 0;
  if (m > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() == Eigen::Success) {
      const Eigen::MatrixXd l = llt.matrixL();
      for (int i = 0; i < m && all_independent; ++i)
        if (!(l(i, i) * l(i, i) > kDependentRow * kDependentRow * g(i, i)) || g(i, i) <= 0.0)
          all_independent = false;
    } else {
      all_independent = false;
    }
  }

  if (all_independent || m == 0) {
    b_ = b;
    gram_llt_.compute(g);
    return;
  }

  // In-order Cholesky: a row is dropped when its residual against the kept
  // rows is negligible; its right-hand side must then be consistent.
  std::vector<int> kept;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int k = static_cast<int>(kept.size());
    RealVector gi(k);
    for (int a = 0; a < k; ++a) gi(a) = g(kept[a], i);
    RealVector li = k ? RealVector(l.topLeftCorner(k, k).triangularView<Eigen::Lower>().solve(gi))
                      : RealVector();
    const double res2 = g(i, i) - (k ? li.squaredNorm() : 0.0);
    if (g(i, i) > 0.0 && res2 > kDependentRow * kDependentRow * g(i, i)) {
      l.row(k).head(k) = li.transpose();
      l(k, k) = std::sqrt(res2);
      kept.push_back(i);
      continue;
    }
    double predicted = 0.0;
    if (k) {
      const RealVector coef = l.topLeftCorner(k, k).transpose().triangularView<Eigen::Upper>().solve(li);
      for (int a = 0; a < k; ++a) predicted += coef(a) * b(kept[a]);
    }
    if (std::abs(predicted - b(i)) > 1e-8 * (1.0 + std::abs(b(i))))
      throw InputError("solve_sdp: dependent constraints with inconsistent right-hand sides");
  }
  kept_ = kept;
  const int mk = static_cast<int>(kept_.size());
  b_.resize(mk);
  Eigen::MatrixXd gk(mk, mk);
  for (int a = 0; a < mk; ++a) {
    b_(a) = b(kept_[a]);
    for (int c = 0; c < mk; ++c) gk(a, c) = g(kept_[a], kept_[c]);
  }
  gram_llt_.compute(gk);
  build_entries();
}

RealVector Engine::apply_a(const BlockMatrices& x) const {
  RealVector out = RealVector::Zero(static_cast<Eigen::Index>(kept_.size()));
  for (int k = 0; k < nblocks_; ++k)
    for (const auto& e : by_block_[k]) out(e.row) += (e.v * x[k](e.c, e.r)).real();
  return out;
}

BlockMatrices Engine::apply_a_adjoint(const RealVector& y) const {
  BlockMatrices out(nblocks_);
  for (int k = 0; k < nblocks_; ++k) {
    out[k] = ComplexMatrix::Zero(p_.block_dims[k], p_.block_dims[k]);
    for (const auto& e : by_block_[k]) out[k](e.r, e.c) += y(e.row) * e.v;
  }
  return out;
}

// M_ij = Re Tr(A_i X A_j Z^-1). For each row i, T_i = X A_i Z^-1 is built from
// rank-one pieces and then paired with every row sharing the block.
Eigen::MatrixXd Engine::schur(const BlockMatrices& x, const BlockMatrices& zinv) const {
  const int m = static_cast<int>(kept_.size());
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < nblocks_; ++k) {
    const int d = p_.block_dims[k];
    const auto& entries = by_block_[k];
    std::vector<std::vector<const Entry*>> per_row(m);
    for (const auto& e : entries) per_row[e.row].push_back(&e);
    ComplexMatrix t(d, d);
    for (int i : rows_in_block_[k]) {
      t.setZero();
      for (const Entry* e : per_row[i]) t.noalias() += e->v * x[k].col(e->r) * zinv[k].row(e->c);
      for (const auto& e2 : entries) mat(e2.row, i) += (e2.v * t(e2.c, e2.r)).real();
    }
  }
  return 0.5 * (mat + mat.transpose());
}

// Largest alpha with M + alpha dM still positive semidefinite (infinity if unbounded).
double Engine::max_step(const ComplexMatrix& m, const ComplexMatrix& dm) const {
  Eigen::LLT<ComplexMatrix> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  const ComplexMatrix l = llt.matrixL();
  ComplexMatrix s = l.triangularView<Eigen::Lower>().solve(dm);
  s = l.triangularView<Eigen::Lower>().solve(ComplexMatrix(s.adjoint())).adjoint();
  const double lmin = min_eigenvalue(hermitian_part(s));
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

SDPSolution Engine::run() {
  const int m = static_cast<int>(kept_.size());
  int n = 0;
  for (int d : p_.block_dims) n += d;
  const BlockMatrices& cmat = p_.objective;
  const double c_norm = block_norm(cmat);
  const double b_norm = b_.norm();
  const double t = 1.0 + c_norm + (b_.size() ? b_.cwiseAbs().maxCoeff() : 0.0);

  BlockMatrices x(nblocks_), z(nblocks_);
  RealVector y = RealVector::Zero(m);
  bool primal_set = false;
  if (p_.primal_start && p_.primal_start->size() == static_cast<std::size_t>(nblocks_)) {
    bool ok = true;
    for (int k = 0; k < nblocks_ && ok; ++k) {
      const auto& xs = (*p_.primal_start)[k];
      ok = xs.rows() == p_.block_dims[k] && xs.cols() == p_.block_dims[k] &&
           Eigen::LLT<ComplexMatrix>(hermitian_part(xs)).info() == Eigen::Success;
    }
    if (ok) {
      for (int k = 0; k < nblocks_; ++k) x[k] = hermitian_part((*p_.primal_start)[k]);
      primal_set = true;
    }
  }
  if (!primal_set)
    for (int k = 0; k < nblocks_; ++k) x[k] = t * ComplexMatrix::Identity(p_.block_dims[k], p_.block_dims[k]);

  auto dual_slack = [&](const RealVector& yy) {
    BlockMatrices zz = apply_a_adjoint(yy);
    for (int k = 0; k < nblocks_; ++k) zz[k] = hermitian_part(zz[k] - cmat[k]);
    return zz;
  };
  auto all_pd = [&](const BlockMatrices& mats) {
    for (const auto& mm : mats)
      if (Eigen::LLT<ComplexMatrix>(mm).info() != Eigen::Success) return false;
    return true;
  };

  bool dual_set = false;
  if (p_.dual_start && p_.dual_start->size() == static_cast<Eigen::Index>(p_.constraints.size())) {
    RealVector ys(m);
    double dropped_mass = 0.0;
    std::vector<char> is_kept(p_.constraints.size(), 0);
    for (int a = 0; a < m; ++a) {
      ys(a) = (*p_.dual_start)(kept_[a]);
      is_kept[kept_[a]] = 1;
    }
    for (std::size_t i = 0; i < is_kept.size(); ++i)
      if (!is_kept[i]) dropped_mass += std::abs((*p_.dual_start)(static_cast<Eigen::Index>(i)));
    if (dropped_mass == 0.0) {
      BlockMatrices zs = dual_slack(ys);
      if (all_pd(zs)) {
        y = ys;
        z = zs;
        dual_set = true;
      }
    }
  }
  if (!dual_set && m > 0) {
    // y_I with A*(y_I) = I gives the dual-feasible start Z = tI - C.
    BlockMatrices id(nblocks_);
    for (int k = 0; k < nblocks_; ++k) id[k] = ComplexMatrix::Identity(p_.block_dims[k], p_.block_dims[k]);
    const RealVector yi = gram_llt_.solve(apply_a(id));
    BlockMatrices back = apply_a_adjoint(yi);
    double err = 0.0;
    for (int k = 0; k < nblocks_; ++k) err += (back[k] - id[k]).squaredNorm();
    if (yi.allFinite() && std::sqrt(err) <= 1e-8 * std::sqrt(static_cast<double>(n))) {
      y = t * yi;
      z = dual_slack(y);
      dual_set = all_pd(z);
    }
  }
  if (!dual_set) {
    y.setZero();
    for (int k = 0; k < nblocks_; ++k) z[k] = t * ComplexMatrix::Identity(p_.block_dims[k], p_.block_dims[k]);
  }

  SDPSolution sol;
  for (int iter = 0;; ++iter) {
    const RealVector rp = b_ - apply_a(x);
    BlockMatrices rd = dual_slack(y);
    for (int k = 0; k < nblocks_; ++k) rd[k] -= z[k];
    const double primal = block_inner(cmat, x);
    const double dual = b_.dot(y);
    const double xz = block_inner(x, z);
    IterateRecord rec{iter, primal, dual, dual - primal, rp.norm() / (1.0 + b_norm),
                      block_norm(rd) / (1.0 + c_norm)};
    sol.iterates.push_back(rec);
    if (o_.log) write_iterate(*o_.log, rec);

    const double scale = 1.0 + std::abs(dual);
    const bool converged = std::abs(rec.gap) <= o_.gap_tolerance * scale &&
                           std::abs(xz) <= o_.gap_tolerance * scale &&
                           rec.primal_residual <= o_.feasibility_tolerance &&
                           rec.dual_residual <= o_.feasibility_tolerance;
    sol.iterations = iter;
    if (converged) {
      sol.status = SolveStatus::Optimal;
      break;
    }
    if (block_norm(x) > kDivergence || y.norm() > kDivergence) {
      sol.status = SolveStatus::InfeasibleDetected;
      break;
    }
    if (iter >= o_.max_iterations) {
      sol.status = SolveStatus::MaxIterations;
      break;
    }

    BlockMatrices zinv(nblocks_);
    bool pd = true;
    for (int k = 0; k < nblocks_ && pd; ++k) {
      Eigen::LLT<ComplexMatrix> llt(z[k]);
      if (llt.info() != Eigen::Success) {
        pd = false;
        break;
      }
      zinv[k] = hermitian_part(llt.solve(ComplexMatrix::Identity(z[k].rows(), z[k].cols())));
    }
    if (!pd) {
      sol.status = SolveStatus::MaxIterations;
      break;
    }

    const Eigen::MatrixXd mat = schur(x, zinv);
    Eigen::LLT<Eigen::MatrixXd> mllt(mat);
    Eigen::LDLT<Eigen::MatrixXd> mldlt;
    const bool use_llt = mllt.info() == Eigen::Success;
    if (!use_llt) mldlt.compute(mat);
    auto solve_m = [&](const RealVector& rhs) -> RealVector {
      return use_llt ? RealVector(mllt.solve(rhs)) : RealVector(mldlt.solve(rhs));
    };

    BlockMatrices xrdzinv(nblocks_);
    for (int k = 0; k < nblocks_; ++k) xrdzinv[k] = x[k] * rd[k] * zinv[k];
    const RealVector base = -b_ - apply_a(xrdzinv);

    // R is the complementarity target: X Z + X dZ + dX Z = R.
    auto direction = [&](const BlockMatrices& r, RealVector& dy, BlockMatrices& dx, BlockMatrices& dz) {
      BlockMatrices rz(nblocks_);
      for (int k = 0; k < nblocks_; ++k) rz[k] = r[k] * zinv[k];
      dy = solve_m(apply_a(rz) + base);
      dz = apply_a_adjoint(dy);
      for (int k = 0; k < nblocks_; ++k) {
        dz[k] = hermitian_part(dz[k] + rd[k]);
        dx[k] = hermitian_part(rz[k] - x[k] - x[k] * dz[k] * zinv[k]);
      }
      // The Schur matrix degrades as mu -> 0; project dX back onto A(dX) = rp
      // so rounding in dy does not accumulate as primal infeasibility.
      const BlockMatrices fix = apply_a_adjoint(gram_llt_.solve(rp - apply_a(dx)));
      for (int k = 0; k < nblocks_; ++k) dx[k] += fix[k];
    };
    auto steps = [&](const BlockMatrices& dx, const BlockMatrices& dz) {
      double ap = std::numeric_limits<double>::infinity();
      double ad = ap;
      for (int k = 0; k < nblocks_; ++k) {
        ap = std::min(ap, max_step(x[k], dx[k]));
        ad = std::min(ad, max_step(z[k], dz[k]));
      }
      return std::pair{std::min(1.0, o_.step_fraction * ap), std::min(1.0, o_.step_fraction * ad)};
    };

    const double mu = xz / n;
    RealVector dy;
    BlockMatrices dx(nblocks_), dz(nblocks_), r(nblocks_);
    if (o_.predictor_corrector) {
      for (int k = 0; k < nblocks_; ++k) r[k] = ComplexMatrix::Zero(x[k].rows(), x[k].cols());
      direction(r, dy, dx, dz);
      const auto [ap, ad] = steps(dx, dz);
      double mu_aff = 0.0;
      for (int k = 0; k < nblocks_; ++k) mu_aff += hs_inner(x[k] + ap * dx[k], z[k] + ad * dz[k]);
      mu_aff /= n;
      const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
      for (int k = 0; k < nblocks_; ++k)
        r[k] = sigma * mu * ComplexMatrix::Identity(x[k].rows(), x[k].cols()) - dx[k] * dz[k];
    } else {
      for (int k = 0; k < nblocks_; ++k)
        r[k] = o_.centering * mu * ComplexMatrix::Identity(x[k].rows(), x[k].cols());
    }
    direction(r, dy, dx, dz);
    const auto [ap, ad] = steps(dx, dz);
    for (int k = 0; k < nblocks_; ++k) {
      x[k] = hermitian_part(x[k] + ap * dx[k]);
      z[k] = hermitian_part(z[k] + ad * dz[k]);
    }
    y += ad * dy;
  }

  sol.x = x;
  sol.z = z;
  sol.y = RealVector::Zero(static_cast<Eigen::Index>(p_.constraints.size()));
  for (int a = 0; a < m; ++a) sol.y(kept_[a]) = y(a);
  sol.primal_value = sol.iterates.back().primal;
  sol.dual_value = sol.iterates.back().dual;
  sol.gap = sol.iterates.back().gap;
  sol.primal_residual = sol.iterates.back().primal_residual;
  sol.dual_residual = sol.iterates.back().dual_residual;
  return sol;
}

}  // namespace

SDPSolution solve_sdp(const SDPProblem& problem, const SolverOptions& options) {
  Engine engine(problem, options);
  return engine.run();
}

LPFeasibilityResult solve_lp_feasibility(const std::vector<HermitianOperator>& columns,
                                         const HermitianOperator& target, const SolverOptions& options) {
  if (columns.empty()) throw InputError("solve_lp_feasibility: empty column list");
  const int d = target.dim();
  for (const auto& c : columns)
    if (c.dim() != d) throw InputError("solve_lp_feasibility: columns and target differ in dimension");

  const int nc = static_cast<int>(columns.size());
  const int nh = d * d;
  Eigen::MatrixXd a(nh, nc);
  for (int i = 0; i < nc; ++i) a.col(i) = hermitian_coordinates(columns[i].matrix());
  const RealVector tgt = hermitian_coordinates(target.matrix());

  // Phase 1: maximize -sum(s+ + s-) subject to A lambda + s+ - s- = target.
  // Blocks: lambda_0..lambda_{nc-1}, then (s+_j, s-_j) pairs, all 1x1.
  SDPProblem p;
  const int nvar = nc + 2 * nh;
  p.block_dims.assign(nvar, 1);
  p.objective.resize(nvar);
  for (int v = 0; v < nvar; ++v) p.objective[v] = ComplexMatrix::Constant(1, 1, v < nc ? 0.0 : -1.0);
  p.constraints.resize(nh);
  for (int j = 0; j < nh; ++j) {
    auto& con = p.constraints[j];
    con.rhs = tgt(j);
    for (int i = 0; i < nc; ++i)
      if (a(j, i) != 0.0) con.terms.push_back({i, {{0, 0, a(j, i)}}});
    con.terms.push_back({nc + 2 * j, {{0, 0, 1.0}}});
    con.terms.push_back({nc + 2 * j + 1, {{0, 0, -1.0}}});
  }
  const RealVector resid0 = tgt - a * RealVector::Ones(nc);
  BlockMatrices x0(nvar);
  for (int i = 0; i < nc; ++i) x0[i] = ComplexMatrix::Constant(1, 1, 1.0);
  for (int j = 0; j < nh; ++j) {
    x0[nc + 2 * j] = ComplexMatrix::Constant(1, 1, std::max(resid0(j), 0.0) + 1.0);
    x0[nc + 2 * j + 1] = ComplexMatrix::Constant(1, 1, std::max(-resid0(j), 0.0) + 1.0);
  }
  p.primal_start = x0;
  // Y = I/2 is strictly dual feasible when every column has positive trace.
  bool positive_traces = true;
  for (const auto& c : columns) positive_traces = positive_traces && c.trace() > 0.0;
  if (positive_traces) p.dual_start = 0.5 * hermitian_coordinates(ComplexMatrix::Identity(d, d));

  const SDPSolution sol = solve_sdp(p, options);
  if (sol.status != SolveStatus::Optimal)
    throw SolverError("solve_lp_feasibility: phase-1 solve ended with status " + to_string(sol.status));

  LPFeasibilityResult out;
  out.phase1_value = -sol.primal_value;
  const double tnorm = target.matrix().norm();
  if (out.phase1_value > 1e-6) {
    const ComplexMatrix w = from_hermitian_coordinates(sol.y, d);
    const double wn = w.norm();
    for (const auto& c : columns)
      if (hs_inner(w, c.matrix()) < -1e-10 * c.matrix().norm() * wn)
        throw SolverError("solve_lp_feasibility: Farkas witness failed column check");
    if (hs_inner(w, target.matrix()) > -1e-6 * wn * tnorm)
      throw SolverError("solve_lp_feasibility: Farkas witness failed target check");
    out.farkas = w;
    return out;
  }

  // Feasible: remove the small mismatch with a minimum-norm correction.
  RealVector lambda(nc);
  for (int i = 0; i < nc; ++i) lambda(i) = sol.x[i](0, 0).real();
  const RealVector mismatch = tgt - a * lambda;
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  RealVector polished = lambda + cod.solve(mismatch);
  if (polished.minCoeff() < 0.0 || (tgt - a * polished).norm() > (tgt - a * lambda).norm())
    polished = lambda.cwiseMax(0.0);
  out.residual = (tgt - a * polished).norm();
  if (out.residual > 1e-8)
    throw SolverError("solve_lp_feasibility: feasible branch residual " + std::to_string(out.residual) +
                      " exceeds 1e-8");
  out.weights = polished;
  return out;
}

}  // namespace sepcert
