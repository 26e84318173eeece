#pragma once

// Primal-dual interior-point solver for block-diagonal semidefinite programs
//
//   maximize   <C, X>         subject to  A(X) = b,   X >= 0
//   minimize   b^T y          subject to  Z = A*(y) - C >= 0
//
// with Hermitian blocks and the real inner product Re Tr(A X), plus a linear
// feasibility routine built on the same engine.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sepcert/linalg.hpp"

namespace sepcert {

/// One block's contribution to a constraint operator.
struct BlockTerm {
  int block = 0;
  SparseHermitian op;
};

/// <A_i, X> = rhs, where A_i is the block-diagonal operator assembled from terms.
struct Constraint {
  std::vector<BlockTerm> terms;
  double rhs = 0.0;
};

using BlockMatrices = std::vector<ComplexMatrix>;

struct SDPProblem {
  std::vector<int> block_dims;
  BlockMatrices objective;  // C, one Hermitian matrix per block
  std::vector<Constraint> constraints;
  /// Strictly feasible primal point (positive definite, A(X) = b), if known.
  std::optional<BlockMatrices> primal_start;
  /// Dual multipliers with A*(y) - C positive definite, if known.
  std::optional<RealVector> dual_start;
};

struct SolverOptions {
  int max_iterations = 200;
  double gap_tolerance = 1e-9;
  double feasibility_tolerance = 1e-10;
  double step_fraction = 0.98;
  double centering = 0.1;
  bool predictor_corrector = false;
  /// Tab-separated iterate lines are written here when set.
  std::ostream* log = nullptr;
};

struct IterateRecord {
  int iteration = 0;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

enum class SolveStatus { Optimal, InfeasibleDetected, MaxIterations };

std::string to_string(SolveStatus s);

struct SDPSolution {
  SolveStatus status = SolveStatus::MaxIterations;
  BlockMatrices x;
  RealVector y;
  BlockMatrices z;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  std::vector<IterateRecord> iterates;
};

SDPSolution solve_sdp(const SDPProblem& problem, const SolverOptions& options = {});

/// Writes one iterate as a tab-separated line.
void write_iterate(std::ostream& out, const IterateRecord& r);

/// Either nonnegative weights reproducing the target, or a Farkas witness W
/// with <W, column_i> >= 0 for every column and <W, target> < 0.
struct LPFeasibilityResult {
  std::optional<RealVector> weights;
  std::optional<ComplexMatrix> farkas;
  double phase1_value = 0.0;  // minimal l1 mismatch found
  double residual = 0.0;      // ||sum w_i col_i - target||_F on the feasible branch
  bool feasible() const { return weights.has_value(); }
};

LPFeasibilityResult solve_lp_feasibility(const std::vector<HermitianOperator>& columns,
                                         const HermitianOperator& target,
                                         const SolverOptions& options = {});

}  // namespace sepcert
