#pragma once

// Unextendable product sets: unextendability, the finite sets of product
// vectors orthogonal to all members but one, perfect separable
// discrimination via linear feasibility, and the bound for a UPS plus one
// extra state.

#include <optional>
#include <vector>

#include "sepcert/conesolve.hpp"
#include "sepcert/discrimination.hpp"
#include "sepcert/seesaw.hpp"
#include "sepcert/states.hpp"

namespace sepcert {

/// Subset enumeration is exponential in the set size; larger sets are rejected.
inline constexpr int kMaxUpsSize = 20;

struct ExtensionCheck {
  bool unextendable = true;
  std::optional<ProductVector> witness;  // orthogonal to every member when extendable
};

ExtensionCheck is_unextendable(const UPSet& s);

/// lists[k]: product vectors orthogonal to every member except member k.
struct ReplacementSet {
  std::vector<std::vector<ProductVector>> lists;

  std::vector<int> counts() const;
  int total() const;
};

/// Throws InputError if the set turns out to be extendable.
ReplacementSet replacement_projections(const UPSet& s, int threads = 1);

struct SeparableDiscrimination {
  LPFeasibilityResult lp;
  /// P_k = sum_j w_kj x x* (x) y y* over lists[k]; present on the feasible branch.
  std::optional<Measurement> measurement;
  double max_cross_term = 0.0;  // max_{k != l} <P_k, rho_l>
  double diagonal_sum = 0.0;    // sum_k <P_k, rho_k>
};

SeparableDiscrimination separable_perfect_discrimination(const UPSet& s, const ReplacementSet& r);
SeparableDiscrimination separable_perfect_discrimination(const UPSet& s);

/// Least-squares distance from the identity to the real span of all replacement projections.
double identity_span_residual(const UPSet& s, const ReplacementSet& r);

/// Upper estimate of min <x (x) y, Pi x (x) y> over unit product vectors, Pi
/// the projection onto the span of the set.
ConeSearchReport min_product_overlap(const UPSet& s, const SearchBudget& budget = {});

struct UpsBound {
  double bound = 0.0;  // 1 - lambda / ((N+1) delta)
  double delta = 0.0;  // spectral norm of Tr_X(z z*)
  double lambda = 0.0;
  DualCertificate certificate;
  /// min over members k of the smallest eigenvalue of H - rho_k/(N+1)
  double member_min_eigenvalue = 0.0;
  /// Pi - (lambda/delta) z z*, which must be block positive.
  HermitianOperator extra_part;
};

/// Requires z orthogonal to every member and lambda > 0.
UpsBound ups_plus_state_bound(const UPSet& s, const ComplexVector& z, double lambda);

/// (1/9)(1 - sqrt(5/6))^2
double tiles_lambda_lower_bound();

}  // namespace sepcert
