#pragma once

// State families used throughout the library: Bell states, the partially
// entangled resource tau_eps, the domino and ydy ensembles and the tiles
// and feng unextendable product sets.

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sepcert/linalg.hpp"

namespace sepcert {

/// x (x) y with unit local factors.
struct ProductVector {
  ComplexVector x;
  ComplexVector y;

  /// Normalizes both factors and fixes the global phase so the first
  /// nonzero amplitude of each factor is real positive.
  static ProductVector make(ComplexVector x, ComplexVector y);

  ComplexVector ket() const { return kron(x, y); }
};

/// Multiplies v by a phase so that its first nonzero amplitude is real positive.
ComplexVector canonical_phase(const ComplexVector& v, double zero_tol = 1e-12);

/// Probabilistic ensemble of density operators on a bipartite space.
class Ensemble {
 public:
  Ensemble(BipartiteSpace space, std::vector<HermitianOperator> states, std::vector<double> probs);

  static Ensemble uniform_pure(BipartiteSpace space, std::span<const ComplexVector> kets);
  static Ensemble pure(BipartiteSpace space, std::span<const ComplexVector> kets,
                       std::vector<double> probs);

  const BipartiteSpace& space() const { return space_; }
  const std::vector<HermitianOperator>& states() const { return states_; }
  const std::vector<double>& probs() const { return probs_; }
  int size() const { return static_cast<int>(states_.size()); }
  int dim() const { return space_.dim(); }

  /// Same states with a different prior.
  Ensemble with_probs(std::vector<double> probs) const;

 private:
  BipartiteSpace space_;
  std::vector<HermitianOperator> states_;
  std::vector<double> probs_;
};

/// Orthonormal set of product vectors {u_k (x) v_k}.
class UPSet {
 public:
  UPSet(BipartiteSpace space, std::vector<ProductVector> members);

  const BipartiteSpace& space() const { return space_; }
  const std::vector<ProductVector>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }

  /// Sum of the member projections.
  HermitianOperator projection_sum() const;
  /// Uniform ensemble of the members, optionally with extra pure states appended.
  Ensemble ensemble(std::span<const ComplexVector> extra = {}) const;

 private:
  BipartiteSpace space_;
  std::vector<ProductVector> members_;
};

/// Bell state phi_k, k in 1..4, on C^2 (x) C^2.
ComplexVector bell(int k);

/// sqrt((1+eps)/2)|00> + sqrt((1-eps)/2)|11>, eps in [0,1].
ComplexVector tau(double eps);

/// Standard basis vector |i> of C^d.
ComplexVector basis_ket(int i, int d);
/// Complex vector from real coefficients, normalized.
ComplexVector normalized(std::initializer_list<double> coeffs);

/// Permutation W taking X1 (x) X2 (x) Y1 (x) Y2 to X1 (x) Y1 (x) X2 (x) Y2 for qubits.
ComplexMatrix reorder_swap_w();

/// W* (phi_k (x) tau_eps) W for each input ket on X1 (x) Y1: returns density
/// operators on (X1 X2):(Y1 Y2) with nested factors [2,2]:[2,2]. Uniform prior
/// unless probs is given.
Ensemble extend_with_resource(std::span<const ComplexVector> kets, double eps,
                              std::vector<double> probs = {});

using CatalogEntry = std::variant<Ensemble, UPSet>;

/// Named families: bell3, bell4, ydy, domino, tiles, feng, tiles_psi.
CatalogEntry catalog(std::string_view name);
std::vector<std::string> catalog_names();

/// The state orthogonal to the tiles set used with "tiles_psi".
ComplexVector tiles_psi();

}  // namespace sepcert
