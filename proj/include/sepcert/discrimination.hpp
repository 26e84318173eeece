#pragma once

// State discrimination cone programs over the global (PSD) and PPT measurement
// classes, closed-form reference values and certificate scoring.

#include <optional>
#include <string>
#include <vector>

#include "sepcert/conesolve.hpp"
#include "sepcert/seesaw.hpp"
#include "sepcert/states.hpp"

namespace sepcert {

/// POVM: positive semidefinite operators summing to the identity.
class Measurement {
 public:
  Measurement() = default;
  explicit Measurement(std::vector<HermitianOperator> operators);

  const std::vector<HermitianOperator>& operators() const { return operators_; }
  int size() const { return static_cast<int>(operators_.size()); }

 private:
  std::vector<HermitianOperator> operators_;
};

/// Cone whose dual the certificate lives in: PSD (global), PPT or separable.
enum class ConeTag { PsdDual, PptDual, SepDual };
std::string to_string(ConeTag t);
ConeTag cone_tag_from_string(const std::string& s);

struct DualCertificate {
  HermitianOperator h;
  ConeTag cone = ConeTag::SepDual;
  double claimed_value = 0.0;  // Tr(H)
  std::string construction;
  std::optional<double> epsilon;

  static DualCertificate make(HermitianOperator h, ConeTag cone, std::string construction,
                              std::optional<double> epsilon = std::nullopt);
};

struct DiscriminationResult {
  double value = 0.0;  // primal optimum
  double dual_value = 0.0;
  double gap = 0.0;
  Measurement measurement;
  DualCertificate certificate;
  /// H - p_k rho_k = psd_parts[k] + T_X(pt_parts[k]); pt_parts is empty for the global class.
  std::vector<ComplexMatrix> psd_parts;
  std::vector<ComplexMatrix> pt_parts;
  /// max_k ||H - p_k rho_k - psd_parts[k] - T_X(pt_parts[k])||_F
  double decomposition_residual = 0.0;
  SDPSolution solution;
};

DiscriminationResult optimal_global(const Ensemble& e, const SolverOptions& options = {});
DiscriminationResult optimal_ppt(const Ensemble& e, const SolverOptions& options = {});

/// sum_k p_k <rho_k, P_k>
double success_probability(const Ensemble& e, const Measurement& m);

struct SepBoundReport {
  double bound = 0.0;  // Tr(H)
  std::vector<ConeSearchReport> searches;  // one per ensemble member
  bool unrefuted = true;
};

/// Tr(H) together with a see-saw search on every H - p_k rho_k.
SepBoundReport sep_bound_from_certificate(const Ensemble& e, const DualCertificate& cert,
                                          const SearchBudget& budget = {});

/// (2 + sqrt(1 - eps^2)) / 3
double three_bell_value(double eps);
/// (1 + sqrt(1 - eps^2)) / 2
double four_bell_value(double eps);

/// Local standard-basis measurement on both qubits, guessing phi_1 on equal
/// outcomes and phi_3 otherwise. Operators ordered like bell(1..num_states).
Measurement bell_measure_and_compare(int num_states);

/// Both parties measure in the standard basis of C^4; outcome pairs (a, b)
/// are assigned to the four ensemble members of the "ydy" family.
Measurement ydy_standard_basis_measurement();

}  // namespace sepcert
