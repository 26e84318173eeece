#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sepcert/discrimination.hpp"

using namespace sepcert;

namespace {

Ensemble family(const char* name) { return std::get<Ensemble>(catalog(name)); }

ComplexVector random_ket(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n;
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = {n(rng), n(rng)};
  return v.normalized();
}

void check_ppt_measurement(const DiscriminationResult& r, const BipartiteSpace& space) {
  ComplexMatrix sum = ComplexMatrix::Zero(space.dim(), space.dim());
  for (const auto& p : r.measurement.operators()) {
    CHECK(min_eigenvalue(p.matrix()) >= -1e-8);
    CHECK(min_eigenvalue(partial_transpose(p, space, Factor::x()).matrix()) >= -1e-8);
    sum += p.matrix();
  }
  CHECK((sum - ComplexMatrix::Identity(space.dim(), space.dim())).norm() <= 1e-8);
}

}  // namespace

TEST_CASE("measurement validation") {
  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK_NOTHROW(Measurement({HermitianOperator(half), HermitianOperator(half)}));
  CHECK_THROWS_AS(Measurement({HermitianOperator(half)}), InputError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = -0.1;
  neg(1, 1) = 1.0;
  ComplexMatrix rest = ComplexMatrix::Identity(2, 2) - neg;
  CHECK_THROWS_AS(Measurement({HermitianOperator(neg), HermitianOperator(rest)}), InputError);
}

TEST_CASE("closed-form values") {
  CHECK(three_bell_value(0) == 1.0);
  CHECK(four_bell_value(0) == 1.0);
  CHECK(std::abs(three_bell_value(1) - 2.0 / 3.0) <= 1e-15);
  CHECK(four_bell_value(1) == 0.5);
  CHECK(std::abs(three_bell_value(0.6) - 14.0 / 15.0) <= 1e-15);
  CHECK(std::abs(four_bell_value(0.6) - 0.9) <= 1e-15);
  CHECK_THROWS_AS(three_bell_value(-0.1), InputError);
  CHECK_THROWS_AS(four_bell_value(1.5), InputError);
}

TEST_CASE("cone tags round-trip through their names") {
  for (auto t : {ConeTag::PsdDual, ConeTag::PptDual, ConeTag::SepDual}) CHECK(cone_tag_from_string(to_string(t)) == t);
  CHECK(to_string(ConeTag::SepDual) == "sep-dual");
  CHECK(to_string(ConeTag::PptDual) == "ppt-dual");
  CHECK_THROWS_AS(cone_tag_from_string("cone"), InputError);
}

TEST_CASE("global class on orthonormal ensembles reaches 1") {
  for (const char* name : {"bell4", "ydy"}) {
    const auto r = optimal_global(family(name));
    CHECK(std::abs(r.value - 1.0) <= 1e-7);
    CHECK(std::abs(r.gap) <= 1e-7);
    CHECK(r.certificate.cone == ConeTag::PsdDual);
    CHECK(r.decomposition_residual <= 1e-8);
  }
}

TEST_CASE("global class matches the two-state closed form") {
  const ComplexVector kets[] = {basis_ket(0, 2), normalized({1, 1})};
  const Ensemble e = Ensemble::uniform_pure(BipartiteSpace(2, 1), kets);
  const auto r = optimal_global(e);
  CHECK(std::abs(r.value - (1 + 1 / std::sqrt(2.0)) / 2) <= 1e-7);
  CHECK(std::abs(success_probability(e, r.measurement) - r.value) <= 1e-8);
}

TEST_CASE("PPT class on Bell ensembles") {
  const auto r4 = optimal_ppt(family("bell4"));
  CHECK(std::abs(r4.value - 0.5) <= 1e-6);
  CHECK(std::abs(r4.value - r4.dual_value) <= 1e-7);
  CHECK(r4.certificate.cone == ConeTag::PptDual);
  CHECK(r4.decomposition_residual <= 1e-8);
  check_ppt_measurement(r4, family("bell4").space());

  const auto r3 = optimal_ppt(family("bell3"));
  CHECK(std::abs(r3.value - 2.0 / 3.0) <= 1e-6);
  CHECK(r3.pt_parts.size() == 3);
  for (const auto& s : r3.psd_parts) CHECK(min_eigenvalue(s) >= -1e-8);
  for (const auto& s : r3.pt_parts) CHECK(min_eigenvalue(s) >= -1e-8);
}

TEST_CASE("PPT class on the ydy ensemble gives 7/8") {
  const Ensemble e = family("ydy");
  const auto r = optimal_ppt(e);
  CHECK(std::abs(r.value - 0.875) <= 1e-6);
  check_ppt_measurement(r, e.space());
}

TEST_CASE("PPT never exceeds global") {
  std::mt19937_64 rng(7);
  std::vector<ComplexVector> kets;
  for (int k = 0; k < 3; ++k) kets.push_back(random_ket(rng, 4));
  const Ensemble random = Ensemble::pure(BipartiteSpace(2, 2), kets, {0.5, 0.3, 0.2});
  for (const Ensemble& e : {family("bell3"), random}) {
    const double g = optimal_global(e).value;
    const double p = optimal_ppt(e).value;
    CHECK(p <= g + 1e-7);
  }
}

TEST_CASE("non-uniform prior changes the value") {
  const Ensemble e = family("bell4").with_probs({0.7, 0.1, 0.1, 0.1});
  const auto r = optimal_ppt(e);
  CHECK(r.value >= 0.7 - 1e-7);
  CHECK(r.value <= 1.0 + 1e-9);
}

TEST_CASE("local baselines") {
  CHECK(std::abs(success_probability(family("bell3"), bell_measure_and_compare(3)) - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(success_probability(family("bell4"), bell_measure_and_compare(4)) - 0.5) <= 1e-12);
  CHECK(std::abs(success_probability(family("ydy"), ydy_standard_basis_measurement()) - 0.75) <= 1e-12);
}

TEST_CASE("scaled identity certificate is never refuted") {
  const Ensemble e = family("bell3");
  const auto cert = DualCertificate::make(HermitianOperator(ComplexMatrix::Identity(4, 4) / 3.0), ConeTag::SepDual, "scaled-identity");
  SearchBudget budget;
  budget.restarts = 50;
  const auto rep = sep_bound_from_certificate(e, cert, budget);
  CHECK(std::abs(rep.bound - 4.0 / 3.0) <= 1e-12);
  CHECK(rep.unrefuted);
  CHECK(rep.searches.size() == 3);
  for (const auto& s : rep.searches) CHECK(s.min_overlap >= -1e-9);

  const auto small = DualCertificate::make(HermitianOperator::identity(2), ConeTag::SepDual, "wrong-size");
  CHECK_THROWS_AS(sep_bound_from_certificate(e, small, budget), InputError);
}

TEST_CASE("an undersized certificate is refuted") {
  const Ensemble e = family("bell4");
  const auto cert = DualCertificate::make(HermitianOperator(ComplexMatrix::Identity(4, 4) / 16.0), ConeTag::SepDual, "too-small");
  SearchBudget budget;
  budget.restarts = 20;
  CHECK_FALSE(sep_bound_from_certificate(e, cert, budget).unrefuted);
}

TEST_CASE("claimed value is the trace") {
  ComplexMatrix h = ComplexMatrix::Identity(3, 3);
  h(0, 1) = {0.2, 0.1};
  h(1, 0) = {0.2, -0.1};
  const auto c = DualCertificate::make(HermitianOperator(h), ConeTag::PptDual, "test", 0.5);
  CHECK(c.claimed_value == 3.0);
  CHECK(c.epsilon.value() == 0.5);
}
