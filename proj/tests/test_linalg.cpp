#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sepcert/linalg.hpp"
#include "sepcert/states.hpp"

using namespace sepcert;

namespace {

ComplexMatrix random_matrix(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  ComplexMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(d, d, rng);
  return a + a.adjoint();
}

}  // namespace

TEST_CASE("kron of Pauli X with itself is the anti-diagonal") {
  const ComplexMatrix k = kron(pauli(1), pauli(1));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) expected(i, 3 - i) = 1.0;
  CHECK((k - expected).norm() == 0.0);
  CHECK((kron(ComplexMatrix(ComplexMatrix::Identity(2, 2)), ComplexMatrix(ComplexMatrix::Identity(2, 2))) - ComplexMatrix::Identity(4, 4))
            .norm() == 0.0);
}

TEST_CASE("kron matches the index formula") {
  std::mt19937_64 rng(1);
  const ComplexMatrix a = random_matrix(2, 3, rng);
  const ComplexMatrix b = random_matrix(3, 2, rng);
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 2; ++q) CHECK(k(i * 3 + p, j * 2 + q) == a(i, j) * b(p, q));
}

TEST_CASE("mixed product property") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng);
    const ComplexMatrix c = random_matrix(3, 2, rng), d = random_matrix(2, 4, rng);
    const ComplexMatrix lhs = kron(a, b) * kron(c, d);
    const ComplexMatrix rhs = kron(ComplexMatrix(a * c), ComplexMatrix(b * d));
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
  }
}

TEST_CASE("partial transpose of a maximally entangled projector") {
  const BipartiteSpace space(2, 2);
  const auto pt = partial_transpose(HermitianOperator::projector(bell(1)), space, Factor::x());
  const auto eig = eig_hermitian(pt);
  CHECK(eig.values(0) == doctest::Approx(-0.5).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(eig.values(i) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("partial transpose on products, involution and norm preservation") {
  std::mt19937_64 rng(3);
  const ComplexMatrix q = random_hermitian(3, rng);
  const ComplexMatrix r = random_hermitian(2, rng);
  const BipartiteSpace space(3, 2);
  const auto pt = partial_transpose(HermitianOperator(kron(q, r)), space, Factor::x());
  CHECK((pt.matrix() - kron(ComplexMatrix(q.transpose()), r)).norm() <= 1e-14);
  const HermitianOperator h(random_hermitian(6, rng));
  const auto twice = partial_transpose(partial_transpose(h, space, Factor::y()), space, Factor::y());
  CHECK((twice.matrix() - h.matrix()).norm() == 0.0);
  const auto once = partial_transpose(h, space, Factor::y());
  CHECK(std::abs(once.trace() - h.trace()) <= 1e-14);
  CHECK(std::abs(once.matrix().norm() - h.matrix().norm()) <= 1e-13);
}

TEST_CASE("nested partial transpose acts on one factor only") {
  std::mt19937_64 rng(4);
  const BipartiteSpace space({2, 2}, {2, 2});
  std::vector<ComplexMatrix> f;
  for (int i = 0; i < 4; ++i) f.push_back(random_hermitian(2, rng));
  const ComplexMatrix prod = kron(kron(f[0], f[1]), kron(f[2], f[3]));
  const auto pt = partial_transpose(HermitianOperator(prod), space, Factor::x_part(1));
  const ComplexMatrix expected = kron(kron(f[0], ComplexMatrix(f[1].transpose())), kron(f[2], f[3]));
  CHECK((pt.matrix() - expected).norm() <= 1e-13);
  CHECK_THROWS_AS(partial_transpose(HermitianOperator(prod), BipartiteSpace(2, 2), Factor::x()), InputError);
}

TEST_CASE("vec convention") {
  ComplexMatrix e10 = ComplexMatrix::Zero(2, 2);
  e10(1, 0) = 1.0;
  CHECK((vec(e10) - kron(basis_ket(1, 2), basis_ket(0, 2))).norm() == 0.0);
  const ComplexVector v = 0.5 * vec(ComplexMatrix::Identity(4, 4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(v(i * 4 + j) == Complex(i == j ? 0.5 : 0.0, 0.0));
  std::mt19937_64 rng(5);
  const ComplexMatrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
  const Complex alpha(0.3, -1.2), beta(2.0, 0.5);
  CHECK((vec(alpha * a + beta * b) - (alpha * vec(a) + beta * vec(b))).norm() <= 1e-13);
  CHECK(std::abs(vec(a).dot(vec(b)) - (a.adjoint() * b).trace()) <= 1e-12);
  CHECK((unvec(vec(a), 3, 3) - a).norm() == 0.0);
}

TEST_CASE("Hermitian eigensolver") {
  const auto e = eig_hermitian(HermitianOperator(pauli(3)));
  CHECK(e.values(0) == -1.0);
  CHECK(e.values(1) == 1.0);

  const double eps = 0.35;
  const auto marginal = partial_trace(HermitianOperator::projector(tau(eps)), BipartiteSpace(2, 2), Factor::x());
  const auto me = eig_hermitian(marginal);
  CHECK(me.values(0) == doctest::Approx((1 - eps) / 2).epsilon(1e-14));
  CHECK(me.values(1) == doctest::Approx((1 + eps) / 2).epsilon(1e-14));

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const HermitianOperator h(random_hermitian(8, rng));
    const auto eh = eig_hermitian(h);
    const ComplexMatrix rec = eh.vectors * eh.values.asDiagonal() * eh.vectors.adjoint();
    CHECK((rec - h.matrix()).norm() <= 1e-12 * (1 + h.matrix().norm()));
    CHECK(std::abs(eh.values.sum() - h.trace()) <= 1e-11 * (1 + std::abs(h.trace())));
    for (int i = 1; i < 8; ++i) CHECK(eh.values(i - 1) <= eh.values(i));
  }
}

TEST_CASE("Hermitian construction rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 1e-6;
  CHECK_THROWS_AS(HermitianOperator{m}, InputError);
  CHECK_THROWS_AS(HermitianOperator{ComplexMatrix::Zero(2, 3)}, InputError);
}

TEST_CASE("partial trace") {
  const BipartiteSpace space(2, 2);
  const auto r = partial_trace(HermitianOperator::projector(bell(1)), space, Factor::x());
  CHECK((r.matrix() - 0.5 * ComplexMatrix::Identity(2, 2)).norm() <= 1e-15);

  const auto t = partial_trace(HermitianOperator::projector(tiles_psi()), BipartiteSpace(3, 3), Factor::x());
  const double c = std::cos(std::acos(-1.0) / 8);
  CHECK(spectral_norm(t.matrix()) == doctest::Approx(c * c).epsilon(1e-14));

  std::mt19937_64 rng(7);
  const ComplexMatrix q = random_hermitian(3, rng), rr = random_hermitian(2, rng);
  const auto pr = partial_trace(HermitianOperator(kron(q, rr)), BipartiteSpace(3, 2), Factor::x());
  CHECK((pr.matrix() - q.trace() * rr).norm() <= 1e-13);
  const auto py = partial_trace(HermitianOperator(kron(q, rr)), BipartiteSpace(3, 2), Factor::y());
  CHECK((py.matrix() - rr.trace() * q).norm() <= 1e-13);
}

TEST_CASE("Hermitian basis is orthonormal and coordinates round-trip") {
  const int d = 3;
  for (int i = 0; i < d * d; ++i)
    for (int j = 0; j < d * d; ++j) {
      const double ip = hs_inner(to_dense(hermitian_basis_element(d, i), d), to_dense(hermitian_basis_element(d, j), d));
      CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-15));
    }
  std::mt19937_64 rng(8);
  const ComplexMatrix h = random_hermitian(d, rng);
  CHECK((from_hermitian_coordinates(hermitian_coordinates(h), d) - h).norm() <= 1e-13);
  const auto b = hermitian_basis_element(d, 5);
  CHECK(sparse_inner(b, h) == doctest::Approx(hs_inner(to_dense(b, d), h)).epsilon(1e-14));
}

TEST_CASE("subsystem permutation agrees with permute_subsystems") {
  std::mt19937_64 rng(9);
  const std::vector<int> dims{2, 3, 2};
  const std::vector<int> perm{2, 0, 1};
  const ComplexVector a = random_matrix(2, 1, rng).col(0), b = random_matrix(3, 1, rng).col(0),
                      c = random_matrix(2, 1, rng).col(0);
  const ComplexMatrix p = subsystem_permutation(dims, perm);
  const ComplexVector in = kron(kron(a, b), c);
  CHECK((p * in - kron(kron(c, a), b)).norm() <= 1e-14);
  CHECK((permute_subsystems(in, dims, perm) - p * in).norm() <= 1e-14);
  CHECK((p.adjoint() * p - ComplexMatrix::Identity(12, 12)).norm() == 0.0);
}
