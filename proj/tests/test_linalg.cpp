#include <random>

#include "doctest.h"
#include "qct/linalg.hpp"

using qct::Scalar;
using qct::SMat;

namespace {

Scalar rnd_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 5), num(-4, 4), pow(-3, 3);
  switch (pick(rng)) {
    case 0: return Scalar(0);
    case 1: return Scalar(num(rng));
    case 2: return Scalar::v_pow(pow(rng));
    default: return Scalar(num(rng)) * Scalar::v_pow(pow(rng)) + Scalar(num(rng));
  }
}

SMat rnd_mat(std::mt19937& rng, int r, int c, double density = 0.6) {
  std::uniform_real_distribution<double> u(0, 1);
  SMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (u(rng) < density) m.set(i, j, rnd_scalar(rng));
  return m;
}

}  // namespace

TEST_CASE("SMat basic storage") {
  SMat m(2, 3);
  m.set(0, 1, Scalar(5));
  CHECK(m.at(0, 1) == Scalar(5));
  CHECK(m.at(1, 2) == Scalar(0));
  m.add_to(0, 1, Scalar(-5));
  CHECK(m.is_zero());
  CHECK(m.nnz() == 0);
  CHECK(SMat::identity(3).nnz() == 3);
}

TEST_CASE("SMat algebra on random matrices") {
  std::mt19937 rng(42);
  for (int t = 0; t < 40; ++t) {
    SMat a = rnd_mat(rng, 4, 5), b = rnd_mat(rng, 5, 3), c = rnd_mat(rng, 3, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    SMat a2 = rnd_mat(rng, 4, 5);
    CHECK((a + a2) * b == a * b + a2 * b);
    CHECK(a - a == SMat(4, 5));
    CHECK(SMat::identity(4) * a == a);
    Scalar s = rnd_scalar(rng);
    CHECK(a.scaled(s) * b == (a * b).scaled(s));
  }
}

TEST_CASE("Kronecker product mixed-product rule") {
  std::mt19937 rng(43);
  for (int t = 0; t < 20; ++t) {
    SMat a = rnd_mat(rng, 2, 3), b = rnd_mat(rng, 3, 2);
    SMat c = rnd_mat(rng, 3, 2), d = rnd_mat(rng, 2, 3);
    CHECK(SMat::kron(a, c) * SMat::kron(b, d) == SMat::kron(a * b, c * d));
    CHECK(SMat::kron(a, c).transpose() == SMat::kron(a.transpose(), c.transpose()));
  }
  CHECK(SMat::kron(SMat::identity(2), SMat::identity(3)) == SMat::identity(6));
}

TEST_CASE("stacking") {
  std::mt19937 rng(44);
  SMat a = rnd_mat(rng, 2, 3), b = rnd_mat(rng, 4, 3);
  SMat v = SMat::vstack(a, b);
  CHECK(v.rows() == 6);
  CHECK(v.at(1, 2) == a.at(1, 2));
  CHECK(v.at(3, 0) == b.at(1, 0));
  SMat h = SMat::hstack(a.transpose(), b.transpose());
  CHECK(h == v.transpose());
  CHECK_THROWS_AS(SMat::vstack(a, a.transpose()), qct::error);
}

TEST_CASE("rank and kernel") {
  std::mt19937 rng(45);
  for (int t = 0; t < 30; ++t) {
    SMat a = rnd_mat(rng, 4, 6);
    SMat k = qct::kernel_basis(a);
    CHECK((a * k).is_zero());
    CHECK(qct::rank(a) + k.cols() == a.cols());
    CHECK(qct::rank(k) == k.cols());  // basis is independent
    CHECK(qct::rank(a) == qct::rank(a.transpose()));
  }
  // Frozen: rank-1 outer product.
  SMat u(3, 1), w(1, 3);
  for (int i = 0; i < 3; ++i) {
    u.set(i, 0, Scalar::v_pow(i));
    w.set(0, i, Scalar(i + 1));
  }
  CHECK(qct::rank(u * w) == 1);
  CHECK(qct::kernel_basis(u * w).cols() == 2);
}

TEST_CASE("solve") {
  std::mt19937 rng(46);
  for (int t = 0; t < 30; ++t) {
    SMat a = rnd_mat(rng, 5, 4);
    std::vector<Scalar> x0(4);
    for (auto& v : x0) v = rnd_scalar(rng);
    auto x = qct::solve(a, a.apply(x0));
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == a.apply(x0));
  }
  // Inconsistent system: 0 * x = 1.
  SMat z(1, 1);
  CHECK(!qct::solve(z, {Scalar(1)}).has_value());
}

TEST_CASE("inverse") {
  std::mt19937 rng(47);
  for (int t = 0; t < 20; ++t) {
    // Build a guaranteed-invertible matrix: unit lower times unit upper
    // triangular, then a diagonal of units v^k.
    int n = 4;
    SMat l = SMat::identity(n), u = SMat::identity(n), d(n, n);
    for (int i = 0; i < n; ++i) {
      d.set(i, i, Scalar::v_pow((i % 3) - 1) + (i % 2 ? Scalar(1) : Scalar(0)));
      for (int j = 0; j < i; ++j) {
        l.set(i, j, rnd_scalar(rng));
        u.set(j, i, rnd_scalar(rng));
      }
    }
    SMat a = l * d * u;
    SMat ainv = qct::inverse(a);
    CHECK(a * ainv == SMat::identity(n));
    CHECK(ainv * a == SMat::identity(n));
  }
  SMat sing(2, 2);
  sing.set(0, 0, Scalar(1));
  sing.set(0, 1, Scalar(2));
  sing.set(1, 0, Scalar(2));
  sing.set(1, 1, Scalar(4));
  CHECK_THROWS_AS(qct::inverse(sing), qct::error);
  CHECK_THROWS_AS(qct::inverse(SMat(2, 3)), qct::error);
}

TEST_CASE("solve_matrix") {
  std::mt19937 rng(48);
  SMat a = rnd_mat(rng, 5, 3, 0.8);
  SMat x0 = rnd_mat(rng, 3, 2);
  auto x = qct::solve_matrix(a, a * x0);
  REQUIRE(x.has_value());
  CHECK(a * *x == a * x0);
  // Inconsistent: zero matrix cannot produce a nonzero image.
  SMat z(2, 2), b(2, 2);
  b.set(0, 0, Scalar(1));
  CHECK(!qct::solve_matrix(z, b).has_value());
}
