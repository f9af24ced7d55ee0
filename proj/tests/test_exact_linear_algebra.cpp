#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qha/int_matrix.hpp"
#include "qha/matrix.hpp"
#include "qha/scalar.hpp"

using namespace qha;

namespace {

Matrix<Rational> rat(std::size_t r, std::size_t c, const std::vector<long>& v) {
  std::vector<Rational> data;
  for (long x : v) data.emplace_back(x);
  return Matrix<Rational>(r, c, std::move(data));
}

Matrix<Rational> random_rational(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<long> d(-4, 4);
  Matrix<Rational> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(d(rng));
  return m;
}

}  // namespace

TEST_CASE("rational scalar parsing is canonical") {
  Rational proto(0);
  CHECK(scalar_to_string(scalar_parse("2/4", proto)) == "1/2");
  CHECK(scalar_to_string(scalar_parse("-6/4", proto)) == "-3/2");
  CHECK(scalar_to_string(scalar_parse("7", proto)) == "7");
  CHECK(scalar_to_string(scalar_parse("0/5", proto)) == "0");
  CHECK_THROWS_AS(scalar_parse("1/0", proto), FieldError);
  CHECK_THROWS_AS(scalar_parse("", proto), FieldError);
  CHECK_THROWS_AS(scalar_parse("x", proto), FieldError);
}

TEST_CASE("prime field arithmetic") {
  PrimeField proto(0, 7);
  for (std::int64_t a = 1; a < 7; ++a) {
    PrimeField x(a, 7);
    CHECK(x * x.inverse() == scalar_one(proto));
  }
  CHECK(scalar_parse("3/4", proto) == PrimeField(6, 7));
  CHECK(scalar_parse("-1", proto) == PrimeField(6, 7));
  CHECK_THROWS_AS(PrimeField(0, 7) / PrimeField(0, 7), FieldError);
  CHECK_THROWS_AS(PrimeField(1, 7) + PrimeField(1, 5), FieldError);
  // Unpinned zero/one interoperate with pinned values.
  CHECK(PrimeField() + PrimeField(3, 7) == PrimeField(3, 7));
  CHECK(scalar_from_int(10, proto) == PrimeField(3, 7));
  CHECK_THROWS_AS(FieldSpec::make_prime(4), FieldError);
  CHECK_THROWS_AS(FieldSpec::make_prime(1), FieldError);
  CHECK(FieldSpec::make_prime(2).to_string() == "F_2");
}

TEST_CASE("rref frozen example") {
  auto e = rref(rat(2, 2, {1, 2, 2, 4}));
  CHECK(e.rank == 1);
  CHECK(e.pivots == std::vector<std::size_t>{0});
  CHECK(e.reduced == rat(2, 2, {1, 2, 0, 0}));
}

TEST_CASE("rref is idempotent on random matrices") {
  std::mt19937_64 rng(20260816);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_rational(rng, 4, 6);
    auto e = rref(m);
    auto again = rref(e.reduced);
    CHECK(again.reduced == e.reduced);
    CHECK(again.pivots == e.pivots);
  }
}

TEST_CASE("kernel basis frozen example and null property") {
  auto k = kernel_basis(rat(2, 2, {1, 2, 2, 4}));
  CHECK(k == rat(2, 1, {-2, 1}));

  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_rational(rng, 3, 5);
    auto k2 = kernel_basis(m);
    CHECK(k2.cols() == m.cols() - rref(m).rank);
    CHECK((m * k2).is_zero());
    // Columns are independent: rank of the kernel matrix equals its column count.
    CHECK(rank(k2) == k2.cols());
  }
}

TEST_CASE("solve_linear solves and detects inconsistency") {
  auto a = rat(2, 2, {1, 0, 1, 1});
  auto b = rat(2, 1, {1, 2});
  auto x = solve_linear(a, b);
  REQUIRE(x.has_value());
  CHECK(a * *x == b);
  CHECK(*x == rat(2, 1, {1, 1}));

  CHECK_FALSE(solve_linear(rat(2, 2, {1, 2, 2, 4}), rat(2, 1, {0, 1})).has_value());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_rational(rng, 4, 3);
    auto w = random_rational(rng, 3, 2);
    auto rhs = m * w;
    auto sol = solve_linear(m, rhs);
    REQUIRE(sol.has_value());
    CHECK(m * *sol == rhs);
  }
}

TEST_CASE("rank over Q bounds rank over F_p") {
  // Frozen example first: this matrix drops rank mod 2.
  std::vector<Rational> rq = {Rational(1), Rational(1), Rational(1), Rational(-1)};
  CHECK(rank(Matrix<Rational>(2, 2, rq)) == 2);
  PrimeField two(0, 2);
  std::vector<PrimeField> r2 = {PrimeField(1, 2), PrimeField(1, 2), PrimeField(1, 2),
                                PrimeField(-1, 2)};
  CHECK(rank(Matrix<PrimeField>(2, 2, r2)) == 1);

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> d(-6, 6);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix<Rational> mq(4, 4);
    Matrix<PrimeField> mp(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        long v = d(rng);
        mq(i, j) = Rational(v);
        mp(i, j) = PrimeField(v, 3);
      }
    CHECK(rank(mq) >= rank(mp));
  }
}

TEST_CASE("determinant and unimodular inverse") {
  CHECK(determinant(IntMatrix(2, 2, std::vector<long>{1, 2, 3, 4})) == -2);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  // Needs a row swap on the second pivot.
  CHECK(determinant(IntMatrix(3, 3, std::vector<long>{1, 1, 1, 1, 1, 2, 0, 1, 3})) == -1);

  IntMatrix c(2, 2, std::vector<long>{1, 0, 1, 1});
  CHECK(int_inverse(c) == IntMatrix(2, 2, std::vector<long>{1, 0, -1, 1}));

  try {
    int_inverse(IntMatrix(2, 2, std::vector<long>{2, 0, 0, 1}));
    FAIL("expected UnimodularityError");
  } catch (const UnimodularityError& e) {
    CHECK(e.det == 2);
  }

  // Round trip on random products of elementary unimodular matrices.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<long> val(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix u = IntMatrix::identity(4);
    for (int s = 0; s < 8; ++s) {
      IntMatrix e = IntMatrix::identity(4);
      std::size_t i = pick(rng), j = pick(rng);
      if (i != j) e(i, j) = val(rng);
      u = u * e;
    }
    IntMatrix v = int_inverse(u);
    CHECK(u * v == IntMatrix::identity(4));
    CHECK(v * u == IntMatrix::identity(4));
  }
}

TEST_CASE("kronecker product identities") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-3, 3);
  auto rnd = [&](std::size_t r, std::size_t c) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
  };
  for (int trial = 0; trial < 10; ++trial) {
    IntMatrix a = rnd(2, 3), b = rnd(3, 2), c = rnd(2, 2);
    CHECK(kronecker(kronecker(a, b), c) == kronecker(a, kronecker(b, c)));
    CHECK(transpose(kronecker(a, b)) == kronecker(transpose(a), transpose(b)));
    IntMatrix x = rnd(3, 2), y = rnd(2, 3);
    // Mixed product: (a (x) b)(x (x) y) = (a x) (x) (b y).
    CHECK(kronecker(a, b) * kronecker(x, y) == kronecker(a * x, b * y));
  }
}

TEST_CASE("empty shapes are handled") {
  Matrix<Rational> e0(0, 3);
  CHECK(rref(e0).rank == 0);
  CHECK(kernel_basis(e0).cols() == 3);
  Matrix<Rational> e1(3, 0);
  CHECK(kernel_basis(e1).cols() == 0);
  auto s = solve_linear(e0, Matrix<Rational>(0, 2));
  REQUIRE(s.has_value());
  CHECK(s->rows() == 3);
}
