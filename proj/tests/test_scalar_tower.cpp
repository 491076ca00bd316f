#include <doctest.h>

#include "nilj/mpoly.hpp"
#include "nilj/puiseux.hpp"
#include "support.hpp"

using namespace nilj;

namespace {

PuiseuxPoly t(const Rational& q) { return PuiseuxPoly::t(q); }

}  // namespace

TEST_CASE("scalar literals") {
  CHECK(parse_scalar("3") == Scalar(3));
  CHECK(parse_scalar("-1/2") == Scalar::fraction(-1, 2));
  CHECK(parse_scalar("i") == Scalar::i());
  CHECK(parse_scalar("-i") == -Scalar::i());
  CHECK(parse_scalar("2/3*i") == Scalar(Rational(0), Rational(2, 3)));
  CHECK(parse_scalar("1/2+3i") == Scalar(Rational(1, 2), Rational(3)));
  CHECK(parse_scalar("(1/2-3i)") == Scalar(Rational(1, 2), Rational(-3)));
  CHECK(parse_scalar("4/6") == Scalar::fraction(2, 3));
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("x"), Error);
  CHECK_THROWS_AS(parse_scalar(""), Error);
}

TEST_CASE("scalar printing round-trips") {
  for (const Scalar& s : {Scalar(0), Scalar(-7), Scalar::fraction(5, 3), Scalar::i(), Scalar(Rational(0), Rational(-2)),
                          Scalar(Rational(1, 2), Rational(3)), Scalar(Rational(-1, 4), Rational(-5, 7))})
    CHECK(parse_scalar(s.str()) == s);
}

TEST_CASE("division by zero") { CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error); }

TEST_CASE("field axioms on random Gaussian rationals") {
  std::mt19937 rng(11);
  auto draw = [&] { return Scalar(test::small_rational(rng).re(), test::small_rational(rng).re()); };
  for (int trial = 0; trial < 500; ++trial) {
    const Scalar a = draw(), b = draw(), c = draw();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == Scalar(0));
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == Scalar(1));
      CHECK((b / a) * a == b);
    }
    CHECK((a * a.conj()).im() == 0);
  }
}

TEST_CASE("puiseux limits") {
  CHECK(puiseux_limit_at_zero(t(3)) == Scalar(0));
  CHECK(puiseux_limit_at_zero(PuiseuxPoly(5)) == Scalar(5));
  CHECK_FALSE(puiseux_limit_at_zero(t(-1) + PuiseuxPoly(1)).has_value());
  CHECK(puiseux_limit_at_zero(t(Rational(1, 2)) + PuiseuxPoly(Scalar::i())) == Scalar::i());
  CHECK_FALSE(puiseux_limit_at_zero(t(Rational(-1, 3))).has_value());
}

TEST_CASE("puiseux canonical form") {
  const PuiseuxPoly p = t(Rational(3, 2)) + t(1) - t(Rational(3, 2));
  CHECK(p == t(1));
  CHECK(p.size() == 1);
  CHECK((t(Rational(1, 2)) * t(Rational(1, 2))) == t(1));
  CHECK((t(Rational(3, 3))) == t(1));
  CHECK((t(2) - t(2)).is_zero());
  const PuiseuxPoly q = (t(1) + PuiseuxPoly(1)) * (t(1) - PuiseuxPoly(1));
  CHECK(q == t(2) - PuiseuxPoly(1));
  CHECK(exact_div(q, t(1) + PuiseuxPoly(1)) == t(1) - PuiseuxPoly(1));
}

TEST_CASE("puiseux matrix inverse") {
  PuiseuxMatrix d(3, 3);
  d(0, 0) = t(1);
  d(1, 1) = t(2);
  d(2, 2) = PuiseuxPoly(1);
  const PuiseuxFractionMatrix inv = invert(d);
  CHECK(inv(0, 0) == PuiseuxFraction(t(-1)));
  CHECK(inv(1, 1) == PuiseuxFraction(t(-2)));
  CHECK(inv(2, 2) == PuiseuxFraction(PuiseuxPoly(1)));
  CHECK(inv(0, 1).is_zero());

  PuiseuxMatrix b(2, 2);
  b(0, 0) = t(1);
  b(0, 1) = t(1);
  b(1, 0) = PuiseuxPoly(1);
  b(1, 1) = t(1);
  CHECK(determinant(b) == t(2) - t(1));
  const PuiseuxFractionMatrix bi = invert(b);
  const PuiseuxFraction det(t(2) - t(1));
  CHECK(bi(0, 0) == PuiseuxFraction(t(1)) / det);
  CHECK(bi(0, 1) == PuiseuxFraction(-t(1)) / det);
  CHECK(bi(1, 0) == PuiseuxFraction(PuiseuxPoly(-1)) / det);
  CHECK(bi(1, 1) == PuiseuxFraction(t(1)) / det);

  PuiseuxMatrix s(2, 2);
  s(0, 0) = t(1);
  s(0, 1) = PuiseuxPoly(2);
  s(1, 0) = t(1);
  s(1, 1) = PuiseuxPoly(2);
  CHECK_THROWS_AS(invert(s), Error);
}

TEST_CASE("puiseux inverse times matrix is the identity") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> exp(-2, 4), size(1, 4);
  int done = 0;
  while (done < 50) {
    const std::size_t n = static_cast<std::size_t>(size(rng));
    PuiseuxMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const Scalar a = test::small_rational(rng);
        if (!a.is_zero()) m(r, c) = PuiseuxPoly::monomial(a, Rational(exp(rng), 2));
      }
    if (determinant(m).is_zero()) continue;
    ++done;
    const PuiseuxFractionMatrix prod = invert(m) * to_fractions(m);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) CHECK(prod(r, c) == PuiseuxFraction(PuiseuxPoly(r == c ? 1 : 0)));
  }
}

TEST_CASE("rank examples") {
  CHECK(rank(identity_matrix(3)) == 3);
  CHECK(rank(ScalarMatrix(3, 3)) == 0);
  ScalarMatrix l(3, 3);
  l(1, 0) = 1;  // e1 -> e2
  l(2, 1) = 1;  // e2 -> e3
  CHECK(rank(l) == 2);
}

TEST_CASE("rank agrees with the minor oracle on every 2x2, 3x2 and 3x3 ternary matrix") {
  for (auto [r, c] : {std::pair{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
    unsigned long total = 1;
    for (int k = 0; k < r * c; ++k) total *= 3;
    for (unsigned long code = 0; code < total; ++code) {
      const ScalarMatrix m = test::ternary_matrix(r, c, code);
      REQUIRE(rank(m) == test::minor_rank(m));
    }
  }
}

TEST_CASE("rank and determinant agree with the oracle on sampled 4x4 ternary matrices") {
  // 3^16 matrices; a fixed stride visits 600 of them spread over the range.
  const unsigned long total = 43046721UL, stride = total / 600;
  int seen = 0;
  for (unsigned long code = 0; code < total; code += stride, ++seen) {
    const ScalarMatrix m = test::ternary_matrix(4, 4, code);
    REQUIRE(rank(m) == test::minor_rank(m));
    REQUIRE(determinant(m) == test::leibniz_det(m, {0, 1, 2, 3}, {0, 1, 2, 3}));
  }
  CHECK(seen >= 500);
}

TEST_CASE("adjugate identity") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const ScalarMatrix m = test::random_matrix(rng, 4);
    const ScalarMatrix p = adjugate(m) * m;
    const Scalar det = determinant(m);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) CHECK(p(r, c) == (r == c ? det : Scalar(0)));
  }
}

TEST_CASE("inverse and nullspace") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const ScalarMatrix m = test::random_invertible(rng, 4);
    CHECK(inverse(m) * m == identity_matrix(4));
    const ScalarMatrix s = test::random_matrix(rng, 3);
    const ScalarMatrix ns = nullspace(s);
    CHECK(ns.rows() + rank(s) == 3);
    for (std::size_t k = 0; k < ns.rows(); ++k) {
      const Vector x = ns.row(k);
      for (const Scalar& v : s.apply(x)) CHECK(v.is_zero());
    }
  }
  ScalarMatrix sing(2, 2);
  sing(0, 0) = 1;
  sing(0, 1) = 2;
  sing(1, 0) = 2;
  sing(1, 1) = 4;
  CHECK_FALSE(try_inverse(sing).has_value());
}

TEST_CASE("multivariate polynomials") {
  const MPoly x = MPoly::variable(0), y = MPoly::variable(1);
  const MPoly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK(exact_div(p, x + y) == x - y);
  CHECK(p.degree() == 2);
  const std::vector<Scalar> at{Scalar(3), Scalar(2)};
  CHECK(p.evaluate(at) == Scalar(5));
  CHECK_THROWS_AS(exact_div(x, y), Error);

  Matrix<MPoly> m(2, 2);
  m(0, 0) = x;
  m(0, 1) = y;
  m(1, 0) = x * y;
  m(1, 1) = y * y;
  CHECK(rank(m) == 1);
  m(1, 1) = x * x;
  CHECK(rank(m) == 2);
  CHECK(determinant(m) == x * x * x - x * y * y);
}
