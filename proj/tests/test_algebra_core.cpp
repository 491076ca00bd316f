#include <doctest.h>

#include "nilj/formats.hpp"
#include "nilj/invariants.hpp"
#include "support.hpp"

using namespace nilj;

namespace {

Vector e(std::size_t n, std::size_t i) { return basis_vector(n, i - 1); }

Vector add(Vector a, const Vector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

bool operator_nilpotent(const ScalarMatrix& l) {
  ScalarMatrix p = l;
  for (std::size_t k = 1; k < l.rows(); ++k) p = p * l;
  return p.is_zero_matrix();
}

}  // namespace

TEST_CASE("products") {
  const StructureTensor phi1 = canonical_law(ClassId::J3_1);
  CHECK(product(phi1, e(3, 1), e(3, 1)) == e(3, 2));
  CHECK(product(phi1, zero_vector(3), e(3, 2)) == zero_vector(3));
  CHECK(product(phi1, add(e(3, 1), e(3, 2)), e(3, 1)) == add(e(3, 2), e(3, 3)));
  CHECK_THROWS_AS(product(phi1, e(2, 1), e(3, 1)), Error);
}

TEST_CASE("jordan defect") {
  CHECK(jordan_defect(canonical_law(ClassId::J3_1), e(3, 1), e(3, 2)) == zero_vector(3));
  CHECK(jordan_defect(abelian(3), e(3, 1), e(3, 3)) == zero_vector(3));

  StructureTensor bad(2);
  bad.set_coeff(0, 0, 1, Scalar(1));  // e1 e1 = e2
  bad.set_coeff(0, 1, 0, Scalar(1));  // e1 e2 = e1
  Vector minus_e2 = zero_vector(2);
  minus_e2[1] = Scalar(-1);
  CHECK(jordan_defect(bad, e(2, 1), e(2, 1)) == minus_e2);
  CHECK_FALSE(is_jordan(bad));
  CHECK(is_jordan(canonical_law(ClassId::J4_2)));
  CHECK(is_jordan(abelian(4)));
}

TEST_CASE("jordan identity holds at random vectors for every atlas law") {
  std::mt19937 rng(21);
  for (const AtlasEntry& a : atlas()) {
    CHECK(is_jordan(a.tensor));
    const std::size_t n = a.tensor.dim();
    for (int trial = 0; trial < 100; ++trial)
      REQUIRE(jordan_defect(a.tensor, test::random_vector(rng, n), test::random_vector(rng, n)) == zero_vector(n));
  }
}

TEST_CASE("associativity") {
  CHECK(is_associative(canonical_law(ClassId::J4_1)));
  CHECK_FALSE(is_associative(canonical_law(ClassId::J4_3)));
  CHECK(is_associative(abelian(4)));
}

TEST_CASE("transform examples") {
  const ScalarMatrix id = identity_matrix(3);
  const StructureTensor phi1 = canonical_law(ClassId::J3_1);
  CHECK(transform(phi1, id) == phi1);

  StructureTensor a4(3);
  a4.set_coeff(0, 0, 1, Scalar(1));
  a4.set_coeff(2, 2, 1, Scalar(4));
  ScalarMatrix half = identity_matrix(3);
  half(2, 2) = Scalar::fraction(1, 2);
  CHECK(transform(a4, half) == canonical_law(ClassId::J3_2));

  const StructureTensor r4 = canonical_law(ClassId::R3_4);
  ScalarMatrix f(3, 3);
  f(0, 0) = 1;
  f(1, 0) = 1;
  f(2, 1) = 2;
  f(0, 2) = 1;
  f(1, 2) = -1;
  const StructureTensor g = transform(r4, f);
  CHECK(g.coeff(0, 0, 1) == Scalar(1));
  CHECK(g.coeff(2, 2, 1) == Scalar(-1));
  CHECK(g.image(0, 2) == zero_vector(3));
  CHECK(g == canonical_law(ClassId::R3_5));

  CHECK_THROWS_AS(transform(phi1, ScalarMatrix(3, 3)), Error);
}

TEST_CASE("transform composes") {
  std::mt19937 rng(4);
  for (const StructureTensor& phi : test::complex_laws()) {
    const std::size_t n = phi.dim();
    for (int trial = 0; trial < 5; ++trial) {
      const ScalarMatrix f = test::random_invertible(rng, n), g = test::random_invertible(rng, n);
      CHECK(transform(transform(phi, f), g) == transform(phi, f * g));
    }
  }
}

TEST_CASE("jordan and associative flags survive basis changes") {
  std::mt19937 rng(8);
  for (const AtlasEntry* a : complex_atlas()) {
    const bool assoc = is_associative(a->tensor);
    for (int trial = 0; trial < 50; ++trial) {
      const StructureTensor psi = transform(a->tensor, test::random_invertible(rng, a->tensor.dim()));
      REQUIRE(is_jordan(psi));
      REQUIRE(is_associative(psi) == assoc);
    }
  }
}

TEST_CASE("multiplication operators") {
  const StructureTensor phi1 = canonical_law(ClassId::J3_1);
  const ScalarMatrix l = mult_operator(phi1, e(3, 1));
  CHECK(l.column(0) == e(3, 2));
  CHECK(l.column(1) == e(3, 3));
  CHECK(l.column(2) == zero_vector(3));
  CHECK(mult_operator(phi1, zero_vector(3)).is_zero_matrix());

  const ScalarMatrix l8 = mult_operator(canonical_law(ClassId::J4_8), add(e(4, 1), e(4, 3)));
  CHECK(l8.column(0) == e(4, 2));
  CHECK(l8.column(2) == e(4, 4));
  CHECK(rank(l8) == 2);
}

TEST_CASE("multiplication operators of nilpotent laws are nilpotent") {
  std::mt19937 rng(12);
  for (const AtlasEntry& a : atlas())
    for (int trial = 0; trial < 20; ++trial)
      REQUIRE(operator_nilpotent(mult_operator(a.tensor, test::random_vector(rng, a.tensor.dim()))));
}

TEST_CASE("polarization points") {
  // 1 + n + n(n+1)/2 + n(n+1)(n+2)/6 sums of at most three basis vectors, zero included.
  CHECK(polarization_points(2).size() >= 9);
  for (const Vector& v : polarization_points(3)) CHECK(v.size() == 3);
}

TEST_CASE("algebra files") {
  const AlgebraFile f = parse_algebra_file("# phi\nname J4_3\ndim 4\nfield Qi\ne1*e1 = e2\ne1*e2 = e3\n"
                                           "e2*e4 = e3\ne4*e4 = -e2 - e3\n");
  CHECK(f.meta.at("name") == "J4_3");
  const StructureTensor phi = StructureTensor::from_bilinear(f.law);
  CHECK(phi == canonical_law(ClassId::J4_3));
  CHECK(phi.coeff(3, 1, 2) == Scalar(1));

  const StructureTensor back = parse_algebra(format_algebra(phi));
  CHECK(back == phi);

  const StructureTensor c = parse_algebra("dim 2\ne1*e1 = (1/2+i)*e2\n");
  CHECK(c.coeff(0, 0, 1) == Scalar(Rational(1, 2), Rational(1)));
  CHECK(parse_algebra(format_algebra(c)) == c);
}

TEST_CASE("algebra file errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_algebra(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("dim 3\ne1*e1 = e2\ne1*e1 = e3\n") == 3);
  CHECK(line_of("dim 3\ne1*e1 = e2\ne2*e1 = e3\ne1*e2 = 2*e3\n") == 4);
  CHECK(line_of("dim 3\n\ne1*e4 = e2\n") == 3);
  CHECK(line_of("dim 3\nfield Q\ne1*e1 = i*e2\n") == 3);
  CHECK(line_of("dim 2\ne1*e1 = e2 +\n") == 2);
  CHECK(line_of("dim 9\n") == 1);
  CHECK(line_of("dim 2\nfield R\n") == 2);
  CHECK(line_of("e1*e1 = e2\n") >= 0);
  CHECK_THROWS_AS(parse_algebra("dim 2\nbilinear\ne1*e2 = e1\n"), Error);
}

TEST_CASE("bilinear files keep order") {
  const AlgebraFile f = parse_algebra_file("dim 3\nbilinear\ne1*e2 = -e3\ne2*e1 = e3\n");
  CHECK(f.bilinear);
  CHECK(f.law.coeff(0, 1, 2) == Scalar(-1));
  CHECK(f.law.coeff(1, 0, 2) == Scalar(1));
  CHECK_FALSE(f.law.is_symmetric());
  CHECK(parse_algebra_file(format_bilinear(f.law)).law == f.law);
}
