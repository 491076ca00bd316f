#include <doctest.h>

#include "nilj/formats.hpp"
#include "nilj/graph.hpp"
#include "nilj/invariants.hpp"
#include "nilj/reproduction.hpp"
#include "support.hpp"

using namespace nilj;

namespace {

ContractionFamily family(std::size_t n, const std::string& body) {
  return parse_family_file("dim " + std::to_string(n) + "\n" + body).family;
}

// f_t at t = u^2, for families whose exponents are half-integers.
ScalarMatrix at_square(const ContractionFamily& f, const Rational& u) {
  const std::size_t n = f.dim();
  ScalarMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [q, coeff] : f.matrix(r, c).terms()) {
        const Rational e2 = q * 2;
        REQUIRE(e2.get_den() == 1);
        const long k = e2.get_num().get_si();
        mpq_class p = 1;
        for (long s = 0; s < std::labs(k); ++s) p *= u;
        if (k < 0) p = 1 / p;
        m(r, c) += coeff * Scalar(p);
      }
  return m;
}

double distance(const StructureTensor& a, const StructureTensor& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
    const Scalar d = a.coefficients()[i] - b.coefficients()[i];
    worst = std::max(worst, std::abs(d.re().get_d()) + std::abs(d.im().get_d()));
  }
  return worst;
}

}  // namespace

TEST_CASE("limit examples") {
  const StructureTensor phi1 = canonical_law(ClassId::J3_1);
  const LimitResult a = limit_of_family(phi1, family(3, "f(e1) = t*e1\nf(e2) = t^2*e2\n"));
  REQUIRE(std::holds_alternative<StructureTensor>(a));
  CHECK(std::get<StructureTensor>(a) == canonical_law(ClassId::J3_3));
  CHECK(classify(std::get<StructureTensor>(a)) == ClassId::J3_3);

  const LimitResult same = limit_of_family(phi1, constant_family(identity_matrix(3)));
  CHECK(std::get<StructureTensor>(same) == phi1);

  const LimitResult b = limit_of_family(phi1, family(3, "f(e1) = t*e1\nf(e3) = t*e3\n"));
  CHECK(classify(std::get<StructureTensor>(b)) == ClassId::J3_2);

  const LimitResult d = limit_of_family(phi1, family(3, "f(e2) = t*e2\n"));
  REQUIRE(std::holds_alternative<Divergence>(d));
  CHECK(std::get<Divergence>(d).order < 0);

  CHECK_THROWS_AS(limit_of_family(phi1, family(3, "f(e2) = e1\n")), Error);
}

TEST_CASE("scaling family contracts everything onto the abelian law") {
  for (const AtlasEntry& a : atlas()) {
    const LimitResult r = limit_of_family(a.tensor, scaling_family(a.tensor.dim()));
    REQUIRE(std::holds_alternative<StructureTensor>(r));
    CHECK(std::get<StructureTensor>(r).is_zero());
  }
  CHECK(std::get<StructureTensor>(limit_of_family(abelian(4), scaling_family(4))).is_zero());
}

TEST_CASE("verify_edge examples") {
  const ContractionEdge e17 = verify_edge(canonical_law(ClassId::J4_1), ClassId::J4_7,
                                          family(4, "f(e1) = t*e1\nf(e2) = t^2*e2\nf(e3) = t^3*e3\n"));
  CHECK(e17.verified());
  const ContractionEdge e1112 = verify_edge(canonical_law(ClassId::J4_11), ClassId::J4_12, family(4, "f(e3) = t*e3\n"));
  CHECK(e1112.verified());
  const ContractionEdge wrong = verify_edge(canonical_law(ClassId::J4_11), ClassId::J4_10, family(4, "f(e3) = t*e3\n"));
  CHECK(wrong.status == EdgeStatus::Misclassified);
  CHECK(wrong.actual == ClassId::J4_12);
  const ContractionEdge singular = verify_edge(canonical_law(ClassId::J4_4), ClassId::J4_8,
                                               family(4, "f(e3) = t*e4\nf(e4) = t^2*e4\n"));
  CHECK(singular.status == EdgeStatus::Singular);
  const ContractionEdge iso = verify_edge(canonical_law(ClassId::J4_5), ClassId::J4_5, constant_family(identity_matrix(4)));
  CHECK(iso.status == EdgeStatus::InequalityViolated);
}

TEST_CASE("fixture families behave as labelled and limits match a numeric oracle") {
  const FixtureSet fx = load_fixtures(default_fixture_dir());
  CHECK(fx.j4.size() >= 20);
  for (const auto* list : {&fx.j3, &fx.j4, &fx.real})
    for (const FamilySpec& f : *list) {
      CAPTURE(f.name);
      const StructureTensor source = canonical_law(f.source);
      const ContractionEdge e = verify_edge(source, f.target, f.family);
      CHECK(outcome(e) == f.expect);
      if (!e.limit) continue;
      CHECK(is_jordan(*e.limit));
      if (is_associative(source)) CHECK(is_associative(*e.limit));
      bool half_integer = true;
      for (std::size_t r = 0; r < f.family.dim(); ++r)
        for (std::size_t c = 0; c < f.family.dim(); ++c)
          for (const auto& [q, coeff] : f.family.matrix(r, c).terms()) half_integer = half_integer && Rational(q * 2).get_den() == 1;
      if (!half_integer) continue;
      const double near = distance(transform(source, at_square(f.family, Rational(1, 1000))), *e.limit);
      const double nearer = distance(transform(source, at_square(f.family, Rational(1, 100000))), *e.limit);
      CHECK(nearer <= near);
      CHECK(nearer < 1e-2);
    }
}

TEST_CASE("verified edges obey the contraction inequalities and no obstruction applies") {
  const FixtureSet fx = load_fixtures(default_fixture_dir());
  for (const FamilySpec& f : fx.j4) {
    const ContractionEdge e = verify_edge(canonical_law(f.source), f.target, f.family);
    if (!e.verified()) continue;
    CAPTURE(f.name);
    const InvariantProfile& s = e.source_profile;
    const InvariantProfile& t = *e.limit_profile;
    CHECK(t.char_seq <= s.char_seq);
    CHECK(t.dim_orbit < s.dim_orbit);
    CHECK(t.dim_center >= s.dim_center);
    CHECK(contraction_obstruction(canonical_law(f.source), canonical_law(f.target)).empty());
  }
}

TEST_CASE("obstructions") {
  const auto law = [](ClassId id) { return canonical_law(id); };
  CHECK_FALSE(contraction_obstruction(law(ClassId::J4_7), law(ClassId::J4_2)).empty());
  CHECK_FALSE(contraction_obstruction(law(ClassId::J4_1), law(ClassId::J4_4)).empty());
  CHECK_FALSE(contraction_obstruction(law(ClassId::J4_4), law(ClassId::J4_8)).empty());
  CHECK_FALSE(contraction_obstruction(law(ClassId::J4_4), law(ClassId::J4_10)).empty());
  CHECK_FALSE(contraction_obstruction(law(ClassId::J4_5), law(ClassId::J4_4)).empty());
  CHECK(contraction_obstruction(law(ClassId::J4_1), law(ClassId::J4_8)).empty());
}

TEST_CASE("exponent repair") {
  const FamilySpec published = [] {
    for (const FamilySpec& f : load_fixtures(default_fixture_dir()).j4)
      if (f.source == ClassId::J4_3 && f.target == ClassId::J4_6 && f.label == "published") return f;
    FAIL("fixture missing");
    return FamilySpec{};
  }();
  CHECK(repair_column_exponent(canonical_law(ClassId::J4_3), ClassId::J4_6, published.family, 3) ==
        std::vector<Rational>{Rational(3, 2)});
  CHECK(repair_column_exponent(canonical_law(ClassId::J4_3), ClassId::J4_6, published.family, 0).empty());
  CHECK_THROWS_AS(repair_column_exponent(canonical_law(ClassId::J4_1), ClassId::J4_7,
                                         family(4, "f(e1) = t*e1 + e1\n"), 0),
                  Error);
}

TEST_CASE("witness search") {
  const SearchResult r68 = search_witness(canonical_law(ClassId::J4_6), canonical_law(ClassId::J4_8));
  REQUIRE(r68.family.has_value());
  CHECK(verify_edge(canonical_law(ClassId::J4_6), ClassId::J4_8, *r68.family).verified());

  const SearchResult r911 = search_witness(canonical_law(ClassId::J4_9), canonical_law(ClassId::J4_11));
  REQUIRE(r911.family.has_value());
  CHECK(verify_edge(canonical_law(ClassId::J4_9), ClassId::J4_11, *r911.family).verified());

  const SearchResult r48 = search_witness(canonical_law(ClassId::J4_4), canonical_law(ClassId::J4_8));
  CHECK_FALSE(r48.family.has_value());
  CHECK_FALSE(r48.reason.empty());

  CHECK_THROWS_AS(search_witness(canonical_law(ClassId::J4_6), canonical_law(ClassId::J4_6)), Error);
}

TEST_CASE("polynomial deformations") {
  const auto dir = [](const std::string& body) { return parse_deformation_file("dim 4\n" + body).direction; };
  const DeformationReport r1 = verify_polynomial_deformation(canonical_law(ClassId::J4_3), dir("deg 1:\ne2*e4 = e3\n"));
  CHECK(r1.ok());
  CHECK(r1.class_at_one == ClassId::J4_2);
  const DeformationReport r2 = verify_polynomial_deformation(canonical_law(ClassId::J4_4), dir("deg 1:\ne4*e4 = e3\n"));
  CHECK(r2.ok());
  CHECK(r2.class_at_one == ClassId::J4_3);
  const DeformationReport zero = verify_polynomial_deformation(canonical_law(ClassId::J4_6), DeformationDirection{{StructureTensor(4)}});
  CHECK(zero.jordan_family);
  CHECK(zero.class_at_one == ClassId::J4_6);
  CHECK(zero.trivial);

  try {
    verify_polynomial_deformation(canonical_law(ClassId::J4_7), dir("deg 1:\ne1*e3 = e1\n"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotJordanFamily);
  }
  CHECK_THROWS_AS(verify_polynomial_deformation(canonical_law(ClassId::J4_7), DeformationDirection{{StructureTensor(3)}}),
                  Error);
}

TEST_CASE("linear deformations towards J4_5") {
  CHECK_FALSE(search_linear_deformations(canonical_law(ClassId::J4_6), ClassId::J4_5).empty());
  CHECK(search_linear_deformations(canonical_law(ClassId::J4_4), ClassId::J4_5).empty());
}

TEST_CASE("family files") {
  const FamilyFile f = parse_family_file("source J4_3\ntarget J4_6\nf(e4) = i*t^(3/2)*e4 - 1/2*t*e1\n");
  CHECK(f.family.dim() == 4);
  CHECK(f.family.matrix(3, 3) == PuiseuxPoly::monomial(Scalar::i(), Rational(3, 2)));
  CHECK(f.family.matrix(0, 3) == PuiseuxPoly::monomial(Scalar::fraction(-1, 2), Rational(1)));
  CHECK(f.family.matrix(0, 0) == PuiseuxPoly(1));
  CHECK(parse_family_file(format_family(f.family), 4).family == f.family);

  auto line_of = [](const std::string& text) {
    try {
      parse_family_file(text, 4);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("f(e1) = t*e1\nf(e1) = e2\n") == 2);
  CHECK(line_of("f(e5) = e1\n") == 1);
  CHECK(line_of("\nf(e1) = t^(1/0)*e1\n") == 2);
  CHECK(line_of("f(e1) = t*e1*e2\n") == 1);
  CHECK(line_of("f(e1) = t*e1\n") == -1);
}
