#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include "nilj/reproduction.hpp"
#include "support.hpp"

using namespace nilj;

namespace {

// All comparisons are exact; these pin the sample sizes.
constexpr int kTransformsPerEntry = 100;
constexpr int kMinTernaryMatrices = 500;
constexpr unsigned long kTernaryStride = 43046721UL / 600;  // 3^16 / 600
constexpr int kRandomJordan = 50;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string triple(const InvariantProfile& p) {
  return format_char_seq(p.char_seq) + "," + std::to_string(p.dim_orbit) + "," + std::to_string(p.dim_center);
}

Outcome table(int dim, const std::vector<std::tuple<ClassId, CharSeq, int, int>>& rows) {
  Outcome o;
  for (const auto& [id, s, orbit, center] : rows) {
    const InvariantProfile p = profile(canonical_law(id));
    o.require(p.char_seq == s && p.dim_orbit == orbit && p.dim_center == center,
              std::string(label(id)) + " computed (" + triple(p) + ") published (" + format_char_seq(s) + "," +
                  std::to_string(orbit) + "," + std::to_string(center) + ")");
  }
  if (o.pass) o.detail = std::to_string(rows.size()) + " rows of dimension " + std::to_string(dim) + " match";
  return o;
}

Outcome criterion1() {
  using C = ClassId;
  return table(3, {{C::J3_1, {3}, 7, 1}, {C::J3_2, {2, 1}, 6, 1}, {C::J3_3, {2, 1}, 4, 2}});
}

Outcome criterion2() {
  const StructureTensor phi = canonical_law(ClassId::J3_1);
  const int cob = coboundary_space_dim(phi), der = derivation_dim(phi);
  Outcome o;
  o.require(cob == 7, "coboundary span " + std::to_string(cob) + ", published 7");
  o.require(der == 2, "derivations " + std::to_string(der) + ", published 2");
  return o;
}

Outcome criterion3() {
  std::vector<std::tuple<ClassId, CharSeq, int, int>> rows;
  for (const ReferenceRow& r : reference_rows())
    if (dimension(r.id) == 4) rows.emplace_back(r.id, r.char_seq, r.dim_orbit, r.dim_center);
  Outcome o = table(4, rows);
  const std::set<ClassId> expected{ClassId::J4_1, ClassId::J4_6,  ClassId::J4_7,  ClassId::J4_8,
                                   ClassId::J4_9, ClassId::J4_10, ClassId::J4_11, ClassId::J4_12};
  std::set<ClassId> got;
  for (const AtlasEntry* a : atlas_of_dim(4))
    if (is_associative(a->tensor)) got.insert(a->id);
  o.require(got == expected, "associative classes differ from phi1, phi6..phi12");
  if (o.pass) o.detail += ", associative flags match";
  return o;
}

Outcome criterion4(const FixtureSet& fx) {
  const std::set<ClassPair> errata{{ClassId::J4_3, ClassId::J4_6}, {ClassId::J4_4, ClassId::J4_8}};
  Outcome o;
  int verified = 0;
  for (const auto* list : {&fx.j3, &fx.j4})
    for (const FamilySpec& f : *list) {
      if (f.label != "published") continue;
      const ContractionEdge e = verify_edge(canonical_law(f.source), f.target, f.family);
      if (errata.contains({f.source, f.target})) {
        o.require(!e.verified(), f.name + " erratum not detected");
        continue;
      }
      if (e.verified())
        ++verified;
      else
        o.require(false, f.name + " " + outcome(e));
    }
  for (const auto& [a, b] : errata) {
    const SearchResult r = search_witness(canonical_law(a), canonical_law(b));
    const std::string pair = std::string(label(a)) + "->" + std::string(label(b));
    if (!r.family)
      o.require(false, "no witness for " + pair + " (" + r.reason + ")");
    else
      o.require(verify_edge(canonical_law(a), b, *r.family).verified(), "witness for " + pair + " fails");
  }
  o.detail = std::to_string(verified) + " published families verify" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion5(const FixtureSet& fx) {
  Outcome o;
  const std::vector<std::pair<std::string, ClassId>> expected{{"1-phi03-mu1.def", ClassId::J4_2},
                                                              {"2-phi04-mu2.def", ClassId::J4_3}};
  for (const auto& [name, target] : expected) {
    const DeformationSpec* d = nullptr;
    for (const DeformationSpec& s : fx.deformations)
      if (s.name.ends_with(name)) d = &s;
    if (!d) {
      o.require(false, name + " missing");
      continue;
    }
    const DeformationReport r = verify_polynomial_deformation(canonical_law(d->base), d->direction);
    o.require(r.jordan_family, name + " not Jordan for all t");
    o.require(r.class_at_one == target, name + " t=1 class differs from " + std::string(label(target)));
  }
  int duplicates = 0;
  for (std::size_t i = 0; i < fx.deformations.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (fx.deformations[i].base == fx.deformations[j].base &&
          fx.deformations[i].direction.terms == fx.deformations[j].direction.terms)
        ++duplicates;
  o.require(duplicates == 1, "expected one duplicated entry, found " + std::to_string(duplicates));
  if (o.pass) o.detail = "both families Jordan with t=1 classes J4_2, J4_3; duplicate flagged";
  return o;
}

Outcome criterion6(const FixtureSet& fx) {
  Outcome o;
  const DegenerationGraph g4 = build_graph(graph_nodes(4), fx.j4);
  const DegenerationGraph g3 = build_graph(graph_nodes(3), fx.j3);
  o.require(g4.sources() == std::vector<ClassId>{ClassId::J4_1, ClassId::J4_2}, "J4 sources differ from {J4_1, J4_2}");
  for (ClassId id : g4.nodes)
    o.require(g4.reaches(ClassId::J4_1, id) || g4.reaches(ClassId::J4_2, id), std::string(label(id)) + " unreached");
  for (ClassId id : g3.nodes) o.require(g3.reaches(ClassId::J3_1, id), std::string(label(id)) + " unreached");
  if (o.pass) o.detail = "J4 sources {J4_1, J4_2} cover all classes; J3_1 covers dimension 3";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937 rng(2024);
  int checks = 0, failures = 0;
  for (const AtlasEntry* a : complex_atlas()) {
    const ClassId id = classify(a->tensor);
    const InvariantProfile p = profile(a->tensor);
    for (int k = 0; k < kTransformsPerEntry; ++k) {
      const StructureTensor psi = transform(a->tensor, test::random_invertible(rng, a->tensor.dim()));
      ++checks;
      if (classify(psi) != id || profile(psi) != p) ++failures;
    }
  }
  o.require(checks == 15 * kTransformsPerEntry, "ran " + std::to_string(checks) + " checks");
  o.require(failures == 0, std::to_string(failures) + " failures");
  if (o.pass) o.detail = std::to_string(checks) + " basis changes, class and profile unchanged";
  return o;
}

Outcome criterion8() {
  Outcome o;
  int matrices = 0;
  for (unsigned long code = 0; code < 43046721UL; code += kTernaryStride, ++matrices) {
    const ScalarMatrix m = test::ternary_matrix(4, 4, code);
    if (rank(m) != test::minor_rank(m)) o.require(false, "rank mismatch at code " + std::to_string(code));
  }
  o.require(matrices >= kMinTernaryMatrices, "only " + std::to_string(matrices) + " matrices");
  for (const AtlasEntry& a : atlas()) {
    const int n = static_cast<int>(a.tensor.dim());
    o.require(coboundary_space_dim(a.tensor) + derivation_dim(a.tensor) == n * n, std::string(label(a.id)) + " cob+der");
  }
  std::mt19937 rng(8);
  int tested = 0;
  while (tested < kRandomJordan) {
    const BilinearTensor beta = test::random_associative(rng, 4, 1 + tested % 3);
    if (beta.dim() < 2) continue;
    const StructureTensor phi = squaring_map(beta);
    const int n = static_cast<int>(phi.dim());
    o.require(is_jordan(phi), "random tensor not Jordan");
    o.require(coboundary_space_dim(phi) + derivation_dim(phi) == n * n, "random tensor cob+der");
    ++tested;
  }
  if (o.pass)
    o.detail = std::to_string(matrices) + " ternary 4x4 ranks, atlas and " + std::to_string(tested) +
               " random Jordan tensors satisfy cob+der=n^2";
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto square = [](const std::string& name) {
    for (const AssociativeEntry& a : associative_atlas())
      if (a.name == name) return squaring_map(a.beta);
    throw Error(ErrorCode::Precondition, "no entry " + name);
  };
  o.require(square("beta4").is_zero(), "beta4 image not abelian");
  o.require(classify(square("beta1")) == ClassId::J3_1, "beta1 image not J3_1");
  o.require(classify(square("beta2^1")) == ClassId::J3_2, "beta2^1 image not J3_2");
  const ClassId quarter = classify(square("beta2^1/4"));
  o.detail = (o.pass ? "beta4, beta1, beta2^1 as stated; " : o.detail + "; ") + "beta2^1/4 image classifies to " +
             std::string(label(quarter)) + " (Gram determinant mu - 1/4 = 0)";
  return o;
}

Outcome criterion10(const FixtureSet& fx) {
  Outcome o;
  std::string classes;
  for (const FamilySpec& f : fx.real) {
    const ContractionEdge e = verify_edge(canonical_law(f.source), f.target, f.family);
    o.require(e.limit.has_value(), f.name + " has no limit");
    if (e.actual) classes += " " + f.name + " -> " + std::string(label(*e.actual)) + ";";
  }
  const auto [o4, o5] = reference_real_orbits();
  const int d4 = profile(canonical_law(ClassId::R3_4)).dim_orbit;
  const int d5 = profile(canonical_law(ClassId::R3_5)).dim_orbit;
  o.detail = (o.pass ? "limits converge;" : o.detail + ";") + classes + " orbits phi4 " + std::to_string(d4) +
             " (published " + std::to_string(o4) + "), phi5 " + std::to_string(d5) + " (published " +
             std::to_string(o5) + ")" + (d4 != o4 || d5 != o5 ? ", discrepancy flagged" : "");
  return o;
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string expected_failures, fixtures = default_fixture_dir().string();
  app.add_option("--expect-known-failures", expected_failures,
                 "comma-separated criteria expected to fail; exit 0 iff exactly these fail");
  app.add_option("--fixtures", fixtures, "fixture directory");
  CLI11_PARSE(app, argc, argv);

  const FixtureSet fx = load_fixtures(fixtures);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"dimension 3 table", criterion1},
      {"orbit example", criterion2},
      {"dimension 4 table", criterion3},
      {"contraction suite", [&] { return criterion4(fx); }},
      {"deformation suite", [&] { return criterion5(fx); }},
      {"component structure", [&] { return criterion6(fx); }},
      {"orbit invariance", criterion7},
      {"oracle equivalence", criterion8},
      {"squaring map", criterion9},
      {"real field", [&] { return criterion10(fx); }},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) failed.insert(static_cast<int>(i + 1));
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail << " [" << std::fixed << std::setprecision(1) << secs << "s]\n";
  }
  const std::set<int> expected = parse_list(expected_failures);
  if (failed == expected) return 0;
  std::cout << "failing criteria differ from the expected set\n";
  return 1;
}
