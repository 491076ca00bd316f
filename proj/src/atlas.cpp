#include "nilj/atlas.hpp"

#include "nilj/formats.hpp"

namespace nilj {

namespace {

struct Seed {
  ClassId id;
  const char* name;
  const char* law;
  InvariantProfile expected;
  bool rigid_claimed;
};

AtlasEntry make_entry(const Seed& s, Field field) {
  const std::string header = "dim " + std::to_string(dimension(s.id)) + "\nfield " +
                             (field == Field::Rational ? "Q" : "Qi") + "\n";
  return AtlasEntry{s.id, s.name, parse_algebra(header + s.law), s.expected, s.rigid_claimed};
}

std::vector<AtlasEntry> build_atlas() {
  // {s, nilindex, dim Z, dim Der, dim O, associative, dims of C^k}
  const std::vector<Seed> complex{
      {ClassId::J2_1, "phi1", "e1*e1 = e2", {{2}, 3, 1, 2, 2, true, {2, 1, 0}}, true},
      {ClassId::J3_1, "phi1", "e1*e1 = e2\ne1*e2 = e3", {{3}, 4, 1, 3, 6, true, {3, 2, 1, 0}}, true},
      {ClassId::J3_2, "phi2", "e1*e1 = e2\ne3*e3 = e2", {{2, 1}, 3, 1, 4, 5, true, {3, 1, 0}}, false},
      {ClassId::J3_3, "phi3", "e1*e1 = e2", {{2, 1}, 3, 2, 5, 4, true, {3, 1, 0}}, false},
      {ClassId::J4_1, "phi1", "e1*e1 = e2\ne1*e2 = e3\ne1*e3 = e4\ne2*e2 = e4",
       {{4}, 5, 1, 4, 12, true, {4, 3, 2, 1, 0}}, true},
      {ClassId::J4_2, "phi2", "e1*e1 = e2\ne1*e2 = e3\ne4*e4 = e2", {{3, 1}, 4, 1, 3, 13, false, {4, 2, 1, 0}}, true},
      {ClassId::J4_3, "phi3", "e1*e1 = e2\ne1*e2 = e3\ne2*e4 = e3\ne4*e4 = -e2 - e3",
       {{3, 1}, 4, 1, 4, 12, false, {4, 2, 1, 0}}, false},
      {ClassId::J4_4, "phi4", "e1*e1 = e2\ne1*e2 = e3\ne2*e4 = e3\ne4*e4 = -e2",
       {{3, 1}, 4, 1, 5, 11, false, {4, 2, 1, 0}}, false},
      {ClassId::J4_5, "phi5", "e1*e1 = e2\ne1*e2 = e3\ne2*e4 = e3", {{3, 1}, 4, 1, 4, 12, false, {4, 2, 1, 0}}, false},
      {ClassId::J4_6, "phi6", "e1*e1 = e2\ne1*e2 = e3\ne4*e4 = e3", {{3, 1}, 4, 1, 5, 11, true, {4, 2, 1, 0}}, false},
      {ClassId::J4_7, "phi7", "e1*e1 = e2\ne1*e2 = e3", {{3, 1}, 4, 2, 6, 10, true, {4, 2, 1, 0}}, false},
      {ClassId::J4_8, "phi8", "e1*e1 = e2\ne3*e3 = e4", {{2, 2}, 3, 2, 6, 10, true, {4, 2, 0}}, false},
      {ClassId::J4_9, "phi9", "e1*e1 = e2\ne1*e3 = e4", {{2, 2}, 3, 2, 7, 9, true, {4, 2, 0}}, false},
      {ClassId::J4_10, "phi10", "e1*e1 = e2\ne3*e4 = e2", {{2, 1, 1}, 3, 1, 7, 9, true, {4, 1, 0}}, false},
      {ClassId::J4_11, "phi11", "e1*e1 = e2\ne3*e3 = e2", {{2, 1, 1}, 3, 2, 8, 8, true, {4, 1, 0}}, false},
      {ClassId::J4_12, "phi12", "e1*e1 = e2", {{2, 1, 1}, 3, 3, 10, 6, true, {4, 1, 0}}, false},
  };
  const std::vector<Seed> real{
      {ClassId::R3_1, "phi1", "e1*e1 = e2\ne1*e2 = e3", {{3}, 4, 1, 3, 6, true, {3, 2, 1, 0}}, true},
      {ClassId::R3_2, "phi2", "e1*e1 = e2\ne3*e3 = e2", {{2, 1}, 3, 1, 4, 5, true, {3, 1, 0}}, false},
      {ClassId::R3_3, "phi3", "e1*e1 = e2", {{2, 1}, 3, 2, 5, 4, true, {3, 1, 0}}, false},
      {ClassId::R3_4, "phi4", "e1*e2 = e3", {{2, 1}, 3, 1, 4, 5, true, {3, 1, 0}}, false},
      {ClassId::R3_5, "phi5", "e1*e1 = e2\ne3*e3 = -e2", {{2, 1}, 3, 1, 4, 5, true, {3, 1, 0}}, false},
  };
  std::vector<AtlasEntry> out;
  for (const Seed& s : complex) out.push_back(make_entry(s, Field::Gaussian));
  for (const Seed& s : real) out.push_back(make_entry(s, Field::Rational));
  for (const AtlasEntry& e : out) {
    const InvariantProfile got = profile(e.tensor);
    if (got != e.expected)
      throw Error(ErrorCode::Internal, std::string(label(e.id)) + ": computed profile " + format_profile(got) +
                                           " differs from the registered " + format_profile(e.expected));
  }
  return out;
}

}  // namespace

const std::vector<AtlasEntry>& atlas() {
  static const std::vector<AtlasEntry> entries = build_atlas();
  return entries;
}

std::vector<const AtlasEntry*> atlas_of_dim(int n) {
  std::vector<const AtlasEntry*> out;
  for (const AtlasEntry& e : atlas())
    if (!is_real_class(e.id) && dimension(e.id) == n) out.push_back(&e);
  return out;
}

std::vector<const AtlasEntry*> complex_atlas() {
  auto out = atlas_of_dim(3);
  for (const AtlasEntry* e : atlas_of_dim(4)) out.push_back(e);
  return out;
}

std::vector<const AtlasEntry*> real_atlas() {
  std::vector<const AtlasEntry*> out;
  for (const AtlasEntry& e : atlas())
    if (is_real_class(e.id)) out.push_back(&e);
  return out;
}

const AtlasEntry& atlas_entry(ClassId id) {
  for (const AtlasEntry& e : atlas())
    if (e.id == id) return e;
  throw Error(ErrorCode::Precondition, "no atlas entry for " + std::string(label(id)));
}

StructureTensor canonical_law(ClassId id) {
  if (is_abelian_class(id))
    return abelian(static_cast<std::size_t>(dimension(id)), is_real_class(id) ? Field::Rational : Field::Gaussian);
  return atlas_entry(id).tensor;
}

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows{
      {ClassId::J3_1, {3}, 7, 1},        {ClassId::J3_2, {2, 1}, 6, 1},     {ClassId::J3_3, {2, 1}, 4, 2},
      {ClassId::J4_1, {4}, 12, 1},       {ClassId::J4_2, {3, 1}, 13, 1},    {ClassId::J4_3, {3, 1}, 12, 1},
      {ClassId::J4_4, {3, 1}, 11, 1},    {ClassId::J4_5, {3, 1}, 12, 1},    {ClassId::J4_6, {3, 1}, 11, 1},
      {ClassId::J4_7, {3, 1}, 10, 2},    {ClassId::J4_8, {2, 2}, 10, 2},    {ClassId::J4_9, {2, 2}, 9, 2},
      {ClassId::J4_10, {2, 1, 1}, 9, 1}, {ClassId::J4_11, {2, 1, 1}, 8, 2}, {ClassId::J4_12, {2, 1, 1}, 6, 3},
  };
  return rows;
}

std::pair<int, int> reference_real_orbits() { return {5, 6}; }

const std::vector<std::pair<ClassId, ClassId>>& reference_diagram_edges() {
  using C = ClassId;
  static const std::vector<std::pair<ClassId, ClassId>> edges{
      {C::J4_2, C::J4_5},   {C::J4_2, C::J4_3},   {C::J4_5, C::J4_4},   {C::J4_5, C::J4_6},   {C::J4_3, C::J4_4},
      {C::J4_3, C::J4_6},   {C::J4_1, C::J4_7},   {C::J4_1, C::J4_10},  {C::J4_6, C::J4_10},  {C::J4_6, C::J4_8},
      {C::J4_6, C::J4_7},   {C::J4_4, C::J4_7},   {C::J4_4, C::J4_8},   {C::J4_4, C::J4_10},  {C::J4_8, C::J4_9},
      {C::J4_7, C::J4_9},   {C::J4_9, C::J4_11},  {C::J4_10, C::J4_11}, {C::J4_11, C::J4_12}, {C::J4_12, C::J4_ab},
  };
  return edges;
}

BilinearTensor beta2(const Rational& mu) {
  BilinearTensor b(3);
  b.set_coeff(0, 0, 1, Scalar(1));
  b.set_coeff(0, 2, 1, Scalar(1));
  b.set_coeff(2, 2, 1, Scalar(mu));
  return b;
}

const std::vector<AssociativeEntry>& associative_atlas() {
  static const std::vector<AssociativeEntry> entries = [] {
    std::vector<AssociativeEntry> out;
    auto from_text = [](const char* body) { return parse_algebra_file(std::string("dim 3\nbilinear\n") + body).law; };
    out.push_back({"beta1", from_text("e1*e1 = e2\ne1*e2 = e3\ne2*e1 = e3"), std::nullopt, ClassId::J3_1});
    for (const Rational& mu : {Rational(1), Rational(2), Rational(-1), Rational(1, 4)})
      out.push_back({"beta2^" + mu.get_str(), beta2(mu), mu, ClassId::J3_2});
    out.push_back({"beta3", from_text("e1*e1 = e2\ne3*e3 = e2"), std::nullopt, ClassId::J3_2});
    out.push_back({"beta4", from_text("e1*e2 = -e3\ne2*e1 = e3"), std::nullopt, ClassId::J3_ab});
    out.push_back({"beta5", from_text("e1*e1 = e2"), std::nullopt, ClassId::J3_3});
    return out;
  }();
  return entries;
}

StructureTensor squaring_map(const BilinearTensor& beta) {
  if (!beta.is_associative()) throw Error(ErrorCode::NotAssociative, "squaring map needs an associative law");
  const std::size_t n = beta.dim();
  const Scalar half = Scalar::fraction(1, 2);
  StructureTensor phi(n, beta.field());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar c = (beta.coeff(i, j, k) + beta.coeff(j, i, k)) * half;
        if (!c.is_zero()) phi.set_coeff(i, j, k, c);
      }
  return phi;
}

}  // namespace nilj
