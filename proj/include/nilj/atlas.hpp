#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilj/classifier.hpp"
#include "nilj/invariants.hpp"
#include "nilj/tensor.hpp"

namespace nilj {

struct AtlasEntry {
  ClassId id;
  std::string name;  // phi1 .. phi12 within its dimension; phi1..phi5 for the real list
  StructureTensor tensor;
  InvariantProfile expected;
  bool rigid_claimed = false;

  bool associative() const { return expected.associative; }
};

/// Canonical representatives: J2_1, the three complex classes of
/// dimension 3, the twelve of dimension 4 and the five real laws of
/// dimension 3 (R3_4 and R3_5 are isomorphic over the reals, see
/// real_atlas()). Profiles are recomputed on first use and any mismatch
/// throws Error(Internal).
const std::vector<AtlasEntry>& atlas();

/// The fifteen complex entries of dimensions 3 and 4.
std::vector<const AtlasEntry*> complex_atlas();
/// Complex entries of one dimension (2, 3 or 4), in table order.
std::vector<const AtlasEntry*> atlas_of_dim(int n);
/// The five real laws phi1..phi5 over Q.
std::vector<const AtlasEntry*> real_atlas();

/// Throws PRECONDITION for abelian classes; see canonical_law().
const AtlasEntry& atlas_entry(ClassId id);
/// Representative of any class, including the abelian ones.
StructureTensor canonical_law(ClassId id);

/// (s, dim O, dim Z) as printed in the published tables, for comparison.
struct ReferenceRow {
  ClassId id;
  CharSeq char_seq;
  int dim_orbit;
  int dim_center;
};
const std::vector<ReferenceRow>& reference_rows();
/// Published orbit dimensions of the real laws phi4 and phi5.
std::pair<int, int> reference_real_orbits();

/// Arrows of the published contraction diagram for dimension 4, read with
/// the phi1 arrow drawn towards the phi4/phi7 column taken as phi1 -> phi7.
const std::vector<std::pair<ClassId, ClassId>>& reference_diagram_edges();

/// A nilpotent associative law of dimension 3 from the standard list.
struct AssociativeEntry {
  std::string name;  // beta1, beta2^mu, ...
  BilinearTensor beta;
  std::optional<Rational> mu;
  /// Class the squaring image is asserted to have, when one is asserted.
  std::optional<ClassId> claimed_square;
};

/// beta1, beta2^mu for mu in {1, 2, -1, 1/4}, beta3, beta4, beta5.
const std::vector<AssociativeEntry>& associative_atlas();
BilinearTensor beta2(const Rational& mu);

/// phi(x, y) = (beta(x, y) + beta(y, x)) / 2. Throws NOT_ASSOCIATIVE.
StructureTensor squaring_map(const BilinearTensor& beta);

}  // namespace nilj
