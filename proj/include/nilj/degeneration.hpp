#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nilj/classifier.hpp"
#include "nilj/puiseux.hpp"
#include "nilj/tensor.hpp"

namespace nilj {

/// f_t as an n x n matrix of Puiseux polynomials; column j is f_t(e_j).
struct ContractionFamily {
  PuiseuxMatrix matrix;

  std::size_t dim() const { return matrix.rows(); }
  /// `f(e1) = t*e1, f(e2) = ...` with identity columns omitted.
  std::string str() const;
  /// Throws SINGULAR when det f_t vanishes identically.
  void require_invertible() const;

  friend bool operator==(const ContractionFamily&, const ContractionFamily&) = default;
};

ContractionFamily constant_family(const ScalarMatrix& m);
/// diag(t, ..., t): contracts every nilpotent law onto the abelian one.
ContractionFamily scaling_family(std::size_t n);
/// Columns c_j * t^{w_j} e_j composed on the left with the constant g.
ContractionFamily diagonal_family(const ScalarMatrix& g, const std::vector<Rational>& weights,
                                  const std::vector<Scalar>& coefficients = {});

/// Entry a_ij^k of the transported law whose t-order is negative.
struct Divergence {
  std::size_t i = 0, j = 0, k = 0;
  Rational order;
  std::string str() const;
};

using LimitResult = std::variant<StructureTensor, Divergence>;

/// Transported law f_t^{-1} phi0(f_t x, f_t y) as exact fractions, one
/// numerator per coefficient over the common denominator det f_t.
struct TransportedLaw {
  std::size_t n = 0;
  std::vector<PuiseuxPoly> numerators;  // index (i*n + j)*n + k
  PuiseuxPoly denominator;
};

TransportedLaw transport(const StructureTensor& phi0, const ContractionFamily& f);

/// lim_{t->0} of the transported law; Divergence names the first entry
/// (in index order) with negative order. Throws SINGULAR.
LimitResult limit_of_family(const StructureTensor& phi0, const ContractionFamily& f);

enum class EdgeStatus { Verified, Singular, Diverges, Misclassified, InequalityViolated };
const char* to_string(EdgeStatus s);

struct ContractionEdge {
  ClassId source;
  ClassId target;
  ContractionFamily witness;
  EdgeStatus status = EdgeStatus::Singular;
  std::optional<ClassId> actual;  // class of the limit when it exists
  std::optional<StructureTensor> limit;
  InvariantProfile source_profile;
  std::optional<InvariantProfile> limit_profile;
  std::string detail;

  bool verified() const { return status == EdgeStatus::Verified; }
};

/// The three contraction inequalities between a source and a limit
/// profile; empty when all hold, otherwise a description of the first
/// failure.
std::string contraction_inequality_failure(const InvariantProfile& source, const InvariantProfile& limit);
/// The reversed inequalities for a non-trivial deformation of phi0 over phi.
std::string deformation_inequality_failure(const InvariantProfile& base, const InvariantProfile& deformed);

ContractionEdge verify_edge(const StructureTensor& source, ClassId target, const ContractionFamily& f);

/// phi_t = phi_0 + sum_k t^k terms[k-1].
struct DeformationDirection {
  std::vector<StructureTensor> terms;
};

struct DeformationReport {
  bool jordan_family = false;
  bool nilpotent_at_one = false;
  std::optional<ClassId> class_at_one;
  InvariantProfile base_profile;
  std::optional<InvariantProfile> profile_at_one;
  bool trivial = false;  // the t = 1 law is isomorphic to phi0
  std::string inequality_failure;
  std::string detail;

  bool ok() const { return jordan_family && nilpotent_at_one && class_at_one && inequality_failure.empty(); }
};

/// Lowest t-degree at which the Jordan defect of phi_t is nonzero on the
/// polarization set, if any.
std::optional<int> jordan_family_defect(const StructureTensor& phi0, const DeformationDirection& d);

StructureTensor specialize(const StructureTensor& phi0, const DeformationDirection& d, const Scalar& t);

/// Throws NOT_JORDAN_FAMILY naming the offending t-coefficient, and
/// DIMENSION_MISMATCH for terms of the wrong size.
DeformationReport verify_polynomial_deformation(const StructureTensor& phi0, const DeformationDirection& d);

/// Elementary linear directions mu (a single product e_i e_j = e_k) for
/// which phi0 + t mu is a Jordan family lying in `target` at t = 1 and at
/// further sample values of t, in (i, j, k) order.
std::vector<DeformationDirection> search_linear_deformations(const StructureTensor& phi0, ClassId target);

/// Reason no contraction source -> target can exist, from invariants that
/// only move one way under contraction: the three inequalities above and
/// the generic form rank. Empty when no obstruction applies.
std::string contraction_obstruction(const StructureTensor& source, const StructureTensor& target);

struct SearchBudget {
  std::size_t max_basis_changes = 700;
};

struct SearchResult {
  std::optional<ContractionFamily> family;
  std::string reason;  // why nothing was found
  std::size_t basis_changes_tried = 0;
};

/// Looks for f_t = G * diag(t^{w_1}, ..., t^{w_n}) with G from a fixed
/// ordered list of rational basis changes (identity, characteristic-basis
/// changes, permutations, shears) and weights from witness_exponents().
/// The first family in enumeration order for which verify_edge succeeds is
/// returned. A limit along such a family is fixed by the diagonal torus, so
/// targets without a non-nilpotent derivation are rejected up front.
/// Throws PRECONDITION when source and target are already isomorphic.
SearchResult search_witness(const StructureTensor& source, const StructureTensor& target,
                            const SearchBudget& budget = {});

/// {0, +-1/2, +-1, +-3/2, +-2, +-3}, smallest magnitude first.
const std::vector<Rational>& witness_exponents();

/// Replaces the t-exponent of every entry of column `column` by each grid
/// value in turn and returns the exponents for which the edge verifies.
/// The column must hold monomials.
std::vector<Rational> repair_column_exponent(const StructureTensor& source, ClassId target,
                                             const ContractionFamily& f, std::size_t column);

}  // namespace nilj
