#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilj/invariants.hpp"
#include "nilj/matrix.hpp"
#include "nilj/tensor.hpp"

namespace nilj {

/// Isomorphism classes of nilpotent Jordan algebras of dimension <= 4
/// over ℚ(i), plus the real classes of dimension 3.
enum class ClassId {
  J1_ab,
  J2_1, J2_ab,
  J3_1, J3_2, J3_3, J3_ab,
  J4_1, J4_2, J4_3, J4_4, J4_5, J4_6, J4_7, J4_8, J4_9, J4_10, J4_11, J4_12, J4_ab,
  R3_1, R3_2, R3_3, R3_4, R3_5, R3_ab,
};

std::string_view label(ClassId id);
std::optional<ClassId> parse_class_id(std::string_view text);
int dimension(ClassId id);
bool is_real_class(ClassId id);
bool is_abelian_class(ClassId id);
/// The abelian class of the same dimension and field.
ClassId abelian_class(std::size_t n, Field field);
std::vector<ClassId> all_class_ids();

/// Parameters of the reduced (3,1) law with one-dimensional center, read
/// in a characteristic basis:
///   e1 e1 = e2, e1 e2 = e3, e2 e4 = gamma e3, e4 e4 = alpha e2 + beta e3.
struct NormalForm31 {
  Scalar alpha, beta, gamma;
  ScalarMatrix basis;  // columns e1..e4 in the input coordinates
};

/// Basis (as columns) with e1 characteristic, e2 = e1 e1, e3 = e1 e2,
/// e1 e3 = e1 e4 = 0. Requires dim 4 and s = (3,1); otherwise, or when
/// no probe vector works, throws NO_CHAR_BASIS.
ScalarMatrix characteristic_basis(const StructureTensor& phi);

/// Characteristic bases generated by the single vector x (one per usable
/// kernel vector of L_x); empty when x is not characteristic.
std::vector<ScalarMatrix> characteristic_bases_from(const StructureTensor& phi, const Vector& x);

/// Throws NO_CHAR_BASIS unless s = (3,1) and dim Z = 1.
NormalForm31 normal_form_31(const StructureTensor& phi);

/// Nullity test for the (2,2) branch: discriminant of the binary form
/// det(lambda A + mu B), where A, B are the Gram matrices of the two
/// coordinates of the product on a complement of C^2. In the lemma basis it
/// equals 4 b + c^2 = 4 delta up to a nonzero square.
Scalar pencil_discriminant(const StructureTensor& phi);

/// For nilindex-2 laws with one-dimensional C^2: determinant of the Gram
/// matrix of the product on a complement of C^2. Its sign separates the
/// real classes; it is defined up to a positive square factor.
Scalar square_form_determinant(const StructureTensor& phi);

struct Classification {
  ClassId id;
  InvariantProfile profile;
  std::optional<NormalForm31> normal_form;
  std::optional<Scalar> discriminant;
};

/// Decides the class; the field tag selects complex (Qi) or real (Q)
/// labels. Errors: UNSUPPORTED_DIM, NOT_JORDAN, NOT_NILPOTENT.
Classification classify_detailed(const StructureTensor& phi);
ClassId classify(const StructureTensor& phi);

/// transform(phi, f) == psi exactly. Throws SINGULAR, DIMENSION_MISMATCH.
bool verify_isomorphism(const StructureTensor& phi, const StructureTensor& psi, const ScalarMatrix& f);

}  // namespace nilj
