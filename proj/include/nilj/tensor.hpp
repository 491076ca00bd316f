#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nilj/matrix.hpp"
#include "nilj/scalar.hpp"

namespace nilj {

/// Ground field of a law: ℚ (real forms) or ℚ(i) (complex forms).
enum class Field { Rational, Gaussian };

const char* to_string(Field f);

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n);
Vector basis_vector(std::size_t n, std::size_t i);

/// Coordinates sum_{i,j} x_i y_j c[(i*n + j)*n + k].
template <class C, class V>
std::vector<V> apply_bilinear(std::size_t n, std::span<const C> coeffs, std::span<const V> x,
                              std::span<const V> y) {
  if (x.size() != n || y.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match algebra dimension");
  std::vector<V> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (is_zero(y[j])) continue;
      const V xy = x[i] * y[j];
      const C* row = coeffs.data() + (i * n + j) * n;
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(row[k])) out[k] += xy * row[k];
    }
  }
  return out;
}

/// phi(phi(x,x), phi(x,y)) - phi(x, phi(phi(x,x), y)) for any coefficient ring.
template <class C, class V>
std::vector<V> jordan_defect_generic(std::size_t n, std::span<const C> coeffs, std::span<const V> x,
                                     std::span<const V> y) {
  const auto xx = apply_bilinear<C, V>(n, coeffs, x, x);
  const auto xy = apply_bilinear<C, V>(n, coeffs, x, y);
  const auto xx_y = apply_bilinear<C, V>(n, coeffs, xx, y);
  auto lhs = apply_bilinear<C, V>(n, coeffs, xx, xy);
  const auto rhs = apply_bilinear<C, V>(n, coeffs, x, xx_y);
  for (std::size_t k = 0; k < n; ++k) lhs[k] -= rhs[k];
  return lhs;
}

/// Arbitrary bilinear law a_ij^k (no symmetry). Holds the associative
/// laws fed to the squaring map.
class BilinearTensor {
public:
  BilinearTensor() = default;
  explicit BilinearTensor(std::size_t n, Field field = Field::Gaussian);

  std::size_t dim() const { return n_; }
  Field field() const { return field_; }

  const Scalar& coeff(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[(i * n_ + j) * n_ + k];
  }
  void set_coeff(std::size_t i, std::size_t j, std::size_t k, const Scalar& c);
  /// Sets the ordered product e_i * e_j (0-based).
  void set_product(std::size_t i, std::size_t j, const Vector& v);
  Vector image(std::size_t i, std::size_t j) const;

  std::span<const Scalar> coefficients() const { return a_; }

  Vector product(const Vector& x, const Vector& y) const;
  bool is_symmetric() const;
  bool is_associative() const;
  bool is_zero() const;

  friend bool operator==(const BilinearTensor& a, const BilinearTensor& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

private:
  std::size_t n_ = 0;
  Field field_ = Field::Gaussian;
  std::vector<Scalar> a_;
};

/// Symmetric structure constants a_ij^k = a_ji^k of a commutative law.
/// Equality compares coefficients only; the field tag is metadata.
class StructureTensor {
public:
  StructureTensor() = default;
  explicit StructureTensor(std::size_t n, Field field = Field::Gaussian);

  /// Throws Error(Precondition) if `b` is not symmetric.
  static StructureTensor from_bilinear(const BilinearTensor& b);

  std::size_t dim() const { return law_.dim(); }
  Field field() const { return law_.field(); }
  const Scalar& coeff(std::size_t i, std::size_t j, std::size_t k) const { return law_.coeff(i, j, k); }
  std::span<const Scalar> coefficients() const { return law_.coefficients(); }
  const BilinearTensor& bilinear() const { return law_; }

  /// Sets e_i * e_j = e_j * e_i = v (0-based indices).
  void set_product(std::size_t i, std::size_t j, const Vector& v);
  void set_coeff(std::size_t i, std::size_t j, std::size_t k, const Scalar& c);
  Vector image(std::size_t i, std::size_t j) const { return law_.image(i, j); }

  bool is_zero() const { return law_.is_zero(); }
  /// True when every coefficient is real.
  bool is_real() const;
  StructureTensor with_field(Field f) const;

  /// Nonzero products as `e1*e1 = e2, e1*e2 = e3`.
  std::string summary() const;

  friend bool operator==(const StructureTensor& a, const StructureTensor& b) { return a.law_ == b.law_; }

private:
  BilinearTensor law_;
};

StructureTensor abelian(std::size_t n, Field field = Field::Gaussian);

/// Coordinates sum x_i y_j a_ij^k. Throws DIMENSION_MISMATCH.
Vector product(const StructureTensor& phi, const Vector& x, const Vector& y);

/// Left minus right side of the Jordan identity at (x, y).
Vector jordan_defect(const StructureTensor& phi, const Vector& x, const Vector& y);

/// Evaluation points for the cubic part of the Jordan identity: every sum
/// of one, two or three basis vectors (repetition allowed). A cubic form
/// vanishing on these vanishes identically, because its symmetric trilinear
/// polarization P satisfies
///   6 P(a,b,c) = F(a+b+c) - F(a+b) - F(a+c) - F(b+c) + F(a) + F(b) + F(c).
std::vector<Vector> polarization_points(std::size_t n);

bool is_jordan(const StructureTensor& phi);

/// (e_i e_j) e_k == e_i (e_j e_k) for every basis triple.
bool is_associative(const StructureTensor& phi);

/// The law f^{-1}(phi(f x, f y)). Column j of `f` is the image f(e_j).
/// Throws SINGULAR.
StructureTensor transform(const StructureTensor& phi, const ScalarMatrix& f);

/// Matrix of L_x: column j is phi(x, e_j).
ScalarMatrix mult_operator(const StructureTensor& phi, const Vector& x);

}  // namespace nilj
