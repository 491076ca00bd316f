#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilj {

using Rational = mpq_class;

/// Thrown for every recoverable domain failure. `code()` carries the
/// machine-readable kind so callers can branch without string matching.
enum class ErrorCode {
  DimensionMismatch,
  Singular,
  DivisionByZero,
  NotJordan,
  NotNilpotent,
  NotAssociative,
  UnsupportedDim,
  Degenerate,
  NoCharBasis,
  NotJordanFamily,
  Precondition,
  Parse,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

const char* to_string(ErrorCode code);

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// Exact Gaussian rational re + im*i.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar fraction(long num, long den) { return Scalar(Rational(num, den)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Scalar inverse() const;

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Total order (re, then im); only used for deterministic containers.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  /// Renders in the literal syntax accepted by `parse_scalar`:
  /// `3`, `-1/2`, `i`, `-2i`, `2/3*i`, `1/2+3i`.
  std::string str() const;

private:
  Rational re_{0};
  Rational im_{0};
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline Scalar exact_div(const Scalar& a, const Scalar& b) { return a / b; }

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses `p`, `p/q`, `p/q*i`, `i`, `-i`, `3i`, sums such as `1/2+3i`,
/// and a parenthesized form of any of these.
Scalar parse_scalar(std::string_view text);

}  // namespace nilj
