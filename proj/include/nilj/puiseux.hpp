#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "nilj/matrix.hpp"
#include "nilj/scalar.hpp"

namespace nilj {

struct RationalLess {
  bool operator()(const Rational& a, const Rational& b) const { return cmp(a, b) < 0; }
};

/// Finite sum of terms c * t^q with Scalar c and rational q. Zero
/// coefficients are never stored, so the map is the canonical form.
class PuiseuxPoly {
public:
  using Terms = std::map<Rational, Scalar, RationalLess>;

  PuiseuxPoly() = default;
  PuiseuxPoly(const Scalar& c) { add_term(Rational(0), c); }  // NOLINT(google-explicit-constructor)
  PuiseuxPoly(int c) : PuiseuxPoly(Scalar(c)) {}               // NOLINT(google-explicit-constructor)

  static PuiseuxPoly monomial(const Scalar& c, const Rational& exponent);
  static PuiseuxPoly t(const Rational& exponent = Rational(1)) { return monomial(Scalar(1), exponent); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of t^q (zero when absent).
  Scalar coefficient(const Rational& q) const;

  /// Smallest / largest exponent; precondition: nonzero.
  const Rational& lowest_exponent() const;
  const Rational& highest_exponent() const;
  const Scalar& lowest_coefficient() const;

  /// Constant term when every exponent is >= 0; std::nullopt (DIVERGES)
  /// when some negative power survives.
  std::optional<Scalar> limit_at_zero() const;

  /// Value at t = 1.
  Scalar at_one() const;

  bool has_only_integer_exponents() const;

  PuiseuxPoly operator-() const;
  PuiseuxPoly& operator+=(const PuiseuxPoly& o);
  PuiseuxPoly& operator-=(const PuiseuxPoly& o);
  PuiseuxPoly& operator*=(const PuiseuxPoly& o);
  PuiseuxPoly& operator*=(const Scalar& c);

  friend PuiseuxPoly operator+(PuiseuxPoly a, const PuiseuxPoly& b) { return a += b; }
  friend PuiseuxPoly operator-(PuiseuxPoly a, const PuiseuxPoly& b) { return a -= b; }
  friend PuiseuxPoly operator*(PuiseuxPoly a, const PuiseuxPoly& b) { return a *= b; }
  friend PuiseuxPoly operator*(PuiseuxPoly a, const Scalar& c) { return a *= c; }
  friend PuiseuxPoly operator*(const Scalar& c, PuiseuxPoly a) { return a *= c; }
  friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a.terms_ == b.terms_; }

  std::string str() const;

private:
  void add_term(const Rational& q, const Scalar& c);
  Terms terms_;
};

inline bool is_zero(const PuiseuxPoly& p) { return p.is_zero(); }

/// Exact quotient a / b in the ring of Puiseux polynomials. Throws
/// Error(Internal) if b does not divide a.
PuiseuxPoly exact_div(const PuiseuxPoly& a, const PuiseuxPoly& b);

std::optional<Scalar> puiseux_limit_at_zero(const PuiseuxPoly& p);

std::ostream& operator<<(std::ostream& os, const PuiseuxPoly& p);

/// num / den with den != 0, kept with den's lowest term equal to 1*t^0.
class PuiseuxFraction {
public:
  PuiseuxFraction() : num_(), den_(1) {}
  PuiseuxFraction(PuiseuxPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  PuiseuxFraction(PuiseuxPoly num, PuiseuxPoly den);

  const PuiseuxPoly& num() const { return num_; }
  const PuiseuxPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Limit as t -> 0 from the lowest-order terms of numerator and
  /// denominator; std::nullopt when it diverges.
  std::optional<Scalar> limit_at_zero() const;

  PuiseuxFraction operator-() const { return PuiseuxFraction(-num_, den_); }
  PuiseuxFraction& operator+=(const PuiseuxFraction& o);
  PuiseuxFraction& operator-=(const PuiseuxFraction& o);
  PuiseuxFraction& operator*=(const PuiseuxFraction& o);
  PuiseuxFraction& operator/=(const PuiseuxFraction& o);
  friend PuiseuxFraction operator+(PuiseuxFraction a, const PuiseuxFraction& b) { return a += b; }
  friend PuiseuxFraction operator-(PuiseuxFraction a, const PuiseuxFraction& b) { return a -= b; }
  friend PuiseuxFraction operator*(PuiseuxFraction a, const PuiseuxFraction& b) { return a *= b; }
  friend PuiseuxFraction operator/(PuiseuxFraction a, const PuiseuxFraction& b) { return a /= b; }
  friend bool operator==(const PuiseuxFraction& a, const PuiseuxFraction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  std::string str() const;

private:
  void normalize();
  PuiseuxPoly num_;
  PuiseuxPoly den_;
};

inline bool is_zero(const PuiseuxFraction& f) { return f.is_zero(); }

using PuiseuxMatrix = Matrix<PuiseuxPoly>;
using PuiseuxFractionMatrix = Matrix<PuiseuxFraction>;

/// Exact inverse adj(m)/det(m). Throws Error(Singular) when det(m) == 0.
PuiseuxFractionMatrix invert(const PuiseuxMatrix& m);

PuiseuxFractionMatrix to_fractions(const PuiseuxMatrix& m);

}  // namespace nilj
