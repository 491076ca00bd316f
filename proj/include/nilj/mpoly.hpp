#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "nilj/scalar.hpp"

namespace nilj {

inline constexpr std::size_t kMaxVariables = 8;

/// Exponent vector over x_1..x_8, ordered graded-lexicographically.
struct Monomial {
  std::array<std::uint16_t, kMaxVariables> exp{};

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exp[i] > o.exp[i]) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.exp[i] = a.exp[i] + b.exp[i];
    return m;
  }
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.exp[i] = a.exp[i] - b.exp[i];
    return m;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exp < b.exp;
  }
};

/// Polynomial in x_1..x_n with Gaussian-rational coefficients. Used as the
/// entry ring when ranks are needed over the rational function field, e.g.
/// for the multiplication operator of a generic vector.
class MPoly {
public:
  using Terms = std::map<Monomial, Scalar, GrlexLess>;

  MPoly() = default;
  MPoly(const Scalar& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  MPoly(int c) : MPoly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)

  /// The variable x_{index+1}.
  static MPoly variable(std::size_t index);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

  Scalar evaluate(std::span<const Scalar> point) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Scalar& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Scalar& c) { return a *= c; }
  friend MPoly operator*(const Scalar& c, MPoly a) { return a *= c; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

  std::string str() const;

  void add_term(const Monomial& m, const Scalar& c);

private:
  Terms terms_;
};

inline bool is_zero(const MPoly& p) { return p.is_zero(); }

/// Exact quotient; throws Error(Internal) when b does not divide a.
MPoly exact_div(const MPoly& a, const MPoly& b);

}  // namespace nilj
