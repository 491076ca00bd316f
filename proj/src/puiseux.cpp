#include "nilj/puiseux.hpp"

#include <sstream>

namespace nilj {

PuiseuxPoly PuiseuxPoly::monomial(const Scalar& c, const Rational& exponent) {
  PuiseuxPoly p;
  p.add_term(exponent, c);
  return p;
}

void PuiseuxPoly::add_term(const Rational& q, const Scalar& c) {
  if (c.is_zero()) return;
  Rational exponent = q;
  exponent.canonicalize();
  auto [it, inserted] = terms_.try_emplace(std::move(exponent), c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar PuiseuxPoly::coefficient(const Rational& q) const {
  auto it = terms_.find(q);
  return it == terms_.end() ? Scalar() : it->second;
}

const Rational& PuiseuxPoly::lowest_exponent() const {
  if (terms_.empty()) throw Error(ErrorCode::Precondition, "lowest exponent of zero polynomial");
  return terms_.begin()->first;
}

const Rational& PuiseuxPoly::highest_exponent() const {
  if (terms_.empty()) throw Error(ErrorCode::Precondition, "highest exponent of zero polynomial");
  return terms_.rbegin()->first;
}

const Scalar& PuiseuxPoly::lowest_coefficient() const {
  if (terms_.empty()) throw Error(ErrorCode::Precondition, "lowest coefficient of zero polynomial");
  return terms_.begin()->second;
}

std::optional<Scalar> PuiseuxPoly::limit_at_zero() const {
  if (terms_.empty()) return Scalar();
  if (sgn(terms_.begin()->first) < 0) return std::nullopt;
  return coefficient(Rational(0));
}

Scalar PuiseuxPoly::at_one() const {
  Scalar s;
  for (const auto& [q, c] : terms_) s += c;
  return s;
}

bool PuiseuxPoly::has_only_integer_exponents() const {
  for (const auto& [q, c] : terms_)
    if (q.get_den() != 1) return false;
  return true;
}

PuiseuxPoly PuiseuxPoly::operator-() const {
  PuiseuxPoly out = *this;
  for (auto& [q, c] : out.terms_) c = -c;
  return out;
}

PuiseuxPoly& PuiseuxPoly::operator+=(const PuiseuxPoly& o) {
  for (const auto& [q, c] : o.terms_) add_term(q, c);
  return *this;
}

PuiseuxPoly& PuiseuxPoly::operator-=(const PuiseuxPoly& o) {
  for (const auto& [q, c] : o.terms_) add_term(q, -c);
  return *this;
}

PuiseuxPoly& PuiseuxPoly::operator*=(const PuiseuxPoly& o) {
  PuiseuxPoly out;
  for (const auto& [qa, ca] : terms_)
    for (const auto& [qb, cb] : o.terms_) out.add_term(Rational(qa + qb), ca * cb);
  *this = std::move(out);
  return *this;
}

PuiseuxPoly& PuiseuxPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [q, v] : terms_) v *= c;
  return *this;
}

std::string PuiseuxPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [q, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    const bool compound = !c.is_real() && sgn(c.re()) != 0;
    if (sgn(q) == 0) {
      os << (compound ? "(" + c.str() + ")" : c.str());
      continue;
    }
    if (!c.is_one()) os << (compound ? "(" + c.str() + ")" : c.str()) << "*";
    os << "t";
    if (q != 1) {
      if (q.get_den() == 1 && sgn(q) > 0) os << "^" << q.get_str();
      else os << "^(" << q.get_str() << ")";
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PuiseuxPoly& p) { return os << p.str(); }

PuiseuxPoly exact_div(const PuiseuxPoly& a, const PuiseuxPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "Puiseux division by zero");
  if (a.is_zero()) return {};
  // Long division from the top term; the exact quotient's lowest exponent
  // is low(a) - low(b), which bounds the loop.
  const Rational floor_exp = a.lowest_exponent() - b.lowest_exponent();
  const Rational b_top = b.highest_exponent();
  const Scalar b_lead_inv = b.terms().rbegin()->second.inverse();
  PuiseuxPoly quotient, rest = a;
  while (!rest.is_zero()) {
    Rational q = rest.highest_exponent() - b_top;
    if (q < floor_exp) throw Error(ErrorCode::Internal, "inexact Puiseux division");
    PuiseuxPoly step = PuiseuxPoly::monomial(rest.terms().rbegin()->second * b_lead_inv, q);
    rest -= step * b;
    quotient += step;
  }
  return quotient;
}

std::optional<Scalar> puiseux_limit_at_zero(const PuiseuxPoly& p) { return p.limit_at_zero(); }

PuiseuxFraction::PuiseuxFraction(PuiseuxPoly num, PuiseuxPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "Puiseux fraction with zero denominator");
  normalize();
}

void PuiseuxFraction::normalize() {
  if (num_.is_zero()) {
    den_ = PuiseuxPoly(1);
    return;
  }
  const PuiseuxPoly shift =
      PuiseuxPoly::monomial(den_.lowest_coefficient().inverse(), Rational(-den_.lowest_exponent()));
  num_ *= shift;
  den_ *= shift;
  if (den_.size() > 1) {
    // Cancel an exact common factor when the numerator is a multiple of
    // the denominator; keeps identity-like products compact.
    try {
      PuiseuxPoly q = exact_div(num_, den_);
      num_ = std::move(q);
      den_ = PuiseuxPoly(1);
    } catch (const Error&) {
    }
  }
}

std::optional<Scalar> PuiseuxFraction::limit_at_zero() const {
  if (num_.is_zero()) return Scalar();
  const Rational order = num_.lowest_exponent() - den_.lowest_exponent();
  if (sgn(order) < 0) return std::nullopt;
  if (sgn(order) > 0) return Scalar();
  return num_.lowest_coefficient() / den_.lowest_coefficient();
}

PuiseuxFraction& PuiseuxFraction::operator+=(const PuiseuxFraction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

PuiseuxFraction& PuiseuxFraction::operator-=(const PuiseuxFraction& o) { return *this += -o; }

PuiseuxFraction& PuiseuxFraction::operator*=(const PuiseuxFraction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

PuiseuxFraction& PuiseuxFraction::operator/=(const PuiseuxFraction& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "Puiseux fraction division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::string PuiseuxFraction::str() const {
  if (den_ == PuiseuxPoly(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

PuiseuxFractionMatrix to_fractions(const PuiseuxMatrix& m) {
  PuiseuxFractionMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = PuiseuxFraction(m(r, c));
  return out;
}

PuiseuxFractionMatrix invert(const PuiseuxMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const PuiseuxPoly det = determinant(m);
  if (det.is_zero()) throw Error(ErrorCode::Singular, "Puiseux matrix is singular");
  const PuiseuxMatrix adj = adjugate(m);
  PuiseuxFractionMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = PuiseuxFraction(adj(r, c), det);
  return out;
}

}  // namespace nilj
