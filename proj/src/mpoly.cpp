#include "nilj/mpoly.hpp"

#include <sstream>

namespace nilj {

MPoly MPoly::variable(std::size_t index) {
  if (index >= kMaxVariables) throw Error(ErrorCode::UnsupportedDim, "too many polynomial variables");
  Monomial m;
  m.exp[index] = 1;
  MPoly p;
  p.terms_.emplace(m, Scalar(1));
  return p;
}

void MPoly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar MPoly::evaluate(std::span<const Scalar> point) const {
  Scalar total;
  for (const auto& [m, c] : terms_) {
    Scalar v = c;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      for (unsigned k = 0; k < m.exp[i]; ++k) {
        if (i >= point.size()) throw Error(ErrorCode::DimensionMismatch, "evaluation point too short");
        v *= point[i];
      }
    total += v;
  }
  return total;
}

MPoly MPoly::operator-() const {
  MPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly& MPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    const auto& [m, c] = *it;
    os << "(" << c.str() << ")";
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (m.exp[i] == 0) continue;
      os << "*x" << (i + 1);
      if (m.exp[i] > 1) os << "^" << m.exp[i];
    }
  }
  return os.str();
}

MPoly exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const auto& [lead_m, lead_c] = *b.terms().rbegin();
  const Scalar lead_inv = lead_c.inverse();
  MPoly quotient, rest = a;
  while (!rest.is_zero()) {
    const auto& [rm, rc] = *rest.terms().rbegin();
    if (!lead_m.divides(rm)) throw Error(ErrorCode::Internal, "inexact polynomial division");
    MPoly step;
    step.add_term(rm / lead_m, rc * lead_inv);
    rest -= step * b;
    quotient += step;
  }
  return quotient;
}

}  // namespace nilj
