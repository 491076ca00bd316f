#include "nilj/scalar.hpp"

#include <cctype>
#include <sstream>

namespace nilj {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::Singular: return "SINGULAR";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::NotJordan: return "NOT_JORDAN";
    case ErrorCode::NotNilpotent: return "NOT_NILPOTENT";
    case ErrorCode::NotAssociative: return "NOT_ASSOCIATIVE";
    case ErrorCode::UnsupportedDim: return "UNSUPPORTED_DIM";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::NoCharBasis: return "NO_CHAR_BASIS";
    case ErrorCode::NotJordanFamily: return "NOT_JORDAN_FAMILY";
    case ErrorCode::Precondition: return "PRECONDITION";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw Error(ErrorCode::Parse, "malformed scalar literal '" + std::string(text) + "'");
}

// One summand of a scalar literal, without its leading sign.
Scalar parse_unsigned_term(std::string_view term, std::string_view whole) {
  term = trim(term);
  if (term.empty()) bad_literal(whole);
  bool imaginary = false;
  if (term.back() == 'i') {
    imaginary = true;
    term.remove_suffix(1);
    term = trim(term);
    if (!term.empty() && term.back() == '*') {
      term.remove_suffix(1);
      term = trim(term);
      if (term.empty()) bad_literal(whole);
    }
  }
  Rational value(1);
  if (!term.empty()) value = parse_rational(term);
  if (imaginary) return Scalar(Rational(0), value);
  return Scalar(value);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = trim(s.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero scalar");
  Rational n = norm();
  return Scalar(Rational(re_ / n), Rational(-im_ / n));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "scalar division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (sgn(re_) != 0) out = re_.get_str();
  if (sgn(im_) != 0) {
    Rational mag = abs(im_);
    if (!out.empty()) out += sgn(im_) < 0 ? "-" : "+";
    else if (sgn(im_) < 0) out += "-";
    if (mag == 1) out += "i";
    else if (mag.get_den() == 1) out += mag.get_str() + "i";
    else out += mag.get_str() + "*i";
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar parse_scalar(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) bad_literal(text);
  Scalar total;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (!first) {
      bad_literal(text);
    }
    // A summand ends at the next sign that is not part of an exponent-free
    // rational, i.e. any '+' or '-'.
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    Scalar term = parse_unsigned_term(s.substr(pos, end - pos), text);
    total += negative ? -term : term;
    pos = end;
    first = false;
  }
  return total;
}

}  // namespace nilj
