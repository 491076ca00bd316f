#include "nilj/formats.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace nilj {

ParseError::ParseError(int line, const std::string& message)
    : Error(ErrorCode::Parse, line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Line {
  int number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({number, raw});
    if (nl == std::string_view::npos) break;
  }
  return out;
}

const std::set<std::string, std::less<>> kMetaKeys{"name", "source", "target", "label", "note", "base", "expect"};

bool starts_with_word(std::string_view line, std::string_view word) {
  if (!line.starts_with(word)) return false;
  return line.size() == word.size() || std::isspace(static_cast<unsigned char>(line[word.size()]));
}

// `key rest-of-line` for metadata keys; false if the line is not metadata.
bool read_meta(const Line& line, Metadata& meta) {
  const auto sp = line.text.find_first_of(" \t");
  const std::string_view key = line.text.substr(0, sp);
  if (!kMetaKeys.contains(key)) return false;
  const std::string value(sp == std::string_view::npos ? std::string_view() : trim(line.text.substr(sp)));
  if (value.empty()) throw ParseError(line.number, "metadata key '" + std::string(key) + "' needs a value");
  if (meta.contains(std::string(key))) {
    if (key != "note") throw ParseError(line.number, "metadata key '" + std::string(key) + "' repeated");
    meta[std::string(key)] += "\n" + value;
  } else {
    meta[std::string(key)] = value;
  }
  return true;
}

std::size_t parse_count(const Line& line, std::string_view digits, std::string_view what) {
  digits = trim(digits);
  if (digits.empty() || digits.size() > 3) throw ParseError(line.number, "expected " + std::string(what));
  std::size_t v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError(line.number, "expected " + std::string(what));
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

// Basis vector token "ek" (1-based) -> k-1.
std::optional<std::size_t> basis_index(std::string_view tok) {
  if (tok.size() < 2 || tok[0] != 'e') return std::nullopt;
  std::size_t v = 0;
  for (char c : tok.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(c - '0');
    if (v > 64) return std::nullopt;
  }
  if (v == 0) return std::nullopt;
  return v - 1;
}

struct Term {
  Scalar coeff{1};
  Rational exponent{0};
  std::size_t index = 0;
};

std::vector<std::string_view> split_terms(const Line& line, std::string_view expr) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  char prev = 0;  // previous non-space character
  for (std::size_t p = 0; p < expr.size(); ++p) {
    const char c = expr[p];
    if (c == '(') ++depth;
    if (c == ')') {
      if (--depth < 0) throw ParseError(line.number, "unbalanced ')'");
    }
    if (depth == 0 && (c == '+' || c == '-') && prev != 0 && prev != '^' && prev != '*' && prev != '+' &&
        prev != '-') {
      out.push_back(trim(expr.substr(start, p - start)));
      start = p;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) prev = c;
  }
  if (depth != 0) throw ParseError(line.number, "unbalanced '('");
  out.push_back(trim(expr.substr(start)));
  return out;
}

Term parse_term(const Line& line, std::string_view text, std::size_t n, bool allow_t) {
  Term term;
  text = trim(text);
  while (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    if (text.front() == '-') term.coeff = -term.coeff;
    text = trim(text.substr(1));
  }
  if (text.empty()) throw ParseError(line.number, "empty term");
  bool have_basis = false;
  int depth = 0;
  std::size_t start = 0;
  auto factor = [&](std::string_view f) {
    f = trim(f);
    if (f.empty()) throw ParseError(line.number, "empty factor in '" + std::string(text) + "'");
    if (auto k = basis_index(f)) {
      if (have_basis) throw ParseError(line.number, "term '" + std::string(text) + "' has two basis vectors");
      if (*k >= n) throw ParseError(line.number, "basis vector " + std::string(f) + " exceeds dim " + std::to_string(n));
      term.index = *k;
      have_basis = true;
      return;
    }
    if (f == "t" || f.starts_with("t^")) {
      if (!allow_t) throw ParseError(line.number, "parameter t is not allowed here");
      Rational q(1);
      if (f.size() > 1) {
        std::string_view e = trim(f.substr(2));
        if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
        try {
          q = parse_rational(e);
        } catch (const Error&) {
          throw ParseError(line.number, "bad exponent in '" + std::string(f) + "'");
        }
      }
      term.exponent += q;
      return;
    }
    try {
      term.coeff *= parse_scalar(f);
    } catch (const Error&) {
      throw ParseError(line.number, "cannot read factor '" + std::string(f) + "'");
    }
  };
  for (std::size_t p = 0; p < text.size(); ++p) {
    if (text[p] == '(') ++depth;
    if (text[p] == ')') --depth;
    if (depth == 0 && text[p] == '*') {
      factor(text.substr(start, p - start));
      start = p + 1;
    }
  }
  factor(text.substr(start));
  if (!have_basis) throw ParseError(line.number, "term '" + std::string(text) + "' has no basis vector");
  return term;
}

std::vector<Term> parse_expression(const Line& line, std::string_view expr, std::size_t n, bool allow_t) {
  expr = trim(expr);
  if (expr.empty()) throw ParseError(line.number, "missing right-hand side");
  std::vector<Term> out;
  if (expr == "0") return out;
  for (auto piece : split_terms(line, expr)) out.push_back(parse_term(line, piece, n, allow_t));
  return out;
}

std::pair<std::size_t, std::size_t> parse_product_lhs(const Line& line, std::string_view lhs, std::size_t n) {
  lhs = trim(lhs);
  const auto star = lhs.find('*');
  if (star == std::string_view::npos) throw ParseError(line.number, "expected 'ei*ej' on the left");
  const auto i = basis_index(trim(lhs.substr(0, star)));
  const auto j = basis_index(trim(lhs.substr(star + 1)));
  if (!i || !j) throw ParseError(line.number, "expected 'ei*ej' on the left");
  if (*i >= n || *j >= n) throw ParseError(line.number, "basis index exceeds dim " + std::to_string(n));
  return {*i, *j};
}

struct Header {
  std::optional<std::size_t> dim;
  Field field = Field::Gaussian;
  bool bilinear = false;
};

// Handles dim/field/bilinear/metadata; returns false for other lines.
bool read_header(const Line& line, Header& h, Metadata& meta, bool allow_algebra_flags) {
  if (starts_with_word(line.text, "dim")) {
    if (h.dim) throw ParseError(line.number, "'dim' given twice");
    const std::size_t n = parse_count(line, line.text.substr(3), "a dimension after 'dim'");
    if (n < 1 || n > 8) throw ParseError(line.number, "dimension must be between 1 and 8");
    h.dim = n;
    return true;
  }
  if (allow_algebra_flags && starts_with_word(line.text, "field")) {
    const std::string_view f = trim(line.text.substr(5));
    if (f == "Q") h.field = Field::Rational;
    else if (f == "Qi") h.field = Field::Gaussian;
    else throw ParseError(line.number, "field must be Q or Qi");
    return true;
  }
  if (allow_algebra_flags && line.text == "bilinear") {
    h.bilinear = true;
    return true;
  }
  return read_meta(line, meta);
}

void check_field(const Line& line, Field field, const Scalar& c) {
  if (field == Field::Rational && !c.is_real())
    throw ParseError(line.number, "non-real coefficient " + c.str() + " in a law over Q");
}

std::string format_coefficient_terms(const std::vector<std::pair<Scalar, std::string>>& terms) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, rest] : terms) {
    Scalar shown = c;
    if (!first) {
      if (sgn(c.re()) < 0 || (sgn(c.re()) == 0 && sgn(c.im()) < 0)) {
        os << " - ";
        shown = -c;
      } else {
        os << " + ";
      }
    }
    first = false;
    const bool compound = !shown.is_real() && sgn(shown.re()) != 0;
    if (shown.is_one()) {
    } else if (shown == Scalar(-1)) {
      os << "-";
    } else {
      os << (compound ? "(" + shown.str() + ")" : shown.str()) << "*";
    }
    os << rest;
  }
  return first ? "0" : os.str();
}

std::string format_meta(const Metadata& meta) {
  std::ostringstream os;
  for (const auto& [k, v] : meta) {
    std::istringstream lines(v);
    std::string part;
    while (std::getline(lines, part)) os << k << " " << part << "\n";
  }
  return os.str();
}

}  // namespace

AlgebraFile parse_algebra_file(std::string_view text) {
  Header h;
  AlgebraFile out;
  std::vector<Line> products;
  for (const Line& line : content_lines(text)) {
    if (line.text.find('=') != std::string_view::npos) {
      if (!h.dim) throw ParseError(line.number, "product line before 'dim'");
      products.push_back(line);
      continue;
    }
    if (!read_header(line, h, out.meta, true)) throw ParseError(line.number, "unrecognized line '" + std::string(line.text) + "'");
  }
  if (!h.dim) throw ParseError(0, "missing 'dim' header");
  const std::size_t n = *h.dim;
  BilinearTensor law(n, h.field);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Line& line : products) {
    const auto eq = line.text.find('=');
    const auto [i, j] = parse_product_lhs(line, line.text.substr(0, eq), n);
    const std::pair<std::size_t, std::size_t> key = h.bilinear ? std::make_pair(i, j) : std::make_pair(std::min(i, j), std::max(i, j));
    if (!seen.insert(key).second)
      throw ParseError(line.number, "product e" + std::to_string(i + 1) + "*e" + std::to_string(j + 1) + " given twice");
    Vector v = zero_vector(n);
    for (const Term& term : parse_expression(line, line.text.substr(eq + 1), n, false)) {
      check_field(line, h.field, term.coeff);
      v[term.index] += term.coeff;
    }
    law.set_product(i, j, v);
    if (!h.bilinear) law.set_product(j, i, v);
  }
  out.law = std::move(law);
  out.bilinear = h.bilinear;
  return out;
}

StructureTensor parse_algebra(std::string_view text) {
  AlgebraFile f = parse_algebra_file(text);
  if (!f.law.is_symmetric()) throw ParseError(0, "law is not symmetric; a Jordan law needs ei*ej = ej*ei");
  return StructureTensor::from_bilinear(f.law);
}

std::string format_bilinear(const BilinearTensor& b, const Metadata& meta) {
  std::ostringstream os;
  const std::size_t n = b.dim();
  os << format_meta(meta) << "dim " << n << "\nfield " << (b.field() == Field::Rational ? "Q" : "Qi") << "\n";
  const bool symmetric = b.is_symmetric();
  if (!symmetric) os << "bilinear\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
      std::vector<std::pair<Scalar, std::string>> terms;
      for (std::size_t k = 0; k < n; ++k)
        if (!b.coeff(i, j, k).is_zero()) terms.emplace_back(b.coeff(i, j, k), "e" + std::to_string(k + 1));
      if (!terms.empty())
        os << "e" << i + 1 << "*e" << j + 1 << " = " << format_coefficient_terms(terms) << "\n";
    }
  return os.str();
}

std::string format_algebra(const StructureTensor& phi, const Metadata& meta) {
  return format_bilinear(phi.bilinear(), meta);
}

FamilyFile parse_family_file(std::string_view text, std::optional<std::size_t> n) {
  Header h;
  FamilyFile out;
  std::vector<Line> images;
  for (const Line& line : content_lines(text)) {
    if (line.text.starts_with("f(")) {
      images.push_back(line);
      continue;
    }
    if (!read_header(line, h, out.meta, false)) throw ParseError(line.number, "unrecognized line '" + std::string(line.text) + "'");
  }
  if (h.dim && n && *h.dim != *n)
    throw ParseError(0, "family has dim " + std::to_string(*h.dim) + " but the law has dim " + std::to_string(*n));
  std::optional<std::size_t> dim = h.dim ? h.dim : n;
  if (!dim && out.meta.contains("source"))
    if (auto id = parse_class_id(out.meta.at("source"))) dim = static_cast<std::size_t>(dimension(*id));
  if (!dim) throw ParseError(0, "family dimension unknown: add a 'dim' header");
  PuiseuxMatrix m(*dim, *dim);
  std::vector<bool> given(*dim, false);
  for (const Line& line : images) {
    const auto close = line.text.find(')');
    const auto eq = line.text.find('=');
    if (close == std::string_view::npos || eq == std::string_view::npos || eq < close)
      throw ParseError(line.number, "expected 'f(ei) = ...'");
    const auto j = basis_index(trim(line.text.substr(2, close - 2)));
    if (!j || *j >= *dim) throw ParseError(line.number, "bad basis vector in 'f(...)'");
    if (!trim(line.text.substr(close + 1, eq - close - 1)).empty()) throw ParseError(line.number, "expected '=' after f(ei)");
    if (given[*j]) throw ParseError(line.number, "image of e" + std::to_string(*j + 1) + " given twice");
    given[*j] = true;
    for (const Term& term : parse_expression(line, line.text.substr(eq + 1), *dim, true))
      m(term.index, *j) += PuiseuxPoly::monomial(term.coeff, term.exponent);
  }
  for (std::size_t j = 0; j < *dim; ++j)
    if (!given[j]) m(j, j) = PuiseuxPoly(1);
  out.family.matrix = std::move(m);
  return out;
}

std::string format_family(const ContractionFamily& f, const Metadata& meta) {
  std::ostringstream os;
  const std::size_t n = f.dim();
  os << format_meta(meta) << "dim " << n << "\n";
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<Scalar, std::string>> terms;
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& [q, c] : f.matrix(k, j).terms()) {
        std::string rest;
        if (sgn(q) != 0) {
          rest = "t";
          if (q != 1) rest += (q.get_den() == 1 && sgn(q) > 0) ? "^" + q.get_str() : "^(" + q.get_str() + ")";
          rest += "*";
        }
        terms.emplace_back(c, rest + "e" + std::to_string(k + 1));
      }
    os << "f(e" << j + 1 << ") = " << format_coefficient_terms(terms) << "\n";
  }
  return os.str();
}

DeformationFile parse_deformation_file(std::string_view text, std::optional<std::size_t> n) {
  Header h;
  DeformationFile out;
  std::map<std::size_t, std::vector<Line>> blocks;
  std::optional<std::size_t> current;
  for (const Line& line : content_lines(text)) {
    if (starts_with_word(line.text, "deg") || line.text.starts_with("deg")) {
      if (line.text.back() != ':') throw ParseError(line.number, "expected 'deg K:'");
      const std::size_t k = parse_count(line, line.text.substr(3, line.text.size() - 4), "a degree after 'deg'");
      if (k < 1) throw ParseError(line.number, "degrees start at 1");
      if (blocks.contains(k)) throw ParseError(line.number, "degree " + std::to_string(k) + " given twice");
      blocks[k];
      current = k;
      continue;
    }
    if (line.text.find('=') != std::string_view::npos) {
      if (!current) throw ParseError(line.number, "product line outside a 'deg K:' block");
      blocks[*current].push_back(line);
      continue;
    }
    if (!read_header(line, h, out.meta, false)) throw ParseError(line.number, "unrecognized line '" + std::string(line.text) + "'");
  }
  if (h.dim && n && *h.dim != *n)
    throw ParseError(0, "direction has dim " + std::to_string(*h.dim) + " but the law has dim " + std::to_string(*n));
  std::optional<std::size_t> dim = h.dim ? h.dim : n;
  if (!dim && out.meta.contains("base"))
    if (auto id = parse_class_id(out.meta.at("base"))) dim = static_cast<std::size_t>(dimension(*id));
  if (!dim) throw ParseError(0, "direction dimension unknown: add a 'dim' header");
  if (blocks.empty()) throw ParseError(0, "no 'deg K:' blocks");
  out.direction.terms.assign(blocks.rbegin()->first, StructureTensor(*dim));
  for (const auto& [k, lines] : blocks) {
    StructureTensor& term = out.direction.terms[k - 1];
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const Line& line : lines) {
      const auto eq = line.text.find('=');
      const auto [i, j] = parse_product_lhs(line, line.text.substr(0, eq), *dim);
      if (!seen.insert(std::minmax(i, j)).second) throw ParseError(line.number, "product given twice in this block");
      Vector v = zero_vector(*dim);
      for (const Term& t : parse_expression(line, line.text.substr(eq + 1), *dim, false)) v[t.index] += t.coeff;
      term.set_product(i, j, v);
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace nilj
