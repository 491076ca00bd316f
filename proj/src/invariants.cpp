#include "nilj/invariants.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "nilj/mpoly.hpp"

namespace nilj {

std::string format_char_seq(const CharSeq& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ")";
  return os.str();
}

CharSeq parse_char_seq(const std::string& text) {
  CharSeq out;
  std::string digits;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
    } else if (!digits.empty()) {
      out.push_back(std::stoi(digits));
      digits.clear();
    }
  }
  if (!digits.empty()) out.push_back(std::stoi(digits));
  return out;
}

std::string format_profile(const InvariantProfile& p) {
  std::ostringstream os;
  os << "s=" << format_char_seq(p.char_seq) << " orbit=" << p.dim_orbit << " center=" << p.dim_center
     << " der=" << p.dim_der << " nilindex=" << p.nilindex
     << " associative=" << (p.associative ? "yes" : "no") << " central_series=(";
  for (std::size_t i = 0; i < p.dims_central_series.size(); ++i)
    os << (i ? "," : "") << p.dims_central_series[i];
  os << ")";
  return os.str();
}

namespace {

ScalarMatrix rows_to_matrix(const std::vector<Vector>& rows, std::size_t n) {
  ScalarMatrix m(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace

std::vector<ScalarMatrix> central_series(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  std::vector<ScalarMatrix> chain{identity_matrix(n)};
  while (true) {
    const ScalarMatrix& last = chain.back();
    if (last.rows() == 0) break;
    std::vector<Vector> spanning;
    for (std::size_t r = 0; r < last.rows(); ++r) {
      const Vector v = last.row(r);
      for (std::size_t j = 0; j < n; ++j) spanning.push_back(product(phi, v, basis_vector(n, j)));
    }
    ScalarMatrix next = row_space(rows_to_matrix(spanning, n));
    if (next.rows() == last.rows()) break;  // stabilized above zero
    chain.push_back(std::move(next));
  }
  return chain;
}

std::vector<int> central_series_dims(const StructureTensor& phi) {
  std::vector<int> dims;
  for (const auto& c : central_series(phi)) dims.push_back(static_cast<int>(c.rows()));
  return dims;
}

std::optional<int> nilindex(const StructureTensor& phi) {
  const auto chain = central_series(phi);
  if (chain.back().rows() != 0) return std::nullopt;
  return static_cast<int>(chain.size());
}

ScalarMatrix center(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  // x is central iff sum_i x_i a_ij^k = 0 for every (j, k).
  ScalarMatrix system(n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) system(j * n + k, i) = phi.coeff(i, j, k);
  return nullspace(system);
}

namespace {

template <class T>
CharSeq blocks_from_ranks(Matrix<T> op) {
  const std::size_t n = op.rows();
  std::vector<std::size_t> ranks{n};
  Matrix<T> power = op;
  for (std::size_t k = 1; k <= n; ++k) {
    ranks.push_back(rank(power));
    if (ranks.back() == 0) break;
    if (k < n) power = power * op;
  }
  if (ranks.back() != 0) throw Error(ErrorCode::NotNilpotent, "multiplication operator is not nilpotent");
  // at_least[k] = number of blocks of size >= k
  std::vector<std::size_t> at_least(ranks.size() + 1, 0);
  for (std::size_t k = 1; k < ranks.size(); ++k) at_least[k] = ranks[k - 1] - ranks[k];
  CharSeq seq;
  for (std::size_t k = ranks.size() - 1; k >= 1; --k) {
    const std::size_t exact = at_least[k] - at_least[k + 1];
    for (std::size_t c = 0; c < exact; ++c) seq.push_back(static_cast<int>(k));
  }
  return seq;
}

}  // namespace

CharSeq block_sizes(const ScalarMatrix& nilpotent) { return blocks_from_ranks(nilpotent); }

CharSeq char_sequence_at(const StructureTensor& phi, const Vector& x) {
  return block_sizes(mult_operator(phi, x));
}

CharSeq generic_char_sequence(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  Matrix<MPoly> op(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const MPoly xi = MPoly::variable(i);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!phi.coeff(i, j, k).is_zero()) op(k, j) += xi * phi.coeff(i, j, k);
  }
  return blocks_from_ranks(std::move(op));
}

bool in_subspace(const ScalarMatrix& basis_rows, const Vector& v) {
  ScalarMatrix m(basis_rows.rows() + 1, v.size());
  for (std::size_t r = 0; r < basis_rows.rows(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = basis_rows(r, c);
  for (std::size_t c = 0; c < v.size(); ++c) m(basis_rows.rows(), c) = v[c];
  return rank(m) == basis_rows.rows();
}

std::vector<Vector> sample_vectors(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  const auto chain = central_series(phi);
  const ScalarMatrix square = chain.size() > 1 ? chain[1] : ScalarMatrix(0, n);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e = basis_vector(n, i);
    if (!in_subspace(square, e)) out.push_back(std::move(e));
  }
  static constexpr int kDigits[4] = {1, 2, 3, -1};
  std::size_t space = 1;
  for (std::size_t i = 0; i < n && space < 4096; ++i) space *= 4;
  const std::size_t wanted = std::min<std::size_t>(20, space);
  for (std::size_t k = 0; k < wanted; ++k) {
    std::size_t code = (k * 37 + 11) % space;
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = Scalar(kDigits[code % 4]);
      code /= 4;
    }
    if (!in_subspace(square, v)) out.push_back(std::move(v));
  }
  return out;
}

CharSeq char_sequence(const StructureTensor& phi) {
  if (phi.dim() == 0) throw Error(ErrorCode::Degenerate, "characteristic sequence of a 0-dimensional algebra");
  const CharSeq generic = generic_char_sequence(phi);
  for (const auto& x : sample_vectors(phi)) {
    const CharSeq at = char_sequence_at(phi, x);
    if (generic < at)
      throw Error(ErrorCode::Internal, "sample vector exceeds the generic characteristic sequence: " +
                                           format_char_seq(at) + " > " + format_char_seq(generic));
  }
  return generic;
}

ScalarMatrix derivation_basis(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  // Unknown F with f(e_b) = sum_a F[a][b] e_a, stored at column a*n + b.
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vector row(n * n);
        // f(phi(e_i, e_j))_k
        for (std::size_t m = 0; m < n; ++m) row[k * n + m] += phi.coeff(i, j, m);
        // - phi(f e_i, e_j)_k - phi(e_i, f e_j)_k
        for (std::size_t a = 0; a < n; ++a) {
          row[a * n + i] -= phi.coeff(a, j, k);
          row[a * n + j] -= phi.coeff(i, a, k);
        }
        rows.push_back(std::move(row));
      }
  return nullspace(rows_to_matrix(rows, n * n));
}

int derivation_dim(const StructureTensor& phi) { return static_cast<int>(derivation_basis(phi).rows()); }

int coboundary_space_dim(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  std::vector<Vector> images;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // f = E_ab : e_b -> e_a
      Vector delta;
      delta.reserve(n * n * (n + 1) / 2);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          Vector fi = i == b ? basis_vector(n, a) : zero_vector(n);
          Vector fj = j == b ? basis_vector(n, a) : zero_vector(n);
          Vector v = product(phi, fi, basis_vector(n, j));
          const Vector w = product(phi, basis_vector(n, i), fj);
          const Scalar& through = phi.coeff(i, j, b);
          for (std::size_t k = 0; k < n; ++k) v[k] += w[k];
          v[a] -= through;
          delta.insert(delta.end(), v.begin(), v.end());
        }
      images.push_back(std::move(delta));
    }
  return static_cast<int>(rank(rows_to_matrix(images, n * n * (n + 1) / 2)));
}

int generic_form_rank(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  Matrix<MPoly> form(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const MPoly lk = MPoly::variable(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!phi.coeff(i, j, k).is_zero()) form(i, j) += lk * phi.coeff(i, j, k);
  }
  return static_cast<int>(rank(std::move(form)));
}

int annihilator_form_rank(const StructureTensor& phi, std::size_t k) {
  const std::size_t n = phi.dim();
  const auto series = central_series(phi);
  if (k < 1 || k > series.size()) throw Error(ErrorCode::Precondition, "no term C^" + std::to_string(k));
  const ScalarMatrix& ck = series[k - 1];
  // functionals l with l(c) = 0 for every basis row c of C^k
  const ScalarMatrix ann = ck.rows() == 0 ? identity_matrix(n) : nullspace(ck);
  Matrix<MPoly> form(n, n);
  for (std::size_t m = 0; m < ann.rows(); ++m) {
    const MPoly u = MPoly::variable(m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Scalar c;
        for (std::size_t a = 0; a < n; ++a) c += ann(m, a) * phi.coeff(i, j, a);
        if (!c.is_zero()) form(i, j) += u * c;
      }
  }
  return static_cast<int>(rank(std::move(form)));
}

std::optional<int> null_extension_dim(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  const auto series = central_series(phi);
  const ScalarMatrix c2 = series.size() > 1 ? series[1] : ScalarMatrix(0, n);
  const std::size_t d = c2.rows();
  auto row = [](const ScalarMatrix& m, std::size_t r) {
    Vector v(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) v[c] = m(r, c);
    return v;
  };
  auto zero = [](const Vector& v) { return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); }); };
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b)
      if (!zero(product(phi, row(c2, a), row(c2, b)))) return -1;

  // K = {x : phi(x, C^2) = 0}
  ScalarMatrix eqs(d * n, n);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector img = product(phi, basis_vector(n, j), row(c2, a));
      for (std::size_t k = 0; k < n; ++k) eqs(a * n + k, j) = img[k];
    }
  const ScalarMatrix k_basis = d == 0 ? identity_matrix(n) : nullspace(eqs);
  std::vector<Vector> extra;
  ScalarMatrix span = c2;
  for (std::size_t r = 0; r < k_basis.rows(); ++r) {
    const Vector v = row(k_basis, r);
    if (in_subspace(span, v)) continue;
    extra.push_back(v);
    ScalarMatrix grown(span.rows() + 1, n);
    for (std::size_t i = 0; i < span.rows(); ++i)
      for (std::size_t c = 0; c < n; ++c) grown(i, c) = span(i, c);
    for (std::size_t c = 0; c < n; ++c) grown(span.rows(), c) = v[c];
    span = row_space(grown);
  }
  const int base = static_cast<int>(d);
  if (extra.empty()) return base;
  if (extra.size() == 1) return base + (zero(product(phi, extra[0], extra[0])) ? 1 : 0);
  if (extra.size() > 2) return std::nullopt;

  // a^2 uu + 2ab uv + b^2 vv: one binary quadratic per coordinate
  const Vector uu = product(phi, extra[0], extra[0]);
  const Vector uv = product(phi, extra[0], extra[1]);
  const Vector vv = product(phi, extra[1], extra[1]);
  ScalarMatrix forms(n, 3);
  for (std::size_t k = 0; k < n; ++k) {
    forms(k, 0) = uu[k];
    forms(k, 1) = uv[k] * Scalar(2);
    forms(k, 2) = vv[k];
  }
  const ScalarMatrix q = row_space(forms);
  if (q.rows() == 0) return base + 2;
  if (q.rows() == 1) return base + 1;
  if (q.rows() == 3) return base;
  const Scalar &a1 = q(0, 0), &b1 = q(0, 1), &c1 = q(0, 2), &a2 = q(1, 0), &b2 = q(1, 1), &c2c = q(1, 2);
  const Scalar ac = a1 * c2c - a2 * c1;
  const Scalar res = ac * ac - (a1 * b2 - a2 * b1) * (b1 * c2c - b2 * c1);
  return base + (res.is_zero() ? 1 : 0);
}

namespace {

// Sum of tr(D_{s_1} ... D_{s_k}) over all orderings of each multiset,
// accumulated per multiset; any nonzero total witnesses tr(D^k) != 0 for
// some D in the span.
bool symmetrized_traces_vanish(const std::vector<ScalarMatrix>& ds, std::size_t k) {
  const std::size_t d = ds.size();
  std::map<std::vector<std::size_t>, Scalar> totals;
  std::vector<std::size_t> seq(k, 0);
  std::vector<ScalarMatrix> prefix(k + 1);
  prefix[0] = identity_matrix(ds.front().rows());
  std::size_t depth = 0;
  std::vector<std::size_t> next(k + 1, 0);
  // iterative depth-first walk over ordered sequences with shared prefixes
  while (true) {
    if (depth == k) {
      Scalar tr;
      for (std::size_t i = 0; i < prefix[k].rows(); ++i) tr += prefix[k](i, i);
      if (!tr.is_zero()) {
        std::vector<std::size_t> key(seq.begin(), seq.end());
        std::sort(key.begin(), key.end());
        totals[key] += tr;
      }
      --depth;
      continue;
    }
    if (next[depth] == d) {
      if (depth == 0) break;
      next[depth] = 0;
      --depth;
      continue;
    }
    seq[depth] = next[depth]++;
    prefix[depth + 1] = prefix[depth] * ds[seq[depth]];
    ++depth;
  }
  for (const auto& [key, total] : totals)
    if (!total.is_zero()) return false;
  return true;
}

bool is_nilpotent_matrix(ScalarMatrix m) {
  const ScalarMatrix base = m;
  for (std::size_t k = 1; k < base.rows(); ++k) m = m * base;
  return m.is_zero_matrix();
}

}  // namespace

bool has_nonnilpotent_derivation(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  const ScalarMatrix basis = derivation_basis(phi);
  std::vector<ScalarMatrix> ds;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    ScalarMatrix f(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) f(a, b) = basis(r, a * n + b);
    ds.push_back(std::move(f));
  }
  if (ds.empty()) return false;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!is_nilpotent_matrix(ds[i])) return true;
    for (std::size_t j = i + 1; j < ds.size(); ++j)
      if (!is_nilpotent_matrix(ds[i] + ds[j]) || !is_nilpotent_matrix(ds[i] - ds[j])) return true;
  }
  for (std::size_t k = 1; k <= n; ++k)
    if (!symmetrized_traces_vanish(ds, k)) return true;
  return false;
}

InvariantProfile profile(const StructureTensor& phi) {
  InvariantProfile p;
  const auto nil = nilindex(phi);
  if (!nil) throw Error(ErrorCode::NotNilpotent, "law is not nilpotent");
  const int n = static_cast<int>(phi.dim());
  p.nilindex = *nil;
  p.dims_central_series = central_series_dims(phi);
  p.char_seq = char_sequence(phi);
  p.dim_center = static_cast<int>(center(phi).rows());
  p.dim_der = derivation_dim(phi);
  p.dim_orbit = n * n - p.dim_der;
  p.associative = is_associative(phi);
  return p;
}

}  // namespace nilj
