#include "nilj/degeneration.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <sstream>

namespace nilj {

namespace {

std::string monomial_term(const Scalar& c, const Rational& q, std::size_t k) {
  std::ostringstream os;
  const bool compound = !c.is_real() && sgn(c.re()) != 0;
  const std::string cs = compound ? "(" + c.str() + ")" : c.str();
  if (c == Scalar(-1) && sgn(q) != 0) os << "-";
  else if (!c.is_one()) os << cs << "*";
  if (sgn(q) != 0) {
    os << "t";
    if (q != 1) {
      if (q.get_den() == 1 && sgn(q) > 0) os << "^" << q.get_str();
      else os << "^(" << q.get_str() << ")";
    }
    os << "*";
  }
  os << "e" << k + 1;
  return os.str();
}

bool is_identity_column(const PuiseuxMatrix& m, std::size_t j) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const PuiseuxPoly& p = m(k, j);
    if (k == j) {
      if (!(p == PuiseuxPoly(1))) return false;
    } else if (!p.is_zero()) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string ContractionFamily::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (is_identity_column(matrix, j)) continue;
    os << (first ? "" : ", ") << "f(e" << j + 1 << ") = ";
    first = false;
    bool first_term = true;
    for (std::size_t k = 0; k < dim(); ++k)
      for (const auto& [q, c] : matrix(k, j).terms()) {
        os << (first_term ? "" : " + ") << monomial_term(c, q, k);
        first_term = false;
      }
    if (first_term) os << "0";
  }
  return first ? "identity" : os.str();
}

void ContractionFamily::require_invertible() const {
  if (!matrix.square() || dim() == 0) throw Error(ErrorCode::DimensionMismatch, "family matrix must be square");
  if (determinant(matrix).is_zero()) throw Error(ErrorCode::Singular, "det f_t vanishes identically");
}

ContractionFamily constant_family(const ScalarMatrix& m) {
  PuiseuxMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = PuiseuxPoly(m(r, c));
  return {out};
}

ContractionFamily scaling_family(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::Precondition, "scaling family needs n >= 1");
  PuiseuxMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = PuiseuxPoly::t();
  return {out};
}

ContractionFamily diagonal_family(const ScalarMatrix& g, const std::vector<Rational>& weights,
                                  const std::vector<Scalar>& coefficients) {
  const std::size_t n = g.rows();
  if (weights.size() != n || (!coefficients.empty() && coefficients.size() != n))
    throw Error(ErrorCode::DimensionMismatch, "weight list does not match the basis change");
  PuiseuxMatrix out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Scalar c = coefficients.empty() ? Scalar(1) : coefficients[j];
    for (std::size_t k = 0; k < n; ++k)
      if (!g(k, j).is_zero()) out(k, j) = PuiseuxPoly::monomial(g(k, j) * c, weights[j]);
  }
  return {out};
}

std::string Divergence::str() const {
  std::ostringstream os;
  os << "coefficient of e" << k + 1 << " in e" << i + 1 << "*e" << j + 1 << " has order " << order.get_str();
  return os.str();
}

TransportedLaw transport(const StructureTensor& phi0, const ContractionFamily& f) {
  const std::size_t n = phi0.dim();
  if (f.dim() != n || !f.matrix.square())
    throw Error(ErrorCode::DimensionMismatch, "family dimension does not match the law");
  TransportedLaw out{n, std::vector<PuiseuxPoly>(n * n * n), determinant(f.matrix)};
  if (out.denominator.is_zero()) throw Error(ErrorCode::Singular, "det f_t vanishes identically");
  const PuiseuxMatrix adj = adjugate(f.matrix);
  std::vector<std::vector<PuiseuxPoly>> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = f.matrix.column(j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto v = apply_bilinear<Scalar, PuiseuxPoly>(n, phi0.coefficients(), cols[i], cols[j]);
      for (std::size_t k = 0; k < n; ++k) {
        PuiseuxPoly acc;
        for (std::size_t m = 0; m < n; ++m)
          if (!adj(k, m).is_zero() && !v[m].is_zero()) acc += adj(k, m) * v[m];
        out.numerators[(i * n + j) * n + k] = acc;
        out.numerators[(j * n + i) * n + k] = std::move(acc);
      }
    }
  return out;
}

LimitResult limit_of_family(const StructureTensor& phi0, const ContractionFamily& f) {
  const TransportedLaw law = transport(phi0, f);
  const std::size_t n = law.n;
  const Rational& den_order = law.denominator.lowest_exponent();
  const Scalar& den_lead = law.denominator.lowest_coefficient();
  StructureTensor out(n, Field::Gaussian);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const PuiseuxPoly& num = law.numerators[(i * n + j) * n + k];
        if (num.is_zero()) continue;
        const Rational order = num.lowest_exponent() - den_order;
        if (sgn(order) < 0) return Divergence{i, j, k, order};
        if (sgn(order) == 0) out.set_coeff(i, j, k, num.lowest_coefficient() / den_lead);
      }
  if (phi0.field() == Field::Rational && out.is_real()) out = out.with_field(Field::Rational);
  return out;
}

const char* to_string(EdgeStatus s) {
  switch (s) {
    case EdgeStatus::Verified: return "VERIFIED";
    case EdgeStatus::Singular: return "SINGULAR";
    case EdgeStatus::Diverges: return "DIVERGES";
    case EdgeStatus::Misclassified: return "MISCLASSIFIED";
    case EdgeStatus::InequalityViolated: return "INEQUALITY_VIOLATED";
  }
  return "?";
}

std::string contraction_inequality_failure(const InvariantProfile& source, const InvariantProfile& limit) {
  if (source.char_seq < limit.char_seq)
    return "s rises from " + format_char_seq(source.char_seq) + " to " + format_char_seq(limit.char_seq);
  if (limit.dim_orbit >= source.dim_orbit)
    return "orbit dimension does not drop (" + std::to_string(source.dim_orbit) + " -> " +
           std::to_string(limit.dim_orbit) + ")";
  if (limit.dim_center < source.dim_center)
    return "center shrinks (" + std::to_string(source.dim_center) + " -> " + std::to_string(limit.dim_center) + ")";
  return {};
}

std::string deformation_inequality_failure(const InvariantProfile& base, const InvariantProfile& deformed) {
  if (deformed.char_seq < base.char_seq)
    return "s drops from " + format_char_seq(base.char_seq) + " to " + format_char_seq(deformed.char_seq);
  if (deformed.dim_orbit <= base.dim_orbit)
    return "orbit dimension does not rise (" + std::to_string(base.dim_orbit) + " -> " +
           std::to_string(deformed.dim_orbit) + ")";
  if (deformed.dim_center > base.dim_center)
    return "center grows (" + std::to_string(base.dim_center) + " -> " + std::to_string(deformed.dim_center) + ")";
  return {};
}

ContractionEdge verify_edge(const StructureTensor& source, ClassId target, const ContractionFamily& f) {
  const Classification src = classify_detailed(source);
  ContractionEdge edge{src.id, target, f, EdgeStatus::Singular, std::nullopt, std::nullopt, src.profile,
                       std::nullopt, {}};
  LimitResult result;
  try {
    result = limit_of_family(source, f);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    edge.detail = e.what();
    return edge;
  }
  if (const auto* d = std::get_if<Divergence>(&result)) {
    edge.status = EdgeStatus::Diverges;
    edge.detail = d->str();
    return edge;
  }
  StructureTensor lim = std::get<StructureTensor>(std::move(result));
  if (source.field() == Field::Rational && !lim.is_real())
    throw Error(ErrorCode::Internal, "real law contracted to a non-real limit");
  lim = lim.with_field(source.field());
  if (!is_jordan(lim)) throw Error(ErrorCode::Internal, "limit law fails the Jordan identity");
  if (src.profile.associative && !is_associative(lim))
    throw Error(ErrorCode::Internal, "limit of an associative law is not associative");
  const Classification got = classify_detailed(lim);
  edge.actual = got.id;
  edge.limit = std::move(lim);
  edge.limit_profile = got.profile;
  if (got.id != target) {
    edge.status = EdgeStatus::Misclassified;
    edge.detail = "limit is " + std::string(label(got.id));
    return edge;
  }
  const std::string failure = contraction_inequality_failure(src.profile, got.profile);
  if (!failure.empty()) {
    edge.status = EdgeStatus::InequalityViolated;
    edge.detail = failure;
    return edge;
  }
  edge.status = EdgeStatus::Verified;
  return edge;
}

namespace {

std::vector<PuiseuxPoly> family_coefficients(const StructureTensor& phi0, const DeformationDirection& d) {
  const std::size_t n = phi0.dim();
  std::vector<PuiseuxPoly> coeffs(n * n * n);
  const auto base = phi0.coefficients();
  for (std::size_t idx = 0; idx < coeffs.size(); ++idx) coeffs[idx] = PuiseuxPoly(base[idx]);
  for (std::size_t deg = 0; deg < d.terms.size(); ++deg) {
    if (d.terms[deg].dim() != n)
      throw Error(ErrorCode::DimensionMismatch, "deformation term of degree " + std::to_string(deg + 1) +
                                                    " has the wrong dimension");
    const auto term = d.terms[deg].coefficients();
    for (std::size_t idx = 0; idx < coeffs.size(); ++idx)
      if (!term[idx].is_zero()) coeffs[idx] += PuiseuxPoly::monomial(term[idx], Rational(static_cast<long>(deg + 1)));
  }
  return coeffs;
}

}  // namespace

std::optional<int> jordan_family_defect(const StructureTensor& phi0, const DeformationDirection& d) {
  const std::size_t n = phi0.dim();
  const auto coeffs = family_coefficients(phi0, d);
  std::optional<Rational> lowest;
  for (const auto& xs : polarization_points(n)) {
    std::vector<PuiseuxPoly> x(xs.begin(), xs.end());
    for (std::size_t m = 0; m < n; ++m) {
      std::vector<PuiseuxPoly> y(n);
      y[m] = PuiseuxPoly(1);
      for (const auto& c : jordan_defect_generic<PuiseuxPoly, PuiseuxPoly>(n, coeffs, x, y)) {
        if (c.is_zero()) continue;
        if (!lowest || c.lowest_exponent() < *lowest) lowest = c.lowest_exponent();
      }
    }
  }
  if (!lowest) return std::nullopt;
  return static_cast<int>(lowest->get_num().get_si());
}

StructureTensor specialize(const StructureTensor& phi0, const DeformationDirection& d, const Scalar& t) {
  StructureTensor out = phi0;
  Scalar power(1);
  const std::size_t n = phi0.dim();
  for (const auto& term : d.terms) {
    if (term.dim() != n) throw Error(ErrorCode::DimensionMismatch, "deformation term has the wrong dimension");
    power *= t;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!term.coeff(i, j, k).is_zero())
            out.set_coeff(i, j, k, out.coeff(i, j, k) + power * term.coeff(i, j, k));
  }
  return out;
}

DeformationReport verify_polynomial_deformation(const StructureTensor& phi0, const DeformationDirection& d) {
  DeformationReport r;
  r.base_profile = profile(phi0);
  if (const auto deg = jordan_family_defect(phi0, d))
    throw Error(ErrorCode::NotJordanFamily,
                "Jordan identity fails in the coefficient of t^" + std::to_string(*deg));
  r.jordan_family = true;
  const StructureTensor at_one = specialize(phi0, d, Scalar(1));
  if (!nilindex(at_one)) {
    r.detail = "specialization t = 1 is not nilpotent";
    return r;
  }
  r.nilpotent_at_one = true;
  const Classification c = classify_detailed(at_one);
  r.class_at_one = c.id;
  r.profile_at_one = c.profile;
  r.trivial = c.id == classify(phi0);
  if (!r.trivial) r.inequality_failure = deformation_inequality_failure(r.base_profile, c.profile);
  return r;
}

const std::vector<Rational>& witness_exponents() {
  static const std::vector<Rational> grid{Rational(0),  Rational(1, 2), Rational(-1, 2), Rational(1),
                                          Rational(-1), Rational(3, 2), Rational(-3, 2), Rational(2),
                                          Rational(-2), Rational(3),    Rational(-3)};
  return grid;
}

std::vector<DeformationDirection> search_linear_deformations(const StructureTensor& phi0, ClassId target) {
  const std::size_t n = phi0.dim();
  const std::vector<Scalar> samples{Scalar(1), Scalar(2), Scalar(-1), Scalar::fraction(1, 3), Scalar(5)};
  std::vector<DeformationDirection> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        StructureTensor mu(n, phi0.field());
        mu.set_coeff(i, j, k, Scalar(1));
        const DeformationDirection d{{mu}};
        if (jordan_family_defect(phi0, d)) continue;
        // The class is constant off finitely many t, so a special value of
        // t (e.g. one that cancels a product of phi0) must not decide.
        const bool generic = std::all_of(samples.begin(), samples.end(), [&](const Scalar& t) {
          const StructureTensor phi_t = specialize(phi0, d, t);
          return nilindex(phi_t) && classify(phi_t) == target;
        });
        if (generic) out.push_back(d);
      }
  return out;
}

std::string contraction_obstruction(const StructureTensor& source, const StructureTensor& target) {
  const InvariantProfile from = profile(source);
  const InvariantProfile to = profile(target);
  std::string why = contraction_inequality_failure(from, to);
  if (!why.empty()) return why;
  if (from.associative && !to.associative) return "source is associative and the target is not";
  const int r0 = generic_form_rank(source), r1 = generic_form_rank(target);
  if (r1 > r0)
    return "generic form rank rises from " + std::to_string(r0) + " to " + std::to_string(r1);
  const auto& ds = from.dims_central_series;
  const auto& dt = to.dims_central_series;
  for (std::size_t k = 2; k <= std::min(ds.size(), dt.size()); ++k) {
    if (ds[k - 1] != dt[k - 1] || ds[k - 1] == 0) continue;
    const int a0 = annihilator_form_rank(source, k), a1 = annihilator_form_rank(target, k);
    if (a1 > a0)
      return "form rank on the annihilator of C^" + std::to_string(k) + " rises from " + std::to_string(a0) +
             " to " + std::to_string(a1);
  }
  if (ds.size() > 1 && dt.size() > 1 && ds[1] == dt[1]) {
    const auto u0 = null_extension_dim(source), u1 = null_extension_dim(target);
    if (u0 && u1 && *u1 < *u0)
      return "largest square-zero subspace containing C^2 shrinks from " + std::to_string(*u0) + " to " +
             std::to_string(*u1);
  }
  return {};
}

namespace {

ScalarMatrix permutation_matrix(const std::vector<std::size_t>& p) {
  ScalarMatrix m(p.size(), p.size());
  for (std::size_t j = 0; j < p.size(); ++j) m(p[j], j) = Scalar(1);
  return m;
}

// Characteristic bases built from x = e1 + s e_j in the coordinates of one
// characteristic basis of phi; these realize the normal-form moves.
std::vector<ScalarMatrix> characteristic_moves(const StructureTensor& phi) {
  std::vector<ScalarMatrix> out;
  if (phi.dim() != 4 || phi.field() != Field::Gaussian) return out;
  ScalarMatrix base;
  try {
    base = characteristic_basis(phi);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoCharBasis) throw;
    return out;
  }
  const std::vector<Scalar> shifts{Scalar(1),  Scalar(-1), Scalar::fraction(1, 2), Scalar::fraction(-1, 2),
                                   Scalar::i(), -Scalar::i()};
  std::vector<Vector> probes{base.column(0)};
  for (std::size_t j = 1; j < 4; ++j)
    for (const Scalar& s : shifts) {
      Vector x = base.column(0);
      const Vector ej = base.column(j);
      for (std::size_t k = 0; k < 4; ++k) x[k] += s * ej[k];
      probes.push_back(std::move(x));
    }
  for (const auto& x : probes)
    for (auto& b : characteristic_bases_from(phi, x)) out.push_back(std::move(b));
  return out;
}

// Ordered list of constant basis changes: identity, characteristic moves,
// permutations, single shears, permutation * shear, shear * shear.
std::vector<ScalarMatrix> basis_changes(const StructureTensor& phi, std::size_t cap) {
  const std::size_t n = phi.dim();
  std::vector<ScalarMatrix> out;
  auto push = [&](ScalarMatrix m) {
    if (out.size() >= cap) return false;
    out.push_back(std::move(m));
    return true;
  };
  std::vector<ScalarMatrix> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(permutation_matrix(p));
  while (std::next_permutation(p.begin(), p.end()));

  std::vector<ScalarMatrix> shears;
  for (int c : {1, -1})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        ScalarMatrix s = identity_matrix(n);
        s(i, j) = Scalar(c);
        shears.push_back(std::move(s));
      }

  if (!push(perms.front())) return out;
  for (auto& m : characteristic_moves(phi))
    if (!push(std::move(m))) return out;
  for (std::size_t a = 1; a < perms.size(); ++a)
    if (!push(perms[a])) return out;
  for (const auto& s : shears)
    if (!push(s)) return out;
  for (std::size_t a = 1; a < perms.size(); ++a)
    for (const auto& s : shears)
      if (!push(perms[a] * s)) return out;
  for (std::size_t a = 0; a < shears.size(); ++a)
    for (std::size_t b = a + 1; b < shears.size(); ++b)
      if (!push(shears[a] * shears[b])) return out;
  return out;
}

struct Entry {
  std::size_t i, j, k;
};

}  // namespace

SearchResult search_witness(const StructureTensor& source, const StructureTensor& target,
                            const SearchBudget& budget) {
  const std::size_t n = source.dim();
  if (target.dim() != n) throw Error(ErrorCode::DimensionMismatch, "source and target dimensions differ");
  const StructureTensor goal = target.with_field(source.field());
  const ClassId from = classify(source);
  const Classification to = classify_detailed(goal);
  if (from == to.id) throw Error(ErrorCode::Precondition, "source and target are already isomorphic");

  SearchResult result;
  result.reason = contraction_obstruction(source, goal);
  if (!result.reason.empty()) return result;
  if (!has_nonnilpotent_derivation(goal)) {
    result.reason = "target has only nilpotent derivations, so no diagonal family can reach it";
    return result;
  }

  const auto& grid = witness_exponents();
  std::vector<int> halves;  // grid in units of 1/2
  for (const auto& q : grid) halves.push_back(static_cast<int>(Rational(q * 2).get_num().get_si()));

  for (const ScalarMatrix& g : basis_changes(source, budget.max_basis_changes)) {
    ++result.basis_changes_tried;
    const StructureTensor psi = transform(source, g);
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!psi.coeff(i, j, k).is_zero()) entries.push_back({i, j, k});

    std::map<std::string, bool> seen;
    std::vector<std::size_t> digit(n, 0);
    std::vector<int> w(n);
    std::string mask(entries.size(), '0');
    bool more = true;
    while (more) {
      for (std::size_t a = 0; a < n; ++a) w[a] = halves[digit[a]];
      bool converges = true;
      for (std::size_t e = 0; e < entries.size(); ++e) {
        const int order = w[entries[e].i] + w[entries[e].j] - w[entries[e].k];
        if (order < 0) {
          converges = false;
          break;
        }
        mask[e] = order == 0 ? '1' : '0';
      }
      if (converges) {
        auto [it, fresh] = seen.try_emplace(mask, false);
        if (fresh) {
          StructureTensor lim(n, source.field());
          for (std::size_t e = 0; e < entries.size(); ++e)
            if (mask[e] == '1')
              lim.set_coeff(entries[e].i, entries[e].j, entries[e].k,
                            psi.coeff(entries[e].i, entries[e].j, entries[e].k));
          it->second = static_cast<int>(center(lim).rows()) == to.profile.dim_center &&
                       central_series_dims(lim) == to.profile.dims_central_series &&
                       derivation_dim(lim) == to.profile.dim_der && classify(lim) == to.id;
        }
        if (it->second) {
          std::vector<Rational> weights;
          for (std::size_t a = 0; a < n; ++a) weights.push_back(grid[digit[a]]);
          ContractionFamily f = diagonal_family(g, weights);
          if (verify_edge(source, to.id, f).verified()) {
            result.family = std::move(f);
            result.reason.clear();
            return result;
          }
        }
      }
      // odometer over grid^n, last coordinate fastest
      std::size_t pos = n;
      more = false;
      while (pos > 0) {
        --pos;
        if (++digit[pos] < grid.size()) {
          more = true;
          break;
        }
        digit[pos] = 0;
      }
    }
  }
  result.reason = "no witness among " + std::to_string(result.basis_changes_tried) + " basis changes";
  return result;
}

std::vector<Rational> repair_column_exponent(const StructureTensor& source, ClassId target,
                                             const ContractionFamily& f, std::size_t column) {
  if (column >= f.dim()) throw Error(ErrorCode::Precondition, "column index out of range");
  for (std::size_t k = 0; k < f.dim(); ++k)
    if (f.matrix(k, column).size() > 1)
      throw Error(ErrorCode::Precondition, "exponent repair needs monomial entries");
  std::vector<Rational> out;
  for (const auto& q : witness_exponents()) {
    ContractionFamily g = f;
    for (std::size_t k = 0; k < f.dim(); ++k) {
      const PuiseuxPoly& p = f.matrix(k, column);
      if (!p.is_zero()) g.matrix(k, column) = PuiseuxPoly::monomial(p.lowest_coefficient(), q);
    }
    if (verify_edge(source, target, g).verified()) out.push_back(q);
  }
  return out;
}

}  // namespace nilj
