#include "nilj/classifier.hpp"

#include <array>
#include <utility>

namespace nilj {

namespace {

struct ClassInfo {
  ClassId id;
  std::string_view label;
  int dim;
};

constexpr std::array<ClassInfo, 26> kClasses{{
    {ClassId::J1_ab, "J1_ab", 1},  {ClassId::J2_1, "J2_1", 2},    {ClassId::J2_ab, "J2_ab", 2},
    {ClassId::J3_1, "J3_1", 3},    {ClassId::J3_2, "J3_2", 3},    {ClassId::J3_3, "J3_3", 3},
    {ClassId::J3_ab, "J3_ab", 3},  {ClassId::J4_1, "J4_1", 4},    {ClassId::J4_2, "J4_2", 4},
    {ClassId::J4_3, "J4_3", 4},    {ClassId::J4_4, "J4_4", 4},    {ClassId::J4_5, "J4_5", 4},
    {ClassId::J4_6, "J4_6", 4},    {ClassId::J4_7, "J4_7", 4},    {ClassId::J4_8, "J4_8", 4},
    {ClassId::J4_9, "J4_9", 4},    {ClassId::J4_10, "J4_10", 4},  {ClassId::J4_11, "J4_11", 4},
    {ClassId::J4_12, "J4_12", 4},  {ClassId::J4_ab, "J4_ab", 4},  {ClassId::R3_1, "R3_1", 3},
    {ClassId::R3_2, "R3_2", 3},    {ClassId::R3_3, "R3_3", 3},    {ClassId::R3_4, "R3_4", 3},
    {ClassId::R3_5, "R3_5", 3},    {ClassId::R3_ab, "R3_ab", 3},
}};

const ClassInfo& info(ClassId id) {
  for (const auto& c : kClasses)
    if (c.id == id) return c;
  throw Error(ErrorCode::Internal, "unknown class id");
}

}  // namespace

std::string_view label(ClassId id) { return info(id).label; }

std::optional<ClassId> parse_class_id(std::string_view text) {
  for (const auto& c : kClasses)
    if (c.label == text) return c.id;
  return std::nullopt;
}

int dimension(ClassId id) { return info(id).dim; }

bool is_real_class(ClassId id) { return label(id).front() == 'R'; }

bool is_abelian_class(ClassId id) { return label(id).ends_with("_ab"); }

ClassId abelian_class(std::size_t n, Field field) {
  switch (n) {
    case 1: return ClassId::J1_ab;
    case 2: return ClassId::J2_ab;
    case 3: return field == Field::Rational ? ClassId::R3_ab : ClassId::J3_ab;
    case 4: return ClassId::J4_ab;
    default: throw Error(ErrorCode::UnsupportedDim, "no class labels above dimension 4");
  }
}

std::vector<ClassId> all_class_ids() {
  std::vector<ClassId> out;
  for (const auto& c : kClasses) out.push_back(c.id);
  return out;
}

namespace {

const CharSeq kSeq31{3, 1};

bool independent(std::initializer_list<const Vector*> vs) {
  const std::size_t n = (*vs.begin())->size();
  ScalarMatrix m(vs.size(), n);
  std::size_t r = 0;
  for (const Vector* v : vs) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = (*v)[c];
    ++r;
  }
  return rank(m) == vs.size();
}

// Probe vectors for characteristic bases: the shared sample set, then the
// shifts x + a*y of sample pairs.
std::vector<Vector> char_probes(const StructureTensor& phi) {
  std::vector<Vector> base = sample_vectors(phi);
  std::vector<Vector> out = base;
  static const int kShifts[] = {1, 2, -1, 3};
  for (std::size_t a = 0; a < base.size(); ++a)
    for (std::size_t b = 0; b < base.size(); ++b) {
      if (a == b) continue;
      for (int s : kShifts) {
        Vector v = base[a];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += Scalar(s) * base[b][k];
        out.push_back(std::move(v));
      }
    }
  return out;
}

// All characteristic bases generated by `x` (one per usable kernel vector).
std::vector<ScalarMatrix> bases_from_probe(const StructureTensor& phi, const Vector& x) {
  std::vector<ScalarMatrix> out;
  const ScalarMatrix op = mult_operator(phi, x);
  if (rank(op) != 2) return out;
  const Vector e2 = op.apply(x);
  const Vector e3 = op.apply(e2);
  const Vector e3_image = op.apply(e3);
  for (const auto& c : e3_image)
    if (!c.is_zero()) return out;
  if (!independent({&x, &e2, &e3})) return out;
  if (block_sizes(op) != kSeq31) return out;
  const ScalarMatrix kernel = nullspace(op);
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    const Vector e4 = kernel.row(r);
    if (!independent({&x, &e2, &e3, &e4})) continue;
    const std::vector<Vector> cols{x, e2, e3, e4};
    out.push_back(from_columns(cols));
  }
  return out;
}

void require_char_31(const StructureTensor& phi) {
  if (phi.dim() != 4) throw Error(ErrorCode::NoCharBasis, "characteristic basis needs a 4-dimensional law");
  const CharSeq s = char_sequence(phi);
  if (s != kSeq31)
    throw Error(ErrorCode::NoCharBasis, "characteristic sequence is " + format_char_seq(s) + ", not (3,1)");
}

bool is_multiple_of(const Vector& v, std::size_t index, Scalar* coefficient) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (k != index && !v[k].is_zero()) return false;
  *coefficient = v[index];
  return true;
}

std::optional<NormalForm31> read_normal_form(const StructureTensor& phi, const ScalarMatrix& basis) {
  const StructureTensor psi = transform(phi, basis);
  const std::size_t n = 4;
  auto is_basis = [&](std::size_t i, std::size_t j, std::size_t k) {
    return psi.image(i, j) == basis_vector(n, k);
  };
  auto is_null = [&](std::size_t i, std::size_t j) { return psi.image(i, j) == zero_vector(n); };
  if (!is_basis(0, 0, 1) || !is_basis(0, 1, 2)) return std::nullopt;
  if (!is_null(0, 2) || !is_null(0, 3) || !is_null(1, 1) || !is_null(1, 2)) return std::nullopt;
  if (!is_null(2, 2) || !is_null(2, 3)) return std::nullopt;
  NormalForm31 nf;
  if (!is_multiple_of(psi.image(1, 3), 2, &nf.gamma)) return std::nullopt;
  const Vector sq = psi.image(3, 3);
  if (!sq[0].is_zero() || !sq[3].is_zero()) return std::nullopt;
  nf.alpha = sq[1];
  nf.beta = sq[2];
  nf.basis = basis;
  return nf;
}

// Complement of the row space `sub` by standard basis vectors.
std::vector<Vector> complement(const ScalarMatrix& sub, std::size_t n) {
  std::vector<Vector> out;
  ScalarMatrix acc = sub;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e = basis_vector(n, i);
    if (in_subspace(acc, e)) continue;
    ScalarMatrix grown(acc.rows() + 1, n);
    for (std::size_t r = 0; r < acc.rows(); ++r)
      for (std::size_t c = 0; c < n; ++c) grown(r, c) = acc(r, c);
    grown(acc.rows(), i) = Scalar(1);
    acc = std::move(grown);
    out.push_back(std::move(e));
  }
  return out;
}

// Coordinates of v in an echelon row basis (pivot entries).
std::vector<Scalar> echelon_coordinates(const ScalarMatrix& rows, const Vector& v) {
  std::vector<Scalar> coords;
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    std::size_t pivot = 0;
    while (rows(r, pivot).is_zero()) ++pivot;
    coords.push_back(v[pivot]);
  }
  return coords;
}

struct SquareData {
  std::vector<Vector> comp;
  ScalarMatrix square;  // echelon basis of C^2
};

SquareData nilindex_two_data(const StructureTensor& phi, std::size_t square_dim) {
  const auto chain = central_series(phi);
  if (chain.size() != 3 || chain[1].rows() != square_dim || chain[2].rows() != 0)
    throw Error(ErrorCode::Precondition, "law does not have nilindex 3 with dim C^2 = " + std::to_string(square_dim));
  ScalarMatrix sq = chain[1];
  rref_in_place(sq);
  return {complement(sq, phi.dim()), sq};
}

const std::pair<ClassId, int> kOrbit31[] = {
    {ClassId::J4_2, 13}, {ClassId::J4_3, 12}, {ClassId::J4_4, 11}, {ClassId::J4_5, 12}, {ClassId::J4_6, 11},
};

}  // namespace

std::vector<ScalarMatrix> characteristic_bases_from(const StructureTensor& phi, const Vector& x) {
  if (phi.dim() != 4 || x.size() != 4) return {};
  return bases_from_probe(phi, x);
}

ScalarMatrix characteristic_basis(const StructureTensor& phi) {
  require_char_31(phi);
  for (const auto& x : char_probes(phi)) {
    auto bases = bases_from_probe(phi, x);
    if (!bases.empty()) return bases.front();
  }
  throw Error(ErrorCode::NoCharBasis, "no probe vector yields a characteristic basis");
}

NormalForm31 normal_form_31(const StructureTensor& phi) {
  require_char_31(phi);
  if (center(phi).rows() != 1) throw Error(ErrorCode::NoCharBasis, "normal form needs a one-dimensional center");
  for (const auto& x : char_probes(phi))
    for (const auto& basis : bases_from_probe(phi, x))
      if (auto nf = read_normal_form(phi, basis)) return *nf;
  throw Error(ErrorCode::NoCharBasis, "no characteristic basis reaches the reduced (3,1) form");
}

Scalar pencil_discriminant(const StructureTensor& phi) {
  const SquareData d = nilindex_two_data(phi, 2);
  std::array<std::array<Scalar, 2>, 2> a, b;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const auto c = echelon_coordinates(d.square, product(phi, d.comp[i], d.comp[j]));
      a[i][j] = c[0];
      b[i][j] = c[1];
    }
  const Scalar det_a = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const Scalar det_b = b[0][0] * b[1][1] - b[0][1] * b[1][0];
  const Scalar mixed = a[0][0] * b[1][1] + a[1][1] * b[0][0] - Scalar(2) * a[0][1] * b[0][1];
  return mixed * mixed - Scalar(4) * det_a * det_b;
}

Scalar square_form_determinant(const StructureTensor& phi) {
  const SquareData d = nilindex_two_data(phi, 1);
  if (d.comp.size() != 2) throw Error(ErrorCode::Precondition, "square form needs a 3-dimensional law");
  std::array<std::array<Scalar, 2>, 2> g;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      g[i][j] = echelon_coordinates(d.square, product(phi, d.comp[i], d.comp[j]))[0];
  return g[0][0] * g[1][1] - g[0][1] * g[1][0];
}

Classification classify_detailed(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  if (n > 4) throw Error(ErrorCode::UnsupportedDim, "classification covers dimensions up to 4");
  if (n == 4 && phi.field() == Field::Rational)
    throw Error(ErrorCode::UnsupportedDim, "no real classification in dimension 4");
  if (!is_jordan(phi)) throw Error(ErrorCode::NotJordan, "law violates the Jordan identity");
  if (!nilindex(phi)) throw Error(ErrorCode::NotNilpotent, "law is not nilpotent");

  Classification out{abelian_class(n, phi.field()), profile(phi), std::nullopt, std::nullopt};
  if (phi.is_zero()) return out;
  const InvariantProfile& p = out.profile;
  const bool real = phi.field() == Field::Rational;

  if (n == 2) {
    out.id = ClassId::J2_1;
    return out;
  }
  if (n == 3) {
    if (p.char_seq == CharSeq{3}) {
      out.id = real ? ClassId::R3_1 : ClassId::J3_1;
      return out;
    }
    if (!real) {
      out.id = p.dim_center == 1 ? ClassId::J3_2 : ClassId::J3_3;
      return out;
    }
    const Scalar det = square_form_determinant(phi);
    out.discriminant = det;
    const int sign = sgn(det.re());
    out.id = sign > 0 ? ClassId::R3_2 : sign < 0 ? ClassId::R3_5 : ClassId::R3_3;
    return out;
  }

  // n == 4 over Q(i)
  if (p.char_seq == CharSeq{4}) {
    out.id = ClassId::J4_1;
  } else if (p.char_seq == CharSeq{2, 1, 1}) {
    switch (p.dim_center) {
      case 1: out.id = ClassId::J4_10; break;
      case 2: out.id = ClassId::J4_11; break;
      case 3: out.id = ClassId::J4_12; break;
      default: throw Error(ErrorCode::Internal, "(2,1,1) law with unexpected center dimension");
    }
  } else if (p.char_seq == CharSeq{2, 2}) {
    const Scalar disc = pencil_discriminant(phi);
    out.discriminant = disc;
    out.id = disc.is_zero() ? ClassId::J4_9 : ClassId::J4_8;
  } else if (p.char_seq == kSeq31) {
    if (p.dim_center == 2) {
      out.id = ClassId::J4_7;
    } else {
      NormalForm31 nf = normal_form_31(phi);
      const Scalar shifted = nf.alpha + nf.gamma * nf.gamma;
      if (!nf.alpha.is_zero()) {
        if (!shifted.is_zero()) out.id = ClassId::J4_2;
        else out.id = nf.beta.is_zero() ? ClassId::J4_4 : ClassId::J4_3;
      } else {
        out.id = nf.gamma.is_zero() ? ClassId::J4_6 : ClassId::J4_5;
      }
      out.normal_form = std::move(nf);
      for (const auto& [id, orbit] : kOrbit31)
        if (id == out.id && orbit != p.dim_orbit)
          throw Error(ErrorCode::Internal, "normal form branch " + std::string(label(id)) +
                                               " disagrees with orbit dimension " + std::to_string(p.dim_orbit));
    }
  } else {
    throw Error(ErrorCode::Internal, "unexpected characteristic sequence " + format_char_seq(p.char_seq));
  }
  return out;
}

ClassId classify(const StructureTensor& phi) { return classify_detailed(phi).id; }

bool verify_isomorphism(const StructureTensor& phi, const StructureTensor& psi, const ScalarMatrix& f) {
  if (phi.dim() != psi.dim()) throw Error(ErrorCode::DimensionMismatch, "laws have different dimensions");
  return transform(phi, f) == psi;
}

}  // namespace nilj
