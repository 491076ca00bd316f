#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilj/matrix.hpp"
#include "nilj/tensor.hpp"

namespace nilj {

/// Descending Jordan block sizes; compared lexicographically.
using CharSeq = std::vector<int>;

std::string format_char_seq(const CharSeq& s);
CharSeq parse_char_seq(const std::string& text);

struct InvariantProfile {
  CharSeq char_seq;
  int nilindex = 0;
  int dim_center = 0;
  int dim_der = 0;
  int dim_orbit = 0;
  bool associative = false;
  std::vector<int> dims_central_series;

  friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;
};

std::string format_profile(const InvariantProfile& p);

/// C^1 = V, C^{m+1} = phi(C^m, V), each as an echelon row basis, until the
/// chain stabilizes (at zero for nilpotent laws).
std::vector<ScalarMatrix> central_series(const StructureTensor& phi);
std::vector<int> central_series_dims(const StructureTensor& phi);

/// Least k with C^k = 0; std::nullopt when the series stalls above zero.
std::optional<int> nilindex(const StructureTensor& phi);

/// Row basis of Z(phi) = {x : phi(x, y) = 0 for all y}.
ScalarMatrix center(const StructureTensor& phi);

/// Jordan block sizes of a nilpotent operator from the ranks of its
/// powers: #blocks of size >= k is rank L^{k-1} - rank L^k.
CharSeq block_sizes(const ScalarMatrix& nilpotent);

/// s_phi(x) for a concrete vector.
CharSeq char_sequence_at(const StructureTensor& phi, const Vector& x);

/// Block sizes of L_x for the generic vector x = (x_1, ..., x_n), with
/// ranks taken over the rational function field Q(i)(x_1..x_n).
CharSeq generic_char_sequence(const StructureTensor& phi);

/// Deterministic probes outside C^2: basis vectors, then up to 20 vectors
/// whose coordinates are drawn from {1, 2, 3, -1} in a fixed stride.
std::vector<Vector> sample_vectors(const StructureTensor& phi);

bool in_subspace(const ScalarMatrix& basis_rows, const Vector& v);

/// s(phi). Returns the generic value after checking that it dominates
/// s_phi(x) for every sample vector; a violation throws Error(Internal).
/// Throws DEGENERATE for n = 0 (unreachable through StructureTensor).
CharSeq char_sequence(const StructureTensor& phi);

/// dim Der(phi), from an explicit null-space basis of the derivation system.
int derivation_dim(const StructureTensor& phi);
/// Row basis of the derivation algebra; row index a*n+b holds f(e_b)_a.
ScalarMatrix derivation_basis(const StructureTensor& phi);

/// dim of span{delta_phi f}, as the rank of the images of the n^2
/// elementary maps.
int coboundary_space_dim(const StructureTensor& phi);

/// Rank of the quadratic form l(phi(x, x)) for a generic functional l,
/// taken over Q(i)(l_1..l_n). It can only drop under contraction.
int generic_form_rank(const StructureTensor& phi);

/// Same, with l restricted to the functionals vanishing on C^k. When C^k
/// keeps its dimension along a contraction this rank cannot rise either.
int annihilator_form_rank(const StructureTensor& phi, std::size_t k);

/// Largest dimension of a subspace U containing C^2 with phi(U, U) = 0, or
/// -1 when C^2 itself is not square-zero. Decided exactly when the
/// annihilator of C^2 exceeds C^2 by at most two dimensions; std::nullopt
/// otherwise. With dim C^2 fixed along a contraction it can only grow.
std::optional<int> null_extension_dim(const StructureTensor& phi);

/// True when some derivation is not nilpotent, i.e. the derivation algebra
/// contains a nonzero semisimple element. Decided exactly from the
/// symmetrized traces tr(D_{i1} ... D_{ik}), k <= n.
bool has_nonnilpotent_derivation(const StructureTensor& phi);

/// All invariants together; throws NOT_NILPOTENT.
InvariantProfile profile(const StructureTensor& phi);

}  // namespace nilj
