#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "nilj/atlas.hpp"
#include "nilj/matrix.hpp"
#include "nilj/tensor.hpp"

namespace nilj::test {

inline Scalar small_rational(std::mt19937& rng) {
  static const std::vector<Scalar> pool{Scalar(-2), Scalar(-1), Scalar(0), Scalar(0), Scalar(1),
                                        Scalar(1),  Scalar(2),  Scalar(3), Scalar::fraction(1, 2), Scalar::fraction(-2, 3)};
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

inline ScalarMatrix random_matrix(std::mt19937& rng, std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = small_rational(rng);
  return m;
}

inline ScalarMatrix random_invertible(std::mt19937& rng, std::size_t n) {
  for (;;) {
    ScalarMatrix m = random_matrix(rng, n);
    if (!determinant(m).is_zero()) return m;
  }
}

inline Vector random_vector(std::mt19937& rng, std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = small_rational(rng);
  return v;
}

// Nilpotent associative algebra spanned by all words in a few strictly
// upper-triangular k x k matrices, as a structure tensor in the basis found.
inline BilinearTensor random_associative(std::mt19937& rng, std::size_t k, std::size_t generators) {
  std::uniform_int_distribution<int> coin(-1, 1);
  std::vector<ScalarMatrix> basis;
  auto coords = [&](const ScalarMatrix& m) {
    Vector v;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) v.push_back(m(r, c));
    return v;
  };
  auto stacked = [&](const std::vector<ScalarMatrix>& ms) {
    ScalarMatrix s(ms.size(), k * k);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const Vector v = coords(ms[i]);
      for (std::size_t j = 0; j < v.size(); ++j) s(i, j) = v[j];
    }
    return s;
  };
  auto try_add = [&](const ScalarMatrix& m) {
    if (m.is_zero_matrix()) return false;
    auto with = basis;
    with.push_back(m);
    if (rank(stacked(with)) == with.size()) {
      basis.push_back(m);
      return true;
    }
    return false;
  };
  for (std::size_t g = 0; g < generators || basis.empty(); ++g) {
    ScalarMatrix m(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = r + 1; c < k; ++c) m(r, c) = Scalar(coin(rng));
    try_add(m);
  }
  for (bool grew = true; grew;) {
    grew = false;
    const auto current = basis;
    for (const auto& a : current)
      for (const auto& b : current) grew = try_add(a * b) || grew;
  }
  const std::size_t n = basis.size();
  BilinearTensor beta(n);
  // Coordinates of a product in the basis: solve B^T x = coords(p).
  ScalarMatrix bt = stacked(basis).transpose();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vector p = coords(basis[i] * basis[j]);
      ScalarMatrix aug(k * k, n + 1);
      for (std::size_t r = 0; r < k * k; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = bt(r, c);
        aug(r, n) = p[r];
      }
      rref_in_place(aug);
      for (std::size_t r = 0; r < n; ++r) {
        std::size_t pivot = 0;
        while (pivot < n && aug(r, pivot).is_zero()) ++pivot;
        if (pivot < n && !aug(r, n).is_zero()) beta.set_coeff(i, j, pivot, aug(r, n));
      }
    }
  return beta;
}

// Rank as the size of the largest nonzero minor, minors by Leibniz expansion.
inline Scalar leibniz_det(const ScalarMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b)
        if (perm[a] > perm[b]) ++inversions;
    Scalar term(inversions % 2 ? -1 : 1);
    for (std::size_t r = 0; r < rows.size(); ++r) term *= m(rows[r], cols[perm[r]]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline std::size_t minor_rank(const ScalarMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k)
    for (const auto& rows : subsets(m.rows(), k))
      for (const auto& cols : subsets(m.cols(), k))
        if (!leibniz_det(m, rows, cols).is_zero()) return k;
  return 0;
}

inline ScalarMatrix ternary_matrix(std::size_t rows, std::size_t cols, unsigned long code) {
  ScalarMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = Scalar(static_cast<long>(code % 3) - 1);
      code /= 3;
    }
  return m;
}

// Derivations straight from the definition: unknowns d_{rc} of D, one
// equation per (i, j, k) of D(e_i e_j) - D(e_i) e_j - e_i D(e_j) = 0.
inline int derivation_oracle(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  ScalarMatrix sys(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t row = (i * n + j) * n + k;
        for (std::size_t m = 0; m < n; ++m) sys(row, k * n + m) += phi.coeff(i, j, m);  // D(e_i e_j)_k
        for (std::size_t r = 0; r < n; ++r) {
          sys(row, r * n + i) -= phi.coeff(r, j, k);  // D(e_i) = sum_r d_{ri} e_r
          sys(row, r * n + j) -= phi.coeff(i, r, k);
        }
      }
  return static_cast<int>(n * n - rank(sys));
}

inline std::vector<StructureTensor> complex_laws() {
  std::vector<StructureTensor> out;
  for (const AtlasEntry* e : complex_atlas()) out.push_back(e->tensor);
  return out;
}

}  // namespace nilj::test
