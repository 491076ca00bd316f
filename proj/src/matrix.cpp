#include "nilj/matrix.hpp"

namespace nilj {

std::vector<std::size_t> rref_in_place(ScalarMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Scalar factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

ScalarMatrix row_space(const ScalarMatrix& m) {
  ScalarMatrix work = m;
  const auto pivots = rref_in_place(work);
  ScalarMatrix out(pivots.size(), m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = work(r, c);
  return out;
}

ScalarMatrix nullspace(const ScalarMatrix& m) {
  ScalarMatrix work = m;
  const auto pivots = rref_in_place(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  ScalarMatrix out(free_cols.size(), m.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    out(k, f) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) out(k, pivots[r]) = -work(r, f);
  }
  return out;
}

std::optional<ScalarMatrix> try_inverse(const ScalarMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  ScalarMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = Scalar(1);
  }
  const auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  ScalarMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

ScalarMatrix inverse(const ScalarMatrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw Error(ErrorCode::Singular, "matrix is singular");
  return *std::move(inv);
}

ScalarMatrix identity_matrix(std::size_t n) { return ScalarMatrix::identity(n, Scalar(1)); }

ScalarMatrix from_columns(std::span<const std::vector<Scalar>> cols) {
  if (cols.empty()) return {};
  ScalarMatrix m(cols.front().size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "ragged column set");
    m.set_column(c, cols[c]);
  }
  return m;
}

}  // namespace nilj
