#include "pmdet/linalg.hpp"

#include <cassert>

namespace pmdet {

Q dot(const QVec& a, const QVec& b) {
  assert(a.size() == b.size());
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<int> rref(QMat& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(a[r], a[p]);
    const Q inv = Q(1) / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Q f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(QMat a) { return static_cast<int>(rref(a).size()); }

Q det(QMat a) {
  const int n = static_cast<int>(a.size());
  Q result = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (a[i][c] != 0) { p = i; break; }
    if (p < 0) return 0;
    if (p != c) {
      std::swap(a[c], a[p]);
      result = -result;
    }
    result *= a[c][c];
    const Q inv = Q(1) / a[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Q f = a[i][c] * inv;
      for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return result;
}

QMat nullspace(const QMat& a, int ncols) {
  QMat m = a;
  const std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivots) is_pivot[c] = true;
  QMat basis;
  for (int fc = 0; fc < ncols; ++fc) {
    if (is_pivot[fc]) continue;
    QVec v(ncols, Q(0));
    v[fc] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

AffineSpace affine_solve(QMat a, QVec b, int ncols) {
  assert(a.size() == b.size());
  QMat aug = std::move(a);
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const std::vector<int> pivots = rref(aug);
  AffineSpace out;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == ncols) return out;  // row 0 = nonzero: inconsistent
  out.nonempty = true;
  out.point.assign(ncols, Q(0));
  for (std::size_t r = 0; r < pivots.size(); ++r)
    out.point[pivots[r]] = aug[r][ncols];
  QMat lin;
  for (const auto& row : aug) lin.emplace_back(row.begin(), row.end() - 1);
  out.basis = nullspace(lin, ncols);
  return out;
}

}  // namespace pmdet
