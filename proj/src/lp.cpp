#include "pmdet/lp.hpp"

#include <cassert>

namespace pmdet {

namespace {

// Full-tableau simplex core on  max c.y  s.t.  T y = rhs,  y >= 0, where the
// initial basis columns are unit columns.  Bland's rule, so it terminates.
struct Tableau {
  QMat t;                  // m x n
  QVec rhs;                // m
  std::vector<int> basis;  // m, column index of basic variable per row

  void pivot(int row, int col) {
    const Q inv = Q(1) / t[row][col];
    for (auto& v : t[row]) v *= inv;
    rhs[row] *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (static_cast<int>(i) == row || t[i][col] == 0) continue;
      const Q f = t[i][col];
      for (std::size_t j = 0; j < t[i].size(); ++j) t[i][j] -= f * t[row][j];
      rhs[i] -= f * rhs[row];
    }
    basis[row] = col;
  }

  // Runs simplex for objective c (maximization); banned columns never enter.
  // Returns false when the objective is unbounded.
  bool maximize(const QVec& c, const std::vector<bool>& banned) {
    const int n = static_cast<int>(c.size());
    for (;;) {
      // reduced costs: d_j = c_j - c_B . B^{-1} A_j  (tableau is B^{-1} A)
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (banned[j]) continue;
        Q d = c[j];
        for (std::size_t i = 0; i < t.size(); ++i)
          if (c[basis[i]] != 0) d -= c[basis[i]] * t[i][j];
        if (d > 0) { enter = j; break; }  // Bland: first improving column
      }
      if (enter < 0) return true;
      int leave = -1;
      Q best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i][enter] <= 0) continue;
        const Q ratio = rhs[i] / t[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave]))
          { leave = static_cast<int>(i); best = ratio; }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  Q objective_value(const QVec& c) const {
    Q v = 0;
    for (std::size_t i = 0; i < t.size(); ++i) v += c[basis[i]] * rhs[i];
    return v;
  }
};

}  // namespace

LpResult solve_lp(const QMat& eq_a, const QVec& eq_b, const QMat& ge_a,
                  const QVec& ge_b, const QVec& objective, int ncols) {
  assert(static_cast<int>(objective.size()) == ncols);
  const int me = static_cast<int>(eq_a.size());
  const int mg = static_cast<int>(ge_a.size());
  const int m = me + mg;
  // Columns: x+ (ncols), x- (ncols), slacks (mg), artificials (m).
  const int nslack = 2 * ncols + mg;
  const int ntot = nslack + m;

  Tableau tab;
  tab.t.assign(m, QVec(ntot, Q(0)));
  tab.rhs.assign(m, Q(0));
  tab.basis.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    const QVec& row = i < me ? eq_a[i] : ge_a[i - me];
    const Q& b = i < me ? eq_b[i] : ge_b[i - me];
    assert(static_cast<int>(row.size()) == ncols);
    for (int j = 0; j < ncols; ++j) {
      tab.t[i][j] = row[j];
      tab.t[i][ncols + j] = -row[j];
    }
    if (i >= me) tab.t[i][2 * ncols + (i - me)] = -1;  // surplus
    tab.rhs[i] = b;
    if (tab.rhs[i] < 0) {
      for (auto& v : tab.t[i]) v = -v;
      tab.rhs[i] = -tab.rhs[i];
    }
    tab.t[i][nslack + i] = 1;
    tab.basis[i] = nslack + i;
  }

  std::vector<bool> banned(ntot, false);
  // Phase 1: drive artificials to zero.
  QVec c1(ntot, Q(0));
  for (int i = 0; i < m; ++i) c1[nslack + i] = -1;
  tab.maximize(c1, banned);
  LpResult out;
  if (tab.objective_value(c1) != 0) return out;  // infeasible
  // Pivot leftover artificials out of the basis (or the row is redundant).
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < nslack) continue;
    int col = -1;
    for (int j = 0; j < nslack; ++j)
      if (tab.t[i][j] != 0) { col = j; break; }
    if (col >= 0) tab.pivot(i, col);
  }
  for (int j = nslack; j < ntot; ++j) banned[j] = true;

  // Phase 2.
  QVec c2(ntot, Q(0));
  for (int j = 0; j < ncols; ++j) {
    c2[j] = objective[j];
    c2[ncols + j] = -objective[j];
  }
  if (!tab.maximize(c2, banned)) {
    out.status = LpResult::Status::kUnbounded;
    return out;
  }
  out.status = LpResult::Status::kOptimal;
  out.x.assign(ncols, Q(0));
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis[i];
    if (b < ncols) out.x[b] += tab.rhs[i];
    else if (b < 2 * ncols) out.x[b - ncols] -= tab.rhs[i];
  }
  out.value = tab.objective_value(c2);
  return out;
}

std::optional<QVec> strict_witness(const QMat& eq_a, const QVec& eq_b,
                                   const QMat& gt_a, const QVec& gt_b,
                                   int ncols) {
  // Variables (x, t); maximize t subject to gt_a x - t >= gt_b and t <= 1.
  QMat eq;
  for (const auto& row : eq_a) {
    QVec r = row;
    r.push_back(0);
    eq.push_back(std::move(r));
  }
  QMat ge;
  QVec geb = gt_b;
  for (const auto& row : gt_a) {
    QVec r = row;
    r.push_back(-1);
    ge.push_back(std::move(r));
  }
  QVec cap(ncols + 1, Q(0));
  cap[ncols] = -1;
  ge.push_back(std::move(cap));
  geb.push_back(Q(-1));
  QVec obj(ncols + 1, Q(0));
  obj[ncols] = 1;
  const LpResult r = solve_lp(eq, eq_b, ge, geb, obj, ncols + 1);
  if (r.status != LpResult::Status::kOptimal || r.value <= 0)
    return std::nullopt;
  return QVec(r.x.begin(), r.x.begin() + ncols);
}

}  // namespace pmdet
