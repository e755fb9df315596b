#include "pmdet/chambers.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "pmdet/errors.hpp"
#include "pmdet/lp.hpp"

namespace pmdet {

namespace {

bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Deterministic point off every hyperplane: pseudo-random rationals from an
// LCG until no form vanishes.
QVec generic_point(const std::vector<AffineForm>& forms, int dim) {
  unsigned long long state = 0x243f6a8885a308d3ull;
  auto next = [&state]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<long>((state >> 33) % 4001) - 2000;
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    QVec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = Q(next(), 997);
    bool ok = true;
    for (const auto& f : forms)
      if (eval_form(f, x) == 0) { ok = false; break; }
    if (ok) return x;
  }
  throw Error("no generic point found");
}

// Canonical representative of a ray direction: scale by |first nonzero|.
QVec canonical_ray(QVec v) {
  Q lead = 0;
  for (const auto& x : v)
    if (x != 0) { lead = qabs(x); break; }
  assert(lead != 0);
  for (auto& x : v) x /= lead;
  return v;
}

// All size-k index subsets of {0..m-1}.
void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) { fn(idx); return; }
    for (int i = start; i <= m - (k - depth); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (k == 0) { fn({}); return; }
  rec(0, 0);
}

// Scale a central covector so its first nonzero entry is 1.
QVec canonical_cov(QVec v) {
  Q lead = 0;
  for (const auto& x : v)
    if (x != 0) { lead = x; break; }
  if (lead == 0) return v;
  for (auto& x : v) x /= lead;
  return v;
}

struct PosetElem {
  std::vector<int> support;
  int dim = 0;
};

// Mobius function over an intersection poset ordered by reverse support
// inclusion; elems[0] must be the ambient space (empty support).
std::vector<Q> mobius(const std::vector<PosetElem>& elems) {
  const int m = static_cast<int>(elems.size());
  std::vector<Q> mu(m, Q(0));
  mu[0] = 1;
  // Order by dimension descending so all strict predecessors come first.
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return elems[a].dim > elems[b].dim;
  });
  // X strictly inside Y  <=>  support(X) strictly includes support(Y),
  // which forces dim(X) < dim(Y), so dim order visits ancestors first.
  auto strictly_above = [&](int y, int x) {
    return elems[y].dim > elems[x].dim &&
           std::includes(elems[x].support.begin(), elems[x].support.end(),
                         elems[y].support.begin(), elems[y].support.end());
  };
  for (int oi = 0; oi < m; ++oi) {
    const int x = order[oi];
    if (x == 0) continue;
    Q s = 0;
    for (int oj = 0; oj < oi; ++oj)
      if (strictly_above(order[oj], x)) s += mu[order[oj]];
    mu[x] = -s;
  }
  return mu;
}

}  // namespace

std::vector<RawChamber> enumerate_sign_chambers(
    const std::vector<AffineForm>& forms, int dim) {
  const int p = static_cast<int>(forms.size());
  const QVec start = generic_point(forms, dim);
  RawChamber first;
  first.witness = start;
  for (const auto& f : forms)
    first.signs.push_back(eval_form(f, start) > 0 ? 1 : -1);

  std::map<std::vector<int>, QVec> found;
  found.emplace(first.signs, first.witness);
  std::queue<std::vector<int>> work;
  work.push(first.signs);
  while (!work.empty()) {
    std::vector<int> signs = work.front();
    work.pop();
    for (int j = 0; j < p; ++j) {
      std::vector<int> nb = signs;
      nb[j] = -nb[j];
      if (found.count(nb)) continue;
      QMat gt;
      QVec rhs;
      for (int i = 0; i < p; ++i) {
        QVec row = forms[i].a;
        for (auto& x : row) x *= nb[i];
        gt.push_back(std::move(row));
        rhs.push_back(-Q(nb[i]) * forms[i].c);
      }
      auto w = strict_witness({}, {}, gt, rhs, dim);
      if (!w) continue;
      found.emplace(nb, std::move(*w));
      work.push(std::move(nb));
    }
  }
  std::vector<RawChamber> out;
  for (auto& [s, w] : found) out.push_back({s, w});
  return out;
}

QMat chamber_vertices(const std::vector<AffineForm>& forms,
                      const std::vector<int>& signs, int dim) {
  const int p = static_cast<int>(forms.size());
  std::set<QVec> pts;
  for_each_subset(p, dim, [&](const std::vector<int>& idx) {
    QMat a;
    QVec b;
    for (int i : idx) {
      a.push_back(forms[i].a);
      b.push_back(-forms[i].c);
    }
    if (det(a) == 0) return;
    AffineSpace sp = affine_solve(std::move(a), std::move(b), dim);
    assert(sp.nonempty && sp.basis.empty());
    for (int i = 0; i < p; ++i)
      if (sign(eval_form(forms[i], sp.point)) * signs[i] < 0) return;
    pts.insert(std::move(sp.point));
  });
  return QMat(pts.begin(), pts.end());
}

QMat chamber_rays(const std::vector<AffineForm>& forms,
                  const std::vector<int>& signs, int dim) {
  const int p = static_cast<int>(forms.size());
  std::set<QVec> rays;
  for_each_subset(p, dim - 1, [&](const std::vector<int>& idx) {
    QMat a;
    for (int i : idx) a.push_back(forms[i].a);
    QMat ker = nullspace(a, dim);
    if (ker.size() != 1) return;
    QVec v = std::move(ker[0]);
    bool all_ge = true, all_le = true;
    for (int i = 0; i < p; ++i) {
      const int s = sign(dot(forms[i].a, v)) * signs[i];
      if (s < 0) all_ge = false;
      if (s > 0) all_le = false;
    }
    if (!all_ge && !all_le) return;
    if (!all_ge)
      for (auto& x : v) x = -x;
    rays.insert(canonical_ray(std::move(v)));
  });
  return QMat(rays.begin(), rays.end());
}

QVec relint_point(const QMat& verts, const QMat& rays) {
  assert(!verts.empty());
  const int n = static_cast<int>(verts[0].size());
  QVec x(n, Q(0));
  for (const auto& v : verts)
    for (int i = 0; i < n; ++i) x[i] += v[i];
  const Q m(static_cast<long>(verts.size()));
  for (auto& c : x) c /= m;
  for (const auto& r : rays)
    for (int i = 0; i < n; ++i) x[i] += r[i];
  return x;
}

std::vector<Chamber> enumerate_chambers(const Arrangement& arr) {
  std::vector<AffineForm> forms;
  for (const auto& h : arr.hyperplanes) forms.push_back(h.f);
  std::vector<Chamber> out;
  for (auto& rc : enumerate_sign_chambers(forms, arr.dim)) {
    Chamber ch;
    ch.signs = std::move(rc.signs);
    ch.witness = std::move(rc.witness);
    ch.vertices = chamber_vertices(forms, ch.signs, arr.dim);
    ch.rays = chamber_rays(forms, ch.signs, arr.dim);
    if (ch.rays.empty()) {
      ch.kind = Chamber::Kind::kBounded;
    } else if (arr.f0) {
      bool growing = true;
      for (const auto& r : ch.rays)
        if (dot(arr.f0->a, r) <= 0) { growing = false; break; }
      ch.kind = growing ? Chamber::Kind::kGrowing
                        : Chamber::Kind::kOtherUnbounded;
    } else {
      ch.kind = Chamber::Kind::kOtherUnbounded;
    }
    out.push_back(std::move(ch));
  }
  std::sort(out.begin(), out.end(), [](const Chamber& a, const Chamber& b) {
    return a.signs < b.signs;
  });
  return out;
}

int count_bounded(const std::vector<AffineForm>& forms, int dim) {
  if (dim == 0) return 1;
  const std::vector<InducedForm> merged = merge_coincident(forms);
  if (merged.empty()) return 0;
  QMat lin;
  std::vector<AffineForm> distinct;
  for (const auto& m : merged) {
    lin.push_back(m.g.a);
    distinct.push_back(m.g);
  }
  if (!nullspace(lin, dim).empty()) return 0;  // lineality: nothing bounded
  int count = 0;
  for (const auto& rc : enumerate_sign_chambers(distinct, dim))
    if (chamber_rays(distinct, rc.signs, dim).empty()) ++count;
  return count;
}

int chart_bounded_count(const QMat& central, const QVec& chart_form, int k) {
  assert(!is_zero(chart_form));
  const QVec chart_canon = canonical_cov(chart_form);
  std::set<QVec> seen;
  QMat rows;
  for (const auto& r : central) {
    if (is_zero(r)) continue;
    QVec c = canonical_cov(r);
    if (c == chart_canon) continue;  // parallel to the chart hyperplane
    if (seen.insert(c).second) rows.push_back(std::move(c));
  }
  AffineSpace sp = affine_solve({chart_form}, {Q(1)}, k);
  assert(sp.nonempty);
  const QMat dirs = nullspace({chart_form}, k);
  std::vector<AffineForm> induced;
  for (const auto& r : rows) {
    AffineForm g;
    g.c = dot(r, sp.point);
    for (const auto& d : dirs) g.a.push_back(dot(r, d));
    assert(!is_zero(g.a));
    induced.push_back(std::move(g));
  }
  return count_bounded(induced, k - 1);
}

int projective_length(const QMat& central, int k) {
  if (k <= 1) return 1;
  std::set<QVec> seen;
  QMat rows;
  for (const auto& r : central) {
    if (is_zero(r)) continue;
    QVec c = canonical_cov(r);
    if (seen.insert(c).second) rows.push_back(std::move(c));
  }
  if (rows.empty()) return 1;
  return chart_bounded_count(rows, rows[0], k);
}

namespace {

// Intersection poset of central covectors in dimension k, ambient first.
std::vector<PosetElem> central_poset(const QMat& rows, int k) {
  const int p = static_cast<int>(rows.size());
  std::map<std::vector<int>, int> seen;
  std::vector<PosetElem> elems;
  elems.push_back({{}, k});
  seen.emplace(std::vector<int>{}, 0);
  for (unsigned mask = 1; mask < (1u << p); ++mask) {
    QMat sub;
    for (int i = 0; i < p; ++i)
      if (mask & (1u << i)) sub.push_back(rows[i]);
    const QMat ker = nullspace(sub, k);
    std::vector<int> support;
    for (int j = 0; j < p; ++j) {
      bool contains = true;
      for (const auto& v : ker)
        if (dot(rows[j], v) != 0) { contains = false; break; }
      if (contains) support.push_back(j);
    }
    if (seen.count(support)) continue;
    seen.emplace(support, static_cast<int>(elems.size()));
    elems.push_back({support, static_cast<int>(ker.size())});
  }
  return elems;
}

}  // namespace

Q projective_chi(const QMat& central, int k) {
  std::set<QVec> dedup;
  QMat rows;
  for (const auto& r : central) {
    if (is_zero(r)) continue;
    QVec c = canonical_cov(r);
    if (dedup.insert(c).second) rows.push_back(std::move(c));
  }
  const std::vector<PosetElem> poset = central_poset(rows, k);
  const std::vector<Q> mu = mobius(poset);
  // characteristic polynomial coefficients by dimension
  std::vector<Q> coef(k + 1, Q(0));
  for (std::size_t i = 0; i < poset.size(); ++i) coef[poset[i].dim] += mu[i];
  // divide by (q - 1): synthetic division, remainder must vanish
  std::vector<Q> quot(k, Q(0));
  Q carry = 0;
  for (int d = k; d >= 1; --d) {
    carry += coef[d];
    quot[d - 1] = carry;
  }
  assert(carry + coef[0] == 0);
  Q chi = 0;
  for (const auto& c : quot) chi += c;
  return chi;
}

Q affine_bounded_mobius(const std::vector<AffineForm>& forms, int dim) {
  const std::vector<InducedForm> merged = merge_coincident(forms);
  Arrangement tmp;
  tmp.dim = dim;
  for (const auto& m : merged) tmp.hyperplanes.push_back({m.g, Cplx(0)});
  std::vector<PosetElem> poset;
  poset.push_back({{}, dim});
  for (const auto& e : affine_lattice(tmp))
    poset.push_back({e.support, e.dim()});
  const std::vector<Q> mu = mobius(poset);
  Q chi1 = 0;
  for (const auto& m : mu) chi1 += m;
  return (dim % 2 == 0) ? chi1 : -chi1;
}

EdgeVol edge_volume(const Arrangement& arr, const ProjEdge& e) {
  EdgeVol v;
  v.l = projective_length(section_forms(arr, e), e.proj_dim + 1);
  v.s = projective_length(localization_forms(arr, e),
                          arr.dim - e.proj_dim);
  v.vol = v.l * v.s;
  return v;
}

int edge_l_rel(const Arrangement& arr, const ProjEdge& e) {
  if (!arr.f0) throw ConstantF0("no f0 given");
  if (edge_in_h0(arr, e))
    throw EdgeNotInLattice("edge lies in the closure of {f0 = 0}");
  const QVec chart =
      restrict_covector(homogenize(*arr.f0), edge_homog_basis(arr, e));
  return chart_bounded_count(section_forms(arr, e), chart, e.proj_dim + 1);
}

GrowingCount verify_growing_count(const Arrangement& arr) {
  GrowingCount gc;
  for (const auto& ch : enumerate_chambers(arr))
    if (ch.kind == Chamber::Kind::kGrowing) ++gc.actual;
  const ProjArrangement pa = projectivize(arr);
  for (const auto& e : pa.lminus) {
    if (edge_in_h0(arr, e)) continue;
    const int s = projective_length(localization_forms(arr, e),
                                    arr.dim - e.proj_dim);
    gc.predicted += static_cast<long>(edge_l_rel(arr, e)) * s;
  }
  return gc;
}

Q truncation_threshold(const Arrangement& arr) {
  if (!arr.f0) throw ConstantF0("no f0 given");
  bool any = false;
  Q best = 0;
  for (const auto& e : affine_lattice(arr)) {
    bool constant = true;
    for (const auto& v : e.space.basis)
      if (dot(arr.f0->a, v) != 0) { constant = false; break; }
    if (!constant) continue;
    const Q val = eval_form(*arr.f0, e.space.point);
    if (!any || val > best) { best = val; any = true; }
  }
  if (!any) throw TThreshold("no vertex or level edge to bound");
  return best;
}

Q default_truncation_level(const Arrangement& arr) {
  const Q t = qfloor(truncation_threshold(arr)) + 2;
  return t < 1 ? Q(1) : t;
}

Arrangement truncate(const Arrangement& arr, const Q& t) {
  if (!arr.f0) throw ConstantF0("no f0 given");
  if (t <= truncation_threshold(arr))
    throw TThreshold("level " + to_string(t) + " is not above " +
                     to_string(truncation_threshold(arr)));
  Arrangement out;
  out.dim = arr.dim;
  AffineForm ft;
  ft.c = 1 - arr.f0->c / t;
  for (const auto& x : arr.f0->a) ft.a.push_back(-x / t);
  out.hyperplanes.push_back({std::move(ft), Cplx(to_double(t), 0.0)});
  for (const auto& h : arr.hyperplanes) out.hyperplanes.push_back(h);
  out.f0 = arr.f0;
  return out;
}

TraceFace trace_of_chamber(const Arrangement& arr, const TraceChart& tc,
                           const Chamber& ch) {
  if (ch.kind != Chamber::Kind::kGrowing)
    throw NotGrowing("trace of a non-growing chamber");
  if (!arr.f0) throw ConstantF0("no f0 given");
  const QVec& a0 = arr.f0->a;
  TraceFace out;
  // chart coordinates of each ray endpoint
  const int n = arr.dim;
  QMat cols(n, QVec(tc.basis.size()));
  for (std::size_t k = 0; k < tc.basis.size(); ++k)
    for (int i = 0; i < n; ++i) cols[i][k] = tc.basis[k][i];
  for (const auto& r : ch.rays) {
    const Q d = dot(a0, r);
    assert(d > 0);
    QVec w(n);
    for (int i = 0; i < n; ++i) w[i] = r[i] / d - tc.q[i];
    AffineSpace sol = affine_solve(cols, w, static_cast<int>(tc.basis.size()));
    assert(sol.nonempty);
    out.points.push_back(std::move(sol.point));
  }
  out.relint = relint_point(out.points, {});
  for (int i = 0; i < arr.size(); ++i) {
    bool vanishes = true;
    for (const auto& r : ch.rays)
      if (dot(arr.form(i).a, r) != 0) { vanishes = false; break; }
    if (vanishes) out.zero.push_back(i);
    out.signs.push_back(sign(eval_form(tc.h[i], out.relint)));
  }
  QMat diffs;
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    QVec d = out.points[i];
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= out.points[0][k];
    diffs.push_back(std::move(d));
  }
  out.dim = rank(diffs);
  return out;
}

EdgeFace face_in_edge(const Arrangement& arr, const std::vector<int>& signs,
                      const AffineSpace& space) {
  EdgeFace out;
  const int d = static_cast<int>(space.basis.size());
  std::vector<AffineForm> forms;
  std::vector<int> fsigns;
  for (int i = 0; i < arr.size(); ++i) {
    AffineForm g;
    g.c = eval_form(arr.form(i), space.point);
    for (const auto& v : space.basis) g.a.push_back(dot(arr.form(i).a, v));
    if (is_zero(g.a)) {
      if (sign(g.c) * signs[i] < 0) return out;  // wrong side, empty
      continue;
    }
    forms.push_back(std::move(g));
    fsigns.push_back(signs[i]);
  }
  if (d == 0) {
    out.dim = 0;
    out.relint = space.point;
    return out;
  }
  const QMat verts = chamber_vertices(forms, fsigns, d);
  if (verts.empty()) return out;  // pointed and no vertex: empty
  const QMat rays = chamber_rays(forms, fsigns, d);
  QMat diffs;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    QVec v = verts[i];
    for (int k = 0; k < d; ++k) v[k] -= verts[0][k];
    diffs.push_back(std::move(v));
  }
  for (const auto& r : rays) diffs.push_back(r);
  out.dim = rank(diffs);
  const QVec params = relint_point(verts, rays);
  out.relint = space.point;
  for (int k = 0; k < d; ++k)
    for (std::size_t i = 0; i < out.relint.size(); ++i)
      out.relint[i] += params[k] * space.basis[k][i];
  return out;
}

int face_dim_in_edge(const Arrangement& arr, const std::vector<int>& signs,
                     const AffineSpace& space) {
  return face_in_edge(arr, signs, space).dim;
}

}  // namespace pmdet
