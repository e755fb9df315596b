#include "pmdet/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "pmdet/errors.hpp"

namespace pmdet {

Q eval_form(const AffineForm& f, const QVec& x) { return dot(f.a, x) + f.c; }

Cplx Arrangement::weight_sum() const {
  Cplx s = 0;
  for (const auto& h : hyperplanes) s += h.weight;
  return s;
}

namespace {

bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Scale so the first nonzero entry of the linear part becomes 1.
std::pair<QVec, Q> canonical_form(const AffineForm& f) {
  Q lead = 0;
  for (const auto& x : f.a)
    if (x != 0) { lead = x; break; }
  assert(lead != 0);
  QVec a = f.a;
  for (auto& x : a) x /= lead;
  return {std::move(a), f.c / lead};
}

}  // namespace

void validate(const Arrangement& arr) {
  if (arr.dim < 1) throw SchemaError("dimension must be positive");
  if (arr.hyperplanes.empty()) throw SchemaError("no hyperplanes");
  for (int i = 0; i < arr.size(); ++i) {
    const auto& f = arr.form(i);
    if (static_cast<int>(f.a.size()) != arr.dim)
      throw SchemaError("coefficient count mismatch");
    if (is_zero(f.a)) throw ZeroForm("hyperplane " + std::to_string(i));
  }
  for (int i = 0; i < arr.size(); ++i)
    for (int j = i + 1; j < arr.size(); ++j) {
      const auto ci = canonical_form(arr.form(i));
      const auto cj = canonical_form(arr.form(j));
      if (ci == cj)
        throw DuplicateHyperplane(std::to_string(i) + " and " +
                                  std::to_string(j));
    }
  if (arr.f0) {
    if (static_cast<int>(arr.f0->a.size()) != arr.dim)
      throw SchemaError("f0 coefficient count mismatch");
    if (is_zero(arr.f0->a)) throw ConstantF0("linear part vanishes");
  }
  QMat lin;
  for (const auto& h : arr.hyperplanes) lin.push_back(h.f.a);
  if (rank(lin) < arr.dim)
    throw NotEssential("directions do not span the space");
  bool has_vertex = false;
  for (const auto& e : affine_lattice(arr))
    if (e.dim() == 0) { has_vertex = true; break; }
  if (!has_vertex) throw NotEssential("no vertex");
}

std::vector<Edge> affine_lattice(const Arrangement& arr) {
  const int p = arr.size();
  const int n = arr.dim;
  std::map<std::vector<int>, Edge> seen;
  for (unsigned mask = 1; mask < (1u << p); ++mask) {
    QMat a;
    QVec b;
    for (int i = 0; i < p; ++i)
      if (mask & (1u << i)) {
        a.push_back(arr.form(i).a);
        b.push_back(-arr.form(i).c);
      }
    AffineSpace sp = affine_solve(std::move(a), std::move(b), n);
    if (!sp.nonempty) continue;
    std::vector<int> support;
    for (int j = 0; j < p; ++j) {
      if (eval_form(arr.form(j), sp.point) != 0) continue;
      bool contains = true;
      for (const auto& v : sp.basis)
        if (dot(arr.form(j).a, v) != 0) { contains = false; break; }
      if (contains) support.push_back(j);
    }
    if (seen.count(support)) continue;
    QMat sa;
    QVec sb;
    for (int j : support) {
      sa.push_back(arr.form(j).a);
      sb.push_back(-arr.form(j).c);
    }
    Edge e;
    e.support = support;
    e.space = affine_solve(std::move(sa), std::move(sb), n);
    seen.emplace(std::move(support), std::move(e));
  }
  std::vector<Edge> out;
  for (auto& [k, e] : seen) out.push_back(std::move(e));
  std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) {
    if (x.dim() != y.dim()) return x.dim() > y.dim();
    return x.support < y.support;
  });
  return out;
}

std::vector<Edge> vertices_of(const std::vector<Edge>& lattice) {
  std::vector<Edge> v;
  for (const auto& e : lattice)
    if (e.dim() == 0) v.push_back(e);
  return v;
}

SectionResult induced_on(const Arrangement& arr, const AffineSpace& sp) {
  SectionResult out;
  std::map<std::pair<QVec, Q>, int> index;
  for (int i = 0; i < arr.size(); ++i) {
    AffineForm g;
    g.c = eval_form(arr.form(i), sp.point);
    for (const auto& v : sp.basis) g.a.push_back(dot(arr.form(i).a, v));
    if (is_zero(g.a)) {
      if (g.c == 0) out.containing.push_back(i);
      continue;  // parallel: no trace
    }
    auto key = canonical_form(g);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, static_cast<int>(out.traces.size()));
      out.traces.push_back({{key.first, key.second}, {i}});
    } else {
      out.traces[it->second].sources.push_back(i);
    }
  }
  return out;
}

std::vector<InducedForm> merge_coincident(const std::vector<AffineForm>& forms) {
  std::vector<InducedForm> out;
  std::map<std::pair<QVec, Q>, int> index;
  for (int i = 0; i < static_cast<int>(forms.size()); ++i) {
    if (is_zero(forms[i].a)) continue;
    auto key = canonical_form(forms[i]);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, static_cast<int>(out.size()));
      out.push_back({{key.first, key.second}, {i}});
    } else {
      out[it->second].sources.push_back(i);
    }
  }
  return out;
}

QVec homogenize(const AffineForm& f) {
  QVec v;
  v.reserve(f.a.size() + 1);
  v.push_back(f.c);
  v.insert(v.end(), f.a.begin(), f.a.end());
  return v;
}

ProjArrangement projectivize(const Arrangement& arr) {
  ProjArrangement out;
  const Cplx alpha_inf = -arr.weight_sum();

  for (const auto& e : affine_lattice(arr)) {
    ProjEdge pe;
    pe.at_infinity = false;
    pe.support = e.support;
    pe.affine_part = e.space;
    pe.proj_dim = e.dim();
    pe.weight = 0;
    for (int i : e.support) pe.weight += arr.weight(i);
    out.lplus.push_back(std::move(pe));
  }

  const int p = arr.size();
  std::map<std::vector<int>, QMat> seen;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    QMat rows;
    for (int i = 0; i < p; ++i)
      if (mask & (1u << i)) rows.push_back(arr.form(i).a);
    QMat d = nullspace(rows, arr.dim);
    if (d.empty()) continue;
    std::vector<int> support;
    for (int j = 0; j < p; ++j) {
      bool contains = true;
      for (const auto& v : d)
        if (dot(arr.form(j).a, v) != 0) { contains = false; break; }
      if (contains) support.push_back(j);
    }
    if (seen.count(support)) continue;
    QMat rows2;
    for (int j : support) rows2.push_back(arr.form(j).a);
    seen.emplace(std::move(support), nullspace(rows2, arr.dim));
  }
  for (auto& [support, d] : seen) {
    ProjEdge pe;
    pe.at_infinity = true;
    pe.support = support;
    pe.proj_dim = static_cast<int>(d.size()) - 1;
    pe.dir_basis = std::move(d);
    pe.weight = alpha_inf;
    for (int i : support) pe.weight += arr.weight(i);
    out.lminus.push_back(std::move(pe));
  }
  auto by_dim = [](const ProjEdge& x, const ProjEdge& y) {
    if (x.proj_dim != y.proj_dim) return x.proj_dim > y.proj_dim;
    return x.support < y.support;
  };
  std::sort(out.lplus.begin(), out.lplus.end(), by_dim);
  std::sort(out.lminus.begin(), out.lminus.end(), by_dim);
  return out;
}

QMat edge_homog_basis(const Arrangement& arr, const ProjEdge& e) {
  QMat basis;
  if (e.at_infinity) {
    for (const auto& d : e.dir_basis) {
      QVec row{Q(0)};
      row.insert(row.end(), d.begin(), d.end());
      basis.push_back(std::move(row));
    }
  } else {
    QVec row{Q(1)};
    row.insert(row.end(), e.affine_part.point.begin(),
               e.affine_part.point.end());
    basis.push_back(std::move(row));
    for (const auto& v : e.affine_part.basis) {
      QVec r{Q(0)};
      r.insert(r.end(), v.begin(), v.end());
      basis.push_back(std::move(r));
    }
  }
  (void)arr;
  return basis;
}

QVec restrict_covector(const QVec& covector, const QMat& basis) {
  QVec out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(dot(covector, b));
  return out;
}

QMat complement_basis(const QMat& basis, int ambient) {
  QMat cur = basis;
  int r = rank(cur);
  QMat added;
  for (int i = 0; i < ambient && r < ambient; ++i) {
    QVec e(ambient, Q(0));
    e[i] = 1;
    cur.push_back(e);
    const int r2 = rank(cur);
    if (r2 > r) {
      added.push_back(std::move(e));
      r = r2;
    } else {
      cur.pop_back();
    }
  }
  return added;
}

QMat section_forms(const Arrangement& arr, const ProjEdge& e) {
  const QMat basis = edge_homog_basis(arr, e);
  QMat out;
  std::size_t next = 0;
  for (int j = 0; j < arr.size(); ++j) {
    if (next < e.support.size() && e.support[next] == j) { ++next; continue; }
    QVec r = restrict_covector(homogenize(arr.form(j)), basis);
    assert(!is_zero(r));
    out.push_back(std::move(r));
  }
  if (!e.at_infinity) {
    QVec inf(arr.dim + 1, Q(0));
    inf[0] = 1;
    QVec r = restrict_covector(inf, basis);
    assert(!is_zero(r));
    out.push_back(std::move(r));
  }
  return out;
}

QMat localization_forms(const Arrangement& arr, const ProjEdge& e) {
  const QMat comp = complement_basis(edge_homog_basis(arr, e), arr.dim + 1);
  QMat out;
  for (int j : e.support) {
    QVec r = restrict_covector(homogenize(arr.form(j)), comp);
    assert(!is_zero(r));
    out.push_back(std::move(r));
  }
  if (e.at_infinity) {
    QVec inf(arr.dim + 1, Q(0));
    inf[0] = 1;
    QVec r = restrict_covector(inf, comp);
    assert(!is_zero(r));
    out.push_back(std::move(r));
  }
  return out;
}

bool edge_in_h0(const Arrangement& arr, const ProjEdge& e) {
  if (!arr.f0) throw ConstantF0("no f0 given");
  const QVec r =
      restrict_covector(homogenize(*arr.f0), edge_homog_basis(arr, e));
  return is_zero(r);
}

TraceChart trace_at_infinity(const Arrangement& arr) {
  if (!arr.f0) throw ConstantF0("no f0 given");
  const QVec& a0 = arr.f0->a;
  if (is_zero(a0)) throw ConstantF0("linear part vanishes");
  TraceChart tc;
  AffineSpace sp = affine_solve({a0}, {Q(1)}, arr.dim);
  tc.q = std::move(sp.point);
  tc.basis = nullspace({a0}, arr.dim);
  for (int i = 0; i < arr.size(); ++i) {
    AffineForm h;
    h.c = dot(arr.form(i).a, tc.q);
    for (const auto& v : tc.basis) h.a.push_back(dot(arr.form(i).a, v));
    tc.h.push_back(std::move(h));
  }
  return tc;
}

}  // namespace pmdet
