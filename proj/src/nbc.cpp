#include "pmdet/nbc.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

#include "pmdet/errors.hpp"

namespace pmdet {

namespace {

enum class SetKind { kEmpty, kIndependent, kDependent };

SetKind subset_kind(const Arrangement& arr, const std::vector<int>& idx) {
  QMat a;
  QVec b;
  for (int i : idx) {
    a.push_back(arr.form(i).a);
    b.push_back(-arr.form(i).c);
  }
  const AffineSpace sp = affine_solve(std::move(a), std::move(b), arr.dim);
  if (!sp.nonempty) return SetKind::kEmpty;
  const int codim = arr.dim - static_cast<int>(sp.basis.size());
  return codim < static_cast<int>(idx.size()) ? SetKind::kDependent
                                              : SetKind::kIndependent;
}

void for_each_subset(int m, int k,
                     const std::function<void(const std::vector<int>&)>& fn) {
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

unsigned mask_of(const std::vector<int>& idx) {
  unsigned m = 0;
  for (int i : idx) m |= 1u << i;
  return m;
}

}  // namespace

std::vector<std::vector<int>> circuits(const Arrangement& arr) {
  const int p = arr.size();
  std::vector<std::vector<int>> out;
  for (int k = 2; k <= arr.dim + 1; ++k) {
    for_each_subset(p, k, [&](const std::vector<int>& idx) {
      if (subset_kind(arr, idx) != SetKind::kDependent) return;
      for (int drop = 0; drop < k; ++drop) {
        std::vector<int> sub;
        for (int j = 0; j < k; ++j)
          if (j != drop) sub.push_back(idx[j]);
        if (subset_kind(arr, sub) != SetKind::kIndependent) return;
      }
      out.push_back(idx);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> broken_circuits(const Arrangement& arr) {
  std::set<std::vector<int>> seen;
  for (const auto& c : circuits(arr))
    seen.emplace(c.begin() + 1, c.end());
  return {seen.begin(), seen.end()};
}

bool is_base(const Arrangement& arr, const std::vector<int>& idx) {
  if (static_cast<int>(idx.size()) != arr.dim) return false;
  QMat a;
  for (int i : idx) a.push_back(arr.form(i).a);
  return det(std::move(a)) != 0;
}

std::vector<std::vector<int>> nbc_bases(const Arrangement& arr) {
  const int p = arr.size();
  std::vector<unsigned> bc;
  for (const auto& b : broken_circuits(arr)) bc.push_back(mask_of(b));
  std::vector<std::vector<int>> out;
  for_each_subset(p, arr.dim, [&](const std::vector<int>& idx) {
    if (!is_base(arr, idx)) return;
    const unsigned m = mask_of(idx);
    for (unsigned b : bc)
      if ((b & ~m) == 0) return;
    out.push_back(idx);
  });
  return out;  // subset enumeration is already lex
}

std::vector<std::vector<int>> beta_nbc_bases(const Arrangement& arr) {
  std::vector<std::vector<int>> out;
  for (const auto& b : nbc_bases(arr)) {
    bool ok = true;
    for (int h : b) {
      bool traded = false;
      for (int h2 = 0; h2 < h && !traded; ++h2) {
        if (std::find(b.begin(), b.end(), h2) != b.end()) continue;
        std::vector<int> swapped;
        for (int x : b)
          if (x != h) swapped.push_back(x);
        swapped.push_back(h2);
        std::sort(swapped.begin(), swapped.end());
        traded = is_base(arr, swapped);
      }
      if (!traded) { ok = false; break; }
    }
    if (ok) out.push_back(b);
  }
  return out;
}

std::vector<std::vector<int>> beta_nbc_bases_f0(const Arrangement& arr) {
  const Arrangement at = truncate(arr, default_truncation_level(arr));
  std::vector<std::vector<int>> out;
  for (const auto& b : beta_nbc_bases(at)) {
    std::vector<int> mapped;
    for (int i : b) {
      if (i == 0)
        throw Error("truncating wall entered a minimal base");
      mapped.push_back(i - 1);
    }
    out.push_back(std::move(mapped));
  }
  return out;  // index shift keeps the lex order
}

std::vector<FlagEdge> flag_of_base(const Arrangement& arr,
                                   const std::vector<int>& base) {
  const int n = arr.dim;
  assert(static_cast<int>(base.size()) == n);
  std::vector<FlagEdge> flag(n + 1);
  for (int j = 0; j <= n; ++j) {
    QMat a;
    QVec b;
    for (int k = j; k < n; ++k) {
      a.push_back(arr.form(base[k]).a);
      b.push_back(-arr.form(base[k]).c);
    }
    FlagEdge& fe = flag[j];
    fe.space = affine_solve(std::move(a), std::move(b), n);
    if (!fe.space.nonempty || static_cast<int>(fe.space.basis.size()) != j)
      throw Error("flag level " + std::to_string(j) + " is not an edge");
    for (int i = 0; i < arr.size(); ++i) {
      if (eval_form(arr.form(i), fe.space.point) != 0) continue;
      bool inside = true;
      for (const auto& v : fe.space.basis)
        if (dot(arr.form(i).a, v) != 0) { inside = false; break; }
      if (inside) fe.support.push_back(i);
    }
  }
  return flag;
}

bool flag_adjacent(const Arrangement& arr, const std::vector<FlagEdge>& flag,
                   const Chamber& ch) {
  for (int j = 0; j < arr.dim; ++j)
    if (face_dim_in_edge(arr, ch.signs, flag[j].space) != j) return false;
  return true;
}

int flag_orientation(const Arrangement& arr,
                     const std::vector<FlagEdge>& flag, const Chamber& ch) {
  const int n = arr.dim;
  const QVec& v0 = flag[0].space.point;
  QMat frame;
  for (int j = 1; j <= n; ++j) {
    QVec w;
    if (j == n) {
      w = ch.witness;  // the chamber is the top face of its own closure
    } else {
      const EdgeFace face = face_in_edge(arr, ch.signs, flag[j].space);
      if (face.dim != j)
        throw DegenerateFlag("flag does not touch the chamber at level " +
                             std::to_string(j));
      w = face.relint;
    }
    for (int i = 0; i < n; ++i) w[i] -= v0[i];
    frame.push_back(std::move(w));
  }
  const int s = sign(det(std::move(frame)));
  assert(s != 0);
  return s;
}

namespace {

// A matching is forced exactly when peeling rows or columns with a single
// live candidate exhausts the matrix; anything else means zero or several
// matchings.
std::vector<int> unique_matching(const std::vector<std::vector<char>>& adj) {
  const int m = static_cast<int>(adj.size());
  std::vector<int> colof(m, -1);
  std::vector<char> rowdone(m, 0), coldone(m, 0);
  auto alive = [&](int k, int c) {
    return !rowdone[k] && !coldone[c] && adj[k][c];
  };
  for (int step = 0; step < m; ++step) {
    int fk = -1, fc = -1;
    for (int k = 0; k < m && fk < 0; ++k) {
      if (rowdone[k]) continue;
      int cnt = 0, last = -1;
      for (int c = 0; c < m; ++c)
        if (alive(k, c)) { ++cnt; last = c; }
      if (cnt == 0) throw BijectionFailure("flag with no unmatched chamber");
      if (cnt == 1) { fk = k; fc = last; }
    }
    for (int c = 0; c < m && fk < 0; ++c) {
      if (coldone[c]) continue;
      int cnt = 0, last = -1;
      for (int k = 0; k < m; ++k)
        if (alive(k, c)) { ++cnt; last = k; }
      if (cnt == 0) throw BijectionFailure("chamber with no unmatched flag");
      if (cnt == 1) { fk = last; fc = c; }
    }
    if (fk < 0)
      throw BijectionFailure("matching of flags to chambers is not forced");
    rowdone[fk] = 1;
    coldone[fc] = 1;
    colof[fk] = fc;
  }
  return colof;
}

}  // namespace

Labeling label_chambers(const Arrangement& arr,
                        const std::vector<Chamber>& chambers,
                        const std::vector<int>& eligible,
                        std::vector<std::vector<int>> bases) {
  if (bases.size() != eligible.size())
    throw BijectionFailure(std::to_string(bases.size()) + " bases against " +
                           std::to_string(eligible.size()) + " chambers");
  Labeling out;
  out.bases = std::move(bases);
  std::vector<std::vector<FlagEdge>> flags;
  for (const auto& b : out.bases) flags.push_back(flag_of_base(arr, b));
  const int m = static_cast<int>(out.bases.size());
  std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
  for (int k = 0; k < m; ++k)
    for (int c = 0; c < m; ++c)
      adj[k][c] = flag_adjacent(arr, flags[k], chambers[eligible[c]]);
  const std::vector<int> colof = unique_matching(adj);
  for (int k = 0; k < m; ++k) {
    out.chamber_of.push_back(eligible[colof[k]]);
    out.orientation.push_back(
        flag_orientation(arr, flags[k], chambers[eligible[colof[k]]]));
  }
  return out;
}

Labeling bounded_labeling(const Arrangement& arr,
                          const std::vector<Chamber>& chambers) {
  std::vector<int> eligible;
  for (std::size_t c = 0; c < chambers.size(); ++c)
    if (chambers[c].kind == Chamber::Kind::kBounded)
      eligible.push_back(static_cast<int>(c));
  return label_chambers(arr, chambers, eligible, beta_nbc_bases(arr));
}

Labeling growing_labeling(const Arrangement& arr,
                          const std::vector<Chamber>& chambers) {
  std::vector<int> eligible;
  for (std::size_t c = 0; c < chambers.size(); ++c)
    if (chambers[c].kind != Chamber::Kind::kOtherUnbounded)
      eligible.push_back(static_cast<int>(c));
  return label_chambers(arr, chambers, eligible, beta_nbc_bases_f0(arr));
}

}  // namespace pmdet
