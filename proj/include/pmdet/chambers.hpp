#ifndef PMDET_CHAMBERS_HPP
#define PMDET_CHAMBERS_HPP

#include <vector>

#include "pmdet/geometry.hpp"

namespace pmdet {

// Open full-dimensional cell of the arrangement's complement.
struct Chamber {
  enum class Kind { kBounded, kGrowing, kOtherUnbounded };
  std::vector<int> signs;  // sign of f_i on the cell, one per hyperplane
  QVec witness;            // interior point
  QMat vertices;           // vertices of the closure, sorted rows
  QMat rays;               // extreme ray directions, canonicalized rows
  Kind kind = Kind::kBounded;
};

// All chambers, sorted by sign vector (- before +).  Kind is relative to
// arr.f0 when present, otherwise bounded/other-unbounded.
std::vector<Chamber> enumerate_chambers(const Arrangement& arr);

// Sign-vector enumeration on raw pairwise-distinct forms via wall flips.
struct RawChamber {
  std::vector<int> signs;
  QVec witness;
};
std::vector<RawChamber> enumerate_sign_chambers(
    const std::vector<AffineForm>& forms, int dim);

QMat chamber_vertices(const std::vector<AffineForm>& forms,
                      const std::vector<int>& signs, int dim);
QMat chamber_rays(const std::vector<AffineForm>& forms,
                  const std::vector<int>& signs, int dim);

// Exact interior point of a pointed polyhedron: vertex average + ray sum.
QVec relint_point(const QMat& verts, const QMat& rays);

// Bounded chambers of an affine arrangement (coincident forms merged,
// constants dropped).  A 0-dimensional space counts as one bounded chamber.
int count_bounded(const std::vector<AffineForm>& forms, int dim);

// Bounded-chamber count of the affine arrangement the central forms induce
// in the chart {chart_form = 1} of a k-dimensional space.  Rows proportional
// to chart_form cut nothing there and are dropped.
int chart_bounded_count(const QMat& central, const QVec& chart_form, int k);

// Count of domains bounded with respect to the first hyperplane of the
// projective arrangement of the central forms; 1 for empty input or k <= 1.
int projective_length(const QMat& central, int k);

// Euler characteristic of the complexified projective complement of the
// central forms, via the characteristic polynomial of the intersection
// lattice.  Independent route to the counts above (up to sign).
Q projective_chi(const QMat& central, int k);

// Signed bounded-region count (-1)^dim chi(1) of a real affine arrangement,
// from its intersection poset.
Q affine_bounded_mobius(const std::vector<AffineForm>& forms, int dim);

// ---------------------------------------------------------------------------
// Discrete invariants of projective edges

struct EdgeVol {
  int l = 0;  // discrete length of the section on the edge
  int s = 0;  // discrete width: length of the projectivized localization
  int vol = 0;
};
EdgeVol edge_volume(const Arrangement& arr, const ProjEdge& e);

// Discrete length of the edge's section taken in the chart away from the
// closure of {f0 = 0}.  Edge must not lie inside that closure.
int edge_l_rel(const Arrangement& arr, const ProjEdge& e);

// Growing chambers counted two ways: by enumeration, and as the sum of
// l_rel * s over the at-infinity edges not inside the closure of {f0 = 0}.
struct GrowingCount {
  long actual = 0;
  long predicted = 0;
};
GrowingCount verify_growing_count(const Arrangement& arr);

// ---------------------------------------------------------------------------
// Truncation by a level set of f0

// Largest value of f0 on the vertices and on the edges where f0 is constant.
Q truncation_threshold(const Arrangement& arr);

// floor(threshold) + 2, at least 1: every level above the threshold gives
// the same combinatorics.
Q default_truncation_level(const Arrangement& arr);

// Arrangement with the extra hyperplane {1 - f0/t = 0} put FIRST, weighted t.
Arrangement truncate(const Arrangement& arr, const Q& t);

// ---------------------------------------------------------------------------
// Traces of growing chambers at infinity

struct TraceFace {
  std::vector<int> zero;   // hyperplanes whose direction kills every ray
  std::vector<int> signs;  // sign of h_i at the relint, per hyperplane
  QVec relint;             // chart coordinates of an interior point
  QMat points;             // chart coordinates of the ray endpoints (rows)
  int dim = 0;
};
TraceFace trace_of_chamber(const Arrangement& arr, const TraceChart& tc,
                           const Chamber& ch);

// Face {x in the given space : signs.f >= 0 on it} of a chamber's closure:
// its affine dimension (-1 when empty) and an exact relative-interior point
// in ambient coordinates.  The constraint set must be pointed (essential
// arrangement).
struct EdgeFace {
  int dim = -1;
  QVec relint;
};
EdgeFace face_in_edge(const Arrangement& arr, const std::vector<int>& signs,
                      const AffineSpace& space);

int face_dim_in_edge(const Arrangement& arr, const std::vector<int>& signs,
                     const AffineSpace& space);

}  // namespace pmdet

#endif
