#ifndef PMDET_GEOMETRY_HPP
#define PMDET_GEOMETRY_HPP

#include <complex>
#include <optional>
#include <vector>

#include "pmdet/linalg.hpp"

namespace pmdet {

using Cplx = std::complex<double>;

// f(x) = a.x + c
struct AffineForm {
  QVec a;
  Q c;
};

Q eval_form(const AffineForm& f, const QVec& x);

struct Hyperplane {
  AffineForm f;
  Cplx weight;
};

// A finite set of affine hyperplanes with complex weights, plus an optional
// direction functional f0 used for exponential damping and growth analysis.
struct Arrangement {
  int dim = 0;
  std::vector<Hyperplane> hyperplanes;
  std::optional<AffineForm> f0;

  int size() const { return static_cast<int>(hyperplanes.size()); }
  const AffineForm& form(int i) const { return hyperplanes[i].f; }
  Cplx weight(int i) const { return hyperplanes[i].weight; }
  Cplx weight_sum() const;
};

// Throws ZeroForm, DuplicateHyperplane, ConstantF0 or NotEssential.
void validate(const Arrangement& arr);

// ---------------------------------------------------------------------------
// Intersection lattice (affine edges)

struct Edge {
  std::vector<int> support;  // all i with the edge inside H_i, sorted
  AffineSpace space;         // particular point + direction basis
  int dim() const { return static_cast<int>(space.basis.size()); }
};

// Every nonempty intersection of subfamilies, deduplicated by maximal
// support, excluding the ambient space.  Sorted by (dim desc, support lex).
std::vector<Edge> affine_lattice(const Arrangement& arr);

std::vector<Edge> vertices_of(const std::vector<Edge>& lattice);

// ---------------------------------------------------------------------------
// Restriction of the arrangement to an affine subspace

struct InducedForm {
  AffineForm g;              // trace functional in subspace parameters
  std::vector<int> sources;  // indices of hyperplanes tracing this one
};

struct SectionResult {
  std::vector<InducedForm> traces;  // merged coincident traces, input order
  std::vector<int> containing;      // hyperplanes containing the subspace
};

// Traces of arr's hyperplanes on the subspace.  Hyperplanes parallel to the
// subspace (constant trace) are dropped; coincident traces are merged.
SectionResult induced_on(const Arrangement& arr, const AffineSpace& sp);

// Merge affine forms cutting the same hyperplane (proportional); drops
// zero-linear-part entries.  Keeps first-seen order and scaling.
std::vector<InducedForm> merge_coincident(const std::vector<AffineForm>& forms);

// ---------------------------------------------------------------------------
// Projectivization.  Homogeneous coordinates are (x0, x1..xn); an affine
// functional a.x + c homogenizes to the covector (c, a).

QVec homogenize(const AffineForm& f);

struct ProjEdge {
  bool at_infinity = false;
  std::vector<int> support;  // affine hyperplane indices; the hyperplane at
                             // infinity is implicit for at_infinity edges
  AffineSpace affine_part;   // for ordinary edges
  QMat dir_basis;            // for at-infinity edges: basis of the direction
  int proj_dim = 0;
  Cplx weight;               // sum of weights over all containing hyperplanes
};

struct ProjArrangement {
  std::vector<ProjEdge> lplus;   // closures of affine edges
  std::vector<ProjEdge> lminus;  // edges inside the hyperplane at infinity
};

ProjArrangement projectivize(const Arrangement& arr);

// Basis (rows) of the homogeneous span of the edge in R^{n+1}.
QMat edge_homog_basis(const Arrangement& arr, const ProjEdge& e);

// Components of a homogeneous covector on the rows of a basis.
QVec restrict_covector(const QVec& covector, const QMat& basis);

// Greedy extension of `basis` to a full basis of R^k by standard vectors;
// returns only the added complement vectors.
QMat complement_basis(const QMat& basis, int ambient);

// Central forms of the section on the edge (hyperplanes not containing it,
// restricted to the edge's homogeneous span; the hyperplane at infinity
// comes last when it cuts the edge).  All rows are nonzero.
QMat section_forms(const Arrangement& arr, const ProjEdge& e);

// Central forms of the localization at the edge (hyperplanes containing it,
// restricted to a complement of its span; infinity last for at-infinity
// edges).
QMat localization_forms(const Arrangement& arr, const ProjEdge& e);

// True iff the edge lies in the projective closure of {f0 = 0}.
bool edge_in_h0(const Arrangement& arr, const ProjEdge& e);

// ---------------------------------------------------------------------------
// Trace at infinity: the affine chart {f0^0 = 1} of the hyperplane at
// infinity, with the induced functionals of all hyperplane directions.

struct TraceChart {
  QVec q;      // point of the chart: f0^0(q) = 1
  QMat basis;  // basis of ker f0^0, the chart's coordinate directions
  // h[i]: direction functional of hyperplane i in chart coordinates, equal
  // to f_i^0 / f_0^0 there.  Zero linear part == constant trace (direction
  // parallel to f0): such entries cut nothing but their values still matter.
  std::vector<AffineForm> h;
};

TraceChart trace_at_infinity(const Arrangement& arr);

}  // namespace pmdet

#endif
