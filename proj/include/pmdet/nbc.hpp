#ifndef PMDET_NBC_HPP
#define PMDET_NBC_HPP

#include <vector>

#include "pmdet/chambers.hpp"
#include "pmdet/geometry.hpp"

namespace pmdet {

// Minimal dependent index sets: nonempty intersection of codimension below
// the set size, every proper subset independent.  Sorted ascending, list in
// lex order.
std::vector<std::vector<int>> circuits(const Arrangement& arr);

// Circuits with their minimal element removed, deduplicated.
std::vector<std::vector<int>> broken_circuits(const Arrangement& arr);

// Do the dim hyperplanes picked by idx meet in a single point?
bool is_base(const Arrangement& arr, const std::vector<int>& idx);

// Bases containing no broken circuit.  Ascending tuples in lex order.
std::vector<std::vector<int>> nbc_bases(const Arrangement& arr);

// nbc-bases where every member can be traded for some smaller hyperplane
// with a base left over.  These index the bounded chambers.
std::vector<std::vector<int>> beta_nbc_bases(const Arrangement& arr);

// The same set for the arrangement truncated across f0 at a level above the
// threshold, written in the original indices (the truncating wall is minimal
// and never enters a base).  Independent of the level; indexes the bounded
// and growing chambers together.
std::vector<std::vector<int>> beta_nbc_bases_f0(const Arrangement& arr);

// Flag of edges attached to a base: entry j is the intersection of the last
// dim-j hyperplanes of the base (entry dim is the ambient space), an affine
// subspace of dimension j carrying its full support in the arrangement.
struct FlagEdge {
  std::vector<int> support;
  AffineSpace space;
};
std::vector<FlagEdge> flag_of_base(const Arrangement& arr,
                                   const std::vector<int>& base);

// A flag is adjacent to a chamber when it meets the closure in a face of
// matching dimension at every level.
bool flag_adjacent(const Arrangement& arr, const std::vector<FlagEdge>& flag,
                   const Chamber& ch);

// Orientation a flag induces on an adjacent chamber: the sign of the frame
// pointing from the flag's vertex into the relative interior of each face.
int flag_orientation(const Arrangement& arr,
                     const std::vector<FlagEdge>& flag, const Chamber& ch);

// The unique matching between bases (via their flags) and the eligible
// chambers under adjacency.  chamber_of[k] indexes the full chamber list;
// orientation[k] is the intrinsic orientation sign of that chamber.  Throws
// BijectionFailure when no matching is forced.
struct Labeling {
  std::vector<std::vector<int>> bases;  // lex order
  std::vector<int> chamber_of;
  std::vector<int> orientation;
};
Labeling label_chambers(const Arrangement& arr,
                        const std::vector<Chamber>& chambers,
                        const std::vector<int>& eligible,
                        std::vector<std::vector<int>> bases);

// Bounded chambers labeled by the beta-nbc bases.
Labeling bounded_labeling(const Arrangement& arr,
                          const std::vector<Chamber>& chambers);

// Bounded and growing chambers labeled by the truncated beta-nbc bases.
Labeling growing_labeling(const Arrangement& arr,
                          const std::vector<Chamber>& chambers);

}  // namespace pmdet

#endif
