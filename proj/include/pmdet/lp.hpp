#ifndef PMDET_LP_HPP
#define PMDET_LP_HPP

#include <optional>

#include "pmdet/linalg.hpp"

namespace pmdet {

// Exact two-phase simplex (Bland's rule) for tiny problems with free
// variables:  maximize c.x  s.t.  eq_a x = eq_b,  ge_a x >= ge_b.
struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  QVec x;
  Q value;
};

LpResult solve_lp(const QMat& eq_a, const QVec& eq_b, const QMat& ge_a,
                  const QVec& ge_b, const QVec& objective, int ncols);

// Point of {x : eq_a x = eq_b, gt_a x > gt_b} (strict!), or nullopt if the
// set is empty.  Decided exactly by maximizing a slack bounded by 1.
std::optional<QVec> strict_witness(const QMat& eq_a, const QVec& eq_b,
                                   const QMat& gt_a, const QVec& gt_b,
                                   int ncols);

}  // namespace pmdet

#endif
