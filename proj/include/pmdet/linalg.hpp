#ifndef PMDET_LINALG_HPP
#define PMDET_LINALG_HPP

#include <optional>
#include <vector>

#include "pmdet/rational.hpp"

namespace pmdet {

// Dense row-major exact matrix.  Small sizes only; everything here is
// plain Gauss-Jordan over Q.
using QMat = std::vector<QVec>;

Q dot(const QVec& a, const QVec& b);

int rank(QMat a);

// Determinant of a square matrix.
Q det(QMat a);

// Basis (as rows) of {x : a x = 0} in dimension ncols.  ncols is explicit
// because `a` may have no rows.
QMat nullspace(const QMat& a, int ncols);

// Affine solution set of a x = b: a particular point plus a kernel basis.
// nonempty == false means the system is inconsistent.
struct AffineSpace {
  bool nonempty = false;
  QVec point;
  QMat basis;
};
AffineSpace affine_solve(QMat a, QVec b, int ncols);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(QMat& a);

}  // namespace pmdet

#endif
