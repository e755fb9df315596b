#ifndef PMDET_PERIODMATRIX_HPP
#define PMDET_PERIODMATRIX_HPP

#include <vector>

#include "pmdet/closedform.hpp"
#include "pmdet/nbc.hpp"
#include "pmdet/quadrature.hpp"

namespace pmdet {

// Probes threaded through both sides of the identity (branch covariance and
// negative controls).
struct PMOptions {
  // add 2*pi to the branch angle of this hyperplane on this chamber (full
  // chamber-list index); applied to the matrix column and to the critical
  // value product alike
  int shift_chamber = -1;
  int shift_hyperplane = -1;
  // negate one matrix column: a deliberate orientation error
  int flip_column = -1;
};

// Period matrix in basis order: rows follow the n-forms, columns the
// chambers labeled by the same bases, intrinsic orientation applied.
struct PeriodMatrix {
  std::vector<std::vector<Cplx>> a;     // a[k][j]: form k over chamber j
  std::vector<std::vector<double>> err; // per-entry quadrature estimates
  Labeling labeling;
  std::vector<NForm> forms;
  bool with_f0 = false;

  int size() const { return static_cast<int>(a.size()); }
};

PeriodMatrix period_matrix(const Arrangement& arr, const QuadratureSpec& spec,
                           bool with_f0, const PMOptions& opt = {});

// Determinant by LU with partial pivoting; optionally the spectral condition
// number and a first-order bound on the determinant error induced by the
// per-entry quadrature estimates.
Cplx pm_determinant(const PeriodMatrix& pm, double* condition = nullptr,
                    double* err_bound = nullptr);

struct VerificationReport {
  int size = 0;
  bool with_f0 = false;
  Cplx det;        // determinant of the period matrix
  Cplx critical;   // product of critical values over the labeled chambers
  Cplx beta;       // gamma-factor side
  Cplx rhs;        // critical * beta
  double deviation = 0.0;  // |det - rhs| / max(|det|, |rhs|)
  double det_error = 0.0;
  double condition = 0.0;
  double tol = 0.0;
  bool pass = false;
  // growing columns rest on a sampled tail bound rather than a proof
  bool tail_heuristic = false;
};

VerificationReport verify_identity(const Arrangement& arr,
                                   const QuadratureSpec& spec, bool with_f0,
                                   double tol, const PMOptions& opt = {});

// Distance of the truncated period matrix (integrand (1 - f0/t)^t on the
// chamber cut at f0 = t) from the damped one, per level.
struct ConvergencePoint {
  Q level;
  double distance;  // relative Frobenius
};
std::vector<ConvergencePoint> convergence_check(const Arrangement& arr,
                                                const QuadratureSpec& spec,
                                                const std::vector<Q>& levels);

}  // namespace pmdet

#endif
