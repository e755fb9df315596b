#include "pmdet/periodmatrix.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "pmdet/chambers.hpp"
#include "pmdet/errors.hpp"

namespace pmdet {

namespace {

std::vector<double> column_angles(const Chamber& ch, const PMOptions& opt,
                                  int chamber_index) {
  std::vector<double> theta = branch_angles(ch.signs);
  if (chamber_index == opt.shift_chamber && opt.shift_hyperplane >= 0 &&
      opt.shift_hyperplane < static_cast<int>(theta.size()))
    theta[opt.shift_hyperplane] += 2.0 * std::numbers::pi;
  return theta;
}

Eigen::MatrixXcd to_eigen(const PeriodMatrix& pm) {
  const int m = pm.size();
  Eigen::MatrixXcd M(m, m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) M(k, j) = pm.a[k][j];
  return M;
}

}  // namespace

PeriodMatrix period_matrix(const Arrangement& arr, const QuadratureSpec& spec,
                           bool with_f0, const PMOptions& opt) {
  const std::vector<Chamber> chambers = enumerate_chambers(arr);
  PeriodMatrix pm;
  pm.with_f0 = with_f0;
  pm.labeling =
      with_f0 ? growing_labeling(arr, chambers) : bounded_labeling(arr, chambers);
  pm.forms = with_f0 ? phi_set_f0(arr) : phi_set(arr);
  const int m = static_cast<int>(pm.labeling.bases.size());
  if (static_cast<int>(pm.forms.size()) != m)
    throw Error("form basis and chamber labeling disagree in size");
  pm.a.assign(m, std::vector<Cplx>(m, Cplx(0.0)));
  pm.err.assign(m, std::vector<double>(m, 0.0));

  for (int j = 0; j < m; ++j) {
    const int ci = pm.labeling.chamber_of[j];
    const Chamber& ch = chambers[ci];
    const std::vector<double> theta = column_angles(ch, opt, ci);
    double e = 0.0;
    std::vector<Cplx> col;
    if (ch.kind == Chamber::Kind::kBounded)
      col = integrate_bounded(arr, ch, pm.forms, theta, with_f0, spec, &e);
    else
      col = integrate_growing(arr, ch, pm.forms, theta, spec, &e);
    double s = static_cast<double>(pm.labeling.orientation[j]);
    if (j == opt.flip_column) s = -s;
    for (int k = 0; k < m; ++k) {
      pm.a[k][j] = s * col[k];
      pm.err[k][j] = e;
    }
  }
  return pm;
}

Cplx pm_determinant(const PeriodMatrix& pm, double* condition,
                    double* err_bound) {
  const int m = pm.size();
  if (m == 0) {
    if (condition) *condition = 1.0;
    if (err_bound) *err_bound = 0.0;
    return Cplx(1.0);
  }
  const Eigen::MatrixXcd M = to_eigen(pm);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  const Cplx det = lu.determinant();
  if (condition) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    const double smin = svd.singularValues()(m - 1);
    *condition =
        (smin > 0.0) ? svd.singularValues()(0) / smin
                     : std::numeric_limits<double>::infinity();
  }
  if (err_bound) {
    // first order: d(det) = det * tr(M^{-1} dM)
    double b = 0.0;
    if (det != Cplx(0.0)) {
      const Eigen::MatrixXcd inv = lu.inverse();
      for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j)
          b += std::abs(det) * std::abs(inv(j, k)) * pm.err[k][j];
    } else {
      b = std::numeric_limits<double>::infinity();
    }
    *err_bound = b;
  }
  return det;
}

VerificationReport verify_identity(const Arrangement& arr,
                                   const QuadratureSpec& spec, bool with_f0,
                                   double tol, const PMOptions& opt) {
  VerificationReport rep;
  rep.with_f0 = with_f0;
  rep.tol = tol;

  const PeriodMatrix pm = period_matrix(arr, spec, with_f0, opt);
  rep.size = pm.size();
  rep.det = pm_determinant(pm, &rep.condition, &rep.det_error);

  const std::vector<Chamber> chambers = enumerate_chambers(arr);
  std::vector<std::vector<double>> overrides;
  if (opt.shift_chamber >= 0 &&
      opt.shift_chamber < static_cast<int>(chambers.size())) {
    overrides.resize(chambers.size());
    overrides[opt.shift_chamber] =
        column_angles(chambers[opt.shift_chamber], opt, opt.shift_chamber);
  }
  const CriticalProduct cp =
      critical_product(arr, chambers, with_f0, overrides);
  rep.critical = cp.value;
  const BetaResult br =
      with_f0 ? beta_function_relative(arr) : beta_function(arr);
  rep.beta = br.value;
  rep.rhs = rep.critical * rep.beta;

  const double scale = std::max(std::abs(rep.det), std::abs(rep.rhs));
  rep.deviation = (scale > 0.0) ? std::abs(rep.det - rep.rhs) / scale : 0.0;
  rep.pass = std::isfinite(rep.deviation) && rep.deviation <= tol;
  if (with_f0)
    for (int j = 0; j < pm.size(); ++j)
      if (chambers[pm.labeling.chamber_of[j]].kind == Chamber::Kind::kGrowing)
        rep.tail_heuristic = true;
  return rep;
}

std::vector<ConvergencePoint> convergence_check(
    const Arrangement& arr, const QuadratureSpec& spec,
    const std::vector<Q>& levels) {
  const PeriodMatrix base = period_matrix(arr, spec, true);
  const std::vector<Chamber> chambers = enumerate_chambers(arr);
  const int m = base.size();

  double base_norm = 0.0;
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) base_norm += std::norm(base.a[k][j]);
  base_norm = std::sqrt(base_norm);

  std::vector<ConvergencePoint> out;
  for (const Q& t : levels) {
    double dist = 0.0;
    for (int j = 0; j < m; ++j) {
      const int ci = base.labeling.chamber_of[j];
      const Chamber& ch = chambers[ci];
      const std::vector<double> theta = branch_angles(ch.signs);
      double e = 0.0;
      const std::vector<Cplx> col =
          integrate_truncated(arr, ch, base.forms, theta, t, spec, &e);
      const double s = static_cast<double>(base.labeling.orientation[j]);
      for (int k = 0; k < m; ++k)
        dist += std::norm(s * col[k] - base.a[k][j]);
    }
    out.push_back({t, std::sqrt(dist) / std::max(base_norm, 1e-300)});
  }
  return out;
}

}  // namespace pmdet
