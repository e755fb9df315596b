#include "pmdet/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <tuple>

#include "pmdet/errors.hpp"
#include "pmdet/gamma.hpp"
#include "pmdet/rational.hpp"

namespace pmdet {

namespace {

constexpr double kPi = std::numbers::pi;

double eval_form_d(const AffineForm& f, const std::vector<double>& x) {
  double v = to_double(f.c);
  for (std::size_t i = 0; i < f.a.size(); ++i) v += to_double(f.a[i]) * x[i];
  return v;
}

// Exact dyadic rational of a double.
Q q_from_double(double x) {
  if (!std::isfinite(x)) throw Error("cannot convert non-finite value");
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  Q r(mant);
  using Int = boost::multiprecision::cpp_int;
  if (e >= 0)
    r *= Q(Int(1) << e);
  else
    r /= Q(Int(1) << (-e));
  return r;
}

void check_spec(const QuadratureSpec& spec) {
  if (!(spec.tol > 0.0 && spec.tol < 1.0))
    throw Error("quadrature tolerance must lie in (0, 1)");
  if (spec.nodes < 2) throw Error("quadrature rule needs at least 2 nodes");
  if (spec.max_depth < 1) throw Error("quadrature depth budget must be positive");
}

double vnorm(const std::vector<Cplx>& v) {
  double m = 0.0;
  for (const Cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

double vdiff(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Gauss nodes via the symmetric tridiagonal eigenproblem

std::vector<double> tridiag_nodes(const std::vector<double>& diag,
                                  const std::vector<double>& off,
                                  std::vector<double>* first_sq) {
  const int m = static_cast<int>(diag.size());
  Eigen::VectorXd d(m), e(std::max(m - 1, 0));
  for (int i = 0; i < m; ++i) d[i] = diag[i];
  for (int i = 0; i + 1 < m; ++i) e[i] = off[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(
      d, e, first_sq ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("tridiagonal eigensolve failed");
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[i] = es.eigenvalues()[i];
  if (first_sq) {
    first_sq->resize(m);
    for (int i = 0; i < m; ++i) {
      const double c = es.eigenvectors()(0, i);
      (*first_sq)[i] = c * c;
    }
  }
  return x;
}

// Nodes on (0,1) of the Gauss rule for s^a (1-s)^b, optionally with the
// classical positive weights.
std::vector<double> jacobi_nodes01(double a_exp, double b_exp, int m,
                                   std::vector<double>* weights) {
  if (a_exp <= -1.0 || b_exp <= -1.0)
    throw Error("endpoint exponent at or below -1 is not integrable");
  // recurrence for (1-u)^alpha (1+u)^beta on [-1,1] with alpha = b_exp
  // (the s=1 end), beta = a_exp (the s=0 end)
  const double al = b_exp, be = a_exp;
  std::vector<double> diag(m), off(std::max(m - 1, 0));
  diag[0] = (be - al) / (al + be + 2.0);
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + al + be;
    diag[k] = (be * be - al * al) / (s * (s + 2.0));
  }
  if (m > 1)
    off[0] = std::sqrt(4.0 * (al + 1.0) * (be + 1.0) /
                       ((al + be + 2.0) * (al + be + 2.0) * (al + be + 3.0)));
  for (int k = 2; k < m; ++k) {
    const double s = 2.0 * k + al + be;
    off[k - 1] = std::sqrt(4.0 * k * (k + al) * (k + be) * (k + al + be) /
                           (s * s * (s + 1.0) * (s - 1.0)));
  }
  std::vector<double> fs;
  std::vector<double> u = tridiag_nodes(diag, off, weights ? &fs : nullptr);
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[i] = 0.5 * (u[i] + 1.0);
  if (weights) {
    const double mu0 = std::exp(std::lgamma(a_exp + 1.0) +
                                std::lgamma(b_exp + 1.0) -
                                std::lgamma(a_exp + b_exp + 2.0));
    weights->resize(m);
    for (int i = 0; i < m; ++i) (*weights)[i] = mu0 * fs[i];
  }
  return x;
}

// Values of the shifted Legendre polynomials P~_k (orthogonal on [0,1]) for
// k < m at each node.
Eigen::MatrixXd legendre_values(const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd G(m, n);
  for (int j = 0; j < n; ++j) {
    const double u = 2.0 * x[j] - 1.0;
    double p0 = 1.0, p1 = u;
    if (m > 0) G(0, j) = p0;
    if (m > 1) G(1, j) = p1;
    for (int k = 1; k + 1 < m; ++k) {
      const double p2 = ((2.0 * k + 1.0) * u * p1 - k * p0) / (k + 1.0);
      G(k + 1, j) = p2;
      p0 = p1;
      p1 = p2;
    }
  }
  return G;
}

// Moments of s^A (1-s)^B against the shifted Legendre polynomials, from the
// Rodrigues form integrated by parts:
//   nu_k = sum_j (-1)^{k-j} binom(A,j) binom(B,k-j) Beta(A+k-j+1, B+j+1).
std::vector<Cplx> legendre_moments(Cplx A, Cplx B, int m) {
  std::vector<Cplx> binA(m), binB(m);
  binA[0] = binB[0] = Cplx(1.0);
  for (int j = 1; j < m; ++j) {
    binA[j] = binA[j - 1] * (A - Cplx(j - 1.0)) / Cplx(static_cast<double>(j));
    binB[j] = binB[j - 1] * (B - Cplx(j - 1.0)) / Cplx(static_cast<double>(j));
  }
  std::vector<Cplx> nu(m);
  for (int k = 0; k < m; ++k) {
    Cplx s(0.0);
    for (int j = 0; j <= k; ++j) {
      const Cplx t = binA[j] * binB[k - j] *
                     cbeta(A + Cplx(static_cast<double>(k - j + 1)),
                           B + Cplx(static_cast<double>(j + 1)));
      s += ((k - j) % 2 == 0) ? t : -t;
    }
    nu[k] = s;
  }
  return nu;
}

// Weights matching the given complex moments of a polynomial basis whose
// values at the nodes fill G (rows = basis index).
std::vector<Cplx> moment_weights(const Eigen::MatrixXd& G,
                                 const std::vector<Cplx>& nu) {
  const int m = static_cast<int>(nu.size());
  Eigen::VectorXd re(m), im(m);
  for (int k = 0; k < m; ++k) {
    re[k] = nu[k].real();
    im[k] = nu[k].imag();
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(G);
  const Eigen::VectorXd wr = lu.solve(re), wi = lu.solve(im);
  std::vector<Cplx> w(m);
  for (int k = 0; k < m; ++k) w[k] = Cplx(wr[k], wi[k]);
  return w;
}

using RuleKey = std::tuple<double, double, double, double, int>;

}  // namespace

Rule1D jacobi_rule_gw(double a, double b, int m) {
  Rule1D r;
  std::vector<double> w;
  r.x = jacobi_nodes01(a, b, m, &w);
  r.w.assign(w.begin(), w.end());
  return r;
}

const Rule1D& jacobi_rule(Cplx A, Cplx B, int m) {
  static std::map<RuleKey, Rule1D> cache;
  const RuleKey key{A.real(), A.imag(), B.real(), B.imag(), m};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Rule1D r;
  if (A.imag() == 0.0 && B.imag() == 0.0) {
    r = jacobi_rule_gw(A.real(), B.real(), m);
  } else {
    r.x = jacobi_nodes01(A.real(), B.real(), m, nullptr);
    r.w = moment_weights(legendre_values(r.x, m), legendre_moments(A, B, m));
  }
  return cache.emplace(key, std::move(r)).first->second;
}

Rule1D laguerre_rule_gw(double c, int m) {
  if (c <= -1.0) throw Error("endpoint exponent at or below -1 is not integrable");
  std::vector<double> diag(m), off(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) diag[k] = 2.0 * k + c + 1.0;
  for (int k = 0; k + 1 < m; ++k)
    off[k] = std::sqrt((k + 1.0) * (k + 1.0 + c));
  std::vector<double> fs;
  Rule1D r;
  r.x = tridiag_nodes(diag, off, &fs);
  const double mu0 = std::exp(std::lgamma(c + 1.0));
  r.w.resize(m);
  for (int i = 0; i < m; ++i) r.w[i] = mu0 * fs[i];
  return r;
}

const Rule1D& laguerre_rule(Cplx C, int m) {
  static std::map<RuleKey, Rule1D> cache;
  const RuleKey key{C.real(), C.imag(), 0.0, 0.0, m};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Rule1D r;
  const double c = C.real();
  if (C.imag() == 0.0) {
    r = laguerre_rule_gw(c, m);
  } else {
    std::vector<double> diag(m), off(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k) diag[k] = 2.0 * k + c + 1.0;
    for (int k = 0; k + 1 < m; ++k)
      off[k] = std::sqrt((k + 1.0) * (k + 1.0 + c));
    r.x = tridiag_nodes(diag, off, nullptr);
    // values of the generalized Laguerre polynomials L_k^{(c)}
    const int n = m;
    Eigen::MatrixXd G(m, n);
    for (int j = 0; j < n; ++j) {
      const double u = r.x[j];
      double p0 = 1.0, p1 = 1.0 + c - u;
      if (m > 0) G(0, j) = p0;
      if (m > 1) G(1, j) = p1;
      for (int k = 1; k + 1 < m; ++k) {
        const double p2 =
            ((2.0 * k + 1.0 + c - u) * p1 - (k + c) * p0) / (k + 1.0);
        G(k + 1, j) = p2;
        p0 = p1;
        p1 = p2;
      }
    }
    // nu_k = (-1)^k / k! * prod_{i<k} (C - c - i) * Gamma(C+1)
    std::vector<Cplx> nu(m);
    const Cplx g = cgamma(C + Cplx(1.0));
    Cplx fall(1.0);
    for (int k = 0; k < m; ++k) {
      nu[k] = fall * g;
      fall *= (C - Cplx(c) - Cplx(static_cast<double>(k))) /
              Cplx(-static_cast<double>(k + 1));
    }
    r.w = moment_weights(G, nu);
  }
  return cache.emplace(key, std::move(r)).first->second;
}

// ---------------------------------------------------------------------------
// Adaptive weighted segment

namespace {

struct Panel {
  double u, v;
  int depth;
};

// One interpolatory pass over [u,v] within the ambient segment [a,b] whose
// full weight is (t-a)^A (b-t)^B: the ends the panel actually touches go
// into the rule, the rest is evaluated as part of the integrand.
std::vector<Cplx> panel_pass(double a, double b, Cplx A, Cplx B, double u,
                             double v, int m, int nv, const VecFn& g,
                             Cplx log_extra) {
  const bool la = (u == a), rb = (v == b);
  const Cplx Ah = la ? A : Cplx(0.0), Bh = rb ? B : Cplx(0.0);
  const Rule1D& R = jacobi_rule(Ah, Bh, m);
  // every scale factor stays in one exponent per node: pieces like a huge
  // truncation power and its tiny constant must cancel before exp
  const Cplx base_log =
      (Ah + Bh + Cplx(1.0)) * std::log(v - u) + log_extra;
  std::vector<Cplx> acc(nv, Cplx(0.0));
  for (std::size_t q = 0; q < R.x.size(); ++q) {
    const double t = u + (v - u) * R.x[q];
    if (t == a || t == b) continue;  // node rounded onto a weighted endpoint
    std::vector<Cplx> gv = g(t);
    Cplx elog = base_log;
    if (!la) elog += A * std::log(t - a);
    if (!rb) elog += B * std::log(b - t);
    const Cplx c = R.w[q] * std::exp(elog);
    for (int k = 0; k < nv; ++k) acc[k] += c * gv[k];
  }
  return acc;
}

}  // namespace

std::vector<Cplx> segment_integral(double a, double b, Cplx A, Cplx B,
                                   int vec_len, const VecFn& g,
                                   const QuadratureSpec& spec, double* err,
                                   Cplx log_extra) {
  check_spec(spec);
  if (!(a < b)) throw Error("segment endpoints out of order");
  const int m1 = spec.nodes, m2 = (3 * spec.nodes) / 2 + 2;
  const std::vector<Cplx> rough =
      panel_pass(a, b, A, B, a, b, m1, vec_len, g, log_extra);
  const double scale0 = std::max(vnorm(rough), 1e-300);
  const double tol_abs = spec.tol * scale0;

  std::vector<Cplx> total(vec_len, Cplx(0.0));
  double esum = 0.0;
  std::vector<Panel> stack{{a, b, 0}};
  while (!stack.empty()) {
    const Panel P = stack.back();
    stack.pop_back();
    const std::vector<Cplx> c1 =
        panel_pass(a, b, A, B, P.u, P.v, m1, vec_len, g, log_extra);
    const std::vector<Cplx> c2 =
        panel_pass(a, b, A, B, P.u, P.v, m2, vec_len, g, log_extra);
    const double d = vdiff(c1, c2);
    // the per-length budget gets a floor so that panels piling up against an
    // endpoint singularity are not asked for ever-higher relative accuracy
    const double budget =
        tol_abs * std::max((P.v - P.u) / (b - a), 1.0 / 64.0);
    if (d <= budget) {
      for (int k = 0; k < vec_len; ++k) total[k] += c2[k];
      esum += d;
      continue;
    }
    if (P.depth >= spec.max_depth)
      throw MaxDepthExceeded("weighted segment did not converge within the depth budget");
    const double mid = 0.5 * (P.u + P.v);
    stack.push_back({P.u, mid, P.depth + 1});
    stack.push_back({mid, P.v, P.depth + 1});
  }
  if (err) *err = esum;
  return total;
}

// ---------------------------------------------------------------------------
// tanh-sinh

std::vector<Cplx> de_integral(double a, double b, int vec_len, const VecFn& g,
                              const QuadratureSpec& spec, double* err) {
  check_spec(spec);
  if (!(a < b)) throw Error("segment endpoints out of order");
  const double r = 0.5 * (b - a);

  // contribution of the node at abscissa tau; false once the transformed
  // point is numerically at an endpoint
  auto add_node = [&](double tau, std::vector<Cplx>& acc) -> bool {
    const double z = 0.5 * kPi * std::sinh(tau);
    const double az = std::abs(z);
    const double e2 = std::exp(-2.0 * az);
    const double dist = 2.0 * r * e2 / (1.0 + e2);
    if (dist < 1e-280 * r) return false;
    const double w =
        2.0 * kPi * r * std::cosh(tau) * e2 / ((1.0 + e2) * (1.0 + e2));
    const double x = (z >= 0.0) ? b - dist : a + dist;
    if (x == a || x == b) return false;  // node collapsed onto an endpoint
    const std::vector<Cplx> gv = g(x);
    for (int k = 0; k < vec_len; ++k) acc[k] += w * gv[k];
    return true;
  };

  const double h0 = 0.5;
  std::vector<Cplx> sum(vec_len, Cplx(0.0));
  add_node(0.0, sum);
  for (int side = -1; side <= 1; side += 2)
    for (int k = 1;; ++k) {
      if (!add_node(h0 * k * side, sum)) break;
    }
  std::vector<Cplx> prev(vec_len);
  for (int k = 0; k < vec_len; ++k) prev[k] = h0 * sum[k];

  double h = h0;
  const int max_level = std::min(spec.max_depth, 11);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    std::vector<Cplx> odd(vec_len, Cplx(0.0));
    for (int side = -1; side <= 1; side += 2)
      for (int k = 1;; k += 2) {
        if (!add_node(h * k * side, odd)) break;
      }
    std::vector<Cplx> cur(vec_len);
    for (int k = 0; k < vec_len; ++k) cur[k] = 0.5 * prev[k] + h * odd[k];
    const double d = vdiff(cur, prev);
    prev = cur;
    if (level >= 2 && d <= spec.tol * std::max(vnorm(cur), 1e-300)) {
      if (err) *err = d;
      return cur;
    }
  }
  throw MaxDepthExceeded("tanh-sinh refinement did not converge within the level budget");
}

// ---------------------------------------------------------------------------
// Integrand evaluation over a chamber

namespace {

struct EvalCtx {
  const Arrangement* arr;
  const std::vector<NForm>* forms;
  const std::vector<double>* theta;
  bool with_f0 = false;
  double tlev = 0.0;                 // > 0: multiply (1 - f0/t)^t per point
  std::vector<double> prefix;        // fixed leading coordinates (slices)
};

std::vector<Cplx> eval_vec(const EvalCtx& c, const std::vector<double>& tail) {
  std::vector<double> x = c.prefix;
  x.insert(x.end(), tail.begin(), tail.end());
  // everything is assembled inside one exponential per n-form term: near a
  // deep corner the plain product of the f_i under- or overflows a double
  // while the combined integrand sits comfortably in range
  const Arrangement& arr = *c.arr;
  const int p = arr.size();
  std::vector<double> lg(p);
  std::vector<int> sg(p);
  Cplx expo(0.0);
  for (int i = 0; i < p; ++i) {
    const double v = eval_form_d(arr.form(i), x);
    if (v == 0.0) throw PointOnHyperplane("hyperplane " + std::to_string(i));
    lg[i] = std::log(std::abs(v));
    sg[i] = v < 0.0 ? -1 : 1;
    expo += arr.weight(i) * Cplx(lg[i], (*c.theta)[i]);
  }
  if (c.with_f0 || c.tlev > 0.0) {
    const double f0v = eval_form_d(*arr.f0, x);
    if (c.with_f0) expo += Cplx(-f0v);
    if (c.tlev > 0.0) expo += Cplx(c.tlev * std::log1p(-f0v / c.tlev));
  }
  std::vector<Cplx> out(c.forms->size(), Cplx(0.0));
  for (std::size_t k = 0; k < c.forms->size(); ++k)
    for (const NTerm& t : (*c.forms)[k].terms) {
      double lsum = 0.0;
      int s = 1;
      for (int i : t.tuple) {
        lsum += lg[i];
        s *= sg[i];
      }
      out[k] += t.coeff * (s * to_double(t.det)) * std::exp(expo - Cplx(lsum));
    }
  return out;
}

// norm of the integrand near a point, nudging off walls if the sample
// accidentally lands on one
double sample_norm(const EvalCtx& c, std::vector<double> pt,
                   const std::vector<double>& inward) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      return vnorm(eval_vec(c, pt));
    } catch (const PointOnHyperplane&) {
      for (std::size_t i = 0; i < pt.size(); ++i)
        pt[i] += 1e-3 * (attempt + 1) * inward[i];
    }
  }
  throw Error("could not sample the integrand off the walls");
}

// index of the unique hyperplane vanishing at a point (exact)
int vanishing_at(const Arrangement& arr, const QVec& p) {
  int found = -1;
  for (int i = 0; i < arr.size(); ++i)
    if (eval_form(arr.form(i), p) == 0) {
      if (found >= 0) throw Error("endpoint lies on more than one hyperplane");
      found = i;
    }
  if (found < 0) throw Error("endpoint lies on no hyperplane");
  return found;
}

// log of the upper incomplete gamma Gamma(D+1, z) for integer D >= 0
double log_upper_gamma_int(int D, double z) {
  // Gamma(D+1, z) = D! e^{-z} sum_{j<=D} z^j / j!
  double lmax = -std::numeric_limits<double>::infinity();
  std::vector<double> lt(D + 1);
  for (int j = 0; j <= D; ++j) {
    lt[j] = std::lgamma(D + 1.0) - std::lgamma(j + 1.0) + j * std::log(z);
    lmax = std::max(lmax, lt[j]);
  }
  double s = 0.0;
  for (int j = 0; j <= D; ++j) s += std::exp(lt[j] - lmax);
  return -z + lmax + std::log(s);
}

int tail_degree(const Arrangement& arr) {
  int D = arr.dim;
  for (int i = 0; i < arr.size(); ++i)
    D += static_cast<int>(std::ceil(std::max(arr.weight(i).real(), 0.0)));
  return D;
}

// ---------------------------------------------------------------------------
// dimension 1

std::vector<Cplx> dim1_bounded(const EvalCtx& ctx, const Arrangement& arr,
                               const Chamber& ch, const QuadratureSpec& spec,
                               double* err) {
  const double a = to_double(ch.vertices[0][0]);
  const double b = to_double(ch.vertices[1][0]);
  const Cplx A = arr.weight(vanishing_at(arr, ch.vertices[0])) - Cplx(1.0);
  const Cplx B = arr.weight(vanishing_at(arr, ch.vertices[1])) - Cplx(1.0);
  auto g = [&](double t) {
    std::vector<Cplx> v = eval_vec(ctx, {t});
    const Cplx m = std::exp(-A * std::log(t - a) - B * std::log(b - t));
    for (Cplx& z : v) z *= m;
    return v;
  };
  return segment_integral(a, b, A, B, static_cast<int>(ctx.forms->size()), g,
                          spec, err);
}

// growing interval: vertex on one side, f0 -> +infinity on the other
std::vector<Cplx> dim1_growing(const EvalCtx& ctx, const Arrangement& arr,
                               const Chamber& ch, const QuadratureSpec& spec,
                               double* err) {
  const AffineForm& f0 = *arr.f0;
  const double a0 = to_double(f0.a[0]);
  const double v = to_double(ch.vertices[0][0]);
  const Cplx Av = arr.weight(vanishing_at(arr, ch.vertices[0])) - Cplx(1.0);
  const int nv = static_cast<int>(ctx.forms->size());
  const int D = tail_degree(arr);

  double T = eval_form_d(f0, {v}) + 10.0;
  for (int round = 0;; ++round) {
    const double tcut = (T - to_double(f0.c)) / a0;
    const double lo = std::min(v, tcut), hi = std::max(v, tcut);
    const Cplx A = (a0 > 0.0) ? Av : Cplx(0.0);
    const Cplx B = (a0 > 0.0) ? Cplx(0.0) : Av;
    auto g = [&](double t) {
      std::vector<Cplx> w = eval_vec(ctx, {t});
      const Cplx m = std::exp(-A * std::log(t - lo) - B * std::log(hi - t));
      for (Cplx& z : w) z *= m;
      return w;
    };
    double es = 0.0;
    std::vector<Cplx> val = segment_integral(lo, hi, A, B, nv, g, spec, &es);

    // sampled tail bound: |integrand| <= C (1+f0)^D e^{-f0} past the cut
    const double samp =
        sample_norm(ctx, {tcut}, {(a0 > 0.0) ? -1.0 : 1.0});
    const double logC =
        std::log(2.0 * samp + 1e-320) + T - D * std::log1p(T);
    const double log_tail =
        logC + log_upper_gamma_int(D, 1.0 + T) + 1.0 - std::log(std::abs(a0));
    const double tail = std::exp(log_tail);
    if (tail <= 0.1 * spec.tol * std::max(vnorm(val), 1e-300)) {
      if (err) *err = es + tail;
      return val;
    }
    if (round >= 40)
      throw MaxDepthExceeded("tail bound did not fall below tolerance");
    T *= 2.0;
  }
}

// growing interval cut at f0 = t with the exact factor (1 - f0/t)^t: the
// vanishing order t goes into the rule, its constant into the scale
std::vector<Cplx> dim1_truncated_growing(const EvalCtx& ctx,
                                         const Arrangement& arr,
                                         const Chamber& ch, const Q& tq,
                                         const QuadratureSpec& spec,
                                         double* err) {
  const AffineForm& f0 = *arr.f0;
  const double a0 = to_double(f0.a[0]);
  const double tau = to_double(tq);
  const double v = to_double(ch.vertices[0][0]);
  const Cplx Av = arr.weight(vanishing_at(arr, ch.vertices[0])) - Cplx(1.0);
  const double tcut = (tau - to_double(f0.c)) / a0;
  const double lo = std::min(v, tcut), hi = std::max(v, tcut);
  // (1 - f0/tau)^tau == (|a0| (cut_dist) / tau)^tau exactly: the vanishing
  // order goes into the rule, the constant into the scale, nothing per node
  const Cplx A = (a0 > 0.0) ? Av : Cplx(tau);
  const Cplx B = (a0 > 0.0) ? Cplx(tau) : Av;
  const Cplx Adiv = (a0 > 0.0) ? Av : Cplx(0.0);
  const Cplx Bdiv = (a0 > 0.0) ? Cplx(0.0) : Av;
  const Cplx log_extra(tau * (std::log(std::abs(a0)) - std::log(tau)));
  EvalCtx plain = ctx;
  plain.tlev = 0.0;
  auto g = [&](double t) {
    std::vector<Cplx> w = eval_vec(plain, {t});
    const Cplx m =
        std::exp(-Adiv * std::log(t - lo) - Bdiv * std::log(hi - t));
    for (Cplx& z : w) z *= m;
    return w;
  };
  return segment_integral(lo, hi, A, B, static_cast<int>(ctx.forms->size()),
                          g, spec, err, log_extra);
}

// ---------------------------------------------------------------------------
// dimension 2: decompose the (possibly cut) polygon into x-strips whose top
// and bottom are single walls; Gauss-Jacobi across, tanh-sinh along

struct PolyCtx {
  std::vector<AffineForm> forms;  // bounding forms (restricted coordinates)
  std::vector<int> signs;
  std::vector<int> wall_idx;      // arrangement index, -1 for the cut face
  QMat verts;
};

struct Strip {
  Q x0, x1;
  int lo = -1, hi = -1;  // indices into PolyCtx.forms
};

std::vector<Strip> build_strips(const PolyCtx& P) {
  std::vector<Q> xs;
  for (const QVec& v : P.verts) xs.push_back(v[0]);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Strip> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Strip s;
    s.x0 = xs[i];
    s.x1 = xs[i + 1];
    const Q xm = Q((s.x0 + s.x1) / 2);
    bool have_lo = false, have_hi = false;
    Q ylo(0), yhi(0);
    for (std::size_t j = 0; j < P.forms.size(); ++j) {
      const AffineForm& f = P.forms[j];
      if (f.a[1] == 0) continue;
      const Q yj = Q(-(f.a[0] * xm + f.c) / f.a[1]);
      const bool lower = (P.signs[j] > 0) == (f.a[1] > 0);
      if (lower) {
        if (!have_lo || yj > ylo) {
          ylo = yj;
          s.lo = static_cast<int>(j);
          have_lo = true;
        }
      } else {
        if (!have_hi || yj < yhi) {
          yhi = yj;
          s.hi = static_cast<int>(j);
          have_hi = true;
        }
      }
    }
    if (!have_lo || !have_hi || !(ylo < yhi))
      throw Error("strip of the integration polygon is degenerate");
    out.push_back(s);
  }
  if (out.empty()) throw Error("integration polygon has no x-extent");
  return out;
}

// exponent data of one inner wall: what goes into the rule, what gets
// divided out of the evaluated integrand, and any constant scale
struct InnerSide {
  Cplx exponent{0.0};  // rule weight power
  Cplx divide{0.0};    // power present in the evaluated integrand
  double log_extra = 0.0;
  bool is_cut = false;
};

InnerSide inner_side(const Arrangement& arr, const PolyCtx& P, int form_idx,
                     double tlev) {
  InnerSide side;
  const int wi = P.wall_idx[form_idx];
  if (wi >= 0) {
    side.exponent = side.divide = arr.weight(wi) - Cplx(1.0);
    return side;
  }
  side.is_cut = true;
  if (tlev > 0.0) {
    // (1 - f0/t)^t == (|f0_y| (wall_dist) / t)^t exactly along the inner
    // coordinate, which is always the last one
    const double ay = std::abs(to_double(arr.f0->a.back()));
    side.exponent = Cplx(tlev);
    side.log_extra = tlev * (std::log(ay) - std::log(tlev));
  }
  return side;
}

std::vector<Cplx> strip_integral(const EvalCtx& ctx, const Arrangement& arr,
                                 const PolyCtx& P, const Strip& S,
                                 double tlev, const QuadratureSpec& spec,
                                 double* err) {
  const int nv = static_cast<int>(ctx.forms->size());
  const InnerSide lo = inner_side(arr, P, S.lo, tlev);
  const InnerSide hi = inner_side(arr, P, S.hi, tlev);
  // when the cut bounds this strip its factor lives in the rule; otherwise
  // it stays a smooth per-point factor
  EvalCtx inner_ctx = ctx;
  if (lo.is_cut || hi.is_cut) inner_ctx.tlev = 0.0;
  const Cplx A = lo.exponent, B = hi.exponent;
  const Cplx log_extra(lo.log_extra + hi.log_extra);

  const AffineForm& flo = P.forms[S.lo];
  const AffineForm& fhi = P.forms[S.hi];
  const double lo_ax = to_double(flo.a[0]), lo_ay = to_double(flo.a[1]),
               lo_c = to_double(flo.c);
  const double hi_ax = to_double(fhi.a[0]), hi_ay = to_double(fhi.a[1]),
               hi_c = to_double(fhi.c);

  auto rule_pass = [&](double x, double L, double U, int m) {
    const Rule1D& R = jacobi_rule(A, B, m);
    const Cplx base_log =
        (A + B + Cplx(1.0)) * std::log(U - L) + log_extra;
    std::vector<Cplx> acc(nv, Cplx(0.0));
    for (std::size_t q = 0; q < R.x.size(); ++q) {
      const double y = L + (U - L) * R.x[q];
      if (y == L || y == U) continue;  // node rounded onto a wall
      std::vector<Cplx> gv = eval_vec(inner_ctx, {x, y});
      const Cplx mlt =
          R.w[q] * std::exp(base_log - lo.divide * std::log(y - L) -
                            hi.divide * std::log(U - y));
      for (int k = 0; k < nv; ++k) acc[k] += mlt * gv[k];
    }
    return acc;
  };

  const int m1 = spec.nodes, m2 = (3 * spec.nodes) / 2 + 2;
  auto inner = [&](double x) {
    const double L = -(lo_ax * x + lo_c) / lo_ay;
    const double U = -(hi_ax * x + hi_c) / hi_ay;
    // near a tip vertex the slice is too thin for its nodes to stay off the
    // walls; its true contribution is far below any tolerance in use
    if (!(U - L > 1e-11 * (std::abs(L) + std::abs(U) + 1.0)))
      return std::vector<Cplx>(nv, Cplx(0.0));
    const std::vector<Cplx> v1 = rule_pass(x, L, U, m1);
    std::vector<Cplx> v2 = rule_pass(x, L, U, m2);
    if (vdiff(v1, v2) <= 0.1 * spec.tol * std::max(vnorm(v2), 1e-300))
      return v2;
    // a wall just beyond an end of this slice defeats the fixed rules (they
    // agree only on the walls the slice itself touches): go adaptive
    QuadratureSpec fine = spec;
    fine.tol = 0.1 * spec.tol;
    fine.max_depth = std::max(spec.max_depth, 60);
    auto g = [&](double y) {
      std::vector<Cplx> gv = eval_vec(inner_ctx, {x, y});
      const Cplx mlt = std::exp(-lo.divide * std::log(y - L) -
                                hi.divide * std::log(U - y));
      for (Cplx& z : gv) z *= mlt;
      return gv;
    };
    double fe = 0.0;
    return segment_integral(L, U, A, B, nv, g, fine, &fe, log_extra);
  };

  const double x0 = to_double(S.x0), x1 = to_double(S.x1);
  QuadratureSpec outer = spec;
  outer.tol = 0.5 * spec.tol;
  double de_err = 0.0;
  std::vector<Cplx> val = de_integral(x0, x1, nv, inner, outer, &de_err);
  if (err) *err = de_err + 0.1 * spec.tol * vnorm(val);
  return val;
}

PolyCtx polygon_of_chamber(const Arrangement& arr, const Chamber& ch) {
  PolyCtx P;
  for (int i = 0; i < arr.size(); ++i) {
    P.forms.push_back(arr.form(i));
    P.signs.push_back(ch.signs[i]);
    P.wall_idx.push_back(i);
  }
  P.verts = ch.vertices;
  return P;
}

// chamber cut by {f0 <= t}; vertices recomputed exactly
PolyCtx polygon_cut(const Arrangement& arr, const Chamber& ch, const Q& t) {
  PolyCtx P = polygon_of_chamber(arr, ch);
  AffineForm cut;
  cut.a = arr.f0->a;
  for (Q& q : cut.a) q = Q(-q);
  cut.c = Q(t - arr.f0->c);
  P.forms.push_back(cut);
  P.signs.push_back(1);
  P.wall_idx.push_back(-1);
  P.verts = chamber_vertices(P.forms, P.signs, arr.dim);
  if (P.verts.empty()) throw Error("cut region has no vertices");
  return P;
}

// chamber cut to the band {lo <= f0 <= hi}
PolyCtx band_cut(const Arrangement& arr, const Chamber& ch, const Q& lo,
                 const Q& hi) {
  PolyCtx P = polygon_of_chamber(arr, ch);
  AffineForm above;  // f0 - lo >= 0
  above.a = arr.f0->a;
  above.c = Q(arr.f0->c - lo);
  P.forms.push_back(std::move(above));
  P.signs.push_back(1);
  P.wall_idx.push_back(-1);
  AffineForm below;  // hi - f0 >= 0
  below.a = arr.f0->a;
  for (Q& q : below.a) q = Q(-q);
  below.c = Q(hi - arr.f0->c);
  P.forms.push_back(std::move(below));
  P.signs.push_back(1);
  P.wall_idx.push_back(-1);
  P.verts = chamber_vertices(P.forms, P.signs, arr.dim);
  if (P.verts.empty()) throw Error("band region has no vertices");
  return P;
}

std::vector<Cplx> dim2_region(const EvalCtx& ctx, const Arrangement& arr,
                              const PolyCtx& P, double tlev,
                              const QuadratureSpec& spec, double* err) {
  const int nv = static_cast<int>(ctx.forms->size());
  std::vector<Cplx> total(nv, Cplx(0.0));
  double esum = 0.0;
  for (const Strip& S : build_strips(P)) {
    double e = 0.0;
    const std::vector<Cplx> v = strip_integral(ctx, arr, P, S, tlev, spec, &e);
    for (int k = 0; k < nv; ++k) total[k] += v[k];
    esum += e;
  }
  if (err) *err = esum;
  return total;
}

// ---------------------------------------------------------------------------
// dimension 3, best effort: tanh-sinh over slabs of the first coordinate,
// exact polygon sections handled by the 2-d machinery

AffineForm restrict_first(const AffineForm& f, const Q& x) {
  AffineForm r;
  r.a.assign(f.a.begin() + 1, f.a.end());
  r.c = Q(f.c + f.a[0] * x);
  return r;
}

std::vector<Cplx> dim3_region(const EvalCtx& ctx, const Arrangement& arr,
                              const PolyCtx& P, double tlev,
                              const QuadratureSpec& spec, double* err) {
  const int nv = static_cast<int>(ctx.forms->size());
  std::vector<Q> xs;
  for (const QVec& v : P.verts) xs.push_back(v[0]);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto section = [&](double xd) {
    const Q x = q_from_double(xd);
    PolyCtx S;
    for (std::size_t j = 0; j < P.forms.size(); ++j) {
      AffineForm r = restrict_first(P.forms[j], x);
      if (r.a[0] == 0 && r.a[1] == 0) continue;  // slice-parallel wall
      S.forms.push_back(std::move(r));
      S.signs.push_back(P.signs[j]);
      S.wall_idx.push_back(P.wall_idx[j]);
    }
    S.verts = chamber_vertices(S.forms, S.signs, 2);
    if (S.verts.empty()) throw Error("slab section is empty");
    EvalCtx sub = ctx;
    sub.prefix.push_back(xd);
    double se = 0.0;
    return dim2_region(sub, arr, S, tlev, spec, &se);
  };

  std::vector<Cplx> total(nv, Cplx(0.0));
  double esum = 0.0;
  QuadratureSpec outer = spec;
  outer.tol = 0.5 * spec.tol;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    double e = 0.0;
    const std::vector<Cplx> v =
        de_integral(to_double(xs[i]), to_double(xs[i + 1]), nv, section,
                    outer, &e);
    for (int k = 0; k < nv; ++k) total[k] += v[k];
    esum += e;
  }
  if (err) *err = esum;
  return total;
}

std::vector<Cplx> region_dispatch(const EvalCtx& ctx, const Arrangement& arr,
                                  const PolyCtx& P, double tlev,
                                  const QuadratureSpec& spec, double* err) {
  if (arr.dim == 2) return dim2_region(ctx, arr, P, tlev, spec, err);
  if (arr.dim == 3) return dim3_region(ctx, arr, P, tlev, spec, err);
  throw Error("integration is supported for dimensions 1 through 3");
}

// growing chamber in dimension 2 or 3: a core region below a base level plus
// constant-width bands of the damping functional.  Within one band e^{-f0}
// varies by at most a fixed factor, so every piece is integrated accurately,
// and the band values decay geometrically: the first band falling below
// tolerance bounds everything beyond it
std::vector<Cplx> growing_by_annuli(const EvalCtx& ctx, const Arrangement& arr,
                                    const Chamber& ch,
                                    const QuadratureSpec& spec, double* err) {
  const AffineForm& f0 = *arr.f0;
  double t0 = 10.0;
  for (const QVec& v : ch.vertices)
    t0 = std::max(t0, to_double(eval_form(f0, v)) + 10.0);
  const double width = 6.0;

  QuadratureSpec inner = spec;
  inner.tol = 0.2 * spec.tol;
  double esum = 0.0;
  std::vector<Cplx> total =
      region_dispatch(ctx, arr, polygon_cut(arr, ch, q_from_double(t0)), 0.0,
                      inner, &esum);
  for (int band = 0; band < 60; ++band) {
    const double lo = t0 + band * width;
    const PolyCtx P =
        band_cut(arr, ch, q_from_double(lo), q_from_double(lo + width));
    double es = 0.0;
    const std::vector<Cplx> val = region_dispatch(ctx, arr, P, 0.0, inner, &es);
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += val[k];
    esum += es;
    const double d = vnorm(val);
    if (d <= 0.3 * spec.tol * std::max(vnorm(total), 1e-300)) {
      if (err) *err = esum + d;
      return total;
    }
  }
  throw MaxDepthExceeded("band contributions did not fall below tolerance");
}

}  // namespace

// ---------------------------------------------------------------------------
// public chamber integrals

std::vector<Cplx> integrate_bounded(const Arrangement& arr, const Chamber& ch,
                                    const std::vector<NForm>& forms,
                                    const std::vector<double>& theta,
                                    bool with_f0, const QuadratureSpec& spec,
                                    double* err) {
  check_spec(spec);
  if (ch.kind != Chamber::Kind::kBounded)
    throw Unbounded("bounded integration called on an unbounded chamber");
  if (with_f0 && !arr.f0) throw ConstantF0("arrangement has no damping functional");
  EvalCtx ctx{&arr, &forms, &theta, with_f0, 0.0, {}};
  if (arr.dim == 1) return dim1_bounded(ctx, arr, ch, spec, err);
  return region_dispatch(ctx, arr, polygon_of_chamber(arr, ch), 0.0, spec, err);
}

std::vector<Cplx> integrate_growing(const Arrangement& arr, const Chamber& ch,
                                    const std::vector<NForm>& forms,
                                    const std::vector<double>& theta,
                                    const QuadratureSpec& spec, double* err) {
  check_spec(spec);
  if (!arr.f0) throw ConstantF0("arrangement has no damping functional");
  if (ch.kind != Chamber::Kind::kGrowing)
    throw NotGrowing("growing integration called on a chamber that does not grow");
  EvalCtx ctx{&arr, &forms, &theta, true, 0.0, {}};
  if (arr.dim == 1) return dim1_growing(ctx, arr, ch, spec, err);
  return growing_by_annuli(ctx, arr, ch, spec, err);
}

std::vector<Cplx> integrate_truncated(const Arrangement& arr,
                                      const Chamber& ch,
                                      const std::vector<NForm>& forms,
                                      const std::vector<double>& theta,
                                      const Q& t, const QuadratureSpec& spec,
                                      double* err) {
  check_spec(spec);
  if (!arr.f0) throw ConstantF0("arrangement has no damping functional");
  if (t <= truncation_threshold(arr))
    throw TThreshold("truncation level does not dominate the vertex values");
  if (ch.kind == Chamber::Kind::kOtherUnbounded)
    throw NotGrowing("truncated integration needs a bounded or growing chamber");
  const double tau = to_double(t);
  EvalCtx ctx{&arr, &forms, &theta, false, tau, {}};
  if (arr.dim == 1) {
    if (ch.kind == Chamber::Kind::kBounded) return dim1_bounded(ctx, arr, ch, spec, err);
    return dim1_truncated_growing(ctx, arr, ch, t, spec, err);
  }
  if (ch.kind == Chamber::Kind::kBounded)
    return region_dispatch(ctx, arr, polygon_of_chamber(arr, ch), tau, spec, err);
  return region_dispatch(ctx, arr, polygon_cut(arr, ch, t), tau, spec, err);
}

}  // namespace pmdet
