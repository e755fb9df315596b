#ifndef PMDET_QUADRATURE_HPP
#define PMDET_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "pmdet/chambers.hpp"
#include "pmdet/forms.hpp"
#include "pmdet/geometry.hpp"

namespace pmdet {

struct QuadratureSpec {
  double tol = 1e-8;  // target relative tolerance, in (0, 1)
  int nodes = 16;     // base rule size, at least 2
  int max_depth = 12; // subdivision / refinement budget
};

// One-dimensional rule: nodes on (0,1) (or (0,inf) for the Laguerre kind)
// with complex weights.
struct Rule1D {
  std::vector<double> x;
  std::vector<Cplx> w;
};

// Rule integrating s^A (1-s)^B p(s) ds over [0,1] exactly for polynomials of
// degree below m.  Nodes are the Gauss points of the real-part weight; the
// complex weights come from matching shifted-Legendre moments.  Re A, Re B
// must exceed -1.  Rules are cached.
const Rule1D& jacobi_rule(Cplx A, Cplx B, int m);

// Classical Gauss rule for the real weight s^a (1-s)^b (positive weights,
// exact to degree 2m-1).  Kept as an independent cross-check of the moment
// route and as the fast path for real exponents.
Rule1D jacobi_rule_gw(double a, double b, int m);

// Rule integrating u^C e^{-u} p(u) du over (0, inf) exactly below degree m.
const Rule1D& laguerre_rule(Cplx C, int m);

Rule1D laguerre_rule_gw(double c, int m);

using VecFn = std::function<std::vector<Cplx>(double)>;

// Adaptive ∫_a^b (t-a)^A (b-t)^B g(t) dt for a vector of analytic g's.
// exp(log_extra) scales the whole integral (kept in the exponent so huge
// truncation powers cannot overflow).  err gets the accumulated estimate.
std::vector<Cplx> segment_integral(double a, double b, Cplx A, Cplx B,
                                   int vec_len, const VecFn& g,
                                   const QuadratureSpec& spec, double* err,
                                   Cplx log_extra = Cplx(0.0));

// tanh-sinh integration over (a,b); integrable endpoint singularities are
// fine since no endpoint is ever evaluated.
std::vector<Cplx> de_integral(double a, double b, int vec_len, const VecFn& g,
                              const QuadratureSpec& spec, double* err);

// ---------------------------------------------------------------------------
// Chamber integrals.  All return the plain integral against d^n t (standard
// orientation); labeling signs are applied by the period-matrix layer.

// ∫_Δ U phi_k (times e^{-f0} when with_f0) over a bounded chamber.
std::vector<Cplx> integrate_bounded(const Arrangement& arr, const Chamber& ch,
                                    const std::vector<NForm>& forms,
                                    const std::vector<double>& theta,
                                    bool with_f0, const QuadratureSpec& spec,
                                    double* err);

// ∫_Δ e^{-f0} U phi_k over a growing chamber: truncated at f0 = T with T
// raised until a sampled tail bound (|integrand| <= C (1+f0)^D e^{-f0}, C
// from the cross-section with a safety factor) drops below tolerance.
std::vector<Cplx> integrate_growing(const Arrangement& arr, const Chamber& ch,
                                    const std::vector<NForm>& forms,
                                    const std::vector<double>& theta,
                                    const QuadratureSpec& spec, double* err);

// ∫ over the chamber cut at {f0 <= t} of (1-f0/t)^t U phi_k with the
// positive branch; the cut face carries the exact vanishing order t.
std::vector<Cplx> integrate_truncated(const Arrangement& arr,
                                      const Chamber& ch,
                                      const std::vector<NForm>& forms,
                                      const std::vector<double>& theta,
                                      const Q& t, const QuadratureSpec& spec,
                                      double* err);

}  // namespace pmdet

#endif
