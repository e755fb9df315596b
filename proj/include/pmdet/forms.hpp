#ifndef PMDET_FORMS_HPP
#define PMDET_FORMS_HPP

#include <vector>

#include "pmdet/geometry.hpp"
#include "pmdet/nbc.hpp"

namespace pmdet {

// One logarithmic term  coeff * df_i / f_i.
struct LogTerm {
  int index;
  Cplx coeff;
};

// Logarithmic one-form attached to a lattice edge: one term per supporting
// hyperplane, weighted by that hyperplane's exponent.
using LogOneForm = std::vector<LogTerm>;

// The one-form of the edge cut out by `support` (ascending, and it must be
// the full support of the intersection).  Throws EdgeNotInLattice otherwise.
LogOneForm edge_one_form(const Arrangement& arr,
                         const std::vector<int>& support);

// Expanded logarithmic n-form: sum over strictly increasing index tuples of
// coeff * df/f ^ ... ^ df/f.  `det` caches the determinant of the tuple's
// linear parts, so the coefficient against dx_1^...^dx_n at a point x is
// coeff * det / prod_k f_k(x).
struct NTerm {
  std::vector<int> tuple;
  Cplx coeff;
  Q det;
};

struct NForm {
  std::vector<NTerm> terms;  // tuples strictly increasing, in lex order
};

// Wedge product of one-forms, expanded and normalized: permutation signs are
// absorbed into the coefficients, tuples whose linear parts are dependent
// (repeats included) vanish and are dropped, coefficients of equal tuples
// are merged.
NForm wedge_expand(const Arrangement& arr,
                   const std::vector<LogOneForm>& factors);

// The n-form of a base: wedge of the one-forms of its flag edges, vertex
// innermost.
NForm basis_n_form(const Arrangement& arr, const std::vector<int>& base);

// Coefficient of phi against dx_1 ^ ... ^ dx_n at a point off the
// hyperplanes.  Throws PointOnHyperplane.
Cplx nform_coefficient(const Arrangement& arr, const NForm& phi,
                       const QVec& x);
Cplx nform_coefficient(const Arrangement& arr, const NForm& phi,
                       const std::vector<double>& x);

// The same coefficient for a base's n-form, straight from the flag: the
// determinant of the matrix whose rows are sum_i coeff_i a_i / f_i(x) over
// the flag edges.  Independent of the wedge expansion; used to cross-check.
Cplx flag_coefficient(const Arrangement& arr, const std::vector<int>& base,
                      const QVec& x);

// Cohomology bases, one n-form per labeling base, in the same lex order the
// labelings use.
std::vector<NForm> phi_set(const Arrangement& arr);
std::vector<NForm> phi_set_f0(const Arrangement& arr);

// Branch of arg f_i over a chamber with the given sign vector: 0 where f_i
// is positive, pi where it is negative.
std::vector<double> branch_angles(const std::vector<int>& signs);

// U(x) = prod_i f_i(x)^{alpha_i} under the given branch angles, computed as
// exp(sum_i alpha_i (log|f_i(x)| + i theta_i)).  Throws PointOnHyperplane.
Cplx master_value(const Arrangement& arr, const std::vector<double>& theta,
                  const std::vector<double>& x);
Cplx master_value(const Arrangement& arr, const std::vector<double>& theta,
                  const QVec& x);

// Full integrand [e^{-f0(x)}] * U(x) * (coefficient of phi at x).
Cplx integrand_value(const Arrangement& arr, const std::vector<double>& theta,
                     const NForm& phi, const std::vector<double>& x,
                     bool with_f0);
Cplx integrand_value(const Arrangement& arr, const std::vector<double>& theta,
                     const NForm& phi, const QVec& x, bool with_f0);

}  // namespace pmdet

#endif
