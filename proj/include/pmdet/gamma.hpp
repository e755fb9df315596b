#ifndef PMDET_GAMMA_HPP
#define PMDET_GAMMA_HPP

#include <complex>

namespace pmdet {

using Cplx = std::complex<double>;

// Log-gamma on C minus the poles (Lanczos approximation, reflection for
// Re z < 1/2).  The imaginary part is NOT the principal branch promise;
// only exp(clgamma) and integer multiples are meaningful, which is all the
// closed-form products need.
Cplx clgamma(Cplx z);

Cplx cgamma(Cplx z);

// Euler beta via log-gamma.
Cplx cbeta(Cplx a, Cplx b);

// True iff z is within tol of a pole of gamma (0, -1, -2, ...).
bool near_gamma_pole(Cplx z, double tol = 1e-9);

}  // namespace pmdet

#endif
