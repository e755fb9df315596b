#include "pmdet/gamma.hpp"

#include <cmath>

namespace pmdet {

namespace {

// Lanczos g = 7, 9 terms.
constexpr double kCoef[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * M_PI);

}  // namespace

Cplx clgamma(Cplx z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(M_PI) - std::log(std::sin(M_PI * z)) - clgamma(1.0 - z);
  }
  z -= 1.0;
  Cplx a = kCoef[0];
  for (int k = 1; k < 9; ++k) a += kCoef[k] / (z + static_cast<double>(k));
  const Cplx t = z + 7.5;
  return kLogSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

Cplx cgamma(Cplx z) { return std::exp(clgamma(z)); }

Cplx cbeta(Cplx a, Cplx b) {
  return std::exp(clgamma(a) + clgamma(b) - clgamma(a + b));
}

bool near_gamma_pole(Cplx z, double tol) {
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

}  // namespace pmdet
