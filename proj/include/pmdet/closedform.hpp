#ifndef PMDET_CLOSEDFORM_HPP
#define PMDET_CLOSEDFORM_HPP

#include <vector>

#include "pmdet/chambers.hpp"
#include "pmdet/geometry.hpp"

namespace pmdet {

// One Gamma factor of an arrangement beta-function, kept for audit output.
struct BetaFactor {
  bool at_infinity = false;
  bool denominator = false;
  std::vector<int> support;  // affine hyperplane indices; infinity implicit
  Cplx arg;                  // argument handed to Gamma
  int vol = 0;               // exponent
};

struct BetaResult {
  Cplx value;
  std::vector<BetaFactor> factors;  // positive-volume factors only
};

// Product over the ordinary projective edges of Gamma(weight(F)+1)^vol
// divided by the product over the edges at infinity of
// Gamma(-weight(F)+1)^vol.  Zero-volume edges contribute nothing.  Throws
// GammaPole naming the offending edge.
BetaResult beta_function(const Arrangement& arr);

// The damped variant: the denominator is restricted to the edges at
// infinity lying inside the projective closure of {f0 = 0}, and every
// discrete volume is taken in the arrangement truncated by a wall
// {f0 = level} above the default threshold (the factors are independent of
// the level).  Supports are reported in the original numbering, without
// the wall.
BetaResult beta_function_relative(const Arrangement& arr);

// Vertices of the chamber closure where |f_i| attains its maximum (rows;
// they span the highest-dimensional critical face).  Throws Unbounded when
// the recession cone does not kill the direction of f_i.
QMat external_support(const Arrangement& arr, const Chamber& ch, int i);

// Vertices minimizing f0 over the closure of a bounded or growing chamber,
// with the minimum value.  Throws UnboundedBelow otherwise.
struct SupportFace {
  QMat points;
  Q min;
};
SupportFace support_face_f0(const Arrangement& arr, const Chamber& ch);

// One extremal critical value.
struct CriticalRecord {
  int chamber = -1;     // filled in by critical_product
  int hyperplane = -1;  // -1: the damping factor e^{-f0(support face)}
  bool trace_path = false;
  QMat support;  // extremal points (chart coordinates on the trace path)
  Cplx value;
};

// Critical value of hyperplane i on the chamber under the branch angles
// theta.  When |f_i| is unbounded there, the value moves to the trace of
// the chamber at infinity (needs f0 and a growing chamber); without the
// damping functional that case throws Unbounded instead.
CriticalRecord critical_value(const Arrangement& arr, const Chamber& ch,
                              int i, const std::vector<double>& theta,
                              bool with_f0);

struct CriticalProduct {
  Cplx value;
  std::vector<CriticalRecord> records;
};

// Product of all extremal critical values over the bounded chambers
// (with_f0 false), or over the bounded and growing chambers with their
// damping factors (with_f0 true).  theta_override[j], when nonempty,
// replaces the canonical branch angles of chambers[j].
CriticalProduct critical_product(
    const Arrangement& arr, const std::vector<Chamber>& chambers,
    bool with_f0,
    const std::vector<std::vector<double>>& theta_override = {});

}  // namespace pmdet

#endif
