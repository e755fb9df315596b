#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "pmdet/errors.hpp"
#include "pmdet/gamma.hpp"
#include "pmdet/linalg.hpp"
#include "pmdet/lp.hpp"
#include "pmdet/rational.hpp"

using namespace pmdet;

TEST_CASE("rational parse and print") {
  CHECK(parse_rational("3/7") == Q(3, 7));
  CHECK(parse_rational("-2") == Q(-2));
  CHECK(parse_rational("6/4") == Q(3, 2));
  CHECK(parse_rational("0/5") == Q(0));
  CHECK(to_string(Q(3, 2)) == "3/2");
  CHECK(to_string(Q(-5)) == "-5");
  CHECK(to_string(parse_rational("14/-21")) == "-2/3");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK(to_double(Q(1, 4)) == 0.25);
  CHECK(sign(Q(-3, 7)) == -1);
  CHECK(sign(Q(0)) == 0);
}

TEST_CASE("exact determinant, rank, nullspace") {
  QMat a = {{Q(1), Q(2)}, {Q(3), Q(4)}};
  CHECK(det(a) == Q(-2));
  QMat b = {{Q(1), Q(2), Q(3)}, {Q(2), Q(4), Q(6)}, {Q(0), Q(1), Q(1)}};
  CHECK(rank(b) == 2);
  CHECK(det(b) == Q(0));

  QMat c = {{Q(1), Q(1), Q(1)}};
  QMat ns = nullspace(c, 3);
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) CHECK(dot(c[0], v) == Q(0));

  // Empty constraint set: kernel is everything.
  CHECK(nullspace({}, 3).size() == 3);
}

TEST_CASE("affine solve") {
  QMat a = {{Q(1), Q(1)}, {Q(1), Q(-1)}};
  AffineSpace s = affine_solve(a, {Q(1), Q(0)}, 2);
  REQUIRE(s.nonempty);
  CHECK(s.point == QVec{Q(1, 2), Q(1, 2)});
  CHECK(s.basis.empty());

  AffineSpace line = affine_solve({{Q(1), Q(1)}}, {Q(1)}, 2);
  REQUIRE(line.nonempty);
  CHECK(line.basis.size() == 1);
  CHECK(dot({Q(1), Q(1)}, line.point) == Q(1));

  AffineSpace bad =
      affine_solve({{Q(1), Q(1)}, {Q(2), Q(2)}}, {Q(1), Q(3)}, 2);
  CHECK_FALSE(bad.nonempty);
}

TEST_CASE("simplex feasibility and optimum") {
  // max x subject to -x >= -5  ->  x = 5
  LpResult r = solve_lp({}, {}, {{Q(-1)}}, {Q(-5)}, {Q(1)}, 1);
  REQUIRE(r.status == LpResult::Status::kOptimal);
  CHECK(r.value == Q(5));
  CHECK(r.x[0] == Q(5));

  // max x subject to x >= 0 is unbounded
  LpResult u = solve_lp({}, {}, {{Q(1)}}, {Q(0)}, {Q(1)}, 1);
  CHECK(u.status == LpResult::Status::kUnbounded);

  // x >= 1  and  -x >= 0 is infeasible
  LpResult inf =
      solve_lp({}, {}, {{Q(1)}, {Q(-1)}}, {Q(1), Q(0)}, {Q(1)}, 1);
  CHECK(inf.status == LpResult::Status::kInfeasible);
}

TEST_CASE("strict witness") {
  // Open triangle x>0, y>0, 1-x-y>0.
  QMat gt = {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(-1), Q(-1)}};
  QVec rhs = {Q(0), Q(0), Q(-1)};
  auto w = strict_witness({}, {}, gt, rhs, 2);
  REQUIRE(w.has_value());
  CHECK((*w)[0] > 0);
  CHECK((*w)[1] > 0);
  CHECK((*w)[0] + (*w)[1] < 1);

  // On the line x+y=1 with x>0, y>0.
  auto e = strict_witness({{Q(1), Q(1)}}, {Q(1)},
                          {{Q(1), Q(0)}, {Q(0), Q(1)}}, {Q(0), Q(0)}, 2);
  REQUIRE(e.has_value());
  CHECK((*e)[0] + (*e)[1] == Q(1));
  CHECK((*e)[0] > 0);

  // x>0 and -x>0 is empty.
  CHECK_FALSE(
      strict_witness({}, {}, {{Q(1)}, {Q(-1)}}, {Q(0), Q(0)}, 1).has_value());

  // Degenerate: x>0 and -x>-0 (i.e. x<0) with the same bound.
  CHECK_FALSE(strict_witness({{Q(1)}}, {Q(0)}, {{Q(1)}}, {Q(0)}, 1).has_value());
}

TEST_CASE("complex gamma") {
  const double sqrt_pi = std::sqrt(M_PI);
  CHECK(std::abs(cgamma({0.5, 0.0}) - Cplx(sqrt_pi, 0)) < 1e-13 * sqrt_pi);
  CHECK(std::abs(cgamma({1.0, 0.0}) - Cplx(1, 0)) < 1e-13);
  CHECK(std::abs(cgamma({6.0, 0.0}) - Cplx(120, 0)) < 1e-11 * 120);

  // functional equation at a complex point
  const Cplx z{0.3, 0.7};
  CHECK(std::abs(cgamma(z + 1.0) - z * cgamma(z)) < 1e-12);

  // reflection across Re = 1/2 (as exponentials, branch-free)
  const Cplx w{-0.7, 0.2};
  const Cplx lhs = cgamma(w) * cgamma(1.0 - w);
  const Cplx rhs = M_PI / std::sin(M_PI * w);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));

  // against the C library on the real axis
  for (double x : {0.25, 1.75, 3.5, 9.0}) {
    CHECK(std::abs(clgamma({x, 0.0}).real() - std::lgamma(x)) < 1e-12 *
          std::max(1.0, std::abs(std::lgamma(x))));
  }

  const Cplx bb = cbeta({2.5, 0.0}, {3.5, 0.0});
  const double b_ref = std::tgamma(2.5) * std::tgamma(3.5) / std::tgamma(6.0);
  CHECK(std::abs(bb - Cplx(b_ref, 0)) < 1e-12);

  CHECK(near_gamma_pole({0.0, 0.0}));
  CHECK(near_gamma_pole({-3.0 + 1e-12, 0.0}));
  CHECK_FALSE(near_gamma_pole({-3.5, 0.0}));
  CHECK_FALSE(near_gamma_pole({2.0, 0.0}));
  CHECK_FALSE(near_gamma_pole({-1.0, 0.5}));
}
