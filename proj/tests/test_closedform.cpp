#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pmdet/closedform.hpp"
#include "pmdet/errors.hpp"
#include "pmdet/forms.hpp"
#include "pmdet/gamma.hpp"

using namespace pmdet;

namespace {

constexpr double kPi = std::numbers::pi;

AffineForm form(QVec a, Q c) { return {std::move(a), std::move(c)}; }

Arrangement points_on_line(const QVec& z, const std::vector<Cplx>& w) {
  Arrangement arr;
  arr.dim = 1;
  for (std::size_t i = 0; i < z.size(); ++i)
    arr.hyperplanes.push_back({form({Q(1)}, -z[i]), w[i]});
  return arr;
}

// x = 0, x = 1, y = 0: two parallel walls and a floor.
Arrangement parallels(const std::vector<Cplx>& w) {
  Arrangement arr;
  arr.dim = 2;
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(0)), w[0]});
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(-1)), w[1]});
  arr.hyperplanes.push_back({form({Q(0), Q(1)}, Q(0)), w[2]});
  return arr;
}

// Four lines in general position: x, y, x+y-1, 2x-y-3.
Arrangement generic4(const std::vector<Cplx>& w) {
  Arrangement arr;
  arr.dim = 2;
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(0)), w[0]});
  arr.hyperplanes.push_back({form({Q(0), Q(1)}, Q(0)), w[1]});
  arr.hyperplanes.push_back({form({Q(1), Q(1)}, Q(-1)), w[2]});
  arr.hyperplanes.push_back({form({Q(2), Q(-1)}, Q(-3)), w[3]});
  return arr;
}

// The unit square cell: x = 0, x = 1, y = 0, y = 1.
Arrangement box(const std::vector<Cplx>& w) {
  Arrangement arr;
  arr.dim = 2;
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(0)), w[0]});
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(-1)), w[1]});
  arr.hyperplanes.push_back({form({Q(0), Q(1)}, Q(0)), w[2]});
  arr.hyperplanes.push_back({form({Q(0), Q(1)}, Q(-1)), w[3]});
  return arr;
}

std::vector<Cplx> varied_weights(int p) {
  std::vector<Cplx> w;
  for (int i = 0; i < p; ++i)
    w.push_back(Cplx(0.4 + 0.17 * i, 0.25 - 0.11 * i));
  return w;
}

const Chamber& find_chamber(const std::vector<Chamber>& cs,
                            const std::vector<int>& signs) {
  for (const Chamber& ch : cs)
    if (ch.signs == signs) return ch;
  REQUIRE(false);
  return cs.front();
}

void check_close(Cplx got, Cplx want, double tol) {
  CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}

// Branch value mag^a e^{i theta a}.
Cplx bv(Cplx a, double mag, double theta) {
  return std::exp(a * Cplx(std::log(mag), theta));
}

}  // namespace

TEST_CASE("beta of points on a line is the gamma ratio") {
  const auto w = varied_weights(3);
  const auto arr = points_on_line({Q(0), Q(1), Q(3)}, w);
  const BetaResult b = beta_function(arr);
  const Cplx want = cgamma(w[0] + 1.0) * cgamma(w[1] + 1.0) *
                    cgamma(w[2] + 1.0) /
                    cgamma(w[0] + w[1] + w[2] + 1.0);
  check_close(b.value, want, 1e-12);
  CHECK(b.factors.size() == 4);  // three vertices over one point at infinity
}

TEST_CASE("beta in general position matches the closed power") {
  const auto w = varied_weights(4);
  auto arr = generic4(w);
  const Cplx sum = w[0] + w[1] + w[2] + w[3];
  Cplx top(1.0);
  for (const Cplx& a : w) top *= cgamma(a + 1.0);
  const Cplx ratio = top / cgamma(sum + 1.0);
  check_close(beta_function(arr).value, ratio * ratio, 1e-12);

  // A damping direction parallel to no line: the denominator empties out,
  // and the bounding level cuts one extra segment from every line.
  arr.f0 = form({Q(1), Q(2)}, Q(0));
  check_close(beta_function_relative(arr).value, top * top * top, 1e-12);
}

TEST_CASE("relative beta of two damped points keeps only the numerator") {
  const auto w = varied_weights(2);
  auto arr = points_on_line({Q(0), Q(1)}, w);
  arr.f0 = form({Q(2)}, Q(0));
  const Cplx top = cgamma(w[0] + 1.0) * cgamma(w[1] + 1.0);
  check_close(beta_function_relative(arr).value, top, 1e-12);
  check_close(beta_function(arr).value, top / cgamma(w[0] + w[1] + 1.0),
              1e-12);
}

TEST_CASE("zero weights give unit beta") {
  const auto arr = generic4(std::vector<Cplx>(4, Cplx(0.0)));
  check_close(beta_function(arr).value, Cplx(1.0), 1e-12);
}

TEST_CASE("gamma poles are reported, not masked") {
  const auto arr = points_on_line({Q(0), Q(1)}, {Cplx(-1, 0), Cplx(0.5, 0)});
  CHECK_THROWS_AS(beta_function(arr), GammaPole);
}

TEST_CASE("external support picks the farthest face") {
  const auto pts = points_on_line({Q(0), Q(1), Q(3)}, varied_weights(3));
  const auto cs = enumerate_chambers(pts);
  const Chamber& mid = find_chamber(cs, {1, -1, -1});  // (0, 1)
  CHECK(external_support(pts, mid, 0) == QMat{{Q(1)}});
  CHECK(external_support(pts, mid, 1) == QMat{{Q(0)}});
  CHECK(external_support(pts, mid, 2) == QMat{{Q(0)}});
  const Chamber& tail = find_chamber(cs, {1, 1, 1});  // (3, oo)
  CHECK_THROWS_AS(external_support(pts, tail, 0), Unbounded);

  // |x| constant on the far wall of the unit square: a one-dimensional
  // critical face, both its vertices reported.
  const auto sq = box(varied_weights(4));
  const auto sq_cs = enumerate_chambers(sq);
  const Chamber& cell = find_chamber(sq_cs, {1, -1, 1, -1});
  const QMat far = external_support(sq, cell, 0);
  REQUIRE(far.size() == 2);
  CHECK(far[0][0] == Q(1));
  CHECK(far[1][0] == Q(1));
}

TEST_CASE("support face minimizes the damping functional") {
  auto pts = points_on_line({Q(0), Q(1), Q(3)}, varied_weights(3));
  pts.f0 = form({Q(1)}, Q(0));
  const auto cs = enumerate_chambers(pts);
  const SupportFace right = support_face_f0(pts, find_chamber(cs, {1, 1, 1}));
  CHECK(right.min == Q(3));
  CHECK(right.points == QMat{{Q(3)}});
  const SupportFace mid = support_face_f0(pts, find_chamber(cs, {1, -1, -1}));
  CHECK(mid.min == Q(0));
  CHECK_THROWS_AS(support_face_f0(pts, find_chamber(cs, {-1, -1, -1})),
                  UnboundedBelow);

  auto sq = box(varied_weights(4));
  sq.f0 = form({Q(0), Q(1)}, Q(0));
  const auto sq_cs = enumerate_chambers(sq);
  const SupportFace floor =
      support_face_f0(sq, find_chamber(sq_cs, {1, -1, 1, -1}));
  CHECK(floor.min == Q(0));
  CHECK(floor.points.size() == 2);
}

TEST_CASE("critical values on the bounded path") {
  const auto w = varied_weights(3);
  const auto arr = points_on_line({Q(0), Q(1), Q(3)}, w);
  const auto cs = enumerate_chambers(arr);
  const Chamber& mid = find_chamber(cs, {1, -1, -1});
  const auto theta = branch_angles(mid.signs);
  const CriticalRecord r = critical_value(arr, mid, 2, theta, false);
  CHECK(!r.trace_path);
  CHECK(r.support == QMat{{Q(0)}});
  check_close(r.value, bv(w[2], 3.0, kPi), 1e-13);
}

TEST_CASE("critical values on the trace at infinity") {
  const auto w = varied_weights(3);
  auto arr = parallels(w);
  arr.f0 = form({Q(1), Q(2)}, Q(0));
  const auto cs = enumerate_chambers(arr);
  const Chamber& strip = find_chamber(cs, {1, -1, 1});
  REQUIRE(strip.kind == Chamber::Kind::kGrowing);
  const auto theta = branch_angles(strip.signs);

  const CriticalRecord wall = critical_value(arr, strip, 0, theta, true);
  CHECK(!wall.trace_path);
  check_close(wall.value, Cplx(1.0), 1e-13);
  check_close(critical_value(arr, strip, 1, theta, true).value,
              bv(w[1], 1.0, kPi), 1e-13);

  // y grows along the strip; its value moves to y/(x+2y) at infinity.
  const CriticalRecord up = critical_value(arr, strip, 2, theta, true);
  CHECK(up.trace_path);
  check_close(up.value, bv(w[2], 0.5, 0.0), 1e-13);

  CHECK_THROWS_AS(critical_value(arr, strip, 2, theta, false), Unbounded);
}

TEST_CASE("three-point product assembles the pairwise branch values") {
  const auto w = varied_weights(3);
  const QVec z = {Q(0), Q(1), Q(3)};
  const auto arr = points_on_line(z, w);
  const auto c = critical_product(arr, enumerate_chambers(arr), false);
  Cplx want(1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double d = to_double(Q(z[j] - z[i]));
      want *= bv(w[i], std::abs(d), d < 0 ? kPi : 0.0);
    }
  check_close(c.value, want, 1e-12);
}

TEST_CASE("damped two-point product matches the closed expression") {
  const auto w = varied_weights(2);
  auto arr = points_on_line({Q(0), Q(1)}, w);
  arr.f0 = form({Q(2)}, Q(0));
  const auto c = critical_product(arr, enumerate_chambers(arr), true);
  const Cplx want = std::exp(Cplx(-2.0)) *        // minima at 0 and 1
                    bv(w[0] + w[1], 0.5, 0.0) *   // both traces worth 1/2
                    bv(w[1], 1.0, kPi);           // z2 - z1 = 1
  check_close(c.value, want, 1e-12);
  REQUIRE(c.records.size() == 6);
  int damp = 0, trace = 0;
  for (const auto& r : c.records) {
    damp += r.hyperplane == -1;
    trace += r.trace_path;
  }
  CHECK(damp == 2);
  CHECK(trace == 2);
}

TEST_CASE("a single bounded segment contributes only the negative phase") {
  const auto w = varied_weights(2);
  const auto arr = points_on_line({Q(0), Q(1)}, w);
  const auto c = critical_product(arr, enumerate_chambers(arr), false);
  check_close(c.value, std::exp(Cplx(0, kPi) * w[1]), 1e-13);
}

TEST_CASE("one full branch turn multiplies the product by e^{2 pi i a}") {
  const auto w = varied_weights(3);
  const auto arr = points_on_line({Q(0), Q(1), Q(3)}, w);
  const auto cs = enumerate_chambers(arr);
  const auto base = critical_product(arr, cs, false);

  std::vector<std::vector<double>> over(cs.size());
  std::size_t j0 = cs.size();
  for (std::size_t j = 0; j < cs.size(); ++j)
    if (cs[j].kind == Chamber::Kind::kBounded) {
      j0 = j;
      break;
    }
  REQUIRE(j0 < cs.size());
  over[j0] = branch_angles(cs[j0].signs);
  over[j0][1] += 2.0 * kPi;
  const auto shifted = critical_product(arr, cs, false, over);
  check_close(shifted.value, base.value * std::exp(Cplx(0, 2.0 * kPi) * w[1]),
              1e-12);
}

TEST_CASE("real weights keep the record magnitudes branch-independent") {
  const std::vector<Cplx> w = {Cplx(0.7, 0), Cplx(1.3, 0), Cplx(0.4, 0)};
  const auto arr = points_on_line({Q(0), Q(1), Q(3)}, w);
  const auto cs = enumerate_chambers(arr);
  const Chamber& mid = find_chamber(cs, {1, -1, -1});
  auto theta = branch_angles(mid.signs);
  for (int i = 0; i < 3; ++i) {
    const Cplx a = critical_value(arr, mid, i, theta, false).value;
    auto up = theta;
    up[i] += 2.0 * kPi;
    const Cplx b = critical_value(arr, mid, i, up, false).value;
    CHECK(std::abs(a) == doctest::Approx(std::abs(b)).epsilon(1e-13));
  }
}

TEST_CASE("scaling the line scales the product by the total weight") {
  const auto w = varied_weights(3);
  const auto arr1 = points_on_line({Q(0), Q(1), Q(3)}, w);
  const auto arr2 = points_on_line({Q(0), Q(2), Q(6)}, w);
  const Cplx c1 = critical_product(arr1, enumerate_chambers(arr1), false).value;
  const Cplx c2 = critical_product(arr2, enumerate_chambers(arr2), false).value;
  const Cplx sum = w[0] + w[1] + w[2];
  check_close(c2, c1 * std::exp(2.0 * sum * std::log(2.0)), 1e-12);
}

TEST_CASE("truncation keeps the trace-bounded records and the minima") {
  const auto w = varied_weights(3);
  auto arr = parallels(w);
  arr.f0 = form({Q(1), Q(2)}, Q(0));
  const auto cs = enumerate_chambers(arr);
  const Chamber& strip = find_chamber(cs, {1, -1, 1});
  const auto theta = branch_angles(strip.signs);

  const Arrangement cut = truncate(arr, default_truncation_level(arr));
  const auto cut_cs = enumerate_chambers(cut);
  const Chamber& boxed = find_chamber(cut_cs, {1, 1, -1, 1});
  REQUIRE(boxed.kind == Chamber::Kind::kBounded);
  const auto theta_cut = branch_angles(boxed.signs);

  for (int i : {0, 1}) {
    const Cplx a = critical_value(arr, strip, i, theta, true).value;
    const Cplx b = critical_value(cut, boxed, i + 1, theta_cut, true).value;
    check_close(a, b, 1e-14);
  }
  CHECK(support_face_f0(arr, strip).min == support_face_f0(cut, boxed).min);
}
