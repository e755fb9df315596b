#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "pmdet/errors.hpp"
#include "pmdet/nbc.hpp"

using namespace pmdet;

namespace {

using IdxSet = std::vector<std::vector<int>>;

AffineForm form(QVec a, Q c) { return {std::move(a), std::move(c)}; }

Arrangement points_on_line(const QVec& z) {
  Arrangement arr;
  arr.dim = 1;
  for (const auto& zi : z)
    arr.hyperplanes.push_back({form({Q(1)}, -zi), Cplx(0.5, 0)});
  return arr;
}

Arrangement triangle() {
  Arrangement arr;
  arr.dim = 2;
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(0)), Cplx(0.5, 0)});
  arr.hyperplanes.push_back({form({Q(0), Q(1)}, Q(0)), Cplx(0.5, 0)});
  arr.hyperplanes.push_back({form({Q(-1), Q(-1)}, Q(1)), Cplx(0.5, 0)});
  return arr;
}

Arrangement parallels() {
  Arrangement arr;
  arr.dim = 2;
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(0)), Cplx(0.5, 0)});
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(-1)), Cplx(0.5, 0)});
  arr.hyperplanes.push_back({form({Q(0), Q(1)}, Q(0)), Cplx(0.5, 0)});
  return arr;
}

// y = 0, y - x = 0, y + x = 0: three concurrent lines.
Arrangement concurrent() {
  Arrangement arr;
  arr.dim = 2;
  arr.hyperplanes.push_back({form({Q(0), Q(1)}, Q(0)), Cplx(0.5, 0)});
  arr.hyperplanes.push_back({form({Q(-1), Q(1)}, Q(0)), Cplx(0.5, 0)});
  arr.hyperplanes.push_back({form({Q(1), Q(1)}, Q(0)), Cplx(0.5, 0)});
  return arr;
}

// The concurrent triple cut by the vertical line x = 1.
Arrangement cross4() {
  Arrangement arr = concurrent();
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(-1)), Cplx(0.5, 0)});
  return arr;
}

// Four lines in general position: x, y, x+y-1, 2x-y-3.
Arrangement generic4() {
  Arrangement arr;
  arr.dim = 2;
  arr.hyperplanes.push_back({form({Q(1), Q(0)}, Q(0)), Cplx(0.5, 0)});
  arr.hyperplanes.push_back({form({Q(0), Q(1)}, Q(0)), Cplx(0.5, 0)});
  arr.hyperplanes.push_back({form({Q(1), Q(1)}, Q(-1)), Cplx(0.5, 0)});
  arr.hyperplanes.push_back({form({Q(2), Q(-1)}, Q(-3)), Cplx(0.5, 0)});
  return arr;
}

int count_kind(const std::vector<Chamber>& cs, Chamber::Kind k) {
  int c = 0;
  for (const auto& ch : cs)
    if (ch.kind == k) ++c;
  return c;
}

// Number of subsets with nonempty intersection and no broken circuit,
// the empty set included.  An independent count of the chambers.
int nbc_subset_count(const Arrangement& arr) {
  const int p = arr.size();
  const auto bcs = broken_circuits(arr);
  int count = 0;
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    QMat a;
    QVec b;
    for (int i = 0; i < p; ++i) {
      if (!(mask & (1u << i))) continue;
      a.push_back(arr.form(i).a);
      b.push_back(-arr.form(i).c);
    }
    if (!affine_solve(std::move(a), std::move(b), arr.dim).nonempty) continue;
    bool clean = true;
    for (const auto& bc : bcs) {
      bool inside = true;
      for (int i : bc)
        if (!(mask & (1u << i))) { inside = false; break; }
      if (inside) { clean = false; break; }
    }
    if (clean) ++count;
  }
  return count;
}

void check_labeling(const Arrangement& arr, const std::vector<Chamber>& cs,
                    const Labeling& lab, bool with_growing) {
  // totality and injectivity over the eligible chambers
  std::set<int> hit(lab.chamber_of.begin(), lab.chamber_of.end());
  CHECK(hit.size() == lab.chamber_of.size());
  int eligible = count_kind(cs, Chamber::Kind::kBounded);
  if (with_growing) eligible += count_kind(cs, Chamber::Kind::kGrowing);
  CHECK(static_cast<int>(hit.size()) == eligible);
  for (std::size_t k = 0; k < lab.bases.size(); ++k) {
    const Chamber& ch = cs[lab.chamber_of[k]];
    CHECK(ch.kind != Chamber::Kind::kOtherUnbounded);
    if (!with_growing) CHECK(ch.kind == Chamber::Kind::kBounded);
    CHECK(flag_adjacent(arr, flag_of_base(arr, lab.bases[k]), ch));
    CHECK((lab.orientation[k] == 1 || lab.orientation[k] == -1));
  }
}

}  // namespace

TEST_CASE("circuits and broken circuits") {
  CHECK(circuits(points_on_line({Q(0), Q(1), Q(3)})).empty());
  CHECK(circuits(triangle()).empty());
  CHECK(circuits(parallels()).empty());
  CHECK(circuits(concurrent()) == IdxSet{{0, 1, 2}});
  CHECK(broken_circuits(concurrent()) == IdxSet{{1, 2}});
  CHECK(circuits(cross4()) == IdxSet{{0, 1, 2}});
  CHECK(circuits(generic4()).empty());
}

TEST_CASE("nbc bases") {
  CHECK(nbc_bases(triangle()) == IdxSet{{0, 1}, {0, 2}, {1, 2}});
  // the broken circuit {1,2} kills one of the six pairs
  CHECK(nbc_bases(cross4()) ==
        IdxSet{{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
  // parallels: pairs {0,1} never meet
  CHECK(nbc_bases(parallels()) == IdxSet{{0, 2}, {1, 2}});
}

TEST_CASE("nbc subsets count the chambers") {
  for (const Arrangement& arr :
       {points_on_line({Q(0), Q(1), Q(3)}), triangle(), parallels(),
        concurrent(), cross4(), generic4()}) {
    CHECK(nbc_subset_count(arr) ==
          static_cast<int>(enumerate_chambers(arr).size()));
  }
}

TEST_CASE("beta nbc bases index the bounded chambers") {
  CHECK(beta_nbc_bases(points_on_line({Q(0), Q(1), Q(3)})) ==
        IdxSet{{1}, {2}});
  CHECK(beta_nbc_bases(triangle()) == IdxSet{{1, 2}});
  CHECK(beta_nbc_bases(concurrent()).empty());
  CHECK(beta_nbc_bases(cross4()) == IdxSet{{1, 3}, {2, 3}});
  // general position: all ascending tuples avoiding the first hyperplane
  CHECK(beta_nbc_bases(generic4()) == IdxSet{{1, 2}, {1, 3}, {2, 3}});
  for (const Arrangement& arr :
       {points_on_line({Q(0), Q(1), Q(3)}), triangle(), parallels(),
        concurrent(), cross4(), generic4()}) {
    CHECK(beta_nbc_bases(arr).size() ==
          static_cast<std::size_t>(
              count_kind(enumerate_chambers(arr), Chamber::Kind::kBounded)));
  }
}

TEST_CASE("beta nbc bases across the truncating wall") {
  Arrangement pts = points_on_line({Q(0), Q(1), Q(3)});
  pts.f0 = form({Q(1)}, Q(0));
  CHECK(beta_nbc_bases_f0(pts) == IdxSet{{0}, {1}, {2}});

  Arrangement tri = triangle();
  tri.f0 = form({Q(1), Q(1)}, Q(0));
  CHECK(beta_nbc_bases_f0(tri) == IdxSet{{0, 1}, {1, 2}});

  Arrangement par = parallels();
  par.f0 = form({Q(1), Q(1)}, Q(0));
  Arrangement cr = cross4();
  cr.f0 = form({Q(1), Q(0)}, Q(0));
  Arrangement gen = generic4();
  gen.f0 = form({Q(1), Q(2)}, Q(0));
  for (const Arrangement* arr : {&pts, &tri, &par, &cr, &gen}) {
    const auto with = beta_nbc_bases_f0(*arr);
    // the plain set embeds, and the count matches bounded plus growing
    for (const auto& b : beta_nbc_bases(*arr))
      CHECK(std::find(with.begin(), with.end(), b) != with.end());
    const auto cs = enumerate_chambers(*arr);
    CHECK(static_cast<int>(with.size()) ==
          count_kind(cs, Chamber::Kind::kBounded) +
              count_kind(cs, Chamber::Kind::kGrowing));
    CHECK(std::is_sorted(with.begin(), with.end()));
    // any level above the threshold gives the same set
    const Q lo = default_truncation_level(*arr);
    for (const Q& level : {lo, Q(lo + 7)}) {
      const Arrangement at = truncate(*arr, level);
      auto direct = beta_nbc_bases(at);
      for (auto& b : direct)
        for (int& i : b) --i;
      CHECK(direct == with);
    }
  }
}

TEST_CASE("flags carry spaces and full supports") {
  const auto flag = flag_of_base(triangle(), {1, 2});
  REQUIRE(flag.size() == 3);
  CHECK(flag[0].space.basis.empty());
  CHECK(flag[0].space.point == QVec{Q(1), Q(0)});
  CHECK(flag[0].support == std::vector<int>{1, 2});
  CHECK(flag[1].space.basis.size() == 1);
  CHECK(flag[1].support == std::vector<int>{2});
  CHECK(flag[2].space.basis.size() == 2);
  CHECK(flag[2].support.empty());

  // a vertex on three lines picks up the extra support
  const auto cf = flag_of_base(cross4(), {1, 3});
  CHECK(cf[0].space.point == QVec{Q(1), Q(1)});
  CHECK(cf[0].support == std::vector<int>{1, 3});
  const auto cf2 = flag_of_base(cross4(), {0, 1});
  CHECK(cf2[0].space.point == QVec{Q(0), Q(0)});
  CHECK(cf2[0].support == std::vector<int>{0, 1, 2});
}

TEST_CASE("bounded labeling of points on a line") {
  const Arrangement arr = points_on_line({Q(0), Q(1), Q(3)});
  const auto cs = enumerate_chambers(arr);
  const Labeling lab = bounded_labeling(arr, cs);
  REQUIRE(lab.bases == IdxSet{{1}, {2}});
  // base {1} takes the segment left of its point, base {2} likewise
  CHECK(cs[lab.chamber_of[0]].vertices == QMat{{Q(0)}, {Q(1)}});
  CHECK(cs[lab.chamber_of[1]].vertices == QMat{{Q(1)}, {Q(3)}});
  // both frames point backwards
  CHECK(lab.orientation == std::vector<int>{-1, -1});
  check_labeling(arr, cs, lab, false);
}

TEST_CASE("growing labeling of points on a line") {
  Arrangement arr = points_on_line({Q(0), Q(1), Q(3)});
  arr.f0 = form({Q(1)}, Q(0));
  const auto cs = enumerate_chambers(arr);
  const Labeling lab = growing_labeling(arr, cs);
  REQUIRE(lab.bases == IdxSet{{0}, {1}, {2}});
  CHECK(cs[lab.chamber_of[0]].vertices == QMat{{Q(0)}, {Q(1)}});
  CHECK(cs[lab.chamber_of[1]].vertices == QMat{{Q(1)}, {Q(3)}});
  CHECK(cs[lab.chamber_of[2]].vertices == QMat{{Q(3)}});
  CHECK(cs[lab.chamber_of[2]].kind == Chamber::Kind::kGrowing);
  // every frame points forward, toward the growth of f0
  CHECK(lab.orientation == std::vector<int>{1, 1, 1});
  check_labeling(arr, cs, lab, true);
}

TEST_CASE("growing labeling of two points") {
  Arrangement arr = points_on_line({Q(0), Q(1)});
  arr.f0 = form({Q(1)}, Q(0));
  const auto cs = enumerate_chambers(arr);
  const Labeling lab = growing_labeling(arr, cs);
  REQUIRE(lab.bases == IdxSet{{0}, {1}});
  CHECK(cs[lab.chamber_of[0]].vertices == QMat{{Q(0)}, {Q(1)}});
  CHECK(cs[lab.chamber_of[1]].rays == QMat{{Q(1)}});
  CHECK(lab.orientation == std::vector<int>{1, 1});
  check_labeling(arr, cs, lab, true);
}

TEST_CASE("labelings of the triangle") {
  Arrangement arr = triangle();
  arr.f0 = form({Q(1), Q(1)}, Q(0));
  const auto cs = enumerate_chambers(arr);

  const Labeling lab = bounded_labeling(arr, cs);
  REQUIRE(lab.bases == IdxSet{{1, 2}});
  CHECK(cs[lab.chamber_of[0]].signs == std::vector<int>{1, 1, 1});
  check_labeling(arr, cs, lab, false);

  const Labeling glab = growing_labeling(arr, cs);
  REQUIRE(glab.bases == IdxSet{{0, 1}, {1, 2}});
  // {x,y} gets the inner triangle, {y, 1-x-y} the growing wedge
  CHECK(cs[glab.chamber_of[0]].signs == std::vector<int>{1, 1, 1});
  CHECK(cs[glab.chamber_of[1]].signs == std::vector<int>{1, 1, -1});
  CHECK(cs[glab.chamber_of[1]].kind == Chamber::Kind::kGrowing);
  CHECK(glab.orientation[0] == 1);
  CHECK(glab.orientation[1] == -1);
  check_labeling(arr, cs, glab, true);
}

TEST_CASE("labelings across fixtures stay bijective and adjacent") {
  Arrangement cr = cross4();
  cr.f0 = form({Q(1), Q(0)}, Q(0));
  Arrangement gen = generic4();
  gen.f0 = form({Q(1), Q(2)}, Q(0));
  Arrangement par = parallels();
  par.f0 = form({Q(1), Q(1)}, Q(0));
  for (const Arrangement* arr : {&cr, &gen, &par}) {
    const auto cs = enumerate_chambers(*arr);
    check_labeling(*arr, cs, bounded_labeling(*arr, cs), false);
    check_labeling(*arr, cs, growing_labeling(*arr, cs), true);
  }
}
