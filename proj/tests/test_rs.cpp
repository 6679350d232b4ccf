#include <random>

#include "curve_oracles.hpp"
#include "doctest.h"
#include "families.hpp"
#include "germforge/errors.hpp"
#include "germforge/pipeline.hpp"

using namespace germforge;

namespace {

const TheoremBReport& generic_report() {
  static const TheoremBReport rep = theorem_b_report(generic_instance(pipeline_root_order(13)), 8);
  return rep;
}

const CurveSiteReport& site(const TheoremBReport& rep, const std::string& name) {
  for (const auto& s : rep.sites)
    if (s.site == name) return s;
  FAIL("no site " << name);
  throw std::logic_error("unreachable");
}

bool all_zero(const std::vector<Scalar>& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

void check_against_float(const RSData& rs, const ParabolicReport& rep) {
  auto table = oracle::float_parabolic_table(rs);
  REQUIRE(table.size() == rep.directions.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    INFO("direction " << i);
    CHECK(rep.directions[i].index == static_cast<int>(i));
    CHECK(rep.directions[i].r1 == table[i].r1);
    CHECK(rep.directions[i].r2 == table[i].r2);
    CHECK(rep.directions[i].dimension == table[i].dimension);
  }
}

}  // namespace

TEST_CASE("spike site p1: three directions, proportional d") {
  const auto& s = site(generic_report(), "p1");
  REQUIRE(s.rs);
  REQUIRE(s.parabolic);
  const RSData& rs = *s.rs;
  CHECK(rs.family == Family::degenerate_spike);
  CHECK(rs.r == 3);
  REQUIRE(rs.d1.size() == 3);
  REQUIRE(rs.d2.size() == 3);
  bool any = false;
  for (int k = 0; k < 3; ++k) {
    CHECK(rs.d1[k] / rs.lambda == rs.d2[k] / rs.mu);
    any = any || !rs.d1[k].is_zero();
  }
  CHECK(any);
  CHECK(s.parabolic->count == 3);
  check_against_float(rs, *s.parabolic);
  for (const auto& d : s.parabolic->directions) CHECK(d.dimension == 2);
}

TEST_CASE("spike site p2") {
  const auto& s = site(generic_report(), "p2");
  REQUIRE(s.rs);
  CHECK(s.rs->r == 3);
  CHECK(s.parabolic->count == 3);
  check_against_float(*s.rs, *s.parabolic);
}

TEST_CASE("half corner sites: r = c + 1 and vanishing second correction") {
  for (const char* name : {"p3,2", "p4,2"}) {
    INFO(name);
    const auto& s = site(generic_report(), name);
    REQUIRE(s.rs);
    CHECK(s.rs->family == Family::half_corner);
    CHECK(s.rs->r == s.rs->c + 1);
    CHECK(all_zero(s.rs->d2));
    CHECK(s.parabolic->count == s.rs->r);
    check_against_float(*s.rs, *s.parabolic);
    // d_1 = alpha^c z^c with sum over the r-th roots of unity of v^c equal to 0,
    // so the nonzero first-correction signs cannot all be negative.
    int nodes = 0;
    for (const auto& d : s.parabolic->directions) nodes += d.node1;
    CHECK(nodes < s.rs->r);
  }
}

TEST_CASE("restricted map leading coefficient against composition") {
  const auto& s = site(generic_report(), "p1");
  REQUIRE(s.curve);
  // The site lift, recomputed from the resolution.
  Resolution res = resolve_pi0_tilde(generic_instance(pipeline_root_order(13)));
  const DivisorForm& f = res.site("p1").node->form;
  StraightenedPair sp = straighten_pair(f, *s.curve);
  CHECK(sp.r == s.rs->r);
  // Along C the axis coordinate of f o C is t + h t^(r+1) + ...
  FormalCurve c = *s.curve;
  std::array<oracle::TermMap, 3> p;
  p[c.axis][oracle::Exps{0, 0, 1}] = Scalar(1);
  for (int i = 0; i < 2; ++i) {
    const auto& coords = i == 0 ? c.x : c.y;
    for (std::size_t m = 1; m < coords.size(); ++m)
      if (!coords[m].is_zero()) p[c.other(i)][oracle::Exps{0, 0, static_cast<int>(m)}] = coords[m];
  }
  int N = sp.r + 2;
  oracle::TermMap img = oracle::naive_compose(oracle::to_map(f.germ().component(c.axis).truncated(N)), p, N);
  int val = N + 1;
  Scalar lead;
  for (const auto& [e, v] : img) {
    Scalar w = v - (e[2] == 1 ? Scalar(1) : Scalar(0));
    if (!w.is_zero() && e[2] < val) {
      val = e[2];
      lead = w;
    }
  }
  CHECK(val == sp.r + 1);
  CHECK(lead == sp.h);
}

TEST_CASE("random non-simple half corners reduce to r = c + 1") {
  std::mt19937 rng(11);
  int done = 0;
  for (int i = 0; i < 12 && done < 4; ++i) {
    DivisorForm f = families::half_corner(rng, 14, 1);
    SingularityClass cls = classify_germ(f);
    if (cls.gamma.is_zero()) continue;
    Scalar ratio = cls.q1[1] / cls.gamma;
    if (ratio.is_rational() && ratio.re() > 0 && ratio.re().get_den() == 1) continue;
    INFO(cls.summary());
    FormalCurve c = half_corner_curve(f, cls, 10);
    StraightenedPair sp = straighten_pair(f, c);
    RSData rs = rs_reduce(sp, Family::half_corner, f.divisor[2]);
    CHECK(rs.r == rs.c + 1);
    CHECK(all_zero(rs.d2));
    ParabolicReport rep = parabolic_report(rs);
    CHECK(rep.count == rs.r);
    check_against_float(rs, rep);
    ++done;
  }
  CHECK(done == 4);
}

TEST_CASE("exact zero entries in the sign table") {
  RSData rs;
  rs.family = Family::degenerate_spike;
  rs.r = 4;
  rs.h = Scalar(-1);
  rs.d1 = {Scalar(0), Scalar(1), Scalar(0), Scalar(0)};
  rs.d2 = {Scalar(0), Scalar(0), Scalar(0), Scalar(0)};
  ParabolicReport rep = parabolic_report(rs);
  REQUIRE(rep.count == 4);
  // v runs over 1, i, -1, -i.
  const std::vector<int> expected_r1[4] = {{1, 0, 0}, {0, 0, 0}, {-1, 0, 0}, {0, 0, 0}};
  for (int i = 0; i < 4; ++i) {
    CHECK(rep.directions[i].r1 == expected_r1[i]);
    CHECK(rep.directions[i].r2 == std::vector<int>{0, 0, 0});
  }
  CHECK(rep.directions[0].dimension == 1);
  CHECK(rep.directions[1].dimension == 1);
  CHECK(rep.directions[2].dimension == 2);
  CHECK(rep.directions[3].dimension == 1);
  check_against_float(rs, rep);
  CHECK_FALSE(rep.table().empty());
}

TEST_CASE("later entries decide when earlier ones vanish") {
  RSData rs;
  rs.family = Family::degenerate_spike;
  rs.r = 3;
  rs.h = Scalar(-1);
  // Re(i v) vanishes at v = 1, Re(v^2) decides there.
  rs.d1 = {Scalar(0), Scalar::imag_unit(), Scalar(-1)};
  rs.d2 = {Scalar(0), Scalar(0), Scalar(1)};
  ParabolicReport rep = parabolic_report(rs);
  CHECK(rep.directions[0].r1 == std::vector<int>{0, -1});
  CHECK(rep.directions[0].node1);
  CHECK_FALSE(rep.directions[0].node2);
  check_against_float(rs, rep);
}

TEST_CASE("borderline instance: one saddle direction at p1") {
  Poly y = Poly::variable(1), z = Poly::variable(2);
  auto inst = build_instance(Poly(), Poly(), y.pow(4) + (Scalar(1) + Scalar::imag_unit()) * z.pow(4),
                             pipeline_root_order(13));
  TheoremBReport rep = theorem_b_report(inst, 8);
  const auto& s = site(rep, "p1");
  REQUIRE(s.parabolic);
  int ones = 0;
  for (const auto& d : s.parabolic->directions) ones += d.dimension == 1;
  CHECK(ones == 1);
  check_against_float(*s.rs, *s.parabolic);
}

TEST_CASE("straightening rejects a pointwise fixed curve") {
  int n = 8;
  TruncSeries x = TruncSeries::variable(0, n), y = TruncSeries::variable(1, n);
  DivisorForm f;
  f.divisor = {0, 0, 1};
  // Fixes the z-axis pointwise.
  f.g[0] = x.scaled(Scalar(-1)) + y * y;
  f.g[1] = y.scaled(Scalar(-2)) + x * y;
  f.g[2] = x * y;
  FormalCurve c;
  c.axis = 2;
  c.depth = 4;
  c.x.assign(5, Scalar(0));
  c.y.assign(5, Scalar(0));
  CHECK_THROWS_AS(straighten_pair(f, c), undecidable_error);
  FormalCurve bad = c;
  bad.x[1] = Scalar(1);
  CHECK_THROWS_AS(straighten_pair(f, bad), invariant_error);
}
