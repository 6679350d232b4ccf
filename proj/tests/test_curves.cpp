#include <random>

#include "curve_oracles.hpp"
#include "doctest.h"
#include "families.hpp"
#include "germforge/curves.hpp"
#include "germforge/errors.hpp"

using namespace germforge;

namespace {

int divisor_order_along(const DivisorForm& f, const FormalCurve& c) {
  // Transverse curves: only the axis coordinate vanishes to order one.
  return f.divisor[c.axis];
}

bool residual_ok(const DivisorForm& f, const FormalCurve& c, int M) {
  int nu = divisor_order_along(f, c);
  return oracle::invariance_residual_order(f.germ(), c, nu + M + 1) >= nu + M + 1;
}

bool positive_integer(const Scalar& s) {
  if (!s.is_rational()) return false;
  mpq_class q = s.re();
  return q > 0 && q.get_den() == 1;
}

}  // namespace

TEST_CASE("walker curve of random degenerate spikes") {
  std::mt19937 rng(77);
  const int M = 8;
  int checked = 0;
  for (int i = 0; i < 10; ++i) {
    DivisorForm f = families::degenerate_spike(rng, 11, i % 2 == 0);
    INFO("spike #" << i);
    FormalCurve c = curve_from_sequence(f, 2, unique_transverse_walker(2), M);
    CHECK(c.depth == M);
    CHECK(static_cast<int>(c.sequence.size()) == M);
    CHECK(verify_invariance(f, c, M) == M);
    CHECK(residual_ok(f, c, M));
    // A perturbed curve is caught by the oracle.
    FormalCurve bad = c;
    bad.x[5] += Scalar(1);
    CHECK_FALSE(residual_ok(f, bad, M));
    CHECK(verify_invariance(f, bad, M) < M);
    ++checked;
  }
  CHECK(checked == 10);
}

TEST_CASE("half corner recursion away from resonance") {
  std::mt19937 rng(5);
  const int M = 8;
  int solved = 0, resonant = 0;
  for (int i = 0; i < 20; ++i) {
    DivisorForm f = families::half_corner(rng, 10, 1);
    SingularityClass cls = classify_germ(f);
    REQUIRE(cls.family == Family::half_corner);
    REQUIRE_FALSE(cls.simple);
    INFO("half corner #" << i << ": " << cls.summary());
    bool res = cls.gamma.is_zero() ? cls.q1[1].is_zero() : positive_integer(cls.q1[1] / cls.gamma);
    if (res) {
      CHECK_THROWS_AS(half_corner_curve(f, cls, M), undecidable_error);
      ++resonant;
      continue;
    }
    FormalCurve c = half_corner_curve(f, cls, M);
    CHECK(c.axis == 2);
    CHECK(verify_invariance(f, c, M) == M);
    CHECK(residual_ok(f, c, M));
    ++solved;
  }
  CHECK(solved >= 15);
  (void)resonant;
}

TEST_CASE("half corner recursion refuses resonant and too deep requests") {
  int n = 8;
  TruncSeries x = TruncSeries::variable(0, n), y = TruncSeries::variable(1, n), z = TruncSeries::variable(2, n);
  DivisorForm f;
  f.divisor = {0, 0, 1};
  // b_y = 2 gamma.
  f.g[0] = x.scaled(Scalar(3)) + y * y;
  f.g[1] = z * (y.scaled(Scalar(2)) + x);
  f.g[2] = z * z;
  SingularityClass cls = classify_germ(f);
  REQUIRE(cls.family == Family::half_corner);
  REQUIRE_FALSE(cls.simple);
  CHECK(cls.q1[1] / cls.gamma == Scalar(2));
  CHECK_THROWS_AS(half_corner_curve(f, cls, 4), undecidable_error);

  f.g[1] = z * (y.scaled(Scalar(-1, 2)) + x);
  cls = classify_germ(f);
  CHECK_NOTHROW(half_corner_curve(f, cls, 4));
  CHECK_THROWS_AS(half_corner_curve(f, cls, n), undecidable_error);
}

TEST_CASE("spinning corner trichotomy") {
  std::mt19937 rng(31);
  const CurveVerdict expected[3] = {CurveVerdict::infinitely_many, CurveVerdict::none, CurveVerdict::unique};
  int uniques = 0;
  for (int i = 0; i < 24; ++i) {
    int mode = i % 3;
    DivisorForm f = families::spinning_corner(rng, 12, mode);
    SingularityClass cls = classify_germ(f);
    REQUIRE(cls.family == Family::spinning_corner);
    INFO("mode " << mode << ": " << cls.summary());
    SpinningCurveAnalysis a = spinning_corner_curve_analysis(f, cls, mode == 2 ? 6 : 0);
    if (mode == 2 && a.ratio && positive_integer(*a.ratio)) {
      CHECK(a.verdict == CurveVerdict::outside_trichotomy);
      continue;
    }
    CHECK(a.verdict == expected[mode]);
    if (a.verdict != CurveVerdict::unique) continue;
    REQUIRE(a.curve);
    REQUIRE(a.half_corner);
    CHECK(a.half_corner->family == Family::half_corner);
    CHECK_FALSE(a.half_corner->simple);
    CHECK(verify_invariance(f, *a.curve, 6) == 6);
    CHECK(oracle::invariance_residual_order(f.germ(), *a.curve, 16) > 6 + f.divisor[1] + f.divisor[2]);
    ++uniques;
  }
  CHECK(uniques >= 6);
}

TEST_CASE("curve JSON round trip") {
  FormalCurve c;
  c.axis = 1;
  c.depth = 3;
  c.x = {Scalar(0), Scalar(1, 2), Scalar(0), Scalar::gaussian(mpq_class(-1), mpq_class(3, 4))};
  c.y = {Scalar(0), Scalar(0), Scalar(5), Scalar(1)};
  FormalCurve back = curve_from_json(curve_json(c));
  CHECK(back == c);
  CHECK(curve_json(back) == curve_json(c));
  CHECK_THROWS_AS(curve_from_json("{\"e\": 1"), parse_error);
  CHECK_THROWS_AS(curve_from_json("{\"x\": [\"0\"], \"y\": [\"0\"], \"depth\": \"two\"}"), parse_error);
}

TEST_CASE("curve from a parametrization") {
  int N = 6;
  TruncSeries t = TruncSeries::variable(2, N);
  // x = t + t^2, y = t^2, z = 2t: reparametrized by z.
  Map3 p{t + t * t, t * t, t.scaled(Scalar(2))};
  FormalCurve c = curve_from_parametrization(p, 2, 4);
  CHECK(c.x[1] == Scalar(1, 2));
  CHECK(c.x[2] == Scalar(1, 4));
  CHECK(c.y[2] == Scalar(1, 4));
  CHECK(c.y[3] == Scalar(0));
}
