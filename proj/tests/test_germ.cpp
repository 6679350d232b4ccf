#include <random>

#include "doctest.h"
#include "germforge/errors.hpp"
#include "germforge/germ.hpp"
#include "support.hpp"

using namespace germforge;
using testsupport::var;

namespace {

Germ cubic_example(int N) {
  TruncSeries x = var(0, N), y = var(1, N), z = var(2, N);
  return Germ({y * z * (y - z), x * (x * x - z * z), x * z * (y - z)});
}

Map3 sigma(int N) {
  Scalar i = Scalar::imag_unit();
  return {var(0, N).scaled(-i), var(1, N).scaled(i), var(2, N).scaled(i)};
}

}  // namespace

TEST_CASE("make_germ") {
  Germ id = make_germ({}, 8);
  CHECK(id.is_identity());
  Germ f = cubic_example(8);
  CHECK(homogeneous_data(f).order == 3);
  CHECK_THROWS_WITH_AS(make_germ({{0, {0, 1, 0}, Scalar(1)}}, 8), doctest::Contains("not tangent to identity"),
                       invariant_error);
  CHECK_THROWS_WITH_AS(make_germ({{0, {2, 0, 0}, Scalar(1)}}, 8, {0, 0, 1}),
                       doctest::Contains("does not divide"), invariant_error);
}

TEST_CASE("homogeneous_data") {
  int N = 8;
  Germ f = cubic_example(N);
  HomogeneousData h = homogeneous_data(f);
  Poly x = Poly::variable(0), y = Poly::variable(1), z = Poly::variable(2);
  CHECK(h.H[0] == y * z * (y - z));
  CHECK(h.H[1] == x * (x * x - z * z));
  CHECK(h.H[2] == x * z * (y - z));
  CHECK(h.ell == Exps{0, 0, 0});
  CHECK(h.order == 3);
  CHECK(h.pure_order == 3);

  TruncSeries X = var(0, N), Y = var(1, N), Z = var(2, N);
  TruncSeries m = X * X * Y;
  Germ g({m * X, m * Y, m * Z});
  HomogeneousData hg = homogeneous_data(g);
  CHECK(hg.ell == Exps{2, 1, 0});
  CHECK(hg.pure_order == 1);
  CHECK(hg.order == 4);
  CHECK(hg.H_ell[0] == x);
  CHECK(hg.H_ell[1] == y);
  CHECK(hg.H_ell[2] == z);

  // Simple-corner shape with a = 1, b = 2, c = 0.
  TruncSeries mono = X * Y * Y;
  Germ sc({mono * X * (TruncSeries::constant(Scalar(2), N) + Z), mono * Y * (TruncSeries::constant(Scalar(-3), N)),
           mono * (X + Z * Z)},
          {1, 2, 0});
  HomogeneousData hs = homogeneous_data(sc);
  CHECK(hs.ell == Exps{1, 2, 0});
  CHECK(hs.H_ell[0] == Scalar(2) * x);
  CHECK(hs.H_ell[1] == Scalar(-3) * y);
  CHECK(hs.H_ell[2] == x);
  CHECK_THROWS_AS(homogeneous_data(identity_germ(6)), invariant_error);
}

TEST_CASE("conjugate") {
  int N = 7;
  Germ f = cubic_example(N);
  CHECK(conjugate(f, identity_map(N)) == f);
  // The cubic part is invariant under sigma.
  CHECK(conjugate(f, sigma(N)) == f);
  std::mt19937 rng(4);
  Germ g = testsupport::random_germ(rng, N);
  Map3 phi = identity_map(N);
  phi[0] += var(1, N) * var(2, N);
  phi[1] += var(0, N).scaled(Scalar(2));
  Germ c = conjugate(g, phi);
  // Conjugating back recovers g.
  Germ back = conjugate(c, map_inverse(phi));
  CHECK(back == g);
  CHECK(map_compose(phi, map_inverse(phi))[0] == var(0, N));
  CHECK_THROWS_AS(conjugate(g, {var(0, N), var(0, N), var(2, N)}), invariant_error);
}

TEST_CASE("diagonal conjugation preserves the divisor") {
  int N = 8;
  TruncSeries X = var(0, N), Y = var(1, N), Z = var(2, N);
  TruncSeries m = X * Y * Y * Z;
  Germ f({m * X * (Scalar(1) * TruncSeries::constant(Scalar(1), N) + Y), m * Y.scaled(Scalar(-2)), m * Z * X},
         {1, 2, 1});
  Map3 diag{X.scaled(Scalar(2)), Y.scaled(Scalar::imag_unit()), Z.scaled(Scalar(-3))};
  CHECK(conjugate(f, diag).divisor() == Exps{1, 2, 1});
}

TEST_CASE("iterate") {
  int N = 6;
  std::mt19937 rng(9);
  Germ f = testsupport::random_germ(rng, N);
  CHECK(iterate(f, 1) == f);
  CHECK(iterate(f, 3) == compose(compose(f, f), f));
  Germ p({TruncSeries(N), TruncSeries(N), var(2, N) * var(2, N)});
  Germ p2 = iterate(p, 2);
  CHECK(p2.disp(2).coeff({0, 0, 2}) == Scalar(2));
  CHECK(p2.disp(2).coeff({0, 0, 3}) == Scalar(2));
}

TEST_CASE("order and pure order are invariant under linear conjugation") {
  std::mt19937 rng(21);
  int N = 6;
  for (int it = 0; it < 50; ++it) {
    Germ f = testsupport::random_germ(rng, N, 4, 0.3);
    std::array<std::array<Scalar, 3>, 3> m;
    do {
      for (auto& row : m)
        for (auto& v : row) v = testsupport::random_rational(rng, 3);
    } while ((m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
                 .is_zero());
    Germ g = conjugate(f, linear_map(m, N), {0, 0, 0});
    HomogeneousData a = homogeneous_data(f), b = homogeneous_data(g);
    REQUIRE(a.order == b.order);
  }
}
