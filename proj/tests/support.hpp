#pragma once

#include <random>

#include "germforge/germ.hpp"
#include "germforge/infgen.hpp"
#include "germforge/scalar.hpp"
#include "germforge/series.hpp"

namespace testsupport {

using namespace germforge;

inline Scalar random_rational(std::mt19937& rng, int height = 5) {
  std::uniform_int_distribution<int> num(-height, height), den(1, height);
  return Scalar(num(rng), den(rng));
}

inline Scalar random_gaussian(std::mt19937& rng, int height = 5) {
  std::uniform_int_distribution<int> num(-height, height), den(1, height);
  mpq_class re(num(rng), den(rng)), im(num(rng), den(rng));
  re.canonicalize();
  im.canonicalize();
  return Scalar::gaussian(re, im);
}

// Random element of Q(zeta_L) with small coefficients.
inline Scalar random_cyclotomic(std::mt19937& rng, unsigned L, int height = 3) {
  std::uniform_int_distribution<int> num(-height, height), den(1, height);
  Scalar acc;
  for (unsigned k = 0; k < L / 2; ++k) acc += Scalar(num(rng), den(rng)) * Scalar::root_of_unity(L, k);
  return acc;
}

inline TruncSeries random_series(std::mt19937& rng, int N, int min_deg, int max_deg, double density = 0.5,
                                 int height = 4) {
  TruncSeries s(N);
  std::uniform_real_distribution<double> u(0, 1);
  for (int d = min_deg; d <= std::min(max_deg, N); ++d)
    for (int i = d; i >= 0; --i)
      for (int j = d - i; j >= 0; --j)
        if (u(rng) < density) s.set({i, j, d - i - j}, random_gaussian(rng, height));
  return s;
}

inline Germ random_germ(std::mt19937& rng, int N, int max_deg = 4, double density = 0.4) {
  return Germ({random_series(rng, N, 2, max_deg, density), random_series(rng, N, 2, max_deg, density),
               random_series(rng, N, 2, max_deg, density)});
}

inline VectorField random_field(std::mt19937& rng, int N, int max_deg = 4, double density = 0.4) {
  return VectorField{{random_series(rng, N, 2, max_deg, density), random_series(rng, N, 2, max_deg, density),
                      random_series(rng, N, 2, max_deg, density)},
                     {0, 0, 0}};
}

inline TruncSeries var(int k, int N) { return TruncSeries::variable(k, N); }

// id + (yz(y - z), x(x^2 - z^2), xz(y - z)) + (P, Q, R).
inline Germ cubic_model(int N, const TruncSeries& P, const TruncSeries& Q, const TruncSeries& R) {
  TruncSeries x = var(0, N), y = var(1, N), z = var(2, N);
  return Germ({y * z * (y - z) + P.truncated(N), x * (x * x - z * z) + Q.truncated(N), x * z * (y - z) + R.truncated(N)});
}

inline TruncSeries poly_series(int N, const std::vector<std::pair<Exps, Scalar>>& terms) {
  TruncSeries s(N);
  for (const auto& [e, c] : terms) s.add_to(e, c);
  return s;
}

}  // namespace testsupport
