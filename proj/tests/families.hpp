#pragma once

#include <random>

#include "germforge/blowup.hpp"
#include "germforge/classify.hpp"
#include "support.hpp"

// Random members of the four normal-form families, written directly as
// f = id + x^divisor g.
namespace families {

using namespace germforge;

inline Scalar nonzero_gaussian(std::mt19937& rng, int height = 4) {
  Scalar s;
  while (s.is_zero()) s = testsupport::random_gaussian(rng, height);
  return s;
}

inline TruncSeries higher_terms(std::mt19937& rng, int n, int min_deg, double density = 0.25) {
  return testsupport::random_series(rng, n, min_deg, std::min(n, min_deg + 1), density, 3);
}

inline TruncSeries lin(int n, const Scalar& a, const Scalar& b, const Scalar& c) {
  return TruncSeries::variable(0, n).scaled(a) + TruncSeries::variable(1, n).scaled(b) +
         TruncSeries::variable(2, n).scaled(c);
}

inline DivisorForm simple_corner(std::mt19937& rng, int n, bool resonant) {
  std::uniform_int_distribution<int> ab(1, 2), cc(0, 1);
  DivisorForm f;
  f.divisor = {ab(rng), ab(rng), cc(rng)};
  Scalar lambda = nonzero_gaussian(rng), mu;
  do {
    mu = testsupport::random_gaussian(rng, 4);
  } while (!mu.is_zero() && (mu / lambda).is_rational() && scalar_sign_of_real(mu / lambda) > 0);
  TruncSeries x = TruncSeries::variable(0, n), y = TruncSeries::variable(1, n), z = TruncSeries::variable(2, n);
  Scalar gamma = resonant ? lambda : nonzero_gaussian(rng);
  Scalar alpha = resonant ? Scalar(0) : testsupport::random_gaussian(rng);
  Scalar beta = testsupport::random_gaussian(rng);
  f.g[0] = x * (TruncSeries::constant(lambda, n) + higher_terms(rng, n, 1));
  f.g[1] = y * (TruncSeries::constant(mu, n) + higher_terms(rng, n, 1));
  if (f.divisor[2] > 0)
    f.g[2] = z * (TruncSeries::constant(gamma, n) + higher_terms(rng, n, 1));
  else
    f.g[2] = lin(n, alpha, beta, gamma) + higher_terms(rng, n, 2);
  return f;
}

inline DivisorForm degenerate_spike(std::mt19937& rng, int n, bool off_diagonal) {
  std::uniform_int_distribution<int> cc(1, 3);
  DivisorForm f;
  f.divisor = {0, 0, cc(rng)};
  Scalar m00, m01, m10, m11;
  if (off_diagonal) {
    // a_y b_x = k^2 keeps the eigenvectors in the field.
    Scalar k = nonzero_gaussian(rng), bx = nonzero_gaussian(rng);
    m01 = k * k / bx;
    m10 = bx;
  } else {
    Scalar lambda = nonzero_gaussian(rng);
    std::uniform_int_distribution<int> tn(1, 5), td(1, 3);
    Scalar mu = -lambda * Scalar(tn(rng), td(rng));
    // S diag(lambda, mu) S^{-1} with S = [[1, s], [t, 1]].
    Scalar s = testsupport::random_rational(rng, 3), t = testsupport::random_rational(rng, 3);
    while ((Scalar(1) - s * t).is_zero()) t = t + Scalar(1);
    Scalar det = Scalar(1) - s * t;
    m00 = (lambda - s * t * mu) / det;
    m01 = (s * mu - s * lambda) / det;
    m10 = (t * lambda - t * mu) / det;
    m11 = (mu - s * t * lambda) / det;
  }
  Scalar az = testsupport::random_gaussian(rng), bz = testsupport::random_gaussian(rng);
  f.g[0] = lin(n, m00, m01, az) + higher_terms(rng, n, 2);
  f.g[1] = lin(n, m10, m11, bz) + higher_terms(rng, n, 2);
  f.g[2] = TruncSeries::variable(2, n) * (higher_terms(rng, n, 1) + lin(n, testsupport::random_gaussian(rng),
                                                                          testsupport::random_gaussian(rng),
                                                                          testsupport::random_gaussian(rng)));
  return f;
}

// mode 0: b_y = c_y and b_z = c_z; mode 1: exactly one equality; mode 2: none.
inline DivisorForm spinning_corner(std::mt19937& rng, int n, int mode) {
  std::uniform_int_distribution<int> bc(1, 2);
  DivisorForm f;
  f.divisor = {0, bc(rng), bc(rng)};
  Scalar ax = nonzero_gaussian(rng);
  Scalar ay = mode == 2 ? testsupport::random_gaussian(rng) : Scalar(0);
  Scalar az = mode == 2 ? testsupport::random_gaussian(rng) : Scalar(0);
  Scalar bx = testsupport::random_gaussian(rng), by = testsupport::random_gaussian(rng),
         bzz = testsupport::random_gaussian(rng);
  Scalar cx = testsupport::random_gaussian(rng), cy = by, cz = bzz;
  if (mode >= 1) cz = bzz + nonzero_gaussian(rng);
  if (mode == 2) cy = by + nonzero_gaussian(rng);
  f.g[0] = lin(n, ax, ay, az) + higher_terms(rng, n, 2);
  f.g[1] = TruncSeries::variable(1, n) * (lin(n, bx, by, bzz) + higher_terms(rng, n, 2));
  f.g[2] = TruncSeries::variable(2, n) * (lin(n, cx, cy, cz) + higher_terms(rng, n, 2));
  return f;
}

// mode 0: beta != 0; mode 1: beta = 0 generic; mode 2: beta = 0 with every
// half corner above non-simple (b_z = 0, b_y = gamma).
inline DivisorForm half_corner(std::mt19937& rng, int n, int mode) {
  std::uniform_int_distribution<int> cc(1, 2);
  DivisorForm f;
  f.divisor = {0, 0, cc(rng)};
  Scalar ax = nonzero_gaussian(rng);
  Scalar ay = testsupport::random_gaussian(rng), az = testsupport::random_gaussian(rng);
  Scalar beta = mode == 0 ? nonzero_gaussian(rng) : Scalar(0);
  Scalar gamma = testsupport::random_gaussian(rng);
  Scalar bx = mode == 2 ? Scalar(0) : testsupport::random_gaussian(rng);
  Scalar by = mode == 2 ? gamma : testsupport::random_gaussian(rng);
  Scalar bz = mode == 2 ? Scalar(0) : nonzero_gaussian(rng);
  if (mode == 2) {
    ay = Scalar(0);
    az = Scalar(0);
  }
  TruncSeries z = TruncSeries::variable(2, n);
  f.g[0] = lin(n, ax, ay, az) + higher_terms(rng, n, 2);
  f.g[1] = z * (TruncSeries::constant(beta, n) + lin(n, bx, by, bz) + higher_terms(rng, n, 2));
  f.g[2] = z * z * (TruncSeries::constant(gamma, n) + higher_terms(rng, n, 1));
  return f;
}

}  // namespace families
