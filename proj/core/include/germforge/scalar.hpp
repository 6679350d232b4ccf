#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace germforge {

// Element of Q(i, zeta_m). Stored as a rational polynomial in zeta_L of
// degree < phi(L), L = lcm(4, m), reduced modulo the cyclotomic polynomial.
// i is zeta_L^(L/4). Elements are demoted to L = 4 whenever they lie in Q(i).
class Scalar {
public:
  Scalar() = default;
  Scalar(long n);  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);
  explicit Scalar(const mpq_class& q);

  static Scalar gaussian(const mpq_class& re, const mpq_class& im);
  static Scalar imag_unit();
  // e^(2 pi i k / m).
  static Scalar root_of_unity(unsigned m, long k = 1);
  static Scalar parse(std::string_view text);

  // Conductor L (always a multiple of 4).
  unsigned conductor() const { return L_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_gaussian() const { return L_ == 4; }
  bool is_rational() const;
  // Real and imaginary parts; only valid for Gaussian rationals.
  mpq_class re() const;
  mpq_class im() const;

  Scalar conj() const;
  bool is_real() const { return conj() == *this; }
  Scalar inv() const;
  Scalar pow(long e) const;
  // Real part (x + conj x) / 2 and imaginary part (x - conj x) / 2i.
  Scalar real_part() const;
  Scalar imag_part() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Total order used only for canonical sorting.
  friend bool canonical_less(const Scalar& a, const Scalar& b);

  // Canonical text form: "a/b + c/d*i" over Q(i), followed by
  // "(g)*zetaL^k" terms in the Q(i)-power basis of zeta_L when L > 4.
  std::string str() const;
  std::size_t hash() const;

  // Raw rational coordinates in the zeta_L power basis (empty when zero).
  const boost::container::small_vector<mpq_class, 2>& raw() const { return c_; }
  static Scalar from_raw(unsigned L, const std::vector<mpq_class>& coeffs);
  // Re-express in Q(zeta_M) for a multiple M of the conductor.
  Scalar lifted(unsigned M) const;

private:
  void normalize();
  unsigned L_ = 4;
  boost::container::small_vector<mpq_class, 2> c_;
};

bool canonical_less(const Scalar& a, const Scalar& b);

// Sign of a conjugation-fixed scalar under zeta_L -> e^(2 pi i / L).
// Decided exactly for zero, otherwise by interval evaluation with precision
// doubling up to the cap (GERMFORGE_PRECISION_CAP, default 512 bits).
// Throws invariant_error for non-real input and undecidable_error at the cap.
int scalar_sign_of_real(const Scalar& x);

// One evaluation step at a fixed working precision; nullopt if the enclosing
// interval still contains zero.
std::optional<int> scalar_sign_at_precision(const Scalar& x, unsigned bits);

// Hard cap on working precision in bits.
unsigned precision_cap();

// Numerical approximation, for diagnostics and root seeding only.
std::pair<long double, long double> approx(const Scalar& x);

}  // namespace germforge
