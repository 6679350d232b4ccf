#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "germforge/scalar.hpp"

namespace germforge {

// Exponent triple (i, j, k) of the monomial x^i y^j z^k.
using Exps = std::array<int, 3>;

inline int degree(const Exps& e) { return e[0] + e[1] + e[2]; }
inline bool divides(const Exps& a, const Exps& b) {
  return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2];
}
inline Exps operator+(const Exps& a, const Exps& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Exps operator-(const Exps& a, const Exps& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
Exps unit_exps(int k);
// Graded order: lower total degree first, then larger x exponent, then larger y.
bool graded_less(const Exps& a, const Exps& b);
std::string monomial_str(const Exps& e, const char* vars = "xyz");

// Position of a monomial in the dense graded layout.
std::size_t mono_index(const Exps& e);
const Exps& mono_at(std::size_t index);
std::size_t mono_count(int max_degree);

// Formal power series in x, y, z over Scalar, exact through total degree N.
// Coefficients of degree > N are unknown and never stored.
class TruncSeries {
public:
  explicit TruncSeries(int N = 12);

  static TruncSeries constant(const Scalar& c, int N);
  static TruncSeries variable(int k, int N);
  static TruncSeries monomial(const Exps& e, const Scalar& c, int N);
  static TruncSeries from_terms(const std::vector<std::pair<Exps, Scalar>>& terms, int N);

  int N() const { return N_; }
  // Lowest degree carrying a nonzero coefficient (N + 1 when none). This is a
  // valid lower bound for the order of the represented series.
  int val() const;
  bool is_zero() const { return val() > N_; }

  const Scalar& coeff(const Exps& e) const;
  void set(const Exps& e, Scalar c);
  void add_to(const Exps& e, const Scalar& c);
  // Adds the stored terms of o without lowering N (caller guarantees the
  // terms of o are exact where they matter).
  void add_terms(const TruncSeries& o, const Scalar& factor = Scalar(1));

  // Nonzero terms in graded order.
  std::vector<std::pair<Exps, Scalar>> terms() const;
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) f(mono_at(i), c_[i]);
  }

  TruncSeries truncated(int N) const;
  // Terms of degree <= d, keeping N.
  TruncSeries jet(int d) const;
  TruncSeries homogeneous_part(int d) const;
  TruncSeries derivative(int k) const;
  Scalar constant_term() const { return coeff({0, 0, 0}); }
  // Substitute x_k = 0.
  TruncSeries restrict_zero(int k) const;
  TruncSeries mul_monomial(const Exps& e) const;
  TruncSeries scaled(const Scalar& s) const;
  // Largest monomial dividing every stored term; (0,0,0) when zero.
  Exps monomial_content() const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  TruncSeries operator-() const;
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const Scalar& s, const TruncSeries& a) { return a.scaled(s); }
  // Equality of coefficients through min(N).
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  std::string str() const;

private:
  int N_;
  std::vector<Scalar> c_;
};

// Product truncated at min(a.N, b.N, cap).
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b, int cap = 1 << 20);
// All products of stored terms with degree <= cap, as a series with N = cap.
// The caller is responsible for exactness (e.g. via known valuations).
TruncSeries series_mul_to(const TruncSeries& a, const TruncSeries& b, int cap);
// a(s_x, s_y, s_z). Every substituted series must have zero constant term.
TruncSeries series_compose(const TruncSeries& a, const std::array<TruncSeries, 3>& s);
// Multiplicative inverse of a series with nonzero constant term.
TruncSeries series_invert_unit(const TruncSeries& a);
// Exact quotient by x^i y^j z^k; the result is exact through N - (i+j+k).
TruncSeries series_div_monomial(const TruncSeries& a, const Exps& e);
// Univariate series in z (variable index 2): a(s(z)) for s(0) = 0, and the
// compositional inverse of s = s1 z + ..., s1 != 0.
TruncSeries compose_in_z(const TruncSeries& a, const TruncSeries& s);
TruncSeries revert_in_z(const TruncSeries& s);

// Highest degree d such that a and b agree through degree d (N of the
// comparison when they agree everywhere).
int agreement_degree(const TruncSeries& a, const TruncSeries& b);

}  // namespace germforge
