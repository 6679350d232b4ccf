#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "germforge/scalar.hpp"
#include "germforge/series.hpp"

namespace germforge {

struct GradedLess {
  bool operator()(const Exps& a, const Exps& b) const { return graded_less(a, b); }
};

// Sparse polynomial in x, y, z over Scalar (no truncation).
class Poly {
public:
  Poly() = default;
  explicit Poly(const Scalar& c);
  static Poly variable(int k);
  static Poly monomial(const Exps& e, const Scalar& c);
  static Poly from_series(const TruncSeries& s);
  TruncSeries to_series(int N) const;

  const std::map<Exps, Scalar, GradedLess>& terms() const { return t_; }
  const Scalar& coeff(const Exps& e) const;
  void add_to(const Exps& e, const Scalar& c);
  bool is_zero() const { return t_.empty(); }
  int total_degree() const;
  int degree_in(int k) const;
  int min_degree() const;

  Scalar eval(const std::array<Scalar, 3>& p) const;
  // Replace x_k by a constant.
  Poly substitute(int k, const Scalar& value) const;
  // Replace x_k by x_k + shift.
  Poly translate(int k, const Scalar& shift) const;
  Poly derivative(int k) const;
  Poly homogeneous_part(int d) const;
  Poly pow(int e) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str(const char* vars = "xyz") const;

private:
  std::map<Exps, Scalar, GradedLess> t_;
};

// Univariate polynomial over Scalar, coefficient index = degree.
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<Scalar> c);
  static UPoly constant(const Scalar& c);
  static UPoly x();
  // Restriction of a polynomial that only involves variable k.
  static UPoly from_poly(const Poly& p, int k);

  const std::vector<Scalar>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Scalar& lead() const;
  Scalar operator()(const Scalar& v) const;
  UPoly derivative() const;
  UPoly monic() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Scalar& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  std::string str(char var = 'x') const;

private:
  void trim();
  std::vector<Scalar> c_;
};

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly operator/(const UPoly& a, const UPoly& b);  // exact quotient, throws otherwise
UPoly gcd(const UPoly& a, const UPoly& b);       // monic
UPoly squarefree_part(const UPoly& p);           // monic

// Exact square root in Q(i) when it exists.
bool gaussian_sqrt(const Scalar& a, Scalar& root);

// Distinct roots of p lying in Q(i) (or in the coefficient field for degree
// <= 1). The product of the remaining irreducible-over-search factors is
// written to residual (monic, squarefree), 1 when everything was resolved.
std::vector<Scalar> field_roots(const UPoly& p, UPoly* residual = nullptr);

// Polynomials in y with coefficients in K[x].
using BPoly = std::vector<UPoly>;

BPoly to_bpoly(const Poly& p, int vx, int vy);
Poly from_bpoly(const BPoly& b, int vx, int vy);
UPoly resultant_y(const BPoly& a, const BPoly& b);
BPoly bpoly_gcd(const BPoly& a, const BPoly& b);
// Exact division a / g; throws when g does not divide a.
BPoly bpoly_div(const BPoly& a, const BPoly& g);
int bdeg(const BPoly& b);

}  // namespace germforge
