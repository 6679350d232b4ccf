#pragma once

#include <array>
#include <string>
#include <tuple>
#include <vector>

#include "germforge/poly.hpp"
#include "germforge/series.hpp"

namespace germforge {

using Map3 = std::array<TruncSeries, 3>;

// Tangent-to-the-identity germ of (C^3, 0). Stores the displacement f - id,
// exact through degree N, and the marked divisor monomial x^a y^b z^c.
class Germ {
public:
  // Validates: no constant or linear term, divisor divides every component.
  Germ(Map3 displacement, Exps divisor = {0, 0, 0});

  int N() const { return disp_[0].N(); }
  const Map3& disp() const { return disp_; }
  const TruncSeries& disp(int k) const { return disp_[k]; }
  const Exps& divisor() const { return divisor_; }
  // x_k o f.
  TruncSeries component(int k) const;
  Map3 components() const;
  Germ truncated(int N) const;
  Germ with_divisor(const Exps& d) const { return Germ(disp_, d); }
  bool is_identity() const;

  friend bool operator==(const Germ& a, const Germ& b) {
    return a.divisor_ == b.divisor_ && a.disp_[0] == b.disp_[0] && a.disp_[1] == b.disp_[1] &&
           a.disp_[2] == b.disp_[2];
  }

private:
  Map3 disp_;
  Exps divisor_;
};

// Entry (component index, exponents, coefficient) of f - id.
using CoeffEntry = std::tuple<int, Exps, Scalar>;

Germ make_germ(const std::vector<CoeffEntry>& table, int N, const Exps& divisor = {0, 0, 0});
Germ identity_germ(int N);

struct HomogeneousData {
  std::array<Poly, 3> H;       // lowest-degree part of f - id
  Exps ell;                    // monomial content of f - id
  std::array<Poly, 3> H_ell;   // lowest-degree part of (f - id) / x^ell
  int order = 0;
  int pure_order = 0;
};

HomogeneousData homogeneous_data(const Germ& f);

Map3 identity_map(int N);
// a o b for maps given by full components.
Map3 map_compose(const Map3& a, const Map3& b);
// Formal inverse of a map with zero constant term and invertible linear part.
Map3 map_inverse(const Map3& phi);
// Linear part of a map as a 3x3 matrix (row k = coefficients of x_k o phi).
std::array<std::array<Scalar, 3>, 3> linear_matrix(const Map3& phi);

// g o f.
Germ compose(const Germ& g, const Germ& f);
// phi^{-1} o f o phi. The divisor is transported when phi maps coordinate
// hyperplanes carrying the divisor onto coordinate hyperplanes; otherwise the
// monomial content of the result is used.
Germ conjugate(const Germ& f, const Map3& phi);
Germ conjugate(const Germ& f, const Map3& phi, const Exps& new_divisor);
Germ iterate(const Germ& f, int n);

// Linear map from a matrix (row k gives x_k o phi).
Map3 linear_map(const std::array<std::array<Scalar, 3>, 3>& m, int N);
// Coordinate permutation phi with x_k o phi = x_{perm[k]}.
Map3 permutation_map(const std::array<int, 3>& perm, int N);

}  // namespace germforge
