#pragma once

#include <array>
#include <string>
#include <vector>

#include "germforge/germ.hpp"
#include "germforge/poly.hpp"

namespace germforge {

using Mat3 = std::array<std::array<Scalar, 3>, 3>;

// Formal vector field sum comps[k] d/dx_k, exact through degree N. divisor
// records the monomial already removed by saturation.
struct VectorField {
  Map3 comps;
  Exps divisor{0, 0, 0};

  int N() const { return std::min({comps[0].N(), comps[1].N(), comps[2].N()}); }
  int val() const { return std::min({comps[0].val(), comps[1].val(), comps[2].val()}); }
  bool is_zero() const { return comps[0].is_zero() && comps[1].is_zero() && comps[2].is_zero(); }
};

// Derivation chi(phi) = sum chi_k d(phi)/dx_k.
TruncSeries apply_field(const VectorField& chi, const TruncSeries& phi);
// Time-one flow: x_k o exp(chi) = sum_n chi^n(x_k) / n!. Requires val >= 2.
Germ exp_field(const VectorField& chi, const Exps& divisor = {0, 0, 0});
// Unique chi of order >= 2 with exp(chi) = f, solved degree by degree.
VectorField log_germ(const Germ& f);
// Division of every component by x^e.
VectorField saturate(const VectorField& chi, const Exps& e);
// Saturation of the generator of f by the largest monomial supported on the
// marked divisor that divides it.
VectorField saturated_generator(const Germ& f);

struct LinearPartReport {
  bool regular = false;              // nonzero value at the origin
  std::array<Scalar, 3> value;       // chi(0)
  Mat3 matrix;                       // row k: linear part of comps[k]
  std::array<Scalar, 4> charpoly;    // c0 + c1 t + c2 t^2 + t^3 = det(t - M)
  std::vector<Scalar> eigenvalues;   // with multiplicity, when resolved
  bool eigen_complete = false;
  UPoly unresolved;                  // unfactored part of the char poly
  int rank = 0;
  bool nilpotent = false;
  int nilpotency_index = 0;          // smallest k with M^k = 0, 0 if none
};

LinearPartReport linear_part(const VectorField& chi);

enum class Quality { regular, log_canonical, canonical, radial, non_log_canonical };
std::string to_string(Quality q);

// Divisor components are the coordinate hyperplanes x_k = 0 with
// divisor[k] > 0. Throws invariant_error when the field is not tangent to them.
Quality singularity_quality(const LinearPartReport& report, const VectorField& chi,
                            const Exps& divisor);
bool tangent_to_divisor(const VectorField& chi, const Exps& divisor);

// Hypothesis test of the no-nearby-orbit criterion: the saturated generator
// is regular at 0 and tangent to the marked divisor.
bool check_no_nearby_orbits(const Germ& f);

Scalar det3(const Mat3& m);
Mat3 inverse3(const Mat3& m);
int rank3(const Mat3& m);
Mat3 mat_mul(const Mat3& a, const Mat3& b);

}  // namespace germforge
