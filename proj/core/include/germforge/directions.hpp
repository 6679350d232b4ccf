#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germforge/blowup.hpp"
#include "germforge/germ.hpp"
#include "germforge/poly.hpp"

namespace germforge {

// Singular direction with exact coordinates, normalized so that the last
// nonzero coordinate is 1. Only the vanishing of the multiplier is
// coordinate independent.
struct DirectionInfo {
  Direction v;
  Scalar multiplier;
  bool degenerate = false;
  bool exceptional = false;
};

// Curve of singular directions, as the zero set of a homogeneous polynomial
// in the direction coordinates.
struct DirectionFamily {
  Poly equation;
  std::string description;
};

struct DirectionReport {
  std::vector<DirectionInfo> resolved;
  std::vector<DirectionFamily> families;
  // Univariate eliminants whose roots lie outside the scalar field.
  std::vector<std::string> unresolved;
  // Dimension of the set of singular directions: 0, 1, or 2 (dicritical).
  int dicriticality = 0;
};

// Directions v with H(v) = lambda v for a homogeneous map H.
DirectionReport directions_of(const std::array<Poly, 3>& H, const Exps& divisor);
// Singular directions of f: H is the lowest-degree part of (f - id) / ell.
DirectionReport singular_directions(const Germ& f);
DirectionReport singular_directions(const DivisorForm& f);
// Lowest-degree part of (f - id) / x^ell for the monomial content ell.
std::array<Poly, 3> saturated_leading_part(const DivisorForm& f);
// Characteristic directions: H is the lowest-degree part of f - id.
DirectionReport characteristic_directions(const Germ& f);

// Local intersection multiplicity at `point` of the plane curves F = 0 and
// G = 0, with F, G polynomials in the variables x (index 0) and y (index 1).
// Returns nullopt for a common component through the point.
std::optional<int> intersection_multiplicity(const Poly& F, const Poly& G, const std::array<Scalar, 2>& point);

// Multiplicity of a characteristic direction: intersection number of the two
// cross-minors of H in the affine chart containing v.
int direction_multiplicity(const Germ& f, const Direction& v);

}  // namespace germforge
