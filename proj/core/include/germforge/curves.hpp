#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "germforge/blowup.hpp"
#include "germforge/classify.hpp"
#include "germforge/directions.hpp"

namespace germforge {

// Smooth formal curve through the origin, parametrized by the coordinate
// `axis`: x_axis = t and the two other coordinates, in increasing index
// order, are x(t) and y(t). Coefficient vectors are indexed by the power of t
// (index 0 is always 0) and run through t^depth.
struct FormalCurve {
  int axis = 2;
  std::vector<Scalar> x, y;
  int depth = 0;
  bool transverse = true;              // to every divisor component at the origin
  std::vector<Direction> sequence;     // infinitely near points, when walked

  // Coordinate series (x_0(t), x_1(t), x_2(t)) with t = x_2, truncated at N.
  Map3 parametrization(int N) const;
  int other(int i) const;  // coordinate index of x (i = 0) or y (i = 1)
  friend bool operator==(const FormalCurve& a, const FormalCurve& b) {
    return a.axis == b.axis && a.x == b.x && a.y == b.y && a.depth == b.depth;
  }
};

// Curve with x_k = p[k](t), where p[axis] has order exactly 1, reparametrized by x_axis.
FormalCurve curve_from_parametrization(const Map3& p, int axis, int depth);
// Image of a curve under a map given by full components (x_k o phi).
FormalCurve push_forward(const FormalCurve& c, const Map3& phi, int axis);

// Chooses the next infinitely near point among the singular directions of
// the current lift; nullopt stops the walk with an error.
using Walker = std::function<std::optional<Direction>(const DivisorForm& node, const DirectionReport& dirs, int depth)>;

// Walker taking the unique singular direction transverse to {x_axis = 0};
// throws when it is missing or not unique.
Walker unique_transverse_walker(int axis);

// Walks M levels of point blow-ups in the x_axis chart and reads the curve
// off the chosen points.
FormalCurve curve_from_sequence(const DivisorForm& f, int axis, const Walker& walker, int M);

// Unique transverse curve of a non-simple half corner, solved order by order.
FormalCurve half_corner_curve(const DivisorForm& f, const SingularityClass& cls, int M);

enum class CurveVerdict { infinitely_many, unique, none, outside_trichotomy };
std::string to_string(CurveVerdict v);

struct SpinningCurveAnalysis {
  CurveVerdict verdict = CurveVerdict::outside_trichotomy;
  Scalar by, bz, cy, cz;
  Scalar delta;                  // b_y c_z - b_z c_y
  std::optional<Scalar> ratio;   // (c_z - b_z)(b_y - c_y) / delta
  std::optional<Scalar> y0;      // special half corner point [0 : y0 : 1] in normal coordinates
  std::optional<SingularityClass> half_corner;
  std::optional<DivisorForm> half_corner_form;      // lift of the normal form at the special point
  std::optional<FormalCurve> half_corner_curve;     // in the coordinates of half_corner_form
  std::optional<FormalCurve> curve;  // in the coordinates of f, unique case only
  std::string detail;
};

// M = 0 skips the curve construction in the unique case.
SpinningCurveAnalysis spinning_corner_curve_analysis(const DivisorForm& f, const SingularityClass& cls, int M = 0);

// Largest m <= M such that f(C) reparametrizes onto C up to relative order
// m: the invariance residual vanishes through t^(nu + m), nu being the order
// of the divisor monomial along C.
int verify_invariance(const DivisorForm& f, const FormalCurve& c, int M);
int verify_invariance(const Germ& f, const FormalCurve& c, int M);

std::string curve_json(const FormalCurve& c);
FormalCurve curve_from_json(const std::string& text);

}  // namespace germforge
