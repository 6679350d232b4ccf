#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "germforge/blowup.hpp"
#include "germforge/infgen.hpp"

namespace germforge {

enum class Family { regular, simple_corner, degenerate_spike, spinning_corner, half_corner, unclassified };
std::string to_string(Family f);

// Class of a germ f = id + x^divisor g, with the parameters of its normal form.
// Normal coordinates: u_r = sum_k change[r][k] x_{roles[k]}, so roles[r] is
// the input coordinate playing the r-th role (x, y, z) before the linear change.
struct SingularityClass {
  Family family = Family::unclassified;
  std::array<int, 3> roles{0, 1, 2};
  Mat3 change{{{Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}}};
  int a = 0, b = 0, c = 0;
  // Simple corner: eigenvalues on x and y, and R = alpha x + beta y + gamma z + ...
  Scalar lambda, mu, alpha, beta, gamma;
  // Degenerate spike: trace and determinant of the (x, y) block; off-diagonal
  // entries alpha (of x) and beta (of y) when the diagonal vanishes.
  Scalar trace, det;
  bool off_diagonal = false;
  // Spinning and half corners: x-eigenvalue; Q and R linear coefficients.
  Scalar eigen;
  std::array<Scalar, 3> q1, r1;
  // Half corner simplicity (beta != 0).
  bool simple = false;
  LinearPartReport linear;

  std::string summary() const;
};

// Classification needs g through degree 2.
SingularityClass classify_germ(const DivisorForm& f);
SingularityClass classify_germ(const Germ& f);

// f written in the normal coordinates of its class.
DivisorForm normal_form(const DivisorForm& f, const SingularityClass& cls);
// Conjugation by a coordinate permutation followed by an invertible linear
// change that fixes every divisor hyperplane.
DivisorForm change_coordinates(const DivisorForm& f, const std::array<int, 3>& roles, const Mat3& change);
// Conjugation by x -> x + alpha(y), alpha(0) = 0, when the divisor does not involve x.
DivisorForm straighten_x(const DivisorForm& f, const TruncSeries& alpha);

struct ClosureEntry {
  Direction v;               // in the normal coordinates
  Family expected;
  std::optional<bool> expected_simple;  // half corners only
  std::string origin;        // "isolated", "family special", "family generic"
  SingularityClass actual;
  bool agrees = false;
};

struct ClosureReport {
  std::vector<ClosureEntry> entries;
  // Resolved singular directions not predicted by the table, and predicted
  // isolated directions missing from the solver output.
  std::vector<std::string> failures;
  bool consistent() const;
};

// Blows up every singular direction predicted for the class (family members
// at their special points and at `samples` generic points) and compares the
// classes of the lifts with the closure table.
ClosureReport blowup_closure(const DivisorForm& f, const SingularityClass& cls, int samples = 3);

enum class PatternKind { none, r0_r0, r2_r3 };
std::string to_string(PatternKind k);

struct PatternType {
  PatternKind kind = PatternKind::none;
  int core_axis = -1;            // input coordinate running along the core
  Family generic = Family::unclassified;
  // Special points on the core, as the core coordinate value and their class.
  std::vector<std::pair<Scalar, Family>> special;
  int b = 0, B = 0, c = 0;
  std::string detail;
};

// True when g vanishes identically along the coordinate axis of x_k
// (through the certified degree).
bool axis_in_singular_locus(const DivisorForm& f, int k);
PatternType classify_pattern(const DivisorForm& f, int core_axis);

// Generic sample points used along one-parameter families.
std::vector<Scalar> generic_samples(int count, const std::vector<Scalar>& avoid);

}  // namespace germforge
