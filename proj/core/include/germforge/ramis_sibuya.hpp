#pragma once

#include <array>
#include <string>
#include <vector>

#include "germforge/blowup.hpp"
#include "germforge/classify.hpp"
#include "germforge/curves.hpp"

namespace germforge {

// f conjugated so that the invariant curve is the z-axis and f|_C is
// z + h z^(r+1) + b' z^(2r+1) + O(z^(2r+2)). The leading coefficient h is
// kept: scaling it to -1 needs an r-th root of -h.
struct StraightenedPair {
  DivisorForm form;              // divisor z^c only
  std::array<int, 3> roles{0, 1, 2};  // input coordinate playing x, y, z
  int r = 0;
  Scalar h;
  std::vector<Scalar> restriction;  // coefficients of f|_C, index = power of z
  int certified = 0;                // f|_C is exact through this power
  // Powers z^k, 2 <= k <= r, removed from f|_C by polynomial changes of z
  // (fewer than r - 1 when the certified degree runs out first).
  int normalized_through = 1;
};

// Throws invariant_error when C is not transverse to the divisor or not
// invariant, undecidable_error when f fixes C pointwise to certified degree.
StraightenedPair straighten_pair(const DivisorForm& f, const FormalCurve& C);

struct RSData {
  Family family = Family::unclassified;
  int c = 0;       // divisor order of the class
  int e = 0;
  int r = 0;       // f|_C - id has multiplicity r + 1
  int n = 0;       // number of point blow-ups along C
  Scalar h;        // leading coefficient of f|_C - id in the working coordinate
  Scalar beta;     // z^(2r+1) coefficient after scaling h to -1
  // Coefficients of d_1, d_2 in the working coordinate; index = power of z,
  // size r, index 0 always zero.
  std::vector<Scalar> d1, d2;
  std::array<Scalar, 4> c_matrix;  // c11, c12, c21, c22
  Scalar lambda, mu;               // leading diagonal entries of the linear block
  int certified = 0;               // z-degree through which the shape was checked
  std::string str() const;
};

// Blows up n points along the z-axis and reads the invariants off the
// linear block. family is a degenerate spike or a non-simple half corner.
RSData rs_reduce(const StraightenedPair& s, Family family, int c);

struct AttractingDirection {
  int index = 0;                  // v = |w|^(1/r) e^(i (arg w + 2 pi index) / r), w = -1/h
  std::string approx;             // v, numerically
  std::vector<int> r1, r2;        // signs of Re(d_k^(j) v^k), k = 1 .. r - 1
  bool node1 = false, node2 = false;
  int s = 0;
  int dimension = 1;
};

struct ParabolicReport {
  int count = 0;                  // equals r
  std::vector<AttractingDirection> directions;
  unsigned precision = 0;         // bits used for the certified signs
  std::string table() const;
};

// Signs are certified by an exact count of the vanishing entries combined
// with MPFR evaluation up to GERMFORGE_PRECISION_CAP bits.
ParabolicReport parabolic_report(const RSData& rs);

}  // namespace germforge
