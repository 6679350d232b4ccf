#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "germforge/blowup.hpp"
#include "germforge/classify.hpp"
#include "germforge/curves.hpp"
#include "germforge/directions.hpp"
#include "germforge/infgen.hpp"
#include "germforge/poly.hpp"
#include "germforge/ramis_sibuya.hpp"

namespace germforge {

// f = id + (yz(y - z) + P, x(x^2 - z^2) + Q, xz(y - z) + R) with P, Q, R of order >= 4.
struct ExampleInstance {
  int N = 12;
  Poly P, Q, R;
  Scalar R040;
  Scalar alpha_plus;   // (P4 - R4)(1, 1, 1)
  Scalar alpha_minus;  // (P4 + R4)(-1, 1, 1)
  Scalar h_p1;         // R004 - Q004
  Scalar h_p2;         // R4(0, 1, 1)
  std::vector<std::string> genericity_failures;

  Germ germ() const;
  Germ germ(int N) const;
  // Genericity needed for the four-stage resolution.
  bool resolvable() const { return !R040.is_zero(); }
  // Additionally needed at the blow-ups of p3 and p4.
  bool forms_generic() const { return resolvable() && !alpha_plus.is_zero() && !alpha_minus.is_zero(); }
};

ExampleInstance build_instance(const Poly& P, const Poly& Q, const Poly& R, int N);
// P = x^4, Q = 0, R = y^4.
ExampleInstance default_instance(int N);
// P = Q = 0, R = y^4 + z^4 + i y z^3: every genericity condition holds.
ExampleInstance generic_instance(int N);
// The same instance conjugated by sigma(x, y, z) = (-ix, iy, iz): the
// perturbation becomes (iP, -iQ, -iR) o sigma.
ExampleInstance sigma_conjugate(const ExampleInstance& inst);

struct SiteReport {
  std::string name;
  const BlowupNode* node = nullptr;
  LinearPartReport linear;
  Quality quality = Quality::non_log_canonical;
  SingularityClass cls;
};

// Linear part and quality of the saturated generator, and the class of the node.
SiteReport analyse_site(const BlowupNode& node);

struct Resolution {
  std::unique_ptr<BlowupNode> root;
  std::vector<SiteReport> sites;
  // Directions found at each stage, for the report.
  DirectionReport first_directions;
  const SiteReport& site(const std::string& name) const;
};

// Root germ order used by the pipelines for a requested working order N:
// the four blow-ups consume about seven degrees of certified jet.
int pipeline_root_order(int N);

// Four-stage resolution of the saturated generator: origin, p5, p5,1 and the line L.
Resolution resolve_pi0(const ExampleInstance& inst);
// Adds the blow-ups of p3 and p4.
Resolution resolve_pi0_tilde(const ExampleInstance& inst);

// Points (0, .., t, .., 0) on the coordinate axis k where g vanishes,
// read off the certified jet along the axis.
std::vector<Scalar> axis_singular_points(const DivisorForm& f, int axis);

struct SymmetryReport {
  bool jets_agree = false;          // 3-jets of f and its sigma conjugate
  bool lifts_conjugate = false;     // p3 lift of f^sigma = D^-1 o (p4 lift of f) o D, D = (-x, y, iz)
  std::vector<std::string> p3_report;  // classes under p3 of f^sigma
  std::vector<std::string> p4_report;  // classes under p4 of f
  bool reports_equal = false;
  bool holds() const { return jets_agree && lifts_conjugate && reports_equal; }
};

SymmetryReport sigma_symmetry(const ExampleInstance& inst);

// Class and parameter line of a site, independent of coordinate scalings.
std::string invariant_summary(const SingularityClass& cls);

struct ExplorationPolicy {
  int depth = 3;
  int samples = 3;
};

struct ExploredNode {
  std::string path;
  Family family = Family::unclassified;
  std::string pattern;                     // pattern type along a core, if any
  int nondegenerate_nonexceptional = 0;
  std::string verdict;
};

struct ExplorationReport {
  std::vector<ExploredNode> nodes;
  int counterexamples = 0;
  int unclassified = 0;
  std::vector<std::string> closure_certificate;
  bool closure_consistent = false;
  bool holds() const { return counterexamples == 0 && unclassified == 0 && closure_consistent; }
};

ExplorationReport theorem_a_explore(const ExampleInstance& inst, const ExplorationPolicy& policy);

struct CurveSiteReport {
  std::string site;
  SingularityClass cls;
  std::optional<FormalCurve> curve;
  int residual_degree = -1;
  std::optional<RSData> rs;
  std::optional<ParabolicReport> parabolic;
  std::string status;
};

struct TheoremBReport {
  std::vector<CurveSiteReport> sites;  // p1, p2, p3,2, p4,2, q1
  std::vector<std::string> flags;
};

// Invariant curve and parabolic report of a degenerate spike, spinning corner
// or non-simple half corner, with the divisor transverse to the curve.
CurveSiteReport analyse_curve_site(const std::string& name, const DivisorForm& form, int curve_depth = 8);

TheoremBReport theorem_b_report(const ExampleInstance& inst, int curve_depth = 8);

}  // namespace germforge
