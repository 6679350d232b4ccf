#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "germforge/germ.hpp"
#include "germforge/infgen.hpp"

namespace germforge {

using Direction = std::array<Scalar, 3>;

// Local form of a regular blow-up chart: x_k o pi = x_j^{lift[k]} (x_k + shift[k])
// for k != j and x_j o pi = x_j. Point blow-ups have lift = 1 off j, line
// blow-ups of {x_j = x_q = 0} have lift = 1 only at q.
struct Chart {
  enum class Kind { point, line };
  Kind kind = Kind::point;
  int j = 2;                       // coordinate generating the new exceptional component
  int q = -1;                      // second axis of a line center
  std::array<int, 3> lift{1, 1, 0};
  std::array<Scalar, 3> shift{};

  static Chart point(const Direction& v, int j);
  static Chart line(int j, int q, const Scalar& shift = Scalar(0));
  // Substitution series (x_k o pi) at truncation N.
  Map3 substitution(int N) const;
  std::string str() const;
};

Germ lift(const Germ& f, const Chart& chart);
// Lift at the point of the exceptional divisor given by v, in the x_j chart.
Germ lift_point_blowup(const Germ& f, const Direction& v, int j);
// Lift along the coordinate line {x_j = x_q = 0}; the studied point has
// x_q-coordinate `shift` on the fiber of the chart where x_j is exceptional.
Germ lift_line_blowup(const Germ& f, int j, int q, const Scalar& shift = Scalar(0));
// Pull-back of a formal vector field vanishing on the center.
VectorField lift_field(const VectorField& chi, const Chart& chart);

// f = id + x^divisor * g with g exact through degree N(). Blow-ups in this
// form cost about one degree of g each, independently of the divisor degree.
struct DivisorForm {
  Exps divisor{0, 0, 0};
  Map3 g;

  int N() const { return std::min({g[0].N(), g[1].N(), g[2].N()}); }
  static DivisorForm of(const Germ& f);
  // Largest absolute degree a materialized germ can carry.
  bool materializable() const;
  // The germ with f - id = x^divisor * g, exact through |divisor| + N().
  Germ germ() const;
};

// Lift at a center contained in the zero set of g.
DivisorForm lift(const DivisorForm& f, const Chart& chart);

// Chart index used for a direction: the last nonzero coordinate.
int default_chart(const Direction& v);
Direction normalize_direction(const Direction& v);
std::string direction_str(const Direction& v);

struct BlowupNode {
  std::string name;
  Chart chart;                        // how the node's coordinates arise from the parent
  bool has_center = false;            // false for the root
  DivisorForm form;
  std::array<std::string, 3> components;  // divisor component per coordinate plane
  std::string verdict;
  std::string detail;
  std::vector<std::unique_ptr<BlowupNode>> children;

  explicit BlowupNode(const Germ& g) : form(DivisorForm::of(g)) {}
  explicit BlowupNode(DivisorForm f) : form(std::move(f)) {}
  Germ germ() const { return form.germ(); }
  BlowupNode& add_child(std::string name, const Chart& chart, const std::string& component);
  std::size_t size() const;
  std::vector<const BlowupNode*> leaves() const;
  const BlowupNode* find(const std::string& name) const;
};

// True when v is tangent to some visible divisor component of the node.
bool is_exceptional(const BlowupNode& node, const Direction& v);
bool is_exceptional(const Exps& divisor, const Direction& v);

std::string tree_json(const BlowupNode* root);
std::string tree_dot(const BlowupNode* root);

}  // namespace germforge
