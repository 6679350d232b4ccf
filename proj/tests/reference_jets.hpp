#pragma once

// Reference jets of the example lifts for P = x^4, Q = 0, R = y^4, written as
// x_k o f - x_k = x^factor * bracket, where only the bracket monomials
// selected by `known` are fixed by the reference form.

#include <functional>
#include <string>
#include <vector>

#include "germforge/blowup.hpp"
#include "germforge/poly.hpp"

namespace reference {

using namespace germforge;

struct Component {
  Exps factor;
  Poly bracket;
  std::function<bool(const Exps&)> known;
};

struct ChartJet {
  std::string name;
  std::array<Component, 3> comps;
};

struct Mismatch {
  std::string chart;
  int component;
  Exps monomial;  // of f - id
  Scalar expected, actual;
};

inline Poly P_(const std::vector<std::pair<Exps, long>>& terms) {
  Poly p;
  for (const auto& [e, c] : terms) p.add_to(e, Scalar(c));
  return p;
}

inline int deg(const Exps& e) { return degree(e); }

inline std::vector<ChartJet> reference_jets() {
  std::vector<ChartJet> out;
  // First blow-up, z chart at the origin.
  auto low_z = [](const Exps& b) { return b[2] <= 1; };
  out.push_back({"stage 1, z chart",
                 {Component{{0, 0, 2}, P_({{{0, 1, 0}, -1}, {{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{2, 1, 0}, -1},
                                            {{4, 0, 1}, 1}, {{1, 4, 1}, -1}}), low_z},
                  Component{{0, 0, 2}, P_({{{1, 0, 0}, -1}, {{1, 1, 0}, 1}, {{3, 0, 0}, 1}, {{1, 2, 0}, -1},
                                            {{0, 5, 1}, -1}}), low_z},
                  Component{{0, 0, 3}, P_({{{1, 0, 0}, -1}, {{1, 1, 0}, 1}, {{0, 4, 1}, 1}}), low_z}}});
  // First blow-up, y chart at [0:1:0].
  out.push_back({"stage 1, y chart",
                 {Component{{0, 2, 0}, P_({{{0, 0, 1}, 1}, {{0, 0, 2}, -1}, {{4, 0, 0}, -1}, {{2, 0, 2}, 1}}),
                            [](const Exps& b) { return b[1] == 0 || deg(b) <= 2; }},
                  Component{{0, 3, 0}, P_({{{3, 0, 0}, 1}, {{1, 0, 2}, -1}}),
                            [](const Exps& b) { return b[1] == 0 || deg(b) <= 1; }},
                  Component{{0, 2, 0},
                            P_({{{1, 0, 1}, 1}, {{1, 0, 2}, -1}, {{3, 0, 1}, -1}, {{1, 0, 3}, 1}, {{0, 1, 0}, 1}}),
                            [](const Exps& b) { return b[1] == 0 || deg(b) <= 2; }}}});
  auto quad = [](const Exps& b) { return deg(b) <= 2; };
  out.push_back({"stage 2, x chart",
                 {Component{{3, 2, 0}, P_({{{0, 0, 1}, 1}}), quad}, Component{{2, 3, 0}, P_({{{0, 0, 1}, -1}}), quad},
                  Component{{2, 2, 0}, P_({{{0, 1, 0}, 1}, {{1, 0, 1}, 1}, {{0, 0, 2}, -1}}), quad}}});
  auto not_x2y = [](const Exps& b) { return !(b[0] >= 2 && b[1] >= 1); };
  out.push_back(
      {"stage 3, x chart",
       {Component{{6, 2, 0}, P_({{{0, 0, 1}, 1}, {{2, 0, 0}, -1}, {{2, 0, 2}, -1}}), not_x2y},
        Component{{5, 3, 0}, P_({{{0, 0, 1}, -2}, {{2, 0, 0}, 3}, {{2, 0, 2}, 2}}), not_x2y},
        Component{{4, 2, 0}, P_({{{0, 1, 0}, 1}, {{1, 0, 1}, 1}, {{1, 0, 2}, -2}}),
                  [](const Exps& b) { return !(b[0] >= 3 || (b[0] >= 2 && b[1] >= 1)); }}}});
  auto not_z2yz = [](const Exps& b) { return !(b[2] >= 3 || (b[2] >= 2 && b[1] >= 1)); };
  out.push_back({"stage 3, z chart",
                 {Component{{3, 2, 4}, P_({{{0, 1, 0}, -1}, {{0, 0, 1}, 2}, {{1, 0, 1}, -1}}), not_z2yz},
                  Component{{2, 3, 4}, P_({{{0, 1, 0}, -1}, {{1, 0, 1}, -1}}), not_z2yz},
                  Component{{2, 2, 5}, P_({{{0, 1, 0}, 1}, {{0, 0, 1}, -1}, {{1, 0, 1}, 1}}), not_z2yz}}});
  auto x_lt2 = [](const Exps& b) { return b[0] < 2; };
  out.push_back({"stage 4, x chart over the x chart",
                 {Component{{8, 2, 0}, P_({{{0, 0, 1}, 1}}), x_lt2}, Component{{7, 3, 0}, P_({{{0, 0, 1}, -3}}), x_lt2},
                  Component{{7, 2, 0}, P_({{{0, 1, 0}, 1}, {{0, 0, 1}, 1}, {{0, 0, 2}, -2}}), x_lt2}}});
  auto y_lt2 = [](const Exps& b) { return b[1] < 2; };
  out.push_back({"stage 4, y chart over the x chart",
                 {Component{{6, 7, 0}, P_({{{0, 0, 1}, 3}}), y_lt2}, Component{{5, 8, 0}, P_({{{0, 0, 1}, -2}}), y_lt2},
                  Component{{4, 7, 0}, P_({{{0, 0, 0}, 1}, {{1, 0, 1}, 1}, {{1, 0, 2}, -2}}),
                            [](const Exps& b) { return b[1] < 1; }}}});
  auto z_0 = [](const Exps& b) { return b[2] == 0; };
  out.push_back({"stage 4, z chart over the z chart",
                 {Component{{3, 2, 7}, P_({{{0, 0, 0}, 2}, {{1, 0, 0}, -1}, {{0, 1, 0}, -1}}), z_0},
                  Component{{2, 3, 7}, P_({{{0, 0, 0}, 1}, {{1, 0, 0}, -2}, {{0, 1, 0}, -2}}), z_0},
                  Component{{2, 2, 8}, P_({{{0, 0, 0}, -1}, {{1, 0, 0}, 1}, {{0, 1, 0}, 1}}), z_0}}});
  auto y_0 = [](const Exps& b) { return b[1] == 0; };
  out.push_back({"stage 4, y chart over the z chart",
                 {Component{{3, 7, 4}, P_({{{0, 0, 0}, -1}, {{0, 0, 1}, 2}, {{1, 0, 1}, -1}}), y_0},
                  Component{{2, 8, 4}, P_({{{0, 0, 0}, -1}, {{1, 0, 1}, -1}}), y_0},
                  Component{{2, 7, 5}, P_({{{0, 0, 0}, 1}, {{0, 0, 1}, -1}, {{1, 0, 1}, 1}}), y_0}}});
  return out;
}

// Lifts of the example in the order of reference_jets().
inline std::vector<DivisorForm> example_charts(const Germ& f) {
  Scalar one(1), zero(0);
  DivisorForm root = DivisorForm::of(f);
  DivisorForm p1 = lift(root, Chart::point({zero, zero, one}, 2));
  DivisorForm p5 = lift(root, Chart::point({zero, one, zero}, 1));
  DivisorForm p51 = lift(p5, Chart::point({one, zero, zero}, 0));
  DivisorForm lx = lift(p51, Chart::point({one, zero, zero}, 0));
  DivisorForm lz = lift(p51, Chart::point({zero, zero, one}, 2));
  return {p1, p5, p51, lx, lz, lift(lx, Chart::line(0, 1)), lift(lx, Chart::line(1, 0)), lift(lz, Chart::line(2, 1)),
          lift(lz, Chart::line(1, 2))};
}

// Compares every certified coefficient of f - id = x^divisor g determined by
// the reference form. Returns the number of compared coefficients.
inline int compare(const ChartJet& jet, const DivisorForm& f, std::vector<Mismatch>& out) {
  int compared = 0;
  for (int k = 0; k < 3; ++k) {
    const Component& c = jet.comps[k];
    const TruncSeries& g = f.g[k];
    for (std::size_t i = 0; i < mono_count(g.N()); ++i) {
      const Exps& m = mono_at(i);
      Exps e = m + f.divisor;
      Scalar expected;
      if (divides(c.factor, e)) {
        Exps b = e - c.factor;
        if (!c.known(b)) continue;
        expected = c.bracket.coeff(b);
      }
      ++compared;
      if (g.coeff(m) != expected) out.push_back({jet.name, k, e, expected, g.coeff(m)});
    }
  }
  return compared;
}

}  // namespace reference
