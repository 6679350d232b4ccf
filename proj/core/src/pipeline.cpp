#include "germforge/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "germforge/errors.hpp"

namespace germforge {

namespace {

Mat3 diag3(const Scalar& a, const Scalar& b, const Scalar& c) {
  return {{{a, Scalar(0), Scalar(0)}, {Scalar(0), b, Scalar(0)}, {Scalar(0), Scalar(0), c}}};
}

void check_order(const Poly& p, const char* name) {
  if (!p.is_zero() && p.min_degree() < 4)
    throw invariant_error(std::string(name) + " must have order >= 4, got a term of degree " +
                          std::to_string(p.min_degree()));
}

// p(a x, b y, c z).
Poly scale_poly(const Poly& p, const Scalar& a, const Scalar& b, const Scalar& c) {
  Poly out;
  for (const auto& [e, v] : p.terms()) out.add_to(e, v * a.pow(e[0]) * b.pow(e[1]) * c.pow(e[2]));
  return out;
}

// Saturated generator through degree 1: g divided by its monomial content on the divisor.
VectorField saturated_jet(const DivisorForm& f) {
  Exps content{1 << 20, 1 << 20, 1 << 20};
  bool any = false;
  for (int k = 0; k < 3; ++k) {
    if (f.g[k].is_zero()) continue;
    Exps m = f.g[k].monomial_content();
    for (int i = 0; i < 3; ++i) content[i] = std::min(content[i], m[i]);
    any = true;
  }
  if (!any) throw undecidable_error("displacement vanishes through the certified degree; raise N");
  for (int i = 0; i < 3; ++i)
    if (f.divisor[i] == 0) content[i] = 0;
  VectorField chi;
  for (int k = 0; k < 3; ++k) chi.comps[k] = series_div_monomial(f.g[k], content);
  chi.divisor = f.divisor + content;
  return chi;
}

std::vector<Scalar> nonzero(std::vector<Scalar> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); }), v.end());
  return v;
}

bool is_singular(const DivisorForm& f) {
  for (int k = 0; k < 3; ++k)
    if (!f.g[k].constant_term().is_zero()) return false;
  return true;
}

std::string family_name(const SingularityClass& c) { return to_string(c.family); }

struct FamilyCheck {
  int nondegenerate_nonexceptional = 0;
  bool decided = false;
};

// Samples points of a family of singular directions and compares the
// saturated leading part H there with the direction: H(v) = 0 means degenerate.
FamilyCheck check_family(const DivisorForm& f, const DirectionFamily& fam, int samples) {
  FamilyCheck out;
  const Poly& E = fam.equation;
  std::array<Poly, 3> H = saturated_leading_part(f);
  int k = 2;
  while (k >= 0 && E.degree_in(k) == 0) --k;
  if (k < 0) return out;
  int o0 = (k + 1) % 3, o1 = (k + 2) % 3;
  bool found_nondegenerate = false;
  for (const Scalar& s : generic_samples(samples, {Scalar(0)})) {
    for (int swap = 0; swap < 2; ++swap) {
      std::array<Scalar, 3> base;
      base[o0] = swap ? Scalar(1) : s;
      base[o1] = swap ? s : Scalar(1);
      UPoly u = UPoly::from_poly(E.substitute(o0, base[o0]).substitute(o1, base[o1]), k);
      if (u.degree() < 1) continue;
      for (const Scalar& t : field_roots(u)) {
        Direction v = base;
        v[k] = t;
        std::array<Scalar, 3> hv{H[0].eval(v), H[1].eval(v), H[2].eval(v)};
        out.decided = true;
        if (hv[0].is_zero() && hv[1].is_zero() && hv[2].is_zero()) continue;
        int nz = v[o0].is_zero() ? o1 : o0;
        Scalar lambda = hv[nz] / v[nz];
        for (int j = 0; j < 3; ++j)
          if (hv[j] != lambda * v[j]) throw invariant_error("family point is not a singular direction");
        if (!is_exceptional(f.divisor, v)) found_nondegenerate = true;
      }
    }
  }
  out.nondegenerate_nonexceptional = found_nondegenerate ? 1 : 0;
  return out;
}

}  // namespace

SiteReport analyse_site(const BlowupNode& node) {
  SiteReport s;
  s.name = node.name;
  s.node = &node;
  VectorField chi = saturated_jet(node.form);
  s.linear = linear_part(chi);
  s.quality = singularity_quality(s.linear, chi, chi.divisor);
  s.cls = classify_germ(node.form);
  return s;
}

Germ ExampleInstance::germ() const { return germ(N); }

Germ ExampleInstance::germ(int n) const {
  TruncSeries x = TruncSeries::variable(0, n), y = TruncSeries::variable(1, n), z = TruncSeries::variable(2, n);
  return Germ({y * z * (y - z) + P.to_series(n), x * (x * x - z * z) + Q.to_series(n), x * z * (y - z) + R.to_series(n)});
}

ExampleInstance build_instance(const Poly& P, const Poly& Q, const Poly& R, int N) {
  check_order(P, "P");
  check_order(Q, "Q");
  check_order(R, "R");
  if (N < 4) throw invariant_error("order N must be at least 4");
  ExampleInstance inst;
  inst.N = N;
  inst.P = P;
  inst.Q = Q;
  inst.R = R;
  Poly P4 = P.homogeneous_part(4), R4 = R.homogeneous_part(4);
  inst.R040 = R.coeff({0, 4, 0});
  inst.alpha_plus = (P4 - R4).eval({Scalar(1), Scalar(1), Scalar(1)});
  inst.alpha_minus = (P4 + R4).eval({Scalar(-1), Scalar(1), Scalar(1)});
  inst.h_p1 = R.coeff({0, 0, 4}) - Q.coeff({0, 0, 4});
  inst.h_p2 = R4.eval({Scalar(0), Scalar(1), Scalar(1)});
  if (inst.R040.is_zero()) inst.genericity_failures.push_back("R040 = 0");
  if (inst.alpha_plus.is_zero()) inst.genericity_failures.push_back("alpha+ = (P4 - R4)(1,1,1) = 0");
  if (inst.alpha_minus.is_zero()) inst.genericity_failures.push_back("alpha- = (P4 + R4)(-1,1,1) = 0");
  if (inst.h_p1.is_zero()) inst.genericity_failures.push_back("h(p1) = R004 - Q004 = 0");
  if (inst.h_p2.is_zero()) inst.genericity_failures.push_back("h(p2) = R4(0,1,1) = 0");
  return inst;
}

ExampleInstance default_instance(int N) {
  return build_instance(Poly::variable(0).pow(4), Poly(), Poly::variable(1).pow(4), N);
}

ExampleInstance generic_instance(int N) {
  Poly y = Poly::variable(1), z = Poly::variable(2);
  return build_instance(Poly(), Poly(), y.pow(4) + z.pow(4) + Scalar::imag_unit() * (y * z.pow(3)), N);
}

ExampleInstance sigma_conjugate(const ExampleInstance& inst) {
  Scalar i = Scalar::imag_unit();
  auto sig = [&](const Poly& p) { return scale_poly(p, -i, i, i); };
  return build_instance(i * sig(inst.P), -i * sig(inst.Q), -i * sig(inst.R), inst.N);
}

const SiteReport& Resolution::site(const std::string& name) const {
  for (const auto& s : sites)
    if (s.name == name) return s;
  throw invariant_error("no site named " + name);
}

int pipeline_root_order(int N) { return N + 7; }

std::vector<Scalar> axis_singular_points(const DivisorForm& f, int axis) {
  // g restricted to the axis, as univariate polynomials in x_axis.
  std::vector<UPoly> polys;
  for (int k = 0; k < 3; ++k) {
    TruncSeries s = f.g[k];
    for (int j = 0; j < 3; ++j)
      if (j != axis) s = s.restrict_zero(j);
    std::vector<Scalar> c(s.N() + 1);
    for (int n = 0; n <= s.N(); ++n) {
      Exps e{0, 0, 0};
      e[axis] = n;
      c[n] = s.coeff(e);
    }
    UPoly u(c);
    if (!u.is_zero()) polys.push_back(u);
  }
  if (polys.empty()) throw invariant_error("axis lies in the singular locus");
  // Candidates: roots of the lowest-degree restriction; kept when every
  // restriction vanishes there through the certified degree.
  std::sort(polys.begin(), polys.end(), [](const UPoly& a, const UPoly& b) { return a.degree() < b.degree(); });
  std::vector<Scalar> out;
  for (const Scalar& t : field_roots(polys.front())) {
    bool ok = true;
    for (const auto& p : polys)
      if (!p(t).is_zero()) ok = false;
    if (ok) out.push_back(t);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

Resolution resolve_pi0(const ExampleInstance& inst) {
  if (!inst.resolvable()) throw invariant_error("genericity failure: R040 = 0");
  Resolution res;
  Germ f = inst.germ();
  res.root = std::make_unique<BlowupNode>(f);
  BlowupNode& root = *res.root;
  root.name = "origin";
  res.first_directions = characteristic_directions(f);

  const Scalar one(1), zero(0);
  const std::array<std::pair<const char*, Direction>, 4> first{{{"p1", {zero, zero, one}},
                                                                 {"p2", {zero, one, one}},
                                                                 {"p3", {one, one, one}},
                                                                 {"p4", {Scalar(-1), one, one}}}};
  for (const auto& [name, v] : first) root.add_child(name, Chart::point(v, 2), "E1");
  BlowupNode& p5 = root.add_child("p5", Chart::point({zero, one, zero}, 1), "E1");
  BlowupNode& p51 = p5.add_child("p5,1", Chart::point({one, zero, zero}, 0), "E2");

  // Points of the line L on E3: L is the z-axis of the x-chart and the x-axis of the z-chart.
  BlowupNode& Lx = p51.add_child("L[1:0:0]", Chart::point({one, zero, zero}, 0), "E3");
  BlowupNode& Lz = p51.add_child("L[0:0:1]", Chart::point({zero, zero, one}, 2), "E3");
  Lx.verdict = Lz.verdict = "on the center L";

  std::vector<Scalar> along = nonzero(axis_singular_points(lift(Lx.form, Chart::line(0, 1)), 2));
  if (along.size() != 1)
    throw invariant_error("expected one further singular point along L, found " + std::to_string(along.size()));
  const Scalar t0 = along.front();
  BlowupNode& Lh = p51.add_child("L[1:0:" + t0.str() + "]", Chart::point({one, zero, t0}, 0), "E3");
  Lh.verdict = "on the center L";

  std::vector<Scalar> fiber = nonzero(axis_singular_points(lift(Lz.form, Chart::line(2, 1)), 1));
  if (fiber.size() != 1)
    throw invariant_error("expected one further singular point on the fiber over [0:0:1], found " +
                          std::to_string(fiber.size()));
  const Scalar y0 = fiber.front();

  Lx.add_child("q1", Chart::line(0, 1), "E4");
  Lh.add_child("q2", Chart::line(0, 1), "E4");
  Lz.add_child("q3", Chart::line(2, 1), "E4");
  Lz.add_child("q4", Chart::line(2, 1, y0), "E4");
  Lz.add_child("q5", Chart::line(1, 2), "E4");

  p5.verdict = "blown up";
  p51.verdict = "blown up";
  for (const char* name : {"p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4", "q5"}) {
    const BlowupNode* n = root.find(name);
    if (!is_singular(n->form)) throw invariant_error(std::string(name) + " is not a singular point");
    res.sites.push_back(analyse_site(*n));
    const_cast<BlowupNode*>(n)->verdict = to_string(res.sites.back().quality);
  }
  return res;
}

Resolution resolve_pi0_tilde(const ExampleInstance& inst) {
  if (!inst.forms_generic()) {
    std::string why;
    for (const auto& s : inst.genericity_failures)
      if (s.rfind("h(", 0) != 0) why += (why.empty() ? "" : "; ") + s;
    throw invariant_error("genericity failure: " + why);
  }
  Resolution res = resolve_pi0(inst);
  std::vector<SiteReport> sites;
  for (const char* base : {"p3", "p4"}) {
    auto* node = const_cast<BlowupNode*>(res.root->find(base));
    DirectionReport dirs = singular_directions(node->form);
    if (!dirs.families.empty() || !dirs.unresolved.empty())
      throw invariant_error(std::string("unexpected singular directions above ") + base);
    for (const auto& d : dirs.resolved) {
      BlowupNode& child = node->add_child("?", Chart::point(d.v, default_chart(d.v)), std::string("E") + base);
      SingularityClass cls = classify_germ(child.form);
      if (cls.family == Family::simple_corner)
        child.name = std::string(base) + ",1";
      else if (cls.family == Family::spinning_corner)
        child.name = std::string(base) + ",2";
      else
        throw invariant_error(std::string("unexpected class above ") + base + ": " + cls.summary());
    }
    node->verdict = "blown up";
  }
  for (const auto& s : res.sites)
    if (s.name != "p3" && s.name != "p4") sites.push_back(s);
  for (const char* name : {"p3,1", "p3,2", "p4,1", "p4,2"}) {
    const BlowupNode* n = res.root->find(name);
    if (!n) throw invariant_error(std::string("missing ") + name);
    sites.push_back(analyse_site(*n));
  }
  static const std::vector<std::string> order{"p1", "p2", "p3,1", "p3,2", "p4,1", "p4,2",
                                              "q1", "q2", "q3", "q4", "q5"};
  std::sort(sites.begin(), sites.end(), [&](const SiteReport& a, const SiteReport& b) {
    return std::find(order.begin(), order.end(), a.name) < std::find(order.begin(), order.end(), b.name);
  });
  for (auto& s : sites) const_cast<BlowupNode*>(s.node)->verdict = s.cls.summary();
  res.sites = std::move(sites);
  return res;
}

std::string invariant_summary(const SingularityClass& cls) {
  std::ostringstream os;
  os << to_string(cls.family);
  switch (cls.family) {
    case Family::simple_corner:
      os << " a=" << cls.a << " b=" << cls.b << " c=" << cls.c;
      if (!cls.mu.is_zero()) os << " lambda/mu=" << (cls.lambda / cls.mu).str();
      break;
    case Family::degenerate_spike:
      os << " c=" << cls.c;
      if (!cls.det.is_zero()) os << " trace^2/det=" << (cls.trace * cls.trace / cls.det).str();
      break;
    case Family::spinning_corner: {
      os << " b=" << cls.b << " c=" << cls.c;
      const Scalar &by = cls.q1[1], &bz = cls.q1[2], &cy = cls.r1[1], &cz = cls.r1[2];
      Scalar delta = by * cz - bz * cy;
      os << " b_y=c_y:" << (by == cy) << " b_z=c_z:" << (bz == cz);
      if (!delta.is_zero()) os << " ratio=" << ((cz - bz) * (by - cy) / delta).str();
      break;
    }
    case Family::half_corner:
      os << " c=" << cls.c << (cls.simple ? " simple" : " non-simple");
      if (!cls.simple && !cls.gamma.is_zero()) os << " b_y/gamma=" << (cls.q1[1] / cls.gamma).str();
      break;
    default: break;
  }
  return os.str();
}

SymmetryReport sigma_symmetry(const ExampleInstance& inst) {
  SymmetryReport rep;
  ExampleInstance fs = sigma_conjugate(inst);
  Germ f = inst.germ(), g = fs.germ();
  rep.jets_agree = true;
  for (int k = 0; k < 3; ++k)
    if (f.disp(k).jet(3) != g.disp(k).jet(3)) rep.jets_agree = false;

  DivisorForm root_f = DivisorForm::of(f), root_g = DivisorForm::of(g);
  Scalar one(1), i = Scalar::imag_unit();
  DivisorForm p4 = lift(root_f, Chart::point({Scalar(-1), one, one}, 2));
  DivisorForm p3s = lift(root_g, Chart::point({one, one, one}, 2));
  // D(x, y, z) = (-x, y, iz) satisfies sigma o pi_p3 = pi_p4 o D.
  DivisorForm conj = change_coordinates(p4, {0, 1, 2}, diag3(Scalar(-1), one, -i));
  rep.lifts_conjugate = conj.divisor == p3s.divisor;
  for (int k = 0; k < 3 && rep.lifts_conjugate; ++k)
    if (conj.g[k] != p3s.g[k]) rep.lifts_conjugate = false;

  auto subtree = [](const ExampleInstance& in, const std::string& base) {
    Resolution r = resolve_pi0_tilde(in);
    std::vector<std::string> out;
    const BlowupNode* n = r.root->find(base);
    out.push_back(base + ": " + invariant_summary(classify_germ(n->form)));
    for (const char* suffix : {",1", ",2"}) {
      const SiteReport& s = r.site(base + suffix);
      out.push_back(base + suffix + ": " + invariant_summary(s.cls));
    }
    return out;
  };
  rep.p4_report = subtree(inst, "p4");
  rep.p3_report = subtree(fs, "p3");
  rep.reports_equal = rep.p3_report.size() == rep.p4_report.size();
  for (std::size_t k = 0; k < rep.p3_report.size() && rep.reports_equal; ++k)
    if (rep.p3_report[k].substr(rep.p3_report[k].find(':')) != rep.p4_report[k].substr(rep.p4_report[k].find(':')))
      rep.reports_equal = false;
  return rep;
}

ExplorationReport theorem_a_explore(const ExampleInstance& inst, const ExplorationPolicy& policy) {
  ExplorationReport rep;
  Resolution res = resolve_pi0_tilde(inst);
  struct Item {
    std::string path;
    DivisorForm form;
    int depth;
  };
  std::deque<Item> queue;
  // The refined points p3, p4 of the first model are checked but not expanded:
  // their blow-ups are the sites p3,k and p4,k.
  for (const char* base : {"p3", "p4"}) {
    const BlowupNode* n = res.root->find(base);
    ExploredNode e;
    e.path = base;
    DirectionReport dirs = singular_directions(n->form);
    for (const auto& d : dirs.resolved)
      if (!d.degenerate && !d.exceptional) ++e.nondegenerate_nonexceptional;
    e.family = Family::unclassified;
    e.verdict = "refined by point blow-ups";
    rep.counterexamples += e.nondegenerate_nonexceptional > 0;
    rep.nodes.push_back(e);
  }
  for (const auto& s : res.sites) queue.push_back({s.name, s.node->form, 0});

  std::map<std::string, std::pair<int, int>> closure_stats;  // family -> (checked, consistent)
  std::map<std::string, int> pattern_stats;
  rep.closure_consistent = true;
  while (!queue.empty()) {
    Item it = std::move(queue.front());
    queue.pop_front();
    ExploredNode e;
    e.path = it.path;
    try {
      DirectionReport dirs = singular_directions(it.form);
      for (const auto& d : dirs.resolved)
        if (!d.degenerate && !d.exceptional) ++e.nondegenerate_nonexceptional;
      for (const auto& fam : dirs.families) {
        FamilyCheck fc = check_family(it.form, fam, policy.samples);
        e.nondegenerate_nonexceptional += fc.nondegenerate_nonexceptional;
        if (!fc.decided) {
          e.verdict = "undecided family of directions: " + fam.equation.str();
          ++rep.unclassified;
        }
      }
      SingularityClass cls = classify_germ(it.form);
      e.family = cls.family;
      if (cls.family == Family::regular) {
        e.verdict = "regular";
      } else if (cls.family == Family::unclassified) {
        e.verdict = "unclassified: " + cls.summary();
        ++rep.unclassified;
      } else {
        if (e.verdict.empty()) e.verdict = cls.summary();
        for (int k = 0; k < 3; ++k)
          if (axis_in_singular_locus(it.form, k)) {
            PatternType p = classify_pattern(it.form, k);
            e.pattern = to_string(p.kind);
            ++pattern_stats[e.pattern];
          }
        if (it.depth < policy.depth) {
          ClosureReport cr = blowup_closure(it.form, cls, policy.samples);
          auto& st = closure_stats[family_name(cls)];
          ++st.first;
          if (cr.consistent())
            ++st.second;
          else
            rep.closure_consistent = false;
          DivisorForm nf = normal_form(it.form, cls);
          int idx = 0;
          for (const auto& entry : cr.entries) {
            Direction v = entry.v;
            queue.push_back({it.path + "/" + std::to_string(idx++) + direction_str(v),
                             lift(nf, Chart::point(v, default_chart(v))), it.depth + 1});
          }
        }
      }
    } catch (const undecidable_error& err) {
      e.verdict = std::string("undecided: ") + err.what();
      ++rep.unclassified;
    }
    rep.counterexamples += e.nondegenerate_nonexceptional > 0;
    rep.nodes.push_back(e);
  }
  for (const auto& [fam, st] : closure_stats)
    rep.closure_certificate.push_back(fam + ": " + std::to_string(st.second) + "/" + std::to_string(st.first) +
                                      " closure checks consistent");
  for (const auto& [pat, n] : pattern_stats)
    rep.closure_certificate.push_back("pattern " + pat + ": " + std::to_string(n) + " cores");
  rep.closure_certificate.push_back("nodes explored: " + std::to_string(rep.nodes.size()) + " to depth " +
                                    std::to_string(policy.depth));
  return rep;
}

namespace {

int divisor_axis(const DivisorForm& f) {
  int axis = -1;
  for (int k = 0; k < 3; ++k)
    if (f.divisor[k] > 0) {
      if (axis >= 0) throw invariant_error("curve axis is ambiguous: several divisor components");
      axis = k;
    }
  if (axis < 0) throw invariant_error("no divisor component to be transverse to");
  return axis;
}

void spike_site(CurveSiteReport& rep, const DivisorForm& form, int curve_depth) {
  int axis = divisor_axis(form);
  int deep = std::max(curve_depth, form.N() - 1);
  FormalCurve c = curve_from_sequence(form, axis, unique_transverse_walker(axis), deep);
  rep.residual_degree = verify_invariance(form, c, curve_depth);
  FormalCurve shown = c;
  shown.depth = curve_depth;
  shown.x.resize(curve_depth + 1);
  shown.y.resize(curve_depth + 1);
  shown.sequence.resize(std::min<std::size_t>(shown.sequence.size(), curve_depth));
  rep.curve = shown;
  StraightenedPair sp = straighten_pair(form, c);
  rep.rs = rs_reduce(sp, Family::degenerate_spike, rep.cls.c);
  rep.parabolic = parabolic_report(*rep.rs);
  rep.status = "unique transverse curve; " + std::to_string(rep.parabolic->count) + " parabolic manifolds";
}

void spinning_site(CurveSiteReport& rep, const DivisorForm& form, int curve_depth) {
  SpinningCurveAnalysis a = spinning_corner_curve_analysis(form, rep.cls, curve_depth);
  if (a.verdict != CurveVerdict::unique) {
    rep.status = to_string(a.verdict) + " (" + a.detail + ")";
    if (a.verdict == CurveVerdict::none) rep.status = "none transverse: no transverse curve; surface case undecided";
    return;
  }
  rep.curve = *a.curve;
  rep.residual_degree = verify_invariance(form, *a.curve, curve_depth);
  const DivisorForm& hc = *a.half_corner_form;
  FormalCurve deep = half_corner_curve(hc, *a.half_corner, std::max(curve_depth, hc.N() - 1));
  StraightenedPair sp = straighten_pair(hc, deep);
  rep.rs = rs_reduce(sp, Family::half_corner, a.half_corner->c);
  rep.parabolic = parabolic_report(*rep.rs);
  rep.status = "unique transverse curve through the half corner at y0 = " + a.y0->str() + "; " +
               std::to_string(rep.parabolic->count) + " parabolic manifolds";
}

void half_corner_site(CurveSiteReport& rep, const DivisorForm& form, int curve_depth) {
  if (rep.cls.simple) {
    rep.status = "simple half corner: no transverse curve claimed";
    return;
  }
  FormalCurve c = half_corner_curve(form, rep.cls, std::max(curve_depth, form.N() - 1));
  rep.residual_degree = verify_invariance(form, c, curve_depth);
  FormalCurve shown = c;
  shown.depth = curve_depth;
  shown.x.resize(curve_depth + 1);
  shown.y.resize(curve_depth + 1);
  rep.curve = shown;
  StraightenedPair sp = straighten_pair(form, c);
  rep.rs = rs_reduce(sp, Family::half_corner, rep.cls.c);
  rep.parabolic = parabolic_report(*rep.rs);
  rep.status = "unique transverse curve; " + std::to_string(rep.parabolic->count) + " parabolic manifolds";
}

}  // namespace

CurveSiteReport analyse_curve_site(const std::string& name, const DivisorForm& form, int curve_depth) {
  CurveSiteReport site;
  site.site = name;
  site.cls = classify_germ(form);
  switch (site.cls.family) {
    case Family::degenerate_spike: spike_site(site, form, curve_depth); break;
    case Family::spinning_corner: spinning_site(site, form, curve_depth); break;
    case Family::half_corner: half_corner_site(site, form, curve_depth); break;
    default: site.status = "no curve analysis for class " + site.cls.summary();
  }
  return site;
}

TheoremBReport theorem_b_report(const ExampleInstance& inst, int curve_depth) {
  TheoremBReport rep;
  if (inst.h_p1.is_zero()) rep.flags.push_back("p1: R004 = Q004, the curve may be pointwise fixed");
  if (inst.h_p2.is_zero()) rep.flags.push_back("p2: R4(0,1,1) = 0, the curve may be pointwise fixed");
  Resolution res = resolve_pi0_tilde(inst);
  for (const char* name : {"p1", "p2", "p3,2", "p4,2", "q1"}) {
    CurveSiteReport site;
    site.site = name;
    const SiteReport& s = res.site(name);
    site.cls = s.cls;
    try {
      site = analyse_curve_site(name, s.node->form, curve_depth);
    } catch (const error& e) {
      site.status = std::string("failed: ") + e.what();
      rep.flags.push_back(std::string(name) + ": " + e.what());
    }
    rep.sites.push_back(std::move(site));
  }
  return rep;
}

}  // namespace germforge
