#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "germforge/classify.hpp"
#include "germforge/curves.hpp"
#include "germforge/directions.hpp"
#include "germforge/errors.hpp"
#include "germforge/io.hpp"
#include "germforge/pipeline.hpp"

using namespace germforge;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, failure = 1, parse_failure = 2, invariant_failure = 3, undecidable = 4 };

struct Config {
  std::string input;
  std::string example;
  int order = 0;
  int depth = 3;
  int samples = 3;
  int curve_depth = 8;
  std::string format = "text";
  std::string out;
  bool tilde = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExampleInstance example(const std::string& name, int N) {
  if (name == "default") return default_instance(N);
  if (name == "generic") return generic_instance(N);
  throw parse_error("unknown example '" + name + "' (expected default or generic)");
}

// Instance for the pipeline commands; order is the working order N.
ExampleInstance load_instance(const Config& cfg, int default_order) {
  int N = cfg.order > 0 ? cfg.order : default_order;
  if (cfg.input.empty()) return example(cfg.example.empty() ? "generic" : cfg.example, pipeline_root_order(N));
  ExampleInstance inst = instance_from_json(read_file(cfg.input));
  if (cfg.order > 0 || inst.N < pipeline_root_order(N))
    inst = build_instance(inst.P, inst.Q, inst.R, pipeline_root_order(N));
  return inst;
}

// Germ for the local commands: a germ file, or the germ of an instance.
Germ load_germ(const Config& cfg) {
  if (cfg.input.empty()) return example(cfg.example.empty() ? "default" : cfg.example, cfg.order > 0 ? cfg.order : 12).germ();
  std::string text = read_file(cfg.input);
  if (is_germ_json(text)) {
    Germ f = germ_from_json(text);
    if (cfg.order > 0 && cfg.order < f.N()) f = Germ({f.disp(0).truncated(cfg.order), f.disp(1).truncated(cfg.order), f.disp(2).truncated(cfg.order)}, f.divisor());
    return f;
  }
  ExampleInstance inst = instance_from_json(text);
  return inst.germ(cfg.order > 0 ? cfg.order : inst.N);
}

std::vector<std::string> strs(const std::vector<Scalar>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

json class_json(const SingularityClass& c) {
  json j;
  j["family"] = to_string(c.family);
  j["summary"] = c.summary();
  j["invariants"] = invariant_summary(c);
  j["roles"] = c.roles;
  j["a"] = c.a;
  j["b"] = c.b;
  j["c"] = c.c;
  for (auto [key, val] : {std::pair{"lambda", &c.lambda}, {"mu", &c.mu}, {"alpha", &c.alpha}, {"beta", &c.beta},
                          {"gamma", &c.gamma}, {"trace", &c.trace}, {"det", &c.det}, {"eigen", &c.eigen}})
    j[key] = val->str();
  j["q1"] = strs({c.q1.begin(), c.q1.end()});
  j["r1"] = strs({c.r1.begin(), c.r1.end()});
  j["simple"] = c.simple;
  return j;
}

json linear_json(const LinearPartReport& l) {
  json j;
  j["eigenvalues"] = strs(l.eigenvalues);
  j["eigen_complete"] = l.eigen_complete;
  j["rank"] = l.rank;
  j["nilpotent"] = l.nilpotent;
  return j;
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

// ---------------------------------------------------------------- commands

json cmd_directions(const Config& cfg, std::string& text) {
  Germ f = load_germ(cfg);
  if (f.is_identity()) throw invariant_error("f = id");
  bool saturated = degree(f.divisor()) > 0;
  DirectionReport rep = saturated ? singular_directions(f) : characteristic_directions(f);
  json j;
  j["kind"] = saturated ? "singular" : "characteristic";
  j["directions"] = json::array();
  std::ostringstream t;
  int total = 0;
  bool all_known = rep.families.empty() && rep.unresolved.empty();
  for (const auto& d : rep.resolved) {
    json e;
    e["direction"] = direction_str(d.v);
    e["multiplier"] = d.multiplier.str();
    e["degenerate"] = d.degenerate;
    e["exceptional"] = d.exceptional;
    t << direction_str(d.v) << "  multiplier " << d.multiplier.str() << (d.degenerate ? "  degenerate" : "")
      << (d.exceptional ? "  exceptional" : "");
    if (!saturated && rep.families.empty()) {
      int m = direction_multiplicity(f, d.v);
      e["multiplicity"] = m;
      total += m;
      t << "  multiplicity " << m;
    }
    t << "\n";
    j["directions"].push_back(e);
  }
  for (const auto& fam : rep.families) t << "family: " << fam.description << "\n";
  for (const auto& u : rep.unresolved) t << "unresolved: " << u << "\n";
  j["families"] = json::array();
  for (const auto& fam : rep.families) j["families"].push_back(fam.description);
  j["unresolved"] = rep.unresolved;
  j["dicriticality"] = rep.dicriticality;
  if (!saturated && all_known) {
    j["multiplicity_sum"] = total;
    t << "multiplicity sum " << total << "\n";
  }
  text = t.str();
  return j;
}

json cmd_classify(const Config& cfg, std::string& text) {
  Germ f = load_germ(cfg);
  SingularityClass c = classify_germ(DivisorForm::of(f));
  json j = class_json(c);
  j["linear"] = linear_json(c.linear);
  text = c.summary() + "\n" + invariant_summary(c) + "\n";
  return j;
}

json cmd_explore(const Config& cfg, std::string& text) {
  DivisorForm f = DivisorForm::of(load_germ(cfg));
  SingularityClass c = classify_germ(f);
  ClosureReport rep = blowup_closure(f, c, cfg.samples);
  json j;
  j["class"] = class_json(c);
  j["children"] = json::array();
  std::ostringstream t;
  t << c.summary() << "\n";
  for (const auto& e : rep.entries) {
    json k;
    k["direction"] = direction_str(e.v);
    k["origin"] = e.origin;
    k["expected"] = to_string(e.expected);
    if (e.expected_simple) k["expected_simple"] = *e.expected_simple;
    k["actual"] = e.actual.summary();
    k["agrees"] = e.agrees;
    j["children"].push_back(k);
    t << "  " << direction_str(e.v) << " (" << e.origin << "): expected " << to_string(e.expected) << ", got "
      << e.actual.summary() << (e.agrees ? "" : "  MISMATCH") << "\n";
  }
  j["failures"] = rep.failures;
  j["consistent"] = rep.consistent();
  for (const auto& s : rep.failures) t << "failure: " << s << "\n";
  t << (rep.consistent() ? "closure consistent\n" : "closure INCONSISTENT\n");
  text = t.str();
  if (!rep.consistent()) throw invariant_error("closure table violated\n" + text);
  return j;
}

json site_json(const SiteReport& s) {
  json j;
  j["name"] = s.name;
  j["quality"] = to_string(s.quality);
  j["linear"] = linear_json(s.linear);
  j["class"] = class_json(s.cls);
  return j;
}

json cmd_resolve(const Config& cfg, std::string& text) {
  ExampleInstance inst = load_instance(cfg, 12);
  Resolution r = cfg.tilde ? resolve_pi0_tilde(inst) : resolve_pi0(inst);
  json j;
  j["genericity_failures"] = inst.genericity_failures;
  j["sites"] = json::array();
  std::ostringstream t;
  for (const auto& s : r.sites) {
    j["sites"].push_back(site_json(s));
    t << s.name << "  " << to_string(s.quality) << "  eigenvalues {" << join(strs(s.linear.eigenvalues)) << "}  "
      << s.cls.summary() << "\n";
  }
  j["tree"] = json::parse(tree_json(r.root.get()));
  text = cfg.format == "dot" ? tree_dot(r.root.get()) : t.str();
  return j;
}

json curve_site_json(const CurveSiteReport& s) {
  json j;
  j["site"] = s.site;
  j["class"] = s.cls.summary();
  j["status"] = s.status;
  if (s.curve) j["curve"] = json::parse(curve_json(*s.curve));
  j["residual_degree"] = s.residual_degree;
  if (s.rs) {
    j["rs"]["r"] = s.rs->r;
    j["rs"]["c"] = s.rs->c;
    j["rs"]["e"] = s.rs->e;
    j["rs"]["n"] = s.rs->n;
    j["rs"]["h"] = s.rs->h.str();
    j["rs"]["beta"] = s.rs->beta.str();
    j["rs"]["d1"] = strs(s.rs->d1);
    j["rs"]["d2"] = strs(s.rs->d2);
    j["rs"]["lambda"] = s.rs->lambda.str();
    j["rs"]["mu"] = s.rs->mu.str();
  }
  if (s.parabolic) {
    j["parabolic"]["count"] = s.parabolic->count;
    j["parabolic"]["directions"] = json::array();
    for (const auto& d : s.parabolic->directions) {
      json e;
      e["index"] = d.index;
      e["v"] = d.approx;
      e["signs1"] = d.r1;
      e["signs2"] = d.r2;
      e["dimension"] = d.dimension;
      j["parabolic"]["directions"].push_back(e);
    }
  }
  return j;
}

std::string curve_site_text(const CurveSiteReport& s, bool with_rs) {
  std::ostringstream t;
  t << s.site << ": " << s.cls.summary() << "\n  " << s.status << "\n";
  if (s.curve) {
    t << "  curve (axis x" << s.curve->axis << "): " << curve_json(*s.curve) << "\n";
    t << "  invariance residual vanishes through degree " << s.residual_degree << "\n";
  }
  if (with_rs && s.rs) t << "  " << s.rs->str() << "\n";
  if (s.parabolic) t << s.parabolic->table();
  return t.str();
}

json cmd_curve(const Config& cfg, std::string& text, bool with_rs) {
  CurveSiteReport s = analyse_curve_site("input", DivisorForm::of(load_germ(cfg)), cfg.curve_depth);
  json j = curve_site_json(s);
  if (!with_rs) {
    j.erase("rs");
    j.erase("parabolic");
  }
  text = curve_site_text(s, with_rs);
  if (!with_rs && s.curve) text = s.site + ": " + s.cls.summary() + "\n  " + s.status + "\n" + curve_json(*s.curve) + "\n";
  return j;
}

json cmd_theorem_a(const Config& cfg, std::string& text, int& code) {
  ExampleInstance inst = load_instance(cfg, 12);
  ExplorationPolicy pol;
  pol.depth = cfg.depth;
  pol.samples = cfg.samples;
  ExplorationReport rep = theorem_a_explore(inst, pol);
  json j;
  j["nodes"] = json::array();
  std::ostringstream t;
  for (const auto& n : rep.nodes) {
    json e;
    e["path"] = n.path;
    e["family"] = to_string(n.family);
    e["pattern"] = n.pattern;
    e["nondegenerate_nonexceptional"] = n.nondegenerate_nonexceptional;
    e["verdict"] = n.verdict;
    j["nodes"].push_back(e);
    t << n.path << "  " << to_string(n.family) << (n.pattern.empty() ? "" : "  pattern " + n.pattern) << "  "
      << n.verdict << "\n";
  }
  j["counterexamples"] = rep.counterexamples;
  j["unclassified"] = rep.unclassified;
  j["closure_certificate"] = rep.closure_certificate;
  j["closure_consistent"] = rep.closure_consistent;
  j["holds"] = rep.holds();
  t << "closure certificate:\n";
  for (const auto& l : rep.closure_certificate) t << "  " << l << "\n";
  t << "non-degenerate non-exceptional directions: " << rep.counterexamples << "\n";
  t << "unclassified nodes: " << rep.unclassified << "\n";
  t << (rep.holds() ? "verdict: holds" : "verdict: FAILS") << "\n";
  text = t.str();
  if (rep.counterexamples > 0 || !rep.closure_consistent)
    code = invariant_failure;
  else if (rep.unclassified > 0)
    code = undecidable;
  return j;
}

json cmd_theorem_b(const Config& cfg, std::string& text, int& code) {
  ExampleInstance inst = load_instance(cfg, 13);
  TheoremBReport rep = theorem_b_report(inst, cfg.curve_depth);
  json j;
  j["sites"] = json::array();
  std::string t;
  for (const auto& s : rep.sites) {
    j["sites"].push_back(curve_site_json(s));
    t += curve_site_text(s, true);
  }
  j["flags"] = rep.flags;
  for (const auto& f : rep.flags) t += "flag: " + f + "\n";
  text = t;
  if (!rep.flags.empty()) code = undecidable;
  return j;
}

void emit(const Config& cfg, const std::string& body) {
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw parse_error("cannot write " + cfg.out);
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blow-up analysis of tangent-to-identity germs of (C^3, 0)"};
  app.require_subcommand(1);
  Config cfg;
  auto common = [&](CLI::App* sub, bool pipeline) {
    sub->add_option("--input,-i", cfg.input, "germ or instance JSON file")->check(CLI::ExistingFile);
    sub->add_option("--example", cfg.example, "built-in instance: default (P = x^4, R = y^4) or generic");
    sub->add_option("--order,-N", cfg.order, pipeline ? "working order N" : "truncation order")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format,-f", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_option("--out,-o", cfg.out, "output file (default stdout)");
  };
  auto* directions = app.add_subcommand("directions", "characteristic or singular directions with multiplicities");
  auto* classify = app.add_subcommand("classify", "class and normal-form parameters");
  auto* explore = app.add_subcommand("explore", "blow up the singular directions and check the closure table");
  auto* resolve = app.add_subcommand("resolve", "four-stage resolution of the example and its singularities");
  auto* curve = app.add_subcommand("curve", "transverse invariant curve at a spike, spinning or half corner");
  auto* rs = app.add_subcommand("rs", "invariant curve, normal form reduction and parabolic report");
  auto* theorem_a = app.add_subcommand("theorem-a", "bounded exploration of all characteristic directions");
  auto* theorem_b = app.add_subcommand("theorem-b", "invariant curves and parabolic manifolds of the example");
  for (auto* s : {directions, classify, explore, curve, rs}) common(s, false);
  for (auto* s : {resolve, theorem_a, theorem_b}) common(s, true);
  resolve->add_flag("--tilde", cfg.tilde, "also blow up p3 and p4");
  for (auto* s : {explore, theorem_a}) s->add_option("--samples,-K", cfg.samples, "generic samples per family")->check(CLI::PositiveNumber);
  theorem_a->add_option("--depth,-D", cfg.depth, "exploration depth above the resolution")->check(CLI::PositiveNumber);
  for (auto* s : {curve, rs, theorem_b})
    s->add_option("--curve-depth,-M", cfg.curve_depth, "curve jet order")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : parse_failure;
  }

  try {
    if (cfg.format == "dot" && !resolve->parsed()) throw parse_error("--format dot is only available for resolve");
    std::string text;
    json j;
    int code = ok;
    if (directions->parsed()) j = cmd_directions(cfg, text);
    else if (classify->parsed()) j = cmd_classify(cfg, text);
    else if (explore->parsed()) j = cmd_explore(cfg, text);
    else if (resolve->parsed()) j = cmd_resolve(cfg, text);
    else if (curve->parsed()) j = cmd_curve(cfg, text, false);
    else if (rs->parsed()) j = cmd_curve(cfg, text, true);
    else if (theorem_a->parsed()) j = cmd_theorem_a(cfg, text, code);
    else j = cmd_theorem_b(cfg, text, code);
    emit(cfg, cfg.format == "json" ? j.dump(2) + "\n" : text);
    return code;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return parse_failure;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return invariant_failure;
  } catch (const undecidable_error& e) {
    std::cerr << "undecidable: " << e.what() << "\n";
    return undecidable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failure;
  }
}
