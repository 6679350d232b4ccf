#include "germforge/blowup.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "germforge/errors.hpp"

namespace germforge {

namespace {

std::vector<std::vector<mpz_class>> binomials(int n) {
  std::vector<std::vector<mpz_class>> b(n + 1);
  for (int i = 0; i <= n; ++i) {
    b[i].assign(i + 1, 1);
    for (int k = 1; k < i; ++k) b[i][k] = b[i - 1][k - 1] + b[i - 1][k];
  }
  return b;
}

// (D o pi) / x_j^drop, exact through D.N() - drop.
TruncSeries substitute_chart(const TruncSeries& d, const Chart& ch, int drop) {
  int N = d.N() - drop;
  TruncSeries out(N);
  static const auto binom = binomials(64);
  d.for_each([&](const Exps& a, const Scalar& c) {
    int ej = a[ch.j];
    for (int k = 0; k < 3; ++k)
      if (k != ch.j) ej += ch.lift[k] * a[k];
    if (ej < drop) throw invariant_error("center not pointwise fixed: term " + monomial_str(a));
    ej -= drop;
    // Expand prod_{k != j} (x_k + shift_k)^{a_k}.
    std::vector<std::pair<Exps, Scalar>> acc{{Exps{0, 0, 0}, c}};
    for (int k = 0; k < 3; ++k) {
      if (k == ch.j || a[k] == 0) {
        continue;
      }
      std::vector<std::pair<Exps, Scalar>> next;
      const Scalar& s = ch.shift[k];
      for (const auto& [e, v] : acc) {
        for (int m = a[k]; m >= 0; --m) {
          if (m < a[k] && s.is_zero()) break;
          Exps e2 = e;
          e2[k] += m;
          Scalar w = v * Scalar(mpq_class(binom[a[k]][m])) * s.pow(a[k] - m);
          next.emplace_back(e2, w);
        }
      }
      acc = std::move(next);
    }
    for (auto& [e, v] : acc) {
      Exps e2 = e;
      e2[ch.j] += ej;
      if (degree(e2) <= N) out.add_to(e2, v);
    }
  });
  return out;
}

}  // namespace

Chart Chart::point(const Direction& v, int j) {
  if (v[j].is_zero()) throw invariant_error("direction " + direction_str(v) + " not visible in chart " + std::to_string(j));
  Chart c;
  c.kind = Kind::point;
  c.j = j;
  c.q = -1;
  for (int k = 0; k < 3; ++k) {
    c.lift[k] = k == j ? 0 : 1;
    c.shift[k] = k == j ? Scalar(0) : v[k] / v[j];
  }
  return c;
}

Chart Chart::line(int j, int q, const Scalar& shift) {
  if (j == q || j < 0 || q < 0 || j > 2 || q > 2) throw invariant_error("bad line center");
  Chart c;
  c.kind = Kind::line;
  c.j = j;
  c.q = q;
  c.lift = {0, 0, 0};
  c.lift[q] = 1;
  c.shift = {Scalar(0), Scalar(0), Scalar(0)};
  c.shift[q] = shift;
  return c;
}

Map3 Chart::substitution(int N) const {
  Map3 s;
  for (int k = 0; k < 3; ++k) {
    TruncSeries v = TruncSeries::variable(k, N);
    if (k != j && lift[k] == 1) {
      TruncSeries xj = TruncSeries::variable(j, N);
      v = xj * v + xj.scaled(shift[k]);
    }
    s[k] = v;
  }
  return s;
}

std::string Chart::str() const {
  static const char* names = "xyz";
  std::string out = "(";
  for (int k = 0; k < 3; ++k) {
    if (k) out += ", ";
    std::string base(1, names[k]);
    if (k != j && lift[k] == 1) {
      std::string inner = shift[k].is_zero() ? base : "(" + base + " + " + shift[k].str() + ")";
      out += std::string(1, names[j]) + "*" + inner;
    } else {
      out += base;
    }
  }
  return out + ")";
}

Germ lift(const Germ& f, const Chart& ch) {
  int j = ch.j;
  const Map3& d = f.disp();
  TruncSeries u = substitute_chart(d[j], ch, 1);
  int N = u.N();
  TruncSeries one = TruncSeries::constant(Scalar(1), N);
  TruncSeries inv = series_invert_unit(one + u);
  Map3 out;
  for (int k = 0; k < 3; ++k) {
    if (k == j) {
      out[k] = substitute_chart(d[k], ch, 0).truncated(N);
    } else if (ch.lift[k] == 1) {
      TruncSeries xk = TruncSeries::variable(k, N) + TruncSeries::constant(ch.shift[k], N);
      out[k] = (substitute_chart(d[k], ch, 1) - xk * u) * inv;
    } else {
      out[k] = substitute_chart(d[k], ch, 0).truncated(N);
    }
  }
  Exps div{0, 0, 0};
  int content = -1;
  for (const auto& s : out) {
    if (s.is_zero()) continue;
    int c = s.monomial_content()[j];
    content = content < 0 ? c : std::min(content, c);
  }
  div[j] = std::max(content, 0);
  for (int k = 0; k < 3; ++k)
    if (k != j && ch.shift[k].is_zero()) div[k] = f.divisor()[k];
  return Germ(out, div);
}

VectorField lift_field(const VectorField& chi, const Chart& ch) {
  int j = ch.j;
  VectorField out;
  TruncSeries cj = substitute_chart(chi.comps[j], ch, 0);
  TruncSeries cj1 = substitute_chart(chi.comps[j], ch, 1);
  int N = cj1.N();
  for (int k = 0; k < 3; ++k) {
    if (k == j || ch.lift[k] == 0) {
      out.comps[k] = k == j ? cj.truncated(N) : substitute_chart(chi.comps[k], ch, 0).truncated(N);
    } else {
      TruncSeries xk = TruncSeries::variable(k, N) + TruncSeries::constant(ch.shift[k], N);
      out.comps[k] = substitute_chart(chi.comps[k], ch, 1) - xk * cj1;
    }
  }
  return out;
}

DivisorForm DivisorForm::of(const Germ& f) {
  DivisorForm out;
  out.divisor = f.divisor();
  for (int k = 0; k < 3; ++k) out.g[k] = series_div_monomial(f.disp(k), f.divisor());
  return out;
}

bool DivisorForm::materializable() const { return degree(divisor) + N() <= 64; }

Germ DivisorForm::germ() const {
  if (!materializable())
    throw undecidable_error("germ with divisor " + monomial_str(divisor) + " exceeds the series degree limit");
  int M = degree(divisor) + N();
  Map3 d;
  for (int k = 0; k < 3; ++k) {
    d[k] = TruncSeries(M);
    g[k].for_each([&](const Exps& e, const Scalar& c) {
      if (degree(e) <= N()) d[k].add_to(e + divisor, c);
    });
  }
  return Germ(d, divisor);
}

DivisorForm lift(const DivisorForm& f, const Chart& ch) {
  int j = ch.j;
  int n = f.N();
  // x^divisor o pi = x_j^mu * unit * monomial in the unshifted coordinates.
  int mu = f.divisor[j];
  Exps mono{0, 0, 0};
  TruncSeries unit = TruncSeries::constant(Scalar(1), n);
  for (int k = 0; k < 3; ++k) {
    if (k == j) continue;
    if (ch.lift[k] == 1) mu += f.divisor[k];
    if (ch.shift[k].is_zero()) {
      mono[k] = f.divisor[k];
    } else {
      TruncSeries lin = TruncSeries::variable(k, n) + TruncSeries::constant(ch.shift[k], n);
      for (int r = 0; r < f.divisor[k]; ++r) unit = unit * lin;
    }
  }
  std::array<TruncSeries, 3> A;
  TruncSeries gj = substitute_chart(f.g[j], ch, 0).truncated(n);
  for (int k = 0; k < 3; ++k) {
    TruncSeries gk = k == j ? gj : substitute_chart(f.g[k], ch, 0).truncated(n);
    if (k != j && ch.lift[k] == 1) {
      TruncSeries xk = TruncSeries::variable(k, n) + TruncSeries::constant(ch.shift[k], n);
      A[k] = gk - xk * gj;
    } else {
      // One extra factor x_j relative to the lifted components.
      A[k] = gk.mul_monomial(unit_exps(j));
    }
  }
  int e = -1;
  for (const auto& a : A) {
    if (a.is_zero()) continue;
    int c = a.monomial_content()[j];
    e = e < 0 ? c : std::min(e, c);
  }
  if (e < 0) e = 0;
  if (mu - 1 + e < 0) throw invariant_error("lift is not tangent to the identity");
  Exps shift_e = unit_exps(j);
  shift_e[j] = e;
  int m = n - e;
  if (m < 0) throw undecidable_error("lift exhausts the certified degree");
  // u = x_j^(mu - 1) * x^mono * unit * g_j o pi.
  Exps ue = mono;
  TruncSeries u = unit * gj;
  if (mu == 0)
    u = series_div_monomial(u, unit_exps(j));
  else
    ue[j] += mu - 1;
  u = u.mul_monomial(ue);
  DivisorForm out;
  out.divisor = mono;
  out.divisor[j] = mu - 1 + e;
  TruncSeries inv;
  bool need_inv = false;
  for (int k = 0; k < 3; ++k)
    if (k != j && ch.lift[k] == 1) need_inv = true;
  if (need_inv) inv = series_invert_unit(TruncSeries::constant(Scalar(1), u.N()) + u).truncated(m);
  for (int k = 0; k < 3; ++k) {
    TruncSeries q = series_div_monomial(A[k], shift_e).truncated(m);
    q = unit.truncated(m) * q;
    if (k != j && ch.lift[k] == 1) q = q * inv;
    out.g[k] = q;
  }
  return out;
}

Germ lift_point_blowup(const Germ& f, const Direction& v, int j) { return lift(f, Chart::point(v, j)); }

Germ lift_line_blowup(const Germ& f, int j, int q, const Scalar& shift) {
  return lift(f, Chart::line(j, q, shift));
}

int default_chart(const Direction& v) {
  for (int k = 2; k >= 0; --k)
    if (!v[k].is_zero()) return k;
  throw invariant_error("zero direction");
}

Direction normalize_direction(const Direction& v) {
  int k = default_chart(v);
  Scalar inv = v[k].inv();
  return {v[0] * inv, v[1] * inv, v[2] * inv};
}

std::string direction_str(const Direction& v) {
  return "[" + v[0].str() + ":" + v[1].str() + ":" + v[2].str() + "]";
}

BlowupNode& BlowupNode::add_child(std::string child_name, const Chart& ch, const std::string& component) {
  auto node = std::make_unique<BlowupNode>(lift(form, ch));
  node->name = std::move(child_name);
  node->chart = ch;
  node->has_center = true;
  for (int k = 0; k < 3; ++k)
    node->components[k] = (k != ch.j && ch.shift[k].is_zero()) ? components[k] : std::string();
  node->components[ch.j] = component;
  children.push_back(std::move(node));
  return *children.back();
}

std::size_t BlowupNode::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c->size();
  return n;
}

std::vector<const BlowupNode*> BlowupNode::leaves() const {
  std::vector<const BlowupNode*> out;
  std::function<void(const BlowupNode&)> walk = [&](const BlowupNode& n) {
    if (n.children.empty()) out.push_back(&n);
    for (const auto& c : n.children) walk(*c);
  };
  walk(*this);
  return out;
}

const BlowupNode* BlowupNode::find(const std::string& key) const {
  if (name == key) return this;
  for (const auto& c : children)
    if (const BlowupNode* r = c->find(key)) return r;
  return nullptr;
}

bool is_exceptional(const Exps& divisor, const Direction& v) {
  for (int k = 0; k < 3; ++k)
    if (divisor[k] > 0 && v[k].is_zero()) return true;
  return false;
}

bool is_exceptional(const BlowupNode& node, const Direction& v) { return is_exceptional(node.form.divisor, v); }

namespace {

nlohmann::ordered_json node_json(const BlowupNode& n) {
  nlohmann::ordered_json j;
  j["name"] = n.name;
  j["chart"] = n.has_center ? n.chart.str() : std::string();
  j["center"] = !n.has_center ? "" : (n.chart.kind == Chart::Kind::point ? "point" : "line");
  j["divisor"] = n.form.divisor;
  j["components"] = n.components;
  j["certified_degree"] = n.form.N();
  j["verdict"] = n.verdict;
  if (!n.detail.empty()) j["detail"] = n.detail;
  j["children"] = nlohmann::ordered_json::array();
  for (const auto& c : n.children) j["children"].push_back(node_json(*c));
  return j;
}

}  // namespace

std::string tree_json(const BlowupNode* root) {
  if (!root) return "{}";
  return node_json(*root).dump(2);
}

std::string tree_dot(const BlowupNode* root) {
  std::ostringstream os;
  os << "digraph blowups {\n";
  if (root) {
    int counter = 0;
    std::function<int(const BlowupNode&)> emit = [&](const BlowupNode& n) {
      int id = counter++;
      os << "  n" << id << " [label=\"" << n.name;
      if (!n.verdict.empty()) os << "\\n" << n.verdict;
      if (n.has_center) os << "\\n" << n.chart.str();
      os << "\"];\n";
      for (const auto& c : n.children) {
        int cid = emit(*c);
        os << "  n" << id << " -> n" << cid << ";\n";
      }
      return id;
    };
    emit(*root);
  }
  os << "}\n";
  return os.str();
}

}  // namespace germforge
