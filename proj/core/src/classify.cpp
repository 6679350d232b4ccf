#include "germforge/classify.hpp"

#include <algorithm>
#include <sstream>

#include "germforge/directions.hpp"
#include "germforge/errors.hpp"
#include "germforge/poly.hpp"

namespace germforge {

std::string to_string(Family f) {
  switch (f) {
    case Family::regular: return "regular";
    case Family::simple_corner: return "simple corner";
    case Family::degenerate_spike: return "degenerate spike";
    case Family::spinning_corner: return "spinning corner";
    case Family::half_corner: return "half corner";
    case Family::unclassified: return "unclassified";
  }
  return "?";
}

std::string to_string(PatternKind k) {
  switch (k) {
    case PatternKind::none: return "none";
    case PatternKind::r0_r0: return "R0-R0";
    case PatternKind::r2_r3: return "R2-R3";
  }
  return "?";
}

namespace {

const std::array<std::array<int, 3>, 6> kRoleOrders{{{0, 1, 2}, {2, 1, 0}, {1, 0, 2}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}};

Mat3 identity3() {
  return {{{Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}}};
}

// Every certified term of s has x_k-exponent >= p.
bool divisible(const TruncSeries& s, int k, int p) {
  bool ok = true;
  s.for_each([&](const Exps& e, const Scalar&) {
    if (e[k] < p) ok = false;
  });
  return ok;
}

// Input exponents of a monomial given in role order.
Exps from_roles(const std::array<int, 3>& roles, const Exps& r) {
  Exps e{0, 0, 0};
  for (int s = 0; s < 3; ++s) e[roles[s]] = r[s];
  return e;
}

struct RoleView {
  const DivisorForm& f;
  std::array<int, 3> roles;
  const TruncSeries& g(int r) const { return f.g[roles[r]]; }
  int m(int r) const { return f.divisor[roles[r]]; }
  Scalar coeff(int r, const Exps& e) const { return g(r).coeff(from_roles(roles, e)); }
  Scalar lin(int r, int s) const { return coeff(r, unit_exps(s)); }
  bool div(int r, int s, int p) const { return divisible(g(r), roles[s], p); }
};

bool is_positive_rational(const Scalar& x) { return x.is_rational() && scalar_sign_of_real(x) > 0; }

std::optional<SingularityClass> try_simple_corner(const DivisorForm& f, const std::array<int, 3>& roles) {
  RoleView v{f, roles};
  if (v.m(0) < 1 || v.m(1) < 1) return std::nullopt;
  if (!v.div(0, 0, 1) || !v.div(1, 1, 1)) return std::nullopt;
  if (v.m(2) > 0 && !v.div(2, 2, 1)) return std::nullopt;
  Scalar lambda = v.lin(0, 0), mu = v.lin(1, 1);
  if (lambda.is_zero()) return std::nullopt;
  if (is_positive_rational(mu / lambda)) return std::nullopt;
  SingularityClass c;
  c.family = Family::simple_corner;
  c.roles = roles;
  c.a = v.m(0);
  c.b = v.m(1);
  c.c = v.m(2);
  c.lambda = lambda;
  c.mu = mu;
  c.alpha = v.lin(2, 0);
  c.beta = v.lin(2, 1);
  c.gamma = v.lin(2, 2);
  return c;
}

std::optional<SingularityClass> try_spinning_corner(const DivisorForm& f, const std::array<int, 3>& roles) {
  RoleView v{f, roles};
  if (v.m(0) != 0 || v.m(1) < 1 || v.m(2) < 1) return std::nullopt;
  if (!v.div(1, 1, 1) || !v.div(2, 2, 1)) return std::nullopt;
  for (int r = 1; r < 3; ++r)
    for (int s = 0; s < 3; ++s)
      if (!v.lin(r, s).is_zero()) return std::nullopt;
  Scalar ax = v.lin(0, 0);
  if (ax.is_zero()) return std::nullopt;
  SingularityClass c;
  c.family = Family::spinning_corner;
  c.roles = roles;
  c.change = identity3();
  c.change[0] = {Scalar(1), v.lin(0, 1) / ax, v.lin(0, 2) / ax};
  c.b = v.m(1);
  c.c = v.m(2);
  c.eigen = ax;
  DivisorForm nf = change_coordinates(f, roles, c.change);
  for (int s = 0; s < 3; ++s) {
    c.q1[s] = nf.g[1].coeff(unit_exps(1) + unit_exps(s));
    c.r1[s] = nf.g[2].coeff(unit_exps(2) + unit_exps(s));
  }
  return c;
}

std::optional<SingularityClass> try_spike(const DivisorForm& f, const std::array<int, 3>& roles) {
  RoleView v{f, roles};
  if (v.m(0) != 0 || v.m(1) != 0 || v.m(2) < 1) return std::nullopt;
  if (!v.div(2, 2, 1)) return std::nullopt;
  for (int s = 0; s < 3; ++s)
    if (!v.lin(2, s).is_zero()) return std::nullopt;
  Scalar m00 = v.lin(0, 0), m01 = v.lin(0, 1), m10 = v.lin(1, 0), m11 = v.lin(1, 1);
  Scalar t = m00 + m11, d = m00 * m11 - m01 * m10;
  if (d.is_zero()) return std::nullopt;
  // mu / lambda in R_{<0} iff t^2 / d is real and <= 0.
  Scalar q = t * t / d;
  if (!q.is_real()) return std::nullopt;
  if (!q.is_zero() && scalar_sign_of_real(q) > 0) return std::nullopt;
  SingularityClass c;
  c.family = Family::degenerate_spike;
  c.roles = roles;
  // Remove the z column: (x, y) -> (x, y) + M^{-1} v z.
  Scalar az = v.lin(0, 2), bz = v.lin(1, 2);
  Scalar k0 = (m11 * az - m01 * bz) / d, k1 = (m00 * bz - m10 * az) / d;
  c.change = identity3();
  c.change[0][2] = k0;
  c.change[1][2] = k1;
  c.c = v.m(2);
  c.trace = t;
  c.det = d;
  c.off_diagonal = m00.is_zero() && m11.is_zero();
  c.alpha = m01;
  c.beta = m10;
  c.lambda = m00;
  c.mu = m11;
  return c;
}

std::optional<SingularityClass> try_half_corner(const DivisorForm& f, const std::array<int, 3>& roles) {
  RoleView v{f, roles};
  if (v.m(0) != 0 || v.m(1) != 0 || v.m(2) < 1) return std::nullopt;
  if (!v.div(1, 2, 1) || !v.div(2, 2, 2)) return std::nullopt;
  Scalar ax = v.lin(0, 0);
  if (ax.is_zero()) return std::nullopt;
  Scalar beta = v.lin(1, 2);
  SingularityClass c;
  c.family = Family::half_corner;
  c.roles = roles;
  Scalar ky = v.lin(0, 1) / ax;
  Scalar kz = (v.lin(0, 2) + ky * beta) / ax;
  c.change = identity3();
  c.change[0] = {Scalar(1), ky, kz};
  c.c = v.m(2);
  c.eigen = ax;
  DivisorForm nf = change_coordinates(f, roles, c.change);
  c.beta = nf.g[1].coeff(unit_exps(2));
  for (int s = 0; s < 3; ++s) c.q1[s] = nf.g[1].coeff(unit_exps(2) + unit_exps(s));
  c.gamma = nf.g[2].coeff({0, 0, 2});
  c.simple = !c.beta.is_zero();
  return c;
}

}  // namespace

std::string SingularityClass::summary() const {
  std::ostringstream os;
  os << to_string(family);
  auto coords = [&] {
    std::string s = "(";
    for (int r = 0; r < 3; ++r) s += std::string(r ? "," : "") + "xyz"[roles[r]];
    return s + ")";
  };
  switch (family) {
    case Family::simple_corner:
      os << " in " << coords() << ": a=" << a << ", b=" << b << ", c=" << c << ", lambda=" << lambda.str()
         << ", mu=" << mu.str() << ", R1=(" << alpha.str() << ", " << beta.str() << ", " << gamma.str() << ")";
      break;
    case Family::degenerate_spike:
      os << " in " << coords() << ": c=" << c << ", trace=" << trace.str() << ", det=" << det.str();
      if (off_diagonal) os << ", alpha=" << alpha.str() << ", beta=" << beta.str();
      break;
    case Family::spinning_corner:
      os << " in " << coords() << ": b=" << b << ", c=" << c << ", eigen=" << eigen.str() << ", Q1=(" << q1[0].str()
         << ", " << q1[1].str() << ", " << q1[2].str() << "), R1=(" << r1[0].str() << ", " << r1[1].str() << ", "
         << r1[2].str() << ")";
      break;
    case Family::half_corner:
      os << " in " << coords() << ": c=" << c << ", beta=" << beta.str() << ", b_y=" << q1[1].str()
         << ", gamma=" << gamma.str() << (simple ? ", simple" : ", non-simple");
      break;
    case Family::unclassified:
      os << ": rank " << linear.rank << (linear.nilpotent ? ", nilpotent" : "");
      break;
    case Family::regular: break;
  }
  return os.str();
}

SingularityClass classify_germ(const DivisorForm& f) {
  if (f.N() < 2) throw undecidable_error("needs higher N: classification requires the displacement through degree 2");
  SingularityClass out;
  for (int k = 0; k < 3; ++k)
    if (!f.g[k].constant_term().is_zero()) {
      out.family = Family::regular;
      return out;
    }
  using Try = std::optional<SingularityClass> (*)(const DivisorForm&, const std::array<int, 3>&);
  for (Try t : {Try(try_simple_corner), Try(try_spinning_corner), Try(try_spike), Try(try_half_corner)})
    for (const auto& roles : kRoleOrders)
      if (auto c = t(f, roles)) return *c;
  VectorField chi{f.g, f.divisor};
  out.linear = linear_part(chi);
  return out;
}

SingularityClass classify_germ(const Germ& f) { return classify_germ(DivisorForm::of(f)); }

DivisorForm change_coordinates(const DivisorForm& f, const std::array<int, 3>& roles, const Mat3& change) {
  int n = f.N();
  Mat3 inv = inverse3(change);
  Scalar kappa(1);
  for (int r = 0; r < 3; ++r) {
    int e = f.divisor[roles[r]];
    if (e == 0) continue;
    for (int t = 0; t < 3; ++t)
      if (t != r && !inv[r][t].is_zero()) throw invariant_error("coordinate change moves a divisor component");
    kappa *= inv[r][r].pow(e);
  }
  std::array<TruncSeries, 3> sub;
  for (int s = 0; s < 3; ++s) {
    TruncSeries acc(n);
    for (int t = 0; t < 3; ++t)
      if (!inv[s][t].is_zero()) acc += TruncSeries::variable(t, n).scaled(inv[s][t]);
    sub[roles[s]] = acc;
  }
  std::array<TruncSeries, 3> gs;
  for (int s = 0; s < 3; ++s) gs[s] = series_compose(f.g[roles[s]].truncated(n), sub);
  DivisorForm out;
  for (int r = 0; r < 3; ++r) {
    out.divisor[r] = f.divisor[roles[r]];
    TruncSeries acc(n);
    for (int s = 0; s < 3; ++s)
      if (!change[r][s].is_zero()) acc += gs[s].scaled(change[r][s] * kappa);
    out.g[r] = acc;
  }
  return out;
}

DivisorForm normal_form(const DivisorForm& f, const SingularityClass& cls) {
  return change_coordinates(f, cls.roles, cls.change);
}

DivisorForm straighten_x(const DivisorForm& f, const TruncSeries& alpha) {
  if (f.divisor[0] != 0) throw invariant_error("straightening along a divisor coordinate");
  int n = f.N();
  if (!alpha.constant_term().is_zero()) throw invariant_error("straightening series must vanish at the origin");
  std::array<TruncSeries, 3> phi{TruncSeries::variable(0, n) + alpha.truncated(n), TruncSeries::variable(1, n),
                                 TruncSeries::variable(2, n)};
  DivisorForm out;
  out.divisor = f.divisor;
  for (int k = 0; k < 3; ++k) out.g[k] = series_compose(f.g[k].truncated(n), phi);
  // x-component: g_x o phi - (alpha(y + m T) - alpha(y)) / m with T = g_y o phi.
  const TruncSeries& T = out.g[1];
  int md = degree(f.divisor);
  int a_deg = 0;
  alpha.for_each([&](const Exps& e, const Scalar&) { a_deg = std::max(a_deg, e[1]); });
  TruncSeries Tpow = T;
  for (int k = 1; k <= a_deg; ++k) {
    if ((k - 1) * md + k * std::max(T.val(), 0) > n) break;
    // alpha^{(k)}(y) / k!
    TruncSeries dk(n);
    alpha.for_each([&](const Exps& e, const Scalar& c) {
      int p = e[1];
      if (p < k) return;
      mpz_class bin;
      mpz_bin_uiui(bin.get_mpz_t(), p, k);
      dk.add_to({0, p - k, 0}, c * Scalar(mpq_class(bin)));
    });
    Exps mk{0, 0, 0};
    for (int s = 0; s < 3; ++s) mk[s] = f.divisor[s] * (k - 1);
    out.g[0] -= (dk * Tpow).mul_monomial(mk);
    Tpow = Tpow * T;
  }
  return out;
}

std::vector<Scalar> generic_samples(int count, const std::vector<Scalar>& avoid) {
  static const std::vector<Scalar> pool = {Scalar(1),
                                           Scalar(-2),
                                           Scalar::gaussian(mpq_class(1, 2), mpq_class(1)),
                                           Scalar(3),
                                           Scalar(-5, 3),
                                           Scalar::gaussian(mpq_class(0), mpq_class(2)),
                                           Scalar(7, 4),
                                           Scalar::gaussian(mpq_class(-3), mpq_class(1, 3))};
  std::vector<Scalar> out;
  for (const Scalar& s : pool) {
    if (static_cast<int>(out.size()) >= count) break;
    if (std::find(avoid.begin(), avoid.end(), s) == avoid.end()) out.push_back(s);
  }
  if (static_cast<int>(out.size()) < count) throw invariant_error("not enough generic sample points");
  return out;
}

bool ClosureReport::consistent() const {
  if (!failures.empty()) return false;
  return std::all_of(entries.begin(), entries.end(), [](const ClosureEntry& e) { return e.agrees; });
}

namespace {

struct Expected {
  Direction v;
  Family family;
  std::optional<bool> simple;
  std::string origin;
};

// Family of directions {l . v = 0}.
using Line = std::array<Scalar, 3>;

bool on_line(const Line& l, const Direction& v) { return (l[0] * v[0] + l[1] * v[1] + l[2] * v[2]).is_zero(); }

void push_unique(std::vector<Expected>& out, Expected e) {
  e.v = normalize_direction(e.v);
  for (const auto& x : out)
    if (x.v == e.v) return;
  out.push_back(std::move(e));
}

bool nonzero_dir(const Direction& v) { return !(v[0].is_zero() && v[1].is_zero() && v[2].is_zero()); }

}  // namespace

ClosureReport blowup_closure(const DivisorForm& f, const SingularityClass& cls, int samples) {
  ClosureReport rep;
  DivisorForm nf = normal_form(f, cls);
  std::vector<Expected> expected;
  std::vector<Line> families;
  Scalar zero(0), one(1);
  switch (cls.family) {
    case Family::simple_corner: {
      Direction d1{cls.lambda - cls.gamma, zero, cls.alpha}, d2{zero, cls.mu - cls.gamma, cls.beta};
      auto add_axis = [&](const Direction& d, int fixed_axis) {
        if (nonzero_dir(d)) {
          push_unique(expected, {d, Family::simple_corner, std::nullopt, "isolated"});
          return;
        }
        // Resonance: the whole line {x_other = 0} through the z axis.
        Line l{zero, zero, zero};
        l[1 - fixed_axis] = one;
        families.push_back(l);
        Direction base{zero, zero, zero};
        base[fixed_axis] = one;
        push_unique(expected, {base, Family::simple_corner, std::nullopt, "family special"});
        for (const Scalar& z0 : generic_samples(samples, {zero})) {
          Direction p = base;
          p[2] = z0;
          push_unique(expected, {p, Family::simple_corner, std::nullopt, "family generic"});
        }
      };
      add_axis(d1, 0);
      add_axis(d2, 1);
      push_unique(expected, {{zero, zero, one}, Family::simple_corner, std::nullopt, "isolated"});
      break;
    }
    case Family::degenerate_spike: {
      push_unique(expected, {{zero, zero, one}, Family::degenerate_spike, std::nullopt, "isolated"});
      Scalar m00 = nf.g[0].coeff(unit_exps(0)), m01 = nf.g[0].coeff(unit_exps(1));
      Scalar m10 = nf.g[1].coeff(unit_exps(0)), m11 = nf.g[1].coeff(unit_exps(1));
      UPoly cp(std::vector<Scalar>{m00 * m11 - m01 * m10, -(m00 + m11), one});
      UPoly residual;
      std::vector<Scalar> roots = field_roots(cp, &residual);
      if (residual.degree() > 0) rep.failures.push_back("spike eigenvectors outside the scalar field: " + residual.str('t'));
      for (const Scalar& rho : roots) {
        Direction w{m01, rho - m00, zero};
        if (!nonzero_dir(w)) w = {rho - m11, m10, zero};
        push_unique(expected, {w, Family::simple_corner, std::nullopt, "isolated"});
      }
      break;
    }
    case Family::spinning_corner: {
      push_unique(expected, {{one, zero, zero}, Family::simple_corner, std::nullopt, "isolated"});
      push_unique(expected, {{zero, one, zero}, Family::spinning_corner, std::nullopt, "family special"});
      push_unique(expected, {{zero, zero, one}, Family::spinning_corner, std::nullopt, "family special"});
      families.push_back({one, zero, zero});
      Scalar dy = cls.q1[1] - cls.r1[1], dz = cls.q1[2] - cls.r1[2];
      std::vector<Scalar> avoid{zero};
      if (!dy.is_zero() && !dz.is_zero()) {
        Scalar y0 = -dz / dy;
        avoid.push_back(y0);
        push_unique(expected, {{zero, y0, one}, Family::half_corner, false, "family special"});
      }
      for (const Scalar& y0 : generic_samples(samples, avoid)) {
        bool simple = !(dz + y0 * dy).is_zero();
        push_unique(expected, {{zero, y0, one}, Family::half_corner, simple, "family generic"});
      }
      break;
    }
    case Family::half_corner: {
      push_unique(expected, {{one, zero, zero}, Family::simple_corner, std::nullopt, "isolated"});
      push_unique(expected, {{zero, one, zero}, Family::spinning_corner, std::nullopt, "isolated"});
      if (cls.beta.is_zero()) {
        families.push_back({one, zero, zero});
        Scalar by = cls.q1[1] - cls.gamma, bz = cls.q1[2];
        std::vector<Scalar> avoid{zero};
        push_unique(expected, {{zero, zero, one}, Family::half_corner, !bz.is_zero(), "family special"});
        if (!by.is_zero() && !bz.is_zero()) {
          Scalar y0 = -bz / by;
          avoid.push_back(y0);
          push_unique(expected, {{zero, y0, one}, Family::half_corner, false, "family special"});
        }
        for (const Scalar& y0 : generic_samples(samples, avoid)) {
          bool simple = !(bz + y0 * by).is_zero();
          push_unique(expected, {{zero, y0, one}, Family::half_corner, simple, "family generic"});
        }
      }
      break;
    }
    default:
      throw invariant_error("closure table only covers the four families");
  }

  // Solver cross-check against the predicted directions.
  DirectionReport dirs = singular_directions(nf);
  for (const auto& d : dirs.resolved) {
    bool predicted = std::any_of(expected.begin(), expected.end(), [&](const Expected& e) { return e.v == d.v; }) ||
                     std::any_of(families.begin(), families.end(), [&](const Line& l) { return on_line(l, d.v); });
    if (!predicted) rep.failures.push_back("unpredicted singular direction " + direction_str(d.v));
  }
  if (dirs.unresolved.empty())
    for (const auto& e : expected) {
      if (e.origin != "isolated") continue;
      bool found = std::any_of(dirs.resolved.begin(), dirs.resolved.end(), [&](const DirectionInfo& d) { return d.v == e.v; }) ||
                   std::any_of(dirs.families.begin(), dirs.families.end(),
                               [&](const DirectionFamily& fam) { return fam.equation.eval(e.v).is_zero(); });
      if (!found) rep.failures.push_back("predicted direction " + direction_str(e.v) + " missing from the solver");
    }
  if (static_cast<int>(dirs.families.size()) != static_cast<int>(families.size()))
    rep.failures.push_back("solver reports " + std::to_string(dirs.families.size()) + " direction families, table predicts " +
                           std::to_string(families.size()));

  for (const auto& e : expected) {
    ClosureEntry ce;
    ce.v = e.v;
    ce.expected = e.family;
    ce.expected_simple = e.simple;
    ce.origin = e.origin;
    DivisorForm child = lift(nf, Chart::point(e.v, default_chart(e.v)));
    ce.actual = classify_germ(child);
    ce.agrees = ce.actual.family == e.family && (!e.simple || ce.actual.simple == *e.simple);
    rep.entries.push_back(std::move(ce));
  }
  return rep;
}

bool axis_in_singular_locus(const DivisorForm& f, int k) {
  for (const auto& s : f.g) {
    bool pure = false;
    s.for_each([&](const Exps& e, const Scalar&) {
      if (e[k] == degree(e)) pure = true;
    });
    if (pure) return false;
  }
  return true;
}

PatternType classify_pattern(const DivisorForm& f, int core_axis) {
  if (f.N() < 2) throw undecidable_error("needs higher N: pattern classification requires degree 2");
  PatternType p;
  p.core_axis = core_axis;
  if (!axis_in_singular_locus(f, core_axis)) {
    p.detail = "core not contained in the singular locus";
    return p;
  }
  for (const auto& roles : kRoleOrders) {
    if (roles[2] != core_axis) continue;
    if (auto c = try_simple_corner(f, roles)) {
      p.kind = PatternKind::r0_r0;
      p.generic = Family::simple_corner;
      p.detail = c->summary();
      return p;
    }
  }
  for (const auto& roles : kRoleOrders) {
    if (roles[1] != core_axis) continue;
    RoleView v{f, roles};
    if (v.m(0) != 0 || v.m(2) < 1) continue;
    if (!v.div(2, 2, 2) || !v.div(1, 2, 1)) continue;
    int b = v.m(1);
    if (b >= 1 && !v.div(1, 1, 1)) continue;
    // g_x restricted to z = 0 is x times a unit.
    bool ok = !v.lin(0, 0).is_zero();
    v.g(0).for_each([&](const Exps& e, const Scalar&) {
      if (e[roles[2]] == 0 && e[roles[0]] == 0) ok = false;
    });
    if (!ok) continue;
    p.kind = PatternKind::r2_r3;
    p.generic = Family::half_corner;
    p.b = b;
    p.B = b >= 1 ? b + 1 : 0;
    p.c = v.m(2);
    if (b >= 1) p.special.emplace_back(Scalar(0), Family::spinning_corner);
    p.detail = "core along " + std::string(1, "xyz"[core_axis]);
    return p;
  }
  p.detail = "no pattern form";
  return p;
}

}  // namespace germforge
