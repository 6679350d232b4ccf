#include "germforge/curves.hpp"

#include <algorithm>

#include "json.hpp"

#include "germforge/errors.hpp"

namespace germforge {

namespace {

TruncSeries tvar(int N) { return TruncSeries::variable(2, N); }

TruncSeries univariate(const std::vector<Scalar>& c, int N) {
  TruncSeries s(N);
  for (int n = 0; n < static_cast<int>(c.size()) && n <= N; ++n)
    if (!c[n].is_zero()) s.set({0, 0, n}, c[n]);
  return s;
}

std::vector<Scalar> coefficients(const TruncSeries& s, int depth) {
  std::vector<Scalar> out(depth + 1);
  for (int n = 0; n <= depth && n <= s.N(); ++n) out[n] = s.coeff({0, 0, n});
  return out;
}

int coeff_order(const TruncSeries& s) { return s.val(); }

bool is_positive_integer(const Scalar& q) {
  if (!q.is_rational()) return false;
  mpq_class v = q.re();
  return v > 0 && v.get_den() == 1;
}

}  // namespace

int FormalCurve::other(int i) const {
  int k = 0;
  for (int j = 0; j < 3; ++j) {
    if (j == axis) continue;
    if (k == i) return j;
    ++k;
  }
  return -1;
}

Map3 FormalCurve::parametrization(int N) const {
  Map3 p;
  p[axis] = tvar(N);
  p[other(0)] = univariate(x, N);
  p[other(1)] = univariate(y, N);
  return p;
}

FormalCurve curve_from_parametrization(const Map3& p, int axis, int depth) {
  int N = std::min({p[0].N(), p[1].N(), p[2].N()});
  for (int k = 0; k < 3; ++k)
    if (!p[k].constant_term().is_zero()) throw invariant_error("curve does not pass through the origin");
  TruncSeries w = revert_in_z(p[axis].truncated(N));
  FormalCurve c;
  c.axis = axis;
  c.depth = std::min(depth, N);
  c.x = coefficients(compose_in_z(p[c.other(0)].truncated(N), w), c.depth);
  c.y = coefficients(compose_in_z(p[c.other(1)].truncated(N), w), c.depth);
  return c;
}

FormalCurve push_forward(const FormalCurve& c, const Map3& phi, int axis) {
  int N = c.depth;
  Map3 p = c.parametrization(N);
  Map3 q;
  for (int k = 0; k < 3; ++k) q[k] = series_compose(phi[k].truncated(N), p);
  FormalCurve out = curve_from_parametrization(q, axis, N);
  out.sequence = c.sequence;
  return out;
}

Walker unique_transverse_walker(int axis) {
  return [axis](const DivisorForm& node, const DirectionReport& dirs, int depth) -> std::optional<Direction> {
    if (!dirs.unresolved.empty())
      throw undecidable_error("singular directions outside the scalar field at depth " + std::to_string(depth));
    for (const auto& fam : dirs.families) {
      // Families inside {x_axis = 0} or a divisor plane are harmless.
      int plane = -1;
      if (fam.equation.terms().size() == 1) {
        const Exps& e = fam.equation.terms().begin()->first;
        for (int k = 0; k < 3; ++k)
          if (e[k] == degree(e)) plane = k;
      }
      if (plane != axis && (plane < 0 || node.divisor[plane] == 0))
        throw invariant_error("curve of singular directions at depth " + std::to_string(depth) +
                              ": transverse point is not unique");
    }
    std::optional<Direction> pick;
    for (const auto& d : dirs.resolved) {
      if (d.v[axis].is_zero() || is_exceptional(node.divisor, d.v)) continue;
      if (pick) throw invariant_error("two transverse singular directions at depth " + std::to_string(depth));
      pick = d.v;
    }
    return pick;
  };
}

FormalCurve curve_from_sequence(const DivisorForm& f, int axis, const Walker& walker, int M) {
  FormalCurve c;
  c.axis = axis;
  c.depth = M;
  c.x.assign(M + 1, Scalar(0));
  c.y.assign(M + 1, Scalar(0));
  DivisorForm node = f;
  for (int n = 0; n < M; ++n) {
    for (int k = 0; k < 3; ++k)
      if (!node.g[k].constant_term().is_zero())
        throw invariant_error("point at depth " + std::to_string(n) + " is not singular");
    if (node.N() < 1) throw undecidable_error("certified degree exhausted at depth " + std::to_string(n) + "; raise N");
    DirectionReport dirs = singular_directions(node);
    std::optional<Direction> v = walker(node, dirs, n);
    if (!v) throw invariant_error("no admissible point at depth " + std::to_string(n));
    if ((*v)[axis].is_zero()) throw invariant_error("walker left the transverse chart at depth " + std::to_string(n));
    Direction w = *v;
    Scalar inv = w[axis].inv();
    for (auto& s : w) s *= inv;
    for (int k = 0; k < 3; ++k)
      if (k != axis && node.divisor[k] > 0 && w[k].is_zero())
        throw invariant_error("point at depth " + std::to_string(n + 1) + " is a corner of the divisor");
    c.sequence.push_back(w);
    c.x[n + 1] = w[c.other(0)];
    c.y[n + 1] = w[c.other(1)];
    if (n + 1 < M) node = lift(node, Chart::point(w, axis));
  }
  c.transverse = true;
  for (int k = 0; k < 3; ++k) {
    if (k == axis || f.divisor[k] == 0) continue;
    const Scalar& a1 = k == c.other(0) ? c.x[1] : c.y[1];
    if (M < 1 || a1.is_zero()) c.transverse = false;
  }
  return c;
}

int verify_invariance(const DivisorForm& f, const FormalCurve& c, int M) {
  int nu = 0;
  Map3 p0 = c.parametrization(c.depth);
  for (int k = 0; k < 3; ++k) {
    if (f.divisor[k] == 0) continue;
    int o = coeff_order(p0[k]);
    if (o > c.depth) return M;  // curve inside the divisor through its depth: f fixes it pointwise
    nu += f.divisor[k] * o;
  }
  int Ng = f.N();
  int exact = Ng + nu;                  // certified order of f - id along C
  int Nt = std::min(M + nu + 1, exact);
  Map3 p = c.parametrization(Nt);
  TruncSeries mono = TruncSeries::constant(Scalar(1), Nt);
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < f.divisor[k]; ++r) mono = series_mul(mono, p[k], Nt);
  Map3 image;
  for (int k = 0; k < 3; ++k) {
    TruncSeries gk = series_compose(f.g[k], p);
    TruncSeries disp = series_mul_to(mono, gk, Nt);
    image[k] = p[k] + disp;
  }
  TruncSeries s = image[c.axis];
  int first = Nt + 1;
  for (int i = 0; i < 2; ++i) {
    int k = c.other(i);
    TruncSeries back = compose_in_z(c.parametrization(Nt)[k], s);
    TruncSeries r = image[k] - back;
    first = std::min(first, r.val());
  }
  int m = first - nu - 1;
  return std::max(-1, std::min({M, m, c.depth, Ng}));
}

int verify_invariance(const Germ& f, const FormalCurve& c, int M) { return verify_invariance(DivisorForm::of(f), c, M); }

FormalCurve half_corner_curve(const DivisorForm& f, const SingularityClass& cls, int M) {
  if (cls.family != Family::half_corner) throw invariant_error("half corner curve needs a half corner");
  if (cls.simple) throw invariant_error("no transverse curve: simple half corner");
  const Scalar& by = cls.q1[1];
  const Scalar& gamma = cls.gamma;
  if (gamma.is_zero() ? by.is_zero() : is_positive_integer(by / gamma)) {
    int m = gamma.is_zero() ? 1 : static_cast<int>((by / gamma).re().get_num().get_si());
    throw undecidable_error("resonant, undecided: b_y = " + std::to_string(m) + " * gamma at order " +
                            std::to_string(cls.c + 1 + m));
  }
  int c = cls.c;
  if (M > f.N() - 1) throw undecidable_error("curve depth " + std::to_string(M) + " exceeds the certified degree; raise N");
  DivisorForm nf = normal_form(f, cls);
  // Unknown curve (X(t), Y(t), t) in normal coordinates.
  int Nt = c + 1 + M;
  std::vector<Scalar> X(M + 1), Y(M + 1);
  auto residual = [&](const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
    Map3 p{univariate(xs, Nt), univariate(ys, Nt), tvar(Nt)};
    TruncSeries zc = TruncSeries::monomial({0, 0, c}, Scalar(1), Nt);
    std::array<TruncSeries, 3> im;
    for (int k = 0; k < 3; ++k) im[k] = p[k] + series_mul_to(zc, series_compose(nf.g[k], p), Nt);
    return std::array<TruncSeries, 2>{im[0] - compose_in_z(p[0], im[2]),
                                      im[1] - compose_in_z(p[1], im[2])};
  };
  for (int m = 1; m <= M; ++m) {
    auto r0 = residual(X, Y);
    auto rx = X, ry = Y;
    rx[m] = Scalar(1);
    auto r1 = residual(rx, Y);
    ry[m] = Scalar(1);
    auto r2 = residual(X, ry);
    Exps ex{0, 0, c + m}, ey{0, 0, c + 1 + m};
    Scalar a = r1[0].coeff(ex) - r0[0].coeff(ex), b = r2[0].coeff(ex) - r0[0].coeff(ex);
    Scalar cc = r1[1].coeff(ey) - r0[1].coeff(ey), d = r2[1].coeff(ey) - r0[1].coeff(ey);
    Scalar det = a * d - b * cc;
    if (det.is_zero()) throw undecidable_error("resonant at order " + std::to_string(c + 1 + m));
    Scalar u = -r0[0].coeff(ex), v = -r0[1].coeff(ey);
    X[m] = (u * d - b * v) / det;
    Y[m] = (a * v - cc * u) / det;
  }
  // Back to the coordinates of f: u = change * x_roles.
  Mat3 inv = inverse3(cls.change);
  Map3 u{univariate(X, M), univariate(Y, M), tvar(M)};
  Map3 p;
  for (int r = 0; r < 3; ++r) {
    TruncSeries s(M);
    for (int q = 0; q < 3; ++q) s += u[q].scaled(inv[r][q]);
    p[cls.roles[r]] = s;
  }
  FormalCurve out = curve_from_parametrization(p, cls.roles[2], M);
  out.transverse = true;
  return out;
}

std::string to_string(CurveVerdict v) {
  switch (v) {
    case CurveVerdict::infinitely_many: return "infinitely many";
    case CurveVerdict::unique: return "unique";
    case CurveVerdict::none: return "none transverse";
    case CurveVerdict::outside_trichotomy: return "outside trichotomy";
  }
  return "?";
}

SpinningCurveAnalysis spinning_corner_curve_analysis(const DivisorForm& f, const SingularityClass& cls, int M) {
  if (cls.family != Family::spinning_corner) throw invariant_error("analysis needs a spinning corner");
  SpinningCurveAnalysis a;
  a.by = cls.q1[1];
  a.bz = cls.q1[2];
  a.cy = cls.r1[1];
  a.cz = cls.r1[2];
  a.delta = a.by * a.cz - a.bz * a.cy;
  bool ey = a.by == a.cy, ez = a.bz == a.cz;
  if (ey && ez) {
    if (a.by.is_zero() && a.bz.is_zero() && a.cy.is_zero() && a.cz.is_zero()) {
      a.verdict = CurveVerdict::outside_trichotomy;
      a.detail = "b_y = c_y, b_z = c_z, all vanishing";
    } else {
      a.verdict = CurveVerdict::infinitely_many;
      a.detail = "b_y = c_y and b_z = c_z";
    }
    return a;
  }
  if (ey != ez) {
    a.verdict = CurveVerdict::none;
    a.detail = ey ? "b_y = c_y, b_z != c_z" : "b_z = c_z, b_y != c_y";
    return a;
  }
  a.y0 = (a.cz - a.bz) / (a.by - a.cy);
  if (!a.delta.is_zero()) {
    a.ratio = (a.cz - a.bz) * (a.by - a.cy) / a.delta;
    if (is_positive_integer(*a.ratio)) {
      a.verdict = CurveVerdict::outside_trichotomy;
      a.detail = "resonant: ratio " + a.ratio->str() + " is a positive integer";
      return a;
    }
  }
  a.verdict = CurveVerdict::unique;
  a.detail = a.ratio ? "ratio " + a.ratio->str() + " not a positive integer" : "delta = 0";
  DivisorForm nf = normal_form(f, cls);
  Direction v{Scalar(0), *a.y0, Scalar(1)};
  DivisorForm hc = lift(nf, Chart::point(v, 2));
  SingularityClass hcls = classify_germ(hc);
  if (hcls.family != Family::half_corner || hcls.simple)
    throw invariant_error("special point of the spinning corner is not a non-simple half corner: " + hcls.summary());
  a.half_corner = hcls;
  a.half_corner_form = hc;
  if (M > 0) {
    FormalCurve hcurve = half_corner_curve(hc, hcls, M);
    a.half_corner_curve = hcurve;
    // Down through the chart, then back to the coordinates of f.
    Map3 chart = Chart::point(v, 2).substitution(M + 1);
    FormalCurve in_normal = push_forward(hcurve, chart, 2);
    Mat3 inv = inverse3(cls.change);
    Map3 back;
    for (int r = 0; r < 3; ++r) {
      TruncSeries s(M + 1);
      for (int q = 0; q < 3; ++q) s += TruncSeries::variable(q, M + 1).scaled(inv[r][q]);
      back[cls.roles[r]] = s;
    }
    FormalCurve c = push_forward(in_normal, back, cls.roles[2]);
    c.depth = std::min(c.depth, M);
    c.x.resize(c.depth + 1);
    c.y.resize(c.depth + 1);
    c.sequence.insert(c.sequence.begin(), v);
    a.curve = c;
  }
  return a;
}

std::string curve_json(const FormalCurve& c) {
  nlohmann::ordered_json j;
  j["e"] = 1;
  auto arr = [](const std::vector<Scalar>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& s : v) a.push_back(s.str());
    return a;
  };
  j["x"] = arr(c.x);
  j["y"] = arr(c.y);
  j["depth"] = c.depth;
  if (c.axis != 2) j["axis"] = c.axis;
  return j.dump();
}

FormalCurve curve_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("curve JSON: ") + e.what());
  }
  try {
    FormalCurve c;
    if (j.value("e", 1) != 1) throw parse_error("only smooth parametrizations (e = 1) are supported");
    c.depth = j.at("depth").get<int>();
    c.axis = j.value("axis", 2);
    if (c.axis < 0 || c.axis > 2 || c.depth < 0) throw parse_error("bad curve axis or depth");
    for (const auto& s : j.at("x")) c.x.push_back(Scalar::parse(s.get<std::string>()));
    for (const auto& s : j.at("y")) c.y.push_back(Scalar::parse(s.get<std::string>()));
    c.x.resize(c.depth + 1);
    c.y.resize(c.depth + 1);
    if (!c.x[0].is_zero() || !c.y[0].is_zero()) throw parse_error("curve must pass through the origin");
    return c;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception& e) {
    throw parse_error(std::string("curve JSON: ") + e.what());
  }
}

}  // namespace germforge
