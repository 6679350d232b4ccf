#include "germforge/directions.hpp"

#include <algorithm>

#include "germforge/errors.hpp"

namespace germforge {

namespace {

// p(x, y, z) with x_k fixed to a constant and the remaining two variables
// renamed onto indices 0 and 1 (in increasing order).
Poly fix_and_rename(const Poly& p, int k, const Scalar& value) {
  Poly out;
  Poly fixed = p.substitute(k, value);
  for (const auto& [e, c] : fixed.terms()) {
    Exps r{0, 0, 0};
    int slot = 0;
    for (int m = 0; m < 3; ++m) {
      if (m == k) continue;
      r[slot++] = e[m];
    }
    out.add_to(r, c);
  }
  return out;
}

bool sorted_before(const DirectionInfo& a, const DirectionInfo& b) {
  for (int k = 2; k >= 0; --k) {
    if (a.v[k] != b.v[k]) {
      if (a.v[k].is_zero()) return false;
      if (b.v[k].is_zero()) return true;
      return canonical_less(a.v[k], b.v[k]);
    }
  }
  return false;
}

Scalar multiplier_at(const std::array<Poly, 3>& H, const Direction& v) {
  int k = default_chart(v);
  return H[k].eval(v) / v[k];
}

void push_direction(DirectionReport& rep, const std::array<Poly, 3>& H, const Exps& divisor, const Direction& raw) {
  Direction v = normalize_direction(raw);
  for (const auto& d : rep.resolved)
    if (d.v == v) return;
  DirectionInfo info;
  info.v = v;
  info.multiplier = multiplier_at(H, v);
  info.degenerate = info.multiplier.is_zero();
  info.exceptional = is_exceptional(divisor, v);
  // Cross-check: H(v) and v are parallel.
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (!(H[a].eval(v) * v[b] - H[b].eval(v) * v[a]).is_zero())
        throw invariant_error("direction solver produced a non-solution " + direction_str(v));
  rep.resolved.push_back(info);
}

}  // namespace

DirectionReport directions_of(const std::array<Poly, 3>& H, const Exps& divisor) {
  DirectionReport rep;
  Poly X = Poly::variable(0), Y = Poly::variable(1), Z = Poly::variable(2);
  // Affine chart z = 1: H_x - x H_z = H_y - y H_z = 0.
  Poly Hx = fix_and_rename(H[0], 2, Scalar(1));
  Poly Hy = fix_and_rename(H[1], 2, Scalar(1));
  Poly Hz = fix_and_rename(H[2], 2, Scalar(1));
  Poly A = Hx - X * Hz, B = Hy - Y * Hz;
  if (A.is_zero() && B.is_zero()) {
    rep.dicriticality = 2;
    rep.families.push_back({Poly(Scalar(0)), "all directions"});
    return rep;
  }
  BPoly a = to_bpoly(A, 0, 1), b = to_bpoly(B, 0, 1);
  BPoly g = A.is_zero() ? b : (B.is_zero() ? a : bpoly_gcd(a, b));
  if (bdeg(g) > 0 || (g.size() == 1 && g[0].degree() > 0)) {
    Poly curve = from_bpoly(g, 0, 1);
    // Homogenize for reporting.
    Poly hom;
    int d = curve.total_degree();
    for (const auto& [e, c] : curve.terms()) hom.add_to({e[0], e[1], d - e[0] - e[1]}, c);
    rep.families.push_back({hom, "curve " + hom.str() + " = 0"});
    rep.dicriticality = 1;
    a = bpoly_div(a, g);
    b = bpoly_div(b, g);
  }
  if (A.is_zero() || B.is_zero()) {
    // One equation vanishes identically: its partner is the family found above.
  } else if (bdeg(a) == 0 && bdeg(b) == 0) {
    // Neither depends on y: common roots in x, with y free would be a family;
    // coprime univariate polynomials have no common root.
    UPoly ga = a.empty() ? UPoly() : a[0];
    UPoly gb = b.empty() ? UPoly() : b[0];
    UPoly h = gcd(ga, gb);
    if (h.degree() > 0) throw invariant_error("unexpected common factor in direction system");
  } else {
    UPoly res = resultant_y(a, b);
    if (res.is_zero()) throw invariant_error("degenerate eliminant in direction system");
    UPoly residual;
    std::vector<Scalar> xs = field_roots(res, &residual);
    if (residual.degree() > 0) rep.unresolved.push_back("resultant factor " + residual.str('x') + " (chart z = 1)");
    for (const Scalar& x0 : xs) {
      auto spec = [&](const BPoly& p) {
        std::vector<Scalar> c;
        for (const auto& coeff : p) c.push_back(coeff(x0));
        return UPoly(c);
      };
      UPoly ua = spec(a), ub = spec(b);
      UPoly h = ua.is_zero() ? ub.monic() : (ub.is_zero() ? ua.monic() : gcd(ua, ub));
      if (h.degree() <= 0) continue;
      UPoly hres;
      for (const Scalar& y0 : field_roots(h, &hres)) push_direction(rep, H, {}, {x0, y0, Scalar(1)});
      if (hres.degree() > 0)
        rep.unresolved.push_back("fiber factor " + hres.str('y') + " over x = " + x0.str() + " (chart z = 1)");
    }
  }
  // Line z = 0: H_z(x, y, 0) = 0 and x H_y - y H_x = 0.
  Poly Hx0 = H[0].substitute(2, Scalar(0)), Hy0 = H[1].substitute(2, Scalar(0)), Hz0 = H[2].substitute(2, Scalar(0));
  Poly c1 = Hz0, c2 = X * Hy0 - Y * Hx0;
  UPoly u1 = UPoly::from_poly(c1.substitute(1, Scalar(1)), 0);
  UPoly u2 = UPoly::from_poly(c2.substitute(1, Scalar(1)), 0);
  if (u1.is_zero() && u2.is_zero()) {
    rep.families.push_back({Z, "line z = 0"});
    rep.dicriticality = std::max(rep.dicriticality, 1);
  } else {
    UPoly h = u1.is_zero() ? u2.monic() : (u2.is_zero() ? u1.monic() : gcd(u1, u2));
    if (h.degree() > 0) {
      UPoly hres;
      for (const Scalar& x0 : field_roots(h, &hres)) push_direction(rep, H, {}, {x0, Scalar(1), Scalar(0)});
      if (hres.degree() > 0) rep.unresolved.push_back("factor " + hres.str('x') + " (line z = 0, chart y = 1)");
    }
  }
  if (H[2].eval({Scalar(1), Scalar(0), Scalar(0)}).is_zero() && H[1].eval({Scalar(1), Scalar(0), Scalar(0)}).is_zero())
    push_direction(rep, H, {}, {Scalar(1), Scalar(0), Scalar(0)});
  for (auto& d : rep.resolved) d.exceptional = is_exceptional(divisor, d.v);
  std::sort(rep.resolved.begin(), rep.resolved.end(), sorted_before);
  return rep;
}

DirectionReport singular_directions(const Germ& f) {
  HomogeneousData h = homogeneous_data(f);
  return directions_of(h.H_ell, f.divisor());
}

std::array<Poly, 3> saturated_leading_part(const DivisorForm& f) {
  Exps content{0, 0, 0};
  bool first = true;
  for (const auto& c : f.g) {
    if (c.is_zero()) continue;
    Exps m = c.monomial_content();
    for (int k = 0; k < 3; ++k) content[k] = first ? m[k] : std::min(content[k], m[k]);
    first = false;
  }
  if (first) throw undecidable_error("displacement vanishes through the certified degree");
  std::array<TruncSeries, 3> q;
  int low = 1 << 20;
  for (int k = 0; k < 3; ++k) {
    q[k] = series_div_monomial(f.g[k], content);
    if (!q[k].is_zero()) low = std::min(low, q[k].val());
  }
  std::array<Poly, 3> H;
  for (int k = 0; k < 3; ++k) H[k] = Poly::from_series(q[k].homogeneous_part(low));
  return H;
}

DirectionReport singular_directions(const DivisorForm& f) { return directions_of(saturated_leading_part(f), f.divisor); }

DirectionReport characteristic_directions(const Germ& f) {
  HomogeneousData h = homogeneous_data(f);
  return directions_of(h.H, f.divisor());
}

namespace {

struct Counter {
  int budget;
};

// p(x, 0) as a univariate polynomial in x.
UPoly on_axis(const Poly& p) { return UPoly::from_poly(p.substitute(1, Scalar(0)), 0); }

// p / y, assuming y | p.
Poly divide_y(const Poly& p) {
  Poly out;
  for (const auto& [e, c] : p.terms()) out.add_to({e[0], e[1] - 1, e[2]}, c);
  return out;
}

int order_at_zero(const UPoly& u) {
  for (int k = 0; k <= u.degree(); ++k)
    if (!u.coeffs()[k].is_zero()) return k;
  return -1;
}

// Fulton's algorithm at the origin; nullopt for a common component.
std::optional<int> fulton(Poly P, Poly Q, Counter& ctr) {
  while (true) {
    if (P.is_zero() || Q.is_zero()) return std::nullopt;
    if (!P.coeff({0, 0, 0}).is_zero() || !Q.coeff({0, 0, 0}).is_zero()) return 0;
    UPoly p = on_axis(P), q = on_axis(Q);
    if (p.is_zero() && q.is_zero()) return std::nullopt;
    if (p.is_zero() || q.is_zero()) {
      if (q.is_zero()) {
        std::swap(P, Q);
        std::swap(p, q);
      }
      // P = y P1: I(P, Q) = I(y, Q) + I(P1, Q).
      if (--ctr.budget < 0) return std::nullopt;
      int head = order_at_zero(q);
      auto rest = fulton(divide_y(P), Q, ctr);
      if (!rest) return std::nullopt;
      return head + *rest;
    }
    if (p.degree() > q.degree()) {
      std::swap(P, Q);
      std::swap(p, q);
    }
    Poly shift = Poly::monomial({q.degree() - p.degree(), 0, 0}, q.lead());
    Q = p.lead() * Q - shift * P;
  }
}

}  // namespace

std::optional<int> intersection_multiplicity(const Poly& F, const Poly& G, const std::array<Scalar, 2>& point) {
  Poly f = F.translate(0, point[0]).translate(1, point[1]);
  Poly g = G.translate(0, point[0]).translate(1, point[1]);
  // Bezout bound: a finite answer never exceeds deg F * deg G.
  Counter ctr{std::max(1, f.total_degree()) * std::max(1, g.total_degree()) + 1};
  return fulton(f, g, ctr);
}

int direction_multiplicity(const Germ& f, const Direction& raw) {
  HomogeneousData h = homogeneous_data(f);
  Direction v = normalize_direction(raw);
  int k = default_chart(v);
  std::array<int, 2> other{};
  for (int m = 0, s = 0; m < 3; ++m)
    if (m != k) other[s++] = m;
  Poly F = h.H[other[0]] - Poly::variable(other[0]) * h.H[k];
  Poly G = h.H[other[1]] - Poly::variable(other[1]) * h.H[k];
  Poly Fa = fix_and_rename(F, k, Scalar(1)), Ga = fix_and_rename(G, k, Scalar(1));
  std::array<Scalar, 2> pt{v[other[0]], v[other[1]]};
  if (!Fa.eval({pt[0], pt[1], Scalar(0)}).is_zero() || !Ga.eval({pt[0], pt[1], Scalar(0)}).is_zero())
    throw invariant_error("direction " + direction_str(v) + " is not characteristic");
  auto m = intersection_multiplicity(Fa, Ga, pt);
  if (!m) throw invariant_error("cross-minors share a component through " + direction_str(v));
  return *m;
}

}  // namespace germforge
