#include "germforge/germ.hpp"

#include <algorithm>

#include "germforge/errors.hpp"

namespace germforge {

Germ::Germ(Map3 displacement, Exps divisor) : disp_(std::move(displacement)), divisor_(divisor) {
  int N = std::min({disp_[0].N(), disp_[1].N(), disp_[2].N()});
  for (auto& s : disp_)
    if (s.N() != N) s = s.truncated(N);
  for (int k = 0; k < 3; ++k) {
    if (divisor_[k] < 0) throw invariant_error("negative divisor exponent");
    if (!disp_[k].constant_term().is_zero()) throw invariant_error("germ does not fix the origin");
    for (int j = 0; j < 3; ++j)
      if (!disp_[k].coeff(unit_exps(j)).is_zero())
        throw invariant_error("not tangent to identity: linear term " + monomial_str(unit_exps(j)) +
                              " in component " + std::string(1, "xyz"[k]));
  }
  for (int k = 0; k < 3; ++k) {
    disp_[k].for_each([&](const Exps& e, const Scalar& c) {
      if (!divides(divisor_, e))
        throw invariant_error("divisor " + monomial_str(divisor_) + " does not divide term " +
                              TruncSeries::monomial(e, c, degree(e)).str() + " of component " +
                              std::string(1, "xyz"[k]));
    });
  }
}

TruncSeries Germ::component(int k) const { return TruncSeries::variable(k, N()) + disp_[k]; }

Map3 Germ::components() const { return {component(0), component(1), component(2)}; }

Germ Germ::truncated(int N) const {
  return Germ({disp_[0].truncated(N), disp_[1].truncated(N), disp_[2].truncated(N)}, divisor_);
}

bool Germ::is_identity() const {
  return disp_[0].is_zero() && disp_[1].is_zero() && disp_[2].is_zero();
}

Germ make_germ(const std::vector<CoeffEntry>& table, int N, const Exps& divisor) {
  Map3 d{TruncSeries(N), TruncSeries(N), TruncSeries(N)};
  for (const auto& [k, e, c] : table) {
    if (k < 0 || k > 2) throw invariant_error("component index out of range");
    d[k].add_to(e, c);
  }
  return Germ(d, divisor);
}

Germ identity_germ(int N) { return Germ({TruncSeries(N), TruncSeries(N), TruncSeries(N)}); }

HomogeneousData homogeneous_data(const Germ& f) {
  HomogeneousData h;
  int order = f.N() + 1;
  for (const auto& s : f.disp()) order = std::min(order, s.val());
  if (order > f.N()) throw invariant_error("f = id to order " + std::to_string(f.N()));
  h.order = order;
  bool first = true;
  for (const auto& s : f.disp()) {
    if (s.is_zero()) continue;
    Exps c = s.monomial_content();
    if (first) {
      h.ell = c;
      first = false;
    } else {
      for (int k = 0; k < 3; ++k) h.ell[k] = std::min(h.ell[k], c[k]);
    }
  }
  for (int k = 0; k < 3; ++k) h.H[k] = Poly::from_series(f.disp(k).homogeneous_part(order));
  int pure = f.N() + 1;
  std::array<TruncSeries, 3> g;
  for (int k = 0; k < 3; ++k) {
    g[k] = series_div_monomial(f.disp(k), h.ell);
    pure = std::min(pure, g[k].val());
  }
  h.pure_order = pure;
  for (int k = 0; k < 3; ++k) h.H_ell[k] = Poly::from_series(g[k].homogeneous_part(pure));
  return h;
}

Map3 identity_map(int N) {
  return {TruncSeries::variable(0, N), TruncSeries::variable(1, N), TruncSeries::variable(2, N)};
}

Map3 map_compose(const Map3& a, const Map3& b) {
  return {series_compose(a[0], b), series_compose(a[1], b), series_compose(a[2], b)};
}

std::array<std::array<Scalar, 3>, 3> linear_matrix(const Map3& phi) {
  std::array<std::array<Scalar, 3>, 3> m;
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) m[k][j] = phi[k].coeff(unit_exps(j));
  return m;
}

namespace {

using Mat3 = std::array<std::array<Scalar, 3>, 3>;

Mat3 inverse3(const Mat3& m) {
  Scalar det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det.is_zero()) throw invariant_error("coordinate change has a non-invertible linear part");
  Scalar id = det.inv();
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) * id;
    }
  return r;
}

}  // namespace

Map3 linear_map(const Mat3& m, int N) {
  Map3 out{TruncSeries(N), TruncSeries(N), TruncSeries(N)};
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) out[k].add_to(unit_exps(j), m[k][j]);
  return out;
}

Map3 permutation_map(const std::array<int, 3>& perm, int N) {
  return {TruncSeries::variable(perm[0], N), TruncSeries::variable(perm[1], N),
          TruncSeries::variable(perm[2], N)};
}

Map3 map_inverse(const Map3& phi) {
  int N = std::min({phi[0].N(), phi[1].N(), phi[2].N()});
  for (const auto& s : phi)
    if (!s.constant_term().is_zero()) throw invariant_error("coordinate change moves the origin");
  Mat3 A = linear_matrix(phi);
  Mat3 Ai = inverse3(A);
  Map3 lin = linear_map(A, N);
  Map3 nonlin{phi[0] - lin[0], phi[1] - lin[1], phi[2] - lin[2]};
  bool linear = nonlin[0].is_zero() && nonlin[1].is_zero() && nonlin[2].is_zero();
  Map3 psi = linear_map(Ai, N);
  if (linear) return psi;
  // psi = A^{-1}(x - phi_2(psi)); each pass fixes one more degree.
  for (int d = 2; d <= N; ++d) {
    Map3 trunc{psi[0].truncated(d), psi[1].truncated(d), psi[2].truncated(d)};
    Map3 nl{nonlin[0].truncated(d), nonlin[1].truncated(d), nonlin[2].truncated(d)};
    Map3 comp = map_compose(nl, trunc);
    Map3 next{TruncSeries(N), TruncSeries(N), TruncSeries(N)};
    for (int k = 0; k < 3; ++k) {
      next[k].add_to(unit_exps(0), Ai[k][0]);
      next[k].add_to(unit_exps(1), Ai[k][1]);
      next[k].add_to(unit_exps(2), Ai[k][2]);
      for (int j = 0; j < 3; ++j)
        comp[j].scaled(Ai[k][j]).for_each([&](const Exps& e, const Scalar& c) { next[k].add_to(e, -c); });
    }
    // Keep only degree <= d to avoid stale high-degree terms.
    for (int k = 0; k < 3; ++k) psi[k] = next[k].jet(d);
  }
  return psi;
}

Germ compose(const Germ& g, const Germ& f) {
  Map3 fc = f.components();
  Map3 d;
  for (int k = 0; k < 3; ++k) d[k] = f.disp(k) + series_compose(g.disp(k), fc);
  Exps div;
  for (int k = 0; k < 3; ++k) div[k] = std::min(f.divisor()[k], g.divisor()[k]);
  return Germ(d, div);
}

namespace {

Exps transport_divisor(const Exps& div, const Map3& phi, const Map3& disp) {
  Exps out{0, 0, 0};
  bool ok = true;
  for (int k = 0; k < 3 && ok; ++k) {
    if (div[k] == 0) continue;
    // {x_k = 0} pulls back to {phi_k = 0}; require phi_k = unit * y_j.
    bool found = false;
    for (int j = 0; j < 3; ++j) {
      Exps e = unit_exps(j);
      bool divisible = true;
      phi[k].for_each([&](const Exps& f, const Scalar&) {
        if (!divides(e, f)) divisible = false;
      });
      if (divisible && !phi[k].coeff(e).is_zero()) {
        out[j] += div[k];
        found = true;
        break;
      }
    }
    ok = found;
  }
  if (ok) return out;
  Exps c{0, 0, 0};
  bool first = true;
  for (const auto& s : disp) {
    if (s.is_zero()) continue;
    Exps m = s.monomial_content();
    if (first) {
      c = m;
      first = false;
    } else {
      for (int k = 0; k < 3; ++k) c[k] = std::min(c[k], m[k]);
    }
  }
  return c;
}

Map3 conjugated_disp(const Germ& f, const Map3& phi) {
  int N = std::min({f.N(), phi[0].N(), phi[1].N(), phi[2].N()});
  Map3 ph{phi[0].truncated(N), phi[1].truncated(N), phi[2].truncated(N)};
  Map3 psi = map_inverse(ph);
  Map3 fphi;
  for (int k = 0; k < 3; ++k) fphi[k] = ph[k] + series_compose(f.disp(k).truncated(N), ph);
  Map3 g = map_compose(psi, fphi);
  for (int k = 0; k < 3; ++k) g[k] -= TruncSeries::variable(k, N);
  return g;
}

}  // namespace

Germ conjugate(const Germ& f, const Map3& phi) {
  Map3 g = conjugated_disp(f, phi);
  return Germ(g, transport_divisor(f.divisor(), phi, g));
}

Germ conjugate(const Germ& f, const Map3& phi, const Exps& new_divisor) {
  return Germ(conjugated_disp(f, phi), new_divisor);
}

Germ iterate(const Germ& f, int n) {
  if (n < 1) throw invariant_error("iterate count must be positive");
  Germ g = f;
  for (int k = 1; k < n; ++k) g = compose(f, g);
  return g;
}

}  // namespace germforge
