#include "germforge/infgen.hpp"

#include <algorithm>

#include "germforge/errors.hpp"

namespace germforge {

namespace {

// Derivative kept at the parent's N; valid when multiplied by a series of
// positive order.
TruncSeries derivative_padded(const TruncSeries& phi, int k) {
  TruncSeries d(phi.N());
  phi.for_each([&](const Exps& e, const Scalar& c) {
    if (e[k] == 0) return;
    Exps f = e;
    f[k] -= 1;
    d.add_to(f, c * Scalar(e[k]));
  });
  return d;
}

}  // namespace

TruncSeries apply_field(const VectorField& chi, const TruncSeries& phi) {
  int N = std::min(chi.N(), phi.N());
  bool unit = false;
  for (const auto& c : chi.comps)
    if (!c.constant_term().is_zero()) unit = true;
  if (unit) N -= 1;
  TruncSeries out(std::max(N, 0));
  for (int k = 0; k < 3; ++k) {
    if (chi.comps[k].is_zero()) continue;
    TruncSeries d = derivative_padded(phi, k);
    if (d.is_zero()) continue;
    out.add_terms(series_mul_to(chi.comps[k], d, N));
  }
  return out;
}

Germ exp_field(const VectorField& chi, const Exps& divisor) {
  if (!chi.is_zero() && chi.val() < 2) throw invariant_error("exp of a field of order < 2");
  int N = chi.N();
  Map3 disp{TruncSeries(N), TruncSeries(N), TruncSeries(N)};
  if (chi.is_zero()) return Germ(disp, divisor);
  int v = chi.val();
  for (int k = 0; k < 3; ++k) {
    TruncSeries term = TruncSeries::variable(k, N);
    Scalar fact(1);
    for (int n = 1; 1 + n * (v - 1) <= N; ++n) {
      term = apply_field(chi, term);
      fact *= Scalar(n);
      disp[k] += term.scaled(fact.inv());
    }
  }
  return Germ(disp, divisor);
}

VectorField log_germ(const Germ& f) {
  int N = f.N();
  VectorField chi{{TruncSeries(N), TruncSeries(N), TruncSeries(N)}, {0, 0, 0}};
  for (int d = 2; d <= N; ++d) {
    VectorField t{{chi.comps[0].truncated(d), chi.comps[1].truncated(d), chi.comps[2].truncated(d)},
                  {0, 0, 0}};
    Map3 e;
    if (t.is_zero()) {
      e = {TruncSeries(d), TruncSeries(d), TruncSeries(d)};
    } else {
      e = exp_field(t).disp();
    }
    for (int k = 0; k < 3; ++k) {
      TruncSeries corr = f.disp(k).homogeneous_part(d) - e[k].homogeneous_part(d);
      corr.for_each([&](const Exps& ex, const Scalar& c) { chi.comps[k].add_to(ex, c); });
    }
  }
  return chi;
}

VectorField saturate(const VectorField& chi, const Exps& e) {
  VectorField out;
  for (int k = 0; k < 3; ++k) {
    try {
      out.comps[k] = series_div_monomial(chi.comps[k], e);
    } catch (const invariant_error& err) {
      throw invariant_error(std::string("saturation: component d/d") + "xyz"[k] + ": " + err.what());
    }
  }
  out.divisor = chi.divisor + e;
  return out;
}

VectorField saturated_generator(const Germ& f) {
  VectorField chi = log_germ(f);
  Exps content{0, 0, 0};
  bool first = true;
  for (const auto& c : chi.comps) {
    if (c.is_zero()) continue;
    Exps m = c.monomial_content();
    if (first) {
      content = m;
      first = false;
    } else {
      for (int k = 0; k < 3; ++k) content[k] = std::min(content[k], m[k]);
    }
  }
  Exps e{0, 0, 0};
  for (int k = 0; k < 3; ++k)
    if (f.divisor()[k] > 0) e[k] = std::max(f.divisor()[k], content[k]);
  return saturate(chi, e);
}

Scalar det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse3(const Mat3& m) {
  Scalar d = det3(m);
  if (d.is_zero()) throw invariant_error("singular coordinate change");
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int a0 = (j + 1) % 3, a1 = (j + 2) % 3, b0 = (i + 1) % 3, b1 = (i + 2) % 3;
      r[i][j] = (m[a0][b0] * m[a1][b1] - m[a0][b1] * m[a1][b0]) / d;
    }
  return r;
}

int rank3(const Mat3& in) {
  Mat3 m = in;
  int rank = 0;
  bool used[3] = {false, false, false};
  for (int col = 0; col < 3; ++col) {
    int piv = -1;
    for (int r = 0; r < 3; ++r)
      if (!used[r] && !m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    used[piv] = true;
    ++rank;
    for (int r = 0; r < 3; ++r) {
      if (r == piv || m[r][col].is_zero()) continue;
      Scalar f = m[r][col] / m[piv][col];
      for (int c = 0; c < 3; ++c) m[r][c] -= f * m[piv][c];
    }
  }
  return rank;
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

LinearPartReport linear_part(const VectorField& chi) {
  LinearPartReport rep;
  for (int k = 0; k < 3; ++k) {
    rep.value[k] = chi.comps[k].constant_term();
    if (!rep.value[k].is_zero()) rep.regular = true;
    for (int j = 0; j < 3; ++j) rep.matrix[k][j] = chi.comps[k].coeff(unit_exps(j));
  }
  const Mat3& m = rep.matrix;
  Scalar tr = m[0][0] + m[1][1] + m[2][2];
  Scalar m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
              m[1][1] * m[2][2] - m[1][2] * m[2][1];
  Scalar det = det3(m);
  rep.charpoly = {-det, m2, -tr, Scalar(1)};
  UPoly cp(std::vector<Scalar>(rep.charpoly.begin(), rep.charpoly.end()));
  UPoly residual;
  std::vector<Scalar> roots = field_roots(cp, &residual);
  rep.unresolved = residual;
  for (const auto& r : roots) {
    UPoly rest = cp;
    std::vector<Scalar> lin{-r, Scalar(1)};
    UPoly l(lin);
    for (;;) {
      UPoly q, rem;
      divmod(rest, l, q, rem);
      if (!rem.is_zero()) break;
      rep.eigenvalues.push_back(r);
      rest = q;
    }
  }
  rep.eigen_complete = rep.eigenvalues.size() == 3;
  rep.rank = rank3(m);
  Mat3 p = m;
  for (int k = 1; k <= 3; ++k) {
    bool zero = true;
    for (const auto& row : p)
      for (const auto& v : row)
        if (!v.is_zero()) zero = false;
    if (zero) {
      rep.nilpotent = true;
      rep.nilpotency_index = k;
      break;
    }
    p = mat_mul(p, m);
  }
  return rep;
}

std::string to_string(Quality q) {
  switch (q) {
    case Quality::regular: return "regular";
    case Quality::log_canonical: return "log_canonical";
    case Quality::canonical: return "canonical";
    case Quality::radial: return "radial";
    case Quality::non_log_canonical: return "non_log_canonical";
  }
  return "?";
}

bool tangent_to_divisor(const VectorField& chi, const Exps& divisor) {
  for (int k = 0; k < 3; ++k) {
    if (divisor[k] == 0) continue;
    if (!chi.comps[k].restrict_zero(k).is_zero()) return false;
  }
  return true;
}

Quality singularity_quality(const LinearPartReport& report, const VectorField& chi,
                            const Exps& divisor) {
  if (report.regular) return Quality::regular;
  if (!tangent_to_divisor(chi, divisor))
    throw invariant_error("saturated field is not tangent to the divisor");
  if (report.nilpotent) return Quality::non_log_canonical;
  if (!report.eigen_complete) return Quality::log_canonical;
  const auto& ev = report.eigenvalues;
  for (const auto& v : ev)
    if (v.is_zero()) return Quality::canonical;
  std::vector<mpq_class> ratios;
  for (const auto& v : ev) {
    Scalar r = v / ev[0];
    if (!r.is_rational() || r.re() <= 0) return Quality::canonical;
    ratios.push_back(r.re());
  }
  mpz_class l = 1;
  for (const auto& r : ratios) l = lcm(l, r.get_den());
  mpz_class g = 0;
  for (const auto& r : ratios) g = gcd(g, mpz_class(r * l));
  int N = chi.N();
  for (const auto& r : ratios)
    if (mpz_class(r * l / g) > N) return Quality::canonical;
  return Quality::radial;
}

bool check_no_nearby_orbits(const Germ& f) {
  if (f.divisor() == Exps{0, 0, 0}) return false;
  VectorField sat = saturated_generator(f);
  LinearPartReport rep = linear_part(sat);
  return rep.regular && tangent_to_divisor(sat, f.divisor());
}

}  // namespace germforge
