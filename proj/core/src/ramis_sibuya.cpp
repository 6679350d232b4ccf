#include "germforge/ramis_sibuya.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <mpfr.h>

#include "germforge/errors.hpp"

namespace germforge {

namespace {

using USeries = std::vector<Scalar>;  // coefficients mod z^size

TruncSeries zvar(int N) { return TruncSeries::variable(2, N); }

USeries umul(const USeries& a, const USeries& b) {
  USeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < out.size() && j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

USeries uinv(const USeries& a) {
  if (a.empty() || a[0].is_zero()) throw invariant_error("series is not a unit");
  USeries out(a.size());
  Scalar i0 = a[0].inv();
  out[0] = i0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    Scalar s;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) s += a[k] * out[n - k];
    out[n] = -s * i0;
  }
  return out;
}

// log(1 + u) for u(0) = 0.
USeries ulog1p(const USeries& u) {
  USeries out(u.size()), p = u;
  for (std::size_t k = 1; k < u.size(); ++k) {
    Scalar f(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += f * p[i];
    p = umul(p, u);
  }
  return out;
}

// (F(w + z^c H) - F(w)) / z^c for a univariate F in z.
TruncSeries difference_quotient(const TruncSeries& F, const TruncSeries& w, const TruncSeries& H, int c, int N) {
  TruncSeries out(N);
  TruncSeries deriv = F.truncated(N);
  if (!H.constant_term().is_zero()) throw invariant_error("difference quotient needs H(0) = 0");
  TruncSeries Hk = H.truncated(N);
  Scalar fact(1);
  TruncSeries zc = TruncSeries::monomial({0, 0, 0}, Scalar(1), N);
  for (int k = 1; k <= N + 1; ++k) {
    // F^(k) loses k degrees of certainty, regained from H^k having order >= k.
    TruncSeries next(N);
    deriv.for_each([&](const Exps& e, const Scalar& v) {
      if (e[2] > 0) next.set({0, 0, e[2] - 1}, v * Scalar(e[2]));
    });
    deriv = next;
    if (deriv.is_zero() || Hk.is_zero()) break;
    fact *= Scalar(k);
    TruncSeries term = series_mul(series_mul(compose_in_z(deriv, w.truncated(N)), Hk, N), zc, N);
    out += term.scaled(fact.inv());
    Hk = series_mul(Hk, H, N);
    if (c > 0) zc = zc.mul_monomial({0, 0, c}).truncated(N);
  }
  return out;
}

// g o (x + X(z), y + Y(z), Z(z)) for univariate X, Y, Z.
Map3 compose_all(const Map3& g, const TruncSeries& X, const TruncSeries& Y, const TruncSeries& Z, int N) {
  Map3 sub{TruncSeries::variable(0, N) + X.truncated(N), TruncSeries::variable(1, N) + Y.truncated(N), Z.truncated(N)};
  Map3 out;
  for (int k = 0; k < 3; ++k) out[k] = series_compose(g[k].truncated(N), sub);
  return out;
}

TruncSeries pure_z(const TruncSeries& s) { return s.restrict_zero(0).restrict_zero(1); }

// psi^-1 o rho o psi.
TruncSeries conjugate_z(const TruncSeries& rho, const TruncSeries& psi, const TruncSeries& psi_inv) {
  return compose_in_z(psi_inv, compose_in_z(rho, psi));
}

}  // namespace

StraightenedPair straighten_pair(const DivisorForm& f, const FormalCurve& C) {
  for (int k = 0; k < 3; ++k)
    if (k != C.axis && f.divisor[k] != 0)
      throw invariant_error("curve is not transverse to the divisor component x_" + std::to_string(k) + " = 0");
  StraightenedPair out;
  out.roles = {C.other(0), C.other(1), C.axis};
  Mat3 id{{{Scalar(1), Scalar(0), Scalar(0)}, {Scalar(0), Scalar(1), Scalar(0)}, {Scalar(0), Scalar(0), Scalar(1)}}};
  DivisorForm p = change_coordinates(f, out.roles, id);
  int c = p.divisor[2];
  int N = std::min(p.N(), C.depth);
  if (N < 1) throw undecidable_error("certified degree exhausted; raise N");

  // Move C onto the z-axis.
  TruncSeries X(N), Y(N);
  for (int m = 1; m <= N && m < static_cast<int>(C.x.size()); ++m) {
    X.set({0, 0, m}, C.x[m]);
    Y.set({0, 0, m}, C.y[m]);
  }
  TruncSeries z = zvar(N);
  Map3 G = compose_all(p.g, X, Y, z, N);
  Map3 g;
  g[0] = G[0] - difference_quotient(X, z, G[2], c, N);
  g[1] = G[1] - difference_quotient(Y, z, G[2], c, N);
  g[2] = G[2];
  for (int k = 0; k < 2; ++k) {
    int v = pure_z(g[k]).val();
    if (v <= N) throw invariant_error("curve is not invariant: residual at z^" + std::to_string(v + c));
  }

  TruncSeries hz = pure_z(g[2]);
  int s = hz.val();
  if (s > N) throw undecidable_error("curve pointwise fixed through the certified degree");
  out.r = c + s - 1;
  if (out.r < 1) throw invariant_error("restriction to the curve is not tangent to the identity");
  int r = out.r;
  out.certified = c + N;
  TruncSeries rho = z + hz.mul_monomial({0, 0, c}).truncated(out.certified);
  int top = out.certified;

  // Remove the z^(r+k) terms, 2 <= k <= r, by z -> z + a z^k.
  TruncSeries psi = zvar(top);
  for (int k = 2; k <= r; ++k) {
    if (r + k > top) break;
    TruncSeries zt = zvar(top);
    TruncSeries step = zt + TruncSeries::monomial({0, 0, k}, Scalar(1), top);
    TruncSeries c0 = rho;
    TruncSeries c1 = conjugate_z(rho, step, revert_in_z(step));
    Scalar v0 = c0.coeff({0, 0, r + k}), slope = c1.coeff({0, 0, r + k}) - v0;
    out.normalized_through = k;
    if (v0.is_zero()) continue;
    if (slope.is_zero()) throw invariant_error("z-normalization is degenerate at order " + std::to_string(r + k));
    Scalar a = -v0 / slope;
    TruncSeries st = zt + TruncSeries::monomial({0, 0, k}, a, top);
    rho = conjugate_z(rho, st, revert_in_z(st));
    psi = compose_in_z(psi, st);
  }
  out.h = rho.coeff({0, 0, r + 1});
  out.restriction.resize(top + 1);
  for (int m = 0; m <= top; ++m) out.restriction[m] = rho.coeff({0, 0, m});

  if (psi != zvar(top)) {
    TruncSeries psiN = psi.truncated(N), psi_inv = revert_in_z(psiN);
    TruncSeries zero(N);
    Map3 G2 = compose_all(g, zero, zero, psiN, N);
    TruncSeries U = TruncSeries::constant(Scalar(1), N);
    TruncSeries ratio = series_div_monomial(psi.truncated(N + 1), {0, 0, 1});
    for (int i = 0; i < c; ++i) U = series_mul(U, ratio, N);
    g[0] = series_mul(U, G2[0], N);
    g[1] = series_mul(U, G2[1], N);
    g[2] = difference_quotient(psi_inv, psiN, series_mul(U, G2[2], N), c, N);
  }
  out.form.divisor = {0, 0, c};
  out.form.g = g;
  return out;
}

std::string RSData::str() const {
  std::ostringstream os;
  os << to_string(family) << ": c=" << c << " e=" << e << " r=" << r << " n=" << n << " h=" << h.str()
     << " b=" << beta.str() << " lambda=" << lambda.str() << " mu=" << mu.str() << " d1=[";
  for (int k = 1; k < static_cast<int>(d1.size()); ++k) os << (k > 1 ? ", " : "") << d1[k].str();
  os << "] d2=[";
  for (int k = 1; k < static_cast<int>(d2.size()); ++k) os << (k > 1 ? ", " : "") << d2[k].str();
  os << "] c=[" << c_matrix[0].str() << ", " << c_matrix[1].str() << ", " << c_matrix[2].str() << ", "
     << c_matrix[3].str() << "]";
  return os.str();
}

RSData rs_reduce(const StraightenedPair& s, Family family, int c) {
  if (family != Family::degenerate_spike && family != Family::half_corner)
    throw invariant_error("reduction needs a degenerate spike or a half corner");
  RSData rs;
  rs.family = family;
  rs.c = c;
  rs.r = s.r;
  rs.h = s.h;
  int r = s.r;
  rs.e = family == Family::degenerate_spike ? r - c : r - c - 1;
  if (rs.e < 0) throw invariant_error("multiplicity along the curve is below the class bound");
  if (s.normalized_through < r) throw undecidable_error("z-normalization incomplete; raise N");
  rs.n = (family == Family::degenerate_spike ? c + 2 * rs.e + 1 : c + 2 * rs.e + 2) + 1;

  DivisorForm F = s.form;
  Chart origin = Chart::point({Scalar(0), Scalar(0), Scalar(1)}, 2);
  for (int i = 0; i < rs.n; ++i) F = lift(F, origin);
  if (F.divisor[0] != 0 || F.divisor[1] != 0) throw invariant_error("lift along the curve left the z-chart divisor");
  int cn = F.divisor[2], N = F.N();
  if (cn + N < 2 * r + 1)
    throw undecidable_error("certified degree " + std::to_string(cn + N) + " below " + std::to_string(2 * r + 1) +
                            " after " + std::to_string(rs.n) + " blow-ups; raise N");
  rs.certified = cn + N;

  // Shape of the reduced germ through the certified degree.
  auto shape_fail = [](const std::string& what) { throw invariant_error("reduced germ is not in normal form: " + what); };
  for (int k = 0; k < 2; ++k)
    F.g[k].for_each([&](const Exps& e, const Scalar&) {
      int xy = e[0] + e[1];
      if (xy == 0) shape_fail("curve not invariant");
      if (xy >= 2 && cn + e[2] <= r) shape_fail("nonlinear term " + monomial_str(e) + " below z^" + std::to_string(r + 1));
    });
  F.g[2].for_each([&](const Exps& e, const Scalar&) {
    int xy = e[0] + e[1], m = cn + e[2];
    if (xy > 0 && m <= 2 * r + 1) shape_fail("transverse term " + monomial_str(e) + " in the z-component");
    if (xy == 0 && m <= 2 * r + 1 && m != r + 1 && m != 2 * r + 1) shape_fail("z-restriction term z^" + std::to_string(m + 1));
  });
  Scalar hn = F.g[2].coeff({0, 0, r + 1 - cn});
  if (hn != s.h) shape_fail("leading coefficient changed");
  Scalar bprime = 2 * r + 1 - cn >= 0 ? F.g[2].coeff({0, 0, 2 * r + 1 - cn}) : Scalar(0);
  rs.beta = bprime / (s.h * s.h);

  // Linear block A = I + z^cn B(z) mod z^(r+1).
  int K = r - cn + 1;  // size of B mod z^K
  std::array<std::array<USeries, 2>, 2> B;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      B[j][k].assign(std::max(K, 1), Scalar(0));
      for (int m = 0; m < K; ++m) {
        Exps e{0, 0, m};
        e[k] += 1;
        B[j][k][m] = F.g[j].coeff(e);
      }
    }
  if (K <= 0) {
    rs.d1.assign(r, Scalar(0));
    rs.d2.assign(r, Scalar(0));
    return rs;
  }

  // Diagonalize B(0), then kill off-diagonal terms order by order.
  Scalar tr = B[0][0][0] + B[1][1][0], det = B[0][0][0] * B[1][1][0] - B[0][1][0] * B[1][0][0];
  UPoly cp({det, -tr, Scalar(1)});
  UPoly residual;
  std::vector<Scalar> ev = field_roots(cp, &residual);
  if (residual.degree() > 0) throw undecidable_error("leading eigenvalues outside the scalar field");
  if (ev.size() != 2 || ev[0] == ev[1]) throw undecidable_error("equal leading eigenvalues on the linear block");
  std::sort(ev.begin(), ev.end(), [](const Scalar& a, const Scalar& b) {
    if (a.is_zero() != b.is_zero()) return b.is_zero();
    return canonical_less(a, b);
  });
  Mat3 T0{};  // 2x2 block in the top-left corner
  for (int i = 0; i < 2; ++i) {
    Scalar a = B[0][0][0] - ev[i], b = B[0][1][0], cc = B[1][0][0], d = B[1][1][0] - ev[i];
    Scalar v0, v1;
    if (!b.is_zero() || !a.is_zero()) {
      v0 = b;
      v1 = -a;
    } else {
      v0 = d;
      v1 = -cc;
    }
    if (v0.is_zero() && v1.is_zero()) v0 = i == 0 ? Scalar(1) : Scalar(0), v1 = i == 0 ? Scalar(0) : Scalar(1);
    T0[0][i] = v0;
    T0[1][i] = v1;
  }
  Scalar dT = T0[0][0] * T0[1][1] - T0[0][1] * T0[1][0];
  if (dT.is_zero()) throw invariant_error("linear block is not diagonalizable");
  std::array<std::array<Scalar, 2>, 2> Ti{{{T0[1][1] / dT, -T0[0][1] / dT}, {-T0[1][0] / dT, T0[0][0] / dT}}};
  std::array<std::array<USeries, 2>, 2> D;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      D[j][k].assign(K, Scalar(0));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int m = 0; m < K; ++m) D[j][k][m] += Ti[j][a] * B[a][b][m] * T0[b][k];
    }
  Scalar lam = ev[0], mu = ev[1];
  for (int m = 1; m < K; ++m) {
    Scalar n12 = D[0][1][m], n21 = D[1][0][m];
    if (n12.is_zero() && n21.is_zero()) continue;
    // Conjugate by S = I + z^m Kmat, S^-1 = I - z^m Kmat + ...
    Scalar k12 = n12 / (mu - lam), k21 = n21 / (lam - mu);
    std::array<std::array<USeries, 2>, 2> S, Si;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        S[j][k].assign(K, Scalar(0));
        if (j == k) S[j][k][0] = Scalar(1);
      }
    S[0][1][m] = k12;
    S[1][0][m] = k21;
    USeries det_s = umul(S[0][0], S[1][1]);
    USeries off = umul(S[0][1], S[1][0]);
    for (int i = 0; i < K; ++i) det_s[i] -= off[i];
    USeries idet = uinv(det_s);
    Si[0][0] = umul(S[1][1], idet);
    Si[1][1] = umul(S[0][0], idet);
    Si[0][1] = umul(S[0][1], idet);
    Si[1][0] = umul(S[1][0], idet);
    for (auto& x : Si[0][1]) x = -x;
    for (auto& x : Si[1][0]) x = -x;
    std::array<std::array<USeries, 2>, 2> E;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        E[j][k].assign(K, Scalar(0));
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            USeries t = umul(umul(Si[j][a], D[a][b]), S[b][k]);
            for (int i = 0; i < K; ++i) E[j][k][i] += t[i];
          }
      }
    D = E;
  }
  rs.lambda = lam;
  rs.mu = mu;

  // a_jj = 1 + z^cn D_jj mod z^(r+1).
  auto diag_log = [&](const USeries& Djj) {
    USeries a(r + 1, Scalar(0));
    for (int m = 0; m < K; ++m) a[cn + m] = Djj[m];
    return ulog1p(a);
  };
  USeries l1 = diag_log(D[0][0]), l2 = diag_log(D[1][1]);
  rs.d1.assign(l1.begin(), l1.begin() + r);
  rs.d2.assign(l2.begin(), l2.begin() + r);
  rs.c_matrix = {l1[r], cn + K - 1 == r ? D[0][1][K - 1] : Scalar(0), cn + K - 1 == r ? D[1][0][K - 1] : Scalar(0),
                 l2[r]};
  return rs;
}

namespace {

// Argument of a scalar at the given precision, with an error bound on it.
// Returns false when the modulus cannot be separated from zero.
bool scalar_arg(const Scalar& x, unsigned bits, mpfr_t arg, mpfr_t err, mpfr_t logmod) {
  const auto& c = x.raw();
  unsigned L = x.conductor();
  mpfr_t pi, ang, cs, sn, q, re, im, mag, mod, t;
  mpfr_inits2(bits, pi, ang, cs, sn, q, re, im, mag, mod, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set_zero(re, 1);
  mpfr_set_zero(im, 1);
  mpfr_set_zero(mag, 1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    mpfr_mul_ui(ang, pi, 2 * static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_div_ui(ang, ang, L, MPFR_RNDN);
    mpfr_sin_cos(sn, cs, ang, MPFR_RNDN);
    mpfr_set_q(q, c[k].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(t, cs, q, MPFR_RNDN);
    mpfr_add(re, re, t, MPFR_RNDN);
    mpfr_mul(t, sn, q, MPFR_RNDN);
    mpfr_add(im, im, t, MPFR_RNDN);
    mpfr_abs(q, q, MPFR_RNDU);
    mpfr_add(mag, mag, q, MPFR_RNDU);
  }
  // Absolute error of (re, im), as in the real sign test.
  mpfr_add_ui(mag, mag, 1, MPFR_RNDU);
  mpfr_mul_ui(mag, mag, 16 * (static_cast<unsigned long>(c.size()) + 1), MPFR_RNDU);
  mpfr_mul_2si(mag, mag, -static_cast<long>(bits), MPFR_RNDU);
  mpfr_hypot(mod, re, im, MPFR_RNDD);
  mpfr_mul_ui(t, mag, 4, MPFR_RNDU);
  bool ok = mpfr_cmp(mod, t) > 0;
  if (ok) {
    mpfr_atan2(arg, im, re, MPFR_RNDN);
    // |d arg| <= 2 |d z| / |z| once |z| > 4 |d z|, plus rounding.
    mpfr_mul_ui(t, mag, 4, MPFR_RNDU);
    mpfr_div(err, t, mod, MPFR_RNDU);
    mpfr_set_ui(t, 1, MPFR_RNDN);
    mpfr_mul_2si(t, t, 4 - static_cast<long>(bits), MPFR_RNDU);
    mpfr_add(err, err, t, MPFR_RNDU);
    mpfr_log(logmod, mod, MPFR_RNDN);
  }
  mpfr_clears(pi, ang, cs, sn, q, re, im, mag, mod, t, static_cast<mpfr_ptr>(nullptr));
  return ok;
}

bool is_positive_real(const Scalar& x) { return x.is_real() && !x.is_zero() && scalar_sign_of_real(x) > 0; }

// Number of directions v (v^r = w) with Re(d v^k) = 0.
int exact_zero_count(const Scalar& d, const Scalar& w, int k, int r) {
  if (d.is_zero()) return r;
  int g = std::gcd(k, r), m = r / g;
  Scalar T = d.pow(m) * w.pow(k / g);
  Scalar im_m = Scalar::imag_unit().pow(m);
  Scalar u = T / im_m;
  if (m % 2 == 1) return u.is_real() ? g : 0;
  return is_positive_real(u) ? 2 * g : 0;
}

}  // namespace

ParabolicReport parabolic_report(const RSData& rs) {
  int r = rs.r;
  if (r < 1 || rs.h.is_zero()) throw invariant_error("parabolic report needs r >= 1 and h != 0");
  if (static_cast<int>(rs.d1.size()) != r || static_cast<int>(rs.d2.size()) != r)
    throw invariant_error("d_1, d_2 must have r coefficients");
  ParabolicReport rep;
  rep.count = r;
  Scalar w = -rs.h.inv();
  std::array<const std::vector<Scalar>*, 2> ds{&rs.d1, &rs.d2};

  // Exact number of vanishing entries per (j, k).
  std::array<std::vector<int>, 2> zeros;
  for (int j = 0; j < 2; ++j) {
    zeros[j].assign(r, 0);
    for (int k = 1; k < r; ++k) zeros[j][k] = exact_zero_count((*ds[j])[k], w, k, r);
  }

  // signs[j][k][idx]
  std::array<std::vector<std::vector<int>>, 2> signs;
  unsigned cap = precision_cap();
  bool done = false;
  unsigned bits = 64;
  std::vector<std::string> approx_v(r);
  for (; bits <= cap && !done; bits *= 2) {
    done = true;
    mpfr_t pi, wa, we, wl, da, de, dl, ang, err, t, cs;
    mpfr_inits2(bits + 32, pi, wa, we, wl, da, de, dl, ang, err, t, cs, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    if (!scalar_arg(w, bits, wa, we, wl)) throw invariant_error("attracting directions: -1/h vanishes numerically");
    for (int idx = 0; idx < r; ++idx) {
      // arg v = (arg w + 2 pi idx) / r
      mpfr_mul_ui(t, pi, 2 * static_cast<unsigned long>(idx), MPFR_RNDN);
      mpfr_add(t, t, wa, MPFR_RNDN);
      mpfr_div_ui(t, t, static_cast<unsigned long>(r), MPFR_RNDN);
      mpfr_div_ui(cs, wl, static_cast<unsigned long>(r), MPFR_RNDN);
      double modv = std::exp(mpfr_get_d(cs, MPFR_RNDN)), argv = mpfr_get_d(t, MPFR_RNDN);
      std::ostringstream os;
      os.precision(6);
      os << modv * std::cos(argv) << (modv * std::sin(argv) < 0 ? " - " : " + ") << std::abs(modv * std::sin(argv))
         << "i";
      approx_v[idx] = os.str();
    }
    for (int j = 0; j < 2; ++j) {
      signs[j].assign(r, std::vector<int>(r, 0));
      for (int k = 1; k < r; ++k) {
        const Scalar& d = (*ds[j])[k];
        if (d.is_zero()) continue;
        if (!scalar_arg(d, bits, da, de, dl)) {
          done = false;
          break;
        }
        int undecided = 0;
        std::vector<int> row(r, 0);
        for (int idx = 0; idx < r; ++idx) {
          // angle = arg d + k (arg w + 2 pi idx) / r
          mpfr_mul_ui(t, pi, 2 * static_cast<unsigned long>(idx), MPFR_RNDN);
          mpfr_add(t, t, wa, MPFR_RNDN);
          mpfr_mul_ui(t, t, static_cast<unsigned long>(k), MPFR_RNDN);
          mpfr_div_ui(t, t, static_cast<unsigned long>(r), MPFR_RNDN);
          mpfr_add(ang, t, da, MPFR_RNDN);
          mpfr_cos(cs, ang, MPFR_RNDN);
          // error: de + k we / r + rounding
          mpfr_mul_ui(err, we, static_cast<unsigned long>(k), MPFR_RNDU);
          mpfr_div_ui(err, err, static_cast<unsigned long>(r), MPFR_RNDU);
          mpfr_add(err, err, de, MPFR_RNDU);
          mpfr_set_ui(t, 1, MPFR_RNDN);
          mpfr_mul_2si(t, t, 8 - static_cast<long>(bits), MPFR_RNDU);
          mpfr_add(err, err, t, MPFR_RNDU);
          mpfr_abs(t, cs, MPFR_RNDD);
          if (mpfr_cmp(t, err) > 0)
            row[idx] = mpfr_sgn(cs) > 0 ? 1 : -1;
          else
            ++undecided;
        }
        if (undecided != zeros[j][k]) {
          done = false;
          break;
        }
        for (int idx = 0; idx < r; ++idx) signs[j][idx][k] = row[idx];
      }
      if (!done) break;
    }
    mpfr_clears(pi, wa, we, wl, da, de, dl, ang, err, t, cs, static_cast<mpfr_ptr>(nullptr));
    if (done) rep.precision = bits;
  }
  if (!done) throw undecidable_error("node/saddle signs undecided at the precision cap of " + std::to_string(cap) + " bits");

  for (int idx = 0; idx < r; ++idx) {
    AttractingDirection a;
    a.index = idx;
    a.approx = approx_v[idx];
    a.r1.assign(signs[0][idx].begin() + 1, signs[0][idx].end());
    a.r2.assign(signs[1][idx].begin() + 1, signs[1][idx].end());
    auto lex_negative = [](const std::vector<int>& v) {
      for (int s : v)
        if (s != 0) return s < 0;
      return false;
    };
    a.node1 = lex_negative(a.r1);
    a.node2 = lex_negative(a.r2);
    a.s = (a.node1 ? 1 : 0) + (a.node2 ? 1 : 0);
    a.dimension = a.s + 1;
    rep.directions.push_back(a);
  }
  return rep;
}

std::string ParabolicReport::table() const {
  std::ostringstream os;
  auto signs = [](const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::string(v[i] > 0 ? "+" : v[i] < 0 ? "-" : "0");
    return s + ")";
  };
  os << "count " << count << "\n";
  os << "idx  direction                      R1          R2          s  dim\n";
  for (const auto& d : directions) {
    std::string v = d.approx;
    v.resize(std::max<std::size_t>(v.size(), 30), ' ');
    std::string r1 = signs(d.r1), r2 = signs(d.r2);
    r1.resize(std::max<std::size_t>(r1.size(), 11), ' ');
    r2.resize(std::max<std::size_t>(r2.size(), 11), ' ');
    os << d.index << "    " << v << " " << r1 << " " << r2 << " " << d.s << "  " << d.dimension << "\n";
  }
  return os.str();
}

}  // namespace germforge
