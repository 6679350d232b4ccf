#include "germforge/poly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "germforge/errors.hpp"

namespace germforge {

namespace {
const Scalar& zero_s() {
  static const Scalar z;
  return z;
}
}  // namespace

// ---------------------------------------------------------------- Poly

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) t_[{0, 0, 0}] = c;
}

Poly Poly::variable(int k) { return monomial(unit_exps(k), Scalar(1)); }

Poly Poly::monomial(const Exps& e, const Scalar& c) {
  Poly p;
  p.add_to(e, c);
  return p;
}

Poly Poly::from_series(const TruncSeries& s) {
  Poly p;
  s.for_each([&](const Exps& e, const Scalar& c) { p.t_[e] = c; });
  return p;
}

TruncSeries Poly::to_series(int N) const {
  TruncSeries s(N);
  for (const auto& [e, c] : t_) s.add_to(e, c);
  return s;
}

const Scalar& Poly::coeff(const Exps& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? zero_s() : it->second;
}

void Poly::add_to(const Exps& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

int Poly::total_degree() const { return t_.empty() ? -1 : degree(t_.rbegin()->first); }

int Poly::degree_in(int k) const {
  int d = -1;
  for (const auto& [e, c] : t_) d = std::max(d, e[k]);
  return d;
}

int Poly::min_degree() const { return t_.empty() ? -1 : degree(t_.begin()->first); }

Scalar Poly::eval(const std::array<Scalar, 3>& p) const {
  Scalar acc;
  for (const auto& [e, c] : t_) {
    Scalar term = c;
    for (int k = 0; k < 3; ++k)
      if (e[k] > 0) term *= p[k].pow(e[k]);
    acc += term;
  }
  return acc;
}

Poly Poly::substitute(int k, const Scalar& value) const {
  Poly out;
  for (const auto& [e, c] : t_) {
    Exps f = e;
    f[k] = 0;
    out.add_to(f, e[k] == 0 ? c : c * value.pow(e[k]));
  }
  return out;
}

Poly Poly::translate(int k, const Scalar& shift) const {
  if (shift.is_zero()) return *this;
  Poly out;
  for (const auto& [e, c] : t_) {
    // (x + s)^n = sum binom(n, m) s^(n-m) x^m
    int n = e[k];
    mpz_class binom = 1;
    for (int m = n; m >= 0; --m) {
      // binom(n, m): iterate downward using binom(n, m-1) = binom(n, m) * m / (n - m + 1)
      Exps f = e;
      f[k] = m;
      out.add_to(f, c * Scalar(mpq_class(binom)) * shift.pow(n - m));
      if (m > 0) {
        binom *= m;
        binom /= (n - m + 1);
      }
    }
  }
  return out;
}

Poly Poly::derivative(int k) const {
  Poly out;
  for (const auto& [e, c] : t_) {
    if (e[k] == 0) continue;
    Exps f = e;
    f[k] -= 1;
    out.add_to(f, c * Scalar(e[k]));
  }
  return out;
}

Poly Poly::homogeneous_part(int d) const {
  Poly out;
  for (const auto& [e, c] : t_)
    if (degree(e) == d) out.t_[e] = c;
  return out;
}

Poly Poly::pow(int e) const {
  Poly r(Scalar(1));
  for (int k = 0; k < e; ++k) r = r * *this;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.t_) add_to(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.t_) add_to(e, -c);
  return *this;
}

Poly Poly::operator-() const {
  Poly p;
  for (const auto& [e, c] : t_) p.t_[e] = -c;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [e, c] : a.t_)
    for (const auto& [f, d] : b.t_) out.add_to(e + f, c * d);
  return out;
}

Poly operator*(const Scalar& s, const Poly& a) {
  Poly out;
  if (s.is_zero()) return out;
  for (const auto& [e, c] : a.t_) out.t_[e] = c * s;
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.t_.size() != b.t_.size()) return false;
  auto i = a.t_.begin();
  auto j = b.t_.begin();
  for (; i != a.t_.end(); ++i, ++j)
    if (i->first != j->first || i->second != j->second) return false;
  return true;
}

std::string Poly::str(const char* vars) const {
  std::string out;
  for (const auto& [e, c] : t_) {
    std::string cs = c.str();
    bool compound = cs.find(' ') != std::string::npos;
    bool neg = !compound && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    std::string mono = monomial_str(e, vars);
    std::string term;
    if (mono == "1")
      term = compound ? "(" + cs + ")" : cs;
    else if (cs == "1")
      term = mono;
    else
      term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }

UPoly UPoly::constant(const Scalar& c) { return UPoly(std::vector<Scalar>{c}); }

UPoly UPoly::x() { return UPoly(std::vector<Scalar>{Scalar(0), Scalar(1)}); }

UPoly UPoly::from_poly(const Poly& p, int k) {
  std::vector<Scalar> c;
  for (const auto& [e, v] : p.terms()) {
    for (int j = 0; j < 3; ++j)
      if (j != k && e[j] != 0) throw invariant_error("polynomial is not univariate");
    if (static_cast<int>(c.size()) <= e[k]) c.resize(e[k] + 1);
    c[e[k]] += v;
  }
  return UPoly(std::move(c));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Scalar& UPoly::lead() const { return c_.empty() ? zero_s() : c_.back(); }

Scalar UPoly::operator()(const Scalar& v) const {
  Scalar acc;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * v + c_[k];
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Scalar> c;
  for (std::size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * Scalar(static_cast<long>(k)));
  return UPoly(std::move(c));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  Scalar inv = c_.back().inv();
  return inv * *this;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return UPoly();
  std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

UPoly operator*(const Scalar& s, const UPoly& a) {
  std::vector<Scalar> c;
  for (const auto& v : a.c_) c.push_back(v * s);
  return UPoly(std::move(c));
}

std::string UPoly::str(char var) const {
  Poly p;
  for (std::size_t k = 0; k < c_.size(); ++k) p.add_to({static_cast<int>(k), 0, 0}, c_[k]);
  char vars[4] = {var, 'y', 'z', 0};
  return p.str(vars);
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw invariant_error("polynomial division by zero");
  std::vector<Scalar> rc = a.coeffs();
  int db = b.degree();
  std::vector<Scalar> qc(std::max(0, a.degree() - db + 1));
  Scalar inv = b.lead().inv();
  for (int k = a.degree(); k >= db; --k) {
    if (rc[k].is_zero()) continue;
    Scalar c = rc[k] * inv;
    qc[k - db] = c;
    for (int j = 0; j <= db; ++j) rc[k - db + j] -= c * b.coeffs()[j];
  }
  q = UPoly(std::move(qc));
  r = UPoly(std::move(rc));
}

UPoly operator/(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) throw invariant_error("inexact polynomial division");
  return q;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly q, r;
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x.monic();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UPoly g = gcd(p, p.derivative());
  return (p / g).monic();
}

bool gaussian_sqrt(const Scalar& a, Scalar& root) {
  if (a.is_zero()) {
    root = Scalar();
    return true;
  }
  if (!a.is_gaussian()) return false;
  auto rat_sqrt = [](const mpq_class& q, mpq_class& out) {
    if (q < 0) return false;
    mpz_class n = q.get_num(), d = q.get_den();
    mpz_class sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    out = mpq_class(sn, sd);
    out.canonicalize();
    return true;
  };
  mpq_class re = a.re(), im = a.im();
  mpq_class s;
  if (!rat_sqrt(re * re + im * im, s)) return false;
  mpq_class p2 = (re + s) / 2, p;
  if (rat_sqrt(p2, p) && p != 0) {
    root = Scalar::gaussian(p, im / (2 * p));
    return root * root == a;
  }
  // re + s == 0: purely negative real
  mpq_class q2 = (s - re) / 2, q;
  if (!rat_sqrt(q2, q) || q == 0) return false;
  root = Scalar::gaussian(im / (2 * q), q);
  return root * root == a;
}

namespace {

using cld = std::complex<long double>;

std::vector<cld> aberth(const std::vector<cld>& c) {
  int n = static_cast<int>(c.size()) - 1;
  std::vector<cld> z(n);
  long double radius = 0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(c[k] / c[n]), 1.0L / (n - k)));
  radius = std::max(radius * 2, 1.0L);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius, 6.283185307179586L * (k + 0.25L) / n + 0.4L);
  auto eval = [&](cld x, cld& d) {
    cld p = c[n];
    d = 0;
    for (int k = n - 1; k >= 0; --k) {
      d = d * x + p;
      p = p * x + c[k];
    }
    return p;
  };
  for (int it = 0; it < 800; ++it) {
    long double moved = 0;
    for (int k = 0; k < n; ++k) {
      cld d;
      cld p = eval(z[k], d);
      if (std::abs(p) == 0) continue;
      cld ratio = p / d;
      cld sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      cld w = ratio / (1.0L - ratio * sum);
      z[k] -= w;
      moved = std::max(moved, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    if (moved < 1e-17L) break;
  }
  return z;
}

std::vector<mpq_class> rational_candidates(long double v) {
  std::vector<mpq_class> out;
  if (std::fabs(v) < 1e-9L) out.emplace_back(0);
  long double tol = 1e-8L * std::max(1.0L, std::fabs(v));
  // Continued fraction convergents.
  long double x = v;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (int it = 0; it < 40; ++it) {
    long double a = std::floor(x);
    mpz_class ai(static_cast<double>(a));
    if (std::fabs(a) > 1e15L) break;
    mpz_class h2 = ai * h0 + h1, k2 = ai * k0 + k1;
    h1 = h0;
    h0 = h2;
    k1 = k0;
    k0 = k2;
    mpq_class q(h0, k0);
    q.canonicalize();
    long double qd = static_cast<long double>(q.get_d());
    if (std::fabs(qd - v) < tol) out.push_back(q);
    if (out.size() > 3 || k0 > mpz_class("1000000000000")) break;
    long double frac = x - a;
    if (std::fabs(frac) < 1e-18L) break;
    x = 1.0L / frac;
  }
  return out;
}

}  // namespace

std::vector<Scalar> field_roots(const UPoly& p_in, UPoly* residual) {
  std::vector<Scalar> roots;
  if (p_in.degree() <= 0) {
    if (residual) *residual = UPoly::constant(Scalar(1));
    return roots;
  }
  UPoly q = squarefree_part(p_in);
  if (q.coeffs()[0].is_zero()) {
    roots.emplace_back(0);
    q = q / UPoly::x();
  }
  bool gaussian = std::all_of(q.coeffs().begin(), q.coeffs().end(),
                              [](const Scalar& s) { return s.is_gaussian(); });
  while (q.degree() >= 1) {
    if (q.degree() == 1) {
      roots.push_back(-q.coeffs()[0] / q.coeffs()[1]);
      q = UPoly::constant(Scalar(1));
      break;
    }
    if (q.degree() == 2) {
      const auto& c = q.coeffs();
      Scalar disc = c[1] * c[1] - Scalar(4) * c[0] * c[2];
      Scalar s;
      if (gaussian_sqrt(disc, s)) {
        Scalar den = (Scalar(2) * c[2]).inv();
        roots.push_back((-c[1] + s) * den);
        roots.push_back((-c[1] - s) * den);
        q = UPoly::constant(Scalar(1));
      }
      break;
    }
    if (!gaussian) break;
    std::vector<cld> cc;
    for (const auto& s : q.coeffs()) {
      auto [re, im] = approx(s);
      cc.emplace_back(re, im);
    }
    std::vector<cld> z = aberth(cc);
    bool found = false;
    for (const cld& w : z) {
      auto res = rational_candidates(w.real());
      auto ims = rational_candidates(w.imag());
      for (const auto& a : res) {
        for (const auto& b : ims) {
          Scalar cand = Scalar::gaussian(a, b);
          if (q(cand).is_zero()) {
            roots.push_back(cand);
            std::vector<Scalar> lin{-cand, Scalar(1)};
            q = q / UPoly(lin);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  if (residual) *residual = q.monic();
  std::sort(roots.begin(), roots.end(), canonical_less);
  return roots;
}

// ---------------------------------------------------------------- BPoly

int bdeg(const BPoly& b) { return static_cast<int>(b.size()) - 1; }

namespace {

void btrim(BPoly& b) {
  while (!b.empty() && b.back().is_zero()) b.pop_back();
}

BPoly bscale(const BPoly& b, const UPoly& s) {
  BPoly out;
  for (const auto& c : b) out.push_back(c * s);
  btrim(out);
  return out;
}

BPoly bsub(const BPoly& a, const BPoly& b) {
  BPoly out = a;
  if (out.size() < b.size()) out.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
  btrim(out);
  return out;
}

BPoly bshift(const BPoly& b, int n) {
  BPoly out(n);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

UPoly bcontent(const BPoly& b) {
  UPoly g;
  for (const auto& c : b) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

BPoly bdiv_scalar_poly(const BPoly& b, const UPoly& d) {
  BPoly out;
  for (const auto& c : b) out.push_back(c / d);
  btrim(out);
  return out;
}

BPoly prem(const BPoly& a, const BPoly& b) {
  BPoly r = a;
  btrim(r);
  int db = bdeg(b);
  const UPoly& lc = b.back();
  while (!r.empty() && bdeg(r) >= db) {
    UPoly lr = r.back();
    r = bsub(bscale(r, lc), bshift(bscale(b, lr), bdeg(r) - db));
  }
  return r;
}

BPoly primitive(const BPoly& b) {
  if (b.empty()) return b;
  UPoly c = bcontent(b);
  BPoly out = bdiv_scalar_poly(b, c);
  // Normalize the leading coefficient to be monic in x.
  Scalar l = out.back().lead().inv();
  for (auto& v : out) v = l * v;
  return out;
}

}  // namespace

BPoly to_bpoly(const Poly& p, int vx, int vy) {
  BPoly out;
  for (const auto& [e, c] : p.terms()) {
    for (int k = 0; k < 3; ++k)
      if (k != vx && k != vy && e[k] != 0) throw invariant_error("polynomial is not bivariate");
    if (static_cast<int>(out.size()) <= e[vy]) out.resize(e[vy] + 1);
    std::vector<Scalar> mono(e[vx] + 1);
    mono[e[vx]] = c;
    out[e[vy]] += UPoly(mono);
  }
  btrim(out);
  return out;
}

Poly from_bpoly(const BPoly& b, int vx, int vy) {
  Poly p;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const auto& cs = b[j].coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      Exps e{0, 0, 0};
      e[vx] = static_cast<int>(i);
      e[vy] = static_cast<int>(j);
      p.add_to(e, cs[i]);
    }
  }
  return p;
}

UPoly resultant_y(const BPoly& a_in, const BPoly& b_in) {
  BPoly a = a_in, b = b_in;
  btrim(a);
  btrim(b);
  if (a.empty() || b.empty()) return UPoly();
  int m = bdeg(a), n = bdeg(b);
  auto upow = [](const UPoly& u, int e) {
    UPoly r = UPoly::constant(Scalar(1));
    for (int k = 0; k < e; ++k) r = r * u;
    return r;
  };
  if (m == 0) return upow(a[0], n);
  if (n == 0) return upow(b[0], m);
  int sz = m + n;
  std::vector<std::vector<UPoly>> M(sz, std::vector<UPoly>(sz));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[r][r + (m - k)] = a[k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[n + r][r + (n - k)] = b[k];
  // Bareiss fraction-free elimination.
  UPoly prev = UPoly::constant(Scalar(1));
  bool neg = false;
  for (int k = 0; k < sz - 1; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int r = k + 1; r < sz; ++r)
        if (!M[r][k].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) return UPoly();
      std::swap(M[k], M[piv]);
      neg = !neg;
    }
    for (int i = k + 1; i < sz; ++i) {
      for (int j = k + 1; j < sz; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
      M[i][k] = UPoly();
    }
    prev = M[k][k];
  }
  UPoly det = M[sz - 1][sz - 1];
  return neg ? Scalar(-1) * det : det;
}

BPoly bpoly_gcd(const BPoly& a_in, const BPoly& b_in) {
  BPoly a = a_in, b = b_in;
  btrim(a);
  btrim(b);
  if (a.empty()) return primitive(b);
  if (b.empty()) return primitive(a);
  UPoly c = gcd(bcontent(a), bcontent(b));
  a = primitive(a);
  b = primitive(b);
  if (bdeg(a) < bdeg(b)) std::swap(a, b);
  while (!b.empty()) {
    BPoly r = prem(a, b);
    a = b;
    b = r.empty() ? r : primitive(r);
  }
  BPoly g = primitive(a);
  if (bdeg(g) == 0) g = BPoly{UPoly::constant(Scalar(1))};
  return bscale(g, c);
}

BPoly bpoly_div(const BPoly& a_in, const BPoly& g) {
  BPoly r = a_in;
  btrim(r);
  if (g.empty()) throw invariant_error("bivariate division by zero");
  int dg = bdeg(g);
  BPoly q(std::max(0, bdeg(r) - dg + 1));
  while (!r.empty() && bdeg(r) >= dg) {
    UPoly qq, rr;
    divmod(r.back(), g.back(), qq, rr);
    if (!rr.is_zero()) throw invariant_error("inexact bivariate division");
    int s = bdeg(r) - dg;
    q[s] = qq;
    BPoly t;
    for (const auto& c : g) t.push_back(c * qq);
    r = bsub(r, bshift(t, s));
  }
  if (!r.empty()) throw invariant_error("inexact bivariate division");
  btrim(q);
  return q;
}

}  // namespace germforge
