#include "germforge/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include <mpfr.h>

#include "germforge/errors.hpp"

namespace germforge {

namespace {

using QPoly = std::vector<mpq_class>;

struct Cyclo {
  unsigned L = 4;
  unsigned phi = 2;
  // pow_table[k] = X^k mod Phi_L, for 0 <= k < L.
  std::vector<QPoly> pow_table;
  // Representation of i = zeta_L^(L/4).
  QPoly imag;
  // Minimal polynomial of zeta_L over Q(i), monic, as Gaussian coefficients;
  // filled lazily.
  std::vector<Scalar> psi;
  bool psi_ready = false;
};

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  // Both monic integer polynomials, coefficient index = degree.
  std::vector<long> q(num.size() - den.size() + 1, 0);
  for (std::size_t k = num.size(); k-- > den.size() - 1;) {
    long c = num[k];
    std::size_t shift = k - (den.size() - 1);
    q[shift] = c;
    if (c != 0)
      for (std::size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
  }
  return q;
}

std::vector<long> cyclotomic_poly(unsigned n) {
  static std::map<unsigned, std::vector<long>> memo;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(p, cyclotomic_poly(d));
  memo[n] = p;
  return p;
}

std::mutex& cyclo_mutex() {
  static std::mutex m;
  return m;
}

const Cyclo& cyclo(unsigned L) {
  static std::map<unsigned, std::unique_ptr<Cyclo>> cache;
  std::lock_guard<std::mutex> lock(cyclo_mutex());
  auto it = cache.find(L);
  if (it != cache.end()) return *it->second;
  auto c = std::make_unique<Cyclo>();
  c->L = L;
  std::vector<long> phi_poly = cyclotomic_poly(L);
  c->phi = static_cast<unsigned>(phi_poly.size() - 1);
  QPoly cur(c->phi, 0);
  cur[0] = 1;
  for (unsigned k = 0; k < L; ++k) {
    c->pow_table.push_back(cur);
    // multiply by X and reduce
    QPoly next(c->phi, 0);
    for (unsigned j = 0; j + 1 < c->phi; ++j) next[j + 1] = cur[j];
    mpq_class top = cur[c->phi - 1];
    if (top != 0)
      for (unsigned j = 0; j < c->phi; ++j) next[j] -= top * phi_poly[j];
    cur = next;
  }
  c->imag = c->pow_table[L / 4];
  const Cyclo& ref = *c;
  cache[L] = std::move(c);
  return ref;
}

unsigned lcm_u(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }

QPoly reduce(const QPoly& prod, const Cyclo& cy) {
  QPoly out(cy.phi, 0);
  for (std::size_t k = 0; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    if (k < cy.phi) {
      out[k] += prod[k];
    } else {
      const QPoly& t = cy.pow_table[k % cy.L];
      for (unsigned j = 0; j < cy.phi; ++j)
        if (t[j] != 0) out[j] += prod[k] * t[j];
    }
  }
  return out;
}

// Extended Euclid over Q[X]: returns u with u*a = 1 mod m.
QPoly qpoly_trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

QPoly qpoly_sub_mul(const QPoly& a, const QPoly& b, const QPoly& q) {
  // a - b*q
  QPoly out = a;
  std::size_t need = b.empty() || q.empty() ? 0 : b.size() + q.size() - 1;
  if (out.size() < need) out.resize(need, 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] -= b[i] * q[j];
  return qpoly_trim(out);
}

void qpoly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = qpoly_trim(a);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  while (r.size() >= b.size() && !r.empty()) {
    std::size_t shift = r.size() - b.size();
    mpq_class c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    r = qpoly_trim(r);
  }
}

QPoly qpoly_inverse_mod(const QPoly& a, const QPoly& m) {
  QPoly r0 = qpoly_trim(m), r1 = qpoly_trim(a);
  QPoly s0, s1{1};
  while (r1.size() > 1) {
    QPoly q, r;
    qpoly_divmod(r0, r1, q, r);
    QPoly s2 = qpoly_sub_mul(s0, s1, q);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  if (r1.empty()) throw invariant_error("inverse of a zero divisor");
  mpq_class c = r1[0];
  for (auto& v : s1) v /= c;
  return s1;
}

std::string gaussian_str(const mpq_class& re, const mpq_class& im) {
  if (im == 0) return re.get_str();
  std::string ims;
  mpq_class aim = abs(im);
  if (aim == 1)
    ims = "i";
  else
    ims = aim.get_str() + "*i";
  if (re == 0) return im < 0 ? "-" + ims : ims;
  return re.get_str() + (im < 0 ? " - " : " + ") + ims;
}

}  // namespace

Scalar::Scalar(long n) {
  if (n != 0) {
    c_.resize(2);
    c_[0] = n;
  }
}

Scalar::Scalar(long num, long den) {
  if (den == 0) throw invariant_error("zero denominator");
  if (num != 0) {
    c_.resize(2);
    c_[0] = mpq_class(num, den);
    c_[0].canonicalize();
  }
}

Scalar::Scalar(const mpq_class& q) {
  if (q != 0) {
    c_.resize(2);
    c_[0] = q;
  }
}

Scalar Scalar::gaussian(const mpq_class& re, const mpq_class& im) {
  Scalar s;
  if (re != 0 || im != 0) {
    s.c_.resize(2);
    s.c_[0] = re;
    s.c_[1] = im;
  }
  return s;
}

Scalar Scalar::imag_unit() { return gaussian(0, 1); }

Scalar Scalar::root_of_unity(unsigned m, long k) {
  if (m == 0) throw invariant_error("root of unity of order 0");
  unsigned L = lcm_u(4, m);
  long e = ((k % static_cast<long>(m)) + m) % m;
  unsigned idx = static_cast<unsigned>(e * (L / m));
  const Cyclo& cy = cyclo(L);
  Scalar s;
  s.L_ = L;
  const QPoly& t = cy.pow_table[idx];
  s.c_.assign(t.begin(), t.end());
  s.normalize();
  return s;
}

Scalar Scalar::from_raw(unsigned L, const std::vector<mpq_class>& coeffs) {
  if (L % 4 != 0) throw invariant_error("conductor must be a multiple of 4");
  const Cyclo& cy = cyclo(L);
  QPoly p(coeffs.begin(), coeffs.end());
  Scalar s;
  s.L_ = L;
  QPoly r = reduce(p, cy);
  s.c_.assign(r.begin(), r.end());
  s.normalize();
  return s;
}

bool Scalar::is_one() const { return L_ == 4 && c_.size() == 2 && c_[0] == 1 && c_[1] == 0; }

bool Scalar::is_rational() const { return c_.empty() || (L_ == 4 && c_[1] == 0); }

mpq_class Scalar::re() const {
  if (L_ != 4) throw invariant_error("re() on a non-Gaussian scalar");
  return c_.empty() ? mpq_class(0) : c_[0];
}

mpq_class Scalar::im() const {
  if (L_ != 4) throw invariant_error("im() on a non-Gaussian scalar");
  return c_.empty() ? mpq_class(0) : c_[1];
}

void Scalar::normalize() {
  bool all_zero = true;
  for (auto& v : c_)
    if (v != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) {
    c_.clear();
    L_ = 4;
    return;
  }
  if (L_ == 4) return;
  // Demote to Q(i) when possible.
  const Cyclo& cy = cyclo(L_);
  const QPoly& iv = cy.imag;
  std::size_t k = 1;
  while (k < iv.size() && iv[k] == 0) ++k;
  mpq_class b = c_[k] / iv[k];
  mpq_class a = c_[0] - b * iv[0];
  for (std::size_t j = 0; j < c_.size(); ++j) {
    mpq_class expect = b * iv[j];
    if (j == 0) expect += a;
    if (expect != c_[j]) return;
  }
  c_.clear();
  c_.resize(2);
  c_[0] = a;
  c_[1] = b;
  L_ = 4;
}

Scalar Scalar::lifted(unsigned M) const {
  if (M == L_ || c_.empty()) {
    Scalar s = *this;
    if (!c_.empty() && M != L_) s.L_ = M;
    return s;
  }
  if (M % L_ != 0) throw invariant_error("lift to a non-multiple conductor");
  const Cyclo& cy = cyclo(M);
  QPoly out(cy.phi, 0);
  unsigned step = M / L_;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    const QPoly& t = cy.pow_table[(k * step) % M];
    for (unsigned j = 0; j < cy.phi; ++j)
      if (t[j] != 0) out[j] += c_[k] * t[j];
  }
  Scalar s;
  s.L_ = M;
  s.c_.assign(out.begin(), out.end());
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  if (L_ == o.L_) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  } else {
    unsigned M = lcm_u(L_, o.L_);
    Scalar a = lifted(M), b = o.lifted(M);
    for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] += b.c_[k];
    *this = std::move(a);
  }
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  for (auto& v : s.c_) v = -v;
  return s;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.c_.empty() || b.c_.empty()) return Scalar();
  if (a.L_ == 4 && b.L_ == 4) {
    Scalar s;
    s.c_.resize(2);
    s.c_[0] = a.c_[0] * b.c_[0] - a.c_[1] * b.c_[1];
    s.c_[1] = a.c_[0] * b.c_[1] + a.c_[1] * b.c_[0];
    s.normalize();
    return s;
  }
  unsigned M = lcm_u(a.L_, b.L_);
  Scalar x = a.lifted(M), y = b.lifted(M);
  const Cyclo& cy = cyclo(M);
  QPoly prod(2 * cy.phi - 1, 0);
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (std::size_t j = 0; j < y.c_.size(); ++j)
      if (y.c_[j] != 0) prod[i + j] += x.c_[i] * y.c_[j];
  }
  QPoly r = reduce(prod, cy);
  Scalar s;
  s.L_ = M;
  s.c_.assign(r.begin(), r.end());
  s.normalize();
  return s;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inv() const {
  if (c_.empty()) throw invariant_error("division by zero scalar");
  if (L_ == 4) {
    mpq_class n = c_[0] * c_[0] + c_[1] * c_[1];
    return gaussian(c_[0] / n, -c_[1] / n);
  }
  const Cyclo& cy = cyclo(L_);
  std::vector<long> phi_poly = cyclotomic_poly(L_);
  QPoly m(phi_poly.begin(), phi_poly.end());
  QPoly a(c_.begin(), c_.end());
  QPoly u = qpoly_inverse_mod(a, m);
  QPoly r = reduce(u, cy);
  Scalar s;
  s.L_ = L_;
  s.c_.assign(r.begin(), r.end());
  s.normalize();
  return s;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this * o.inv(); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Scalar Scalar::conj() const {
  if (c_.empty()) return *this;
  if (L_ == 4) return gaussian(c_[0], -c_[1]);
  const Cyclo& cy = cyclo(L_);
  QPoly out(cy.phi, 0);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    const QPoly& t = cy.pow_table[(L_ - k) % L_];
    for (unsigned j = 0; j < cy.phi; ++j)
      if (t[j] != 0) out[j] += c_[k] * t[j];
  }
  Scalar s;
  s.L_ = L_;
  s.c_.assign(out.begin(), out.end());
  s.normalize();
  return s;
}

Scalar Scalar::real_part() const { return (*this + conj()) * Scalar(1, 2); }

Scalar Scalar::imag_part() const {
  return (*this - conj()) * gaussian(0, mpq_class(-1, 2));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.c_.empty() || b.c_.empty()) return a.c_.empty() && b.c_.empty();
  if (a.L_ == b.L_) {
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (a.c_[k] != b.c_[k]) return false;
    return true;
  }
  // Normalized elements of different conductors can still coincide when
  // neither lies in Q(i) but both lie in a common intermediate field.
  unsigned M = lcm_u(a.L_, b.L_);
  Scalar x = a.lifted(M), y = b.lifted(M);
  for (std::size_t k = 0; k < x.c_.size(); ++k)
    if (x.c_[k] != y.c_[k]) return false;
  return true;
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  if (a.L_ != b.L_) return a.L_ < b.L_;
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (std::size_t k = 0; k < a.c_.size(); ++k) {
    int c = cmp(a.c_[k], b.c_[k]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::size_t Scalar::hash() const {
  std::size_t h = L_;
  for (const auto& v : c_) {
    h = h * 1000003u ^ static_cast<std::size_t>(mpz_get_si(v.get_num_mpz_t()));
    h = h * 1000003u ^ static_cast<std::size_t>(mpz_get_si(v.get_den_mpz_t()));
  }
  return h;
}

namespace {

const std::vector<Scalar>& minimal_poly_over_qi(unsigned L) {
  const Cyclo& cy = cyclo(L);
  {
    std::lock_guard<std::mutex> lock(cyclo_mutex());
    if (cy.psi_ready) return cy.psi;
  }
  std::vector<Scalar> poly{Scalar(1)};
  for (unsigned k = 1; k < L; ++k) {
    if (std::gcd(k, L) != 1 || k % 4 != 1) continue;
    Scalar root = Scalar::root_of_unity(L, k);
    std::vector<Scalar> next(poly.size() + 1);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * root;
    }
    poly = std::move(next);
  }
  std::lock_guard<std::mutex> lock(cyclo_mutex());
  Cyclo& mut = const_cast<Cyclo&>(cy);
  if (!mut.psi_ready) {
    mut.psi = poly;
    mut.psi_ready = true;
  }
  return mut.psi;
}

}  // namespace

std::string Scalar::str() const {
  if (c_.empty()) return "0";
  if (L_ == 4) return gaussian_str(c_[0], c_[1]);
  const std::vector<Scalar>& psi = minimal_poly_over_qi(L_);
  std::size_t d = psi.size() - 1;
  std::vector<Scalar> rem;
  for (const auto& v : c_) rem.emplace_back(v);
  for (std::size_t k = rem.size(); k-- > d;) {
    Scalar c = rem[k];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= d; ++j) rem[k - d + j] -= c * psi[j];
  }
  std::string out;
  for (std::size_t k = 0; k < d && k < rem.size(); ++k) {
    if (rem[k].is_zero()) continue;
    std::string term;
    if (k == 0) {
      term = rem[k].str();
    } else {
      term = "(" + rem[k].str() + ")*zeta" + std::to_string(L_);
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw parse_error("scalar parse error at offset " + std::to_string(pos) + " in \"" +
                      std::string(s) + "\": " + what);
  }
  std::string digits() {
    skip();
    std::size_t b = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (b == pos) fail("expected digits");
    return std::string(s.substr(b, pos - b));
  }
  Scalar expr() {
    skip();
    Scalar acc;
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Scalar t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }
  Scalar term() {
    Scalar acc = factor();
    while (eat('*')) acc *= factor();
    return acc;
  }
  Scalar factor() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == '-') {
      ++pos;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      mpq_class q(num);
      skip();
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::string den = digits();
        mpz_class d(den);
        if (d == 0) fail("zero denominator");
        q = mpq_class(mpz_class(num), d);
        q.canonicalize();
      }
      return Scalar(q);
    }
    if (c == 'i' && (pos + 1 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
      ++pos;
      return Scalar::imag_unit();
    }
    if (s.substr(pos, 4) == "zeta") {
      pos += 4;
      unsigned m = static_cast<unsigned>(std::stoul(digits()));
      long k = 1;
      if (eat('^')) k = std::stol(digits());
      if (m == 0) fail("zeta0");
      return Scalar::root_of_unity(m, k);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  Parser p{text};
  Scalar v = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing characters");
  return v;
}

unsigned precision_cap() {
  const char* env = std::getenv("GERMFORGE_PRECISION_CAP");
  if (env != nullptr) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v >= 64) return static_cast<unsigned>(v);
  }
  return 512;
}

std::optional<int> scalar_sign_at_precision(const Scalar& x, unsigned bits) {
  if (x.is_zero()) return 0;
  const auto& c = x.raw();
  unsigned L = x.conductor();
  mpfr_t pi, ang, cs, term, sum, mag, q;
  mpfr_inits2(bits, pi, ang, cs, term, sum, mag, q, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_set_zero(sum, 1);
  mpfr_set_zero(mag, 1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    mpfr_mul_ui(ang, pi, 2 * static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_div_ui(ang, ang, L, MPFR_RNDN);
    mpfr_cos(cs, ang, MPFR_RNDN);
    mpfr_set_q(q, c[k].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term, cs, q, MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);
    mpfr_abs(q, q, MPFR_RNDU);
    mpfr_add(mag, mag, q, MPFR_RNDU);
  }
  // Each term carries at most a few ulps of relative error; bound generously.
  mpfr_add_ui(mag, mag, 1, MPFR_RNDU);
  mpfr_mul_ui(mag, mag, 16 * (static_cast<unsigned long>(c.size()) + 1), MPFR_RNDU);
  mpfr_mul_2si(mag, mag, -static_cast<long>(bits), MPFR_RNDU);
  std::optional<int> out;
  mpfr_abs(term, sum, MPFR_RNDD);
  if (mpfr_cmp(term, mag) > 0) out = mpfr_sgn(sum) > 0 ? 1 : -1;
  mpfr_clears(pi, ang, cs, term, sum, mag, q, static_cast<mpfr_ptr>(nullptr));
  return out;
}

int scalar_sign_of_real(const Scalar& x) {
  if (x.is_zero()) return 0;
  if (!x.is_real()) throw invariant_error("sign of a non-real scalar: " + x.str());
  if (x.is_rational()) return sgn(x.re());
  unsigned cap = precision_cap();
  for (unsigned bits = 64; bits <= cap; bits *= 2) {
    auto s = scalar_sign_at_precision(x, bits);
    if (s) return *s;
  }
  throw undecidable_error("sign undecided at the precision cap of " + std::to_string(cap) +
                          " bits for " + x.str());
}

std::pair<long double, long double> approx(const Scalar& x) {
  long double re = 0, im = 0;
  const auto& c = x.raw();
  unsigned L = x.conductor();
  const long double two_pi = 6.283185307179586476925286766559L;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    long double v = static_cast<long double>(c[k].get_d());
    re += v * std::cos(two_pi * k / L);
    im += v * std::sin(two_pi * k / L);
  }
  return {re, im};
}

}  // namespace germforge
