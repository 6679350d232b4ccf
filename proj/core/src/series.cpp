#include "germforge/series.hpp"

#include <algorithm>
#include <mutex>

#include "germforge/errors.hpp"

namespace germforge {

namespace {

constexpr int kMaxDegree = 64;

const std::vector<Exps>& mono_table() {
  static const std::vector<Exps> table = [] {
    std::vector<Exps> t;
    for (int d = 0; d <= kMaxDegree; ++d)
      for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) t.push_back({i, j, d - i - j});
    return t;
  }();
  return table;
}

void check_degree(int N) {
  if (N < 0 || N > kMaxDegree)
    throw invariant_error("truncation degree " + std::to_string(N) + " outside [0, " +
                          std::to_string(kMaxDegree) + "]");
}

const Scalar& zero_scalar() {
  static const Scalar z;
  return z;
}

}  // namespace

Exps unit_exps(int k) {
  Exps e{0, 0, 0};
  e[k] = 1;
  return e;
}

bool graded_less(const Exps& a, const Exps& b) { return mono_index(a) < mono_index(b); }

std::string monomial_str(const Exps& e, const char* vars) {
  std::string out;
  for (int k = 0; k < 3; ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[k];
    if (e[k] > 1) out += "^" + std::to_string(e[k]);
  }
  return out.empty() ? "1" : out;
}

std::size_t mono_index(const Exps& e) {
  std::size_t d = static_cast<std::size_t>(degree(e));
  std::size_t r = static_cast<std::size_t>(e[1] + e[2]);
  return d * (d + 1) * (d + 2) / 6 + r * (r + 1) / 2 + static_cast<std::size_t>(e[2]);
}

const Exps& mono_at(std::size_t index) { return mono_table()[index]; }

std::size_t mono_count(int max_degree) {
  std::size_t d = static_cast<std::size_t>(max_degree + 1);
  return d * (d + 1) * (d + 2) / 6;
}

TruncSeries::TruncSeries(int N) : N_(N) {
  check_degree(N);
  c_.resize(mono_count(N));
}

TruncSeries TruncSeries::constant(const Scalar& c, int N) {
  TruncSeries s(N);
  s.c_[0] = c;
  return s;
}

TruncSeries TruncSeries::variable(int k, int N) {
  TruncSeries s(N);
  if (N >= 1) s.set(unit_exps(k), Scalar(1));
  return s;
}

TruncSeries TruncSeries::monomial(const Exps& e, const Scalar& c, int N) {
  TruncSeries s(N);
  s.set(e, c);
  return s;
}

TruncSeries TruncSeries::from_terms(const std::vector<std::pair<Exps, Scalar>>& terms, int N) {
  TruncSeries s(N);
  for (const auto& [e, c] : terms) s.add_to(e, c);
  return s;
}

int TruncSeries::val() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return degree(mono_at(i));
  return N_ + 1;
}

const Scalar& TruncSeries::coeff(const Exps& e) const {
  if (e[0] < 0 || e[1] < 0 || e[2] < 0 || degree(e) > N_) return zero_scalar();
  return c_[mono_index(e)];
}

void TruncSeries::set(const Exps& e, Scalar c) {
  if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw invariant_error("negative exponent");
  if (degree(e) > N_) return;
  c_[mono_index(e)] = std::move(c);
}

void TruncSeries::add_to(const Exps& e, const Scalar& c) {
  if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw invariant_error("negative exponent");
  if (degree(e) > N_ || c.is_zero()) return;
  c_[mono_index(e)] += c;
}

void TruncSeries::add_terms(const TruncSeries& o, const Scalar& factor) {
  if (factor.is_zero()) return;
  bool unit = factor.is_one();
  o.for_each([&](const Exps& e, const Scalar& c) { add_to(e, unit ? c : c * factor); });
}

std::vector<std::pair<Exps, Scalar>> TruncSeries::terms() const {
  std::vector<std::pair<Exps, Scalar>> out;
  for_each([&](const Exps& e, const Scalar& c) { out.emplace_back(e, c); });
  return out;
}

TruncSeries TruncSeries::truncated(int N) const {
  TruncSeries s(std::min(N, N_));
  for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] = c_[i];
  return s;
}

TruncSeries TruncSeries::jet(int d) const {
  TruncSeries s(N_);
  std::size_t lim = std::min(c_.size(), d < 0 ? 0 : mono_count(d));
  for (std::size_t i = 0; i < lim; ++i) s.c_[i] = c_[i];
  return s;
}

TruncSeries TruncSeries::homogeneous_part(int d) const {
  TruncSeries s(N_);
  if (d < 0 || d > N_) return s;
  for (std::size_t i = mono_count(d - 1); i < mono_count(d); ++i) s.c_[i] = c_[i];
  return s;
}

TruncSeries TruncSeries::derivative(int k) const {
  TruncSeries s(std::max(N_ - 1, 0));
  for_each([&](const Exps& e, const Scalar& c) {
    if (e[k] == 0) return;
    Exps f = e;
    f[k] -= 1;
    s.add_to(f, c * Scalar(e[k]));
  });
  if (N_ == 0) s = TruncSeries(0);
  return s;
}

TruncSeries TruncSeries::restrict_zero(int k) const {
  TruncSeries s(N_);
  for_each([&](const Exps& e, const Scalar& c) {
    if (e[k] == 0) s.set(e, c);
  });
  return s;
}

TruncSeries TruncSeries::mul_monomial(const Exps& e) const {
  TruncSeries s(N_);
  for_each([&](const Exps& f, const Scalar& c) { s.set(f + e, c); });
  return s;
}

TruncSeries TruncSeries::scaled(const Scalar& k) const {
  TruncSeries s(N_);
  if (k.is_zero()) return s;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) s.c_[i] = c_[i] * k;
  return s;
}

Exps TruncSeries::monomial_content() const {
  Exps m{0, 0, 0};
  bool first = true;
  for_each([&](const Exps& e, const Scalar&) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (int k = 0; k < 3; ++k) m[k] = std::min(m[k], e[k]);
    }
  });
  return m;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  if (o.N_ < N_) *this = truncated(o.N_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  if (o.N_ < N_) *this = truncated(o.N_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!o.c_[i].is_zero()) c_[i] -= o.c_[i];
  return *this;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries s = *this;
  for (auto& c : s.c_)
    if (!c.is_zero()) c = -c;
  return s;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return series_mul(a, b); }

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  std::size_t n = std::min(a.c_.size(), b.c_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::string TruncSeries::str() const {
  std::string out;
  for_each([&](const Exps& e, const Scalar& c) {
    std::string cs = c.str();
    bool neg = false;
    bool compound = cs.find(' ') != std::string::npos;
    if (!compound && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    std::string mono = monomial_str(e);
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
  });
  return out.empty() ? "0" : out;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b, int cap) {
  return series_mul_to(a, b, std::min({a.N(), b.N(), cap}));
}

TruncSeries series_mul_to(const TruncSeries& a, const TruncSeries& b, int cap) {
  int N = cap;
  TruncSeries out(N);
  struct Term {
    int deg;
    Exps e;
    const Scalar* c;
  };
  auto gather = [N](const TruncSeries& s) {
    std::vector<Term> t;
    s.for_each([&](const Exps& e, const Scalar& c) {
      if (degree(e) <= N) t.push_back({degree(e), e, &c});
    });
    return t;
  };
  std::vector<Term> ta = gather(a), tb = gather(b);
  if (ta.empty() || tb.empty()) return out;
  int vb = tb.front().deg;
  for (const Term& x : ta) {
    if (x.deg + vb > N) break;
    int lim = N - x.deg;
    for (const Term& y : tb) {
      if (y.deg > lim) break;
      out.add_to(x.e + y.e, *x.c * *y.c);
    }
  }
  return out;
}

TruncSeries series_compose(const TruncSeries& a, const std::array<TruncSeries, 3>& s) {
  int N = a.N();
  int v[3];
  for (int k = 0; k < 3; ++k) {
    if (!s[k].constant_term().is_zero())
      throw invariant_error("composition with a substitution of nonzero constant term");
    N = std::min(N, s[k].N());
  }
  for (int k = 0; k < 3; ++k) v[k] = std::min(s[k].val(), N + 1);
  // Maximum useful exponents.
  int mx[3] = {0, 0, 0};
  a.for_each([&](const Exps& e, const Scalar&) {
    for (int k = 0; k < 3; ++k) mx[k] = std::max(mx[k], e[k]);
  });
  auto powers = [&](int k) {
    std::vector<TruncSeries> p;
    p.push_back(TruncSeries::constant(Scalar(1), N));
    for (int e = 1; e <= mx[k] && (e * v[k] <= N); ++e) p.push_back(series_mul(p.back(), s[k], N));
    return p;
  };
  std::vector<TruncSeries> px = powers(0), py = powers(1), pz = powers(2);
  // Group coefficients by (i, j).
  TruncSeries out(N);
  for (int i = 0; i < static_cast<int>(px.size()); ++i) {
    int cap_i = N - i * v[0];
    TruncSeries bi(std::max(cap_i, 0));
    bool any_i = false;
    for (int j = 0; j < static_cast<int>(py.size()) && j * v[1] <= cap_i; ++j) {
      int cap_ij = cap_i - j * v[1];
      TruncSeries cij(cap_ij);
      bool any = false;
      for (int k = 0; k < static_cast<int>(pz.size()) && k * v[2] <= cap_ij; ++k) {
        const Scalar& c = a.coeff({i, j, k});
        if (c.is_zero()) continue;
        any = true;
        pz[k].for_each([&](const Exps& e, const Scalar& d) {
          if (degree(e) <= cap_ij) cij.add_to(e, c * d);
        });
      }
      if (!any) continue;
      any_i = true;
      if (j == 0)
        bi.add_terms(cij);
      else
        bi.add_terms(series_mul_to(py[j], cij, cap_i));
    }
    if (!any_i) continue;
    if (i == 0)
      out.add_terms(bi);
    else
      out.add_terms(series_mul_to(px[i], bi, N));
  }
  return out;
}

TruncSeries series_invert_unit(const TruncSeries& a) {
  Scalar a0 = a.constant_term();
  if (a0.is_zero()) throw invariant_error("inverse of a non-unit series");
  int N = a.N();
  Scalar inv0 = a0.inv();
  // Degree-by-degree recursion: b_d = -inv0 * sum_{e>=1} a_e b_{d-e}.
  TruncSeries b(N);
  b.set({0, 0, 0}, inv0);
  std::vector<TruncSeries> ah, bh;
  for (int d = 0; d <= N; ++d) ah.push_back(a.homogeneous_part(d));
  bh.push_back(b);
  for (int d = 1; d <= N; ++d) {
    TruncSeries acc(N);
    for (int e = 1; e <= d; ++e) {
      if (ah[e].is_zero() || bh[d - e].is_zero()) continue;
      acc.add_terms(series_mul(ah[e], bh[d - e], d));
    }
    TruncSeries bd = acc.homogeneous_part(d).scaled(-inv0);
    b.add_terms(bd);
    bh.push_back(std::move(bd));
  }
  return b;
}

TruncSeries series_div_monomial(const TruncSeries& a, const Exps& e) {
  int N = a.N() - degree(e);
  if (N < 0) throw undecidable_error("division by " + monomial_str(e) + " exhausts the certified degree");
  TruncSeries out(N);
  a.for_each([&](const Exps& f, const Scalar& c) {
    if (!divides(e, f)) {
      TruncSeries t = TruncSeries::monomial(f, c, degree(f));
      throw invariant_error("term " + t.str() + " not divisible by " + monomial_str(e));
    }
    out.set(f - e, c);
  });
  return out;
}

int agreement_degree(const TruncSeries& a, const TruncSeries& b) {
  int N = std::min(a.N(), b.N());
  TruncSeries d = a.truncated(N) - b.truncated(N);
  return d.val() - 1;
}

TruncSeries compose_in_z(const TruncSeries& a, const TruncSeries& s) {
  TruncSeries zero(s.N());
  return series_compose(a, {zero, zero, s});
}

TruncSeries revert_in_z(const TruncSeries& s) {
  int N = s.N();
  Scalar s1 = s.coeff({0, 0, 1});
  if (s1.is_zero()) throw invariant_error("series is not invertible under composition");
  Scalar inv = s1.inv();
  TruncSeries z = TruncSeries::variable(2, N);
  TruncSeries w = z.scaled(inv);
  for (int it = 0; it <= N; ++it) {
    TruncSeries err = compose_in_z(s, w) - z;
    if (err.is_zero()) break;
    w -= err.scaled(inv);
  }
  return w;
}

}  // namespace germforge
