#pragma once

// Independent reference implementations used only by the tests.

#include <map>
#include <vector>

#include <gmpxx.h>

#include "germforge/scalar.hpp"
#include "germforge/series.hpp"

namespace oracle {

using germforge::Exps;
using germforge::Scalar;
using germforge::TruncSeries;
using TermMap = std::map<Exps, Scalar>;

inline TermMap to_map(const TruncSeries& s) {
  TermMap m;
  s.for_each([&](const Exps& e, const Scalar& c) { m[e] = c; });
  return m;
}

// Double loop over all pairs, then discard degrees above N.
inline TermMap naive_mul(const TermMap& a, const TermMap& b, int N) {
  TermMap out;
  for (const auto& [e, c] : a)
    for (const auto& [f, d] : b) {
      Exps g{e[0] + f[0], e[1] + f[1], e[2] + f[2]};
      if (g[0] + g[1] + g[2] > N) continue;
      out[g] += c * d;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// Substitutes every monomial separately by repeated multiplication.
inline TermMap naive_compose(const TermMap& a, const std::array<TermMap, 3>& s, int N) {
  TermMap out;
  for (const auto& [e, c] : a) {
    TermMap term{{Exps{0, 0, 0}, c}};
    for (int k = 0; k < 3; ++k)
      for (int p = 0; p < e[k]; ++p) term = naive_mul(term, s[k], N);
    for (const auto& [f, d] : term) out[f] += d;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

inline bool same(const TermMap& a, const TruncSeries& s) {
  TermMap b = to_map(s);
  if (a.size() != b.size()) return false;
  for (const auto& [e, c] : a) {
    auto it = b.find(e);
    if (it == b.end() || it->second != c) return false;
  }
  return true;
}

// One-variable flow of p(z) d/dz applied to z: sum_n D^n(z)/n!, D(q) = p q'.
// Polynomials as coefficient vectors over Q, truncated at degree N.
inline std::vector<mpq_class> exp_1d(const std::vector<mpq_class>& p, int N) {
  auto deriv = [](const std::vector<mpq_class>& q) {
    std::vector<mpq_class> d(q.size() > 1 ? q.size() - 1 : 1, 0);
    for (std::size_t k = 1; k < q.size(); ++k) d[k - 1] = q[k] * static_cast<long>(k);
    return d;
  };
  auto mul = [N](const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    std::vector<mpq_class> r(N + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (static_cast<int>(i + j) <= N) r[i + j] += a[i] * b[j];
    return r;
  };
  std::vector<mpq_class> term(N + 1, 0), sum(N + 1, 0);
  term[1] = 1;
  sum[1] = 1;
  mpq_class fact = 1;
  for (int n = 1; n <= N; ++n) {
    term = mul(p, deriv(term));
    fact *= n;
    for (int k = 0; k <= N; ++k) sum[k] += term[k] / fact;
  }
  return sum;
}

}  // namespace oracle
