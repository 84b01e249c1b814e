// Copyright 2026 The ballq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Cyclic fixed-point-free diagonal subgroups of U(n), given by an order m and
// exponents t_j (the generator is diag(eps^{t_1}, ..., eps^{t_n})), and the
// Case I / II / III(a,b) leading-term predictions for the diagonal
// Kaehler-Einstein residual.

#ifndef BALLQ_GROUP_HPP
#define BALLQ_GROUP_HPP

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ballq/error.hpp"
#include "ballq/exactnum.hpp"

namespace ballq {

// a^{-1} mod m; a must be a unit.
inline long long mod_inverse(long long a, long long m) {
  long long r0 = m, r1 = mod_floor(a, m);
  long long s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    s0 = std::exchange(s1, s0 - q * s1);
  }
  if (r0 != 1) throw UsageError("mod_inverse: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
  return mod_floor(s0, m);
}

class GroupSpec;
GroupSpec validate_spec(long long m, const std::vector<long long>& t_raw);

// Normalized group data: n >= 2; for m >= 2 every t_j is a unit mod m,
// 1 = t_1 <= ... <= t_n <= m-1; for m = 1 all t_j = 0. Only validate_spec
// constructs one.
class GroupSpec {
 public:
  int m() const { return m_; }
  int n() const { return static_cast<int>(t_.size()); }
  const std::vector<int>& t() const { return t_; }
  long long t_sum() const { return t_sum_; }
  bool is_trivial() const { return m_ == 1; }

  std::string t_string() const {
    std::string s;
    for (std::size_t j = 0; j < t_.size(); ++j) s += (j ? "," : "") + std::to_string(t_[j]);
    return s;
  }
  std::string to_string() const { return "m=" + std::to_string(m_) + " t=(" + t_string() + ")"; }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
  friend auto operator<=>(const GroupSpec& a, const GroupSpec& b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    if (auto c = a.n() <=> b.n(); c != 0) return c;
    return a.t_ <=> b.t_;
  }

 private:
  friend GroupSpec validate_spec(long long m, const std::vector<long long>& t_raw);
  GroupSpec(int m, std::vector<int> t)
      : m_(m), t_(std::move(t)), t_sum_(std::accumulate(t_.begin(), t_.end(), 0LL)) {}

  int m_;
  std::vector<int> t_;
  long long t_sum_;
};

// Definition-level check: no nonidentity power gamma^k (1 <= k < m) has an
// eigenvalue 1, i.e. m never divides k * t_j.
inline bool is_fixed_point_free(long long m, const std::vector<long long>& t) {
  for (long long k = 1; k < m; ++k)
    for (long long tj : t)
      if ((k * tj) % m == 0) return false;
  return true;
}

// Equivalent shortcut: every t_j is a unit mod m.
inline bool is_fixed_point_free_gcd(long long m, const std::vector<long long>& t) {
  return std::all_of(t.begin(), t.end(), [m](long long tj) { return gcd_ll(tj, m) == 1; });
}

inline GroupSpec validate_spec(long long m, const std::vector<long long>& t_raw) {
  if (m < 1) throw SpecError("m=" + std::to_string(m) + ": group order must be positive");
  if (m > 1'000'000) throw SpecError("m=" + std::to_string(m) + ": group order too large");
  if (t_raw.size() < 2)
    throw SpecError("n=" + std::to_string(t_raw.size()) + ": dimension must be at least 2");
  const auto mi = static_cast<int>(m);
  if (m == 1) return GroupSpec(1, std::vector<int>(t_raw.size(), 0));

  std::vector<long long> t;
  t.reserve(t_raw.size());
  for (std::size_t j = 0; j < t_raw.size(); ++j) {
    const long long r = mod_floor(t_raw[j], m);
    if (r == 0)
      throw SpecError("t_" + std::to_string(j + 1) + "=" + std::to_string(t_raw[j]) + " ≡ 0 mod " +
                      std::to_string(m) + ": not fixed point free");
    if (gcd_ll(r, m) != 1)
      throw SpecError("gcd(" + std::to_string(r) + "," + std::to_string(m) + ")≠1: not fixed point free");
    t.push_back(r);
  }
  const long long u = mod_inverse(*std::min_element(t.begin(), t.end()), m);
  std::vector<int> out;
  out.reserve(t.size());
  for (long long tj : t) out.push_back(static_cast<int>(mod_floor(u * tj, m)));
  std::sort(out.begin(), out.end());
  return GroupSpec(mi, std::move(out));
}

enum class CaseTag { Trivial, I, II, IIIa, IIIb };

inline std::string_view to_string(CaseTag c) {
  switch (c) {
    case CaseTag::Trivial: return "Trivial";
    case CaseTag::I: return "I";
    case CaseTag::II: return "II";
    case CaseTag::IIIa: return "IIIa";
    case CaseTag::IIIb: return "IIIb";
  }
  return "?";
}

// Predicted lowest-order terms of both sides of phi^{n+2} = P Q on the slice,
// and of the residual R = phi^{n+2} - P Q.
struct CasePrediction {
  CaseTag case_tag = CaseTag::Trivial;
  int k = 0;  // smallest j >= 0 with m | (|T| + j)
  int a = 0;  // Case II: #{t_j = 1}; Case III: #{t_j <= k}; 0 otherwise
  int lhs_degree = 0;
  Rational lhs_coeff;
  std::optional<int> pq_degree;  // nullopt encodes +infinity (Case I)
  Rational pq_coeff;
  int residual_degree = 0;
  Rational residual_coeff;

  bool degrees_tie() const { return pq_degree && *pq_degree == lhs_degree; }
};

inline CasePrediction classify_case(const GroupSpec& spec) {
  if (spec.is_trivial()) throw UsageError("classify_case: the trivial group has no mismatch prediction");
  const int m = spec.m();
  const int n = spec.n();
  const auto& t = spec.t();
  const auto bm = BigInt(m);

  CasePrediction p;
  p.k = static_cast<int>(mod_floor(-spec.t_sum(), m));
  const int k = p.k;

  if (k == 0) {
    p.case_tag = CaseTag::I;
    p.lhs_degree = 0;
    p.lhs_coeff = Rational(ipow(bm, n + 2));
    p.pq_degree = std::nullopt;
    p.pq_coeff = 0;
  } else if (k == 1) {
    p.case_tag = CaseTag::II;
    p.a = static_cast<int>(std::count(t.begin(), t.end(), 1));
    p.lhs_degree = n + 2;
    p.lhs_coeff = Rational(ipow(BigInt(n + 1), n + 2) * ipow(bm, n + 2));
    int deg = (m + 1) * (n - p.a + 1);
    BigInt prod = binomial(n + m + 1, m);
    for (int j = p.a; j < n; ++j) {
      deg -= t[j];
      prod *= binomial(m + n + 2 - t[j], m + 1 - t[j]);
    }
    p.pq_degree = deg;
    p.pq_coeff = Rational(ipow(bm, n + 3) * (n + 1) * prod, BigInt(m + 1));
  } else {
    p.a = static_cast<int>(std::count_if(t.begin(), t.end(), [k](int tj) { return tj <= k; }));
    p.case_tag = p.a == n ? CaseTag::IIIb : CaseTag::IIIa;
    p.lhs_degree = k * (n + 2);
    p.lhs_coeff = Rational(ipow(bm, n + 2) * ipow(binomial(n + k, k), n + 2));
    int deg = (n + 1) * k + m - 1;
    BigInt prod = binomial(n + k, k - 1) * binomial(n + k + m, n);
    for (int j = 1; j < p.a; ++j) {
      deg -= t[j];
      prod *= binomial(n + 1 + k - t[j], k - t[j]);
    }
    for (int j = p.a; j < n; ++j) {
      deg += m - t[j];
      prod *= binomial(n + 1 + m + k - t[j], m + k - t[j]);
    }
    p.pq_degree = deg;
    p.pq_coeff = Rational(ipow(bm, n + 3) * prod, BigInt(k));
  }

  if (!p.pq_degree || p.lhs_degree < *p.pq_degree) {
    p.residual_degree = p.lhs_degree;
    p.residual_coeff = p.lhs_coeff;
  } else if (*p.pq_degree < p.lhs_degree) {
    p.residual_degree = *p.pq_degree;
    p.residual_coeff = -p.pq_coeff;
  } else {
    p.residual_degree = p.lhs_degree;
    p.residual_coeff = p.lhs_coeff - p.pq_coeff;
  }
  if (p.residual_coeff.is_zero())
    throw ConsistencyError("predicted residual coefficient vanishes for " + spec.to_string());
  return p;
}

// All normalized specs with m <= max_m, 2 <= n <= max_n, ordered by (m, n, t).
// Distinct normalized exponent vectors generate distinct subgroups of the
// diagonal torus, so each one is listed.
inline std::vector<GroupSpec> enumerate_specs(int max_m, int max_n) {
  if (max_m < 1 || max_n < 2) throw UsageError("enumerate_specs needs max_m >= 1 and max_n >= 2");
  std::vector<GroupSpec> out;
  for (int m = 1; m <= max_m; ++m) {
    std::vector<long long> units;
    for (int u = 1; u < m; ++u)
      if (gcd_ll(u, m) == 1) units.push_back(u);
    for (int n = 2; n <= max_n; ++n) {
      if (m == 1) {
        out.push_back(validate_spec(1, std::vector<long long>(static_cast<std::size_t>(n), 0)));
        continue;
      }
      std::vector<long long> t(static_cast<std::size_t>(n), 1);
      std::function<void(int, std::size_t)> fill = [&](int pos, std::size_t from) {
        if (pos == n) {
          out.push_back(validate_spec(m, t));
          return;
        }
        for (std::size_t i = from; i < units.size(); ++i) {
          t[static_cast<std::size_t>(pos)] = units[i];
          fill(pos + 1, i);
        }
      };
      fill(1, 0);
    }
  }
  return out;
}

}  // namespace ballq

#endif  // BALLQ_GROUP_HPP
