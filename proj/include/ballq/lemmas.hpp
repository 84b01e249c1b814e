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

// Exact verifiers for the combinatorial inequalities behind the
// non-Einstein argument, plus finite scans over their hypotheses. A scan is a
// confidence check on a bounded box of parameters, not a proof.

#ifndef BALLQ_LEMMAS_HPP
#define BALLQ_LEMMAS_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ballq/error.hpp"
#include "ballq/exactnum.hpp"
#include "ballq/group.hpp"

namespace ballq {

enum class LemmaId { Comb1, Rearrange, Fmono, Main, MainSimplified, Elementary, Lmono, L2ClosedForm };

inline std::string_view to_string(LemmaId id) {
  switch (id) {
    case LemmaId::Comb1: return "Comb1";
    case LemmaId::Rearrange: return "Rearrange";
    case LemmaId::Fmono: return "Fmono";
    case LemmaId::Main: return "Main";
    case LemmaId::MainSimplified: return "MainSimplified";
    case LemmaId::Elementary: return "Elementary";
    case LemmaId::Lmono: return "Lmono";
    case LemmaId::L2ClosedForm: return "L2ClosedForm";
  }
  return "?";
}

struct LemmaParam {
  std::string name;
  std::vector<long long> values;  // one entry for scalars
  bool is_vector = false;

  friend bool operator==(const LemmaParam&, const LemmaParam&) = default;
};

struct LemmaCheckResult {
  LemmaId lemma_id = LemmaId::Comb1;
  std::vector<LemmaParam> params;
  Rational lhs;
  Rational rhs;
  bool holds = false;

  // "m=3 n=2 a=2 t=(1,1)"
  std::string params_string() const {
    std::string out;
    for (const auto& p : params) {
      if (!out.empty()) out += ' ';
      out += p.name + '=';
      if (p.is_vector) out += '(';
      for (std::size_t i = 0; i < p.values.size(); ++i) out += (i ? "," : "") + std::to_string(p.values[i]);
      if (p.is_vector) out += ')';
    }
    return out;
  }
};

namespace detail {

inline LemmaParam scalar(std::string name, long long v) { return {std::move(name), {v}, false}; }
inline LemmaParam vec(std::string name, std::vector<long long> v) { return {std::move(name), std::move(v), true}; }

inline long long sum(const std::vector<long long>& v) { return std::accumulate(v.begin(), v.end(), 0LL); }

inline std::string show(const std::vector<long long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// m C(n+k+m, n) prod_j C(n+1+k-lambda_j, k-lambda_j)
inline BigInt main_rhs(long long k, long long m, long long n, const std::vector<long long>& lambda) {
  BigInt rhs = BigInt(m) * binomial(n + k + m, n);
  for (long long l : lambda) rhs *= binomial(n + 1 + k - l, k - l);
  return rhs;
}

// Visits every vector in [lo, hi]^len with entry sum in [sum_lo, sum_hi].
inline void for_each_box_vector(int len, long long lo, long long hi, long long sum_lo, long long sum_hi,
                                const std::function<void(const std::vector<long long>&)>& visit) {
  std::vector<long long> v(static_cast<std::size_t>(len), lo);
  std::function<void(int, long long)> rec = [&](int pos, long long partial) {
    const long long rest = len - pos;
    if (partial + rest * lo > sum_hi || partial + rest * hi < sum_lo) return;
    if (pos == len) {
      visit(v);
      return;
    }
    for (long long x = lo; x <= hi; ++x) {
      v[static_cast<std::size_t>(pos)] = x;
      rec(pos + 1, partial + x);
    }
  };
  rec(0, 0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Case II coefficient inequality:
//   (n+1)^{n+1} (m+1) > m C(n+m+1, m) prod_{j>a} C(m+n+2-t_j, m+1-t_j)
// under 1 = t_1 = ... = t_a < t_{a+1} <= ... <= t_n <= m-1 and the degree
// tie n+2 = (m+1)(n-a+1) - sum_{j>a} t_j.

struct Comb1Params {
  long long m = 0;
  long long n = 0;
  long long a = 0;
  std::vector<long long> t;

  friend bool operator==(const Comb1Params&, const Comb1Params&) = default;
};

inline bool comb1_admissible(long long m, long long n, long long a, const std::vector<long long>& t) {
  if (m < 2 || n < 2 || a < 1 || a > n || static_cast<long long>(t.size()) != n) return false;
  for (long long j = 0; j < n; ++j) {
    const long long tj = t[static_cast<std::size_t>(j)];
    if (j < a ? tj != 1 : (tj <= 1 || tj > m - 1)) return false;
    if (j > 0 && tj < t[static_cast<std::size_t>(j - 1)]) return false;
  }
  long long tail = 0;
  for (long long j = a; j < n; ++j) tail += t[static_cast<std::size_t>(j)];
  return n + 2 == (m + 1) * (n - a + 1) - tail;
}

inline LemmaCheckResult check_comb1(long long m, long long n, long long a, const std::vector<long long>& t) {
  if (!comb1_admissible(m, n, a, t))
    throw UsageError("comb1: (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ", a=" + std::to_string(a) +
                     ", t=" + detail::show(t) + ") violates the hypotheses or n+2 = (m+1)(n-a+1) - sum_{j>a} t_j");
  BigInt rhs = BigInt(m) * binomial(n + m + 1, m);
  for (long long j = a; j < n; ++j) {
    const long long tj = t[static_cast<std::size_t>(j)];
    rhs *= binomial(m + n + 2 - tj, m + 1 - tj);
  }
  const BigInt lhs = ipow(BigInt(n + 1), static_cast<unsigned>(n + 1)) * (m + 1);
  return {LemmaId::Comb1,
          {detail::scalar("m", m), detail::scalar("n", n), detail::scalar("a", a), detail::vec("t", t)},
          Rational(lhs), Rational(rhs), lhs > rhs};
}

inline std::vector<Comb1Params> enumerate_comb1(long long max_m, long long max_n) {
  std::vector<Comb1Params> out;
  for (long long m = 2; m <= max_m; ++m)
    for (long long n = 2; n <= max_n; ++n)
      for (long long a = 1; a <= n; ++a) {
        // tail t_{a+1..n} nondecreasing in [2, m-1] with a fixed sum
        const long long len = n - a;
        const long long target = (m + 1) * (n - a + 1) - (n + 2);
        std::vector<long long> t(static_cast<std::size_t>(n), 1);
        std::function<void(long long, long long, long long)> rec = [&](long long pos, long long from, long long partial) {
          const long long rest = n - pos;
          if (partial + rest * from > target || partial + rest * (m - 1) < target) return;
          if (pos == n) {
            if (partial == target && comb1_admissible(m, n, a, t)) out.push_back({m, n, a, t});
            return;
          }
          for (long long v = from; v <= m - 1; ++v) {
            t[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, v, partial + v);
          }
        };
        if (len == 0) {
          if (target == 0 && comb1_admissible(m, n, a, t)) out.push_back({m, n, a, t});
        } else if (m >= 3) {
          rec(a, 2, 0);
        }
      }
  return out;
}

// ---------------------------------------------------------------------------
// Rearrangement step: for s+1 < t <= k,
//   C(n+1+k-s, k-s) C(n+1+k-t, k-t) < C(n+k-s, k-s-1) C(n+2+k-t, k-t+1).

inline LemmaCheckResult check_rearrangement(long long n, long long k, long long s, long long t) {
  if (n < 1 || !(s + 1 < t) || t > k)
    throw UsageError("rearrangement needs n >= 1 and s+1 < t <= k (got n=" + std::to_string(n) +
                     ", k=" + std::to_string(k) + ", s=" + std::to_string(s) + ", t=" + std::to_string(t) + ")");
  const BigInt lhs = binomial(n + 1 + k - s, k - s) * binomial(n + 1 + k - t, k - t);
  const BigInt rhs = binomial(n + k - s, k - s - 1) * binomial(n + 2 + k - t, k - t + 1);
  return {LemmaId::Rearrange,
          {detail::scalar("n", n), detail::scalar("k", k), detail::scalar("s", s), detail::scalar("t", t)},
          Rational(lhs), Rational(rhs), lhs < rhs};
}

// ---------------------------------------------------------------------------
// F(n, k, lambda) = m C(n+k+m, n) prod_j C(n+1+k-lambda_j, k-lambda_j) with
// m = k + sum lambda; F does not increase when a positive lambda_j drops by 1.

inline Rational F_value(long long n, long long k, const std::vector<long long>& lambda) {
  if (n < 1 || k < 1 || static_cast<long long>(lambda.size()) != n)
    throw UsageError("F_value needs n, k >= 1 and lambda of length n");
  for (long long l : lambda)
    if (l < 0 || l > k) throw UsageError("F_value needs 0 <= lambda_j <= k, got " + detail::show(lambda));
  return Rational(detail::main_rhs(k, k + detail::sum(lambda), n, lambda));
}

// j1 is 1-based.
inline LemmaCheckResult check_F_monotone(long long n, long long k, const std::vector<long long>& lambda, long long j1) {
  if (j1 < 1 || j1 > static_cast<long long>(lambda.size()))
    throw UsageError("check_F_monotone: index j1 out of range");
  if (lambda[static_cast<std::size_t>(j1 - 1)] < 1)
    throw UsageError("check_F_monotone needs lambda_{j1} >= 1, got " + detail::show(lambda));
  std::vector<long long> lowered = lambda;
  --lowered[static_cast<std::size_t>(j1 - 1)];
  const Rational lhs = F_value(n, k, lambda);
  const Rational rhs = F_value(n, k, lowered);
  return {LemmaId::Fmono,
          {detail::scalar("n", n), detail::scalar("k", k), detail::vec("lambda", lambda), detail::scalar("j1", j1)},
          lhs, rhs, lhs <= rhs};
}

// ---------------------------------------------------------------------------
// Main inequality: for 1 <= k <= m-1, n >= 2, lambda_j <= k, sum lambda = m-k,
//   k C(n+k, k)^{n+2} > m C(n+k+m, n) prod_j C(n+1+k-lambda_j, k-lambda_j).

inline bool main_admissible(long long k, long long m, long long n, const std::vector<long long>& lambda) {
  if (k < 1 || k > m - 1 || n < 2 || static_cast<long long>(lambda.size()) != n) return false;
  if (std::any_of(lambda.begin(), lambda.end(), [k](long long l) { return l > k; })) return false;
  return detail::sum(lambda) == m - k;
}

inline LemmaCheckResult check_main(long long k, long long m, long long n, const std::vector<long long>& lambda) {
  if (!main_admissible(k, m, n, lambda))
    throw UsageError("main: (k=" + std::to_string(k) + ", m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                     ", lambda=" + detail::show(lambda) + ") violates 1 <= k < m, n >= 2, lambda_j <= k, sum = m-k");
  const BigInt lhs = BigInt(k) * ipow(binomial(n + k, k), static_cast<unsigned>(n + 2));
  const BigInt rhs = detail::main_rhs(k, m, n, lambda);
  return {LemmaId::Main,
          {detail::scalar("k", k), detail::scalar("m", m), detail::scalar("n", n), detail::vec("lambda", lambda)},
          Rational(lhs), Rational(rhs), lhs > rhs};
}

// Step 1 move: raise the first negative entry by one and lower the first
// positive entry by one. The sum is unchanged and the right side does not
// decrease. Returns nullopt when lambda is already nonnegative.
inline std::optional<std::vector<long long>> rearrangement_move(std::vector<long long> lambda) {
  auto neg = std::find_if(lambda.begin(), lambda.end(), [](long long l) { return l < 0; });
  if (neg == lambda.end()) return std::nullopt;
  auto pos = std::find_if(lambda.begin(), lambda.end(), [](long long l) { return l > 0; });
  if (pos == lambda.end()) throw UsageError("rearrangement_move: no positive entry to borrow from");
  ++*neg;
  --*pos;
  return lambda;
}

// Step 2 move: lower one positive entry, never the first once it is the
// only positive one, until lambda = e_1. Requires lambda >= 0 with
// lambda_1 >= 1. Returns nullopt at e_1.
inline std::optional<std::vector<long long>> f_monotone_move(std::vector<long long> lambda) {
  if (lambda.empty() || lambda[0] < 1) throw UsageError("f_monotone_move needs lambda_1 >= 1");
  for (std::size_t j = lambda.size(); j-- > 1;)
    if (lambda[j] > 0) {
      --lambda[j];
      return lambda;
    }
  if (lambda[0] > 1) {
    --lambda[0];
    return lambda;
  }
  return std::nullopt;
}

// Main inequality specialized to lambda = e_1, m = k+1:
//   k C(n+k, k)^{n+2} > (k+1) C(n+2k+1, n) C(n+k, k-1) C(n+k+1, k)^{n-1}.
inline LemmaCheckResult check_main_simplified(long long n, long long k) {
  if (n < 2 || k < 1) throw UsageError("main_simplified needs n >= 2 and k >= 1");
  const BigInt lhs = BigInt(k) * ipow(binomial(n + k, k), static_cast<unsigned>(n + 2));
  const BigInt rhs = BigInt(k + 1) * binomial(n + 2 * k + 1, n) * binomial(n + k, k - 1) *
                     ipow(binomial(n + k + 1, k), static_cast<unsigned>(n - 1));
  return {LemmaId::MainSimplified, {detail::scalar("n", n), detail::scalar("k", k)}, Rational(lhs), Rational(rhs),
          lhs > rhs};
}

// ---------------------------------------------------------------------------
// C(n+k, k-1) < (n+1)^{k-1}, claimed for n, k >= 3. For k <= 2 it is false,
// which is why the hypothesis is sharp; evaluate_elementary exposes that.

inline LemmaCheckResult evaluate_elementary(long long n, long long k) {
  if (n < 0 || k < 1) throw UsageError("elementary inequality needs n >= 0 and k >= 1");
  const BigInt lhs = binomial(n + k, k - 1);
  const BigInt rhs = ipow(BigInt(n + 1), static_cast<unsigned>(k - 1));
  return {LemmaId::Elementary, {detail::scalar("n", n), detail::scalar("k", k)}, Rational(lhs), Rational(rhs),
          lhs < rhs};
}

inline LemmaCheckResult check_elementary(long long n, long long k) {
  if (n < 3 || k < 3)
    throw UsageError("elementary inequality is only claimed for n, k >= 3 (got n=" + std::to_string(n) +
                     ", k=" + std::to_string(k) + ")");
  return evaluate_elementary(n, k);
}

// ---------------------------------------------------------------------------
// L(n,k) = (n+1)^n / ((k+1)(n+k+1)^{n-1}) * (n+k)!^2 (2k+1)! / (n! k!^2 (n+2k+1)!)

inline BigInt factorial(long long v) {
  BigInt f = 1;
  for (long long i = 2; i <= v; ++i) f *= i;
  return f;
}

inline Rational L_value(long long n, long long k) {
  if (n < 0 || k < 0) throw UsageError("L_value needs n, k >= 0");
  Rational v = Rational(ipow(BigInt(n + 1), static_cast<unsigned>(n)), BigInt(k + 1));
  const BigInt base = n + k + 1;
  if (n >= 1)
    v /= Rational(ipow(base, static_cast<unsigned>(n - 1)));
  else
    v *= Rational(base);
  const BigInt fk = factorial(k);
  v *= Rational(ipow(factorial(n + k), 2) * factorial(2 * k + 1), factorial(n) * fk * fk * factorial(n + 2 * k + 1));
  return v;
}

// L(n+1, k) / L(n, k)
inline Rational L_ratio(long long n, long long k) { return L_value(n + 1, k) / L_value(n, k); }

inline LemmaCheckResult check_L_monotone(long long n, long long k) {
  const Rational lhs = L_value(n, k);
  const Rational rhs = L_value(n + 1, k);
  return {LemmaId::Lmono, {detail::scalar("n", n), detail::scalar("k", k)}, lhs, rhs, lhs <= rhs};
}

// L(2,k) = 9(k^2+4k+4) / (4(2k^2+9k+9)) and the value exceeds 1.
inline LemmaCheckResult check_L2_closed_form(long long k) {
  if (k < 1) throw UsageError("L2 closed form is checked for k >= 1");
  const Rational lhs = L_value(2, k);
  const Rational rhs = Rational(BigInt(9 * (k * k + 4 * k + 4)), BigInt(4 * (2 * k * k + 9 * k + 9)));
  return {LemmaId::L2ClosedForm, {detail::scalar("k", k)}, lhs, rhs, lhs == rhs && rhs > Rational(1)};
}

// ---------------------------------------------------------------------------
// The inequality instance that decides a degree tie between the two sides of
// the diagonal identity: Comb1 for Case II, Main for Case III (with
// lambda_j = t_j for t_j <= k and t_j - m otherwise). Its lhs/rhs ratio equals
// the ratio of the predicted leading coefficients. nullopt without a tie.
inline std::optional<LemmaCheckResult> lemma_instance(const GroupSpec& spec, const CasePrediction& p) {
  if (!p.degrees_tie()) return std::nullopt;
  std::vector<long long> t(spec.t().begin(), spec.t().end());
  if (p.case_tag == CaseTag::II) return check_comb1(spec.m(), spec.n(), p.a, t);
  if (p.case_tag == CaseTag::IIIa || p.case_tag == CaseTag::IIIb) {
    for (auto& tj : t)
      if (tj > p.k) tj -= spec.m();
    return check_main(p.k, spec.m(), spec.n(), t);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite scans.

struct LemmaBounds {
  int comb1_max_m = 12;
  int comb1_max_n = 6;
  int rearrange_max = 12;  // n, k, and |s|, |t| for negative entries
  int fmono_max_n = 4;
  int fmono_max_k = 5;
  int fmono_max_sum = 6;
  int main_max_m = 10;
  int main_max_n = 4;
  int main_min_lambda = -3;
  int simplified_max_n = 6;
  int simplified_max_k = 10;
  int elementary_max = 20;
  int lmono_max_n = 8;
  int lmono_max_k = 12;
};

struct LemmaSuiteResult {
  std::string name;
  std::string bounds;  // human-readable scan box
  std::size_t checked = 0;
  std::vector<LemmaCheckResult> results = {};
  std::vector<LemmaCheckResult> counterexamples = {};
  std::vector<std::string> notes = {};

  bool passed() const { return counterexamples.empty(); }
};

namespace detail {
inline void record(LemmaSuiteResult& suite, LemmaCheckResult r) {
  ++suite.checked;
  if (!r.holds) suite.counterexamples.push_back(r);
  suite.results.push_back(std::move(r));
}
}  // namespace detail

inline LemmaSuiteResult scan_comb1(int max_m, int max_n) {
  LemmaSuiteResult s{"comb1", "2<=m<=" + std::to_string(max_m) + ", 2<=n<=" + std::to_string(max_n)};
  for (const auto& p : enumerate_comb1(max_m, max_n)) detail::record(s, check_comb1(p.m, p.n, p.a, p.t));
  return s;
}

inline LemmaSuiteResult scan_rearrangement(int max) {
  LemmaSuiteResult s{"rearrange", "1<=n,k<=" + std::to_string(max) + ", -" + std::to_string(max) +
                                      "<=s, s+1<t<=k"};
  for (long long n = 1; n <= max; ++n)
    for (long long k = 1; k <= max; ++k)
      for (long long t = -max; t <= k; ++t)
        for (long long sv = -max; sv + 1 < t; ++sv) detail::record(s, check_rearrangement(n, k, sv, t));
  return s;
}

inline LemmaSuiteResult scan_F_monotone(int max_n, int max_k, int max_sum) {
  LemmaSuiteResult s{"fmono", "1<=n<=" + std::to_string(max_n) + ", 1<=k<=" + std::to_string(max_k) +
                                  ", 0<=lambda_j<=k, sum lambda<=" + std::to_string(max_sum)};
  for (long long n = 1; n <= max_n; ++n)
    for (long long k = 1; k <= max_k; ++k)
      detail::for_each_box_vector(static_cast<int>(n), 0, k, 1, max_sum, [&](const std::vector<long long>& lambda) {
        for (long long j1 = 1; j1 <= n; ++j1)
          if (lambda[static_cast<std::size_t>(j1 - 1)] >= 1) detail::record(s, check_F_monotone(n, k, lambda, j1));
      });
  return s;
}

inline LemmaSuiteResult scan_main(int max_m, int max_n, int min_lambda) {
  LemmaSuiteResult s{"main", "2<=m<=" + std::to_string(max_m) + ", 2<=n<=" + std::to_string(max_n) +
                                 ", 1<=k<m, " + std::to_string(min_lambda) + "<=lambda_j<=k, sum lambda=m-k"};
  for (long long m = 2; m <= max_m; ++m)
    for (long long n = 2; n <= max_n; ++n)
      for (long long k = 1; k < m; ++k)
        detail::for_each_box_vector(static_cast<int>(n), min_lambda, k, m - k, m - k,
                                    [&](const std::vector<long long>& lambda) {
                                      detail::record(s, check_main(k, m, n, lambda));
                                    });
  return s;
}

inline LemmaSuiteResult scan_main_simplified(int max_n, int max_k) {
  LemmaSuiteResult s{"simplified", "2<=n<=" + std::to_string(max_n) + ", 1<=k<=" + std::to_string(max_k)};
  for (long long n = 2; n <= max_n; ++n)
    for (long long k = 1; k <= max_k; ++k) detail::record(s, check_main_simplified(n, k));
  return s;
}

inline LemmaSuiteResult scan_elementary(int max) {
  LemmaSuiteResult s{"elementary", "3<=n,k<=" + std::to_string(max)};
  for (long long n = 3; n <= max; ++n)
    for (long long k = 3; k <= max; ++k) detail::record(s, check_elementary(n, k));
  std::size_t outside = 0;
  for (long long n = 3; n <= max; ++n)
    for (long long k = 1; k <= 2; ++k)
      if (!evaluate_elementary(n, k).holds) ++outside;
  s.notes.push_back("k<=2 lies outside the hypothesis n,k>=3; the inequality fails at " + std::to_string(outside) +
                    " such points (3<=n<=" + std::to_string(max) + "), excluded by hypothesis");
  return s;
}

inline LemmaSuiteResult scan_L_monotone(int max_n, int max_k) {
  LemmaSuiteResult s{"lmono", "0<=n<=" + std::to_string(max_n) + ", 0<=k<=" + std::to_string(max_k) +
                                  "; closed form of L(2,k) for 1<=k<=" + std::to_string(max_k)};
  for (long long n = 0; n <= max_n; ++n)
    for (long long k = 0; k <= max_k; ++k) detail::record(s, check_L_monotone(n, k));
  for (long long k = 1; k <= max_k; ++k) detail::record(s, check_L2_closed_form(k));
  return s;
}

inline const std::vector<std::string>& lemma_suite_names() {
  static const std::vector<std::string> names{"comb1", "rearrange", "fmono", "main", "simplified", "elementary", "lmono"};
  return names;
}

inline LemmaSuiteResult run_lemma_suite(std::string_view name, const LemmaBounds& b = {}) {
  if (name == "comb1") return scan_comb1(b.comb1_max_m, b.comb1_max_n);
  if (name == "rearrange") return scan_rearrangement(b.rearrange_max);
  if (name == "fmono") return scan_F_monotone(b.fmono_max_n, b.fmono_max_k, b.fmono_max_sum);
  if (name == "main") return scan_main(b.main_max_m, b.main_max_n, b.main_min_lambda);
  if (name == "simplified") return scan_main_simplified(b.simplified_max_n, b.simplified_max_k);
  if (name == "elementary") return scan_elementary(b.elementary_max);
  if (name == "lmono") return scan_L_monotone(b.lmono_max_n, b.lmono_max_k);
  throw UsageError("unknown lemma suite '" + std::string(name) + "'");
}

}  // namespace ballq

#endif  // BALLQ_LEMMAS_HPP
