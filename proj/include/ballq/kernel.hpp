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

// The diagonal Kaehler-Einstein identity as an exact power-series equation in
// x = |z_1|^2. Everything is built from the character-weighted sums
//
//   f_{t,p}(x) = sum_{k=0}^{m-1} eps^{-tk} (eps^k - x)^{-p},
//
// whose x^j coefficient is m * C(p+j-1, j) when m | (t+p+j) and 0 otherwise.
// On the slice z = (z_1, 0, ..., 0):
//
//   phi = f_{|T|-(n+1), n+1},   J(phi) = (n+1)^n P Q,
//
// and the residual R = phi^{n+2} - P Q vanishes iff the group is trivial.

#ifndef BALLQ_KERNEL_HPP
#define BALLQ_KERNEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "ballq/error.hpp"
#include "ballq/exactnum.hpp"
#include "ballq/group.hpp"
#include "ballq/series.hpp"

namespace ballq {

inline TruncSeries f_series(int m, long long t, int p, int order) {
  if (m < 1 || p < 1) throw UsageError("f_series needs m >= 1 and p >= 1");
  TruncSeries s(order);
  for (int j = 0; j <= order; ++j)
    if (mod_floor(t + p + j, m) == 0) s.set(j, Rational(BigInt(m) * binomial(p + j - 1, j)));
  return s;
}

namespace detail {

// (1 - x)^{-p} from the geometric series by repeated multiplication.
inline TruncSeries inverse_power_of_one_minus_x(int p, int order) {
  TruncSeries geometric(order);
  for (int j = 0; j <= order; ++j) geometric.set(j, 1);
  return series_pow(geometric, static_cast<unsigned>(p));
}

// sum_k scale_k * g(c_k x) over k = 0..m-1 with c_k = eps^{root_step * k},
// scale_k = eps^{scale_step * k}; every coefficient must land in Q.
inline TruncSeries character_sum(int m, const TruncSeries& g, long long root_step, long long scale_step) {
  CycloSeries acc(g.order(), CycloElem::zero(m));
  for (int k = 0; k < m; ++k) {
    const CycloElem c = power_of_eps(m, root_step * k);
    CycloElem cj = power_of_eps(m, scale_step * k);
    for (int j = 0; j <= g.order(); ++j) {
      if (!g[j].is_zero()) acc.set(j, acc[j] + cj * g[j]);
      cj *= c;
    }
  }
  TruncSeries out(g.order());
  for (int j = 0; j <= g.order(); ++j) out.set(j, acc[j].to_rational());
  return out;
}

}  // namespace detail

// Direct summation of the defining character sum in Q(eps)[[x]]:
// eps^{-tk} (eps^k - x)^{-p} = eps^{-k(t+p)} (1 - eps^{-k} x)^{-p}.
inline TruncSeries f_series_oracle(int m, long long t, int p, int order) {
  if (m < 1 || p < 1) throw UsageError("f_series_oracle needs m >= 1 and p >= 1");
  const TruncSeries g = detail::inverse_power_of_one_minus_x(p, order);
  return detail::character_sum(m, g, -1, -(t + p));
}

// d/dx f_{t,p} = p f_{t,p+1}.
inline bool f_derivative_identity_check(int m, long long t, int p, int order) {
  if (order < 1) throw UsageError("f_derivative_identity_check needs order >= 1");
  return series_derivative(f_series(m, t, p, order)) == scalar_mul(f_series(m, t, p + 1, order - 1), Rational(p));
}

// sum_k eps^{tk} (1 - eps^k x)^{-p} = f_{t-p,p}.
inline bool f_shift_identity_check(int m, long long t, int p, int order) {
  const TruncSeries g = detail::inverse_power_of_one_minus_x(p, order);
  return detail::character_sum(m, g, 1, t) == f_series(m, t - p, p, order);
}

inline TruncSeries phi_diagonal_series(const GroupSpec& spec, int order) {
  return f_series(spec.m(), spec.t_sum() - (spec.n() + 1), spec.n() + 1, order);
}

struct PQSeries {
  TruncSeries P;
  TruncSeries Q;
};

inline PQSeries pq_series(const GroupSpec& spec, int order) {
  const int m = spec.m();
  const int n = spec.n();
  const long long T = spec.t_sum();
  const TruncSeries f_a = f_series(m, T - (n + 2), n + 2, order);
  const TruncSeries f_b = f_series(m, T - (n + 1), n + 2, order);
  const TruncSeries f_c = f_series(m, T - (n + 1), n + 1, order);
  const TruncSeries f_d = f_series(m, T - (n + 1), n + 3, order);
  TruncSeries P = f_a * f_b - scalar_mul(shift_by_x(f_b * f_b - f_c * f_d), Rational(n + 2));
  TruncSeries Q(order);
  Q.set(0, 1);
  for (int j = 1; j < n; ++j) Q = Q * f_series(m, T + spec.t()[static_cast<std::size_t>(j)] - (n + 2), n + 2, order);
  return {std::move(P), std::move(Q)};
}

// R = phi^{n+2} - P Q (left side minus right side of the diagonal identity).
inline TruncSeries residual_series(const GroupSpec& spec, int order) {
  auto [P, Q] = pq_series(spec, order);
  return series_pow(phi_diagonal_series(spec, order), static_cast<unsigned>(spec.n() + 2)) - P * Q;
}

// Bounds both candidate lowest degrees at desk scale; ke_residual doubles it
// once if R still vanishes.
inline int default_order(const GroupSpec& spec) { return (spec.n() + 2) * spec.m() + spec.n() + 4; }

struct ResidualReport {
  GroupSpec spec;
  int order_used = 0;
  std::optional<Term<Rational>> observed;  // nullopt: R is zero up to order_used
  std::optional<CasePrediction> prediction;  // nullopt: trivial group
  bool degree_match = false;
  bool coeff_match = false;

  bool passed() const { return degree_match && coeff_match; }
};

// Computes R, extracts its lowest nonzero term and compares it with
// classify_case. With no order given, default_order is used with one doubling
// retry. For m = 1 the match flags mean "R vanished to the order used".
inline ResidualReport ke_residual(const GroupSpec& spec, std::optional<int> order = std::nullopt) {
  if (order && *order < 0) throw UsageError("order must be nonnegative");
  const bool automatic = !order.has_value();
  int d = automatic ? default_order(spec) : *order;

  if (spec.is_trivial()) {
    auto low = lowest_nonzero_term(residual_series(spec, d));
    const bool zero = !low.has_value();
    return ResidualReport{spec, d, std::move(low), std::nullopt, zero, zero};
  }

  CasePrediction prediction = classify_case(spec);
  if (!automatic && d < prediction.residual_degree)
    throw UsageError("order " + std::to_string(d) + " is below the predicted residual degree " +
                     std::to_string(prediction.residual_degree) + " for " + spec.to_string());

  auto low = lowest_nonzero_term(residual_series(spec, d));
  if (!low && automatic) {
    d *= 2;
    low = lowest_nonzero_term(residual_series(spec, d));
  }
  if (!low)
    throw ConsistencyError("residual vanishes to order " + std::to_string(d) + " for nontrivial group " +
                           spec.to_string());

  const bool degree_match = low->degree == prediction.residual_degree;
  const bool coeff_match = degree_match && low->coeff == prediction.residual_coeff;
  return ResidualReport{spec, d, std::move(low), std::move(prediction), degree_match, coeff_match};
}

namespace detail {
inline void require_in_disk(const Rational& x) {
  if (!(abs(x) < Rational(1))) throw DomainError("x = " + x.to_string() + " is outside the open unit disk");
}
}  // namespace detail

// Closed form of det A(gamma^{k_0}, ..., gamma^{k_n}) at z = (z_1, 0, ..., 0),
// x = |z_1|^2:
//   eps^{k_1 + sum_{j>=2} k_j t_j} (1 - (n+2) eps^{k_0} x
//                                   + (n+2) eps^{k_1} x (1 - eps^{k_0} x) / (1 - eps^{k_1} x)).
inline CycloElem detA_slice(const GroupSpec& spec, const std::vector<int>& k_indices, const Rational& x) {
  const int m = spec.m();
  const int n = spec.n();
  if (static_cast<int>(k_indices.size()) != n + 1)
    throw UsageError("detA_slice needs n+1 = " + std::to_string(n + 1) + " group indices");
  for (int k : k_indices)
    if (k < 0 || k >= m) throw UsageError("group index " + std::to_string(k) + " outside [0, m-1]");
  detail::require_in_disk(x);

  long long prefactor = k_indices[1];
  for (int j = 2; j <= n; ++j) prefactor += static_cast<long long>(k_indices[static_cast<std::size_t>(j)]) * spec.t()[static_cast<std::size_t>(j - 1)];

  const CycloElem one = CycloElem::from_rational(m, 1);
  const CycloElem e0x = power_of_eps(m, k_indices[0]) * x;
  const CycloElem e1x = power_of_eps(m, k_indices[1]) * x;
  const Rational w = n + 2;
  const CycloElem bracket = one - w * e0x + w * e1x * (one - e0x) / (one - e1x);
  return power_of_eps(m, prefactor) * bracket;
}

// Exact value of f_{t,p}(x) for rational x in the unit disk, summed in Q(eps).
inline Rational f_value(int m, long long t, int p, const Rational& x) {
  if (m < 1 || p < 1) throw UsageError("f_value needs m >= 1 and p >= 1");
  detail::require_in_disk(x);
  CycloElem acc = CycloElem::zero(m);
  for (int k = 0; k < m; ++k) {
    const CycloElem base = (power_of_eps(m, k) - CycloElem::from_rational(m, x)).inverse();
    CycloElem term = power_of_eps(m, -t * k);
    for (int i = 0; i < p; ++i) term *= base;
    acc += term;
  }
  return acc.to_rational();
}

// Exact R(x) with no truncation, from closed-form values of the f_{t,p}.
inline Rational residual_value(const GroupSpec& spec, const Rational& x) {
  const int m = spec.m();
  const int n = spec.n();
  const long long T = spec.t_sum();
  const Rational f_a = f_value(m, T - (n + 2), n + 2, x);
  const Rational f_b = f_value(m, T - (n + 1), n + 2, x);
  const Rational f_c = f_value(m, T - (n + 1), n + 1, x);
  const Rational f_d = f_value(m, T - (n + 1), n + 3, x);
  const Rational P = f_a * f_b - Rational(n + 2) * x * (f_b * f_b - f_c * f_d);
  Rational Q = 1;
  for (int j = 1; j < n; ++j) Q *= f_value(m, T + spec.t()[static_cast<std::size_t>(j)] - (n + 2), n + 2, x);
  return pow(f_c, static_cast<unsigned>(n + 2)) - P * Q;
}

}  // namespace ballq

#endif  // BALLQ_KERNEL_HPP
