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

#ifndef BALLQ_SERIES_HPP
#define BALLQ_SERIES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ballq/error.hpp"
#include "ballq/exactnum.hpp"

namespace ballq {

inline Rational one_like(const Rational&) { return 1; }
inline CycloElem one_like(const CycloElem& z) { return CycloElem::from_rational(z.conductor(), 1); }

template <class C>
struct Term {
  int degree = 0;
  C coeff;
};

// Dense univariate power series sum_{j=0}^{D} c_j x^j, truncated at the
// inclusive order D. Arithmetic never produces terms above D; operands must
// agree on D.
template <class C>
class BasicSeries {
 public:
  explicit BasicSeries(int order, C zero = C()) : zero_(std::move(zero)) {
    if (order < 0) throw UsageError("series order must be nonnegative");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, zero_);
  }

  // Pads with zero or drops terms above `order`.
  static BasicSeries from_coeffs(int order, std::vector<C> coeffs, C zero = C()) {
    BasicSeries s(order, std::move(zero));
    for (std::size_t j = 0; j < coeffs.size() && j < s.coeffs_.size(); ++j) s.coeffs_[j] = std::move(coeffs[j]);
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const C> coeffs() const { return coeffs_; }
  const C& zero() const { return zero_; }

  const C& operator[](int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
  void set(int j, C value) { coeffs_.at(static_cast<std::size_t>(j)) = std::move(value); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend bool operator==(const BasicSeries& a, const BasicSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  C zero_;
  std::vector<C> coeffs_;
};

using TruncSeries = BasicSeries<Rational>;
using CycloSeries = BasicSeries<CycloElem>;

namespace detail {
template <class C>
void require_same_order(const BasicSeries<C>& a, const BasicSeries<C>& b, const char* op) {
  if (a.order() != b.order())
    throw UsageError(std::string(op) + ": order mismatch (" + std::to_string(a.order()) + " vs " +
                     std::to_string(b.order()) + ")");
}
}  // namespace detail

template <class C>
BasicSeries<C> series_add(const BasicSeries<C>& a, const BasicSeries<C>& b) {
  detail::require_same_order(a, b, "series_add");
  BasicSeries<C> out = a;
  for (int j = 0; j <= a.order(); ++j) out.set(j, a[j] + b[j]);
  return out;
}

template <class C>
BasicSeries<C> series_sub(const BasicSeries<C>& a, const BasicSeries<C>& b) {
  detail::require_same_order(a, b, "series_sub");
  BasicSeries<C> out = a;
  for (int j = 0; j <= a.order(); ++j) out.set(j, a[j] - b[j]);
  return out;
}

template <class C>
BasicSeries<C> series_mul(const BasicSeries<C>& a, const BasicSeries<C>& b) {
  detail::require_same_order(a, b, "series_mul");
  const int d = a.order();
  std::vector<C> acc(static_cast<std::size_t>(d) + 1, a.zero());
  for (int i = 0; i <= d; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= d; ++j) {
      if (b[j].is_zero()) continue;
      acc[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
  }
  return BasicSeries<C>::from_coeffs(d, std::move(acc), a.zero());
}

// Repeated squaring; every intermediate product is truncated at the order.
template <class C>
BasicSeries<C> series_pow(BasicSeries<C> base, unsigned exponent) {
  BasicSeries<C> result(base.order(), base.zero());
  result.set(0, one_like(base.zero()));
  while (exponent != 0) {
    if (exponent & 1u) result = series_mul(result, base);
    exponent >>= 1;
    if (exponent != 0) base = series_mul(base, base);
  }
  return result;
}

template <class C, class S>
BasicSeries<C> scalar_mul(const BasicSeries<C>& s, const S& scalar) {
  BasicSeries<C> out = s;
  for (int j = 0; j <= s.order(); ++j) out.set(j, s[j] * scalar);
  return out;
}

// Multiplication by x; the top coefficient falls off.
template <class C>
BasicSeries<C> shift_by_x(const BasicSeries<C>& s) {
  BasicSeries<C> out(s.order(), s.zero());
  for (int j = 1; j <= s.order(); ++j) out.set(j, s[j - 1]);
  return out;
}

template <class C>
BasicSeries<C> series_derivative(const BasicSeries<C>& s) {
  if (s.order() < 1) throw UsageError("series_derivative needs order >= 1");
  BasicSeries<C> out(s.order() - 1, s.zero());
  for (int j = 1; j <= s.order(); ++j) out.set(j - 1, s[j] * Rational(j));
  return out;
}

// Drops every term above `order` (which must not exceed the current order).
template <class C>
BasicSeries<C> truncate(const BasicSeries<C>& s, int order) {
  if (order > s.order()) throw UsageError("truncate cannot raise the order");
  std::vector<C> c(s.coeffs().begin(), s.coeffs().begin() + order + 1);
  return BasicSeries<C>::from_coeffs(order, std::move(c), s.zero());
}

// Smallest degree with a nonzero coefficient; nullopt when the series is
// identically zero up to its order.
template <class C>
std::optional<Term<C>> lowest_nonzero_term(const BasicSeries<C>& s) {
  for (int j = 0; j <= s.order(); ++j)
    if (!s[j].is_zero()) return Term<C>{j, s[j]};
  return std::nullopt;
}

// Exact value of the truncated polynomial at x.
inline Rational evaluate(const TruncSeries& s, const Rational& x) {
  Rational acc;
  for (int j = s.order(); j >= 0; --j) acc = acc * x + s[j];
  return acc;
}

template <class C>
BasicSeries<C> operator+(const BasicSeries<C>& a, const BasicSeries<C>& b) { return series_add(a, b); }
template <class C>
BasicSeries<C> operator-(const BasicSeries<C>& a, const BasicSeries<C>& b) { return series_sub(a, b); }
template <class C>
BasicSeries<C> operator*(const BasicSeries<C>& a, const BasicSeries<C>& b) { return series_mul(a, b); }

}  // namespace ballq

#endif  // BALLQ_SERIES_HPP
