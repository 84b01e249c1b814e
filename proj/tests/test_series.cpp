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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ballq/series.hpp"

namespace ballq {
namespace {

TruncSeries poly(int order, std::vector<long long> c) {
  std::vector<Rational> r(c.begin(), c.end());
  return TruncSeries::from_coeffs(order, r);
}

TruncSeries random_series(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<int> d(-6, 6);
  TruncSeries s(order);
  for (int j = 0; j <= order; ++j) s.set(j, Rational(BigInt(d(rng)), BigInt(std::abs(d(rng)) + 1)));
  return s;
}

CycloSeries random_cyclo_series(std::mt19937_64& rng, int m, int order) {
  std::uniform_int_distribution<int> d(-4, 4);
  CycloSeries s(order, CycloElem::zero(m));
  for (int j = 0; j <= order; ++j) {
    std::vector<Rational> c;
    for (int i = 0; i < m; ++i) c.push_back(d(rng));
    s.set(j, CycloElem::from_coeffs(m, c));
  }
  return s;
}

TEST(Series, Examples) {
  EXPECT_EQ(poly(3, {1, 1}) * poly(3, {1, -1}), poly(3, {1, 0, -1}));
  EXPECT_EQ(series_pow(poly(2, {1, 1}), 3), poly(2, {1, 3, 3}));
  EXPECT_EQ(shift_by_x(poly(2, {1, 2})), poly(2, {0, 1, 2}));
  EXPECT_EQ(series_pow(poly(4, {5, 7}), 0), poly(4, {1}));
  EXPECT_EQ(scalar_mul(poly(2, {1, 2, 3}), Rational(2)), poly(2, {2, 4, 6}));
}

TEST(Series, OrderIsFixed) {
  const TruncSeries s(5);
  EXPECT_EQ(s.order(), 5);
  EXPECT_EQ(s.coeffs().size(), 6u);
  EXPECT_THROW(TruncSeries(-1), UsageError);
  EXPECT_THROW(poly(3, {1}) + poly(4, {1}), UsageError);
  EXPECT_THROW(poly(3, {1}) * poly(4, {1}), UsageError);
  EXPECT_EQ(shift_by_x(poly(2, {0, 0, 9})), poly(2, {}));
  EXPECT_THROW(truncate(poly(2, {1}), 3), UsageError);
  EXPECT_EQ(truncate(poly(4, {1, 2, 3, 4, 5}), 2), poly(2, {1, 2, 3}));
}

TEST(Series, LowestNonzeroTerm) {
  const auto a = lowest_nonzero_term(poly(4, {0, 0, 5}));
  ASSERT_TRUE(a);
  EXPECT_EQ(a->degree, 2);
  EXPECT_EQ(a->coeff, Rational(5));
  EXPECT_FALSE(lowest_nonzero_term(TruncSeries(10)));
  const auto c = lowest_nonzero_term(poly(1, {3, -3}));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->degree, 0);
  EXPECT_EQ(c->coeff, Rational(3));
}

TEST(Series, Derivative) {
  EXPECT_EQ(series_derivative(poly(2, {1, 1, 1})), poly(1, {1, 2}));
  EXPECT_EQ(series_derivative(poly(1, {7})), poly(0, {0}));
  EXPECT_EQ(series_derivative(poly(3, {0, 0, 0, 4})), poly(2, {0, 0, 12}));
  EXPECT_THROW(series_derivative(poly(0, {1})), UsageError);
}

TEST(Series, Evaluate) {
  EXPECT_EQ(evaluate(poly(3, {1, 2, 0, 4}), Rational(BigInt(1), BigInt(2))), Rational(5) / Rational(2));
}

TEST(Series, RingLawsRational) {
  std::mt19937_64 rng(3);
  for (int order = 0; order <= 12; ++order) {
    const auto a = random_series(rng, order), b = random_series(rng, order), c = random_series(rng, order);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) - b, a);
  }
}

TEST(Series, RingLawsCyclotomic) {
  std::mt19937_64 rng(4);
  for (int m = 1; m <= 8; ++m)
    for (int order : {0, 3, 7}) {
      const auto a = random_cyclo_series(rng, m, order), b = random_cyclo_series(rng, m, order),
                 c = random_cyclo_series(rng, m, order);
      EXPECT_EQ(a * b, b * a) << "m=" << m;
      EXPECT_EQ((a * b) * c, a * (b * c)) << "m=" << m;
      EXPECT_EQ(a * (b + c), a * b + a * c) << "m=" << m;
    }
}

TEST(Series, LeibnizRule) {
  std::mt19937_64 rng(8);
  for (int order = 1; order <= 12; ++order) {
    const auto f = random_series(rng, order), g = random_series(rng, order);
    const auto lhs = series_derivative(f * g);
    const auto rhs = series_derivative(f) * truncate(g, order - 1) + truncate(f, order - 1) * series_derivative(g);
    EXPECT_EQ(lhs, rhs) << "order=" << order;
  }
}

TEST(Series, PowIsRepeatedMultiplication) {
  std::mt19937_64 rng(9);
  for (int order : {0, 4, 9}) {
    const auto s = random_series(rng, order);
    TruncSeries acc = series_pow(s, 0);
    for (unsigned e = 1; e <= 6; ++e) {
      acc = acc * s;
      EXPECT_EQ(series_pow(s, e), acc) << "e=" << e;
    }
  }
}

}  // namespace
}  // namespace ballq
