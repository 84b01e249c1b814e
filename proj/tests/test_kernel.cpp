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

#include "ballq/kernel.hpp"
#include "ballq/numeric.hpp"

namespace ballq {
namespace {

TruncSeries poly(int order, std::vector<long long> c) {
  std::vector<Rational> r(c.begin(), c.end());
  return TruncSeries::from_coeffs(order, r);
}

TEST(FSeries, Examples) {
  EXPECT_EQ(f_series(2, -1, 3, 4), poly(4, {2, 0, 12, 0, 30}));
  EXPECT_EQ(f_series(1, 0, 3, 3), poly(3, {1, 3, 6, 10}));
  for (int m = 1; m <= 6; ++m)
    for (long long t = -6; t <= 6; ++t)
      for (int p = 1; p <= 4; ++p)
        EXPECT_EQ(f_series(m, t, p, 0)[0], Rational(mod_floor(t + p, m) == 0 ? m : 0));
  EXPECT_THROW(f_series(0, 1, 1, 3), UsageError);
  EXPECT_THROW(f_series(3, 1, 0, 3), UsageError);
}

TEST(FSeries, OracleExamples) {
  EXPECT_EQ(f_series_oracle(2, -1, 3, 4), poly(4, {2, 0, 12, 0, 30}));
  for (long long t = -3; t <= 3; ++t) EXPECT_EQ(f_series_oracle(1, t, 2, 6), f_series(1, t, 2, 6));
  const TruncSeries s = f_series_oracle(5, -3, 3, 10);
  for (int j = 0; j <= 10; ++j) EXPECT_EQ(s[j].is_zero(), j % 5 != 0) << "j=" << j;
}

TEST(FSeries, Periodicity) {
  for (int m = 1; m <= 8; ++m)
    for (long long t = -2 * m; t <= 2 * m; ++t)
      for (int p = 1; p <= 5; ++p) EXPECT_EQ(f_series(m, t, p, 15), f_series(m, t + m, p, 15));
}

TEST(FDerivativeIdentity, Examples) {
  EXPECT_TRUE(f_derivative_identity_check(3, -2, 2, 12));
  EXPECT_TRUE(f_derivative_identity_check(1, 0, 1, 8));
  EXPECT_TRUE(f_derivative_identity_check(5, 1, 4, 15));
  EXPECT_THROW(f_derivative_identity_check(3, 1, 1, 0), UsageError);
}

TEST(FShiftIdentity, Examples) {
  EXPECT_TRUE(f_shift_identity_check(4, 2, 3, 10));
  EXPECT_TRUE(f_shift_identity_check(1, 0, 2, 6));
  EXPECT_TRUE(f_shift_identity_check(7, 5, 4, 14));
}

TEST(PhiDiagonal, Examples) {
  EXPECT_EQ(phi_diagonal_series(validate_spec(1, {0, 0}), 3), poly(3, {1, 3, 6, 10}));
  const TruncSeries s3 = phi_diagonal_series(validate_spec(3, {1, 1}), 3);
  EXPECT_EQ(s3[0], Rational(0));
  EXPECT_EQ(s3[1], Rational(9));
  EXPECT_EQ(phi_diagonal_series(validate_spec(2, {1, 1}), 3)[0], Rational(2));
}

TEST(PQSeries, TrivialGroupIsEinstein) {
  for (int n = 2; n <= 4; ++n) {
    const GroupSpec s = validate_spec(1, std::vector<long long>(static_cast<std::size_t>(n), 0));
    auto [P, Q] = pq_series(s, 20);
    TruncSeries geometric(20);
    for (int j = 0; j <= 20; ++j) geometric.set(j, 1);
    EXPECT_EQ(P * Q, series_pow(geometric, static_cast<unsigned>((n + 1) * (n + 2))));
  }
}

TEST(PQSeries, CaseIILowestTerms) {
  auto [P, Q] = pq_series(validate_spec(3, {1, 1}), 10);
  const auto p = lowest_nonzero_term(P);
  const auto q = lowest_nonzero_term(Q);
  ASSERT_TRUE(p && q);
  EXPECT_EQ(p->degree, 4);
  EXPECT_EQ(p->coeff, Rational(1215));
  EXPECT_EQ(q->degree, 0);
  EXPECT_EQ(q->coeff, Rational(3));
}

TEST(KeResidual, Examples) {
  const ResidualReport trivial = ke_residual(validate_spec(1, {0, 0, 0}), 30);
  EXPECT_FALSE(trivial.observed);
  EXPECT_FALSE(trivial.prediction);
  EXPECT_EQ(trivial.order_used, 30);
  EXPECT_TRUE(trivial.degree_match && trivial.coeff_match);

  const ResidualReport one = ke_residual(validate_spec(2, {1, 1}));
  ASSERT_TRUE(one.observed);
  EXPECT_EQ(one.observed->degree, 0);
  EXPECT_EQ(one.observed->coeff, Rational(16));
  EXPECT_TRUE(one.passed());

  const ResidualReport two = ke_residual(validate_spec(3, {1, 1}));
  ASSERT_TRUE(two.observed);
  EXPECT_EQ(two.observed->degree, 4);
  EXPECT_EQ(two.observed->coeff, Rational(2916));
  EXPECT_TRUE(two.passed());

  const ResidualReport three = ke_residual(validate_spec(5, {1, 2}));
  ASSERT_TRUE(three.observed);
  EXPECT_EQ(three.observed->degree, 8);
  EXPECT_EQ(three.observed->coeff, Rational(585000));
  EXPECT_EQ(three.prediction->lhs_coeff / three.prediction->pq_coeff, Rational(2592) / Rational(720));
}

TEST(KeResidual, OrderHandling) {
  const GroupSpec s = validate_spec(5, {1, 2});
  EXPECT_EQ(ke_residual(s).order_used, default_order(s));
  EXPECT_EQ(ke_residual(s, 8).order_used, 8);
  EXPECT_THROW(ke_residual(s, 7), UsageError);
  EXPECT_THROW(ke_residual(s, -1), UsageError);
}

TEST(KeResidual, TrivialGroupVanishes) {
  for (int n = 2; n <= 4; ++n)
    EXPECT_TRUE(residual_series(validate_spec(1, std::vector<long long>(static_cast<std::size_t>(n), 0)), 30).is_zero());
}

TEST(KeResidual, SignOfLeadingCoefficient) {
  for (const GroupSpec& s : enumerate_specs(8, 4)) {
    if (s.is_trivial()) continue;
    const ResidualReport r = ke_residual(s);
    const CasePrediction& p = *r.prediction;
    const int sign = r.observed->coeff.sign();
    if (!p.pq_degree || p.lhs_degree < *p.pq_degree)
      EXPECT_GT(sign, 0) << s.to_string();
    else if (*p.pq_degree < p.lhs_degree)
      EXPECT_LT(sign, 0) << s.to_string();
    else
      EXPECT_GT(sign, 0) << s.to_string();
  }
}

TEST(DetASlice, Examples) {
  const GroupSpec s = validate_spec(4, {1, 3});
  EXPECT_EQ(detA_slice(s, {0, 0, 0}, Rational(BigInt(2), BigInt(5))), CycloElem::from_rational(4, 1));
  EXPECT_EQ(detA_slice(s, {3, 2, 1}, Rational(0)), power_of_eps(4, 2 + 1 * 3));
  EXPECT_EQ(detA_slice(s, {1, 2, 3}, Rational(BigInt(1), BigInt(3))), CycloElem::from_rational(4, -1));
  EXPECT_THROW(detA_slice(s, {1, 2, 4}, Rational(0)), UsageError);
  EXPECT_THROW(detA_slice(s, {1, 2}, Rational(0)), UsageError);
  EXPECT_THROW(detA_slice(s, {1, 2, 3}, Rational(1)), DomainError);
}

TEST(DetASlice, MatchesDirectDeterminant) {
  std::mt19937_64 rng(21);
  for (int m = 2; m <= 6; ++m)
    for (int n : {2, 3})
      for (const GroupSpec& s : enumerate_specs(m, n)) {
        if (s.m() != m || s.n() != n) continue;
        std::uniform_int_distribution<int> pick(0, m - 1);
        for (int trial = 0; trial < 20; ++trial) {
          std::vector<int> k(static_cast<std::size_t>(n) + 1);
          for (auto& v : k) v = pick(rng);
          for (const Rational& x : {Rational(0), Rational(BigInt(1), BigInt(4)), Rational(BigInt(1), BigInt(2))}) {
            CVec z(static_cast<std::size_t>(n), 0.0);
            z[0] = std::sqrt(x.to_double());
            EXPECT_LT(std::abs(detA_direct(s, k, z) - detA_slice(s, k, x).embed()), 1e-10) << s.to_string();
          }
        }
      }
}

TEST(ResidualValue, AgreesWithSeriesInsideRadius) {
  for (const GroupSpec& s : {validate_spec(2, {1, 1}), validate_spec(3, {1, 1}), validate_spec(5, {1, 2})}) {
    const Rational x(BigInt(1), BigInt(10));
    const Rational exact = residual_value(s, x);
    const Rational series = evaluate(residual_series(s, 60), x);
    EXPECT_LT(abs(exact - series) / abs(exact), Rational(BigInt(1), BigInt(1000000000))) << s.to_string();
  }
  EXPECT_TRUE(residual_value(validate_spec(1, {0, 0}), Rational(BigInt(1), BigInt(2))).is_zero());
  EXPECT_THROW(residual_value(validate_spec(3, {1, 1}), Rational(-1)), DomainError);
}

}  // namespace
}  // namespace ballq
