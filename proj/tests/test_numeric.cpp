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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ballq/kernel.hpp"
#include "ballq/numeric.hpp"
#include "oracles.hpp"

namespace ballq {
namespace {

GroupSpec ball(int n) { return validate_spec(1, std::vector<long long>(static_cast<std::size_t>(n), 0)); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

TEST(PhiEval, TrivialGroupIsBallKernel) {
  EXPECT_EQ(phi_eval(ball(2), {0.0, 0.0}, {0.0, 0.0}), cplx(1.0));
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 4; ++n)
    for (int i = 0; i < 10; ++i) {
      const CVec z = oracle::random_point(rng, n, 0.95);
      const double r2 = detail::norm2(z);
      EXPECT_LT(rel(phi_eval(ball(n), z, z), std::pow(1.0 - r2, -(n + 1))), 1e-12);
    }
}

TEST(PhiEval, HermitianSymmetry) {
  std::mt19937_64 rng(2);
  for (const GroupSpec& s : enumerate_specs(6, 3))
    for (int i = 0; i < 3; ++i) {
      const CVec z = oracle::random_point(rng, s.n(), 0.9), w = oracle::random_point(rng, s.n(), 0.9);
      EXPECT_LT(std::abs(phi_eval(s, z, w) - std::conj(phi_eval(s, w, z))), 1e-10 * std::abs(phi_eval(s, z, w)) + 1e-14);
    }
}

TEST(PhiEval, SliceMatchesDiagonalSeries) {
  const GroupSpec s = validate_spec(3, {1, 1});
  const TruncSeries series = phi_diagonal_series(s, 40);
  for (double x : {0.05, 0.1, 0.25, 0.4, 0.5}) {
    const CVec z{std::sqrt(x), 0.0};
    const double exact = evaluate(series, Rational::from_double(std::sqrt(x)) * Rational::from_double(std::sqrt(x))).to_double();
    EXPECT_LT(rel(phi_eval(s, z, z), exact), 1e-10) << "x=" << x;
  }
}

TEST(PhiEval, DomainErrors) {
  EXPECT_THROW(phi_eval(ball(2), {1.0, 0.0}, {0.0, 0.0}), DomainError);
  EXPECT_THROW(phi_eval(ball(2), {0.0, 0.0}, {0.6, 0.9}), DomainError);
  EXPECT_THROW(phi_eval(ball(2), {0.0}, {0.0, 0.0}), UsageError);
}

TEST(PhiDerivatives, BallAtOrigin) {
  for (int n = 2; n <= 4; ++n) {
    const PhiJet jet = phi_derivatives(ball(n), CVec(static_cast<std::size_t>(n), 0.0));
    for (const auto& g : jet.grad_z) EXPECT_EQ(g, cplx(0.0));
    EXPECT_LT((jet.hessian - Eigen::MatrixXcd::Identity(n, n) * double(n + 1)).norm(), 1e-14);
  }
}

TEST(PhiDerivatives, MatchFiniteDifferences) {
  std::mt19937_64 rng(3);
  for (const GroupSpec& s : enumerate_specs(5, 3))
    for (int i = 0; i < 10; ++i) {
      const CVec z = oracle::random_point(rng, s.n(), 0.85);
      const PhiJet jet = phi_derivatives(s, z);
      const auto fd = oracle::finite_difference_jet(s, z);
      double g_gap = 0, g_scale = 0;
      for (int j = 0; j < s.n(); ++j) {
        g_gap = std::max(g_gap, std::abs(fd.grad[j] - jet.grad_z[j]));
        g_scale = std::max(g_scale, std::abs(jet.grad_z[j]));
      }
      const double h_rel = (fd.hessian - jet.hessian).cwiseAbs().maxCoeff() / jet.hessian.cwiseAbs().maxCoeff();
      EXPECT_LT(g_gap / g_scale, 1e-6) << s.to_string();
      EXPECT_LT(h_rel, 1e-6) << s.to_string();
    }
}

TEST(PhiDerivatives, SliceHessianIsBlockDiagonal) {
  for (const GroupSpec& s : {validate_spec(5, {1, 2}), validate_spec(7, {1, 2, 4})}) {
    CVec z(static_cast<std::size_t>(s.n()), 0.0);
    z[0] = 0.6;
    const PhiJet jet = phi_derivatives(s, z);
    for (int i = 1; i < s.n(); ++i) {
      EXPECT_LT(std::abs(jet.hessian(0, i)), 1e-12);
      EXPECT_LT(std::abs(jet.hessian(i, 0)), 1e-12);
    }
  }
}

TEST(DerivativeCheck, WithinToleranceNearOriginAndBoundary) {
  for (const GroupSpec& s : {validate_spec(8, {1, 3, 5}), validate_spec(5, {1, 2})})
    for (double r : {0.02, 0.5, 0.9}) {
      CVec z(static_cast<std::size_t>(s.n()), 0.0);
      z[0] = r;
      const auto c = derivative_check(s, z);
      EXPECT_LT(c.grad_rel_err, 1e-6);
      EXPECT_LT(c.hess_rel_err, 1e-6);
    }
}

TEST(KeDefect, TrivialGroupIsEinstein) {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 4; ++n)
    for (int i = 0; i < 20; ++i) EXPECT_LE(std::abs(ke_defect(ball(n), oracle::random_point(rng, n, 0.9)).rel_defect), 1e-9);
}

TEST(KeDefect, DiagonalValuesAreReal) {
  const GroupSpec s = validate_spec(7, {1, 4});
  for (double x : {0.1, 0.5, 0.8}) {
    const auto d = ke_defect(s, {x, 0.0});
    EXPECT_LT(std::abs(d.phi.imag()), 1e-10 * std::abs(d.phi));
    const double scale = std::max(std::abs(d.J), std::pow(std::abs(d.phi), s.n() + 2));
    EXPECT_LT(std::abs(d.J_imag), 1e-10 * scale);
  }
}

TEST(KeDefect, SliceMatchesExactResidual) {
  for (const GroupSpec& s : {validate_spec(3, {1, 1}), validate_spec(5, {1, 2}), validate_spec(7, {1, 4}),
                             validate_spec(4, {1, 1, 3})}) {
    const double scale = std::pow(double(s.n() + 1), s.n());
    for (double x1 : {0.2, 0.4, 0.6}) {
      CVec z(static_cast<std::size_t>(s.n()), 0.0);
      z[0] = x1;
      const Rational r1 = Rational::from_double(x1);
      const double expected = -scale * residual_value(s, r1 * r1).to_double();
      EXPECT_LT(std::abs(ke_defect(s, z).defect - expected), 1e-8 * std::abs(expected)) << s.to_string();
    }
  }
}

TEST(KeDefect, CaseIConstantTerm) {
  const auto d = ke_defect(validate_spec(2, {1, 1}), {1e-4, 0.0});
  EXPECT_NEAR(d.defect, -9.0 * 16.0, 1e-4);
}

TEST(DetADirect, Examples) {
  const GroupSpec s = validate_spec(5, {1, 2});
  EXPECT_LT(std::abs(detA_direct(s, {0, 0, 0}, {0.4, 0.0}) - 1.0), 1e-14);
  const cplx at_origin = detA_direct(s, {2, 3, 4}, {0.0, 0.0});
  EXPECT_LT(std::abs(at_origin - power_of_eps(5, 3 + 4 * 2).embed()), 1e-14);
  EXPECT_THROW(detA_direct(s, {0, 0}, {0.0, 0.0}), UsageError);
  EXPECT_THROW(detA_direct(s, {0, 0, 5}, {0.0, 0.0}), UsageError);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> pick(0, 4);
  for (int i = 0; i < 20; ++i) {
    const std::vector<int> k{pick(rng), pick(rng), pick(rng)};
    EXPECT_LT(std::abs(detA_direct(s, k, {0.3, 0.0}) - detA_slice(s, k, Rational(9) / Rational(100)).embed()), 1e-10);
  }
}

TEST(MonomialOracle, SelectionRule) {
  const GroupSpec s = validate_spec(2, {1, 1});
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) EXPECT_EQ(monomial_survives(s, {a, b}), (a + b) % 2 == 0);
}

TEST(MonomialOracle, Examples) {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 3; ++n)
    for (int i = 0; i < 5; ++i) {
      const CVec z = oracle::random_point(rng, n, 0.4), w = oracle::random_point(rng, n, 0.4);
      const auto r = monomial_oracle_phi(ball(n), z, w, 60);
      EXPECT_LT(rel(r.value, phi_eval(ball(n), z, w)), 1e-8);
      EXPECT_FALSE(r.truncation_warning);
    }
  const GroupSpec s = validate_spec(2, {1, 1});
  const CVec p{0.3, 0.2};
  EXPECT_LT(rel(monomial_oracle_phi(s, p, p, 60).value, phi_eval(s, p, p)), 1e-6);
}

TEST(MonomialOracle, AgreesWithPhiEval) {
  std::mt19937_64 rng(8);
  for (const GroupSpec& s : enumerate_specs(5, 3))
    for (int i = 0; i < 20; ++i) {
      const CVec z = oracle::random_point(rng, s.n(), 0.4), w = oracle::random_point(rng, s.n(), 0.4);
      const auto r = monomial_oracle_phi(s, z, w, 60);
      const cplx direct = phi_eval(s, z, w);
      EXPECT_LT(std::abs(r.value - direct), 1e-6 * std::max(1.0, std::abs(direct))) << s.to_string();
    }
}

TEST(MonomialOracle, TruncationWarning) {
  const CVec z{0.45, 0.1};
  const auto r = monomial_oracle_phi(ball(2), z, z, 3);
  EXPECT_TRUE(r.truncation_warning);
  EXPECT_GT(r.tail_bound, std::abs(r.value - phi_eval(ball(2), z, z)));
  EXPECT_THROW(monomial_oracle_phi(ball(2), {0.6, 0.0}, z, 10), DomainError);
  EXPECT_THROW(monomial_oracle_phi(ball(2), z, z, -1), UsageError);
}

TEST(GridScan, TrivialControl) {
  const auto r = residual_grid_scan(ball(2), 0.9, 50, 1);
  EXPECT_EQ(r.samples.size(), 100u);
  EXPECT_EQ(r.slice_count, 50u);
  EXPECT_LE(r.max_abs_rel_defect, 1e-9);
}

TEST(GridScan, NonEinsteinIsVisibleAndDeterministic) {
  const GroupSpec s = validate_spec(3, {1, 1});
  const auto a = residual_grid_scan(s, 0.8, 50, 7);
  const auto b = residual_grid_scan(s, 0.8, 50, 7);
  EXPECT_GT(a.max_abs_rel_defect, 1e-4);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].z, b.samples[i].z);
    EXPECT_EQ(a.samples[i].defect, b.samples[i].defect);
  }
  EXPECT_EQ(a.argmax, b.argmax);
  for (const auto& smp : a.samples) EXPECT_LT(std::sqrt(detail::norm2(smp.z)), 0.8 + 1e-12);
  EXPECT_THROW(residual_grid_scan(s, 1.0, 5, 1), UsageError);
  EXPECT_THROW(residual_grid_scan(s, 0.5, 0, 1), UsageError);
}

}  // namespace
}  // namespace ballq
