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

// Double-precision evaluation of
//
//   phi(z, conj w) = sum_{gamma} conj(det gamma) / (1 - <z, conj(gamma w)>)^{n+1},
//
// (the ball's Bergman kernel summed over the group, without the n!/pi^n
// factor), its closed-form derivatives, the bordered Monge-Ampere determinant
//
//   J(phi) = det [[phi, phi_{zbar_j}], [phi_{z_i}, phi_{z_i zbar_j}]],
//
// and the Einstein defect J - (n+1)^n phi^{n+2}. <u, v> = sum_i u_i v_i.

#ifndef BALLQ_NUMERIC_HPP
#define BALLQ_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ballq/error.hpp"
#include "ballq/exactnum.hpp"
#include "ballq/group.hpp"

namespace ballq {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

namespace detail {

// Diagonal entries of gamma^k for k = 0..m-1 and their determinants.
struct GroupTable {
  int m = 1;
  int n = 0;
  std::vector<CVec> diag;  // diag[k][j] = eps^{k t_j}
  CVec det;                // det[k] = eps^{k |T|}

  explicit GroupTable(const GroupSpec& spec) : m(spec.m()), n(spec.n()) {
    const double step = 2.0 * std::numbers::pi / m;
    auto root = [&](long long e) { return std::polar(1.0, step * static_cast<double>(mod_floor(e, m))); };
    for (int k = 0; k < m; ++k) {
      CVec d;
      for (int tj : spec.t()) d.push_back(root(static_cast<long long>(k) * tj));
      diag.push_back(std::move(d));
      det.push_back(root(static_cast<long long>(k) * spec.t_sum()));
    }
  }
};

inline double norm2(const CVec& z) {
  double s = 0;
  for (const auto& v : z) s += std::norm(v);
  return s;
}

inline void require_ball(const GroupSpec& spec, const CVec& z, const char* what) {
  if (static_cast<int>(z.size()) != spec.n())
    throw UsageError(std::string(what) + " must have n = " + std::to_string(spec.n()) + " coordinates");
  if (!(norm2(z) < 1.0)) throw DomainError(std::string(what) + " lies outside the open unit ball");
}

}  // namespace detail

inline cplx phi_eval(const GroupSpec& spec, const CVec& z, const CVec& w) {
  detail::require_ball(spec, z, "z");
  detail::require_ball(spec, w, "w");
  const detail::GroupTable g(spec);
  const int n = spec.n();
  cplx acc = 0;
  for (int k = 0; k < g.m; ++k) {
    cplx inner = 0;
    for (int j = 0; j < n; ++j) inner += z[j] * std::conj(g.diag[k][j] * w[j]);
    acc += std::conj(g.det[k]) / std::pow(1.0 - inner, n + 1);
  }
  return acc;
}

// Value, first derivatives and mixed Hessian of phi(z, conj w): grad_z[i] is
// d/dz_i, grad_wbar[j] is d/d(conj w_j), hessian(i, j) is d^2/dz_i d(conj w_j).
// At w = z these are the Wirtinger derivatives of phi(z, conj z).
struct PhiJet {
  cplx value;
  CVec grad_z;
  CVec grad_wbar;
  Eigen::MatrixXcd hessian;
};

inline PhiJet phi_jet(const GroupSpec& spec, const CVec& z, const CVec& w) {
  detail::require_ball(spec, z, "z");
  detail::require_ball(spec, w, "w");
  const detail::GroupTable g(spec);
  const int n = spec.n();
  PhiJet jet{0, CVec(n, 0), CVec(n, 0), Eigen::MatrixXcd::Zero(n, n)};
  for (int k = 0; k < g.m; ++k) {
    // gamma_bar w_bar and z^T gamma_bar
    CVec gw(n), zg(n);
    cplx inner = 0;
    for (int j = 0; j < n; ++j) {
      const cplx gbar = std::conj(g.diag[k][j]);
      gw[j] = gbar * std::conj(w[j]);
      zg[j] = z[j] * gbar;
      inner += z[j] * gw[j];
    }
    const cplx d = 1.0 - inner;
    const cplx dbar_gamma = std::conj(g.det[k]);
    const cplx p1 = dbar_gamma / std::pow(d, n + 1);
    const cplx p2 = dbar_gamma / std::pow(d, n + 2);
    const cplx p3 = dbar_gamma / std::pow(d, n + 3);
    jet.value += p1;
    for (int i = 0; i < n; ++i) {
      jet.grad_z[i] += double(n + 1) * gw[i] * p2;
      jet.grad_wbar[i] += double(n + 1) * zg[i] * p2;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const cplx gij = i == j ? std::conj(g.diag[k][j]) : cplx(0);
        jet.hessian(i, j) += double(n + 1) * (gij * d + double(n + 2) * gw[i] * zg[j]) * p3;
      }
  }
  return jet;
}

inline PhiJet phi_derivatives(const GroupSpec& spec, const CVec& z) { return phi_jet(spec, z, z); }

inline Eigen::MatrixXcd bordered_matrix(const PhiJet& jet) {
  const auto n = static_cast<Eigen::Index>(jet.grad_z.size());
  Eigen::MatrixXcd a(n + 1, n + 1);
  a(0, 0) = jet.value;
  for (Eigen::Index j = 0; j < n; ++j) {
    a(0, j + 1) = jet.grad_wbar[static_cast<std::size_t>(j)];
    a(j + 1, 0) = jet.grad_z[static_cast<std::size_t>(j)];
  }
  a.bottomRightCorner(n, n) = jet.hessian;
  return a;
}

// Complex determinant; on the diagonal w = z it is real up to rounding.
inline cplx J_phi_complex(const GroupSpec& spec, const CVec& z) {
  return bordered_matrix(phi_derivatives(spec, z)).determinant();
}

inline double J_phi(const GroupSpec& spec, const CVec& z) { return J_phi_complex(spec, z).real(); }

struct NumericDefectSample {
  CVec z;
  cplx phi;
  double J = 0;
  double J_imag = 0;
  double defect = 0;      // J - (n+1)^n phi^{n+2}
  double rel_defect = 0;  // defect / max(1, |(n+1)^n phi^{n+2}|)
};

inline NumericDefectSample ke_defect(const GroupSpec& spec, const CVec& z) {
  const PhiJet jet = phi_derivatives(spec, z);
  const cplx j = bordered_matrix(jet).determinant();
  const int n = spec.n();
  const double target = std::pow(double(n + 1), n) * std::pow(jet.value.real(), n + 2);
  NumericDefectSample s;
  s.z = z;
  s.phi = jet.value;
  s.J = j.real();
  s.J_imag = j.imag();
  s.defect = s.J - target;
  s.rel_defect = s.defect / std::max(1.0, std::abs(target));
  return s;
}

// det A(gamma^{k_0}, ..., gamma^{k_n})(z) from the column definitions
//   xi_0(g) = (1 - <z, g zbar>, (n+1) g zbar),
//   xi_j(g) = (z^T g_j, [g_j (1 - <z, g zbar>) + (n+2) g zbar (z^T g_j)] / (1 - <z, g zbar>)),
// with g_j the j-th column of g.
inline cplx detA_direct(const GroupSpec& spec, const std::vector<int>& k_indices, const CVec& z) {
  const int n = spec.n();
  const int m = spec.m();
  if (static_cast<int>(k_indices.size()) != n + 1)
    throw UsageError("detA_direct needs n+1 = " + std::to_string(n + 1) + " group indices");
  for (int k : k_indices)
    if (k < 0 || k >= m) throw UsageError("group index " + std::to_string(k) + " outside [0, m-1]");
  detail::require_ball(spec, z, "z");
  const detail::GroupTable g(spec);

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int col = 0; col <= n; ++col) {
    const CVec& gd = g.diag[static_cast<std::size_t>(k_indices[static_cast<std::size_t>(col)])];
    CVec gz(n);  // gamma zbar
    cplx inner = 0;
    for (int i = 0; i < n; ++i) {
      gz[i] = gd[i] * std::conj(z[i]);
      inner += z[i] * gz[i];
    }
    const cplx denom = 1.0 - inner;
    if (std::abs(denom) < 1e-300) throw DomainError("detA_direct: singular denominator 1 - <z, gamma zbar>");
    if (col == 0) {
      a(0, 0) = denom;
      for (int i = 0; i < n; ++i) a(i + 1, 0) = double(n + 1) * gz[i];
      continue;
    }
    const int j = col - 1;
    const cplx top = z[j] * gd[j];  // z^T (gamma)_j
    a(0, col) = top;
    for (int i = 0; i < n; ++i) {
      const cplx column_entry = i == j ? gd[j] : cplx(0);
      a(i + 1, col) = (column_entry * denom + double(n + 2) * gz[i] * top) / denom;
    }
  }
  return a.determinant();
}

// Truncated monomial expansion of phi:
//   sum_{|alpha| <= cutoff, m | (|T| + alpha.T)} m (n+|alpha|)! / (n! alpha!) (z conj w)^alpha.
// The character sum over the group keeps exactly the multi-indices with
// m | (|T| + alpha.T) and multiplies them by m.
struct MonomialOracleResult {
  cplx value;
  double tail_bound = 0;  // bound on the dropped terms
  bool truncation_warning = false;
  std::size_t terms = 0;
};

inline bool monomial_survives(const GroupSpec& spec, const std::vector<int>& alpha) {
  long long s = spec.t_sum();
  for (std::size_t j = 0; j < alpha.size(); ++j) s += static_cast<long long>(alpha[j]) * spec.t()[j];
  return mod_floor(s, spec.m()) == 0;
}

inline MonomialOracleResult monomial_oracle_phi(const GroupSpec& spec, const CVec& z, const CVec& w, int cutoff) {
  detail::require_ball(spec, z, "z");
  detail::require_ball(spec, w, "w");
  if (cutoff < 0) throw UsageError("cutoff must be nonnegative");
  if (detail::norm2(z) > 0.25 || detail::norm2(w) > 0.25)
    throw DomainError("monomial expansion needs |z|, |w| <= 0.5");
  const int n = spec.n();
  CVec u(n);
  for (int j = 0; j < n; ++j) u[j] = z[j] * std::conj(w[j]);

  // (n+N)!/n! for N <= cutoff
  std::vector<double> rising(static_cast<std::size_t>(cutoff) + 1, 1.0);
  for (int N = 1; N <= cutoff; ++N) rising[N] = rising[N - 1] * double(n + N);

  MonomialOracleResult out{0};
  std::vector<int> alpha(n, 0);
  // partial = prod_{j<pos} u_j^{alpha_j} / alpha_j!
  auto rec = [&](auto&& self, int pos, int used, cplx partial) -> void {
    if (pos == n) {
      if (monomial_survives(spec, alpha)) {
        out.value += double(spec.m()) * rising[static_cast<std::size_t>(used)] * partial;
        ++out.terms;
      }
      return;
    }
    cplx term = partial;
    for (int a = 0; used + a <= cutoff; ++a) {
      if (a > 0) term *= u[pos] / double(a);
      alpha[pos] = a;
      self(self, pos + 1, used + a, term);
    }
    alpha[pos] = 0;
  };
  rec(rec, 0, 0, cplx(1));

  // Dropped terms are bounded by m sum_{N > cutoff} C(n+N, n) s^N with
  // s = sum_j |u_j|; consecutive ratios are at most s (n+c+2)/(c+2).
  double s = 0;
  for (const auto& v : u) s += std::abs(v);
  const double ratio = s * double(n + cutoff + 2) / double(cutoff + 2);
  double first = double(spec.m()) * std::pow(s, cutoff + 1);
  for (int i = 1; i <= n; ++i) first *= double(cutoff + 1 + i) / double(i);
  out.tail_bound = ratio < 1.0 ? first / (1.0 - ratio) : INFINITY;
  out.truncation_warning = !(out.tail_bound <= 1e-8 * std::max(1.0, std::abs(out.value)));
  return out;
}

// Compares the analytic jet at w = z with central differences of the
// analytic lower-order quantities: phi(z, conj w) is holomorphic in z and
// antiholomorphic in w, so d/dRe z_i = d/dz_i and d/dRe w_j = d/d(conj w_j).
// Errors are norm-wise, max |fd - analytic| divided by the larger of
// max |analytic| and the same maximum for the identity term alone. The
// identity term is the largest summand, so this is the scale of the rounding
// in the group sum even where the sum cancels to nearly zero.
struct DerivativeCheck {
  double grad_rel_err = 0;
  double hess_rel_err = 0;
};

namespace detail {
inline double relative_gap(double num, double den) { return den > 0 ? num / den : num; }
}  // namespace detail

inline DerivativeCheck derivative_check(const GroupSpec& spec, const CVec& z, double h = 1e-5) {
  const int n = spec.n();
  const PhiJet jet = phi_derivatives(spec, z);
  const PhiJet ball = phi_derivatives(validate_spec(1, std::vector<long long>(static_cast<std::size_t>(n), 0)), z);
  double grad_gap = 0, grad_scale = 0, hess_gap = 0, hess_scale = 0;
  for (int i = 0; i < n; ++i) grad_scale = std::max({grad_scale, std::abs(ball.grad_z[i]), std::abs(ball.grad_wbar[i])});
  hess_scale = ball.hessian.cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i) {
    CVec zp = z, zm = z;
    zp[i] += h;
    zm[i] -= h;
    const cplx dz = (phi_eval(spec, zp, z) - phi_eval(spec, zm, z)) / (2 * h);
    const cplx dw = (phi_eval(spec, z, zp) - phi_eval(spec, z, zm)) / (2 * h);
    grad_gap = std::max({grad_gap, std::abs(dz - jet.grad_z[i]), std::abs(dw - jet.grad_wbar[i])});
    grad_scale = std::max({grad_scale, std::abs(jet.grad_z[i]), std::abs(jet.grad_wbar[i])});
  }
  for (int j = 0; j < n; ++j) {
    CVec wp = z, wm = z;
    wp[j] += h;
    wm[j] -= h;
    const PhiJet up = phi_jet(spec, z, wp);
    const PhiJet down = phi_jet(spec, z, wm);
    for (int i = 0; i < n; ++i) {
      const cplx fd = (up.grad_z[i] - down.grad_z[i]) / (2 * h);
      hess_gap = std::max(hess_gap, std::abs(fd - jet.hessian(i, j)));
      hess_scale = std::max(hess_scale, std::abs(jet.hessian(i, j)));
    }
  }
  return {detail::relative_gap(grad_gap, grad_scale), detail::relative_gap(hess_gap, hess_scale)};
}

struct GridScanResult {
  std::vector<NumericDefectSample> samples;
  std::size_t slice_count = 0;  // the first slice_count samples lie on z = (x_1, 0, ..., 0)
  double max_abs_rel_defect = 0;
  std::size_t argmax = 0;
};

// grid_count slice points z = (radius i / grid_count, 0, ..., 0), i = 1..grid_count,
// then grid_count points uniform in the ball of the given radius drawn from a
// mt19937_64 seeded with `seed`. Deterministic for equal arguments.
inline GridScanResult residual_grid_scan(const GroupSpec& spec, double radius, int grid_count, std::uint64_t seed) {
  if (!(radius > 0.0 && radius < 1.0)) throw UsageError("radius must lie in (0, 1)");
  if (grid_count < 1) throw UsageError("grid count must be positive");
  const int n = spec.n();
  GridScanResult out;
  for (int i = 1; i <= grid_count; ++i) {
    CVec z(n, 0);
    z[0] = radius * double(i) / double(grid_count);
    out.samples.push_back(ke_defect(spec, z));
  }
  out.slice_count = out.samples.size();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < grid_count; ++i) {
    CVec z(n);
    double len = 0;
    for (auto& v : z) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v = cplx(re, im);
      len += re * re + im * im;
    }
    const double r = radius * std::pow(unit(rng), 1.0 / (2.0 * n)) / std::sqrt(len);
    for (auto& v : z) v *= r;
    out.samples.push_back(ke_defect(spec, z));
  }

  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const double v = std::abs(out.samples[i].rel_defect);
    if (v > out.max_abs_rel_defect) {
      out.max_abs_rel_defect = v;
      out.argmax = i;
    }
  }
  return out;
}

}  // namespace ballq

#endif  // BALLQ_NUMERIC_HPP
