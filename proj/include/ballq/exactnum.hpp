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

// Exact arithmetic: big integers, canonical rationals, binomials, and the
// cyclotomic field Q(eps) for eps a primitive m-th root of unity, stored as
// residues modulo the m-th cyclotomic polynomial.

#ifndef BALLQ_EXACTNUM_HPP
#define BALLQ_EXACTNUM_HPP

#include <cmath>
#include <complex>
#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ballq/error.hpp"

namespace ballq {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I v) : value_(static_cast<long long>(v)) {}  // NOLINT(implicit)

  explicit Rational(const BigInt& v) : value_(v) {}

  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    value_ = den < 0 ? Impl(-num, -den) : Impl(num, den);
  }

  // Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw UsageError("non-finite double has no rational value");
    return Rational(Impl(x));
  }

  // Accepts "p/q" or "p".
  static Rational parse(std::string_view text) {
    if (text.empty()) throw UsageError("malformed rational: empty string");
    try {
      auto slash = text.find('/');
      if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
      return Rational(BigInt(std::string(text.substr(0, slash))),
                      BigInt(std::string(text.substr(slash + 1))));
    } catch (const DivisionByZero&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("malformed rational: '" + std::string(text) + "'");
    }
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }

  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }
  int sign() const { return value_.sign(); }

  double to_double() const { return value_.convert_to<double>(); }

  // Always "p/q", including q == 1, so serialized values never look like floats.
  std::string to_string() const { return numerator().str() + "/" + denominator().str(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(Impl(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = a.value_.compare(b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  using Impl = boost::multiprecision::cpp_rational;
  explicit Rational(Impl v) : value_(std::move(v)) {}
  Impl value_;
};

inline Rational pow(Rational base, unsigned exponent) {
  Rational result = 1;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return result;
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

// C(a, b); zero outside 0 <= b <= a.
inline BigInt binomial(long long a, long long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt result = 1;
  for (long long i = 1; i <= b; ++i) {
    result *= a - b + i;
    result /= i;
  }
  return result;
}

inline long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long long r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Representative of a mod m in [0, m).
inline long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline int euler_totient(int m) {
  int count = 0;
  for (int k = 1; k <= m; ++k)
    if (gcd_ll(k, m) == 1) ++count;
  return count;
}

// Integer polynomial, coefficient of x^i at index i.
using IntPoly = std::vector<BigInt>;

namespace detail {

inline void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// num / den where den is monic and divides num exactly.
inline IntPoly divide_monic_exact(IntPoly num, const IntPoly& den) {
  const std::size_t d = den.size() - 1;
  if (num.size() < den.size()) throw ConsistencyError("cyclotomic division: degree underflow");
  IntPoly quot(num.size() - d, 0);
  for (std::size_t i = num.size(); i-- > d;) {
    const BigInt c = num[i];
    if (c == 0) continue;
    quot[i - d] = c;
    for (std::size_t j = 0; j <= d; ++j) num[i - d + j] -= c * den[j];
  }
  for (const auto& r : num)
    if (r != 0) throw ConsistencyError("cyclotomic division left a remainder");
  return quot;
}

inline IntPoly compute_cyclotomic(int m);

}  // namespace detail

// Phi_m, computed as (x^m - 1) / prod_{d | m, d < m} Phi_d. Results are cached.
inline IntPoly cyclotomic_polynomial(int m) {
  if (m < 1) throw UsageError("cyclotomic_polynomial requires m >= 1");
  static std::mutex mutex;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  IntPoly phi = detail::compute_cyclotomic(m);
  std::lock_guard lock(mutex);
  return cache.emplace(m, std::move(phi)).first->second;
}

inline IntPoly detail::compute_cyclotomic(int m) {
  IntPoly num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) num = divide_monic_exact(std::move(num), cyclotomic_polynomial(d));
  trim(num);
  return num;
}

namespace detail {

struct CyclotomicModulus {
  int m = 1;
  std::size_t degree = 1;
  std::vector<Rational> phi;  // monic, size degree + 1
};

inline std::shared_ptr<const CyclotomicModulus> cyclotomic_modulus(int m) {
  if (m < 1) throw UsageError("conductor must be positive");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CyclotomicModulus>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  auto mod = std::make_shared<CyclotomicModulus>();
  mod->m = m;
  for (const auto& c : cyclotomic_polynomial(m)) mod->phi.emplace_back(c);
  mod->degree = mod->phi.size() - 1;
  std::lock_guard lock(mutex);
  return cache.emplace(m, std::move(mod)).first->second;
}

// Polynomials over Q used by the extended Euclidean algorithm.
using RatPoly = std::vector<Rational>;

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline std::pair<RatPoly, RatPoly> divmod(RatPoly num, const RatPoly& den) {
  const std::size_t d = den.size() - 1;
  if (num.size() < den.size()) return {RatPoly{}, num};
  RatPoly quot(num.size() - d);
  const Rational lead = den.back();
  for (std::size_t i = num.size(); i-- > d;) {
    if (num[i].is_zero()) continue;
    Rational c = num[i] / lead;
    quot[i - d] = c;
    for (std::size_t j = 0; j <= d; ++j) num[i - d + j] -= c * den[j];
  }
  num.resize(d);
  trim(num);
  trim(quot);
  return {quot, num};
}

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline RatPoly poly_sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace detail

// An element of Q(eps), eps = exp(2 pi i / m), as the unique residue of degree
// < phi(m) modulo Phi_m. Equality is coefficient-wise.
class CycloElem {
 public:
  static CycloElem zero(int m) { return CycloElem(detail::cyclotomic_modulus(m)); }

  static CycloElem from_rational(int m, const Rational& r) {
    CycloElem e = zero(m);
    e.coeffs_[0] = r;
    return e;
  }

  // Residue of sum_i coeffs[i] x^i; any length is accepted.
  static CycloElem from_coeffs(int m, std::vector<Rational> coeffs) {
    CycloElem e = zero(m);
    e.assign_reduced(std::move(coeffs));
    return e;
  }

  int conductor() const { return mod_->m; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) return false;
    return true;
  }

  Rational to_rational() const {
    if (!is_rational())
      throw ConsistencyError("cyclotomic element is not rational: " + to_string());
    return coeffs_[0];
  }

  std::complex<double> embed() const {
    std::complex<double> acc = 0;
    const double step = 2.0 * std::numbers::pi / mod_->m;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      acc += coeffs_[i].to_double() * std::polar(1.0, step * static_cast<double>(i));
    }
    return acc;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coeffs_[i].to_string() + ")";
      if (i > 0) out += "*e^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

  CycloElem& operator+=(const CycloElem& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  CycloElem& operator-=(const CycloElem& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  CycloElem& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  CycloElem& operator*=(const CycloElem& o) {
    check_same(o);
    const std::size_t d = coeffs_.size();
    std::vector<Rational> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
      if (coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (o.coeffs_[j].is_zero()) continue;
        prod[i + j] += coeffs_[i] * o.coeffs_[j];
      }
    }
    assign_reduced(std::move(prod));
    return *this;
  }
  CycloElem& operator/=(const CycloElem& o) { return *this *= o.inverse(); }

  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(CycloElem a, const CycloElem& b) { return a *= b; }
  friend CycloElem operator*(CycloElem a, const Rational& s) { return a *= s; }
  friend CycloElem operator*(const Rational& s, CycloElem a) { return a *= s; }
  friend CycloElem operator/(CycloElem a, const CycloElem& b) { return a /= b; }
  friend CycloElem operator-(CycloElem a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend bool operator==(const CycloElem& a, const CycloElem& b) {
    return a.conductor() == b.conductor() && a.coeffs_ == b.coeffs_;
  }

  // Extended Euclid against Phi_m; Phi_m is irreducible so any nonzero residue
  // is coprime to it.
  CycloElem inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in Q(eps_" + std::to_string(conductor()) + ")");
    using detail::RatPoly;
    RatPoly r0 = mod_->phi;
    RatPoly r1(coeffs_.begin(), coeffs_.end());
    detail::trim(r1);
    RatPoly s0;
    RatPoly s1{Rational(1)};
    while (r1.size() > 1) {
      auto [q, r] = detail::divmod(r0, r1);
      RatPoly s = detail::poly_sub(s0, detail::poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r1 is now a nonzero constant c with a * s1 == c (mod Phi_m).
    const Rational c = r1.at(0);
    for (auto& v : s1) v /= c;
    return from_coeffs(conductor(), std::move(s1));
  }

 private:
  explicit CycloElem(std::shared_ptr<const detail::CyclotomicModulus> mod)
      : mod_(std::move(mod)), coeffs_(mod_->degree) {}

  void check_same(const CycloElem& o) const {
    if (o.conductor() != conductor())
      throw UsageError("cyclotomic conductor mismatch: " + std::to_string(conductor()) + " vs " +
                       std::to_string(o.conductor()));
  }

  void assign_reduced(std::vector<Rational> p) {
    const std::size_t d = mod_->degree;
    const auto& phi = mod_->phi;
    for (std::size_t i = p.size(); i-- > d;) {
      if (p[i].is_zero()) continue;
      const Rational c = p[i];
      for (std::size_t j = 0; j <= d; ++j) p[i - d + j] -= c * phi[j];
    }
    p.resize(d);
    coeffs_ = std::move(p);
  }

  std::shared_ptr<const detail::CyclotomicModulus> mod_;
  std::vector<Rational> coeffs_;
};

inline CycloElem inverse(const CycloElem& a) { return a.inverse(); }

// eps^j for any integer j, reduced via j mod m.
inline CycloElem power_of_eps(int m, long long j) {
  const auto r = static_cast<std::size_t>(mod_floor(j, m));
  std::vector<Rational> mono(r + 1);
  mono[r] = 1;
  return CycloElem::from_coeffs(m, std::move(mono));
}

// sum_{k=0}^{m-1} eps^{jk}, evaluated in Q(eps). Equals m when m | j, else 0.
inline Rational root_power_sum(int m, long long j) {
  CycloElem acc = CycloElem::zero(m);
  for (long long k = 0; k < m; ++k) acc += power_of_eps(m, mod_floor(j, m) * k);
  return acc.to_rational();
}

}  // namespace ballq

#endif  // BALLQ_EXACTNUM_HPP
