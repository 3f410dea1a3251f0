// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#include "sketchcomm/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sketchcomm {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("Rational: value does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

Rational make(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

std::optional<std::int64_t> exact_isqrt(std::int64_t v) {
  if (v < 0) return std::nullopt;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (s > 0 && static_cast<i128>(s) * s > v) --s;
  while (static_cast<i128>(s + 1) * (s + 1) <= v) ++s;
  if (static_cast<i128>(s) * s != v) return std::nullopt;
  return s;
}

// Sign of d + e·√q, q ≥ 0.
int sign_of(const Rational& d, const Rational& e, const Rational& q) {
  if (e.sign() == 0 || q.sign() == 0) return d.sign();
  if (d.sign() == 0 || d.sign() == e.sign()) return e.sign();
  // Opposite signs: whichever of |d| and |e|√q is larger wins.
  const auto cmp = d * d <=> e * e * q;
  if (cmp == 0) return 0;
  return cmp > 0 ? d.sign() : e.sign();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

Rational Rational::operator-() const { return make(-static_cast<i128>(num_), den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const i128 lhs = static_cast<i128>(a.num_) * b.den_;
  const i128 rhs = static_cast<i128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  auto n = exact_isqrt(q.num());
  auto d = exact_isqrt(q.den());
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

double Surd::to_double() const {
  return a.to_double() + b.to_double() * std::sqrt(radicand.to_double());
}

int compare(const Surd& x, const Surd& y) {
  if (x.radicand.sign() < 0 || y.radicand.sign() < 0) {
    throw std::domain_error("Surd: negative radicand");
  }
  const Rational d = x.a - y.a;
  const bool x_surd = x.b.sign() != 0 && x.radicand.sign() != 0;
  const bool y_surd = y.b.sign() != 0 && y.radicand.sign() != 0;
  if (!y_surd) return sign_of(d, x.b, x.radicand);
  if (!x_surd) return sign_of(d, -y.b, y.radicand);
  if (x.radicand == y.radicand) return sign_of(d, x.b - y.b, x.radicand);
  // √q2 = ρ·√q1 when q2/q1 is a rational square.
  if (auto rho = exact_sqrt(y.radicand / x.radicand)) {
    return sign_of(d, x.b - y.b * *rho, x.radicand);
  }
  throw std::invalid_argument("Surd compare: incommensurable radicands " +
                              x.radicand.to_string() + " and " + y.radicand.to_string());
}

int compare(const Rational& x, const Surd& y) { return compare(Surd::of(x), y); }

}  // namespace sketchcomm
