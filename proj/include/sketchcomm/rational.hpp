// Copyright (c) 2026, sketchcomm authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace sketchcomm {

/// Exact rational with 64-bit numerator and positive denominator, always in
/// lowest terms. Intermediate products use 128-bit arithmetic; results that
/// do not fit throw std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Exact square root when the argument is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Exact value a + b·√q with q ≥ 0. Used for bounds whose closed forms carry a
/// square root so that "equals" and "at most" can be decided without rounding.
struct Surd {
  Rational a;
  Rational b;
  Rational radicand;

  static Surd of(const Rational& value) { return Surd{value, Rational(0), Rational(0)}; }
  double to_double() const;
};

/// Sign of x − y. The surd parts must share a radicand unless one of their
/// coefficients is zero.
int compare(const Surd& x, const Surd& y);
int compare(const Rational& x, const Surd& y);

}  // namespace sketchcomm
