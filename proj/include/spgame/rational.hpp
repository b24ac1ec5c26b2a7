// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact rational numbers on 128-bit integers, and the extended cost type
// (rational or +infinity) used for path lengths and potentials. Every
// operation that would leave the 128-bit range throws instead of wrapping.

#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "spgame/error.hpp"

namespace spgame {

class Rational {
 public:
  using Int = __int128;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by intent
  Rational(Int num, Int den) : num_(num), den_(den) { normalize(); }

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  // Accepts integers ("12"), decimals ("-0.25") and fractions ("3/4").
  static Rational parse(std::string_view text);

  std::string to_string() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) {
      Rational r;
      r.num_ = checked_add(a.num_, b.num_);
      r.den_ = a.den_;
      if (r.den_ != 1) r.normalize();
      return r;
    }
    Int g = gcd(a.den_, b.den_);
    Int da = a.den_ / g;
    Int db = b.den_ / g;
    return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)),
                    checked_mul(a.den_, db));
  }
  friend Rational operator-(const Rational& a) {
    Rational r = a;
    r.num_ = checked_neg(a.num_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Int g1 = gcd(abs(a.num_), b.den_);
    Int g2 = gcd(abs(b.num_), a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked_mul(a.num_ / g1, b.num_ / g2),
                    checked_mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorCode::kInvalidInput, "rational division by zero");
    Rational inv;
    inv.num_ = b.num_ < 0 ? checked_neg(b.den_) : b.den_;
    inv.den_ = abs(b.num_);
    return a * inv;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return compare_int(a.num_, b.num_);
    Int lhs, rhs;
    if (!__builtin_mul_overflow(a.num_, b.den_, &lhs) &&
        !__builtin_mul_overflow(b.num_, a.den_, &rhs)) {
      return compare_int(lhs, rhs);
    }
    return compare_slow(a.num_, a.den_, b.num_, b.den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  static std::strong_ordering compare_int(Int a, Int b) {
    return a < b ? std::strong_ordering::less
                 : (a > b ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  static Int abs(Int v) { return v < 0 ? checked_neg(v) : v; }
  static Int gcd(Int a, Int b) {
    while (b != 0) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) overflow();
    return r;
  }
  static Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) overflow();
    return r;
  }
  static Int checked_neg(Int a) {
    Int r;
    if (__builtin_sub_overflow(Int{0}, a, &r)) overflow();
    return r;
  }
  [[noreturn]] static void overflow() {
    throw Error(ErrorCode::kArithmeticOverflow, "rational arithmetic overflow");
  }
  static Int floor_div(Int n, Int d) {
    Int q = n / d;
    if ((n % d != 0) && (n < 0)) --q;
    return q;
  }

  // Compares a/b with c/d (b, d > 0) by continued-fraction expansion; never
  // forms a product, so it cannot overflow.
  static std::strong_ordering compare_slow(Int a, Int b, Int c, Int d) {
    bool flipped = false;
    auto result = [&flipped](std::strong_ordering r) {
      if (!flipped || r == std::strong_ordering::equal) return r;
      return r == std::strong_ordering::less ? std::strong_ordering::greater
                                             : std::strong_ordering::less;
    };
    for (;;) {
      Int qa = floor_div(a, b);
      Int qc = floor_div(c, d);
      if (qa != qc) return result(compare_int(qa, qc));
      Int ra = a - qa * b;
      Int rc = c - qc * d;
      if (ra == 0 || rc == 0) return result(compare_int(ra == 0 ? 0 : 1, rc == 0 ? 0 : 1));
      // ra/b < rc/d  <=>  b/ra > d/rc
      Int next_a = b, next_b = ra, next_c = d, next_d = rc;
      a = next_a;
      b = next_b;
      c = next_c;
      d = next_d;
      flipped = !flipped;
    }
  }

  void normalize() {
    if (den_ == 0) throw Error(ErrorCode::kInvalidInput, "rational with zero denominator");
    if (den_ < 0) {
      num_ = checked_neg(num_);
      den_ = checked_neg(den_);
    }
    Int g = gcd(abs(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  Int num_ = 0;
  Int den_ = 1;
};

namespace detail {

inline std::string int128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(0) - static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  std::string out;
  while (u > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

inline __int128 parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw Error(ErrorCode::kInvalidInput, "malformed number '" + std::string(whole) + "'");
  }
  __int128 v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::kInvalidInput, "malformed number '" + std::string(whole) + "'");
    }
    if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, c - '0', &v)) {
      throw Error(ErrorCode::kArithmeticOverflow, "number too large '" + std::string(whole) + "'");
    }
  }
  return v;
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
  std::string_view whole = text;
  bool neg = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int n = detail::parse_digits(text.substr(0, slash), whole);
    Int d = detail::parse_digits(text.substr(slash + 1), whole);
    value = Rational(n, d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    Int n = int_part.empty() ? 0 : detail::parse_digits(int_part, whole);
    Int d = 1;
    if (!frac_part.empty()) {
      Int f = detail::parse_digits(frac_part, whole);
      for (std::size_t i = 0; i < frac_part.size(); ++i) d = checked_mul(d, 10);
      n = checked_add(checked_mul(n, d), f);
    } else if (int_part.empty()) {
      throw Error(ErrorCode::kInvalidInput, "malformed number '" + std::string(whole) + "'");
    }
    value = Rational(n, d);
  } else {
    value = Rational(detail::parse_digits(text, whole), 1);
  }
  return neg ? -value : value;
}

inline std::string Rational::to_string() const {
  if (den_ == 1) return detail::int128_to_string(num_);
  return detail::int128_to_string(num_) + "/" + detail::int128_to_string(den_);
}

// A path length: an exact rational, or +infinity. Infinity absorbs addition
// and compares above every finite value.
class Cost {
 public:
  constexpr Cost() = default;
  Cost(Rational value) : value_(value) {}  // NOLINT: implicit by intent
  Cost(std::int64_t value) : value_(value) {}  // NOLINT

  static Cost infinity() {
    Cost c;
    c.infinite_ = true;
    return c;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Precondition: finite.
  const Rational& value() const {
    if (infinite_) throw Error(ErrorCode::kInternalInvariant, "value() of infinite cost");
    return value_;
  }

  std::string to_string() const { return infinite_ ? "inf" : value_.to_string(); }

  friend Cost operator+(const Cost& a, const Cost& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Cost(a.value_ + b.value_);
  }
  Cost& operator+=(const Cost& o) { return *this = *this + o; }

  friend bool operator==(const Cost& a, const Cost& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Cost& c) { return os << c.to_string(); }

 private:
  Rational value_;
  bool infinite_ = false;
};

}  // namespace spgame
