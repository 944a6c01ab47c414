// Copyright 2026 The hodgepink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HODGEPINK_RAT_HPP
#define HODGEPINK_RAT_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hpk {

// Exact rational arithmetic on int64 numerator/denominator. Slopes, norm
// exponents and valuations all fit comfortably; overflow on multiplication is
// checked via __int128.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  static std::int64_t checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rat overflow");
    return static_cast<std::int64_t>(v);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(checked(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den),
               checked(static_cast<__int128>(a.den) * b.den));
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(checked(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den),
               checked(static_cast<__int128>(a.den) * b.den));
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(checked(static_cast<__int128>(a.num) * b.num),
               checked(static_cast<__int128>(a.den) * b.den));
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return Rat(checked(static_cast<__int128>(a.num) * b.den),
               checked(static_cast<__int128>(a.den) * b.num));
  }
  Rat operator-() const { return Rat(-num, den); }
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  bool is_integer() const { return den == 1; }
  std::int64_t floor() const {
    std::int64_t q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }
  std::int64_t ceil() const { return -(-*this).floor(); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }
};

}  // namespace hpk

#endif  // HODGEPINK_RAT_HPP
