#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace gshift {

// Exact binary rational num / 2^den_pow2. Values are normalized (numerator
// odd unless zero) and arithmetic throws std::overflow_error instead of ever
// rounding, so comparisons like `lower >= 2^-k` are exact.
class dyadic {
 public:
  static constexpr unsigned max_den_pow2 = 62;

  constexpr dyadic() = default;
  constexpr dyadic(std::int64_t integer) : num_(integer), den_(0) {}  // NOLINT(google-explicit-constructor)

  // num / 2^den_pow2
  static constexpr dyadic scaled(std::int64_t num, unsigned den_pow2) {
    if (den_pow2 > max_den_pow2) throw std::overflow_error("dyadic: denominator exponent too large");
    dyadic d;
    d.num_ = num;
    d.den_ = den_pow2;
    d.normalize();
    return d;
  }

  // 2^exponent for exponent in [-max_den_pow2, max_den_pow2]
  static constexpr dyadic pow2(int exponent) {
    if (exponent >= 0) {
      if (exponent > static_cast<int>(max_den_pow2)) throw std::overflow_error("dyadic: exponent too large");
      return dyadic(std::int64_t{1} << exponent);
    }
    return scaled(1, static_cast<unsigned>(-exponent));
  }

  constexpr std::int64_t numerator() const { return num_; }
  constexpr unsigned den_pow2() const { return den_; }
  constexpr bool is_zero() const { return num_ == 0; }
  constexpr bool is_negative() const { return num_ < 0; }

  friend constexpr dyadic operator+(const dyadic& a, const dyadic& b) {
    unsigned den = a.den_ > b.den_ ? a.den_ : b.den_;
    __int128 sum = a.wide_at(den) + b.wide_at(den);
    return from_wide(sum, den);
  }
  friend constexpr dyadic operator-(const dyadic& a, const dyadic& b) {
    unsigned den = a.den_ > b.den_ ? a.den_ : b.den_;
    __int128 diff = a.wide_at(den) - b.wide_at(den);
    return from_wide(diff, den);
  }
  constexpr dyadic operator-() const {
    dyadic d = *this;
    d.num_ = -d.num_;
    return d;
  }

  friend constexpr bool operator==(const dyadic& a, const dyadic& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr bool operator<(const dyadic& a, const dyadic& b) {
    unsigned den = a.den_ > b.den_ ? a.den_ : b.den_;
    return a.wide_at(den) < b.wide_at(den);
  }
  friend constexpr bool operator<=(const dyadic& a, const dyadic& b) { return a == b || a < b; }
  friend constexpr bool operator>(const dyadic& a, const dyadic& b) { return b < a; }
  friend constexpr bool operator>=(const dyadic& a, const dyadic& b) { return b <= a; }

  constexpr dyadic abs() const { return num_ < 0 ? -*this : *this; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(std::uint64_t{1} << den_);
  }

  std::string to_string() const {
    if (den_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/2^" + std::to_string(den_);
  }

 private:
  std::int64_t num_ = 0;
  unsigned den_ = 0;

  constexpr void normalize() {
    if (num_ == 0) {
      den_ = 0;
      return;
    }
    while (den_ > 0 && num_ % 2 == 0) {
      num_ /= 2;
      --den_;
    }
  }

  constexpr __int128 wide_at(unsigned den) const {
    return static_cast<__int128>(num_) << (den - den_);
  }

  static constexpr dyadic from_wide(__int128 num, unsigned den) {
    while (den > 0 && num % 2 == 0 && num != 0) {
      num /= 2;
      --den;
    }
    if (num > std::numeric_limits<std::int64_t>::max() || num < std::numeric_limits<std::int64_t>::min()) {
      throw std::overflow_error("dyadic: numerator overflow");
    }
    dyadic d;
    d.num_ = static_cast<std::int64_t>(num);
    d.den_ = num == 0 ? 0 : den;
    return d;
  }
};

}  // namespace gshift
