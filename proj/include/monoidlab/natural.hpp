#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include "monoidlab/errors.hpp"

namespace monoidlab {

using BigInt = boost::multiprecision::cpp_int;

/// An exact natural number. The domain here is {1, 2, 3, ...}: zero is not a
/// natural number, and every constructor enforces that.
class Natural {
 public:
  Natural() = default;  // 1

  template <std::integral T>
  Natural(T v) : v_(v) {
    check();
  }

  explicit Natural(BigInt v) : v_(std::move(v)) { check(); }

  static Natural from_string(const std::string& s) {
    try {
      return Natural(BigInt(s));
    } catch (const std::exception&) {
      throw InvalidSpec("not a decimal natural number: '" + s + "'");
    }
  }

  const BigInt& value() const noexcept { return v_; }
  std::string str() const { return v_.str(); }

  bool fits_u64() const {
    return v_ <= BigInt(std::numeric_limits<std::uint64_t>::max());
  }
  std::uint64_t as_u64() const {
    if (!fits_u64()) throw BudgetExceeded("value too large for a machine word: " + str());
    return v_.convert_to<std::uint64_t>();
  }
  bool fits_int() const { return v_ <= BigInt(std::numeric_limits<int>::max()); }
  int as_int() const {
    if (!fits_int()) throw BudgetExceeded("value too large for int: " + str());
    return v_.convert_to<int>();
  }

  friend Natural operator+(const Natural& a, const Natural& b) {
    return Natural(a.v_ + b.v_);
  }
  friend Natural operator*(const Natural& a, const Natural& b) {
    return Natural(a.v_ * b.v_);
  }
  friend bool operator==(const Natural& a, const Natural& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Natural& a, const Natural& b) { return a.v_ != b.v_; }
  friend bool operator<(const Natural& a, const Natural& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Natural& a, const Natural& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Natural& a, const Natural& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Natural& a, const Natural& b) { return a.v_ >= b.v_; }

 private:
  void check() const {
    if (v_ < 1) throw InvalidSpec("natural numbers start at 1, got " + v_.str());
  }

  BigInt v_{1};
};

/// base^exp for exact big integers, exp >= 0. The exponent must fit in a
/// machine word; anything larger would not be representable anyway.
inline BigInt big_pow(const BigInt& base, const BigInt& exp) {
  if (exp < 0) throw InvalidSpec("negative exponent");
  if (exp > std::numeric_limits<unsigned>::max())
    throw BudgetExceeded("exponent too large: " + exp.str());
  return boost::multiprecision::pow(base, exp.convert_to<unsigned>());
}

inline Natural nat_pow(const Natural& base, const BigInt& exp) {
  return Natural(big_pow(base.value(), exp));
}

/// log2 of a positive big integer, accurate to ~1e-15 relative error.
inline double log2_big(const BigInt& x) {
  if (x <= 0) throw InvalidSpec("log2 of non-positive value");
  const auto bits = boost::multiprecision::msb(x);  // floor(log2 x)
  if (bits <= 52) return std::log2(x.convert_to<double>());
  // Normalize the top 53 bits into a double mantissa.
  const BigInt top = x >> (bits - 52);
  return static_cast<double>(bits - 52) + std::log2(top.convert_to<double>());
}

inline double log2_nat(const Natural& x) { return log2_big(x.value()); }

/// Decimal digit count, used for evaluation value caps.
inline std::size_t decimal_digits(const BigInt& x) {
  if (x == 0) return 1;
  // bits/log2(10) underestimates by at most one digit; exact enough for caps.
  const auto bits = boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1;
  return static_cast<std::size_t>(static_cast<double>(bits) / 3.321928094887362) + 1;
}

}  // namespace monoidlab
