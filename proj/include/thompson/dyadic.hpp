// Exact dyadic rationals in [0,1] with arbitrary-precision numerators.
#pragma once

#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "thompson/errors.hpp"

namespace thompson {

using BigInt = boost::multiprecision::cpp_int;

// value = numerator / 2^exponent, kept in [0,1].
// Canonical form: numerator odd, or the value is 0 (0/2^0) or 1 (1/2^0).
class DyadicRational {
 public:
  DyadicRational() : num_(0), exp_(0) {}

  DyadicRational(BigInt numerator, unsigned exponent) : num_(std::move(numerator)), exp_(exponent) {
    if (num_ < 0) throw std::invalid_argument("dyadic numerator must be non-negative");
    normalize();
    if (num_ > (BigInt(1) << exp_)) throw std::invalid_argument("dyadic value exceeds 1");
  }

  static DyadicRational zero() { return DyadicRational(); }
  static DyadicRational one() { return DyadicRational(1, 0); }
  static DyadicRational half() { return DyadicRational(1, 1); }

  const BigInt& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && exp_ == 0; }

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }

  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
    // Compare a.num * 2^(E-a.exp) with b.num * 2^(E-b.exp) at E = max exponent.
    unsigned e = std::max(a.exp_, b.exp_);
    BigInt lhs = a.num_ << (e - a.exp_);
    BigInt rhs = b.num_ << (e - b.exp_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
    unsigned e = std::max(a.exp_, b.exp_);
    return DyadicRational((a.num_ << (e - a.exp_)) + (b.num_ << (e - b.exp_)), e);
  }

  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
    unsigned e = std::max(a.exp_, b.exp_);
    BigInt lhs = a.num_ << (e - a.exp_);
    BigInt rhs = b.num_ << (e - b.exp_);
    if (lhs < rhs) throw std::invalid_argument("dyadic subtraction would go negative");
    return DyadicRational(lhs - rhs, e);
  }

  friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
    return DyadicRational(a.num_ * b.num_, a.exp_ + b.exp_);
  }

  // value * 2^e; the result must stay within [0,1].
  DyadicRational shifted(int e) const {
    if (e >= 0) {
      unsigned ue = static_cast<unsigned>(e);
      if (exp_ >= ue) return DyadicRational(num_, exp_ - ue);
      return DyadicRational(num_ << (ue - exp_), 0);
    }
    return DyadicRational(num_, exp_ + static_cast<unsigned>(-e));
  }

  DyadicRational halved() const { return DyadicRational(num_, exp_ + 1); }

  // Canonical printing: "num/2^exp"; whole values print as "0" / "1".
  std::string to_string() const {
    if (is_zero()) return "0";
    if (is_one()) return "1";
    return num_.str() + "/2^" + std::to_string(exp_);
  }

  // Accepts "0", "1", "num/2^exp", and "num/den" with den a power of two.
  static DyadicRational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      if (s == "0") return zero();
      if (s == "1") return one();
      throw ParseError("expected a dyadic rational, got '" + s + "'", 0);
    }
    BigInt num = parse_big(s.substr(0, slash), 0);
    std::string den = s.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) {
      char* end = nullptr;
      unsigned long e = std::strtoul(den.c_str() + 2, &end, 10);
      if (end == den.c_str() + 2 || *end != '\0')
        throw ParseError("bad exponent in dyadic denominator", slash + 3);
      return DyadicRational(num, static_cast<unsigned>(e));
    }
    BigInt d = parse_big(den, slash + 1);
    if (d <= 0) throw ParseError("denominator must be positive", slash + 1);
    unsigned e = 0;
    while ((d & 1) == 0) {
      d >>= 1;
      ++e;
    }
    if (d != 1) throw ParseError("denominator is not a power of two", slash + 1);
    return DyadicRational(num, e);
  }

 private:
  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --exp_;
    }
  }

  static BigInt parse_big(const std::string& s, std::size_t at) {
    if (s.empty()) throw ParseError("empty integer", at);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw ParseError("invalid digit in integer", at + i);
    return BigInt(s);
  }

  BigInt num_;
  unsigned exp_;
};

}  // namespace thompson
