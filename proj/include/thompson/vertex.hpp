// Vertices of the infinite binary tree: addresses, standard dyadic intervals,
// midpoint labels, infix order, spine classification, tree distance.
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/dyadic.hpp"
#include "thompson/errors.hpp"

namespace thompson {

// Path from the root: 0 = left child, 1 = right child. Empty = root.
class VertexAddress {
 public:
  VertexAddress() = default;
  explicit VertexAddress(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  static VertexAddress root() { return VertexAddress(); }

  std::size_t depth() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t bit(std::size_t i) const { return bits_[i]; }

  VertexAddress child(std::uint8_t b) const {
    auto bits = bits_;
    bits.push_back(b ? 1 : 0);
    return VertexAddress(std::move(bits));
  }
  VertexAddress left_child() const { return child(0); }
  VertexAddress right_child() const { return child(1); }

  // String over {0,1}, 0 = left; root is the empty string.
  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  static VertexAddress parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '0')
        bits.push_back(0);
      else if (text[i] == '1')
        bits.push_back(1);
      else
        throw ParseError("vertex address must use digits 0 (left) and 1 (right)", i);
    }
    return VertexAddress(std::move(bits));
  }

  friend bool operator==(const VertexAddress&, const VertexAddress&) = default;
  // Lexicographic-by-bits order for use as a container key (not the infix order).
  friend auto operator<=>(const VertexAddress&, const VertexAddress&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// [a/2^n, (a+1)/2^n] with a <= 2^n - 1.
struct StandardDyadicInterval {
  BigInt a;
  unsigned n = 0;

  StandardDyadicInterval() = default;
  StandardDyadicInterval(BigInt a_, unsigned n_) : a(std::move(a_)), n(n_) {
    if (a < 0 || a > (BigInt(1) << n) - 1)
      throw std::invalid_argument("standard dyadic interval requires 0 <= a <= 2^n - 1");
  }

  static StandardDyadicInterval whole() { return StandardDyadicInterval(0, 0); }

  DyadicRational lower() const { return DyadicRational(a, n); }
  DyadicRational upper() const { return DyadicRational(a + 1, n); }

  friend bool operator==(const StandardDyadicInterval& x, const StandardDyadicInterval& y) {
    return x.n == y.n && x.a == y.a;
  }

  std::string to_string() const {
    return "[" + a.str() + "/2^" + std::to_string(n) + "," + BigInt(a + 1).str() + "/2^" +
           std::to_string(n) + "]";
  }

  static StandardDyadicInterval parse(std::string_view text) {
    std::string s(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
      throw ParseError("interval must look like [a/2^n,(a+1)/2^n]", 0);
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("interval is missing a comma", 0);
    DyadicRational lo = DyadicRational::parse(s.substr(1, comma - 1));
    DyadicRational hi = DyadicRational::parse(s.substr(comma + 1, s.size() - comma - 2));
    // Width must be 2^-n and the left endpoint a multiple of it.
    DyadicRational width = hi - lo;
    if (width.numerator() != 1 || lo.exponent() > width.exponent())
      throw ParseError("interval is not standard dyadic", 1);
    unsigned n = width.exponent();
    BigInt a = lo.numerator() << (n - lo.exponent());
    return StandardDyadicInterval(a, n);
  }
};

enum class RegionClass { LeftSpine, RightSpine, Interior };

inline std::string to_string(RegionClass r) {
  switch (r) {
    case RegionClass::LeftSpine: return "LeftSpine";
    case RegionClass::RightSpine: return "RightSpine";
    default: return "Interior";
  }
}

inline StandardDyadicInterval address_to_interval(const VertexAddress& v) {
  BigInt a = 0;
  for (std::size_t i = 0; i < v.depth(); ++i) a = (a << 1) | (v.bit(i) ? 1 : 0);
  return StandardDyadicInterval(a, static_cast<unsigned>(v.depth()));
}

inline VertexAddress interval_to_address(const StandardDyadicInterval& I) {
  std::vector<std::uint8_t> bits(I.n);
  for (unsigned i = 0; i < I.n; ++i)
    bits[i] = boost::multiprecision::bit_test(I.a, I.n - 1 - i) ? 1 : 0;
  return VertexAddress(std::move(bits));
}

inline DyadicRational midpoint(const StandardDyadicInterval& I) {
  return DyadicRational(2 * I.a + 1, I.n + 1);
}

inline DyadicRational midpoint(const VertexAddress& v) { return midpoint(address_to_interval(v)); }

// Inverse of the midpoint labeling: defined exactly on dyadics in (0,1).
inline VertexAddress vertex_of_midpoint(const DyadicRational& d) {
  if (d.is_zero() || d.is_one())
    throw std::invalid_argument("0 and 1 are not midpoints of standard dyadic intervals");
  // Canonical d = (2a+1)/2^(n+1) is the midpoint of [a/2^n, (a+1)/2^n].
  return interval_to_address(StandardDyadicInterval((d.numerator() - 1) >> 1, d.exponent() - 1));
}

// Infix (left-to-right) order on vertices; agrees with comparing midpoints.
inline std::strong_ordering infix_compare(const VertexAddress& u, const VertexAddress& v) {
  std::size_t n = std::min(u.depth(), v.depth());
  for (std::size_t i = 0; i < n; ++i) {
    if (u.bit(i) != v.bit(i))
      return u.bit(i) < v.bit(i) ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (u.depth() == v.depth()) return std::strong_ordering::equal;
  // One is an ancestor of the other; the first extra bit says which side.
  if (u.depth() > v.depth())
    return u.bit(n) == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return v.bit(n) == 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

// All-left addresses (including the root) form the left spine; all-right the right spine.
inline RegionClass region_of(const VertexAddress& v) {
  bool all_left = true, all_right = true;
  for (std::size_t i = 0; i < v.depth(); ++i) {
    if (v.bit(i)) all_left = false;
    else all_right = false;
  }
  if (all_left) return RegionClass::LeftSpine;
  if (all_right && v.depth() > 0) return RegionClass::RightSpine;
  return RegionClass::Interior;
}

inline bool is_exterior(const VertexAddress& v) { return region_of(v) != RegionClass::Interior; }

inline std::size_t common_prefix_length(const VertexAddress& u, const VertexAddress& v) {
  std::size_t n = std::min(u.depth(), v.depth());
  std::size_t i = 0;
  while (i < n && u.bit(i) == v.bit(i)) ++i;
  return i;
}

inline std::size_t tree_distance(const VertexAddress& u, const VertexAddress& v) {
  return u.depth() + v.depth() - 2 * common_prefix_length(u, v);
}

// The unique site where interior/exterior transitions happen.
inline VertexAddress pivot_vertex() { return VertexAddress({1}); }
// Where the pivot lands when made interior: [1/2, 3/4].
inline VertexAddress post_pivot_vertex() { return VertexAddress({1, 0}); }

}  // namespace thompson
