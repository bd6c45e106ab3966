// Cayley-graph geometry: balls around the identity, exact geodesic length via
// bidirectional breadth-first search, graph distance, fellow-traveler
// constants, and the ball cache file format.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thompson/element.hpp"
#include "thompson/errors.hpp"
#include "thompson/word.hpp"

namespace thompson {

struct SearchLimits {
  int max_radius = 9;
  std::size_t max_members = 20'000'000;

  // THOMPSON_MAX_BALL overrides the member cap.
  static SearchLimits from_env() {
    SearchLimits limits;
    if (const char* v = std::getenv("THOMPSON_MAX_BALL")) {
      char* end = nullptr;
      unsigned long long n = std::strtoull(v, &end, 10);
      if (end && *end == '\0' && n > 0) limits.max_members = static_cast<std::size_t>(n);
    }
    return limits;
  }
};

namespace detail {

inline const std::array<GroupElement, 4>& generator_elements() {
  static const std::array<GroupElement, 4> gens = {
      generator_element(Generator::X0), generator_element(Generator::X1),
      generator_element(Generator::X0Inv), generator_element(Generator::X1Inv)};
  return gens;
}

// Exact distances from base out to the given radius, keyed by packed key.
// Expansion is layer by layer in insertion order, so the result is
// deterministic.
inline std::unordered_map<std::string, std::uint16_t> distances_from(const GroupElement& base,
                                                                     int radius,
                                                                     const SearchLimits& limits) {
  if (radius > limits.max_radius)
    throw ResourceLimitError("requested radius " + std::to_string(radius) +
                             " exceeds the configured maximum " +
                             std::to_string(limits.max_radius));
  std::unordered_map<std::string, std::uint16_t> dist;
  std::vector<GroupElement> frontier{base};
  dist.emplace(packed_key(base), 0);
  for (int r = 1; r <= radius; ++r) {
    std::vector<GroupElement> next;
    for (const GroupElement& e : frontier) {
      for (const GroupElement& s : generator_elements()) {
        GroupElement n = compose(e, s);
        auto [it, inserted] = dist.emplace(packed_key(n), static_cast<std::uint16_t>(r));
        if (inserted) {
          if (dist.size() > limits.max_members)
            throw ResourceLimitError("ball construction exceeded the member cap of " +
                                     std::to_string(limits.max_members));
          next.push_back(std::move(n));
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace detail

// All elements at graph distance <= radius from the identity, with their exact
// lengths. Keys are packed element encodings.
class Ball {
 public:
  Ball(int radius, std::unordered_map<std::string, std::uint16_t> lengths)
      : radius_(radius), lengths_(std::move(lengths)) {}

  int radius() const { return radius_; }
  std::size_t size() const { return lengths_.size(); }

  bool contains(const GroupElement& g) const { return lengths_.count(packed_key(g)) != 0; }
  bool contains_key(const std::string& key) const { return lengths_.count(key) != 0; }

  std::uint16_t length_of(const GroupElement& g) const {
    auto it = lengths_.find(packed_key(g));
    if (it == lengths_.end()) throw std::out_of_range("element is outside this ball");
    return it->second;
  }

  const std::unordered_map<std::string, std::uint16_t>& members() const { return lengths_; }

  GroupElement element_of(const std::string& key) const { return element_from_packed_key(key); }

 private:
  int radius_;
  std::unordered_map<std::string, std::uint16_t> lengths_;
};

inline Ball ball(int radius, const SearchLimits& limits = SearchLimits{}) {
  if (radius < 0) throw std::invalid_argument("ball radius must be non-negative");
  return Ball(radius, detail::distances_from(GroupElement::identity(), radius, limits));
}

// Exact word-metric length by bidirectional search meeting in the middle.
// Forward moves right-multiply by generators from the identity; backward moves
// do the same from g.
inline std::size_t geodesic_length(const GroupElement& g,
                                   const SearchLimits& limits = SearchLimits{}) {
  if (g.is_identity()) return 0;

  struct Side {
    std::unordered_map<std::string, std::uint16_t> dist;
    std::vector<GroupElement> frontier;
    int radius = 0;
  };
  Side fwd, bwd;
  fwd.frontier.push_back(GroupElement::identity());
  fwd.dist.emplace(packed_key(GroupElement::identity()), 0);
  bwd.frontier.push_back(g);
  bwd.dist.emplace(packed_key(g), 0);

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::size_t members = 2;

  auto expand = [&](Side& side, const Side& other) {
    std::vector<GroupElement> next;
    ++side.radius;
    for (const GroupElement& e : side.frontier) {
      for (const GroupElement& s : detail::generator_elements()) {
        GroupElement n = compose(e, s);
        std::string key = packed_key(n);
        auto [it, inserted] = side.dist.emplace(std::move(key), static_cast<std::uint16_t>(side.radius));
        if (!inserted) continue;
        if (++members > limits.max_members)
          throw ResourceLimitError("bidirectional search exceeded the member cap of " +
                                   std::to_string(limits.max_members));
        auto hit = other.dist.find(it->first);
        if (hit != other.dist.end()) {
          std::size_t total = static_cast<std::size_t>(side.radius) + hit->second;
          if (total < best) best = total;
        }
        next.push_back(std::move(n));
      }
    }
    side.frontier = std::move(next);
  };

  // Once both completed radii bracket best, no shorter path can exist.
  while (best > static_cast<std::size_t>(fwd.radius) + static_cast<std::size_t>(bwd.radius) + 1) {
    Side& smaller = fwd.frontier.size() <= bwd.frontier.size() ? fwd : bwd;
    Side& larger = (&smaller == &fwd) ? bwd : fwd;
    if (smaller.radius < limits.max_radius)
      expand(smaller, larger);
    else if (larger.radius < limits.max_radius)
      expand(larger, smaller);
    else if (best != std::numeric_limits<std::size_t>::max())
      break;
    else
      throw ResourceLimitError(
          "bidirectional search hit the radius cap without meeting; raise the radius limit");
  }
  return best;
}

inline std::size_t cayley_distance(const GroupElement& g, const GroupElement& h,
                                   const SearchLimits& limits = SearchLimits{}) {
  return geodesic_length(compose(invert(g), h), limits);
}

// Elements represented by every prefix of w, from the identity to w itself.
inline std::vector<GroupElement> prefix_elements(const Word& w) {
  std::vector<GroupElement> out;
  out.reserve(w.size() + 1);
  out.push_back(GroupElement::identity());
  for (Generator s : w) out.push_back(compose(out.back(), generator_element(s)));
  return out;
}

// max over t of the graph distance between same-time prefixes of w and v.
inline std::size_t fellow_traveler_constant(const Word& w, const Word& v,
                                            const SearchLimits& limits = SearchLimits{}) {
  std::vector<GroupElement> we = prefix_elements(w);
  std::vector<GroupElement> ve = prefix_elements(v);
  std::size_t constant = 0;
  for (std::size_t t = 0; t <= std::max(w.size(), v.size()); ++t) {
    const GroupElement& a = we[std::min(t, w.size())];
    const GroupElement& b = ve[std::min(t, v.size())];
    constant = std::max(constant, cayley_distance(a, b, limits));
  }
  return constant;
}

// Cache format: header "thompson-ball v1 radius=R", then one "hexkey length"
// line per member, sorted by length then key.
inline void save_ball(const Ball& b, std::ostream& os) {
  os << "thompson-ball v1 radius=" << b.radius() << "\n";
  std::vector<std::pair<std::string, std::uint16_t>> rows;
  rows.reserve(b.size());
  for (const auto& [key, len] : b.members()) {
    std::string hex;
    hex.reserve(2 * key.size());
    static const char* digits = "0123456789abcdef";
    for (unsigned char c : key) {
      hex.push_back(digits[c >> 4]);
      hex.push_back(digits[c & 0xf]);
    }
    rows.emplace_back(std::move(hex), len);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  for (const auto& [hex, len] : rows) os << hex << " " << len << "\n";
}

inline void save_ball(const Ball& b, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open ball cache for writing: " + path);
  save_ball(b, os);
}

inline Ball load_ball(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("thompson-ball v1 radius=", 0) != 0)
    throw ValidationError("bad ball cache header");
  int radius = std::atoi(header.c_str() + std::string("thompson-ball v1 radius=").size());
  std::unordered_map<std::string, std::uint16_t> lengths;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto space = line.find(' ');
    if (space == std::string::npos)
      throw ValidationError("bad ball cache line " + std::to_string(lineno));
    GroupElement e = element_from_hex_key(line.substr(0, space));
    int len = std::atoi(line.c_str() + space + 1);
    if (len < 0 || len > radius)
      throw ValidationError("ball cache length out of range on line " + std::to_string(lineno));
    lengths.emplace(packed_key(e), static_cast<std::uint16_t>(len));
  }
  if (!lengths.count(packed_key(GroupElement::identity())))
    throw ValidationError("ball cache is missing the identity");
  return Ball(radius, std::move(lengths));
}

inline Ball load_ball(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open ball cache: " + path);
  return load_ball(is);
}

}  // namespace thompson
