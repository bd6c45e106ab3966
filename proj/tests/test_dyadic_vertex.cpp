#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oracles.hpp"
#include "thompson/dyadic.hpp"
#include "thompson/vertex.hpp"

using namespace thompson;

TEST_CASE("dyadic canonical form and textual round trips") {
  CHECK(DyadicRational(2, 2) == DyadicRational(1, 1));
  CHECK(DyadicRational(0, 7) == DyadicRational::zero());
  CHECK(DyadicRational(8, 3) == DyadicRational::one());
  CHECK(DyadicRational(5, 3).to_string() == "5/2^3");
  CHECK(DyadicRational::zero().to_string() == "0");
  CHECK(DyadicRational::one().to_string() == "1");
  CHECK(DyadicRational::parse("5/2^3") == DyadicRational(5, 3));
  CHECK(DyadicRational::parse("5/8") == DyadicRational(5, 3));
  CHECK(DyadicRational::parse("0") == DyadicRational::zero());
  CHECK_THROWS_AS(DyadicRational::parse("5/6"), ParseError);
  CHECK_THROWS_AS(DyadicRational::parse("x"), ParseError);
  CHECK_THROWS(DyadicRational(9, 3));  // 9/8 > 1
}

TEST_CASE("dyadic arithmetic is exact") {
  DyadicRational a(3, 3), b(1, 2);  // 3/8, 1/4
  CHECK(a + b == DyadicRational(5, 3));
  CHECK(a - b == DyadicRational(1, 3));
  CHECK(a.shifted(1) == DyadicRational(3, 2));
  CHECK(a.halved() == DyadicRational(3, 4));
  CHECK(a * b == DyadicRational(3, 5));
  CHECK(a < DyadicRational(1, 1));
  CHECK_THROWS(b - a);
}

TEST_CASE("address and interval conversions match the tree labeling") {
  // root <-> [0,1]; recursing halves the parent interval
  CHECK(address_to_interval(VertexAddress::root()) == StandardDyadicInterval(0, 0));
  CHECK(address_to_interval(VertexAddress::parse("10")) == StandardDyadicInterval(2, 2));
  CHECK(address_to_interval(VertexAddress::parse("0")) == StandardDyadicInterval(0, 1));

  CHECK(interval_to_address(StandardDyadicInterval(0, 0)) == VertexAddress::root());
  CHECK(interval_to_address(StandardDyadicInterval(3, 2)) == VertexAddress::parse("11"));
  CHECK(interval_to_address(StandardDyadicInterval(1, 2)) == VertexAddress::parse("01"));

  CHECK(StandardDyadicInterval(2, 2).to_string() == "[2/2^2,3/2^2]");
  CHECK(StandardDyadicInterval::parse("[2/2^2,3/2^2]") == StandardDyadicInterval(2, 2));
  CHECK(StandardDyadicInterval::parse("[1/2,3/4]") == StandardDyadicInterval(2, 2));
  CHECK_THROWS(StandardDyadicInterval(4, 2));  // a > 2^n - 1
  CHECK_THROWS_AS(StandardDyadicInterval::parse("[1/8,3/8]"), ParseError);
}

TEST_CASE("round trips are exact for every address up to depth 12") {
  std::vector<VertexAddress> level{VertexAddress::root()};
  for (int depth = 0; depth <= 12; ++depth) {
    std::vector<VertexAddress> next;
    for (const auto& v : level) {
      CHECK(interval_to_address(address_to_interval(v)) == v);
      CHECK(vertex_of_midpoint(midpoint(v)) == v);
      if (depth < 12) {
        next.push_back(v.left_child());
        next.push_back(v.right_child());
      }
    }
    level = std::move(next);
  }
}

TEST_CASE("midpoints label vertices") {
  CHECK(midpoint(StandardDyadicInterval(0, 0)) == DyadicRational(1, 1));
  CHECK(midpoint(StandardDyadicInterval(2, 2)) == DyadicRational(5, 3));
  CHECK(midpoint(StandardDyadicInterval(3, 2)) == DyadicRational(7, 3));

  CHECK(vertex_of_midpoint(DyadicRational(1, 1)) == VertexAddress::root());
  CHECK(vertex_of_midpoint(DyadicRational(5, 3)) == VertexAddress::parse("10"));
  // 7/16 labels [3/8,1/2]
  CHECK(vertex_of_midpoint(DyadicRational(7, 4)) == VertexAddress::parse("011"));
  CHECK(midpoint(VertexAddress::parse("011")) == DyadicRational(7, 4));

  CHECK_THROWS(vertex_of_midpoint(DyadicRational::zero()));
  CHECK_THROWS(vertex_of_midpoint(DyadicRational::one()));
}

TEST_CASE("infix order examples") {
  CHECK(infix_compare(VertexAddress::parse("0"), VertexAddress::root()) == std::strong_ordering::less);
  CHECK(infix_compare(VertexAddress::parse("10"), VertexAddress::parse("10")) ==
        std::strong_ordering::equal);
  CHECK(infix_compare(VertexAddress::parse("10"), VertexAddress::parse("11")) ==
        std::strong_ordering::less);
}

TEST_CASE("infix order agrees with midpoint order on random pairs") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    VertexAddress u = oracles::random_address(rng, 14);
    VertexAddress v = oracles::random_address(rng, 14);
    auto by_infix = infix_compare(u, v);
    auto by_midpoint = midpoint(u) <=> midpoint(v);
    CHECK(by_infix == by_midpoint);
  }
}

TEST_CASE("every address falls in exactly one region; spines are thin") {
  CHECK(region_of(VertexAddress::root()) == RegionClass::LeftSpine);
  CHECK(region_of(VertexAddress::parse("10")) == RegionClass::Interior);
  CHECK(region_of(VertexAddress::parse("11")) == RegionClass::RightSpine);

  for (int depth = 0; depth <= 8; ++depth) {
    int exterior = 0, total = 0;
    for (int mask = 0; mask < (1 << depth); ++mask) {
      std::vector<std::uint8_t> bits(depth);
      for (int i = 0; i < depth; ++i) bits[i] = (mask >> i) & 1;
      if (is_exterior(VertexAddress(bits))) ++exterior;
      ++total;
    }
    CHECK(total == (1 << depth));
    CHECK(exterior == (depth == 0 ? 1 : 2));
  }
}

TEST_CASE("tree distance examples and metric laws") {
  VertexAddress root = VertexAddress::root();
  CHECK(tree_distance(root, VertexAddress::parse("1")) == 1);
  CHECK(tree_distance(VertexAddress::parse("0"), VertexAddress::parse("1")) == 2);
  for (std::size_t k = 1; k <= 8; ++k) {
    VertexAddress deep(std::vector<std::uint8_t>(k, 0));
    CHECK(tree_distance(deep, VertexAddress::parse("1")) == k + 1);
  }

  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    VertexAddress a = oracles::random_address(rng, 12);
    VertexAddress b = oracles::random_address(rng, 12);
    VertexAddress c = oracles::random_address(rng, 12);
    CHECK(tree_distance(a, b) == tree_distance(b, a));
    CHECK((tree_distance(a, b) == 0) == (a == b));
    CHECK(tree_distance(a, c) <= tree_distance(a, b) + tree_distance(b, c));
  }
}

TEST_CASE("address parsing rejects foreign characters") {
  CHECK_THROWS_AS(VertexAddress::parse("01x"), ParseError);
  CHECK(VertexAddress::parse("").depth() == 0);
}
