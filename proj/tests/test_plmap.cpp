#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "thompson/action.hpp"
#include "thompson/plmap.hpp"

using namespace thompson;

TEST_CASE("generator maps agree with their case-by-case formulas") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    DyadicRational x = oracles::random_interior_dyadic(rng, 16);
    CHECK(pl_apply(generator_pl(Generator::X0), x) == oracles::direct_x0(x));
    CHECK(pl_apply(generator_pl(Generator::X1), x) == oracles::direct_x1(x));
    CHECK(pl_apply(generator_pl(Generator::X0Inv), x) == oracles::direct_x0inv(x));
    CHECK(pl_apply(generator_pl(Generator::X1Inv), x) == oracles::direct_x1inv(x));
  }
}

TEST_CASE("named application values") {
  CHECK(pl_apply(generator_pl(Generator::X0), DyadicRational(1, 2)) == DyadicRational(1, 1));
  CHECK(pl_apply(generator_pl(Generator::X1), DyadicRational(5, 3)) == DyadicRational(3, 2));
  std::mt19937_64 rng(37);
  for (int i = 0; i < 50; ++i) {
    DyadicRational x = oracles::random_interior_dyadic(rng, 12);
    CHECK(pl_apply(PLMap::identity(), x) == x);
  }
  CHECK(pl_apply(PLMap::identity(), DyadicRational::zero()) == DyadicRational::zero());
  CHECK(pl_apply(PLMap::identity(), DyadicRational::one()) == DyadicRational::one());
}

TEST_CASE("composition and inversion are exact") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    Word w = oracles::random_word(rng, 10);
    PLMap m = pl_of_element(evaluate_word(w));
    CHECK(pl_compose(m, pl_invert(m)) == PLMap::identity());
    DyadicRational x = oracles::random_interior_dyadic(rng, 12);
    CHECK(pl_apply(m, x) == oracles::direct_word(w, x));
  }

  // pl_compose(m1, m2)(x) = m2(m1(x)) pointwise
  for (int i = 0; i < 50; ++i) {
    Word w1 = oracles::random_word(rng, 8), w2 = oracles::random_word(rng, 8);
    PLMap m1 = pl_of_element(evaluate_word(w1));
    PLMap m2 = pl_of_element(evaluate_word(w2));
    PLMap c = pl_compose(m1, m2);
    DyadicRational x = oracles::random_interior_dyadic(rng, 10);
    CHECK(pl_apply(c, x) == pl_apply(m2, pl_apply(m1, x)));
  }
}

TEST_CASE("map invariants hold on every constructed element") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    PLMap m = pl_of_element(evaluate_word(oracles::random_word(rng, 14)));
    const auto& pts = m.breakpoints();
    CHECK(pts.front().x.is_zero());
    CHECK(pts.front().y.is_zero());
    CHECK(pts.back().x.is_one());
    CHECK(pts.back().y.is_one());
    for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
      CHECK(pts[j].x < pts[j + 1].x);
      CHECK(pts[j].y < pts[j + 1].y);
      CHECK_NOTHROW(m.slope_exponent(j));  // power-of-two slope
    }
    // canonical: interior points are genuine slope changes
    for (std::size_t j = 1; j + 1 < pts.size(); ++j)
      CHECK(m.slope_exponent(j - 1) != m.slope_exponent(j));
  }
}

TEST_CASE("collinear points are canonicalized away") {
  auto d = [](long n, unsigned e) { return DyadicRational(n, e); };
  PLMap m = PLMap::from_points(
      {{d(0, 0), d(0, 0)}, {d(1, 2), d(1, 2)}, {d(1, 1), d(1, 1)}, {d(1, 0), d(1, 0)}});
  CHECK(m == PLMap::identity());
  CHECK(m.breakpoints().size() == 2);
}

TEST_CASE("construction rejects malformed breakpoint lists") {
  auto d = [](long n, unsigned e) { return DyadicRational(n, e); };
  CHECK_THROWS(PLMap::from_points({{d(0, 0), d(0, 0)}}));
  CHECK_THROWS(PLMap::from_points({{d(1, 2), d(0, 0)}, {d(1, 0), d(1, 0)}}));
  CHECK_THROWS(PLMap::from_points(
      {{d(0, 0), d(0, 0)}, {d(1, 1), d(1, 1)}, {d(1, 2), d(3, 2)}, {d(1, 0), d(1, 0)}}));
  // slope 3 then 1/3-ish: not powers of two
  CHECK_THROWS(PLMap::from_points({{d(0, 0), d(0, 0)}, {d(1, 2), d(3, 2)}, {d(1, 0), d(1, 0)}}));
}
