#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "thompson/action.hpp"
#include "thompson/harness.hpp"

using namespace thompson;

TEST_CASE("generator action on named vertices") {
  GroupElement x0 = generator_element(Generator::X0);
  GroupElement x1 = generator_element(Generator::X1);
  CHECK(act_on_vertex(x0, VertexAddress::root()) == VertexAddress::parse("1"));
  CHECK(act_on_vertex(x1, VertexAddress::parse("10")) == pivot_vertex());
  for (std::size_t p = 0; p <= 8; ++p) {
    VertexAddress v(std::vector<std::uint8_t>(p, 0));
    CHECK(act_on_vertex(x1, v) == v);
  }
}

TEST_CASE("per-letter positions agree with acting by the evaluated prefix") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 40; ++i) {
    Word w = oracles::random_word(rng, 12);
    VertexAddress v = oracles::random_address(rng, 8);
    TraceReport r = trace(w, {v});
    for (std::size_t t = 0; t <= w.size(); ++t)
      CHECK(r.position(v, t) == act_on_vertex(evaluate_word(prefix(w, t)), v));
  }
}

TEST_CASE("positions agree with the direct formula oracle on midpoints") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 60; ++i) {
    Word w = oracles::random_word(rng, 15);
    VertexAddress v = oracles::random_address(rng, 8);
    TraceReport r = trace(w, {v});
    CHECK(midpoint(r.position(v, w.size())) == oracles::direct_word(w, midpoint(v)));
  }
}

TEST_CASE("empty-word trace") {
  VertexAddress v = VertexAddress::parse("01");
  TraceReport r = trace(Word{}, {v});
  CHECK(r.steps() == 1);
  CHECK(r.position(v, 0) == v);
  CHECK(r.events().empty());
}

TEST_CASE("family trace: counters, events, distances at k=2") {
  TrackedSets s = tracked_sets(2);
  Word f2 = family_word(FamilyKind::F, 2);
  CHECK(word_to_string(f2) == "ABaaaaBAA");
  TraceReport r = trace(f2, {s.v_a, s.v_b}, s.a_union_b());

  Counters c0 = r.counters(0);
  CHECK(c0.left == 2);
  CHECK(c0.right == 1);
  CHECK(c0.interior == 0);

  REQUIRE(r.events().size() == 2);
  CHECK(r.events()[0].time == 2);
  CHECK(r.events()[0].kind == EventKind::MadeInterior);
  CHECK(r.events()[0].vertex == s.v_b);
  CHECK(r.events()[1].time == 7);
  CHECK(r.events()[1].kind == EventKind::MadeInterior);
  CHECK(r.events()[1].vertex == s.v_a);

  CHECK(interval_event_counts(r, 0, 2, s.a_set) == std::pair<int, int>{0, 0});
  CHECK(interval_event_counts(r, 0, 2, {s.v_b}) == std::pair<int, int>{1, 0});
  CHECK_THROWS(interval_event_counts(r, 3, 2, s.a_set));

  auto da = pivot_distance_series(r, s.v_a);
  auto db = pivot_distance_series(r, s.v_b);
  CHECK(da[0] == 3);  // k+1
  CHECK(db[0] == 1);  // k-1
}

TEST_CASE("u-prefix events at k=2") {
  TrackedSets s = tracked_sets(2);
  Word g2 = family_word(FamilyKind::G, 2);
  TraceReport r = trace(g2, {s.v_a, s.v_b});
  REQUIRE(r.events().size() == 2);
  CHECK(r.events()[0].time == 4);   // k+2
  CHECK(r.events()[0].vertex == s.v_a);
  CHECK(r.events()[1].time == 8);   // 3k+2
  CHECK(r.events()[1].vertex == s.v_b);
}

TEST_CASE("pivot distance series of the empty word is constant; unknown vertex rejected") {
  VertexAddress v = VertexAddress::parse("101");
  TraceReport r = trace(Word{}, {v});
  // depth 3 + depth 1 - 2 * (common prefix 1)
  CHECK(pivot_distance_series(r, v) == std::vector<std::size_t>{2});
  CHECK_THROWS_AS(r.position(VertexAddress::parse("0"), 0), std::out_of_range);
}

TEST_CASE("letter tallies") {
  Word f2 = family_word(FamilyKind::F, 2);
  LetterTally full = count_letters(f2, 0, f2.size());
  CHECK(full.of(Generator::X0Inv) == 3);
  CHECK(full.of(Generator::X1Inv) == 2);
  CHECK(full.of(Generator::X0) == 4);
  CHECK(full.of(Generator::X1) == 0);
  CHECK(full.total() == f2.size());

  LetterTally empty = count_letters(f2, 4, 4);
  CHECK(empty.total() == 0);

  Word g2 = family_word(FamilyKind::G, 2);
  LetterTally head = count_letters(g2, 0, 3);
  CHECK(head.of(Generator::X0) == 3);
  CHECK(head.total() == 3);

  CHECK_THROWS(count_letters(f2, 0, f2.size() + 1));
}

TEST_CASE("infix order and midpoints are preserved by the action") {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 400; ++i) {
    GroupElement f = evaluate_word(oracles::random_word(rng, 10));
    VertexAddress u = oracles::random_address(rng, 9);
    VertexAddress v = oracles::random_address(rng, 9);
    CHECK(infix_compare(act_on_vertex(f, u), act_on_vertex(f, v)) == infix_compare(u, v));
    CHECK(midpoint(act_on_vertex(f, u)) == pl_apply(pl_of_element(f), midpoint(u)));
  }
}

TEST_CASE("letter-level transition laws hold on random traces") {
  std::mt19937_64 rng(61);
  TrackedSets s = tracked_sets(3);
  auto traced = s.a_union_b();
  traced.push_back(s.v_a);
  traced.push_back(s.v_b);
  for (int i = 0; i < 60; ++i) {
    Word w = oracles::random_word(rng, 25);
    TraceReport r = trace(w, traced, s.a_union_b());
    int prev_interior = r.counters(0).interior;
    for (std::size_t t = 1; t <= w.size(); ++t) {
      Counters c = r.counters(t);
      CHECK(c.total() == 5);  // 2k-1 at k=3
      CHECK(std::abs(c.interior - prev_interior) <= 1);
      if (is_x0_letter(w[t - 1])) {
        CHECK(c.interior == prev_interior);
        for (const auto& v : traced)
          CHECK((r.region(v, t) == RegionClass::Interior) ==
                (r.region(v, t - 1) == RegionClass::Interior));
      }
      if (is_x1_letter(w[t - 1])) {
        for (const auto& v : traced) {
          bool l2r = r.region(v, t - 1) == RegionClass::LeftSpine &&
                     r.region(v, t) == RegionClass::RightSpine;
          bool r2l = r.region(v, t - 1) == RegionClass::RightSpine &&
                     r.region(v, t) == RegionClass::LeftSpine;
          CHECK(!l2r);
          CHECK(!r2l);
        }
      }
      prev_interior = c.interior;
    }
    // interior events happen exactly on x1^-1 letters applied at the pivot
    for (const auto& e : r.events()) {
      if (e.kind != EventKind::MadeInterior) continue;
      CHECK(w[e.time - 1] == Generator::X1Inv);
      CHECK(r.position(e.vertex, e.time - 1) == pivot_vertex());
    }
    for (const auto& v : traced)
      for (std::size_t t = 1; t <= w.size(); ++t)
        if (w[t - 1] == Generator::X1Inv && r.position(v, t - 1) == pivot_vertex())
          CHECK(r.position(v, t) == post_pivot_vertex());
  }
}

TEST_CASE("trace JSON schema") {
  TrackedSets s = tracked_sets(2);
  Word f2 = family_word(FamilyKind::F, 2);
  TraceReport r = trace(f2, {s.v_a, s.v_b}, s.a_union_b());
  nlohmann::ordered_json j = trace_to_json(r);

  CHECK(j["word"] == "ABaaaaBAA");
  CHECK(j["tracked"].size() == 2);
  CHECK(j["tracked"][0] == "00");
  REQUIRE(j["steps"].size() == 10);
  CHECK(j["steps"][0]["t"] == 0);
  CHECK(j["steps"][0]["letter"].is_null());
  CHECK(j["steps"][1]["letter"] == "A");
  CHECK(j["steps"][0]["positions"]["00"] == "00");
  CHECK(j["steps"][0]["regions"]["00"] == "LeftSpine");
  CHECK(j["steps"][0]["d"]["00"] == 3);
  CHECK(j["steps"][0]["C"]["L"] == 2);
  CHECK(j["steps"][0]["C"]["R"] == 1);
  CHECK(j["steps"][0]["C"]["I"] == 0);
  REQUIRE(j["events"].size() == 2);
  CHECK(j["events"][0]["vertex"] == "11");
  CHECK(j["events"][0]["time"] == 2);
  CHECK(j["events"][0]["kind"] == "MadeInterior");

  // determinism: a second run serializes byte-identically
  TraceReport r2 = trace(f2, {s.v_a, s.v_b}, s.a_union_b());
  CHECK(trace_to_json(r2).dump() == j.dump());
}
