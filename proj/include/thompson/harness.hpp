// Family word constructors, tracked vertex sets, event-order verdicts,
// near-geodesic enumeration, ShortLex tools, and the consolidated
// verification report.
#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "thompson/action.hpp"
#include "thompson/element.hpp"
#include "thompson/errors.hpp"
#include "thompson/metric.hpp"
#include "thompson/vertex.hpp"
#include "thompson/word.hpp"

namespace thompson {

// k with the derived slack constants: C = max(c, M) rounded up to even,
// l = C/2 + 1. The asymptotic regime needs k far beyond C; desk-scale runs
// record the constants without enforcing that regime.
struct FamilyParameters {
  int k;
  std::size_t c;
  std::size_t fellow_traveler_bound;  // M
  std::size_t big_c;                  // C
  std::size_t l;

  explicit FamilyParameters(int k_, std::size_t c_ = 0, std::size_t m = 1)
      : k(k_), c(c_), fellow_traveler_bound(m) {
    if (k < 2) throw std::invalid_argument("family parameter k must be at least 2");
    big_c = std::max(c, m);
    if (big_c % 2 == 1) ++big_c;
    l = big_c / 2 + 1;
  }
};

enum class FamilyKind { F, G, WPrefix, UPrefix };

// f_k = x0^-(k-1) x1^-1 x0^(2k) x1^-1 x0^-k           (length 4k+1)
// g_k = x0^(k+1)  x1^-1 x0^-(2k-1) x1^-1 x0^(k-1)     (length 4k+1)
// w_i = the (3k+1+i)-prefix of f_k, 0 <= i <= k; w_k = f_k
// u_i = the (3k+2+i)-prefix of g_k, 0 <= i <= k-1; u_(k-1) = g_k.
// The u_i tail uses the positive power of x0, the unique choice under which
// u_(k-1) coincides with g_k letter for letter.
inline Word family_word(FamilyKind kind, int k, int i = 0) {
  if (k < 2) throw std::invalid_argument("family words need k >= 2");
  auto f = [&] {
    Word w = repeated(Generator::X0Inv, static_cast<std::size_t>(k - 1));
    w.push_back(Generator::X1Inv);
    w = w + repeated(Generator::X0, static_cast<std::size_t>(2 * k));
    w.push_back(Generator::X1Inv);
    return w + repeated(Generator::X0Inv, static_cast<std::size_t>(k));
  };
  auto g = [&] {
    Word w = repeated(Generator::X0, static_cast<std::size_t>(k + 1));
    w.push_back(Generator::X1Inv);
    w = w + repeated(Generator::X0Inv, static_cast<std::size_t>(2 * k - 1));
    w.push_back(Generator::X1Inv);
    return w + repeated(Generator::X0, static_cast<std::size_t>(k - 1));
  };
  switch (kind) {
    case FamilyKind::F: return f();
    case FamilyKind::G: return g();
    case FamilyKind::WPrefix:
      if (i < 0 || i > k) throw std::invalid_argument("w-prefix index must satisfy 0 <= i <= k");
      return prefix(f(), static_cast<std::size_t>(3 * k + 1 + i));
    default:
      if (i < 0 || i > k - 1)
        throw std::invalid_argument("u-prefix index must satisfy 0 <= i <= k-1");
      return prefix(g(), static_cast<std::size_t>(3 * k + 2 + i));
  }
}

// v_a = [0, 1/2^k], v_b = [(2^k-1)/2^k, 1], A = {[0, 1/2^p] : 0 <= p <= k-1},
// B = {[(2^q-1)/2^q, 1] : 1 <= q <= k-1}.
struct TrackedSets {
  VertexAddress v_a, v_b, pivot;
  std::vector<VertexAddress> a_set, b_set;

  std::vector<VertexAddress> a_union_b() const {
    std::vector<VertexAddress> out = a_set;
    out.insert(out.end(), b_set.begin(), b_set.end());
    return out;
  }
};

inline TrackedSets tracked_sets(int k) {
  if (k < 2) throw std::invalid_argument("tracked sets need k >= 2");
  TrackedSets s;
  s.v_a = VertexAddress(std::vector<std::uint8_t>(static_cast<std::size_t>(k), 0));
  s.v_b = VertexAddress(std::vector<std::uint8_t>(static_cast<std::size_t>(k), 1));
  s.pivot = pivot_vertex();
  for (int p = 0; p <= k - 1; ++p)
    s.a_set.push_back(VertexAddress(std::vector<std::uint8_t>(static_cast<std::size_t>(p), 0)));
  for (int q = 1; q <= k - 1; ++q)
    s.b_set.push_back(VertexAddress(std::vector<std::uint8_t>(static_cast<std::size_t>(q), 1)));
  return s;
}

struct EventOrderVerdict {
  std::optional<std::size_t> first_interior_a, last_interior_a;
  std::optional<std::size_t> first_interior_b, last_interior_b;
  bool b_final_before_a_first = false;
  bool a_final_before_b_first = false;
};

inline EventOrderVerdict event_order_check(const Word& w, int k) {
  TrackedSets s = tracked_sets(k);
  TraceReport report = trace(w, {s.v_a, s.v_b});
  EventOrderVerdict v;
  for (const VertexEvent& e : report.events()) {
    if (e.kind != EventKind::MadeInterior) continue;
    auto& first = e.vertex == s.v_a ? v.first_interior_a : v.first_interior_b;
    auto& last = e.vertex == s.v_a ? v.last_interior_a : v.last_interior_b;
    if (!first) first = e.time;
    last = e.time;
  }
  v.b_final_before_a_first =
      v.last_interior_b && v.first_interior_a && *v.last_interior_b < *v.first_interior_a;
  v.a_final_before_b_first =
      v.last_interior_a && v.first_interior_b && *v.last_interior_a < *v.first_interior_b;
  return v;
}

using AlphabetOrder = std::array<Generator, 4>;

inline AlphabetOrder default_alphabet_order() {
  return {Generator::X0, Generator::X1, Generator::X0Inv, Generator::X1Inv};
}

// Shorter first; ties broken letter by letter in the given alphabet order.
inline std::strong_ordering shortlex_compare(const Word& w, const Word& v,
                                             const AlphabetOrder& order = default_alphabet_order()) {
  if (w.size() != v.size())
    return w.size() < v.size() ? std::strong_ordering::less : std::strong_ordering::greater;
  std::array<int, 4> rank{};
  for (int i = 0; i < 4; ++i) rank[static_cast<std::size_t>(order[i])] = i;
  for (std::size_t i = 0; i < w.size(); ++i) {
    int a = rank[static_cast<std::size_t>(w[i])], b = rank[static_cast<std::size_t>(v[i])];
    if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// Groups the input by represented element and keeps the ShortLex minimum of
// each group; output sorted in ShortLex order.
inline std::vector<Word> shortlex_filter(const std::vector<Word>& words,
                                         const AlphabetOrder& order = default_alphabet_order()) {
  std::map<std::string, Word> best;
  for (const Word& w : words) {
    std::string key = packed_key(evaluate_word(w));
    auto it = best.find(key);
    if (it == best.end() || shortlex_compare(w, it->second, order) < 0) best[key] = w;
  }
  std::vector<Word> out;
  out.reserve(best.size());
  for (auto& [key, w] : best) out.push_back(std::move(w));
  std::sort(out.begin(), out.end(),
            [&](const Word& a, const Word& b) { return shortlex_compare(a, b, order) < 0; });
  return out;
}

// Exactly the words w with evaluate(w) = g and |w| <= |g| + slack, in ShortLex
// order. Depth-first search over words, pruned by the exact distance from the
// current element to g.
inline std::vector<Word> enumerate_representatives(const GroupElement& g, std::size_t slack,
                                                   const SearchLimits& limits = SearchLimits{},
                                                   const AlphabetOrder& order = default_alphabet_order()) {
  std::size_t budget = geodesic_length(g, limits) + slack;
  if (budget > static_cast<std::size_t>(limits.max_radius))
    throw ResourceLimitError("representative budget " + std::to_string(budget) +
                             " exceeds the configured radius cap");
  auto dist_to_g = detail::distances_from(g, static_cast<int>(budget), limits);
  std::string target = packed_key(g);

  std::vector<Word> out;
  Word current;
  auto dfs = [&](auto&& self, const GroupElement& e) -> void {
    std::string key = packed_key(e);
    auto it = dist_to_g.find(key);
    if (it == dist_to_g.end() || current.size() + it->second > budget) return;
    if (key == target) out.push_back(current);
    if (current.size() == budget) return;
    for (Generator s : order) {
      current.push_back(s);
      self(self, compose(e, generator_element(s)));
      current.pop_back();
    }
  };
  dfs(dfs, GroupElement::identity());
  std::sort(out.begin(), out.end(),
            [&](const Word& a, const Word& b) { return shortlex_compare(a, b, order) < 0; });
  return out;
}

struct VerificationItem {
  std::string name;
  bool pass = false;
  std::string expected, actual;
  std::string note;
};

struct VerificationReport {
  int k = 0;
  std::vector<VerificationItem> items;
  std::vector<std::string> annotations;

  bool all_pass() const {
    for (const auto& item : items)
      if (!item.pass) return false;
    return true;
  }
};

struct VerifyOptions {
  bool with_geodesic = true;       // BFS-backed length item
  int max_geodesic_k = 5;          // skip the BFS item above this k
  SearchLimits limits{.max_radius = 11, .max_members = 20'000'000};
};

namespace detail {

inline void add_item(VerificationReport& report, const std::string& name, const std::string& expected,
                     const std::string& actual, const std::string& note = "") {
  report.items.push_back({name, expected == actual, expected, actual, note});
}

}  // namespace detail

// Runs the family checks for one k: element identity, word-length formulas,
// spine caret counts, geodesic length (where feasible), event times, counter
// initial values, and final interiority of the tracked vertices.
inline VerificationReport verify_family(int k, const VerifyOptions& options = VerifyOptions{}) {
  VerificationReport report;
  report.k = k;

  Word fw = family_word(FamilyKind::F, k);
  Word gw = family_word(FamilyKind::G, k);
  GroupElement fe = evaluate_word(fw);
  GroupElement ge = evaluate_word(gw);
  TrackedSets sets = tracked_sets(k);

  // (1) the two family words represent one element
  detail::add_item(report, "family words evaluate to the same element", canonical_key(fe),
                   canonical_key(ge));

  // (2) word-length formulas and prefix endpoints
  detail::add_item(report, "word length |f_k| = 4k+1", std::to_string(4 * k + 1),
                   std::to_string(fw.size()));
  {
    bool ok = true;
    std::ostringstream bad;
    for (int i = 0; i <= k; ++i)
      if (family_word(FamilyKind::WPrefix, k, i).size() != static_cast<std::size_t>(3 * k + 1 + i)) {
        ok = false;
        bad << " w_" << i;
      }
    for (int i = 0; i <= k - 1; ++i)
      if (family_word(FamilyKind::UPrefix, k, i).size() != static_cast<std::size_t>(3 * k + 2 + i)) {
        ok = false;
        bad << " u_" << i;
      }
    if (family_word(FamilyKind::WPrefix, k, k) != fw) { ok = false; bad << " w_k!=f_k"; }
    if (family_word(FamilyKind::UPrefix, k, k - 1) != gw) { ok = false; bad << " u_(k-1)!=g_k"; }
    detail::add_item(report, "prefix lengths 3k+1+i and 3k+2+i, endpoints match", "ok",
                     ok ? "ok" : "violations:" + bad.str());
  }

  // (3) side caret counts of the reduced pair, apex excluded
  {
    std::ostringstream got;
    got << fe.domain_tree().left_side_carets() << "," << fe.domain_tree().right_side_carets()
        << "," << fe.range_tree().left_side_carets() << "," << fe.range_tree().right_side_carets();
    std::ostringstream want;
    want << k + 1 << "," << k + 1 << "," << k + 1 << "," << k + 1;
    detail::add_item(report, "k+1 carets on each side of each tree", want.str(), got.str());
  }

  // (4) geodesic length via the search oracle
  if (options.with_geodesic && k <= options.max_geodesic_k) {
    std::size_t len = geodesic_length(fe, options.limits);
    detail::add_item(report, "geodesic length of the family element = 4k+1",
                     std::to_string(4 * k + 1), std::to_string(len));
  }

  // (5) interior event times
  {
    auto times = [](const TraceReport& r) {
      std::vector<std::size_t> ts;
      for (const auto& e : r.events())
        if (e.kind == EventKind::MadeInterior) ts.push_back(e.time);
      return ts;
    };
    TraceReport fr = trace(fw, {sets.v_a, sets.v_b});
    std::vector<std::size_t> want_f = {static_cast<std::size_t>(k),
                                       static_cast<std::size_t>(3 * k + 1)};
    auto got_f = times(fr);
    auto fmt = [](const std::vector<std::size_t>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + "}";
    };
    detail::add_item(report, "f_k interior events at times {k, 3k+1}", fmt(want_f), fmt(got_f));

    bool ok = true;
    std::ostringstream bad;
    std::vector<std::size_t> want_u = {static_cast<std::size_t>(k + 2),
                                       static_cast<std::size_t>(3 * k + 2)};
    for (int i = 0; i <= k - 1; ++i) {
      auto got = times(trace(family_word(FamilyKind::UPrefix, k, i), {sets.v_a, sets.v_b}));
      if (got != want_u) { ok = false; bad << " u_" << i << "=" << fmt(got); }
    }
    detail::add_item(report, "u-prefix interior events at times {k+2, 3k+2}", fmt(want_u),
                     ok ? fmt(want_u) : "violations:" + bad.str());
  }

  // (6) counter initial values and pivot distances
  {
    TraceReport r = trace(fw, {sets.v_a, sets.v_b}, sets.a_union_b());
    Counters c0 = r.counters(0);
    std::ostringstream got, want;
    got << c0.left << "," << c0.right << "," << c0.interior;
    want << k << "," << k - 1 << "," << 0;
    detail::add_item(report, "counters over A union B at t=0 are (k, k-1, 0)", want.str(),
                     got.str());
    detail::add_item(report, "d_a(0) = k+1", std::to_string(k + 1),
                     std::to_string(r.pivot_distance(sets.v_a, 0)));
    detail::add_item(report, "d_b(0) = k-1", std::to_string(k - 1),
                     std::to_string(r.pivot_distance(sets.v_b, 0)));
  }

  // (7) the w-prefixes (including f_k itself) leave v_a and v_b interior
  {
    bool ok = true;
    std::ostringstream bad;
    for (int i = 0; i <= k; ++i) {
      Word wi = family_word(FamilyKind::WPrefix, k, i);
      TraceReport r = trace(wi, {sets.v_a, sets.v_b});
      if (r.region(sets.v_a, wi.size()) != RegionClass::Interior ||
          r.region(sets.v_b, wi.size()) != RegionClass::Interior) {
        ok = false;
        bad << " w_" << i;
      }
    }
    detail::add_item(report, "w-prefixes map v_a and v_b to the interior", "ok",
                     ok ? "ok" : "violations:" + bad.str());
  }

  // Event attribution, recorded rather than asserted: the time-k event in f_k
  // belongs to v_b and the time-(3k+1) event to v_a; in g_k the order is v_a
  // at k+2, then v_b at 3k+2. Narrative descriptions of these families
  // sometimes assign the opposite vertex names to the same two times; this
  // report asserts the times and records the computed identities.
  {
    EventOrderVerdict fv = event_order_check(fw, k);
    EventOrderVerdict gv = event_order_check(gw, k);
    std::ostringstream note;
    note << "computed event attribution: f_k makes v_b interior at t="
         << (fv.first_interior_b ? std::to_string(*fv.first_interior_b) : "-")
         << " and v_a at t=" << (fv.first_interior_a ? std::to_string(*fv.first_interior_a) : "-")
         << "; g_k makes v_a interior at t="
         << (gv.first_interior_a ? std::to_string(*gv.first_interior_a) : "-")
         << " and v_b at t=" << (gv.first_interior_b ? std::to_string(*gv.first_interior_b) : "-")
         << ". Accounts that name the opposite vertex at these times swap the labels; "
            "the times themselves are asserted above.";
    report.annotations.push_back(note.str());
    report.annotations.push_back(
        "u-prefix words end in positive powers of x0; with a negative tail the identity "
        "u_(k-1) = g_k would fail.");
    FamilyParameters params(k);
    report.annotations.push_back(
        "slack constants at defaults: C = " + std::to_string(params.big_c) +
        ", l = " + std::to_string(params.l) +
        "; the asymptotic regime (k beyond 1000*C) is out of desk-scale range by design.");
  }

  return report;
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["k"] = report.k;
  j["all_pass"] = report.all_pass();
  j["items"] = nlohmann::ordered_json::array();
  for (const auto& item : report.items) {
    nlohmann::ordered_json ji;
    ji["name"] = item.name;
    ji["pass"] = item.pass;
    ji["expected"] = item.expected;
    ji["actual"] = item.actual;
    if (!item.note.empty()) ji["note"] = item.note;
    j["items"].push_back(std::move(ji));
  }
  j["annotations"] = report.annotations;
  return j;
}

inline std::string report_to_text(const VerificationReport& report) {
  std::ostringstream os;
  os << "family verification, k = " << report.k << "\n";
  for (const auto& item : report.items) {
    os << (item.pass ? "[PASS] " : "[FAIL] ") << item.name;
    if (!item.pass) os << " (expected " << item.expected << ", got " << item.actual << ")";
    os << "\n";
  }
  for (const auto& a : report.annotations) os << "note: " << a << "\n";
  os << (report.all_pass() ? "all items pass" : "SOME ITEMS FAILED") << "\n";
  return os.str();
}

}  // namespace thompson
