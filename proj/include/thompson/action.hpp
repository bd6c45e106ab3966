// The action of elements and word prefixes on vertices of the infinite binary
// tree, with per-prefix traces: positions, regions, pivot distances, counters,
// interior/exterior events, and letter tallies.
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "thompson/element.hpp"
#include "thompson/plmap.hpp"
#include "thompson/vertex.hpp"
#include "thompson/word.hpp"

namespace thompson {

inline const PLMap& generator_pl(Generator s) {
  static const std::array<PLMap, 4> maps = {
      pl_of_element(generator_element(Generator::X0)),
      pl_of_element(generator_element(Generator::X1)),
      pl_of_element(generator_element(Generator::X0Inv)),
      pl_of_element(generator_element(Generator::X1Inv))};
  return maps[static_cast<std::size_t>(s)];
}

// Where f sends a vertex: the unique vertex whose midpoint is the image of the
// midpoint of v under f as a homeomorphism.
inline VertexAddress act_on_vertex(const GroupElement& f, const VertexAddress& v) {
  return vertex_of_midpoint(pl_apply(pl_of_element(f), midpoint(v)));
}

inline VertexAddress act_on_vertex(Generator s, const VertexAddress& v) {
  return vertex_of_midpoint(pl_apply(generator_pl(s), midpoint(v)));
}

enum class EventKind { MadeInterior, MadeExterior };

inline std::string to_string(EventKind k) {
  return k == EventKind::MadeInterior ? "MadeInterior" : "MadeExterior";
}

struct VertexEvent {
  VertexAddress vertex;  // the vertex as originally named, not its position
  std::size_t time = 0;
  EventKind kind = EventKind::MadeInterior;
  friend bool operator==(const VertexEvent&, const VertexEvent&) = default;
};

struct Counters {
  int left = 0, right = 0, interior = 0;
  int total() const { return left + right + interior; }
};

struct LetterTally {
  // Indexed by Generator.
  std::array<std::size_t, 4> counts{};
  std::size_t of(Generator g) const { return counts[static_cast<std::size_t>(g)]; }
  std::size_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

// Positions of a set of vertices after every prefix of a word. Positions are
// computed through midpoints and exact PL application only.
class TraceReport {
 public:
  TraceReport(Word word, std::vector<VertexAddress> tracked,
              std::vector<VertexAddress> counting_set)
      : word_(std::move(word)), tracked_(std::move(tracked)), counting_(std::move(counting_set)) {
    for (const auto& v : tracked_) traced_index_.try_emplace(v, traced_index_.size());
    for (const auto& v : counting_) traced_index_.try_emplace(v, traced_index_.size());
    std::vector<VertexAddress> traced(traced_index_.size());
    for (const auto& [v, i] : traced_index_) traced[i] = v;

    positions_.reserve(word_.size() + 1);
    positions_.push_back(traced);
    for (std::size_t t = 1; t <= word_.size(); ++t) {
      const PLMap& step = generator_pl(word_[t - 1]);
      std::vector<VertexAddress> cur(traced.size());
      for (std::size_t i = 0; i < traced.size(); ++i) {
        cur[i] = vertex_of_midpoint(pl_apply(step, midpoint(positions_.back()[i])));
        detect_event(traced[i], positions_.back()[i], cur[i], t);
      }
      positions_.push_back(std::move(cur));
    }
  }

  const Word& word() const { return word_; }
  const std::vector<VertexAddress>& tracked() const { return tracked_; }
  const std::vector<VertexAddress>& counting_set() const { return counting_; }
  std::size_t steps() const { return positions_.size(); }

  const VertexAddress& position(const VertexAddress& v, std::size_t t) const {
    return positions_.at(t)[index_of(v)];
  }

  RegionClass region(const VertexAddress& v, std::size_t t) const {
    return region_of(position(v, t));
  }

  std::size_t pivot_distance(const VertexAddress& v, std::size_t t) const {
    return tree_distance(position(v, t), pivot_vertex());
  }

  // C_L, C_R, C_I over the counting set at time t.
  Counters counters(std::size_t t) const {
    Counters c;
    for (const auto& v : counting_) {
      switch (region_of(position(v, t))) {
        case RegionClass::LeftSpine: ++c.left; break;
        case RegionClass::RightSpine: ++c.right; break;
        case RegionClass::Interior: ++c.interior; break;
      }
    }
    return c;
  }

  const std::vector<VertexEvent>& events() const { return events_; }

 private:
  std::size_t index_of(const VertexAddress& v) const {
    auto it = traced_index_.find(v);
    if (it == traced_index_.end())
      throw std::out_of_range("vertex " + (v.empty() ? std::string("(root)") : v.to_string()) +
                              " is not traced in this report");
    return it->second;
  }

  void detect_event(const VertexAddress& original, const VertexAddress& prev,
                    const VertexAddress& cur, std::size_t t) {
    if (prev == pivot_vertex() && cur == post_pivot_vertex())
      events_.push_back({original, t, EventKind::MadeInterior});
    else if (prev == post_pivot_vertex() && cur == pivot_vertex())
      events_.push_back({original, t, EventKind::MadeExterior});
  }

  Word word_;
  std::vector<VertexAddress> tracked_;
  std::vector<VertexAddress> counting_;
  std::map<VertexAddress, std::size_t> traced_index_;
  std::vector<std::vector<VertexAddress>> positions_;  // [t][traced index]
  std::vector<VertexEvent> events_;                    // ordered by time
};

inline TraceReport trace(const Word& w, std::vector<VertexAddress> tracked,
                         std::vector<VertexAddress> counting_set = {}) {
  return TraceReport(w, std::move(tracked), std::move(counting_set));
}

inline std::vector<std::size_t> pivot_distance_series(const TraceReport& report,
                                                      const VertexAddress& v) {
  std::vector<std::size_t> out;
  out.reserve(report.steps());
  for (std::size_t t = 0; t < report.steps(); ++t) out.push_back(report.pivot_distance(v, t));
  return out;
}

inline const std::vector<VertexEvent>& events_of(const TraceReport& report) {
  return report.events();
}

// Events with time in (t_lo, t_hi] whose vertex lies in the given subset.
inline std::pair<int, int> interval_event_counts(const TraceReport& report, std::size_t t_lo,
                                                 std::size_t t_hi,
                                                 const std::vector<VertexAddress>& subset) {
  if (t_lo > t_hi || t_hi > report.word().size())
    throw std::invalid_argument("event interval out of range");
  int made_interior = 0, made_exterior = 0;
  for (const auto& e : report.events()) {
    if (e.time <= t_lo || e.time > t_hi) continue;
    bool in_subset = false;
    for (const auto& v : subset)
      if (v == e.vertex) {
        in_subset = true;
        break;
      }
    if (!in_subset) continue;
    if (e.kind == EventKind::MadeInterior)
      ++made_interior;
    else
      ++made_exterior;
  }
  return {made_interior, made_exterior};
}

// Tallies of the four letters in positions (t_lo, t_hi] of w.
inline LetterTally count_letters(const Word& w, std::size_t t_lo, std::size_t t_hi) {
  if (t_lo > t_hi || t_hi > w.size()) throw std::invalid_argument("letter interval out of range");
  LetterTally tally;
  for (std::size_t t = t_lo; t < t_hi; ++t) ++tally.counts[static_cast<std::size_t>(w[t])];
  return tally;
}

// Fixed schema: {word, tracked, steps:[{t, letter, positions, regions, d,
// C:{L,R,I}}], events:[{vertex, time, kind}]}.
inline nlohmann::ordered_json trace_to_json(const TraceReport& report) {
  nlohmann::ordered_json j;
  j["word"] = word_to_string(report.word());
  j["tracked"] = nlohmann::ordered_json::array();
  for (const auto& v : report.tracked()) j["tracked"].push_back(v.to_string());
  j["steps"] = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < report.steps(); ++t) {
    nlohmann::ordered_json step;
    step["t"] = t;
    if (t == 0)
      step["letter"] = nullptr;
    else
      step["letter"] = std::string(1, compact_letter(report.word()[t - 1]));
    nlohmann::ordered_json positions, regions, d;
    for (const auto& v : report.tracked()) {
      std::string key = v.to_string();
      positions[key] = report.position(v, t).to_string();
      regions[key] = to_string(report.region(v, t));
      d[key] = report.pivot_distance(v, t);
    }
    step["positions"] = std::move(positions);
    step["regions"] = std::move(regions);
    step["d"] = std::move(d);
    Counters c = report.counters(t);
    step["C"] = {{"L", c.left}, {"R", c.right}, {"I", c.interior}};
    j["steps"].push_back(std::move(step));
  }
  j["events"] = nlohmann::ordered_json::array();
  for (const auto& e : report.events()) {
    j["events"].push_back({{"vertex", e.vertex.to_string()},
                           {"time", e.time},
                           {"kind", to_string(e.kind)}});
  }
  return j;
}

}  // namespace thompson
