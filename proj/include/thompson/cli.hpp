// Command-line front end: word evaluation, lengths, traces, events, fellow
// traveler constants, ball cache management, enumeration, ShortLex filtering,
// family verification, and DOT export.
#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thompson/action.hpp"
#include "thompson/element.hpp"
#include "thompson/fordham.hpp"
#include "thompson/harness.hpp"
#include "thompson/metric.hpp"
#include "thompson/plmap.hpp"
#include "thompson/word.hpp"

namespace thompson::cli {

namespace detail {

// --track family needs -k; otherwise a comma-separated address list where an
// empty item or "root" names the root vertex.
struct TrackSpec {
  std::vector<VertexAddress> tracked;
  std::vector<VertexAddress> counting;
};

inline TrackSpec resolve_track(const std::string& spec, int k) {
  TrackSpec out;
  if (spec == "family") {
    if (k < 2) throw std::invalid_argument("--track family requires -k with k >= 2");
    TrackedSets s = tracked_sets(k);
    out.tracked = {s.v_a, s.v_b};
    out.counting = s.a_union_b();
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "root") item.clear();
    out.tracked.push_back(VertexAddress::parse(item));
  }
  if (out.tracked.empty()) out.tracked.push_back(VertexAddress::root());
  out.counting = out.tracked;
  return out;
}

inline std::string trace_text(const TraceReport& report) {
  std::ostringstream os;
  os << "word: " << word_to_string(report.word()) << "\n";
  for (std::size_t t = 0; t < report.steps(); ++t) {
    os << "t=" << t;
    if (t > 0) os << " letter=" << compact_letter(report.word()[t - 1]);
    Counters c = report.counters(t);
    os << " C=(" << c.left << "," << c.right << "," << c.interior << ")";
    for (const auto& v : report.tracked()) {
      std::string name = v.empty() ? "root" : v.to_string();
      std::string pos = report.position(v, t).empty() ? "root" : report.position(v, t).to_string();
      os << " " << name << "->" << pos << "[" << to_string(report.region(v, t))[0] << ",d="
         << report.pivot_distance(v, t) << "]";
    }
    os << "\n";
  }
  for (const auto& e : report.events())
    os << "event t=" << e.time << " vertex=" << (e.vertex.empty() ? "root" : e.vertex.to_string())
       << " " << to_string(e.kind) << "\n";
  return os.str();
}

}  // namespace detail

// Runs one command. Returns the process exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact workbench for a group of dyadic piecewise-linear homeomorphisms"};
  app.require_subcommand(1);

  SearchLimits env_limits = SearchLimits::from_env();
  int radius = -1;  // -1: per-command default
  app.add_option("--radius", radius, "unidirectional search radius cap")->capture_default_str();

  std::string word_text, second_word_text, track_spec = "root", cache_path, table_path;
  int k = -1;
  std::size_t slack = 0;
  bool as_json = false, as_text = false;
  int ball_radius = 0;
  int max_len = -1;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a word: canonical key and leaf partitions");
  eval_cmd->add_option("word", word_text, "word over a,b,A,B or x0,x1,x0^-1,x1^-1");
  eval_cmd->add_flag("--json", as_json, "JSON output");

  auto* len_cmd = app.add_subcommand("len", "geodesic length of the element of a word");
  len_cmd->add_option("word", word_text, "word to measure");
  len_cmd->add_option("--fordham-table", table_path,
                      "use the table backend (validated against the search oracle first)");

  auto* trace_cmd = app.add_subcommand("trace", "positions, regions, counters, events per prefix");
  trace_cmd->add_option("word", word_text, "word to trace");
  trace_cmd->add_option("--track", track_spec, "comma-separated addresses, or 'family'");
  trace_cmd->add_option("-k", k, "family parameter for --track family");
  trace_cmd->add_flag("--text", as_text, "plain-text table instead of JSON");

  auto* events_cmd = app.add_subcommand("events", "interior/exterior events of a trace");
  events_cmd->add_option("word", word_text, "word to trace");
  events_cmd->add_option("--track", track_spec, "comma-separated addresses, or 'family'");
  events_cmd->add_option("-k", k, "family parameter for --track family");
  events_cmd->add_flag("--text", as_text, "one event per line instead of JSON");

  auto* fellow_cmd = app.add_subcommand("fellow", "fellow traveler constant of two words");
  fellow_cmd->add_option("word", word_text, "first word");
  fellow_cmd->add_option("other", second_word_text, "second word");

  auto* ball_cmd = app.add_subcommand("ball", "build or load a ball around the identity");
  ball_cmd->add_option("-r", ball_radius, "ball radius")->required();
  ball_cmd->add_option("--cache", cache_path, "cache file to write (or load when present)");

  auto* enum_cmd = app.add_subcommand("enum", "near-geodesic representatives of a word's element");
  enum_cmd->add_option("word", word_text, "target word");
  enum_cmd->add_option("-c", slack, "length slack over the geodesic length");

  auto* shortlex_cmd = app.add_subcommand("shortlex", "ShortLex-filter words (one per element)");
  shortlex_cmd->add_option("--max-len", max_len, "filter all words up to this length");
  std::vector<std::string> shortlex_words;
  shortlex_cmd->add_option("words", shortlex_words, "words to filter (stdin when omitted)");

  auto* family_cmd = app.add_subcommand("family-verify", "run the family verification report");
  family_cmd->add_option("-k", k, "family parameter")->required();
  family_cmd->add_flag("--json", as_json, "JSON output");

  auto* show_cmd = app.add_subcommand("show", "DOT export of a word's reduced tree pair");
  show_cmd->add_option("word", word_text, "word to draw");

  std::vector<const char*> argv;
  argv.push_back("thompson");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto limits_with = [&](int fallback_radius) {
    SearchLimits limits = env_limits;
    limits.max_radius = radius >= 0 ? radius : fallback_radius;
    return limits;
  };

  try {
    if (eval_cmd->parsed()) {
      GroupElement e = evaluate_word(parse_word(word_text));
      auto dp = partition_of_leaves(e.domain_tree());
      auto rp = partition_of_leaves(e.range_tree());
      if (as_json) {
        nlohmann::ordered_json j;
        j["word"] = word_text;
        j["key"] = canonical_key(e);
        j["hex_key"] = hex_key(e);
        j["domain"] = nlohmann::ordered_json::array();
        j["range"] = nlohmann::ordered_json::array();
        for (const auto& I : dp) j["domain"].push_back(I.to_string());
        for (const auto& I : rp) j["range"].push_back(I.to_string());
        out << j.dump(2) << "\n";
      } else {
        out << "key: " << canonical_key(e) << "\n";
        out << "domain:";
        for (const auto& I : dp) out << " " << I.to_string();
        out << "\nrange:";
        for (const auto& I : rp) out << " " << I.to_string();
        out << "\n";
      }
    } else if (len_cmd->parsed()) {
      GroupElement e = evaluate_word(parse_word(word_text));
      if (!table_path.empty()) {
        FordhamTable table = load_fordham_table(table_path);
        validate_fordham_table(table, ball(8, limits_with(9)));
        out << fordham_length(e, table) << "\n";
      } else {
        out << geodesic_length(e, limits_with(11)) << "\n";
      }
    } else if (trace_cmd->parsed() || events_cmd->parsed()) {
      auto spec = detail::resolve_track(track_spec, k);
      TraceReport report = trace(parse_word(word_text), spec.tracked, spec.counting);
      if (events_cmd->parsed() && as_text) {
        for (const auto& e : report.events())
          out << "t=" << e.time << " vertex="
              << (e.vertex.empty() ? "root" : e.vertex.to_string()) << " " << to_string(e.kind)
              << "\n";
      } else if (as_text) {
        out << detail::trace_text(report);
      } else {
        out << trace_to_json(report).dump(2) << "\n";
      }
    } else if (fellow_cmd->parsed()) {
      out << fellow_traveler_constant(parse_word(word_text), parse_word(second_word_text),
                                      limits_with(11))
          << "\n";
    } else if (ball_cmd->parsed()) {
      if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
        Ball b = load_ball(cache_path);
        out << "loaded radius=" << b.radius() << " members=" << b.size() << "\n";
      } else {
        Ball b = ball(ball_radius, limits_with(9));
        if (!cache_path.empty()) save_ball(b, cache_path);
        out << "built radius=" << b.radius() << " members=" << b.size() << "\n";
      }
    } else if (enum_cmd->parsed()) {
      GroupElement e = evaluate_word(parse_word(word_text));
      for (const Word& w : enumerate_representatives(e, slack, limits_with(11)))
        out << word_to_string(w) << "\n";
    } else if (shortlex_cmd->parsed()) {
      std::vector<Word> words;
      if (max_len >= 0) {
        std::vector<Word> layer{Word{}};
        words.push_back(Word{});
        for (int len = 1; len <= max_len; ++len) {
          std::vector<Word> next;
          for (const Word& w : layer)
            for (int g = 0; g < 4; ++g) {
              Word n = w;
              n.push_back(static_cast<Generator>(g));
              next.push_back(std::move(n));
            }
          layer = std::move(next);
          words.insert(words.end(), layer.begin(), layer.end());
        }
      } else if (!shortlex_words.empty()) {
        for (const auto& s : shortlex_words) words.push_back(parse_word(s));
      } else {
        std::string line;
        while (std::getline(std::cin, line)) words.push_back(parse_word(line));
      }
      for (const Word& w : shortlex_filter(words)) out << word_to_string(w) << "\n";
    } else if (family_cmd->parsed()) {
      VerifyOptions options;
      options.limits = env_limits;
      options.limits.max_radius = radius >= 0 ? radius : 11;
      VerificationReport report = verify_family(k, options);
      if (as_json)
        out << report_to_json(report).dump(2) << "\n";
      else
        out << report_to_text(report);
      if (!report.all_pass()) return 1;
    } else if (show_cmd->parsed()) {
      out << to_dot(evaluate_word(parse_word(word_text)));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace thompson::cli
