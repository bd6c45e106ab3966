// Table-driven geodesic length backend: carets of the reduced pair are
// classified in infix order by a rule set loaded from a data file, same-index
// carets are paired, and pair weights are summed. The table refuses to answer
// until it has been validated against the breadth-first-search oracle.
#pragma once

#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thompson/element.hpp"
#include "thompson/errors.hpp"
#include "thompson/metric.hpp"

namespace thompson {

enum class CaretSide { Left, Interior, Right };

// Structural facts about one caret, gathered in infix order.
struct CaretFacts {
  CaretSide side = CaretSide::Left;  // root counts as left
  bool leftmost = false;             // infix-first caret of the tree
  bool left_child_caret = false;
  bool right_child_caret = false;
  // Side of the infix successor caret; None when this caret is infix-last.
  enum class Succ { Left, Interior, Right, None } successor = Succ::None;
};

namespace detail {

inline void caret_facts_walk(const BinaryTree& t, bool on_left, bool is_root, bool on_right,
                             std::vector<CaretFacts>& out) {
  if (t.is_leaf()) return;
  caret_facts_walk(t.left(), on_left, false, false, out);
  CaretFacts f;
  f.side = on_left ? CaretSide::Left
                   : ((on_right && !is_root) ? CaretSide::Right : CaretSide::Interior);
  f.left_child_caret = !t.left().is_leaf();
  f.right_child_caret = !t.right().is_leaf();
  out.push_back(f);
  caret_facts_walk(t.right(), false, false, on_right || is_root, out);
}

}  // namespace detail

inline std::vector<CaretFacts> caret_facts(const BinaryTree& t) {
  std::vector<CaretFacts> out;
  detail::caret_facts_walk(t, true, true, false, out);
  if (!out.empty()) out.front().leftmost = true;
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    switch (out[i + 1].side) {
      case CaretSide::Left: out[i].successor = CaretFacts::Succ::Left; break;
      case CaretSide::Interior: out[i].successor = CaretFacts::Succ::Interior; break;
      case CaretSide::Right: out[i].successor = CaretFacts::Succ::Right; break;
    }
  }
  return out;
}

// One classification rule: a named conjunction of conditions. Rules are tried
// in file order; the first match decides the caret's type.
struct CaretRule {
  std::string name;
  int side = -1;          // -1 any, else CaretSide value
  int leftmost = -1;      // -1 any, 0 no, 1 yes
  int left_child = -1;    // -1 any, 0 leaf, 1 caret
  int right_child = -1;   // -1 any, 0 leaf, 1 caret
  int successor = -1;     // -1 any, else CaretFacts::Succ value

  bool matches(const CaretFacts& f) const {
    if (side >= 0 && side != static_cast<int>(f.side)) return false;
    if (leftmost >= 0 && leftmost != (f.leftmost ? 1 : 0)) return false;
    if (left_child >= 0 && left_child != (f.left_child_caret ? 1 : 0)) return false;
    if (right_child >= 0 && right_child != (f.right_child_caret ? 1 : 0)) return false;
    if (successor >= 0 && successor != static_cast<int>(f.successor)) return false;
    return true;
  }
};

class FordhamTable {
 public:
  FordhamTable(std::vector<CaretRule> rules, std::map<std::pair<int, int>, int> weights)
      : rules_(std::move(rules)), weights_(std::move(weights)) {}

  const std::vector<CaretRule>& rules() const { return rules_; }
  bool validated() const { return validated_; }
  void mark_validated() { validated_ = true; }

  int type_of(const CaretFacts& f) const {
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (rules_[i].matches(f)) return static_cast<int>(i);
    throw ValidationError("no classification rule matches a caret");
  }

  std::vector<int> classify(const BinaryTree& t) const {
    std::vector<int> out;
    for (const CaretFacts& f : caret_facts(t)) out.push_back(type_of(f));
    return out;
  }

  int weight(int t1, int t2) const {
    auto it = weights_.find({t1, t2});
    if (it == weights_.end())
      throw ValidationError("weight table has no entry for pair (" + rules_[t1].name + ", " +
                            rules_[t2].name + ")");
    return it->second;
  }

 private:
  std::vector<CaretRule> rules_;
  std::map<std::pair<int, int>, int> weights_;  // both orders stored
  bool validated_ = false;
};

namespace detail {

inline int rule_index(const std::vector<CaretRule>& rules, const std::string& name,
                      std::size_t lineno) {
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (rules[i].name == name) return static_cast<int>(i);
  throw ParseError("unknown type name '" + name + "' in weight line", lineno);
}

}  // namespace detail

// Text format:
//   thompson-fordham v1
//   rule NAME key=value ...        (keys: side, leftmost, left_child,
//                                   right_child, successor)
//   weight NAME NAME VALUE         (unordered pairs)
// Lines starting with '#' are comments.
inline FordhamTable load_fordham_table(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line) || line != "thompson-fordham v1")
    throw ValidationError("bad table header; expected 'thompson-fordham v1'");
  ++lineno;
  std::vector<CaretRule> rules;
  std::map<std::pair<int, int>, int> weights;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string kind;
    ss >> kind;
    if (kind == "rule") {
      CaretRule r;
      ss >> r.name;
      if (r.name.empty()) throw ParseError("rule without a name", lineno);
      std::string cond;
      while (ss >> cond) {
        auto eq = cond.find('=');
        if (eq == std::string::npos) throw ParseError("rule condition must be key=value", lineno);
        std::string key = cond.substr(0, eq), value = cond.substr(eq + 1);
        if (key == "side") {
          if (value == "left") r.side = 0;
          else if (value == "interior") r.side = 1;
          else if (value == "right") r.side = 2;
          else throw ParseError("side must be left|interior|right", lineno);
        } else if (key == "leftmost") {
          r.leftmost = value == "yes" ? 1 : value == "no" ? 0 : -2;
        } else if (key == "left_child" || key == "right_child") {
          int v = value == "caret" ? 1 : value == "leaf" ? 0 : -2;
          (key == "left_child" ? r.left_child : r.right_child) = v;
        } else if (key == "successor") {
          if (value == "left") r.successor = 0;
          else if (value == "interior") r.successor = 1;
          else if (value == "right") r.successor = 2;
          else if (value == "none") r.successor = 3;
          else throw ParseError("successor must be left|interior|right|none", lineno);
        } else {
          throw ParseError("unknown rule key '" + key + "'", lineno);
        }
        if (r.leftmost == -2 || r.left_child == -2 || r.right_child == -2)
          throw ParseError("bad rule value in '" + cond + "'", lineno);
      }
      rules.push_back(std::move(r));
    } else if (kind == "weight") {
      std::string n1, n2;
      int value;
      if (!(ss >> n1 >> n2 >> value)) throw ParseError("weight line needs two names and a value", lineno);
      if (value < 0) throw ParseError("weights must be non-negative", lineno);
      int t1 = detail::rule_index(rules, n1, lineno);
      int t2 = detail::rule_index(rules, n2, lineno);
      weights[{t1, t2}] = value;
      weights[{t2, t1}] = value;
    } else {
      throw ParseError("unknown directive '" + kind + "'", lineno);
    }
  }
  if (rules.empty()) throw ValidationError("table defines no classification rules");
  if (weights.empty()) throw ValidationError("table defines no weights");
  return FordhamTable(std::move(rules), std::move(weights));
}

inline FordhamTable load_fordham_table(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open table file: " + path);
  return load_fordham_table(is);
}

// Sum of pair weights over infix-paired carets of the reduced diagram.
// Requires a validated table.
inline std::size_t fordham_length(const GroupElement& g, const FordhamTable& table) {
  if (!table.validated())
    throw ValidationError("table must pass oracle validation before answering");
  std::vector<int> dt = table.classify(g.domain_tree());
  std::vector<int> rt = table.classify(g.range_tree());
  std::size_t sum = 0;
  for (std::size_t i = 0; i < dt.size(); ++i)
    sum += static_cast<std::size_t>(table.weight(dt[i], rt[i]));
  return sum;
}

// The acceptance gate: the table must reproduce the exact BFS length of every
// element of the validation ball. Marks the table validated on success.
inline void validate_fordham_table(FordhamTable& table, const Ball& validation_ball) {
  for (const auto& [key, len] : validation_ball.members()) {
    GroupElement e = element_from_packed_key(key);
    std::vector<int> dt = table.classify(e.domain_tree());
    std::vector<int> rt = table.classify(e.range_tree());
    std::size_t sum = 0;
    for (std::size_t i = 0; i < dt.size(); ++i)
      sum += static_cast<std::size_t>(table.weight(dt[i], rt[i]));
    if (sum != len)
      throw ValidationError("table disagrees with the search oracle on element " + hex_key(e) +
                            ": table says " + std::to_string(sum) + ", oracle says " +
                            std::to_string(len));
  }
  table.mark_validated();
}

}  // namespace thompson
