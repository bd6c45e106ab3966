// Finite ordered rooted binary trees as immutable shared structures, plus the
// correspondence between trees and standard dyadic partitions of [0,1].
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thompson/errors.hpp"
#include "thompson/vertex.hpp"

namespace thompson {

class BinaryTree {
 public:
  // A single leaf.
  BinaryTree() : node_(leaf_node()) {}

  static BinaryTree leaf() { return BinaryTree(); }

  static BinaryTree caret(const BinaryTree& left, const BinaryTree& right) {
    auto n = std::make_shared<const Node>(
        Node{left.node_, right.node_, left.leaf_count() + right.leaf_count()});
    return BinaryTree(std::move(n));
  }

  bool is_leaf() const { return node_->left == nullptr; }
  BinaryTree left() const { return BinaryTree(node_->left); }
  BinaryTree right() const { return BinaryTree(node_->right); }

  int leaf_count() const { return node_->leaves; }
  int caret_count() const { return node_->leaves - 1; }

  // Carets along the all-left (resp. all-right) path, excluding the root caret.
  int left_spine_carets() const {
    if (is_leaf()) return 0;
    int n = 0;
    for (BinaryTree t = left(); !t.is_leaf(); t = t.left()) ++n;
    return n;
  }
  int right_spine_carets() const {
    if (is_leaf()) return 0;
    int n = 0;
    for (BinaryTree t = right(); !t.is_leaf(); t = t.right()) ++n;
    return n;
  }

  // Carets in the left (resp. right) subtree of the root caret.
  int left_side_carets() const { return is_leaf() ? 0 : left().caret_count(); }
  int right_side_carets() const { return is_leaf() ? 0 : right().caret_count(); }

  // Preorder shape encoding: '1' = caret, '0' = leaf. Self-delimiting.
  std::string preorder_bits() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(2 * leaf_count() - 1));
    append_bits(node_, out);
    return out;
  }

  static BinaryTree from_preorder_bits(std::string_view bits, std::size_t& pos) {
    if (pos >= bits.size()) throw ParseError("truncated tree encoding", pos);
    char c = bits[pos++];
    if (c == '0') return leaf();
    if (c != '1') throw ParseError("tree encoding must use 0 and 1", pos - 1);
    BinaryTree l = from_preorder_bits(bits, pos);
    BinaryTree r = from_preorder_bits(bits, pos);
    return caret(l, r);
  }

  friend bool operator==(const BinaryTree& a, const BinaryTree& b) {
    return equal_nodes(a.node_.get(), b.node_.get());
  }

 private:
  struct Node {
    std::shared_ptr<const Node> left, right;
    int leaves;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit BinaryTree(NodePtr n) : node_(std::move(n)) {}

  static const NodePtr& leaf_node() {
    static const NodePtr n = std::make_shared<const Node>(Node{nullptr, nullptr, 1});
    return n;
  }

  static void append_bits(const NodePtr& n, std::string& out) {
    if (!n->left) {
      out.push_back('0');
      return;
    }
    out.push_back('1');
    append_bits(n->left, out);
    append_bits(n->right, out);
  }

  static bool equal_nodes(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->leaves != b->leaves) return false;
    if (!a->left) return !b->left;
    if (!b->left) return false;
    return equal_nodes(a->left.get(), b->left.get()) && equal_nodes(a->right.get(), b->right.get());
  }

  NodePtr node_;
};

// Leaf intervals in left-to-right order; they abut and cover [0,1].
inline void collect_leaf_intervals(const BinaryTree& t, const StandardDyadicInterval& I,
                                   std::vector<StandardDyadicInterval>& out) {
  if (t.is_leaf()) {
    out.push_back(I);
    return;
  }
  collect_leaf_intervals(t.left(), StandardDyadicInterval(2 * I.a, I.n + 1), out);
  collect_leaf_intervals(t.right(), StandardDyadicInterval(2 * I.a + 1, I.n + 1), out);
}

inline std::vector<StandardDyadicInterval> partition_of_leaves(const BinaryTree& t) {
  std::vector<StandardDyadicInterval> out;
  out.reserve(static_cast<std::size_t>(t.leaf_count()));
  collect_leaf_intervals(t, StandardDyadicInterval::whole(), out);
  return out;
}

namespace detail {

inline BinaryTree tree_of_partition_rec(std::span<const StandardDyadicInterval> p,
                                        const StandardDyadicInterval& I) {
  if (p.size() == 1) {
    if (!(p[0] == I)) throw std::invalid_argument("interval list is not a standard dyadic partition");
    return BinaryTree::leaf();
  }
  // The midpoint of I must appear as a boundary between two consecutive entries.
  DyadicRational mid = midpoint(I);
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i].lower() == mid) {
      return BinaryTree::caret(
          tree_of_partition_rec(p.subspan(0, i), StandardDyadicInterval(2 * I.a, I.n + 1)),
          tree_of_partition_rec(p.subspan(i), StandardDyadicInterval(2 * I.a + 1, I.n + 1)));
    }
  }
  throw std::invalid_argument("interval list is not a standard dyadic partition");
}

}  // namespace detail

inline BinaryTree tree_of_partition(std::span<const StandardDyadicInterval> p) {
  if (p.empty()) throw std::invalid_argument("empty interval list");
  if (!(p.front().lower() == DyadicRational::zero()))
    throw std::invalid_argument("partition must start at 0");
  if (!(p.back().upper() == DyadicRational::one()))
    throw std::invalid_argument("partition must end at 1");
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!(p[i - 1].upper() == p[i].lower()))
      throw std::invalid_argument("partition intervals must abut");
  return detail::tree_of_partition_rec(p, StandardDyadicInterval::whole());
}

inline BinaryTree tree_of_partition(const std::vector<StandardDyadicInterval>& p) {
  return tree_of_partition(std::span<const StandardDyadicInterval>(p));
}

// Builds the tree whose leaves are the given breakpoint sequence 0 = b0 < ... < bn = 1.
inline BinaryTree tree_of_breakpoints(const std::vector<DyadicRational>& b) {
  std::vector<StandardDyadicInterval> p;
  p.reserve(b.size() - 1);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    DyadicRational width = b[i + 1] - b[i];
    if (width.numerator() != 1 || b[i].exponent() > width.exponent())
      throw std::invalid_argument("breakpoints are not standard dyadic");
    unsigned n = width.exponent();
    p.emplace_back(b[i].numerator() << (n - b[i].exponent()), n);
  }
  return tree_of_partition(p);
}

}  // namespace thompson
