// Elements of the group as reduced tree pair diagrams: generators, reduction,
// composition, inversion, word evaluation, and canonical encodings.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/errors.hpp"
#include "thompson/tree.hpp"
#include "thompson/word.hpp"

namespace thompson {

// Domain and range trees with the same number of leaves.
struct TreePair {
  BinaryTree domain;
  BinaryTree range;

  TreePair(BinaryTree d, BinaryTree r) : domain(std::move(d)), range(std::move(r)) {
    if (domain.leaf_count() != range.leaf_count())
      throw std::invalid_argument("tree pair requires equal leaf counts");
  }
};

namespace detail {

// Leaf indices i such that leaves i and i+1 are children of one caret.
inline void sibling_leaf_indices(const BinaryTree& t, int offset, std::vector<int>& out) {
  if (t.is_leaf()) return;
  BinaryTree l = t.left(), r = t.right();
  if (l.is_leaf() && r.is_leaf()) {
    out.push_back(offset);
    return;
  }
  sibling_leaf_indices(l, offset, out);
  sibling_leaf_indices(r, offset + l.leaf_count(), out);
}

// Replaces the caret whose two leaf children are leaves i, i+1 by a leaf.
inline BinaryTree remove_caret_at_leaf(const BinaryTree& t, int i) {
  BinaryTree l = t.left(), r = t.right();
  if (i == 0 && l.is_leaf() && r.is_leaf()) return BinaryTree::leaf();
  if (i + 1 < l.leaf_count()) return BinaryTree::caret(remove_caret_at_leaf(l, i), r);
  return BinaryTree::caret(l, remove_caret_at_leaf(r, i - l.leaf_count()));
}

// Smallest common refinement, as subtrees of the infinite tree.
inline BinaryTree join(const BinaryTree& a, const BinaryTree& b) {
  if (a.is_leaf()) return b;
  if (b.is_leaf()) return a;
  return BinaryTree::caret(join(a.left(), b.left()), join(a.right(), b.right()));
}

// For each leaf of base (in order), the subtree of refined sitting under it.
inline void fragments_under(const BinaryTree& base, const BinaryTree& refined,
                            std::vector<BinaryTree>& out) {
  if (base.is_leaf()) {
    out.push_back(refined);
    return;
  }
  fragments_under(base.left(), refined.left(), out);
  fragments_under(base.right(), refined.right(), out);
}

inline BinaryTree replace_leaves(const BinaryTree& t, const std::vector<BinaryTree>& fragments,
                                 std::size_t& next) {
  if (t.is_leaf()) return fragments[next++];
  BinaryTree l = replace_leaves(t.left(), fragments, next);
  BinaryTree r = replace_leaves(t.right(), fragments, next);
  return BinaryTree::caret(l, r);
}

}  // namespace detail

// An element: a tree pair kept in reduced form. Two elements are equal iff
// their encodings are identical.
class GroupElement {
 public:
  GroupElement() : pair_(BinaryTree::leaf(), BinaryTree::leaf()) {}

  static GroupElement identity() { return GroupElement(); }

  const BinaryTree& domain_tree() const { return pair_.domain; }
  const BinaryTree& range_tree() const { return pair_.range; }
  int leaf_count() const { return pair_.domain.leaf_count(); }
  bool is_identity() const { return pair_.domain.is_leaf(); }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.pair_.domain == b.pair_.domain && a.pair_.range == b.pair_.range;
  }

 private:
  explicit GroupElement(TreePair p) : pair_(std::move(p)) {}
  friend GroupElement reduce(TreePair p);

  TreePair pair_;
};

// Cancels matched caret pairs until none remain. The result is independent of
// removal order.
inline GroupElement reduce(TreePair p) {
  for (;;) {
    std::vector<int> d, r;
    detail::sibling_leaf_indices(p.domain, 0, d);
    detail::sibling_leaf_indices(p.range, 0, r);
    std::vector<int> both;
    std::set_intersection(d.begin(), d.end(), r.begin(), r.end(), std::back_inserter(both));
    if (both.empty()) return GroupElement(std::move(p));
    // Remove back-to-front so earlier indices stay valid.
    for (auto it = both.rbegin(); it != both.rend(); ++it) {
      p.domain = detail::remove_caret_at_leaf(p.domain, *it);
      p.range = detail::remove_caret_at_leaf(p.range, *it);
    }
  }
}

inline GroupElement invert(const GroupElement& f) {
  return reduce(TreePair(f.range_tree(), f.domain_tree()));
}

// Left-to-right composition: compose(f, g) is the element acting as g(f(x)).
inline GroupElement compose(const GroupElement& f, const GroupElement& g) {
  BinaryTree middle = detail::join(f.range_tree(), g.domain_tree());

  std::vector<BinaryTree> ff, gf;
  detail::fragments_under(f.range_tree(), middle, ff);
  detail::fragments_under(g.domain_tree(), middle, gf);

  std::size_t next = 0;
  BinaryTree new_domain = detail::replace_leaves(f.domain_tree(), ff, next);
  next = 0;
  BinaryTree new_range = detail::replace_leaves(g.range_tree(), gf, next);
  return reduce(TreePair(std::move(new_domain), std::move(new_range)));
}

inline GroupElement generator_element(Generator s) {
  const BinaryTree L = BinaryTree::leaf();
  // x0: partition 0,1/4,1/2,1 -> 0,1/2,3/4,1.
  static const GroupElement x0 = reduce(
      TreePair(BinaryTree::caret(BinaryTree::caret(L, L), L),
               BinaryTree::caret(L, BinaryTree::caret(L, L))));
  // x1: partition 0,1/2,5/8,3/4,1 -> 0,1/2,3/4,7/8,1.
  static const GroupElement x1 = reduce(
      TreePair(BinaryTree::caret(L, BinaryTree::caret(BinaryTree::caret(L, L), L)),
               BinaryTree::caret(L, BinaryTree::caret(L, BinaryTree::caret(L, L)))));
  static const GroupElement x0i = invert(x0);
  static const GroupElement x1i = invert(x1);
  switch (s) {
    case Generator::X0: return x0;
    case Generator::X1: return x1;
    case Generator::X0Inv: return x0i;
    default: return x1i;
  }
}

inline GroupElement evaluate_word(const Word& w) {
  GroupElement e = GroupElement::identity();
  for (Generator s : w) e = compose(e, generator_element(s));
  return e;
}

// Readable canonical key: preorder bits of the domain tree, '|', range tree.
inline std::string canonical_key(const GroupElement& f) {
  return f.domain_tree().preorder_bits() + "|" + f.range_tree().preorder_bits();
}

inline bool elements_equal(const GroupElement& f, const GroupElement& g) { return f == g; }

// Compact byte key: the two preorder bit strings concatenated, MSB-first,
// zero-padded to a byte boundary. Each tree encoding is self-delimiting.
inline std::string packed_key(const GroupElement& f) {
  std::string bits = f.domain_tree().preorder_bits();
  bits += f.range_tree().preorder_bits();
  std::string out((bits.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] == '1') out[i / 8] |= static_cast<char>(0x80u >> (i % 8));
  return out;
}

namespace detail {

struct BitReader {
  std::string_view bytes;
  std::size_t pos = 0;
  bool next() {
    if (pos >= 8 * bytes.size()) throw ParseError("truncated packed element key", pos);
    bool b = (static_cast<unsigned char>(bytes[pos / 8]) >> (7 - pos % 8)) & 1u;
    ++pos;
    return b;
  }
};

inline BinaryTree read_tree(BitReader& r) {
  if (!r.next()) return BinaryTree::leaf();
  BinaryTree l = read_tree(r);
  BinaryTree rt = read_tree(r);
  return BinaryTree::caret(l, rt);
}

}  // namespace detail

// Inverse of packed_key. Rejects keys that do not denote a reduced pair.
inline GroupElement element_from_packed_key(std::string_view bytes) {
  detail::BitReader r{bytes};
  BinaryTree d = detail::read_tree(r);
  BinaryTree rng = detail::read_tree(r);
  GroupElement e = reduce(TreePair(d, rng));
  if (!(e.domain_tree() == d) || !(e.range_tree() == rng))
    throw ValidationError("packed key does not encode a reduced tree pair");
  return e;
}

inline std::string hex_key(const GroupElement& f) {
  static const char* digits = "0123456789abcdef";
  std::string packed = packed_key(f);
  std::string out;
  out.reserve(2 * packed.size());
  for (unsigned char c : packed) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

inline GroupElement element_from_hex_key(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParseError("hex key must have even length", hex.size());
  auto nibble = [&](char c, std::size_t at) -> unsigned {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    throw ParseError("invalid hex digit in key", at);
  };
  std::string bytes(hex.size() / 2, '\0');
  for (std::size_t i = 0; i < bytes.size(); ++i)
    bytes[i] = static_cast<char>((nibble(hex[2 * i], 2 * i) << 4) | nibble(hex[2 * i + 1], 2 * i + 1));
  return element_from_packed_key(bytes);
}

namespace detail {

inline void dot_subtree(std::ostream& os, const BinaryTree& t, const StandardDyadicInterval& I,
                        const std::string& prefix, int& next_id, int parent_id) {
  int id = next_id++;
  os << "    " << prefix << id;
  if (t.is_leaf())
    os << " [shape=box, label=\"" << I.to_string() << "\"];\n";
  else
    os << " [shape=point];\n";
  if (parent_id >= 0) os << "    " << prefix << parent_id << " -> " << prefix << id << ";\n";
  if (!t.is_leaf()) {
    dot_subtree(os, t.left(), StandardDyadicInterval(2 * I.a, I.n + 1), prefix, next_id, id);
    dot_subtree(os, t.right(), StandardDyadicInterval(2 * I.a + 1, I.n + 1), prefix, next_id, id);
  }
}

}  // namespace detail

// Graphviz export: two clustered trees, leaves labeled with their intervals.
inline std::string to_dot(const GroupElement& f) {
  std::ostringstream os;
  os << "digraph treepair {\n";
  os << "  subgraph cluster_domain {\n    label=\"domain\";\n";
  int id = 0;
  detail::dot_subtree(os, f.domain_tree(), StandardDyadicInterval::whole(), "d", id, -1);
  os << "  }\n";
  os << "  subgraph cluster_range {\n    label=\"range\";\n";
  id = 0;
  detail::dot_subtree(os, f.range_tree(), StandardDyadicInterval::whole(), "r", id, -1);
  os << "  }\n";
  os << "}\n";
  return os.str();
}

}  // namespace thompson
