#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "forestlab/bignum.hpp"
#include "forestlab/graph.hpp"

namespace forestlab {

// Balanced-parenthesis code: "(" + children codes sorted ascending + ")".
struct RootedTreeCode {
  std::string code;
  std::size_t size = 0;

  // Validates balance and canonical child order.
  static RootedTreeCode parse(std::string_view text);

  auto operator<=>(const RootedTreeCode&) const = default;
};

// Unicentral trees: rooted code at the centroid. Bicentral trees:
// "[" + min(half) + max(half) + "]" over the two half-codes.
struct UnrootedTreeCode {
  std::string code;
  std::size_t size = 0;
  bool bicentral = false;

  static UnrootedTreeCode parse(std::string_view text);

  auto operator<=>(const UnrootedTreeCode&) const = default;
};

// One part of a forest shape: a tree code, or a small-graph code "g<n>:<bits>".
struct ShapePart {
  std::string code;
  std::size_t size = 0;
  bool is_tree = true;

  auto operator<=>(const ShapePart& o) const {
    if (auto c = size <=> o.size; c != 0) return c;
    return code <=> o.code;
  }
  bool operator==(const ShapePart& o) const { return size == o.size && code == o.code; }
};

// Unordered multiset of components, kept sorted by (size, code).
class ForestShape {
 public:
  ForestShape() = default;
  explicit ForestShape(std::vector<ShapePart> parts);

  const std::vector<ShapePart>& parts() const { return parts_; }
  std::size_t total_size() const { return total_; }
  bool empty() const { return parts_.empty(); }
  bool all_trees() const;
  ForestShape with(ShapePart extra) const;

  // Comma-joined codes; the empty shape serializes to "".
  std::string key() const;
  static ForestShape parse(std::string_view key);

  bool operator==(const ForestShape& o) const { return parts_ == o.parts_; }
  auto operator<=>(const ForestShape& o) const { return parts_ <=> o.parts_; }

 private:
  std::vector<ShapePart> parts_;
  std::size_t total_ = 0;
};

// Tree with a marked root and k exit vertices at distance r. Exit vertices
// are encoded with "{" "}" in place of "(" ")".
struct HullTreeCode {
  std::string code;
  std::size_t size = 0;
  std::size_t radius = 0;
  std::size_t exits = 0;

  auto operator<=>(const HullTreeCode&) const = default;
};

// Throws std::invalid_argument if the component of `root` is not a tree.
RootedTreeCode canon_rooted(const LabeledGraph& g, Vertex root);
UnrootedTreeCode canon_unrooted(const LabeledGraph& g, Vertex any_vertex);
// Whole-graph forms; the graph must be a single tree.
UnrootedTreeCode canon_unrooted(const LabeledGraph& tree);
// The forest must be acyclic; every component becomes a part.
ForestShape canon_forest(const LabeledGraph& forest);

HullTreeCode canon_hull(const LabeledGraph& tree, Vertex root, std::span<const Vertex> exits, std::size_t radius);

BigCount aut_rooted(const RootedTreeCode& c);
BigCount aut_unrooted(const UnrootedTreeCode& c);
BigCount aut_forest(const ForestShape& shape);
// Automorphisms fixing the root and the exit set.
BigCount aut_marked(const HullTreeCode& h);
// Requires exactly one exit vertex.
BigCount aut_path(const HullTreeCode& h);

struct Rooting {
  RootedTreeCode code;
  std::size_t multiplicity = 1;  // root orbits collapsed into this code
  std::size_t orbit_size = 0;    // vertices giving this code
};
// Distinct re-rootings, sorted by code.
std::vector<Rooting> rootings(const UnrootedTreeCode& c);

// Labeled realizations. Vertices are numbered in preorder; the root is 1.
LabeledGraph tree_from_code(const RootedTreeCode& c);
// For bicentral codes the two half roots are 1 and (|first half| + 1).
LabeledGraph tree_from_code(const UnrootedTreeCode& c);
struct MarkedTree {
  LabeledGraph tree;
  Vertex root = 1;
  std::vector<Vertex> exits;
};
MarkedTree tree_from_code(const HullTreeCode& h);

// Minimum upper-triangle adjacency bit string over all vertex orders, for
// graphs of at most kSmallGraphCap vertices. Format "g<n>:<bits>"; the rooted
// variant pins the root first and uses "r<n>:<bits>".
inline constexpr std::size_t kSmallGraphCap = 10;
std::string small_graph_code(const LabeledGraph& g);
std::string small_rooted_graph_code(const LabeledGraph& g, Vertex root);

// Vertex count encoded in a tree, hull or small-graph code.
std::size_t code_size(std::string_view code);

}  // namespace forestlab
