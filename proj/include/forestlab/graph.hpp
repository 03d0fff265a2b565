#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace forestlab {

// Vertices are 1-based: a graph of order n lives on [1..n].
using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;  // u < v always

  auto operator<=>(const Edge&) const = default;
};

// Normalizes the endpoint order; throws on a self-loop.
Edge make_edge(Vertex a, Vertex b);

// Simple undirected graph on [1..n]. Immutable once built.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  explicit LabeledGraph(std::size_t n);
  // Throws std::invalid_argument on self-loops, duplicates or out-of-range endpoints.
  LabeledGraph(std::size_t n, std::vector<Edge> edges);
  LabeledGraph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

  std::size_t order() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted ascending.
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool has_edge(Vertex a, Vertex b) const;

  friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }
  friend std::strong_ordering operator<=>(const LabeledGraph& a, const LabeledGraph& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.edges_ <=> b.edges_;
  }

 private:
  void build_adjacency();

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;  // indexed by vertex, slot 0 unused
};

LabeledGraph add_edge(const LabeledGraph& g, Vertex u, Vertex v);
LabeledGraph remove_edge(const LabeledGraph& g, Vertex u, Vertex v);

// Connected components. Blocks are sorted internally and ordered by their
// smallest vertex. The designated largest block has maximum size; ties go to
// the block containing the largest vertex label.
struct ComponentPartition {
  std::vector<std::vector<Vertex>> blocks;
  std::size_t largest_index = 0;
  std::vector<std::size_t> block_of;  // vertex -> block index, slot 0 unused

  std::size_t count() const { return blocks.size(); }
  const std::vector<Vertex>& largest() const { return blocks.at(largest_index); }
};

ComponentPartition components(const LabeledGraph& g);

// Per-bridge side information from the low-link DFS. Removing `edge`
// leaves `far` on a side of `far_side` vertices inside a component of
// `component_size` vertices.
struct BridgeSide {
  Edge edge;
  Vertex near = 0;
  Vertex far = 0;
  std::size_t far_side = 0;
  std::size_t component_size = 0;
};

// Bridges in increasing edge order.
std::vector<Edge> bridges(const LabeledGraph& g);
// Same bridges, each reported once from the DFS parent's point of view.
std::vector<BridgeSide> bridge_sides(const LabeledGraph& g);

bool is_forest(const LabeledGraph& g);

// Returns the edges of a spanning tree of the block (a 2-edge-connected
// vertex set of g, sorted ascending) using only non-bridge edges.
using SpanningTreeRule = std::function<std::vector<Edge>(
    const LabeledGraph& g, std::span<const Vertex> block, const std::vector<bool>& in_block)>;

// BFS from the smallest label, neighbors in increasing label order.
std::vector<Edge> bfs_spanning_tree(const LabeledGraph& g, std::span<const Vertex> block,
                                    const std::vector<bool>& in_block);

// Replaces every 2-edge-connected block by a spanning tree; bridges survive.
LabeledGraph two_block_forest_projection(const LabeledGraph& g,
                                         const SpanningTreeRule& rule = bfs_spanning_tree);

// Induced subgraph on `vertices` (any order), relabeled to 1..k by increasing
// original label. `labels[i]` is the original label of new vertex i+1.
struct InducedSubgraph {
  LabeledGraph graph;
  std::vector<Vertex> labels;
};
InducedSubgraph induced_subgraph(const LabeledGraph& g, std::vector<Vertex> vertices);

// Edge-list text: "n m" then m lines "u v" with u < v.
std::string to_edge_list(const LabeledGraph& g);
void write_edge_list(std::ostream& out, const LabeledGraph& g);
LabeledGraph read_edge_list(std::istream& in);
LabeledGraph parse_edge_list(const std::string& text);

}  // namespace forestlab
