#include "forestlab/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace forestlab {

Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

LabeledGraph::LabeledGraph(std::size_t n) : n_(n) { build_adjacency(); }

LabeledGraph::LabeledGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    e = make_edge(e.u, e.v);
    if (e.u < 1 || e.v > n_)
      throw std::invalid_argument("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                  " out of range for n=" + std::to_string(n_));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");
  build_adjacency();
}

LabeledGraph::LabeledGraph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
    : LabeledGraph(n, [&] {
        std::vector<Edge> es;
        es.reserve(edges.size());
        for (auto [a, b] : edges) es.push_back(make_edge(a, b));
        return es;
      }()) {}

void LabeledGraph::build_adjacency() {
  adj_.assign(n_ + 1, {});
  for (const auto& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

std::span<const Vertex> LabeledGraph::neighbors(Vertex v) const {
  if (v < 1 || v > n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  return adj_[v];
}

bool LabeledGraph::has_edge(Vertex a, Vertex b) const {
  if (a == b || a < 1 || b < 1 || a > n_ || b > n_) return false;
  const auto& list = adj_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

LabeledGraph add_edge(const LabeledGraph& g, Vertex u, Vertex v) {
  if (u < 1 || v < 1 || u > g.order() || v > g.order())
    throw std::out_of_range("add_edge: endpoint out of range");
  if (g.has_edge(u, v)) throw std::invalid_argument("add_edge: edge already present");
  auto edges = g.edges();
  edges.push_back(make_edge(u, v));
  return LabeledGraph(g.order(), std::move(edges));
}

LabeledGraph remove_edge(const LabeledGraph& g, Vertex u, Vertex v) {
  if (u < 1 || v < 1 || u > g.order() || v > g.order())
    throw std::out_of_range("remove_edge: endpoint out of range");
  const Edge target = make_edge(u, v);
  auto edges = g.edges();
  auto it = std::lower_bound(edges.begin(), edges.end(), target);
  if (it == edges.end() || *it != target) throw std::invalid_argument("remove_edge: edge not present");
  edges.erase(it);
  return LabeledGraph(g.order(), std::move(edges));
}

ComponentPartition components(const LabeledGraph& g) {
  const std::size_t n = g.order();
  ComponentPartition part;
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  part.block_of.assign(n + 1, unset);
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= n; ++s) {
    if (part.block_of[s] != unset) continue;
    const std::size_t id = part.blocks.size();
    std::vector<Vertex> block;
    part.block_of[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      block.push_back(x);
      for (Vertex y : g.neighbors(x)) {
        if (part.block_of[y] == unset) {
          part.block_of[y] = id;
          stack.push_back(y);
        }
      }
    }
    std::sort(block.begin(), block.end());
    part.blocks.push_back(std::move(block));
  }
  for (std::size_t i = 1; i < part.blocks.size(); ++i) {
    const auto& best = part.blocks[part.largest_index];
    const auto& cand = part.blocks[i];
    if (cand.size() > best.size() || (cand.size() == best.size() && cand.back() > best.back()))
      part.largest_index = i;
  }
  return part;
}

std::vector<BridgeSide> bridge_sides(const LabeledGraph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> disc(n + 1, 0), low(n + 1, 0), sub(n + 1, 0);
  std::vector<Vertex> parent(n + 1, 0);
  std::vector<std::size_t> next_child(n + 1, 0);
  std::vector<BridgeSide> out;
  std::size_t timer = 0;

  struct Pending {
    Vertex parent, child;
  };
  std::vector<Vertex> stack;
  for (Vertex root = 1; root <= n; ++root) {
    if (disc[root] != 0) continue;
    std::vector<Pending> found;
    disc[root] = low[root] = ++timer;
    sub[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      const auto nbrs = g.neighbors(x);
      if (next_child[x] < nbrs.size()) {
        const Vertex y = nbrs[next_child[x]++];
        if (disc[y] == 0) {
          parent[y] = x;
          disc[y] = low[y] = ++timer;
          sub[y] = 1;
          stack.push_back(y);
        } else if (y != parent[x]) {
          low[x] = std::min(low[x], disc[y]);
        }
        continue;
      }
      stack.pop_back();
      if (const Vertex p = parent[x]; p != 0) {
        low[p] = std::min(low[p], low[x]);
        sub[p] += sub[x];
        if (low[x] > disc[p]) found.push_back({p, x});
      }
    }
    for (const auto& b : found)
      out.push_back({make_edge(b.parent, b.child), b.parent, b.child, sub[b.child], sub[root]});
  }
  std::sort(out.begin(), out.end(), [](const BridgeSide& a, const BridgeSide& b) { return a.edge < b.edge; });
  return out;
}

std::vector<Edge> bridges(const LabeledGraph& g) {
  std::vector<Edge> out;
  for (const auto& side : bridge_sides(g)) out.push_back(side.edge);
  return out;
}

bool is_forest(const LabeledGraph& g) {
  // acyclic iff m = n - (#components)
  return g.edge_count() + components(g).count() == g.order();
}

std::vector<Edge> bfs_spanning_tree(const LabeledGraph& g, std::span<const Vertex> block,
                                    const std::vector<bool>& in_block) {
  std::vector<Edge> tree;
  if (block.empty()) return tree;
  std::vector<bool> seen(g.order() + 1, false);
  std::queue<Vertex> queue;
  const Vertex start = *std::min_element(block.begin(), block.end());
  seen[start] = true;
  queue.push(start);
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop();
    for (Vertex y : g.neighbors(x)) {
      if (!in_block[y] || seen[y]) continue;
      seen[y] = true;
      tree.push_back(make_edge(x, y));
      queue.push(y);
    }
  }
  return tree;
}

LabeledGraph two_block_forest_projection(const LabeledGraph& g, const SpanningTreeRule& rule) {
  const auto cut = bridges(g);
  std::vector<Edge> inner;
  std::set_difference(g.edges().begin(), g.edges().end(), cut.begin(), cut.end(), std::back_inserter(inner));
  const auto blocks = components(LabeledGraph(g.order(), inner));
  const LabeledGraph inner_graph(g.order(), inner);

  std::vector<Edge> result = cut;
  std::vector<bool> in_block(g.order() + 1, false);
  for (const auto& block : blocks.blocks) {
    if (block.size() < 2) continue;
    for (Vertex v : block) in_block[v] = true;
    auto tree = rule(inner_graph, block, in_block);
    if (tree.size() + 1 != block.size())
      throw std::logic_error("spanning tree rule returned a non-spanning edge set");
    result.insert(result.end(), tree.begin(), tree.end());
    for (Vertex v : block) in_block[v] = false;
  }
  return LabeledGraph(g.order(), std::move(result));
}

InducedSubgraph induced_subgraph(const LabeledGraph& g, std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<Vertex> local(g.order() + 1, 0);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<Vertex>(i + 1);
  std::vector<Edge> edges;
  for (Vertex x : vertices)
    for (Vertex y : g.neighbors(x))
      if (x < y && local[y] != 0) edges.push_back({local[x], local[y]});
  return {LabeledGraph(vertices.size(), std::move(edges)), std::move(vertices)};
}

void write_edge_list(std::ostream& out, const LabeledGraph& g) {
  out << g.order() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string to_edge_list(const LabeledGraph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

LabeledGraph read_edge_list(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw std::invalid_argument("edge list: bad header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated at edge " + std::to_string(i + 1));
    if (u == v) throw std::invalid_argument("edge list: self-loop");
    if (u < 1 || v > n || u > v)
      throw std::invalid_argument("edge list: expected 1 <= u < v <= n, got " + std::to_string(u) + " " +
                                  std::to_string(v));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return LabeledGraph(static_cast<std::size_t>(n), std::move(edges));
}

LabeledGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace forestlab
