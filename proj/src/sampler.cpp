#include "forestlab/sampler.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

#include "forestlab/combinat.hpp"

namespace forestlab {

std::vector<Edge> sample_uniform_tree(std::span<const Vertex> labels, Rng& rng) {
  const std::size_t m = labels.size();
  if (m == 0) throw std::invalid_argument("sample_uniform_tree: empty label set");
  std::vector<Edge> edges;
  if (m == 1) return edges;
  if (m == 2) return {make_edge(labels[0], labels[1])};

  std::vector<std::size_t> code(m - 2);
  for (auto& c : code) c = rng.below(m);
  std::vector<std::size_t> degree(m, 1);
  for (auto c : code) ++degree[c];

  // linear-time decoding: `leaf` is the smallest current leaf
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  edges.reserve(m - 1);
  for (auto c : code) {
    edges.push_back(make_edge(labels[leaf], labels[c]));
    if (--degree[c] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  // the last edge joins the remaining leaf to the largest index
  edges.push_back(make_edge(labels[leaf], labels[m - 1]));
  return edges;
}

std::vector<Edge> sample_uniform_tree(std::span<const Vertex> labels, const SeededStream& stream) {
  Rng rng(stream);
  return sample_uniform_tree(labels, rng);
}

ForestSampler::ForestSampler(std::size_t n) : n_(n), forests_(forest_counts_upto(n)), trees_(n + 1) {
  if (n == 0) throw std::invalid_argument("ForestSampler: n must be >= 1");
  for (std::size_t m = 1; m <= n; ++m) trees_[m] = count_trees(m);
}

std::size_t ForestSampler::draw_component_size(std::size_t remaining, Rng& rng) const {
  BigCount u = rng.big_below(forests_[remaining]);
  BigCount choose = 1;  // C(remaining-1, m-1), walking m downward
  BigCount weight;
  for (std::size_t m = remaining; m >= 1; --m) {
    weight = choose * trees_[m];
    weight *= forests_[remaining - m];
    if (u < weight) return m;
    u -= weight;
    if (m > 1) {
      choose *= static_cast<unsigned long>(m - 1);
      mpz_divexact_ui(choose.get_mpz_t(), choose.get_mpz_t(), remaining - m + 1);
    }
  }
  throw std::logic_error("ForestSampler: component weights do not sum to f_r");
}

LabeledGraph ForestSampler::sample(Rng& rng) const {
  std::vector<Vertex> rest(n_);
  for (std::size_t i = 0; i < n_; ++i) rest[i] = static_cast<Vertex>(i + 1);
  std::vector<Edge> edges;
  edges.reserve(n_);
  std::size_t begin = 0;
  while (begin < n_) {
    const std::size_t remaining = n_ - begin;
    const std::size_t m = draw_component_size(remaining, rng);
    // pivot rest[begin] plus m-1 companions chosen uniformly from the others
    for (std::size_t i = 1; i < m; ++i) {
      const std::size_t j = begin + i + rng.below(remaining - i);
      std::swap(rest[begin + i], rest[j]);
    }
    const auto part = std::span<const Vertex>(rest).subspan(begin, m);
    auto tree = sample_uniform_tree(part, rng);
    edges.insert(edges.end(), tree.begin(), tree.end());
    begin += m;
  }
  return LabeledGraph(n_, std::move(edges));
}

LabeledGraph ForestSampler::sample(const SeededStream& stream) const {
  Rng rng(stream);
  return sample(rng);
}

LabeledGraph sample_uniform_forest(std::size_t n, const SeededStream& stream) {
  return ForestSampler(n).sample(stream);
}

namespace {

struct Growth {
  std::vector<Edge> edges;
  std::vector<std::size_t> depth{0};  // slot 0 unused
  std::vector<bool> truncated{false};
  std::size_t size_cap = std::numeric_limits<std::size_t>::max();
  bool overflow = false;

  Vertex add_vertex(std::size_t d) {
    depth.push_back(d);
    truncated.push_back(false);
    return static_cast<Vertex>(depth.size() - 1);
  }
  std::size_t vertex_count() const { return depth.size() - 1; }
};

// Breadth-first Poisson(1) offspring below `root`, relative depth limit `depth_cap`.
void grow(Growth& g, Vertex root, std::size_t depth_cap, Rng& rng) {
  std::vector<std::pair<Vertex, std::size_t>> queue{{root, 0}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [x, d] = queue[head];
    const unsigned children = rng.poisson1();
    if (d >= depth_cap) {
      if (children > 0) g.truncated[x] = true;
      continue;
    }
    for (unsigned c = 0; c < children; ++c) {
      if (g.vertex_count() >= g.size_cap) {
        g.overflow = true;
        return;
      }
      const Vertex y = g.add_vertex(g.depth[x] + 1);
      g.edges.push_back(make_edge(x, y));
      queue.emplace_back(y, d + 1);
    }
  }
}

SpineBall grow_spine(std::size_t r, Rng& rng, bool complete, std::size_t size_cap) {
  Growth g;
  if (complete) g.size_cap = size_cap;
  SpineBall ball;
  ball.radius = r;
  ball.complete = complete;
  for (std::size_t d = 0; d <= r; ++d) {
    const Vertex v = g.add_vertex(d);
    if (d > 0) g.edges.push_back(make_edge(ball.spine.back(), v));
    ball.spine.push_back(v);
  }
  for (std::size_t d = 0; d <= r && !g.overflow; ++d) {
    const std::size_t cap = complete ? std::numeric_limits<std::size_t>::max() : r - d;
    grow(g, ball.spine[d], cap, rng);
  }
  ball.overflow = g.overflow;
  ball.root = ball.spine.front();
  ball.spine_exit = ball.spine.back();
  ball.truncated = g.truncated;
  ball.graph = LabeledGraph(g.vertex_count(), std::move(g.edges));
  return ball;
}

}  // namespace

GwTree sample_gw_poisson1(std::size_t depth_cap, Rng& rng) {
  Growth g;
  const Vertex root = g.add_vertex(0);
  grow(g, root, depth_cap, rng);
  GwTree out;
  out.root = root;
  out.depth = g.depth;
  out.truncated = g.truncated;
  out.tree = LabeledGraph(g.vertex_count(), std::move(g.edges));
  return out;
}

SpineBall sample_F_infinity_ball(std::size_t r, Rng& rng) { return grow_spine(r, rng, false, 0); }

SpineBall sample_F_infinity_hull(std::size_t r, Rng& rng, std::size_t size_cap) {
  if (size_cap < r + 1) throw std::invalid_argument("size cap smaller than the spine");
  return grow_spine(r, rng, true, size_cap);
}

void write_spine_ball(std::ostream& out, const SpineBall& ball) {
  out << "root " << ball.root << " exit " << ball.spine_exit << '\n';
  write_edge_list(out, ball.graph);
}

}  // namespace forestlab
