#include "forestlab/local_stats.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace forestlab {

ForestShape small_components(const LabeledGraph& g) {
  const auto part = components(g);
  std::vector<ShapePart> parts;
  for (std::size_t i = 0; i < part.count(); ++i) {
    if (i == part.largest_index) continue;
    const auto sub = induced_subgraph(g, part.blocks[i]);
    if (sub.graph.edge_count() + 1 == sub.graph.order()) {
      auto code = canon_unrooted(sub.graph);
      parts.push_back({std::move(code.code), code.size, true});
    } else {
      if (sub.graph.order() > kSmallGraphCap)
        throw std::invalid_argument("small component with " + std::to_string(sub.graph.order()) +
                                    " vertices is not a tree and too large to canonize");
      parts.push_back({small_graph_code(sub.graph), sub.graph.order(), false});
    }
  }
  return ForestShape(std::move(parts));
}

namespace {

struct Choice {
  Vertex neighbor = 0;
  std::size_t far_size = 0;
  std::size_t component_size = 0;
};

// Best incident cut-edge for every vertex (neighbor == 0 when none).
std::vector<Choice> pendant_choices(const LabeledGraph& g) {
  std::vector<Choice> best(g.order() + 1);
  auto offer = [&](Vertex v, Vertex u, std::size_t far, std::size_t comp) {
    auto& b = best[v];
    if (b.neighbor == 0 || far > b.far_size || (far == b.far_size && u < b.neighbor)) b = {u, far, comp};
  };
  for (const auto& side : bridge_sides(g)) {
    offer(side.near, side.far, side.far_side, side.component_size);
    offer(side.far, side.near, side.component_size - side.far_side, side.component_size);
  }
  return best;
}

// Code of v's side after deleting the edge v-blocked, if that side is a tree
// with at most `cap` vertices.
std::optional<RootedTreeCode> side_code(const LabeledGraph& g, Vertex v, Vertex blocked, std::size_t cap,
                                        std::vector<int>& mark) {
  std::vector<Vertex> seen{v};
  mark[v] = 1;
  std::size_t degree_sum = 0;
  bool too_big = false;
  for (std::size_t i = 0; i < seen.size() && !too_big; ++i) {
    const Vertex x = seen[i];
    for (Vertex y : g.neighbors(x)) {
      if (x == v && y == blocked) continue;
      ++degree_sum;
      if (mark[y]) continue;
      if (seen.size() == cap) {
        too_big = true;
        break;
      }
      mark[y] = 1;
      seen.push_back(y);
    }
  }
  for (Vertex x : seen) mark[x] = 0;
  if (too_big || degree_sum / 2 + 1 != seen.size()) return std::nullopt;
  const auto sub = induced_subgraph(g, seen);
  const auto it = std::lower_bound(sub.labels.begin(), sub.labels.end(), v);
  const Vertex root = static_cast<Vertex>(it - sub.labels.begin() + 1);
  // the induced side never contains `blocked`, so it is exactly v's component
  return canon_rooted(sub.graph, root);
}

}  // namespace

std::optional<PendantTree> pendant_at(const LabeledGraph& g, Vertex v) {
  if (v < 1 || v > g.order()) throw std::out_of_range("pendant_at: vertex out of range");
  const auto choice = pendant_choices(g)[v];
  if (choice.neighbor == 0) return std::nullopt;
  std::vector<int> mark(g.order() + 1, 0);
  PendantTree out{make_edge(v, choice.neighbor),
                  side_code(g, v, choice.neighbor, std::numeric_limits<std::size_t>::max(), mark)};
  return out;
}

std::optional<RootedTreeCode> pendant_tree_at(const LabeledGraph& g, Vertex v) {
  auto p = pendant_at(g, v);
  if (!p) return std::nullopt;
  return p->tree;
}

std::uint64_t PendantProfile::total() const {
  std::uint64_t sum = 0;
  for (const auto& [code, c] : counts) sum += c;
  return sum;
}

std::uint64_t PendantProfile::count(const std::string& code) const {
  const auto it = counts.find(code);
  return it == counts.end() ? 0 : it->second;
}

PendantProfile pendant_profile(const LabeledGraph& g, std::size_t size_cap) {
  PendantProfile profile;
  profile.size_cap = size_cap;
  profile.n = g.order();
  const auto choices = pendant_choices(g);
  std::vector<int> mark(g.order() + 1, 0);
  for (Vertex v = 1; v <= g.order(); ++v) {
    const auto& c = choices[v];
    if (c.neighbor == 0 || c.component_size - c.far_size > size_cap) continue;
    if (c.component_size - c.far_size == 1) {
      ++profile.counts["()"];
      continue;
    }
    if (auto code = side_code(g, v, c.neighbor, size_cap, mark)) ++profile.counts[code->code];
  }
  return profile;
}

namespace {

std::vector<std::size_t> distances_within(const LabeledGraph& g, Vertex v, std::size_t r, std::vector<Vertex>& order) {
  constexpr auto far = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.order() + 1, far);
  dist[v] = 0;
  order = {v};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex x = order[i];
    if (dist[x] == r) continue;
    for (Vertex y : g.neighbors(x))
      if (dist[y] == far) {
        dist[y] = dist[x] + 1;
        order.push_back(y);
      }
  }
  return dist;
}

Vertex local_label(const std::vector<Vertex>& labels, Vertex original) {
  const auto it = std::lower_bound(labels.begin(), labels.end(), original);
  return static_cast<Vertex>(it - labels.begin() + 1);
}

}  // namespace

RootedGraph ball(const LabeledGraph& g, Vertex v, std::size_t r) {
  if (v < 1 || v > g.order()) throw std::out_of_range("ball: vertex out of range");
  std::vector<Vertex> inside;
  distances_within(g, v, r, inside);
  auto sub = induced_subgraph(g, inside);
  RootedGraph out;
  out.root = local_label(sub.labels, v);
  out.graph = std::move(sub.graph);
  out.labels = std::move(sub.labels);
  return out;
}

std::string ball_code(const RootedGraph& b) {
  if (b.graph.edge_count() + 1 == b.graph.order()) return canon_rooted(b.graph, b.root).code;
  return small_rooted_graph_code(b.graph, b.root);
}

Hull hull(const LabeledGraph& g, Vertex v, std::size_t r) {
  if (v < 1 || v > g.order()) throw std::out_of_range("hull: vertex out of range");
  const std::size_t n = g.order();
  std::vector<Vertex> keep;
  const auto dist = distances_within(g, v, r, keep);
  std::vector<bool> in_ball(n + 1, false);
  for (Vertex x : keep) in_ball[x] = true;
  std::vector<Vertex> exits;

  std::vector<bool> visited(n + 1, false);
  for (Vertex s = 1; s <= n; ++s) {
    if (in_ball[s] || visited[s]) continue;
    std::vector<Vertex> comp{s};
    std::vector<Vertex> attach;
    visited[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex y : g.neighbors(comp[i])) {
        if (in_ball[y]) {
          attach.push_back(y);
        } else if (!visited[y]) {
          visited[y] = true;
          comp.push_back(y);
        }
      }
    if (attach.empty()) continue;  // a component of G itself
    if (3 * comp.size() < n)
      keep.insert(keep.end(), comp.begin(), comp.end());
    else
      exits.insert(exits.end(), attach.begin(), attach.end());
  }

  auto sub = induced_subgraph(g, keep);
  Hull h;
  h.radius = r;
  h.root = local_label(sub.labels, v);
  std::sort(exits.begin(), exits.end());
  exits.erase(std::unique(exits.begin(), exits.end()), exits.end());
  for (Vertex e : exits) {
    if (dist[e] != r) throw std::logic_error("hull: exit vertex not at distance r");
    h.exits.push_back(local_label(sub.labels, e));
  }
  h.graph = std::move(sub.graph);
  h.labels = std::move(sub.labels);
  return h;
}

Hull hull(const SpineBall& window) {
  if (!window.complete) throw std::domain_error("hull needs a complete F-infinity window");
  if (window.overflow) throw std::domain_error("hull window overflowed its size cap");
  Hull h;
  h.graph = window.graph;
  h.root = window.root;
  h.exits = {window.spine_exit};
  h.radius = window.radius;
  h.labels.resize(window.graph.order());
  for (std::size_t i = 0; i < h.labels.size(); ++i) h.labels[i] = static_cast<Vertex>(i + 1);
  return h;
}

HullTreeCode hull_code(const Hull& h) { return canon_hull(h.graph, h.root, h.exits, h.radius); }

void Distribution::add(const std::string& key, std::uint64_t times) {
  counts_[key] += times;
  total_ += times;
}

void Distribution::merge(const Distribution& other) {
  for (const auto& [k, c] : other.counts_) counts_[k] += c;
  total_ += other.total_;
}

std::map<std::string, double> Distribution::frequencies() const {
  if (total_ == 0) throw std::invalid_argument("empirical distribution of an empty sample");
  std::map<std::string, double> out;
  for (const auto& [k, c] : counts_) out[k] = static_cast<double>(c) / static_cast<double>(total_);
  return out;
}

double Distribution::frequency(const std::string& key) const {
  if (total_ == 0) throw std::invalid_argument("empirical distribution of an empty sample");
  const auto it = counts_.find(key);
  return it == counts_.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total_);
}

Distribution empirical_distribution(const std::vector<std::string>& samples) {
  if (samples.empty()) throw std::invalid_argument("empirical distribution of an empty sample");
  Distribution d;
  for (const auto& s : samples) d.add(s);
  return d;
}

void write_distribution_csv(std::ostream& out, const Distribution& d) {
  out << "key,count,frequency\n";
  for (const auto& [key, c] : d.counts()) {
    std::string q = "\"";
    for (char ch : key) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    out << q << "\"," << c << ',' << format_real(d.frequency(key), 12) << '\n';
  }
}

void write_distribution_json(std::ostream& out, const Distribution& d) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& [key, c] : d.counts())
    rows.push_back({{"key", key}, {"count", c}, {"frequency", std::stod(format_real(d.frequency(key), 12))}});
  out << rows.dump(2) << '\n';
}

Rational removable_pendant_fraction(const std::vector<LabeledGraph>& members, const MembershipOracle& in_class,
                                    const RootedTreeCode& tree) {
  if (members.empty()) throw std::invalid_argument("removable_pendant_fraction: empty class");
  Rational sum = 0;
  for (const auto& g : members) {
    std::size_t copies = 0, removable = 0;
    for (Vertex v = 1; v <= g.order(); ++v) {
      const auto p = pendant_at(g, v);
      if (!p || !p->tree || p->tree->code != tree.code) continue;
      ++copies;
      if (in_class(remove_edge(g, p->removed.u, p->removed.v))) ++removable;
    }
    Rational share(static_cast<unsigned long>(copies == 0 ? 1 : removable), static_cast<unsigned long>(copies == 0 ? 1 : copies));
    share.canonicalize();
    sum += share;
  }
  sum /= Rational(static_cast<unsigned long>(members.size()));
  sum.canonicalize();
  return sum;
}

}  // namespace forestlab
