#include "forestlab/tree_canon.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace forestlab {

namespace {

// Component of `start` as a 0-based adjacency list. `local_of` maps global
// labels to local indices (or -1).
struct LocalTree {
  std::vector<std::vector<int>> adj;
  std::vector<Vertex> global;
  std::vector<int> local_of;
};

LocalTree extract_component(const LabeledGraph& g, Vertex start) {
  if (start < 1 || start > g.order()) throw std::out_of_range("vertex out of range");
  LocalTree t;
  t.local_of.assign(g.order() + 1, -1);
  std::queue<Vertex> queue;
  queue.push(start);
  t.local_of[start] = 0;
  t.global.push_back(start);
  std::size_t degree_sum = 0;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop();
    degree_sum += g.degree(x);
    for (Vertex y : g.neighbors(x)) {
      if (t.local_of[y] >= 0) continue;
      t.local_of[y] = static_cast<int>(t.global.size());
      t.global.push_back(y);
      queue.push(y);
    }
  }
  if (degree_sum / 2 + 1 != t.global.size())
    throw std::invalid_argument("component of vertex " + std::to_string(start) + " is not a tree");
  t.adj.resize(t.global.size());
  for (std::size_t i = 0; i < t.global.size(); ++i)
    for (Vertex y : g.neighbors(t.global[i])) t.adj[i].push_back(t.local_of[y]);
  return t;
}

// Canonical code of the subtree at `root`, never entering `blocked`.
// Vertices with marked[x] use braces instead of parentheses.
std::string rooted_code(const std::vector<std::vector<int>>& adj, int root, int blocked = -1,
                        const std::vector<bool>* marked = nullptr) {
  std::vector<int> order{root};
  std::vector<int> parent(adj.size(), -1);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int x = order[i];
    for (int y : adj[x]) {
      if (y == blocked || parent[y] != -1) continue;
      parent[y] = x;
      order.push_back(y);
    }
  }
  std::vector<std::vector<std::string>> kids(adj.size());
  std::string result;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int x = *it;
    auto& children = kids[x];
    std::sort(children.begin(), children.end());
    const bool mark = marked && (*marked)[x];
    std::string code(1, mark ? '{' : '(');
    for (auto& c : children) code += c;
    code += mark ? '}' : ')';
    children.clear();
    children.shrink_to_fit();
    if (x == root)
      result = std::move(code);
    else
      kids[parent[x]].push_back(std::move(code));
  }
  return result;
}

// One or two centroids of a tree.
std::vector<int> centroids(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> order{0}, parent(n, -1), sub(n, 1);
  parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int y : adj[order[i]])
      if (parent[y] == -1) {
        parent[y] = order[i];
        order.push_back(y);
      }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (*it != 0) sub[parent[*it]] += sub[*it];
  std::vector<int> result;
  for (int x = 0; x < n; ++x) {
    int worst = n - sub[x];
    for (int y : adj[x])
      if (y != 0 && parent[y] == x) worst = std::max(worst, sub[y]);
    if (2 * worst <= n) result.push_back(x);
  }
  return result;
}

std::size_t count_vertices(std::string_view code) {
  return static_cast<std::size_t>(std::count_if(code.begin(), code.end(), [](char c) { return c == '(' || c == '{'; }));
}

// Splits "(" c1 c2 ... ")" into its child codes.
std::vector<std::string_view> split_children(std::string_view node) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 1;
  for (std::size_t i = 1; i + 1 < node.size(); ++i) {
    const char c = node[i];
    if (c == '(' || c == '{') {
      if (depth++ == 0) start = i;
    } else {
      if (--depth == 0) out.push_back(node.substr(start, i - start + 1));
    }
  }
  return out;
}

BigCount aut_of(std::string_view node) {
  auto children = split_children(node);
  std::sort(children.begin(), children.end());
  BigCount result = 1;
  for (std::size_t i = 0; i < children.size();) {
    std::size_t j = i;
    while (j < children.size() && children[j] == children[i]) ++j;
    const BigCount one = aut_of(children[i]);
    for (std::size_t k = i; k < j; ++k) result *= one;
    result *= factorial(j - i);
    i = j;
  }
  return result;
}

bool balanced(std::string_view s, char open, char close, char open2 = 0, char close2 = 0) {
  if (s.empty()) return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == open || (open2 && c == open2))
      ++depth;
    else if (c == close || (close2 && c == close2))
      --depth;
    else
      return false;
    if (depth < 0 || (depth == 0 && i + 1 != s.size())) return false;
  }
  return depth == 0;
}

// Appends the subtree encoded by `node` to the edge list, numbering in preorder.
Vertex build_from_code(std::string_view node, Vertex& next, std::vector<Edge>& edges, std::vector<Vertex>* marks) {
  const Vertex self = next++;
  if (marks && node.front() == '{') marks->push_back(self);
  for (auto child : split_children(node)) {
    const Vertex c = build_from_code(child, next, edges, marks);
    edges.push_back({self, c});
  }
  return self;
}

std::pair<std::string_view, std::string_view> bicentral_halves(std::string_view code) {
  const std::string_view inner = code.substr(1, code.size() - 2);
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    depth += inner[i] == '(' ? 1 : -1;
    if (depth == 0) return {inner.substr(0, i + 1), inner.substr(i + 1)};
  }
  throw std::invalid_argument("malformed bicentral code");
}

}  // namespace

RootedTreeCode RootedTreeCode::parse(std::string_view text) {
  if (!balanced(text, '(', ')')) throw std::invalid_argument("not a rooted tree code: " + std::string(text));
  RootedTreeCode raw{std::string(text), count_vertices(text)};
  const auto canonical = canon_rooted(tree_from_code(raw), 1);
  if (canonical.code != raw.code) throw std::invalid_argument("non-canonical rooted tree code: " + raw.code);
  return canonical;
}

UnrootedTreeCode UnrootedTreeCode::parse(std::string_view text) {
  UnrootedTreeCode raw{std::string(text), count_vertices(text), !text.empty() && text.front() == '['};
  if (raw.bicentral) {
    if (text.size() < 2 || text.back() != ']') throw std::invalid_argument("malformed bicentral code");
    auto [a, b] = bicentral_halves(text);
    if (!balanced(a, '(', ')') || !balanced(b, '(', ')')) throw std::invalid_argument("malformed bicentral code");
  } else if (!balanced(text, '(', ')')) {
    throw std::invalid_argument("not an unrooted tree code: " + std::string(text));
  }
  const auto canonical = canon_unrooted(tree_from_code(raw));
  if (canonical.code != raw.code) throw std::invalid_argument("non-canonical unrooted tree code: " + raw.code);
  return canonical;
}

ForestShape::ForestShape(std::vector<ShapePart> parts) : parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end());
  for (const auto& p : parts_) total_ += p.size;
}

bool ForestShape::all_trees() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const ShapePart& p) { return p.is_tree; });
}

ForestShape ForestShape::with(ShapePart extra) const {
  auto parts = parts_;
  parts.push_back(std::move(extra));
  return ForestShape(std::move(parts));
}

std::string ForestShape::key() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += parts_[i].code;
  }
  return out;
}

ForestShape ForestShape::parse(std::string_view key) {
  std::vector<ShapePart> parts;
  std::size_t pos = 0;
  while (pos < key.size()) {
    std::size_t end = key.find(',', pos);
    if (end == std::string_view::npos) end = key.size();
    const std::string_view code = key.substr(pos, end - pos);
    if (code.empty()) throw std::invalid_argument("empty part in forest shape key");
    const bool tree = code.front() == '(' || code.front() == '[';
    parts.push_back({std::string(code), code_size(code), tree});
    pos = end + 1;
  }
  return ForestShape(std::move(parts));
}

RootedTreeCode canon_rooted(const LabeledGraph& g, Vertex root) {
  const auto t = extract_component(g, root);
  return {rooted_code(t.adj, 0), t.global.size()};
}

UnrootedTreeCode canon_unrooted(const LabeledGraph& g, Vertex any_vertex) {
  const auto t = extract_component(g, any_vertex);
  const auto cs = centroids(t.adj);
  if (cs.size() == 1) return {rooted_code(t.adj, cs[0]), t.global.size(), false};
  std::string a = rooted_code(t.adj, cs[0], cs[1]);
  std::string b = rooted_code(t.adj, cs[1], cs[0]);
  if (b < a) std::swap(a, b);
  return {"[" + a + b + "]", t.global.size(), true};
}

UnrootedTreeCode canon_unrooted(const LabeledGraph& tree) {
  if (tree.order() == 0) throw std::invalid_argument("empty graph is not a tree");
  if (tree.edge_count() + 1 != tree.order()) throw std::invalid_argument("graph is not a tree");
  return canon_unrooted(tree, 1);
}

ForestShape canon_forest(const LabeledGraph& forest) {
  if (!is_forest(forest)) throw std::invalid_argument("canon_forest: graph has a cycle");
  std::vector<ShapePart> parts;
  for (const auto& block : components(forest).blocks) {
    auto c = canon_unrooted(forest, block.front());
    parts.push_back({std::move(c.code), c.size, true});
  }
  return ForestShape(std::move(parts));
}

HullTreeCode canon_hull(const LabeledGraph& tree, Vertex root, std::span<const Vertex> exits, std::size_t radius) {
  const auto t = extract_component(tree, root);
  std::vector<int> dist(t.adj.size(), -1);
  std::vector<int> order{0};
  dist[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int y : t.adj[order[i]])
      if (dist[y] < 0) {
        dist[y] = dist[order[i]] + 1;
        order.push_back(y);
      }
  std::vector<bool> marked(t.adj.size(), false);
  for (Vertex e : exits) {
    if (e < 1 || e > tree.order() || t.local_of[e] < 0)
      throw std::invalid_argument("exit vertex outside the root's component");
    const int local = t.local_of[e];
    if (marked[local]) throw std::invalid_argument("repeated exit vertex");
    if (static_cast<std::size_t>(dist[local]) != radius)
      throw std::invalid_argument("exit vertex not at distance r from the root");
    marked[local] = true;
  }
  return {rooted_code(t.adj, 0, -1, &marked), t.global.size(), radius, exits.size()};
}

BigCount aut_rooted(const RootedTreeCode& c) { return aut_of(c.code); }

BigCount aut_unrooted(const UnrootedTreeCode& c) {
  if (!c.bicentral) return aut_of(c.code);
  const auto [a, b] = bicentral_halves(c.code);
  if (a == b) {
    const BigCount half = aut_of(a);
    return 2 * half * half;
  }
  return aut_of(a) * aut_of(b);
}

BigCount aut_forest(const ForestShape& shape) {
  BigCount result = 1;
  const auto& parts = shape.parts();
  for (std::size_t i = 0; i < parts.size();) {
    if (!parts[i].is_tree) throw std::invalid_argument("aut_forest: non-tree part " + parts[i].code);
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    const BigCount one =
        aut_unrooted(UnrootedTreeCode{parts[i].code, parts[i].size, parts[i].code.front() == '['});
    for (std::size_t k = i; k < j; ++k) result *= one;
    result *= factorial(j - i);
    i = j;
  }
  return result;
}

BigCount aut_marked(const HullTreeCode& h) { return aut_of(h.code); }

BigCount aut_path(const HullTreeCode& h) {
  if (h.exits != 1) throw std::invalid_argument("aut_path needs exactly one exit vertex");
  return aut_of(h.code);
}

std::vector<Rooting> rootings(const UnrootedTreeCode& c) {
  const auto tree = tree_from_code(c);
  std::map<std::string, std::size_t> seen;
  for (Vertex v = 1; v <= tree.order(); ++v) ++seen[canon_rooted(tree, v).code];
  std::vector<Rooting> out;
  for (auto& [code, count] : seen) out.push_back({{code, c.size}, 1, count});
  return out;
}

LabeledGraph tree_from_code(const RootedTreeCode& c) {
  std::vector<Edge> edges;
  Vertex next = 1;
  build_from_code(c.code, next, edges, nullptr);
  return LabeledGraph(next - 1, std::move(edges));
}

LabeledGraph tree_from_code(const UnrootedTreeCode& c) {
  if (!c.bicentral) return tree_from_code(RootedTreeCode{c.code, c.size});
  const auto [a, b] = bicentral_halves(c.code);
  std::vector<Edge> edges;
  Vertex next = 1;
  const Vertex ra = build_from_code(a, next, edges, nullptr);
  const Vertex rb = build_from_code(b, next, edges, nullptr);
  edges.push_back({ra, rb});
  return LabeledGraph(next - 1, std::move(edges));
}

MarkedTree tree_from_code(const HullTreeCode& h) {
  MarkedTree out;
  std::vector<Edge> edges;
  Vertex next = 1;
  build_from_code(h.code, next, edges, &out.exits);
  out.tree = LabeledGraph(next - 1, std::move(edges));
  return out;
}

namespace {

class MinAdjacencySearch {
 public:
  MinAdjacencySearch(const LabeledGraph& g, int pinned) : n_(static_cast<int>(g.order())), adj_(n_, std::vector<bool>(n_)) {
    for (const auto& e : g.edges()) adj_[e.u - 1][e.v - 1] = adj_[e.v - 1][e.u - 1] = true;
    used_.assign(n_, false);
    if (pinned >= 0) {
      perm_.push_back(pinned);
      used_[pinned] = true;
    }
  }

  std::string run() {
    if (n_ == 0) return {};
    search();
    return best_;
  }

 private:
  bool twins(int x, int y) const {
    for (int z = 0; z < n_; ++z)
      if (z != x && z != y && adj_[x][z] != adj_[y][z]) return false;
    return true;
  }

  void search() {
    const int pos = static_cast<int>(perm_.size());
    if (pos == n_) {
      if (!has_best_ || prefix_ < best_) {
        best_ = prefix_;
        has_best_ = true;
      }
      return;
    }
    std::vector<int> tried;
    for (int cand = 0; cand < n_; ++cand) {
      if (used_[cand]) continue;
      if (std::any_of(tried.begin(), tried.end(), [&](int t) { return twins(t, cand); })) continue;
      tried.push_back(cand);
      const std::size_t old = prefix_.size();
      for (int i = 0; i < pos; ++i) prefix_ += adj_[perm_[i]][cand] ? '1' : '0';
      if (!has_best_ || prefix_.compare(0, prefix_.size(), best_, 0, prefix_.size()) <= 0) {
        used_[cand] = true;
        perm_.push_back(cand);
        search();
        perm_.pop_back();
        used_[cand] = false;
      }
      prefix_.resize(old);
    }
  }

  int n_;
  std::vector<std::vector<bool>> adj_;
  std::vector<bool> used_;
  std::vector<int> perm_;
  std::string prefix_;
  std::string best_;
  bool has_best_ = false;
};

}  // namespace

std::string small_graph_code(const LabeledGraph& g) {
  if (g.order() > kSmallGraphCap)
    throw std::invalid_argument("small_graph_code: more than " + std::to_string(kSmallGraphCap) + " vertices");
  return "g" + std::to_string(g.order()) + ":" + MinAdjacencySearch(g, -1).run();
}

std::string small_rooted_graph_code(const LabeledGraph& g, Vertex root) {
  if (g.order() > kSmallGraphCap)
    throw std::invalid_argument("small_rooted_graph_code: more than " + std::to_string(kSmallGraphCap) + " vertices");
  if (root < 1 || root > g.order()) throw std::out_of_range("root out of range");
  return "r" + std::to_string(g.order()) + ":" + MinAdjacencySearch(g, static_cast<int>(root) - 1).run();
}

std::size_t code_size(std::string_view code) {
  if (!code.empty() && (code.front() == 'g' || code.front() == 'r')) {
    const auto colon = code.find(':');
    return static_cast<std::size_t>(std::stoul(std::string(code.substr(1, colon - 1))));
  }
  return count_vertices(code);
}

}  // namespace forestlab
