#include "forestlab/shapes.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>

namespace forestlab {

namespace {

void check_limit(std::size_t n) {
  if (n > kShapeGenerationLimit)
    throw std::invalid_argument("shape generation capped at size " + std::to_string(kShapeGenerationLimit));
}

struct Catalog {
  std::mutex mutex;
  // deque keeps references stable while the catalog grows
  std::deque<std::vector<RootedTreeCode>> rooted{{}};
  std::deque<std::vector<UnrootedTreeCode>> unrooted{{}};
};

Catalog& catalog() {
  static Catalog c;
  return c;
}

// Non-decreasing picks from `pool` whose sizes sum to `remaining`.
template <class Item, class Emit>
void multisets(const std::vector<const Item*>& pool, std::size_t first, std::size_t remaining,
               std::vector<const Item*>& picked, const Emit& emit) {
  if (remaining == 0) {
    emit(picked);
    return;
  }
  for (std::size_t i = first; i < pool.size(); ++i) {
    if (pool[i]->size > remaining) continue;
    picked.push_back(pool[i]);
    multisets(pool, i, remaining - pool[i]->size, picked, emit);
    picked.pop_back();
  }
}

void grow_rooted(Catalog& c, std::size_t n) {
  while (c.rooted.size() <= n) {
    const std::size_t size = c.rooted.size();
    std::vector<const RootedTreeCode*> pool;
    for (std::size_t s = 1; s < size; ++s)
      for (const auto& code : c.rooted[s]) pool.push_back(&code);
    std::set<std::string> codes;
    std::vector<const RootedTreeCode*> picked;
    multisets(pool, 0, size - 1, picked, [&](const std::vector<const RootedTreeCode*>& kids) {
      std::vector<std::string_view> parts;
      for (const auto* k : kids) parts.push_back(k->code);
      std::sort(parts.begin(), parts.end());
      std::string code = "(";
      for (auto p : parts) code += p;
      code += ')';
      codes.insert(std::move(code));
    });
    std::vector<RootedTreeCode> layer;
    for (auto& code : codes) layer.push_back({code, size});
    c.rooted.push_back(std::move(layer));
  }
}

}  // namespace

const std::vector<RootedTreeCode>& rooted_trees_of_size(std::size_t n) {
  check_limit(n);
  auto& c = catalog();
  std::lock_guard lock(c.mutex);
  grow_rooted(c, n);
  return c.rooted[n];
}

const std::vector<UnrootedTreeCode>& unrooted_trees_of_size(std::size_t n) {
  check_limit(n);
  auto& c = catalog();
  std::lock_guard lock(c.mutex);
  grow_rooted(c, n);
  while (c.unrooted.size() <= n) {
    const std::size_t size = c.unrooted.size();
    std::set<UnrootedTreeCode> seen;
    for (const auto& r : c.rooted[size]) seen.insert(canon_unrooted(tree_from_code(r)));
    c.unrooted.emplace_back(seen.begin(), seen.end());
  }
  return c.unrooted[n];
}

std::vector<ForestShape> forest_shapes_of_size(std::size_t total) {
  check_limit(total);
  std::vector<UnrootedTreeCode> owned;
  for (std::size_t s = 1; s <= total; ++s) {
    const auto& layer = unrooted_trees_of_size(s);
    owned.insert(owned.end(), layer.begin(), layer.end());
  }
  std::vector<const UnrootedTreeCode*> pool;
  for (const auto& u : owned) pool.push_back(&u);
  std::vector<ForestShape> out;
  std::vector<const UnrootedTreeCode*> picked;
  multisets(pool, 0, total, picked, [&](const std::vector<const UnrootedTreeCode*>& parts) {
    std::vector<ShapePart> sp;
    for (const auto* p : parts) sp.push_back({p->code, p->size, true});
    out.emplace_back(std::move(sp));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HullTreeCode> hull_trees_of_size(std::size_t n, std::size_t radius) {
  check_limit(n);
  std::set<HullTreeCode> seen;
  for (const auto& u : unrooted_trees_of_size(n)) {
    const auto tree = tree_from_code(u);
    for (Vertex root = 1; root <= tree.order(); ++root) {
      std::vector<std::size_t> dist(tree.order() + 1, SIZE_MAX);
      std::vector<Vertex> order{root};
      dist[root] = 0;
      for (std::size_t i = 0; i < order.size(); ++i)
        for (Vertex y : tree.neighbors(order[i]))
          if (dist[y] == SIZE_MAX) {
            dist[y] = dist[order[i]] + 1;
            order.push_back(y);
          }
      for (Vertex w = 1; w <= tree.order(); ++w) {
        if (dist[w] != radius) continue;
        const Vertex exits[] = {w};
        seen.insert(canon_hull(tree, root, exits, radius));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace forestlab
