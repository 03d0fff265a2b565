#include "forestlab/class_lab.hpp"

#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "forestlab/combinat.hpp"

namespace forestlab {

namespace {

void check_enumeration(std::size_t n, const char* what) {
  if (n > kClassEnumerationCap)
    throw std::invalid_argument(std::string(what) + ": exhaustive class operations are capped at n = " +
                                std::to_string(kClassEnumerationCap));
}

// Calls visit(u, v) for every pair of vertices in distinct components.
template <class Visit>
void for_each_bridging_pair(const LabeledGraph& g, const Visit& visit) {
  const auto part = components(g);
  for (Vertex u = 1; u <= g.order(); ++u)
    for (Vertex v = u + 1; v <= g.order(); ++v)
      if (part.block_of[u] != part.block_of[v]) visit(u, v);
}

}  // namespace

bool FiniteClass::insert(const LabeledGraph& g) {
  if (g.order() != n_)
    throw std::invalid_argument("class on " + std::to_string(n_) + " vertices cannot hold a graph on " +
                                std::to_string(g.order()));
  return members_.insert(g).second;
}

bool is_bridge_addable(const FiniteClass& c) {
  check_enumeration(c.order(), "is_bridge_addable");
  for (const auto& g : c.members()) {
    bool ok = true;
    for_each_bridging_pair(g, [&](Vertex u, Vertex v) {
      if (ok && !c.contains(add_edge(g, u, v))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

FiniteClass bridge_addable_closure(std::size_t n, const std::vector<LabeledGraph>& seeds) {
  check_enumeration(n, "bridge_addable_closure");
  FiniteClass c(n);
  std::deque<LabeledGraph> work;
  for (const auto& s : seeds)
    if (c.insert(s)) work.push_back(s);
  while (!work.empty()) {
    const LabeledGraph g = std::move(work.front());
    work.pop_front();
    for_each_bridging_pair(g, [&](Vertex u, Vertex v) {
      auto h = add_edge(g, u, v);
      if (c.insert(h)) work.push_back(std::move(h));
    });
  }
  return c;
}

FiniteClass all_forests_class(std::size_t n) {
  check_enumeration(n, "all_forests_class");
  FiniteClass c(n);
  for_each_forest(n, [&](const LabeledGraph& g) { c.insert(g); });
  return c;
}

BigCount ComponentCensus::total() const {
  BigCount sum = 0;
  for (const auto& x : counts) sum += x;
  return sum;
}

ComponentCensus component_census(const FiniteClass& c) {
  ComponentCensus census;
  census.counts.assign(c.order() + 1, 0);
  for (const auto& g : c.members()) census.counts[components(g).count()] += 1;
  return census;
}

bool verify_easy_bound(const ComponentCensus& census) {
  for (std::size_t i = 1; i + 1 < census.counts.size(); ++i)
    if (BigCount(static_cast<unsigned long>(i)) * census.counts[i + 1] > census.counts[i]) return false;
  return true;
}

Rational connectivity_probability(const FiniteClass& c) {
  if (c.empty()) throw std::invalid_argument("connectivity_probability: empty class");
  const auto census = component_census(c);
  Rational p(census.counts.size() > 1 ? census.counts[1] : BigCount(0), BigCount(static_cast<unsigned long>(c.size())));
  p.canonicalize();
  return p;
}

std::size_t clique_size(std::size_t n) {
  if (n == 0) return 0;
  // least k with k^3 >= n^2, in exact integers
  const BigCount target = BigCount(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n);
  std::size_t k = static_cast<std::size_t>(std::cbrt(static_cast<double>(n) * static_cast<double>(n)));
  auto cube = [](std::size_t x) {
    BigCount c = static_cast<unsigned long>(x);
    return BigCount(c * c * c);
  };
  while (k > 0 && cube(k - 1) >= target) --k;
  while (cube(k) < target) ++k;
  return k;
}

BigCount clique_connected_count(std::size_t i, std::size_t k) {
  if (k < 1 || i < k) throw std::invalid_argument("clique_connected_count: need 1 <= k <= i");
  const Rational r = Rational(static_cast<unsigned long>(k)) *
                     rational_power(i, static_cast<long>(i) - static_cast<long>(k) - 1);
  if (r.get_den() != 1) throw std::logic_error("clique_connected_count: non-integer count");
  return r.get_num();
}

BigCount clique_class_total_convolution(std::size_t n, std::size_t k) {
  if (k < 1 || n < k) throw std::invalid_argument("clique class needs 1 <= k <= n");
  const auto f = forest_counts_upto(n - k);
  Rational sum = 0;
  for (std::size_t i = k; i <= n; ++i) {
    const std::size_t j = n - i;
    Rational term(clique_connected_count(i, k), factorial(i - k));
    Rational forests(f[j], factorial(j));
    term.canonicalize();
    forests.canonicalize();
    term *= forests;
    sum += term;
  }
  sum *= Rational(factorial(n - k));
  sum.canonicalize();
  if (sum.get_den() != 1) throw std::logic_error("clique class convolution is not an integer");
  return sum.get_num();
}

BigCount clique_class_total_contraction(std::size_t n, std::size_t k) {
  if (k < 1 || n < k) throw std::invalid_argument("clique class needs 1 <= k <= n");
  const std::size_t big_n = n - k + 1;
  const auto f = forest_counts_upto(big_n);
  BigCount total = 0;
  for (std::size_t s = 1; s <= big_n; ++s) {
    BigCount weighted = 0;  // trees on s vertices, each weighted by k^{deg(c)}
    if (s == 1) {
      weighted = 1;
    } else {
      for (std::size_t d = 1; d <= s - 1; ++d)
        weighted += binomial(s - 2, d - 1) * power(s - 1, s - 1 - d) * power(k, d);
    }
    total += binomial(big_n - 1, s - 1) * f[big_n - s] * weighted;
  }
  return total;
}

namespace {

TightClassStats tight_stats(std::size_t n) {
  if (n < 2) throw std::invalid_argument("class statistics need n >= 2");
  TightClassStats s;
  s.n = n;
  s.k = clique_size(n);
  s.connected = clique_connected_count(n, s.k);
  s.total = clique_class_total_convolution(n, s.k);
  s.probability = Rational(s.connected, s.total);
  s.probability.canonicalize();
  s.excess = (to_high(s.probability) - exp_neg_half_units(0, 1)).convert_to<double>();
  return s;
}

}  // namespace

TightClassStats clique_class_stats(std::size_t n) { return tight_stats(n); }
TightClassStats path_class_stats(std::size_t n) { return tight_stats(n); }

LabeledGraph clique_seed(std::size_t n) {
  const std::size_t k = clique_size(n);
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= k; ++u)
    for (Vertex v = u + 1; v <= k; ++v) edges.push_back({u, v});
  return LabeledGraph(n, std::move(edges));
}

LabeledGraph path_seed(std::size_t n) {
  const std::size_t k = clique_size(n);
  std::vector<Edge> edges;
  for (Vertex u = 1; u < k; ++u) edges.push_back({u, u + 1});
  return LabeledGraph(n, std::move(edges));
}

std::size_t diameter(const LabeledGraph& g) {
  std::size_t best = 0;
  std::vector<std::size_t> dist(g.order() + 1);
  std::vector<Vertex> queue;
  for (Vertex s = 1; s <= g.order(); ++s) {
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[s] = 0;
    queue.assign(1, s);
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Vertex y : g.neighbors(queue[i]))
        if (dist[y] == SIZE_MAX) {
          dist[y] = dist[queue[i]] + 1;
          best = std::max(best, dist[y]);
          queue.push_back(y);
        }
  }
  return best;
}

std::vector<Rational> component_law_exact(std::size_t n) {
  if (n < 1 || n > kComponentLawCap)
    throw std::invalid_argument("component_law_exact: n must lie in 1.." + std::to_string(kComponentLawCap));
  const auto counts = forest_component_counts(n);
  const BigCount f = count_forests(n);
  std::vector<Rational> law;
  for (std::size_t k = 1; k <= n; ++k) {
    Rational p(counts[k], f);
    p.canonicalize();
    law.push_back(p);
  }
  return law;
}

double component_law_tv(const std::vector<Rational>& law) {
  // Poisson(1/2) masses in high precision; the mass beyond the support counts in full.
  const HighReal e_half = exp_neg_half_units(0, 1);
  HighReal poisson = e_half;  // e^{-1/2} 2^{-j} / j!
  HighReal covered = 0;
  HighReal l1 = 0;
  for (std::size_t j = 0; j < law.size(); ++j) {
    l1 += boost::multiprecision::abs(to_high(law[j]) - poisson);
    covered += poisson;
    poisson /= 2 * (j + 1);
  }
  l1 += HighReal(1) - covered;
  return (l1 / 2).convert_to<double>();
}

void write_class(std::ostream& out, const FiniteClass& c) {
  out << c.order() << ' ' << c.size() << '\n';
  bool first = true;
  for (const auto& g : c.members()) {
    out << (first ? "" : "\n");
    first = false;
    write_edge_list(out, g);
  }
}

FiniteClass read_class(std::istream& in) {
  long long n = -1, count = -1;
  if (!(in >> n >> count) || n < 0 || count < 0) throw std::invalid_argument("class file: bad header");
  FiniteClass c(static_cast<std::size_t>(n));
  for (long long i = 0; i < count; ++i) {
    const auto g = read_edge_list(in);
    if (g.order() != static_cast<std::size_t>(n))
      throw std::invalid_argument("class file: member " + std::to_string(i + 1) + " has the wrong vertex count");
    if (!c.insert(g)) throw std::invalid_argument("class file: duplicate member " + std::to_string(i + 1));
  }
  return c;
}

}  // namespace forestlab
