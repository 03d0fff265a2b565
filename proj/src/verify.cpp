#include "forestlab/verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "forestlab/class_lab.hpp"
#include "forestlab/combinat.hpp"
#include "forestlab/rng.hpp"
#include "forestlab/sampler.hpp"
#include "forestlab/shapes.hpp"
#include "forestlab/tree_canon.hpp"
#include "forestlab/weight_dp.hpp"

namespace forestlab {

BigCount brute_force_automorphisms(const LabeledGraph& g, const std::vector<Vertex>& fixed,
                                   const std::vector<Vertex>& marked) {
  const std::size_t n = g.order();
  if (n > 10) throw std::invalid_argument("brute_force_automorphisms: at most 10 vertices");
  std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
  for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  std::vector<char> is_fixed(n + 1, 0), is_marked(n + 1, 0);
  for (Vertex v : fixed) is_fixed.at(v) = 1;
  for (Vertex v : marked) is_marked.at(v) = 1;
  std::vector<Vertex> image(n + 1, 0);
  std::vector<char> used(n + 1, 0);
  std::uint64_t count = 0;
  std::function<void(Vertex)> place = [&](Vertex v) {
    if (v > n) {
      ++count;
      return;
    }
    for (Vertex w = 1; w <= n; ++w) {
      if (used[w] || (is_fixed[v] && w != v) || is_marked[v] != is_marked[w] || g.degree(v) != g.degree(w)) continue;
      bool ok = true;
      for (Vertex u = 1; u < v && ok; ++u) ok = adj[u][v] == adj[image[u]][w];
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      place(v + 1);
      used[w] = 0;
    }
  };
  place(1);
  return BigCount(static_cast<unsigned long>(count));
}

std::size_t print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  std::size_t failures = 0;
  for (const auto& c : checks) {
    if (c.passed) {
      out << "PASS " << c.name << '\n';
    } else {
      ++failures;
      out << "FAIL " << c.name << ": " << c.detail << '\n';
    }
  }
  return failures;
}

namespace {

constexpr std::uint64_t kVerifySeed = 20160601;

struct Suite {
  std::vector<CheckResult> results;

  // Records one check; `detail` describes the first failure.
  void expect(const std::string& name, bool ok, const std::string& detail = "") {
    results.push_back({name, ok, ok ? "" : detail});
  }
};

LabeledGraph relabel(const LabeledGraph& g, const std::vector<Vertex>& perm) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back(make_edge(perm[e.u], perm[e.v]));
  return LabeledGraph(g.order(), std::move(edges));
}

std::vector<Vertex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> p(n + 1);
  std::iota(p.begin(), p.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i], p[1 + rng.below(i)]);
  return p;
}

LabeledGraph realize(const ForestShape& shape) {
  std::vector<Edge> edges;
  Vertex offset = 0;
  for (const auto& part : shape.parts()) {
    const auto t = tree_from_code(UnrootedTreeCode::parse(part.code));
    for (const auto& e : t.edges()) edges.push_back({e.u + offset, e.v + offset});
    offset += static_cast<Vertex>(t.order());
  }
  return LabeledGraph(offset, std::move(edges));
}

std::vector<CheckResult> canon_suite() {
  Suite s;
  Rng rng(SeededStream{kVerifySeed, 0});
  std::string bad;
  for (std::size_t n = 1; n <= 8 && bad.empty(); ++n)
    for (const auto& u : unrooted_trees_of_size(n)) {
      const auto t = tree_from_code(u);
      for (int rep = 0; rep < 5; ++rep)
        if (canon_unrooted(relabel(t, random_permutation(n, rng))) != u) bad = u.code;
      if (UnrootedTreeCode::parse(u.code) != u) bad = u.code;
    }
  s.expect("unrooted codes are relabeling invariant (n <= 8)", bad.empty(), "shape " + bad);

  bad.clear();
  for (std::size_t n = 1; n <= 7 && bad.empty(); ++n)
    for (const auto& r : rooted_trees_of_size(n))
      if (aut_rooted(r) != brute_force_automorphisms(tree_from_code(r), {1})) bad = r.code;
  s.expect("aut_rooted matches brute force (n <= 7)", bad.empty(), "shape " + bad);

  bad.clear();
  for (std::size_t n = 1; n <= 8 && bad.empty(); ++n)
    for (const auto& u : unrooted_trees_of_size(n))
      if (aut_unrooted(u) != brute_force_automorphisms(tree_from_code(u))) bad = u.code;
  s.expect("aut_unrooted matches brute force (n <= 8)", bad.empty(), "shape " + bad);

  bad.clear();
  for (std::size_t n = 1; n <= 7 && bad.empty(); ++n)
    for (const auto& f : forest_shapes_of_size(n))
      if (aut_forest(f) != brute_force_automorphisms(realize(f))) bad = f.key();
  s.expect("aut_forest matches brute force (total <= 7)", bad.empty(), "shape " + bad);
  return s.results;
}

std::vector<CheckResult> counts_suite() {
  Suite s;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<BigCount> by_k(n + 1, 0);
    BigCount total = 0;
    for_each_forest(n, [&](const LabeledGraph& g) {
      total += 1;
      by_k[components(g).count()] += 1;
    });
    bool ok = count_forests(n) == total;
    for (std::size_t k = 0; k <= n; ++k) ok = ok && count_forests_with_components(n, k) == by_k[k];
    ok = ok && count_trees(n) == by_k[1] && cayley_rooted(n) == by_k[1] * static_cast<unsigned long>(n);
    s.expect("forest counts match enumeration at n = " + std::to_string(n), ok,
             "f_n = " + to_decimal(count_forests(n)) + ", enumerated " + to_decimal(total));
  }
  return s.results;
}

std::vector<CheckResult> identities_suite() {
  Suite s;
  for (std::size_t n = 1; n <= 9; ++n) {
    Rational rooted = 0, unrooted = 0;
    for (const auto& r : rooted_trees_of_size(n)) rooted += Rational(1, aut_rooted(r));
    for (const auto& u : unrooted_trees_of_size(n)) unrooted += Rational(1, aut_unrooted(u));
    rooted *= Rational(factorial(n));
    unrooted *= Rational(factorial(n));
    rooted.canonicalize();
    unrooted.canonicalize();
    s.expect("sum n!/Aut_r = n^(n-1) at n = " + std::to_string(n), rooted == Rational(cayley_rooted(n)),
             to_fraction_string(rooted));
    s.expect("sum n!/Aut_u = n^(n-2) at n = " + std::to_string(n), unrooted == Rational(count_trees(n)),
             to_fraction_string(unrooted));
  }

  std::string bad;
  for (std::size_t n = 1; n <= 9 && bad.empty(); ++n)
    for (const auto& u : unrooted_trees_of_size(n)) {
      Rational sum = 0;
      for (const auto& r : rootings(u)) sum += Rational(1, aut_rooted(r.code));
      sum.canonicalize();
      Rational expect(BigCount(static_cast<unsigned long>(n)), aut_unrooted(u));
      expect.canonicalize();
      if (sum != expect) bad = u.code;
    }
  s.expect("rooting identity sum 1/Aut_r = |U|/Aut_u (n <= 9)", bad.empty(), "shape " + bad);

  bad.clear();
  for (std::size_t total = 1; total <= 8 && bad.empty(); ++total)
    for (const auto& f : forest_shapes_of_size(total)) {
      BigCount recursive = 1;
      const auto& parts = f.parts();
      for (std::size_t j = 0; j < parts.size(); ++j) {
        unsigned long m = 0;
        for (std::size_t i = 0; i <= j; ++i) m += parts[i] == parts[j];
        recursive *= m * aut_unrooted(UnrootedTreeCode::parse(parts[j].code));
      }
      if (recursive != aut_forest(f)) bad = f.key();
    }
  s.expect("forest automorphism recursion equals product form (total <= 8)", bad.empty(), "shape " + bad);

  const auto t = series_T(30);
  s.expect("T = z exp(T) to order 30", t == t.exp().shifted());
  s.expect("F = exp(T - T^2/2) to order 30", series_F(30) == (t - Rational(1, 2) * t.pow(2)).exp());
  bool layers = true;
  const auto f = series_F(30);
  for (std::size_t n = 0; n <= 30; ++n) layers = layers && f.labeled_count(n) == count_forests(n);
  s.expect("n! [z^n] F = f_n to order 30", layers);

  s.expect("dissymmetry residual at extremal weights, cutoff 8",
           dissymmetry_residual(WeightVector::extremal(4), 8) <= 1e-9);
  return s.results;
}

std::vector<CheckResult> weight_dp_suite() {
  Suite s;
  Rng rng(SeededStream{kVerifySeed, 1});
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t eps = 1 + rng.below(4);
    const auto z = WeightVector::random(eps, rng, 0.0, 2.0);
    const std::size_t a = 1 + rng.below(6), b = 1 + rng.below(12 - a);
    const std::vector<Vertex> la = [&] {
      std::vector<Vertex> v(a);
      std::iota(v.begin(), v.end(), Vertex{1});
      return v;
    }();
    std::vector<Vertex> lb(b);
    std::iota(lb.begin(), lb.end(), Vertex{1});
    const LabeledGraph t1(a, sample_uniform_tree(la, rng));
    const LabeledGraph t2(b, sample_uniform_tree(lb, rng));
    const auto r1 = static_cast<Vertex>(1 + rng.below(a));
    const auto r2 = static_cast<Vertex>(1 + rng.below(b));
    worst = std::min(worst, supermultiplicativity_check(t1, r1, t2, r2, z));
  }
  std::ostringstream w;
  w << "smallest residual " << worst;
  s.expect("supermultiplicativity residuals >= -1e-12 (200 random triples)", worst >= -1e-12, w.str());

  const auto ext = WeightVector::extremal(4);
  std::string bad;
  for (std::size_t n = 1; n <= 8; ++n)
    for (const auto& u : unrooted_trees_of_size(n)) {
      const double target = std::exp(-static_cast<double>(n));
      if (std::fabs(omega(tree_from_code(u), ext).value - target) > 1e-12 * target) bad = u.code;
    }
  s.expect("omega at z^U = e^-|U| equals e^-|t| (n <= 8)", bad.empty(), "shape " + bad);

  bad.clear();
  for (int rep = 0; rep < 3; ++rep) {
    const auto z = WeightVector::random(3, rng, 0.0, 1.5);
    for (std::size_t n = 1; n <= 8; ++n)
      for (const auto& u : unrooted_trees_of_size(n)) {
        const double w_val = omega(tree_from_code(u), z).value;
        if (w_val < std::pow(z.x(), static_cast<double>(n)) * (1 - 1e-12)) bad = u.code;
        if (n <= 3 && w_val < z.weight(u.code) * (1 - 1e-12)) bad = u.code;
      }
  }
  s.expect("omega >= x^|t| and omega(U) >= z^U", bad.empty(), "shape " + bad);

  s.expect("dissymmetry residual <= 1e-9 at cutoff 8 (random weights)",
           dissymmetry_residual(WeightVector::random(3, rng), 8) <= 1e-9);
  const double yu = partition_Y(WeightVector::extremal(4), YKind::unrooted, 60);
  std::ostringstream y;
  y << "Y^u = " << yu;
  s.expect("truncated Y^u at extremal weights within 1e-3 of 1/2", std::fabs(yu - 0.5) <= 1e-3, y.str());
  return s.results;
}

std::vector<CheckResult> class_lab_suite() {
  Suite s;
  for (std::size_t n = 1; n <= 6; ++n)
    s.expect("easy bound for all forests at n = " + std::to_string(n),
             verify_easy_bound(component_census(all_forests_class(n))));

  Rng rng(SeededStream{kVerifySeed, 2});
  for (std::size_t n = 4; n <= 6; ++n) {
    bool ok = true;
    for (int rep = 0; rep < 20 && ok; ++rep) {
      std::vector<LabeledGraph> seeds;
      const std::size_t count = 1 + rng.below(2);
      for (std::size_t i = 0; i < count; ++i) {
        std::vector<Edge> edges;
        for (Vertex u = 1; u <= n; ++u)
          for (Vertex v = u + 1; v <= n; ++v)
            if (rng.below(10) < 3) edges.push_back({u, v});
        seeds.emplace_back(n, std::move(edges));
      }
      const auto c = bridge_addable_closure(n, seeds);
      ok = is_bridge_addable(c) && verify_easy_bound(component_census(c));
    }
    s.expect("closures of random seeds are bridge-addable and satisfy the easy bound at n = " + std::to_string(n), ok);
  }

  bool routes = true;
  for (std::size_t n = 2; n <= 20; ++n) {
    const auto k = clique_size(n);
    routes = routes && clique_class_total_convolution(n, k) == clique_class_total_contraction(n, k);
  }
  s.expect("clique class totals agree by both routes (n <= 20)", routes);

  bool closures = true;
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto stats = clique_class_stats(n);
    const auto clique = component_census(bridge_addable_closure(n, {clique_seed(n)}));
    const auto path = component_census(bridge_addable_closure(n, {path_seed(n)}));
    closures = closures && clique.total() == stats.total && clique.counts[1] == stats.connected &&
               path.total() == stats.total && path.counts[1] == stats.connected;
  }
  s.expect("clique and path class counts match exhaustive closures (n <= 7)", closures);

  const auto st = clique_class_stats(200);
  std::ostringstream d;
  d << "excess " << st.excess;
  s.expect("clique class connectivity within 0.05 of e^-1/2 at n = 200", std::fabs(st.excess) <= 0.05, d.str());

  const auto law = component_law_exact(4);
  std::vector<Rational> expect;
  for (unsigned long c : {16UL, 15UL, 6UL, 1UL}) {
    expect.emplace_back(c, 38UL);
    expect.back().canonicalize();
  }
  s.expect("component law at n = 4 is (16,15,6,1)/38", law == expect);
  return s.results;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"canon", "counts", "identities", "weight-dp", "class-lab"};
  return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite) {
  if (suite == "canon") return canon_suite();
  if (suite == "counts") return counts_suite();
  if (suite == "identities") return identities_suite();
  if (suite == "weight-dp") return weight_dp_suite();
  if (suite == "class-lab") return class_lab_suite();
  throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

}  // namespace forestlab
