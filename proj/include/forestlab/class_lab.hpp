#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <vector>

#include "forestlab/bignum.hpp"
#include "forestlab/graph.hpp"

namespace forestlab {

// Exhaustive class operations stop here.
inline constexpr std::size_t kClassEnumerationCap = 7;

// A finite set of graphs on [1..n]; members are deduplicated by edge set.
class FiniteClass {
 public:
  explicit FiniteClass(std::size_t n = 0) : n_(n) {}

  std::size_t order() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::set<LabeledGraph>& members() const { return members_; }
  bool contains(const LabeledGraph& g) const { return members_.count(g) > 0; }
  // Returns false when g was already present; throws on a vertex-count mismatch.
  bool insert(const LabeledGraph& g);

  bool operator==(const FiniteClass& o) const { return n_ == o.n_ && members_ == o.members_; }

 private:
  std::size_t n_;
  std::set<LabeledGraph> members_;
};

bool is_bridge_addable(const FiniteClass& c);
FiniteClass bridge_addable_closure(std::size_t n, const std::vector<LabeledGraph>& seeds);
FiniteClass all_forests_class(std::size_t n);

// counts[i] = members with i components; counts[0] is always 0.
struct ComponentCensus {
  std::vector<BigCount> counts;
  BigCount total() const;
};
ComponentCensus component_census(const FiniteClass& c);
// i * counts[i+1] <= counts[i] for every i >= 1.
bool verify_easy_bound(const ComponentCensus& census);
Rational connectivity_probability(const FiniteClass& c);

// k_n = ceil(n^{2/3}), computed in integers as the least k with k^3 >= n^2.
std::size_t clique_size(std::size_t n);

// Connected graphs on [1..i] inducing a fixed connected graph on [1..k] that
// become a tree once [1..k] is contracted: k i^{i-k-1}.
BigCount clique_connected_count(std::size_t i, std::size_t k);
// Members on [1..n] of the class "fixed connected graph on [1..k], contraction is
// a forest", from the labeled convolution with exact rationals.
BigCount clique_class_total_convolution(std::size_t n, std::size_t k);
// Same count by the size s of the contracted vertex's tree, weighting each tree
// by k^{deg}: sum_s C(N-1,s-1) f_{N-s} sum_d C(s-2,d-1) (s-1)^{s-1-d} k^d, N = n-k+1.
BigCount clique_class_total_contraction(std::size_t n, std::size_t k);

struct TightClassStats {
  std::size_t n = 0;
  std::size_t k = 0;
  BigCount connected;
  BigCount total;
  Rational probability;
  // probability - e^{-1/2}
  double excess = 0;
};
TightClassStats clique_class_stats(std::size_t n);
// The path on [1..k] plus isolated vertices, closed under bridge addition.
// Every edge leaving the contracted path picks one of its k vertices, so the
// counts coincide with the clique class.
TightClassStats path_class_stats(std::size_t n);

// Seeds of the two classes, and their exhaustive closures (n <= 7).
LabeledGraph clique_seed(std::size_t n);
LabeledGraph path_seed(std::size_t n);

// Largest distance between two vertices in the same component.
std::size_t diameter(const LabeledGraph& g);

// Entry j: probability that a uniform forest on [1..n] has j+1 components.
inline constexpr std::size_t kComponentLawCap = 2000;
std::vector<Rational> component_law_exact(std::size_t n);
// Total variation to the law of 1 + Poisson(1/2).
double component_law_tv(const std::vector<Rational>& law);

// "n count" header, then each member as an edge list, separated by blank lines.
void write_class(std::ostream& out, const FiniteClass& c);
FiniteClass read_class(std::istream& in);

}  // namespace forestlab
