#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "forestlab/graph.hpp"
#include "forestlab/rng.hpp"
#include "forestlab/tree_canon.hpp"

namespace forestlab {

// Weights z^U over unrooted tree shapes with at most eps_bound vertices,
// keyed by unrooted code. Shapes absent from the map weigh 0.
struct WeightVector {
  std::size_t eps_bound = 1;
  std::map<std::string, double> weights;

  double weight(const std::string& code) const;
  // x = z^{single vertex}
  double x() const { return weight("()"); }
  // Throws unless every key is a valid code within the bound and weights are finite and >= 0.
  void validate() const;
  // Some base x with z^U == x^{|U|} (to 1e-15 relative) for every shape in range.
  bool is_geometric(double* base = nullptr) const;

  static WeightVector geometric(std::size_t eps_bound, double x);
  // z^U = e^{-|U|}
  static WeightVector extremal(std::size_t eps_bound);
  static WeightVector constant(std::size_t eps_bound, double value);
  // Independent uniform weights on [lo, hi).
  static WeightVector random(std::size_t eps_bound, Rng& rng, double lo = 0.0, double hi = 1.0);
};

// CSV "shape,weight" preceded by a "# eps_bound=<q>" line. Without that line
// the bound is the largest shape size present.
void write_weight_csv(std::ostream& out, const WeightVector& z);
WeightVector read_weight_csv(std::istream& in);

inline constexpr std::size_t kOmegaTreeCap = 12;

struct DecompositionValue {
  double value = 0;
  std::vector<std::vector<Vertex>> witness;  // pieces, each sorted; empty when value is 0
};

// Maximum over partitions of V(t) into connected pieces of at most eps_bound
// vertices of the product of piece weights, by enumerating every set of cut
// edges. The tree may have at most kOmegaTreeCap vertices.
DecompositionValue omega(const LabeledGraph& tree, const WeightVector& z);

enum class YKind { rooted, unrooted, edge_rooted };
YKind parse_ykind(const std::string& name);

// Truncated partition functions over shapes of size <= cutoff. Sizes above
// kOmegaTreeCap are only available for geometric weights, where
// omega(T) = x^{|T|} and each size layer has a closed form.
double partition_Y(const WeightVector& z, YKind kind, std::size_t size_cutoff);

struct YTerms {
  double rooted = 0, unrooted = 0, edge_rooted = 0;
};
// Per-size layers of all three functions from one pass; entry n is size n.
std::vector<YTerms> partition_layers(const WeightVector& z, std::size_t size_cutoff);

// |Y - Y^u - Y^e| at a common truncation.
double dissymmetry_residual(const WeightVector& z, std::size_t size_cutoff);

// omega(f(t1,t2)) - omega(t1) omega(t2), where f joins the two roots by an edge.
double supermultiplicativity_check(const LabeledGraph& t1, Vertex root1, const LabeledGraph& t2, Vertex root2,
                                   const WeightVector& z);
// The joined tree: t1 keeps its labels, t2 is shifted by |t1|.
LabeledGraph join_at_roots(const LabeledGraph& t1, Vertex root1, const LabeledGraph& t2, Vertex root2);

// Edge-rooted shapes of a tree: unordered pairs of half codes with the
// number of edges giving each, sorted by key "A|B" (A <= B).
struct EdgeRooting {
  std::string key;
  RootedTreeCode first, second;
  std::size_t orbit_size = 0;
};
std::vector<EdgeRooting> edge_rootings(const LabeledGraph& tree);
// Automorphisms preserving the unordered root edge.
BigCount aut_edge(const EdgeRooting& e);

// CSV rows: shape,omega,witness (pieces "1-2-3|4").
void write_omega_report(std::ostream& out, const std::vector<std::pair<std::string, DecompositionValue>>& rows);

}  // namespace forestlab
