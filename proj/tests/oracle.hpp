#pragma once

// Brute-force reference implementations used to check the library. Nothing
// here calls into forestlab algorithms; only the value types are shared.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "forestlab/graph.hpp"

namespace oracle {

using forestlab::Edge;
using forestlab::LabeledGraph;
using forestlab::Vertex;

mpz_class factorial(unsigned long n);
mpz_class power(unsigned long base, unsigned long exponent);

// All unordered pairs of [1..n] in lexicographic order.
std::vector<Edge> all_pairs(std::size_t n);

// Every simple graph on [1..n], as the edge subset selected by each mask.
void for_each_graph(std::size_t n, const std::function<void(const LabeledGraph&)>& visit);

std::size_t component_count(std::size_t n, const std::vector<Edge>& edges);
bool acyclic(std::size_t n, const std::vector<Edge>& edges);
// Vertex sets of components, each sorted, ordered by smallest vertex.
std::vector<std::vector<Vertex>> component_sets(const LabeledGraph& g);

// Edges whose deletion raises the component count.
std::set<Edge> bridges_by_removal(const LabeledGraph& g);

// Labeled trees on [1..n] by decoding every Pruefer sequence.
std::vector<LabeledGraph> all_labeled_trees(std::size_t n);
// Forests on [1..n] grouped by number of components: result[k].
std::vector<mpz_class> forest_counts_by_enumeration(std::size_t n);

// Permutations of [1..n] preserving adjacency, fixing `fixed` pointwise and
// mapping `marked` onto itself. Plain next_permutation scan.
std::uint64_t count_automorphisms(const LabeledGraph& g, const std::vector<Vertex>& fixed = {},
                                  const std::vector<Vertex>& marked = {});
// Isomorphism by trying every bijection; with roots, the roots must correspond.
bool isomorphic(const LabeledGraph& a, const LabeledGraph& b, Vertex root_a = 0, Vertex root_b = 0);

std::vector<std::size_t> distances(const LabeledGraph& g, Vertex from);  // SIZE_MAX if unreachable

struct HullSets {
  std::set<Vertex> vertices;
  std::set<Vertex> exits;
};
// Hull straight from the definition: ball plus small outside components that
// are not components of g; exits are the ball vertices adjacent to a large one.
HullSets hull_sets(const LabeledGraph& g, Vertex v, std::size_t r);

// Pendant tree at v by the removal test on each incident edge, ties to the
// smallest neighbor. Returns the vertex set of v's side (empty if none) and
// whether it induces a tree.
struct PendantSide {
  bool exists = false;
  Vertex removed_neighbor = 0;
  std::set<Vertex> side;
  bool is_tree = false;
};
PendantSide pendant_side(const LabeledGraph& g, Vertex v);

// Maximum weight over ordered admissible decompositions T_1 < ... < T_l = T,
// each step joining a piece of at most eps vertices by one edge. The weight of
// a piece is looked up by its vertex set.
double ordered_decomposition_max(const LabeledGraph& tree, std::size_t eps,
                                 const std::function<double(const std::vector<Vertex>&)>& piece_weight);

// Pearson statistic of observed counts against equal expected counts.
double chi_square_uniform(const std::vector<std::uint64_t>& counts);

}  // namespace oracle
