#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forestlab/bignum.hpp"
#include "forestlab/graph.hpp"
#include "forestlab/sampler.hpp"
#include "forestlab/tree_canon.hpp"

namespace forestlab {

// Multiset of canonical codes of every component except the designated
// largest one. Tree components get unrooted tree codes, others the
// small-graph code (throws beyond kSmallGraphCap vertices).
ForestShape small_components(const LabeledGraph& g);

struct PendantTree {
  Edge removed;  // the cut-edge separating v from the largest possible side
  std::optional<RootedTreeCode> tree;  // empty when v's side is not a tree
};

// Among the cut-edges at v, the one whose far side is largest; ties go to the
// smallest neighbor label. std::nullopt when v has no incident cut-edge.
std::optional<PendantTree> pendant_at(const LabeledGraph& g, Vertex v);
std::optional<RootedTreeCode> pendant_tree_at(const LabeledGraph& g, Vertex v);

inline constexpr std::size_t kDefaultProfileCap = 10;

struct PendantProfile {
  std::map<std::string, std::uint64_t> counts;  // rooted code -> alpha^G(T)
  std::size_t size_cap = kDefaultProfileCap;
  std::size_t n = 0;

  std::uint64_t total() const;
  std::uint64_t count(const std::string& code) const;
};

PendantProfile pendant_profile(const LabeledGraph& g, std::size_t size_cap = kDefaultProfileCap);

// A rooted graph relabeled to 1..k by increasing original label.
struct RootedGraph {
  LabeledGraph graph;
  Vertex root = 1;
  std::vector<Vertex> labels;  // labels[i] = original label of vertex i+1
};

RootedGraph ball(const LabeledGraph& g, Vertex v, std::size_t r);
// Rooted tree code when the ball is a tree, rooted small-graph code otherwise.
std::string ball_code(const RootedGraph& b);

struct Hull {
  LabeledGraph graph;
  Vertex root = 1;
  std::vector<Vertex> exits;  // sorted, local labels
  std::size_t radius = 0;
  std::vector<Vertex> labels;
};

// Ball plus every component of G minus the ball that touches the ball and has
// fewer than n/3 vertices. Components with at least n/3 vertices mark their
// attachment vertices as exits.
Hull hull(const LabeledGraph& g, Vertex v, std::size_t r);
// For F-infinity windows the spine beyond spine_exit is the unique infinite
// component. Needs a complete (non-overflowed) hull sample.
Hull hull(const SpineBall& window);
HullTreeCode hull_code(const Hull& h);

// Counts over canonical string keys; merging is order-independent.
class Distribution {
 public:
  void add(const std::string& key, std::uint64_t times = 1);
  void merge(const Distribution& other);

  std::uint64_t total() const { return total_; }
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  // Throws std::invalid_argument on an empty distribution.
  std::map<std::string, double> frequencies() const;
  double frequency(const std::string& key) const;

 private:
  std::map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

Distribution empirical_distribution(const std::vector<std::string>& samples);

// CSV "key,count,frequency" (keys quoted) and a JSON mirror with the same fields.
void write_distribution_csv(std::ostream& out, const Distribution& d);
void write_distribution_json(std::ostream& out, const Distribution& d);

using MembershipOracle = std::function<bool(const LabeledGraph&)>;

// Average over graphs of (pendant copies of T attached by a removable edge) /
// (pendant copies of T); a graph with no copy contributes 1.
Rational removable_pendant_fraction(const std::vector<LabeledGraph>& members, const MembershipOracle& in_class,
                                    const RootedTreeCode& tree);

}  // namespace forestlab
