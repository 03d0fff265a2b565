#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "forestlab/bignum.hpp"
#include "forestlab/graph.hpp"
#include "forestlab/rng.hpp"

namespace forestlab {

// Uniform labeled tree on `labels` (Pruefer sequence decoding).
std::vector<Edge> sample_uniform_tree(std::span<const Vertex> labels, Rng& rng);
std::vector<Edge> sample_uniform_tree(std::span<const Vertex> labels, const SeededStream& stream);

// Exact uniform sampler over the f_n forests on [1..n]. The size m of the
// component holding a pivot vertex is drawn with probability
// C(r-1,m-1) m^{m-2} f_{r-m} / f_r by inversion on a uniform big integer
// below f_r, so there is no floating-point rounding anywhere. The sampler is
// immutable after construction and safe to share between threads.
class ForestSampler {
 public:
  explicit ForestSampler(std::size_t n);

  std::size_t order() const { return n_; }
  LabeledGraph sample(Rng& rng) const;
  LabeledGraph sample(const SeededStream& stream) const;

 private:
  std::size_t draw_component_size(std::size_t remaining, Rng& rng) const;

  std::size_t n_;
  std::vector<BigCount> forests_;  // f_0..f_n
  std::vector<BigCount> trees_;    // m^{m-2}
};

LabeledGraph sample_uniform_forest(std::size_t n, const SeededStream& stream);

// Poisson(1) Galton-Watson tree. Vertex 1 is the root; `truncated[v]` is set
// for vertices at depth_cap whose offspring draw was positive (the sample was
// cut there).
struct GwTree {
  LabeledGraph tree;
  Vertex root = 1;
  std::vector<std::size_t> depth;  // indexed by vertex
  std::vector<bool> truncated;     // indexed by vertex
};
GwTree sample_gw_poisson1(std::size_t depth_cap, Rng& rng);

// Finite window on the uniform infinite random forest: a spine
// root = spine[0], ..., spine[r] = spine_exit, each spine vertex carrying an
// independent Poisson(1) Galton-Watson tree.
struct SpineBall {
  LabeledGraph graph;
  Vertex root = 1;
  Vertex spine_exit = 1;
  std::vector<Vertex> spine;
  std::vector<bool> truncated;  // indexed by vertex
  std::size_t radius = 0;
  // true when the trees hanging off the spine were grown to completion, so
  // the sample holds every finite component touching the ball
  bool complete = false;
  // set when growth stopped at the size cap (complete samples only)
  bool overflow = false;
};

// Ball of radius r: the tree at spine distance d is cut at depth r - d.
SpineBall sample_F_infinity_ball(std::size_t r, Rng& rng);
// Hull window of radius r: the trees are grown without a depth limit until
// the whole sample exceeds size_cap vertices, in which case overflow is set.
SpineBall sample_F_infinity_hull(std::size_t r, Rng& rng, std::size_t size_cap);

// "root <v> exit <w>" line followed by the edge list.
void write_spine_ball(std::ostream& out, const SpineBall& ball);

}  // namespace forestlab
