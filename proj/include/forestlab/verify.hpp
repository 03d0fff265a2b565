#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "forestlab/bignum.hpp"
#include "forestlab/graph.hpp"

namespace forestlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Suites: canon, counts, identities, weight-dp, class-lab.
const std::vector<std::string>& verify_suite_names();
std::vector<CheckResult> run_verify_suite(const std::string& suite);

// Permutations of [1..n] preserving adjacency, found by backtracking, that
// fix every vertex in `fixed` and map `marked` onto itself. n <= 10.
BigCount brute_force_automorphisms(const LabeledGraph& g, const std::vector<Vertex>& fixed = {},
                                   const std::vector<Vertex>& marked = {});

// "PASS name" / "FAIL name: detail" lines; returns the number of failures.
std::size_t print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace forestlab
