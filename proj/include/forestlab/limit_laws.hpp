#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "forestlab/bignum.hpp"
#include "forestlab/tree_canon.hpp"

namespace forestlab {

// q * e^{-m} * e^{-h/2}, kept exact until evaluation.
struct SymbolicMass {
  Rational q = 0;
  unsigned long m = 0;
  unsigned h = 0;

  HighReal value() const;
  double to_double() const;
  // "q*e^-(m+h/2)" style text, e.g. "1/8*e^-(4+1/2)".
  std::string describe() const;

  bool operator==(const SymbolicMass& o) const { return q == o.q && m == o.m && h == o.h; }
};

// e^{-1/2} e^{-|f|} / Aut_u(f); throws on a non-tree part.
SymbolicMass p_inf(const ForestShape& shape);
// e^{-|T|} / Aut_r(T).
SymbolicMass a_inf(const RootedTreeCode& code);
// e^{-|T|} / Aut_path(T) for one exit vertex, zero otherwise.
SymbolicMass q_inf(const HullTreeCode& hull);
// e^{-1/2} 2^{-k} / k!: probability of k+1 components in the limit.
SymbolicMass component_law(std::size_t k);

enum class Law { p_inf, a_inf, q_inf, components };
Law parse_law(const std::string& name);  // "p-inf", "a-inf", "q-inf", "components"
std::string law_name(Law law);

struct LawEntry {
  std::string key;
  SymbolicMass mass;
};

// Every shape within the bound, in (size, code) order. Shape tables are
// capped at kShapeGenerationLimit; the component table takes k = 0..bound.
std::vector<LawEntry> law_table(Law law, std::size_t bound, std::size_t radius = 1);

// Total mass of the shapes of size <= bound (k <= bound for the component law).
// Sizes up to kShapeGenerationLimit are summed shape by shape; larger layers
// use the closed layer sums, which the test suite checks against enumeration.
inline constexpr std::size_t kPartialSumCap = 5000;
HighReal mass_partial_sum(Law law, std::size_t bound, std::size_t radius = 1);
// Closed form of the mass of the layer of size n.
HighReal layer_mass(Law law, std::size_t n, std::size_t radius = 1);

// Half the L1 distance over the table keys, plus half the gap between the
// empirical and law masses outside the table. Empirical keys missing from the
// table count as outside.
double tv_distance(const std::map<std::string, double>& empirical, const std::vector<LawEntry>& table);
// Plain total variation between two empirical laws.
double tv_distance(const std::map<std::string, double>& a, const std::map<std::string, double>& b);

// CSV: key,q,m,h,value
void write_law_table_csv(std::ostream& out, const std::vector<LawEntry>& table);

}  // namespace forestlab
