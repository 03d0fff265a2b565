#include "forestlab/limit_laws.hpp"

#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

#include "forestlab/combinat.hpp"
#include "forestlab/shapes.hpp"

namespace forestlab {

HighReal SymbolicMass::value() const {
  if (q == 0) return HighReal(0);
  return to_high(q) * exp_neg_half_units(m, h);
}

double SymbolicMass::to_double() const { return value().convert_to<double>(); }

std::string SymbolicMass::describe() const {
  std::string out = to_fraction_string(q);
  if (q == 0) return out;
  if (m == 0 && h == 0) return out;
  out += "*e^-(";
  out += std::to_string(m);
  if (h) out += "+1/2";
  out += ')';
  return out;
}

SymbolicMass p_inf(const ForestShape& shape) {
  if (!shape.all_trees()) throw std::invalid_argument("p_inf is supported on forests of trees only");
  return {Rational(1, aut_forest(shape)), shape.total_size(), 1};
}

SymbolicMass a_inf(const RootedTreeCode& code) { return {Rational(1, aut_rooted(code)), code.size, 0}; }

SymbolicMass q_inf(const HullTreeCode& hull) {
  if (hull.exits != 1) return {0, hull.size, 0};
  return {Rational(1, aut_path(hull)), hull.size, 0};
}

SymbolicMass component_law(std::size_t k) {
  Rational q(1, factorial(k) * power(2, k));
  return {q, 0, 1};
}

Law parse_law(const std::string& name) {
  if (name == "p-inf") return Law::p_inf;
  if (name == "a-inf") return Law::a_inf;
  if (name == "q-inf") return Law::q_inf;
  if (name == "components") return Law::components;
  throw std::invalid_argument("unknown law '" + name + "' (expected p-inf, a-inf, q-inf or components)");
}

std::string law_name(Law law) {
  switch (law) {
    case Law::p_inf: return "p-inf";
    case Law::a_inf: return "a-inf";
    case Law::q_inf: return "q-inf";
    case Law::components: return "components";
  }
  return "";
}

std::vector<LawEntry> law_table(Law law, std::size_t bound, std::size_t radius) {
  std::vector<LawEntry> table;
  switch (law) {
    case Law::p_inf:
      for (std::size_t n = 0; n <= bound; ++n)
        for (const auto& shape : forest_shapes_of_size(n)) table.push_back({shape.key(), p_inf(shape)});
      break;
    case Law::a_inf:
      for (std::size_t n = 1; n <= bound; ++n)
        for (const auto& code : rooted_trees_of_size(n)) table.push_back({code.code, a_inf(code)});
      break;
    case Law::q_inf:
      for (std::size_t n = radius + 1; n <= bound; ++n)
        for (const auto& h : hull_trees_of_size(n, radius)) table.push_back({h.code, q_inf(h)});
      break;
    case Law::components:
      for (std::size_t k = 0; k <= bound; ++k) table.push_back({std::to_string(k), component_law(k)});
      break;
  }
  return table;
}

HighReal layer_mass(Law law, std::size_t n, std::size_t radius) {
  const auto e = [](std::size_t m, unsigned h) { return exp_neg_half_units(m, h); };
  switch (law) {
    case Law::p_inf: {
      // sum over shapes of 1/Aut_u = f_n / n!
      Rational c(count_forests(n), factorial(n));
      c.canonicalize();
      return to_high(c) * e(n, 1);
    }
    case Law::a_inf: {
      if (n == 0) return 0;
      Rational c(cayley_rooted(n), factorial(n));
      c.canonicalize();
      return to_high(c) * e(n, 0);
    }
    case Law::q_inf: {
      // labeled (tree, root, exit) triples at distance r: n!/(n-r-1)! (r+1) n^{n-r-2}
      if (n < radius + 1) return 0;
      Rational c = rational_power(n, static_cast<long>(n) - static_cast<long>(radius) - 2);
      c *= Rational(static_cast<unsigned long>(radius + 1));
      c /= Rational(factorial(n - radius - 1));
      c.canonicalize();
      return to_high(c) * e(n, 0);
    }
    case Law::components:
      return component_law(n).value();
  }
  return 0;
}

HighReal mass_partial_sum(Law law, std::size_t bound, std::size_t radius) {
  if (bound < 1) throw std::invalid_argument("mass_partial_sum: size bound must be >= 1");
  if (bound > kPartialSumCap)
    throw std::invalid_argument("mass_partial_sum: size bound above " + std::to_string(kPartialSumCap));
  HighReal sum = 0;
  const std::size_t enumerated = law == Law::components ? bound : std::min(bound, kShapeGenerationLimit);
  for (const auto& entry : law_table(law, enumerated, radius)) sum += entry.mass.value();
  for (std::size_t n = enumerated + 1; n <= bound; ++n) sum += layer_mass(law, n, radius);
  return sum;
}

double tv_distance(const std::map<std::string, double>& empirical, const std::vector<LawEntry>& table) {
  double l1 = 0;
  HighReal law_inside = 0;
  double emp_inside = 0;
  std::set<std::string> seen;
  for (const auto& entry : table) {
    if (!seen.insert(entry.key).second) throw std::invalid_argument("tv_distance: duplicate key " + entry.key);
    const HighReal mass = entry.mass.value();
    law_inside += mass;
    const auto it = empirical.find(entry.key);
    const double emp = it == empirical.end() ? 0.0 : it->second;
    emp_inside += emp;
    l1 += std::fabs(emp - mass.convert_to<double>());
  }
  double emp_total = 0;
  for (const auto& [k, f] : empirical) emp_total += f;
  const double law_outside = (HighReal(1) - law_inside).convert_to<double>();
  const double emp_outside = emp_total - emp_inside;
  return 0.5 * l1 + 0.5 * std::fabs(emp_outside - law_outside);
}

double tv_distance(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
  double l1 = 0;
  for (const auto& [k, p] : a) {
    const auto it = b.find(k);
    l1 += std::fabs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, p] : b)
    if (!a.count(k)) l1 += p;
  return 0.5 * l1;
}

void write_law_table_csv(std::ostream& out, const std::vector<LawEntry>& table) {
  out << "key,q,m,h,value\n";
  for (const auto& e : table)
    out << '"' << e.key << "\"," << to_fraction_string(e.mass.q) << ',' << e.mass.m << ',' << e.mass.h << ','
        << format_real(e.mass.to_double(), 15) << '\n';
}

}  // namespace forestlab
