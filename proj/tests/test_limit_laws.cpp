#include <cmath>
#include <sstream>

#include "doctest.h"
#include "forestlab/combinat.hpp"
#include "forestlab/limit_laws.hpp"
#include "forestlab/shapes.hpp"
#include "oracle.hpp"

using namespace forestlab;

namespace {

Rational ratio(const mpz_class& a, const mpz_class& b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("p_inf examples") {
  auto empty = p_inf(ForestShape());
  CHECK(empty == SymbolicMass{1, 0, 1});
  CHECK(empty.to_double() == doctest::Approx(std::exp(-0.5)));
  CHECK(p_inf(ForestShape({{"()", 1, true}})).to_double() == doctest::Approx(std::exp(-1.5)));
  auto two = p_inf(ForestShape({{"[()()]", 2, true}, {"[()()]", 2, true}}));
  CHECK(two == SymbolicMass{Rational(1, 8), 4, 1});
  CHECK(two.describe() == "1/8*e^-(4+1/2)");
  CHECK_THROWS(p_inf(ForestShape({{"g3:111", 3, false}})));
}

TEST_CASE("a_inf examples") {
  CHECK(a_inf(RootedTreeCode::parse("()")).to_double() == doctest::Approx(0.36788).epsilon(1e-5));
  CHECK(a_inf(RootedTreeCode::parse("(()()())")) == SymbolicMass{Rational(1, 6), 4, 0});
  CHECK(a_inf(RootedTreeCode::parse("(())")) == SymbolicMass{1, 2, 0});
}

TEST_CASE("q_inf examples") {
  auto bare = canon_hull(LabeledGraph(2, {{1, 2}}), 1, std::vector<Vertex>{2}, 1);
  CHECK(q_inf(bare) == SymbolicMass{1, 2, 0});
  CHECK(q_inf(bare).to_double() == doctest::Approx(std::exp(-2.0)));
  auto none = canon_hull(LabeledGraph(2, {{1, 2}}), 1, std::vector<Vertex>{}, 1);
  CHECK(q_inf(none).q == 0);
  CHECK(q_inf(none).to_double() == 0);
  auto two = canon_hull(LabeledGraph(3, {{1, 2}, {1, 3}}), 1, std::vector<Vertex>{2, 3}, 1);
  CHECK(q_inf(two).q == 0);
  auto leaf = canon_hull(LabeledGraph(3, {{1, 2}, {1, 3}}), 1, std::vector<Vertex>{2}, 1);
  CHECK(q_inf(leaf) == SymbolicMass{1, 3, 0});
}

TEST_CASE("component law examples") {
  CHECK(component_law(0) == SymbolicMass{1, 0, 1});
  CHECK(component_law(1) == SymbolicMass{Rational(1, 2), 0, 1});
  CHECK(component_law(3) == SymbolicMass{Rational(1, 48), 0, 1});
  HighReal sum = mass_partial_sum(Law::components, 20);
  CHECK(abs(sum - 1) <= HighReal(1e-9));
}

TEST_CASE("law names round trip") {
  for (auto law : {Law::p_inf, Law::a_inf, Law::q_inf, Law::components}) CHECK(parse_law(law_name(law)) == law);
  CHECK(parse_law("a-inf") == Law::a_inf);
  CHECK_THROWS(parse_law("b-inf"));
}

TEST_CASE("layer masses equal the generating-function coefficients exactly") {
  for (std::size_t n = 1; n <= 10; ++n) {
    Rational rooted = 0;
    for (const auto& c : rooted_trees_of_size(n)) {
      auto m = a_inf(c);
      REQUIRE(m.m == n);
      rooted += m.q;
    }
    CHECK(rooted == ratio(oracle::power(n, n - 1), oracle::factorial(n)));

    Rational forests = 0;
    for (const auto& shape : forest_shapes_of_size(n)) {
      auto m = p_inf(shape);
      REQUIRE(m.m == n);
      REQUIRE(m.h == 1);
      forests += m.q;
    }
    CHECK(forests == ratio(count_forests(n), oracle::factorial(n)));

    for (std::size_t r = 1; r + 1 <= n && r <= 3; ++r) {
      Rational hulls = 0;
      for (const auto& h : hull_trees_of_size(n, r)) hulls += q_inf(h).q;
      // (r+1) n^{n-r-2} / (n-r-1)!: labeled trees through a fixed root-exit path
      mpz_class top = static_cast<unsigned long>(r + 1), bottom = oracle::factorial(n - r - 1);
      if (n == r + 1)
        bottom *= static_cast<unsigned long>(n);
      else
        top *= oracle::power(n, n - r - 2);
      Rational expected = ratio(top, bottom);
      CHECK(hulls == expected);
      CHECK(abs(layer_mass(Law::q_inf, n, r) - to_high(hulls) * exp(HighReal(-static_cast<long>(n)))) <= HighReal(1e-40));
    }
    CHECK(abs(layer_mass(Law::a_inf, n) - to_high(rooted) * exp(HighReal(-static_cast<long>(n)))) <= HighReal(1e-40));
    CHECK(abs(layer_mass(Law::p_inf, n) - to_high(forests) * exp(HighReal(-static_cast<long>(n)) - HighReal(0.5))) <=
          HighReal(1e-40));
  }
}

TEST_CASE("partial sums: enumeration, monotonicity and bounds") {
  for (auto law : {Law::p_inf, Law::a_inf, Law::q_inf}) {
    HighReal previous = 0;
    for (std::size_t bound : {1ul, 2ul, 4ul, 8ul, 12ul, 13ul, 60ul, 500ul}) {
      HighReal s = mass_partial_sum(law, bound);
      CHECK(s >= previous);
      CHECK(s <= 1 + HighReal(1e-12));
      previous = s;
    }
    // at the enumeration limit the table and the partial sum agree
    HighReal table = 0;
    for (const auto& e : law_table(law, kShapeGenerationLimit)) table += e.mass.value();
    CHECK(abs(table - mass_partial_sum(law, kShapeGenerationLimit)) <= HighReal(1e-40));
  }
  CHECK_THROWS(mass_partial_sum(Law::a_inf, kPartialSumCap + 1));
  CHECK_THROWS(law_table(Law::a_inf, kShapeGenerationLimit + 1));
}

TEST_CASE("partial sums against the series") {
  HighReal z = exp(HighReal(-1));
  // a-inf partial sums are exactly the partial sums of T(1/e)
  CHECK(abs(mass_partial_sum(Law::a_inf, 60) - eval_at(series_T(60), z)) <= HighReal(1e-40));
  // the tail beyond 60 is about sqrt(2/(pi*60)); 1e-3 is out of reach at this bound
  double gap = static_cast<double>(1 - mass_partial_sum(Law::a_inf, 60));
  CHECK(gap == doctest::Approx(0.1025).epsilon(0.01));
  CHECK(abs(mass_partial_sum(Law::p_inf, 60) - exp(HighReal(-0.5)) * eval_at(series_F(60), z)) <= HighReal(1e-40));
  CHECK(abs(mass_partial_sum(Law::p_inf, 60) - 1) <= HighReal(1e-2));
}

TEST_CASE("q_inf partial sums approach 1 at rate (r+1) sqrt(2/(pi N))") {
  for (std::size_t r : {1ul, 2ul}) {
    for (std::size_t bound : {1000ul, 5000ul}) {
      double gap = static_cast<double>(1 - mass_partial_sum(Law::q_inf, bound, r));
      double predicted = (r + 1) * std::sqrt(2 / (M_PI * bound));
      CHECK(gap > 0);
      CHECK(gap == doctest::Approx(predicted).epsilon(0.01));
    }
  }
}

TEST_CASE("p_inf multiplies over an added tree") {
  for (std::size_t n = 0; n <= 7; ++n)
    for (const auto& shape : forest_shapes_of_size(n))
      for (std::size_t s = 1; s <= 3; ++s)
        for (const auto& u : unrooted_trees_of_size(s)) {
          ShapePart part{u.code, u.size, true};
          auto bigger = shape.with(part);
          std::size_t copies = 0;
          for (const auto& p : bigger.parts())
            if (p == part) ++copies;
          // Aut(f + U) = copies * Aut_u(U) * Aut(f)
          Rational expected = p_inf(shape).q / Rational(aut_unrooted(u)) / Rational(static_cast<unsigned long>(copies));
          auto m = p_inf(bigger);
          REQUIRE(m.q == expected);
          REQUIRE(m.m == n + s);
        }
}

TEST_CASE("total variation") {
  auto table = law_table(Law::components, 3);
  std::map<std::string, double> exact;
  double inside = 0;
  for (const auto& e : table) {
    exact[e.key] = e.mass.to_double();
    inside += e.mass.to_double();
  }
  // exact truncated law: only the outside gap remains, half of the tail
  CHECK(tv_distance(exact, table) == doctest::Approx((1 - inside) / 2).epsilon(1e-9));

  std::map<std::string, double> point{{table[0].key, 1.0}};
  CHECK(tv_distance(point, table) >= 1 - table[0].mass.to_double() - 1e-12);

  std::map<std::string, double> stray{{"not-a-key", 1.0}};
  // the table mass counts once inside and once in the outside gap
  CHECK(tv_distance(stray, table) == doctest::Approx(inside).epsilon(1e-9));

  std::map<std::string, double> a{{"x", 0.5}, {"y", 0.5}}, b{{"x", 0.25}, {"z", 0.75}};
  CHECK(tv_distance(a, b) == doctest::Approx(0.75));
  CHECK(tv_distance(a, a) == 0);
}

TEST_CASE("law tables and their CSV export") {
  auto a = law_table(Law::a_inf, 1);
  REQUIRE(a.size() == 1);
  CHECK(a[0].key == "()");
  CHECK(a[0].mass.to_double() == doctest::Approx(0.367879441171));
  auto p = law_table(Law::p_inf, 0);
  REQUIRE(p.size() == 1);
  CHECK(p[0].key == "");
  CHECK(p[0].mass.to_double() == doctest::Approx(std::exp(-0.5)));
  CHECK(law_table(Law::components, 4).size() == 5);
  CHECK(law_table(Law::q_inf, 3, 1).size() == 3);

  std::ostringstream out;
  write_law_table_csv(out, a);
  CHECK(out.str() == "key,q,m,h,value\n\"()\",1,1,0,0.367879441171442\n");
}
