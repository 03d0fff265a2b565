#include "forestlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <json.hpp>

#include "forestlab/class_lab.hpp"
#include "forestlab/combinat.hpp"
#include "forestlab/limit_laws.hpp"
#include "forestlab/local_stats.hpp"
#include "forestlab/parallel.hpp"
#include "forestlab/sampler.hpp"

namespace forestlab {

void Report::add(std::string x, std::string series, double value, std::string exact) {
  rows.push_back({std::move(x), std::move(series), value, std::move(exact)});
}

double Report::value(const std::string& x, const std::string& series) const {
  for (const auto& r : rows)
    if (r.x == x && r.series == series) return r.value;
  throw std::out_of_range("report has no row (" + x + ", " + series + ")");
}

std::string Report::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return v;
  throw std::out_of_range("report has no metadata key " + key);
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void Report::write_csv(std::ostream& out) const {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
  out << "x,series,value,exact\n";
  for (const auto& r : rows)
    out << quoted(r.x) << ',' << r.series << ',' << format_real(r.value, 12) << ',' << r.exact << '\n';
}

std::string Report::csv() const {
  std::ostringstream s;
  write_csv(s);
  return s.str();
}

void Report::write_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) j["meta"][k] = v;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["x"] = r.x;
    row["series"] = r.series;
    row["value"] = std::stod(format_real(r.value, 12));
    row["exact"] = r.exact;
    j["rows"].push_back(std::move(row));
  }
  out << j.dump(2) << '\n';
}

namespace {

Report base_report(const std::string& name, std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  Report r;
  r.meta = {{"experiment", name}, {"version", kVersion}, {"seed", std::to_string(seed)},
            {"samples", std::to_string(samples)}, {"n", std::to_string(n)}};
  return r;
}

void check_sampling(std::size_t n, std::uint64_t samples) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
}

double fraction(std::uint64_t count, std::uint64_t total) {
  return static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

Report small_dist(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t bound, unsigned workers) {
  check_sampling(n, samples);
  const ForestSampler sampler(n);
  const auto dist = parallel_accumulate<Distribution>(samples, workers, [&](Distribution& d, std::uint64_t i) {
    Rng rng(SeededStream{seed, i});
    d.add(small_components(sampler.sample(rng)).key());
  });
  const auto freq = dist.frequencies();
  const auto table = law_table(Law::p_inf, bound);

  Report r = base_report("small-dist", n, samples, seed);
  r.meta.emplace_back("bound", std::to_string(bound));
  double emp_inside = 0;
  HighReal law_inside = 0;
  for (const auto& e : table) {
    const auto it = freq.find(e.key);
    const double emp = it == freq.end() ? 0.0 : it->second;
    emp_inside += emp;
    law_inside += e.mass.value();
    r.add(e.key, "empirical", emp);
    r.add(e.key, "p_inf", e.mass.to_double(), e.mass.describe());
  }
  r.add("*", "outside_empirical", 1.0 - emp_inside);
  r.add("*", "outside_p_inf", (HighReal(1) - law_inside).convert_to<double>());
  r.add("*", "tv_distance", tv_distance(freq, table));
  return r;
}

Report pendant_means(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t cap, unsigned workers) {
  check_sampling(n, samples);
  const ForestSampler sampler(n);
  const auto sums = parallel_accumulate<Distribution>(samples, workers, [&](Distribution& d, std::uint64_t i) {
    Rng rng(SeededStream{seed, i});
    for (const auto& [code, c] : pendant_profile(sampler.sample(rng), cap).counts) d.add(code, c);
  });
  Report r = base_report("pendant-means", n, samples, seed);
  r.meta.emplace_back("bound", std::to_string(cap));
  double worst = 0;
  const double denominator = static_cast<double>(samples) * static_cast<double>(n);
  for (const auto& e : law_table(Law::a_inf, cap)) {
    const auto it = sums.counts().find(e.key);
    const double mean = it == sums.counts().end() ? 0.0 : static_cast<double>(it->second) / denominator;
    const double law = e.mass.to_double();
    worst = std::max(worst, std::fabs(mean - law));
    r.add(e.key, "mean_alpha_over_n", mean);
    r.add(e.key, "a_inf", law, e.mass.describe());
  }
  r.add("*", "max_abs_error", worst);
  return r;
}

Report component_counts(std::size_t n, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  check_sampling(n, samples);
  const ForestSampler sampler(n);
  const auto dist = parallel_accumulate<Distribution>(samples, workers, [&](Distribution& d, std::uint64_t i) {
    Rng rng(SeededStream{seed, i});
    d.add(std::to_string(components(sampler.sample(rng)).count() - 1));
  });
  const auto exact = component_law_exact(n);
  Report r = base_report("component-counts", n, samples, seed);
  double tv_exact = 0, tv_limit = 0;
  std::size_t top = 0;
  for (const auto& [k, c] : dist.counts()) top = std::max<std::size_t>(top, std::stoul(k));
  // every k with an observation, an exact mass above 1e-12, or below the observed maximum
  std::size_t last = top;
  while (last + 1 < exact.size() && exact[last + 1] > Rational(1, 1000000000000UL)) ++last;
  double exact_covered = 0, limit_covered = 0;
  for (std::size_t k = 0; k <= last; ++k) {
    const double emp = dist.frequency(std::to_string(k));
    const double ex = k < exact.size() ? exact[k].get_d() : 0.0;
    const auto lim = component_law(k);
    r.add(std::to_string(k), "empirical", emp);
    std::string exact_text = k < exact.size() ? to_fraction_string(exact[k]) : "0";
    if (exact_text.size() > 80) exact_text.clear();  // thousands of digits at large n
    r.add(std::to_string(k), "exact", ex, exact_text);
    r.add(std::to_string(k), "limit", lim.to_double(), lim.describe());
    tv_exact += std::fabs(emp - ex);
    tv_limit += std::fabs(emp - lim.to_double());
    exact_covered += ex;
    limit_covered += lim.to_double();
  }
  tv_exact += std::max(0.0, 1.0 - exact_covered);
  tv_limit += std::max(0.0, 1.0 - limit_covered);
  r.add("*", "tv_vs_exact", 0.5 * tv_exact);
  r.add("*", "tv_vs_limit", 0.5 * tv_limit);
  r.add("*", "exact_tv_to_limit", component_law_tv(exact));
  return r;
}

namespace {

struct DistributionPair {
  Distribution finite, limit;
  void merge(const DistributionPair& o) {
    finite.merge(o.finite);
    limit.merge(o.limit);
  }
};

}  // namespace

Report ball_dist(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t radius, unsigned workers) {
  check_sampling(n, samples);
  const ForestSampler sampler(n);
  // task i < samples draws (F_n, V_n); task samples + i draws an F-infinity ball
  const auto both = parallel_accumulate<DistributionPair>(
      2 * samples, workers, [&](DistributionPair& d, std::uint64_t i) {
        Rng rng(SeededStream{seed, i});
        if (i < samples) {
          const auto g = sampler.sample(rng);
          const auto v = static_cast<Vertex>(1 + rng.below(n));
          d.finite.add(ball_code(ball(g, v, radius)));
        } else {
          const auto window = sample_F_infinity_ball(radius, rng);
          d.limit.add(ball_code(RootedGraph{window.graph, window.root, {}}));
        }
      });
  const auto f = both.finite.frequencies();
  const auto l = both.limit.frequencies();
  std::set<std::string> keys;
  for (const auto& [k, p] : f) keys.insert(k);
  for (const auto& [k, p] : l) keys.insert(k);

  Report r = base_report("ball-dist", n, samples, seed);
  r.meta.emplace_back("radius", std::to_string(radius));
  for (const auto& k : keys) {
    r.add(k, "F_n", both.finite.frequency(k));
    r.add(k, "F_inf", both.limit.frequency(k));
  }
  r.add("*", "distinct_balls", static_cast<double>(keys.size()));
  r.add("*", "tv_distance", tv_distance(f, l));
  return r;
}

Report hull_dist(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t radius, std::size_t bound,
                 unsigned workers) {
  check_sampling(n, samples);
  if (bound < radius + 1) throw std::invalid_argument("hull-dist: bound must be at least radius + 1");
  const ForestSampler sampler(n);
  const auto both = parallel_accumulate<DistributionPair>(
      2 * samples, workers, [&](DistributionPair& d, std::uint64_t i) {
        Rng rng(SeededStream{seed, i});
        if (i < samples) {
          const auto g = sampler.sample(rng);
          const auto v = static_cast<Vertex>(1 + rng.below(n));
          d.finite.add(hull_code(hull(g, v, radius)).code);
        } else {
          // windows larger than the bound are outside the table whatever their shape
          const auto window = sample_F_infinity_hull(radius, rng, bound);
          d.limit.add(window.overflow ? std::string("large") : hull_code(hull(window)).code);
        }
      });
  const auto f = both.finite.frequencies();
  const auto table = law_table(Law::q_inf, bound, radius);

  Report r = base_report("hull-dist", n, samples, seed);
  r.meta.emplace_back("radius", std::to_string(radius));
  r.meta.emplace_back("bound", std::to_string(bound));
  for (const auto& e : table) {
    r.add(e.key, "F_n", both.finite.frequency(e.key));
    r.add(e.key, "F_inf", both.limit.frequency(e.key));
    r.add(e.key, "q_inf", e.mass.to_double(), e.mass.describe());
  }
  std::uint64_t one_exit = 0;
  for (const auto& [code, c] : both.finite.counts())
    if (std::count(code.begin(), code.end(), '{') == 1) one_exit += c;
  r.add("*", "one_exit_fraction", fraction(one_exit, samples));
  r.add("*", "tv_distance", tv_distance(f, table));
  return r;
}

Report renyi_curve(const std::vector<std::size_t>& ns) {
  Report r;
  r.meta = {{"experiment", "renyi-curve"}, {"version", kVersion}};
  const double limit = exp_neg_half_units(0, 1).convert_to<double>();
  for (std::size_t n : ns) {
    if (n < 1) throw std::invalid_argument("renyi-curve: n must be >= 1");
    const Rational p = connectivity_probability_exact(n);
    const double v = to_high(p).convert_to<double>();
    r.add(std::to_string(n), "u_n/f_n", v);
    r.add(std::to_string(n), "distance_to_limit", std::fabs(v - limit));
  }
  r.add("*", "limit", limit, "e^-(1/2)");
  return r;
}

Report clique_curve(const std::vector<std::size_t>& ns) {
  Report r;
  r.meta = {{"experiment", "clique-curve"}, {"version", kVersion}};
  for (std::size_t n : ns) {
    const auto s = clique_class_stats(n);
    const auto x = std::to_string(n);
    r.add(x, "k_n", static_cast<double>(s.k));
    r.add(x, "probability", to_high(s.probability).convert_to<double>());
    r.add(x, "excess_over_limit", s.excess);
  }
  r.add("*", "limit", exp_neg_half_units(0, 1).convert_to<double>(), "e^-(1/2)");
  return r;
}

ChiSquareResult sampler_chi_square(std::size_t n, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  check_sampling(n, samples);
  const ForestSampler sampler(n);
  const auto dist = parallel_accumulate<Distribution>(samples, workers, [&](Distribution& d, std::uint64_t i) {
    Rng rng(SeededStream{seed, i});
    d.add(to_edge_list(sampler.sample(rng)));
  });
  const auto all = enumerate_forests(n);
  const double expected = static_cast<double>(samples) / static_cast<double>(all.size());
  ChiSquareResult out;
  std::uint64_t matched = 0;
  for (const auto& g : all) {
    const auto it = dist.counts().find(to_edge_list(g));
    const double observed = it == dist.counts().end() ? 0.0 : static_cast<double>(it->second);
    if (it != dist.counts().end()) matched += it->second;
    out.statistic += (observed - expected) * (observed - expected) / expected;
  }
  if (matched != samples) throw std::logic_error("sampler produced a graph that is not a forest on [1..n]");
  out.degrees_of_freedom = all.size() - 1;
  out.critical_99 = out.degrees_of_freedom == 0
                        ? 0.0
                        : boost::math::quantile(
                              boost::math::chi_squared(static_cast<double>(out.degrees_of_freedom)), 0.99);
  out.passes = out.statistic <= out.critical_99;
  return out;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"small-dist", "pendant-means", "component-counts", "ball-dist",
                                              "hull-dist",  "renyi-curve",   "clique-curve"};
  return names;
}

bool experiment_is_randomized(const std::string& name) { return name != "renyi-curve" && name != "clique-curve"; }

Report run_experiment(const ExperimentConfig& c) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.name) == names.end())
    throw std::invalid_argument("unknown experiment '" + c.name + "'");
  if (c.n.empty()) throw std::invalid_argument(c.name + ": --n is required");
  if (c.name == "renyi-curve") return renyi_curve(c.n);
  if (c.name == "clique-curve") return clique_curve(c.n);
  if (!c.seed) throw std::invalid_argument(c.name + " is randomized and needs an explicit --seed");
  if (c.n.size() != 1) throw std::invalid_argument(c.name + " takes a single --n");
  const std::size_t n = c.n.front();
  const std::uint64_t seed = *c.seed;
  if (c.name == "small-dist") return small_dist(n, c.samples, seed, c.bound, c.workers);
  if (c.name == "pendant-means") return pendant_means(n, c.samples, seed, c.bound, c.workers);
  if (c.name == "component-counts") return component_counts(n, c.samples, seed, c.workers);
  if (c.name == "ball-dist") return ball_dist(n, c.samples, seed, c.radius, c.workers);
  return hull_dist(n, c.samples, seed, c.radius, c.bound, c.workers);
}

}  // namespace forestlab
