#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "forestlab/class_lab.hpp"
#include "forestlab/combinat.hpp"
#include "forestlab/experiments.hpp"
#include "forestlab/limit_laws.hpp"
#include "forestlab/local_stats.hpp"
#include "forestlab/parallel.hpp"
#include "forestlab/sampler.hpp"
#include "forestlab/shapes.hpp"
#include "forestlab/verify.hpp"
#include "forestlab/weight_dp.hpp"

using namespace forestlab;

namespace {

struct Options {
  std::string target;
  std::string n_text;
  std::size_t k = 0;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  std::size_t radius = 2;
  std::size_t bound = 5;
  std::string format;  // empty: the command default
  std::string output;
  unsigned workers = 1;
  bool partial_sum = false;
  std::string input, closure_of, builtin, weights;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* bound_opt = nullptr;
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size() || v < 0) throw std::invalid_argument("--n expects nonnegative integers, got '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw std::invalid_argument("--n is required");
  return out;
}

std::size_t single_n(const Options& o) {
  const auto ns = parse_sizes(o.n_text);
  if (ns.size() != 1) throw std::invalid_argument("this command takes a single --n");
  return ns.front();
}

std::uint64_t require_seed(const Options& o) {
  if (!o.seed_opt || o.seed_opt->count() == 0)
    throw std::invalid_argument("randomized commands need an explicit --seed");
  return o.seed;
}

// Writes to --output when given, otherwise stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_count(const Options& o) {
  const std::size_t n = single_n(o);
  BigCount value;
  if (o.target == "trees") {
    value = count_trees(n);
  } else if (o.target == "rooted-trees") {
    value = cayley_rooted(n);
  } else if (o.target == "forests") {
    value = count_forests(n);
  } else if (o.target == "forests-k") {
    value = count_forests_with_components(n, o.k);
  } else if (o.target == "rooted-forests") {
    value = count_rooted_forests(n, o.k);
  } else {
    throw std::invalid_argument("unknown count kind '" + o.target +
                                "' (trees, rooted-trees, forests, forests-k, rooted-forests)");
  }
  const std::string format = o.format.empty() ? "text" : o.format;
  Sink sink(o.output);
  if (format == "text") {
    sink.out() << to_decimal(value) << '\n';
  } else if (format == "json") {
    nlohmann::ordered_json j{{"kind", o.target}, {"n", n}, {"value", to_decimal(value)}};
    if (o.target == "forests-k" || o.target == "rooted-forests") j["k"] = o.k;
    sink.out() << j.dump(2) << '\n';
  } else {
    sink.out() << "n,value,law,error\n" << n << ',' << to_decimal(value) << ",,\n";
  }
  return 0;
}

int cmd_limits(const Options& o) {
  const Law law = parse_law(o.target);
  std::vector<LawEntry> table;
  if (law == Law::components && o.k_opt->count()) {
    table.push_back({std::to_string(o.k), component_law(o.k)});
  } else {
    table = law_table(law, std::min(o.bound, law == Law::components ? kPartialSumCap : kShapeGenerationLimit),
                      o.radius);
  }
  Sink sink(o.output);
  if (o.format == "json") {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& e : table)
      rows.push_back({{"key", e.key},
                      {"q", to_fraction_string(e.mass.q)},
                      {"m", e.mass.m},
                      {"h", e.mass.h},
                      {"exact", e.mass.describe()},
                      {"value", e.mass.to_double()}});
    nlohmann::ordered_json j{{"law", law_name(law)}, {"rows", rows}};
    if (o.partial_sum) j["partial_sum"] = mass_partial_sum(law, o.bound, o.radius).convert_to<double>();
    sink.out() << j.dump(2) << '\n';
  } else {
    write_law_table_csv(sink.out(), table);
    if (o.partial_sum)
      sink.out() << "# partial_sum=" << format_real(mass_partial_sum(law, o.bound, o.radius).convert_to<double>(), 15)
                 << '\n';
  }
  return 0;
}

int cmd_experiment(const Options& o) {
  ExperimentConfig c;
  c.name = o.target;
  c.n = parse_sizes(o.n_text);
  c.samples = o.samples;
  if (o.seed_opt->count()) c.seed = o.seed;
  c.radius = o.radius;
  c.bound = o.bound;
  c.workers = o.workers;
  if (experiment_is_randomized(c.name)) require_seed(o);
  const Report r = run_experiment(c);
  Sink sink(o.output);
  if (o.format == "json")
    r.write_json(sink.out());
  else
    r.write_csv(sink.out());
  return 0;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> suites;
  if (o.target == "all")
    suites = verify_suite_names();
  else
    suites.push_back(o.target);
  std::vector<CheckResult> all;
  for (const auto& s : suites) {
    auto r = run_verify_suite(s);
    for (auto& c : r) c.name = s + ": " + c.name;
    all.insert(all.end(), r.begin(), r.end());
  }
  Sink sink(o.output);
  const auto failures = print_checks(sink.out(), all);
  for (const auto& c : all)
    if (!c.passed) std::cerr << "failed: " << c.name << " (" << c.detail << ")\n";
  return failures == 0 ? 0 : 1;
}

FiniteClass load_class(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_class(in);
}

int report_class(const FiniteClass& c, const Options& o) {
  const bool addable = is_bridge_addable(c);
  const auto census = component_census(c);
  const bool easy = verify_easy_bound(census);
  Sink sink(o.output);
  auto& out = sink.out();
  out << "n=" << c.order() << "\nmembers=" << c.size() << "\nbridge_addable=" << (addable ? "true" : "false")
      << "\ncensus=";
  for (std::size_t i = 1; i < census.counts.size(); ++i) out << (i > 1 ? "," : "") << to_decimal(census.counts[i]);
  out << "\neasy_bound=" << (easy ? "true" : "false") << '\n';
  if (!c.empty()) out << "connectivity_probability=" << to_fraction_string(connectivity_probability(c)) << '\n';
  if (!addable) std::cerr << "failed: class is not bridge-addable\n";
  if (!easy) std::cerr << "failed: component census violates i*c[i+1] <= c[i]\n";
  return addable && easy ? 0 : 1;
}

int cmd_class_check(const Options& o) {
  const int sources = !o.input.empty() + !o.closure_of.empty() + !o.builtin.empty();
  if (sources != 1) throw std::invalid_argument("class-check needs exactly one of --input, --closure-of, --builtin");
  if (!o.input.empty()) return report_class(load_class(o.input), o);
  if (!o.closure_of.empty()) {
    const auto seeds = load_class(o.closure_of);
    const std::vector<LabeledGraph> list(seeds.members().begin(), seeds.members().end());
    return report_class(bridge_addable_closure(seeds.order(), list), o);
  }
  const std::size_t n = single_n(o);
  if (o.builtin == "forests") return report_class(all_forests_class(n), o);
  if (o.builtin != "clique" && o.builtin != "path")
    throw std::invalid_argument("--builtin expects forests, clique or path");
  if (n <= kClassEnumerationCap)
    return report_class(bridge_addable_closure(n, {o.builtin == "clique" ? clique_seed(n) : path_seed(n)}), o);
  const auto s = o.builtin == "clique" ? clique_class_stats(n) : path_class_stats(n);
  Sink sink(o.output);
  sink.out() << "n=" << s.n << "\nk=" << s.k << "\nconnected=" << to_decimal(s.connected)
             << "\ntotal=" << to_decimal(s.total)
             << "\nconnectivity_probability=" << format_real(to_high(s.probability).convert_to<double>(), 12)
             << "\nexcess_over_limit=" << format_real(s.excess, 12) << '\n';
  return 0;
}

int cmd_sample(const Options& o) {
  const std::uint64_t seed = require_seed(o);
  Sink sink(o.output);
  if (o.target == "forest") {
    write_edge_list(sink.out(), sample_uniform_forest(single_n(o), SeededStream{seed, 0}));
    return 0;
  }
  if (o.target == "f-inf-ball" || o.target == "f-inf-hull") {
    Rng rng(SeededStream{seed, 0});
    const auto w = o.target == "f-inf-ball" ? sample_F_infinity_ball(o.radius, rng)
                                            : sample_F_infinity_hull(o.radius, rng, std::max(o.bound, o.radius + 1));
    if (w.overflow) std::cerr << "note: window stopped at the size cap (--bound)\n";
    write_spine_ball(sink.out(), w);
    return 0;
  }
  if (o.target == "ball-codes" || o.target == "hull-codes") {
    const std::size_t n = single_n(o);
    const ForestSampler sampler(n);
    const bool balls = o.target == "ball-codes";
    const auto d = parallel_accumulate<Distribution>(o.samples, o.workers, [&](Distribution& acc, std::uint64_t i) {
      Rng rng(SeededStream{seed, i});
      const auto g = sampler.sample(rng);
      const auto v = static_cast<Vertex>(1 + rng.below(n));
      acc.add(balls ? ball_code(ball(g, v, o.radius)) : hull_code(hull(g, v, o.radius)).code);
    });
    if (o.format == "json")
      write_distribution_json(sink.out(), d);
    else
      write_distribution_csv(sink.out(), d);
    return 0;
  }
  throw std::invalid_argument("unknown sample kind '" + o.target + "' (forest, f-inf-ball, f-inf-hull, ball-codes, hull-codes)");
}

int cmd_omega(const Options& o) {
  WeightVector z;
  if (o.weights.empty() || o.weights == "extremal") {
    z = WeightVector::extremal(std::min<std::size_t>(o.k ? o.k : 4, kShapeGenerationLimit));
  } else {
    std::ifstream in(o.weights);
    if (!in) throw std::runtime_error("cannot open " + o.weights);
    z = read_weight_csv(in);
  }
  const std::size_t top = std::min(o.bound, kOmegaTreeCap);
  std::vector<std::pair<std::string, DecompositionValue>> rows;
  for (std::size_t n = 1; n <= top; ++n)
    for (const auto& u : unrooted_trees_of_size(n)) rows.emplace_back(u.code, omega(tree_from_code(u), z));
  Sink sink(o.output);
  write_omega_report(sink.out(), rows);
  if (o.partial_sum) {
    const auto layers = partition_layers(z, top);
    double y = 0, yu = 0, ye = 0;
    for (const auto& l : layers) {
      y += l.rooted;
      yu += l.unrooted;
      ye += l.edge_rooted;
    }
    sink.out() << "# Y=" << format_real(y, 15) << "\n# Y_u=" << format_real(yu, 15) << "\n# Y_e=" << format_real(ye, 15)
               << "\n# dissymmetry_residual=" << format_real(std::fabs(y - yu - ye), 15) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bridge-addable classes and random forests: exact counts, limit laws and simulation"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", o.output, "Write the result to this file");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
  };
  auto sized = [&](CLI::App* sub) { sub->add_option("--n", o.n_text, "Vertex count (comma list where allowed)"); };

  auto* count = app.add_subcommand("count", "Exact counts of trees and forests");
  count->add_option("kind", o.target, "trees | rooted-trees | forests | forests-k | rooted-forests")->required();
  sized(count);
  count->add_option("--k", o.k, "Number of components / roots");
  common(count);

  auto* limits = app.add_subcommand("limits", "Tables of the limit laws");
  limits->add_option("law", o.target, "p-inf | a-inf | q-inf | components")->required();
  o.bound_opt = limits->add_option("--bound", o.bound, "Size bound (k bound for components)");
  o.k_opt = limits->add_option("--k", o.k, "Single component-law entry");
  limits->add_option("--radius", o.radius, "Hull radius for q-inf");
  limits->add_flag("--partial-sum", o.partial_sum, "Also print the total mass within the bound");
  common(limits);

  auto* experiment = app.add_subcommand("experiment", "Seeded Monte Carlo and exact curves");
  experiment->add_option("name", o.target, "small-dist | pendant-means | component-counts | ball-dist | hull-dist | "
                                           "renyi-curve | clique-curve")->required();
  sized(experiment);
  experiment->add_option("--samples", o.samples, "Number of samples");
  o.seed_opt = experiment->add_option("--seed", o.seed, "Master seed (required for randomized experiments)");
  experiment->add_option("--radius", o.radius, "Ball or hull radius");
  experiment->add_option("--bound", o.bound, "Shape size bound");
  experiment->add_option("--workers", o.workers, "Worker threads (results do not depend on it)");
  common(experiment);

  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("suite", o.target, "canon | counts | identities | weight-dp | class-lab | all")->required();
  common(verify);

  auto* cls = app.add_subcommand("class-check", "Bridge-addability and census of a finite class");
  cls->add_option("--input", o.input, "Class file");
  cls->add_option("--closure-of", o.closure_of, "Class file of seeds to close under bridge addition");
  cls->add_option("--builtin", o.builtin, "forests | clique | path");
  sized(cls);
  common(cls);

  auto* sample = app.add_subcommand("sample", "Draw samples");
  sample->add_option("kind", o.target, "forest | f-inf-ball | f-inf-hull | ball-codes | hull-codes")->required();
  sized(sample);
  auto* sample_seed = sample->add_option("--seed", o.seed, "Master seed")->required();
  sample->add_option("--samples", o.samples, "Samples for code distributions");
  sample->add_option("--radius", o.radius, "Radius");
  sample->add_option("--bound", o.bound, "Size cap for hull windows");
  sample->add_option("--workers", o.workers, "Worker threads");
  common(sample);

  auto* om = app.add_subcommand("omega", "Maximum-weight decompositions over all shapes");
  om->add_option("--weights", o.weights, "Weight CSV (shape,weight); default z^U = e^-|U|");
  om->add_option("--k", o.k, "eps bound for the default weights");
  om->add_option("--bound", o.bound, "Largest tree size");
  om->add_flag("--partial-sum", o.partial_sum, "Also print Y, Y^u, Y^e");
  common(om);

  CLI11_PARSE(app, argc, argv);
  if (sample->parsed()) o.seed_opt = sample_seed;

  try {
    if (count->parsed()) return cmd_count(o);
    if (limits->parsed()) return cmd_limits(o);
    if (experiment->parsed()) return cmd_experiment(o);
    if (verify->parsed()) return cmd_verify(o);
    if (cls->parsed()) return cmd_class_check(o);
    if (sample->parsed()) return cmd_sample(o);
    if (om->parsed()) return cmd_omega(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
