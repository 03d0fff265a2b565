#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace forestlab {

inline constexpr const char* kVersion = "forestlab 0.1.0";

struct ExperimentConfig {
  std::string name;
  std::vector<std::size_t> n;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::size_t radius = 2;
  std::size_t bound = 5;
  unsigned workers = 1;
};

// One long-format row; `exact` carries an exact rational or integer when there is one.
struct ReportRow {
  std::string x;
  std::string series;
  double value = 0;
  std::string exact;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<ReportRow> rows;

  void add(std::string x, std::string series, double value, std::string exact = "");
  // Value of the first row matching (x, series); throws if absent.
  double value(const std::string& x, const std::string& series) const;
  std::string meta_value(const std::string& key) const;

  // "# key=value" lines, then the header x,series,value,exact.
  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
  std::string csv() const;
};

// Names: small-dist, pendant-means, component-counts, ball-dist, hull-dist,
// renyi-curve, clique-curve. Randomized experiments need a seed.
Report run_experiment(const ExperimentConfig& config);
bool experiment_is_randomized(const std::string& name);
const std::vector<std::string>& experiment_names();

Report small_dist(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t bound, unsigned workers);
Report pendant_means(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t cap, unsigned workers);
Report component_counts(std::size_t n, std::uint64_t samples, std::uint64_t seed, unsigned workers);
Report ball_dist(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t radius, unsigned workers);
Report hull_dist(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t radius, std::size_t bound,
                 unsigned workers);
Report renyi_curve(const std::vector<std::size_t>& ns);
Report clique_curve(const std::vector<std::size_t>& ns);

// Pearson chi-square of sampled forests on [1..n] against the uniform law.
struct ChiSquareResult {
  double statistic = 0;
  std::size_t degrees_of_freedom = 0;
  double critical_99 = 0;
  bool passes = false;
};
ChiSquareResult sampler_chi_square(std::size_t n, std::uint64_t samples, std::uint64_t seed, unsigned workers);

}  // namespace forestlab
