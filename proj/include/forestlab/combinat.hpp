#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "forestlab/bignum.hpp"
#include "forestlab/graph.hpp"

namespace forestlab {

// n^{n-1} rooted labeled trees; n^{n-2} unrooted ones. n >= 1.
BigCount cayley_rooted(std::size_t n);
BigCount count_trees(std::size_t n);

// f_n, via the size of the component holding vertex 1. Values are memoized
// in an append-only table shared by all callers.
BigCount count_forests(std::size_t n);
// f_0..f_n in one call.
std::vector<BigCount> forest_counts_upto(std::size_t n);

// Forests on [1..n] with exactly k trees: n! [z^n] U(z)^k / k!.
BigCount count_forests_with_components(std::size_t n, std::size_t k);
// Entry k is count_forests_with_components(n, k), for k = 0..n.
std::vector<BigCount> forest_component_counts(std::size_t n);
// Forests on [1..i] with k trees rooted at 1..k: k * i^{i-k-1}.
BigCount count_rooted_forests(std::size_t i, std::size_t k);

// Truncated exponential generating function with exact coefficients c_0..c_N
// (c_n = a_n / n!).
class TruncatedEGF {
 public:
  explicit TruncatedEGF(std::size_t order);
  TruncatedEGF(std::vector<Rational> coefficients);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
  Rational& operator[](std::size_t n) { return coeffs_.at(n); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  // a_n = n! c_n, which must be an integer for counting series.
  BigCount labeled_count(std::size_t n) const;

  friend TruncatedEGF operator+(const TruncatedEGF& a, const TruncatedEGF& b);
  friend TruncatedEGF operator-(const TruncatedEGF& a, const TruncatedEGF& b);
  friend TruncatedEGF operator*(const TruncatedEGF& a, const TruncatedEGF& b);
  friend TruncatedEGF operator*(const Rational& s, const TruncatedEGF& a);
  bool operator==(const TruncatedEGF& o) const { return coeffs_ == o.coeffs_; }

  // exp of a series with zero constant term.
  TruncatedEGF exp() const;
  TruncatedEGF pow(std::size_t k) const;
  // z * this, truncated.
  TruncatedEGF shifted() const;

 private:
  std::vector<Rational> coeffs_;
};

// T(z) = sum n^{n-1} z^n / n!, U = T - T^2/2, F = exp(U).
TruncatedEGF series_T(std::size_t order);
TruncatedEGF series_U(std::size_t order);
TruncatedEGF series_F(std::size_t order);

// Partial sum of the truncated series at z >= 0.
HighReal eval_at(const TruncatedEGF& series, const HighReal& z);

// u_n / f_n, the probability that a uniform forest on n vertices is a tree.
Rational connectivity_probability_exact(std::size_t n);

// Every acyclic simple graph on [1..n], each exactly once. n <= 7.
inline constexpr std::size_t kForestEnumerationCap = 7;
void for_each_forest(std::size_t n, const std::function<void(const LabeledGraph&)>& visit);
std::vector<LabeledGraph> enumerate_forests(std::size_t n);

}  // namespace forestlab
