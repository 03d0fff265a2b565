#include "forestlab/combinat.hpp"

#include <mutex>
#include <numeric>
#include <stdexcept>

namespace forestlab {

BigCount cayley_rooted(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cayley_rooted: n must be >= 1");
  return power(n, n - 1);
}

BigCount count_trees(std::size_t n) {
  if (n == 0) throw std::invalid_argument("count_trees: n must be >= 1");
  if (n == 1) return 1;
  return power(n, n - 2);
}

namespace {

struct ForestTable {
  std::mutex mutex;
  std::vector<BigCount> values{BigCount(1)};
};

ForestTable& forest_table() {
  static ForestTable t;
  return t;
}

}  // namespace

std::vector<BigCount> forest_counts_upto(std::size_t n) {
  auto& table = forest_table();
  std::lock_guard lock(table.mutex);
  auto& f = table.values;
  if (f.size() <= n) {
    std::vector<BigCount> trees(n + 1);
    for (std::size_t m = 1; m <= n; ++m) trees[m] = count_trees(m);
    for (std::size_t size = f.size(); size <= n; ++size) {
      // the component of vertex 1 has m vertices; C(size-1, m-1) descending in m
      BigCount sum = 0;
      BigCount choose = 1;  // C(size-1, m-1) for m = size
      for (std::size_t m = size; m >= 1; --m) {
        sum += choose * trees[m] * f[size - m];
        if (m > 1) {
          choose *= (m - 1);
          mpz_divexact_ui(choose.get_mpz_t(), choose.get_mpz_t(), size - m + 1);
        }
      }
      f.push_back(std::move(sum));
    }
  }
  return {f.begin(), f.begin() + static_cast<std::ptrdiff_t>(n + 1)};
}

BigCount count_forests(std::size_t n) {
  {
    auto& table = forest_table();
    std::lock_guard lock(table.mutex);
    if (n < table.values.size()) return table.values[n];
  }
  return forest_counts_upto(n).back();
}

namespace {

// n! [z^n] T^m = m * n^{n-m-1} * n!/(n-m)!, tabulated for m = 0..n.
std::vector<BigCount> tree_power_coefficients(std::size_t n) {
  std::vector<BigCount> out(n + 1);
  BigCount falling = 1;  // n!/(n-m)!
  for (std::size_t m = 0; m <= n; ++m) {
    if (m > 0) falling *= static_cast<unsigned long>(n - m + 1);
    if (m == 0) {
      out[m] = 0;
    } else if (m == n) {
      out[m] = falling;  // m * n^{-1} = 1
    } else {
      out[m] = falling * static_cast<unsigned long>(m) * power(n, n - m - 1);
    }
  }
  return out;
}

// U^k = sum_j C(k,j) (-1/2)^j T^{k+j}; scaled by 2^k k! to stay integral.
BigCount forests_with_components(std::size_t n, std::size_t k, const std::vector<BigCount>& tree_power) {
  if (n == 0) return k == 0 ? 1 : 0;
  if (k == 0) return 0;
  BigCount sum = 0;
  BigCount choose = 1;
  for (std::size_t j = 0; j <= k && k + j <= n; ++j) {
    BigCount term = choose * tree_power[k + j];
    term <<= static_cast<mp_bitcnt_t>(k - j);
    if (j % 2) sum -= term; else sum += term;
    choose *= static_cast<unsigned long>(k - j);
    mpz_divexact_ui(choose.get_mpz_t(), choose.get_mpz_t(), j + 1);
  }
  BigCount denom = factorial(k);
  denom <<= static_cast<mp_bitcnt_t>(k);
  if (!mpz_divisible_p(sum.get_mpz_t(), denom.get_mpz_t()))
    throw std::logic_error("count_forests_with_components: non-integral result");
  mpz_divexact(sum.get_mpz_t(), sum.get_mpz_t(), denom.get_mpz_t());
  return sum;
}

}  // namespace

BigCount count_forests_with_components(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("count_forests_with_components: k > n");
  return forests_with_components(n, k, tree_power_coefficients(n));
}

std::vector<BigCount> forest_component_counts(std::size_t n) {
  const auto tree_power = tree_power_coefficients(n);
  std::vector<BigCount> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = forests_with_components(n, k, tree_power);
  return out;
}

BigCount count_rooted_forests(std::size_t i, std::size_t k) {
  if (k < 1 || k > i) throw std::invalid_argument("count_rooted_forests: need 1 <= k <= i");
  if (k == i) return 1;
  return BigCount(static_cast<unsigned long>(k)) * power(i, i - k - 1);
}

TruncatedEGF::TruncatedEGF(std::size_t order) : coeffs_(order + 1, Rational(0)) {}

TruncatedEGF::TruncatedEGF(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("TruncatedEGF needs at least c_0");
  for (auto& c : coeffs_) c.canonicalize();
}

BigCount TruncatedEGF::labeled_count(std::size_t n) const {
  Rational scaled = coeffs_.at(n) * Rational(factorial(n));
  scaled.canonicalize();
  if (scaled.get_den() != 1) throw std::domain_error("coefficient times n! is not an integer");
  return scaled.get_num();
}

TruncatedEGF operator+(const TruncatedEGF& a, const TruncatedEGF& b) {
  TruncatedEGF out(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= out.order(); ++i) out[i] = a[i] + b[i];
  return out;
}

TruncatedEGF operator-(const TruncatedEGF& a, const TruncatedEGF& b) {
  TruncatedEGF out(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= out.order(); ++i) out[i] = a[i] - b[i];
  return out;
}

TruncatedEGF operator*(const TruncatedEGF& a, const TruncatedEGF& b) {
  TruncatedEGF out(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= out.order(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= out.order(); ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

TruncatedEGF operator*(const Rational& s, const TruncatedEGF& a) {
  TruncatedEGF out(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) out[i] = s * a[i];
  return out;
}

TruncatedEGF TruncatedEGF::exp() const {
  if (coeffs_[0] != 0) throw std::domain_error("exp needs a zero constant term");
  // G = exp(A) satisfies n g_n = sum_{k=1}^{n} k a_k g_{n-k}
  TruncatedEGF out(order());
  out[0] = 1;
  for (std::size_t n = 1; n <= order(); ++n) {
    Rational sum = 0;
    for (std::size_t k = 1; k <= n; ++k)
      if (coeffs_[k] != 0) sum += Rational(static_cast<unsigned long>(k)) * coeffs_[k] * out[n - k];
    out[n] = sum / Rational(static_cast<unsigned long>(n));
  }
  return out;
}

TruncatedEGF TruncatedEGF::pow(std::size_t k) const {
  TruncatedEGF result(order());
  result[0] = 1;
  TruncatedEGF base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

TruncatedEGF TruncatedEGF::shifted() const {
  TruncatedEGF out(order());
  for (std::size_t i = 1; i <= order(); ++i) out[i] = coeffs_[i - 1];
  return out;
}

TruncatedEGF series_T(std::size_t order) {
  if (order < 1) throw std::invalid_argument("series order must be >= 1");
  TruncatedEGF t(order);
  for (std::size_t n = 1; n <= order; ++n) {
    t[n] = Rational(cayley_rooted(n), factorial(n));
    t[n].canonicalize();
  }
  return t;
}

TruncatedEGF series_U(std::size_t order) {
  const auto t = series_T(order);
  return t - Rational(1, 2) * (t * t);
}

TruncatedEGF series_F(std::size_t order) { return series_U(order).exp(); }

HighReal eval_at(const TruncatedEGF& series, const HighReal& z) {
  if (z < 0) throw std::domain_error("eval_at: z must be >= 0");
  HighReal sum = 0;
  HighReal zn = 1;
  for (std::size_t n = 0; n <= series.order(); ++n) {
    sum += to_high(series[n]) * zn;
    zn *= z;
  }
  return sum;
}

Rational connectivity_probability_exact(std::size_t n) {
  if (n == 0) throw std::invalid_argument("connectivity probability needs n >= 1");
  Rational p(count_trees(n), count_forests(n));
  p.canonicalize();
  return p;
}

void for_each_forest(std::size_t n, const std::function<void(const LabeledGraph&)>& visit) {
  if (n > kForestEnumerationCap)
    throw std::invalid_argument("enumerate_forests capped at n=" + std::to_string(kForestEnumerationCap));
  std::vector<Edge> all;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v) all.push_back({u, v});
  std::vector<Edge> chosen;
  std::vector<Vertex> parent(n + 1);

  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  // include/exclude each edge; union-find without path compression so undo is a reset
  std::function<void(std::size_t)> walk = [&](std::size_t idx) {
    if (idx == all.size()) {
      visit(LabeledGraph(n, chosen));
      return;
    }
    walk(idx + 1);
    const Vertex a = find(all[idx].u), b = find(all[idx].v);
    if (a == b) return;
    parent[b] = a;
    chosen.push_back(all[idx]);
    walk(idx + 1);
    chosen.pop_back();
    parent[b] = b;
  };
  std::iota(parent.begin(), parent.end(), Vertex{0});
  walk(0);
}

std::vector<LabeledGraph> enumerate_forests(std::size_t n) {
  std::vector<LabeledGraph> out;
  for_each_forest(n, [&](const LabeledGraph& g) { out.push_back(g); });
  return out;
}

}  // namespace forestlab
