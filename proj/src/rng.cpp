#include "forestlab/rng.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace forestlab {

namespace {

// Mass above k = 30 is below 1e-32, far under the 2^-64 grid; it is lumped into k = 30.
constexpr unsigned kPoissonCap = 30;

// threshold[k] = floor(2^64 * P(K <= k)) for K ~ Poisson(1), computed once in
// 50-digit arithmetic so every platform gets the same table.
const std::array<std::uint64_t, kPoissonCap>& poisson_thresholds() {
  static const auto table = [] {
    std::array<std::uint64_t, kPoissonCap> t{};
    const HighReal scale = boost::multiprecision::ldexp(HighReal(1), 64);
    const HighReal e_inv = boost::multiprecision::exp(HighReal(-1));
    HighReal term = e_inv;  // e^{-1} / k!
    HighReal cdf = 0;
    for (unsigned k = 0; k < kPoissonCap; ++k) {
      cdf += term;
      term /= (k + 1);
      HighReal scaled = boost::multiprecision::floor(cdf * scale);
      if (scaled >= scale) scaled = scale - 1;
      BigCount z;
      mpfr_get_z(z.get_mpz_t(), scaled.backend().data(), MPFR_RNDZ);
      static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");
      t[k] = mpz_get_ui(z.get_mpz_t());
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

BigCount Rng::big_below(const BigCount& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::big_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
  const std::uint64_t top_mask = top_bits == 64 ? UINT64_MAX : ((std::uint64_t{1} << top_bits) - 1);
  std::vector<std::uint64_t> buf(words);
  BigCount x;
  do {
    for (auto& w : buf) w = engine_();
    buf.back() &= top_mask;  // most significant word last
    mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  } while (x >= bound);
  return x;
}

unsigned Rng::poisson1() {
  const auto& t = poisson_thresholds();
  const std::uint64_t u = engine_();
  unsigned k = 0;
  while (k < kPoissonCap && u >= t[k]) ++k;
  return k;
}

}  // namespace forestlab
