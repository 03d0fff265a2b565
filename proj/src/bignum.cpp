#include "forestlab/bignum.hpp"

#include <cstdio>
#include <stdexcept>

namespace forestlab {

BigCount factorial(unsigned long n) {
  BigCount r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigCount binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigCount power(unsigned long base, unsigned long exponent) {
  BigCount r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

Rational rational_power(unsigned long base, long exponent) {
  if (exponent >= 0) return Rational(power(base, static_cast<unsigned long>(exponent)));
  if (base == 0) throw std::domain_error("rational_power: 0 to a negative power");
  Rational r(BigCount(1), power(base, static_cast<unsigned long>(-exponent)));
  r.canonicalize();
  return r;
}

HighReal to_high(const Rational& q) {
  HighReal x;
  mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return x;
}

HighReal to_high(const BigCount& z) {
  HighReal x;
  mpfr_set_z(x.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return x;
}

HighReal exp_neg_half_units(unsigned long m, unsigned h) {
  HighReal exponent = -HighReal(m) - HighReal(h) / 2;
  return boost::multiprecision::exp(exponent);
}

std::string to_decimal(const BigCount& z) { return z.get_str(10); }

std::string to_fraction_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str(10);
  return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

std::string format_real(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

}  // namespace forestlab
