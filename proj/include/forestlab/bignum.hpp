#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

namespace forestlab {

// Exact nonnegative counts (t_n, f_n, automorphism counts, ...).
using BigCount = mpz_class;
using Rational = mpq_class;

// Floating type for series evaluation and law masses; 50 decimal digits.
using HighReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<50>,
    boost::multiprecision::et_off>;

BigCount factorial(unsigned long n);
BigCount binomial(unsigned long n, unsigned long k);
BigCount power(unsigned long base, unsigned long exponent);

// base^exponent for a possibly negative exponent (e.g. the n^{n-2} convention at n = 1).
Rational rational_power(unsigned long base, long exponent);

HighReal to_high(const Rational& q);
HighReal to_high(const BigCount& z);

// e^{-m - h/2}
HighReal exp_neg_half_units(unsigned long m, unsigned h);

std::string to_decimal(const BigCount& z);
// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_fraction_string(const Rational& q);

// Fixed-precision decimal rendering used by every report.
std::string format_real(double value, int digits = 12);

}  // namespace forestlab
