#pragma once

// Shared arbitrary-precision number types. Counting uses exact big integers,
// probabilities use exact rationals, and log-domain bound arithmetic uses
// 50-digit binary floats (the interesting constants exceed double range).

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <random>
#include <string>

namespace usnc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_bin_float_50;

BigInt bigint_pow(uint64_t base, uint64_t exp);

// Number of k-dimensional subspaces of F_q^n (Gaussian binomial coefficient).
BigInt gaussian_binomial(uint64_t q, uint32_t n, uint32_t k);

Real real_of(const Rational& r);
Real real_of(const BigInt& i);
Real ln_of(const Rational& r);  // natural log, r > 0

std::string rational_str(const Rational& r);
Rational rational_from_str(const std::string& text);  // "num/den" or "num"

// Unbiased uniform draw from [0, bound) via masked rejection. Deterministic
// for a fixed generator stream, unlike std::uniform_int_distribution.
uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound);

}  // namespace usnc
