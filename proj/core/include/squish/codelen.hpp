#pragma once

#include <cstdint>

namespace squish::codelen {

// Normalizing constant of the universal code for integers.
inline constexpr double kUniversalC0 = 2.865064;

// Universal (log-star) code length in bits for n >= 1:
// log2(c0) + log2(n) + log2(log2(n)) + ... over the positive iterates.
double universal_int(std::uint64_t n);

// log2 of the binomial coefficient C(n, k), 0 <= k <= n. Computed through
// log-gamma so it stays exact enough up to n ~ 1e9.
double log2_binomial(std::uint64_t n, std::uint64_t k);

// Number of bits of an index over all ways to split `total` into `bins`
// non-negative parts: log2 C(total + bins - 1, bins - 1). Zero when there
// are no bins.
double log2_compositions(std::uint64_t total, std::uint64_t bins);

// Total prequential code length of a gap/fill record stream with the given
// final counts, epsilon = 0.5:
//   -sum_{i=1..fills} log2((e+i)/(2e+i)) - sum_{i=1..gaps} log2((e+i)/(2e+fills+i))
// Evaluated in closed form through log-gamma; identical to the direct sum.
double prequential(std::uint64_t fills, std::uint64_t gaps);

}  // namespace squish::codelen
