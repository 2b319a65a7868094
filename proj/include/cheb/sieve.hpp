// Segmented prime / prime-power enumeration with the counting functions
// pi(x), psi(x), Li(x) and the prime-power remainder R(x,1).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cheb/util.hpp"

namespace cheb {

struct PrimePower {
    std::uint64_t value; // p^k
    std::uint32_t k;     // exponent, >= 1
};

// Immutable once built; safe to share across threads.
struct PrimeTable {
    std::uint64_t x_max = 0;
    std::vector<std::uint64_t> primes;      // all primes <= x_max, increasing
    std::vector<PrimePower> prime_powers;   // all p^k <= x_max (k >= 1), increasing by value
};

// Segmented sieve of Eratosthenes; segment length ~ max(sqrt(x_max), 2^16),
// so the working bitmap stays O(sqrt(x_max)). Segments are sieved in
// parallel and concatenated in order.
// Throws std::invalid_argument when x_max < 2.
PrimeTable build_table(std::uint64_t x_max);

// Exact count of primes <= x. Requires 0 <= x <= x_max.
std::uint64_t pi(const PrimeTable& table, double x);

// Chebyshev psi(x) = sum of log p over prime powers p^k <= x,
// accumulated by pairwise summation. Requires 0 <= x <= x_max.
double psi(const PrimeTable& table, double x);

// Li(x) = integral of dt/log(t) from 2 to x, adaptive quadrature with
// absolute error target 1e-9. Requires x >= 2.
double li(double x);

// R(x,1) = sum over k >= 2 of pi(x^(1/k)) / k; finite exact sum.
// Requires x <= x_max.
double r_x1(const PrimeTable& table, double x);

// Binary prime-cache format: magic "CHEBPRIMES1", little-endian 8-byte x_max,
// then the prime sequence as varint gaps (first gap counted from 0).
void write_prime_cache(const std::string& path, const PrimeTable& table);

// Returns false if the file is missing, malformed, or records a different
// x_max than requested.
bool read_prime_cache(const std::string& path, std::uint64_t expected_x_max, PrimeTable& out);

} // namespace cheb
