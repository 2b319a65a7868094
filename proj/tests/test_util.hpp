// Shared fixtures for the test binaries. Tables are built once per process.
#pragma once

#include <cstdint>
#include <memory>

#include "cheb/sieve.hpp"

namespace chebtest {

inline const cheb::PrimeTable& table_1e5() {
    static cheb::PrimeTable t = cheb::build_table(100000);
    return t;
}

inline const cheb::PrimeTable& table_1e6() {
    static cheb::PrimeTable t = cheb::build_table(1000000);
    return t;
}

inline const cheb::PrimeTable& table_1e7() {
    static cheb::PrimeTable t = cheb::build_table(10000000);
    return t;
}

// Trial-division primality, the independent oracle for sieve checks.
inline bool is_prime_slow(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace chebtest
