// Exact counting for primes and prime powers in residue classes, the
// character-weighted psi sums, and the coefficient formulas c_chi and kappa.
#pragma once

#include <cstdint>
#include <vector>

#include "cheb/characters.hpp"
#include "cheb/sieve.hpp"
#include "cheb/util.hpp"

namespace cheb {

struct ProgressionCount {
    std::uint64_t q = 1;
    std::uint64_t a = 0;
    double x = 0.0;
    std::uint64_t pi_value = 0; // primes <= x in the class
    Rat64 r_exact;              // R(x,q,a) as an exact rational
    double R_value = 0.0;
    double Pi_value = 0.0;      // pi_value + R_value (exact by construction)
    double psi_value = 0.0;
};

// Canonicalizes residues to [0, q), requires them distinct and coprime to q.
std::vector<std::uint64_t> canonicalize_classes(const std::vector<long long>& classes,
                                                std::uint64_t q);

// #{p <= x : p = a mod q}. Requires x <= x_max, q >= 1.
std::uint64_t pi_progression(const PrimeTable& table, double x, std::uint64_t q, std::uint64_t a);

// psi(x, chi) = sum over n <= x of chi(n) Lambda(n).
cplx psi_chi(const PrimeTable& table, const DirichletCharacter& chi, double x);

// psi(x, q, a) = sum of Lambda(n) over n <= x, n = a mod q.
double psi_progression(const PrimeTable& table, double x, std::uint64_t q, std::uint64_t a);

// R(x,q,a) = sum of 1/k over prime powers p^k <= x with k >= 2 and
// p^k = a mod q; exact rational (denominators lcm up to the max exponent).
Rat64 r_progression_exact(const PrimeTable& table, double x, std::uint64_t q, std::uint64_t a);
double r_progression(const PrimeTable& table, double x, std::uint64_t q, std::uint64_t a);

// All four counting functions for one (x, q, a).
ProgressionCount progression_count(const PrimeTable& table, double x, std::uint64_t q,
                                   std::uint64_t a);

// c_chi = (1/phi(q)) * sum_j conj(chi)(a_j); classes must be distinct and
// coprime to q.
cplx c_chi(const std::vector<long long>& classes, std::uint64_t q, const DirichletCharacter& chi);

// kappa = (1/phi(q)) * sum_j #{b mod q : b^2 = a_j mod q}, exact.
Rat64 kappa_residue(const std::vector<long long>& classes, std::uint64_t q);

} // namespace cheb
