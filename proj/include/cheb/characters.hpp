// Dirichlet characters mod q with exact values: each value is stored as a
// rational multiple of a full turn, so orthogonality and parity checks are
// integer arithmetic, not floating point.
//
// Group structure: (Z/q)* is decomposed into cyclic factors with explicit
// generators -- primitive roots for odd prime powers, {-1, 5} for 2^k with
// k >= 3. Factors are ordered 2-part first, then odd primes ascending, and a
// character's canonical index is the mixed-radix encoding of its generator
// exponents in that factor order. Index 0 is the principal character and the
// labeling is deterministic across runs.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cheb/util.hpp"

namespace cheb {

// e^(2*pi*i * num/den), reduced, 0 <= num < den.
struct TurnFraction {
    long long num = 0;
    long long den = 1;

    cplx to_complex() const;
    TurnFraction conjugate() const;
    bool is_one() const { return num == 0; }
    bool is_minus_one() const { return 2 * num == den; }
    friend bool operator==(const TurnFraction& a, const TurnFraction& b) {
        return a.num == b.num && a.den == b.den;
    }
};

std::uint64_t euler_phi(std::uint64_t q);

class DirichletCharacter {
public:
    std::uint64_t modulus() const { return q_; }
    std::uint64_t index() const { return index_; }
    std::uint64_t conductor() const { return conductor_; }
    std::uint64_t inducing_index() const { return inducing_index_; }
    int parity() const { return parity_; } // 0: chi(-1)=1, 1: chi(-1)=-1
    bool is_principal() const { return index_ == 0; }
    bool is_primitive() const { return conductor_ == q_; }
    bool is_real() const;
    // Order of the value group: every chi(n) is an exponent_ -th root of unity.
    std::uint64_t exponent() const { return exponent_; }

    // Exact value as a turn fraction; nullopt iff gcd(n, q) > 1.
    std::optional<TurnFraction> value(long long n) const;
    // chi(n) as a complex double; exactly 0 iff gcd(n, q) > 1.
    cplx eval(long long n) const;

    // Smallest modulus f | q the character factors through, and the primitive
    // character mod f that induces it.
    std::pair<std::uint64_t, DirichletCharacter> conductor_and_inducer() const;

    // "q:index", used in CLI flags and zero-database headers.
    std::string descriptor() const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.q_ == b.q_ && a.index_ == b.index_;
    }

    friend struct CharacterBuilder;

private:
    std::uint64_t q_ = 1;
    std::uint64_t index_ = 0;
    std::uint64_t conductor_ = 1;
    std::uint64_t inducing_index_ = 0;
    int parity_ = 0;
    std::uint64_t exponent_ = 1;       // common denominator of all values
    std::vector<std::int64_t> turns_;  // turns_[a] = num with den = exponent_; -1 when gcd(a,q)>1
};

// All phi(q) characters mod q, ordered by canonical index (principal first).
// Throws std::invalid_argument for q = 0.
std::vector<DirichletCharacter> character_group(std::uint64_t q);

// Single character by canonical index, 0 <= index < phi(q).
DirichletCharacter character_from_index(std::uint64_t q, std::uint64_t index);

// Parse "q:index".
DirichletCharacter character_from_descriptor(const std::string& descriptor);

// Exact value of sum_a chi(a) * conj(chi'(a)) over a mod q, certified by a
// multiplicity census of the product character's value exponents (each value
// of a character of order o is attained exactly phi(q)/o times, so the sum
// telescopes to 0 unless the product is principal). Returns nullopt only if
// the census fails, which would indicate a construction bug.
std::optional<long long> orthogonality_sum_exact(const DirichletCharacter& chi,
                                                 const DirichletCharacter& chi_prime);

// Exact value of sum_chi conj(chi)(a) * chi(n) over all characters mod q,
// for gcd(a, q) = gcd(n, q) = 1: phi(q) when n == a mod q, else 0, certified
// by the same census applied to the dual group.
std::optional<long long> dual_orthogonality_sum_exact(std::uint64_t q, std::uint64_t a,
                                                      std::uint64_t n);

} // namespace cheb
