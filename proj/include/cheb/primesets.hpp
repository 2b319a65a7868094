// Declarative prime-set specifications and their counting functions: residue
// unions with finite exception lists, Frobenius-class unions over the
// extension catalog, weighted class combinations, the P_odd set, and
// procedural (callback) sets for testing.
//
// Text format (CLI/config):
//   residue q=12 classes=1,5,11 add= remove=
//   frobenius ext=s3_x3m2 classes=transposition add= remove=
//   weighted ext=s3_x3m2 classes=identity:0.5,transposition:-0.25,three_cycle:0
//   podd
// Parse errors carry the byte position of the offending token.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cheb/frobenius.hpp"
#include "cheb/sieve.hpp"
#include "cheb/util.hpp"

namespace cheb {

struct ResidueUnionSpec {
    std::uint64_t q = 1;
    std::vector<std::uint64_t> classes; // canonical: sorted, distinct, coprime to q
    std::vector<std::uint64_t> added;   // P0, primes outside the union
    std::vector<std::uint64_t> removed; // P1, primes inside the union
};

struct FrobeniusUnionSpec {
    std::string extension_id;
    std::vector<std::string> class_ids;
    std::vector<std::uint64_t> added;
    std::vector<std::uint64_t> removed;
};

struct WeightedSpec {
    std::string extension_id;
    std::vector<std::pair<std::string, cplx>> weights; // one entry per class id used
};

struct ProceduralSpec {
    std::string label;
    std::function<bool(std::uint64_t)> member; // called on primes only
};

class PrimeSetSpec {
public:
    enum class Kind { residue_union, frobenius_union, weighted, odd_indexed, procedural };

    static PrimeSetSpec residue(std::uint64_t q, const std::vector<long long>& classes,
                                std::vector<std::uint64_t> added = {},
                                std::vector<std::uint64_t> removed = {});
    static PrimeSetSpec frobenius(const std::string& extension_id,
                                  std::vector<std::string> class_ids,
                                  std::vector<std::uint64_t> added = {},
                                  std::vector<std::uint64_t> removed = {});
    static PrimeSetSpec weighted(const std::string& extension_id,
                                 std::vector<std::pair<std::string, cplx>> weights);
    static PrimeSetSpec podd();
    static PrimeSetSpec procedural(std::string label, std::function<bool(std::uint64_t)> member);

    Kind kind() const { return kind_; }
    const ResidueUnionSpec& as_residue() const;
    const FrobeniusUnionSpec& as_frobenius() const;
    const WeightedSpec& as_weighted() const;
    const ProceduralSpec& as_procedural() const;

    // Rational density when defined: r/phi(q), sum |C_j|/|G|, or 1/2 for
    // P_odd; nullopt for procedural and weighted sets.
    std::optional<Rat64> density() const;
    // The weighted mean (1/|G|) sum lambda_j |C_j| for weighted sets.
    cplx weighted_mean() const;

    // Canonical text form; parse(to_string()) round-trips for every kind
    // except procedural.
    std::string to_string() const;

private:
    Kind kind_ = Kind::odd_indexed;
    ResidueUnionSpec residue_;
    FrobeniusUnionSpec frobenius_;
    WeightedSpec weighted_;
    ProceduralSpec procedural_;
};

// Throws parse_error with byte position on malformed input.
PrimeSetSpec parse_set_spec(const std::string& text);

// Membership test for a prime p (p is assumed prime and <= x_max).
bool contains_prime(const PrimeSetSpec& spec, const PrimeTable& table, std::uint64_t p);

// Materialized member list for O(log) counting.
struct SetCounter {
    std::vector<std::uint64_t> members; // sorted primes
    std::uint64_t count(double x) const;
};
SetCounter materialize(const PrimeSetSpec& spec, const PrimeTable& table);

// Per-class member lists with weights, for the weighted counting function.
struct WeightedCounter {
    std::vector<std::pair<cplx, std::vector<std::uint64_t>>> classes;
    cplx count(double x) const;
};
WeightedCounter materialize_weighted(const PrimeSetSpec& spec, const PrimeTable& table);

// Exact count of set members <= x. Throws std::invalid_argument for weighted
// sets (use count_weighted).
std::uint64_t count(const PrimeSetSpec& spec, const PrimeTable& table, double x);

// F(x) = sum_j lambda_j pi(x, C_j) for weighted sets.
cplx count_weighted(const PrimeSetSpec& spec, const PrimeTable& table, double x);

// Rewrites a union of residue classes over different moduli as a single
// ResidueUnion at the lcm (or at a multiple of it when target_modulus is
// nonzero). Duplicate classes collapse silently. Primes dividing the target
// modulus that belong to the original union are preserved as explicit
// exceptions, so membership is exactly unchanged.
ResidueUnionSpec unify_moduli(const std::vector<std::pair<long long, std::uint64_t>>& classes,
                              std::uint64_t target_modulus = 0);

// #(A triangle B restricted to primes <= x).
std::uint64_t symmetric_difference_count(const PrimeSetSpec& a, const PrimeSetSpec& b,
                                         const PrimeTable& table, double x);

// count(x) / pi(x).
double density_estimate(const PrimeSetSpec& spec, const PrimeTable& table, double x);

// Returns P_odd(x) - pi(x)/2 and verifies it is 0 or 1/2 according to the
// parity of pi(x); a mismatch throws identity_violation (an implementation
// bug, the identity is exact).
double podd_identity_check(const PrimeTable& table, double x);

} // namespace cheb
