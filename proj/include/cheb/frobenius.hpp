// Frobenius conjugacy-class classification of rational primes for a closed
// catalog of Galois extensions of Q, Chebotarev counting functions, and
// prime-ideal counting for quadratic reference fields.
//
// Catalog entries: quadratic fields for a small set of squarefree d,
// cyclotomic fields Q(zeta_q) for 3 <= q <= 60, and the splitting field of
// x^3 - 2 (Galois group S3). Adding an entry requires a classifier and a
// group model (multiplication table + class partition).
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cheb/sieve.hpp"
#include "cheb/util.hpp"

namespace cheb {

// Small finite group given by an explicit multiplication table and its
// partition into conjugacy classes. Class power (the condition
// "Frobenius^m lands in C") is evaluated on a representative and is
// conjugation-invariant.
struct GroupModel {
    std::uint64_t order = 1;
    std::vector<std::string> class_ids;
    std::vector<std::uint64_t> class_sizes;
    std::vector<std::uint32_t> element_class;       // element index -> class index
    std::vector<std::vector<std::uint32_t>> mult;   // multiplication table
    std::uint32_t identity = 0;

    std::uint32_t class_index(const std::string& id) const; // throws on unknown id
    std::uint32_t power_class(std::uint32_t cls, std::uint64_t m) const;
};

struct AbelianReduction {
    std::uint64_t q = 1;
    // class id -> residues mod q realizing it
    std::vector<std::pair<std::string, std::vector<std::uint64_t>>> class_residues;
};

struct ExtensionCatalogEntry {
    std::string id;
    std::string description;
    GroupModel group;
    std::vector<std::uint64_t> ramified;
    std::optional<AbelianReduction> abelian_reduction;
    // class id of an unramified prime; must not be called on ramified input
    std::function<std::string(std::uint64_t)> classify;

    bool is_ramified(std::uint64_t p) const;
};

const std::vector<ExtensionCatalogEntry>& extension_catalog();
const ExtensionCatalogEntry& extension_by_id(const std::string& id); // throws on unknown id

// ---------------------------------------------------------------------------
// Quadratic fields Q(sqrt(d))
// ---------------------------------------------------------------------------
struct QuadraticField {
    long long d = -1; // squarefree, not 0 or 1

    QuadraticField() = default;
    explicit QuadraticField(long long d_); // validates squarefree
    long long discriminant() const;        // fundamental discriminant D
};

enum class QuadClass { split, inert, ramified };

// Kronecker symbol (a|n), full generality (n may be negative or even).
int kronecker_symbol(long long a, long long n);

// Splitting of p in Q(sqrt(d)) via the Kronecker symbol (D|p).
QuadClass classify_quadratic(std::uint64_t p, const QuadraticField& F);

// ---------------------------------------------------------------------------
// The S3 entry: splitting field of x^3 - 2
// ---------------------------------------------------------------------------
enum class S3Class { identity, transposition, three_cycle, ramified };

// Factorization pattern of x^3 - 2 mod p: three roots -> identity, one root
// -> transposition, none -> three_cycle; p in {2,3} ramified. Root counting
// is direct for p < 10^4 and by the cube-residue test 2^((p-1)/3) mod p for
// larger p.
S3Class classify_s3(std::uint64_t p);

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

// #{p <= x : p unramified, Frobenius class in class_ids}.
std::uint64_t pi_chebotarev(const PrimeTable& table, const ExtensionCatalogEntry& ext,
                            const std::vector<std::string>& class_ids, double x);

// sum of 1/m over unramified p^m <= x, m >= 2, with the m-th power of the
// Frobenius class inside the target set.
Rat64 r_chebotarev_exact(const PrimeTable& table, const ExtensionCatalogEntry& ext,
                         const std::vector<std::string>& class_ids, double x);
double r_chebotarev(const PrimeTable& table, const ExtensionCatalogEntry& ext,
                    const std::vector<std::string>& class_ids, double x);

// kappa = (1/|G|) sum_j |C_j| #{b in G : b^2 in C_j}, from the group table.
Rat64 kappa_chebotarev(const ExtensionCatalogEntry& ext,
                       const std::vector<std::string>& class_ids);

// Prime-ideal count for the quadratic field: 2 per split p <= x, 1 per inert
// p with p^2 <= x, 1 per ramified p <= x.
std::uint64_t dedekind_pi(const PrimeTable& table, const QuadraticField& F, double x);

// R(x,K) = sum of 1/m over prime-ideal powers of norm <= x with m >= 2.
double dedekind_r(const PrimeTable& table, const QuadraticField& F, double x);

// Sorted prime-ideal norms (split p twice, inert p as p^2, ramified p once),
// for O(log) dedekind_pi queries in discrepancy evaluation.
std::vector<std::uint64_t> dedekind_norms(const PrimeTable& table, const QuadraticField& F);

} // namespace cheb
