#include "cheb/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cheb {

namespace {

void check_x(const PrimeTable& table, double x, const char* who) {
    if (x > static_cast<double>(table.x_max))
        throw std::out_of_range(std::string(who) + ": x exceeds table bound");
}

std::size_t power_end(const PrimeTable& table, double x) {
    std::uint64_t xi = (x < 0) ? 0 : static_cast<std::uint64_t>(x);
    return static_cast<std::size_t>(std::upper_bound(table.prime_powers.begin(),
                                                     table.prime_powers.end(), xi,
                                                     [](std::uint64_t v, const PrimePower& pp) {
                                                         return v < pp.value;
                                                     }) -
                                    table.prime_powers.begin());
}

} // namespace

std::vector<std::uint64_t> canonicalize_classes(const std::vector<long long>& classes,
                                                std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("residue classes: q must be positive");
    std::vector<std::uint64_t> out;
    std::set<std::uint64_t> seen;
    for (long long c : classes) {
        long long r = c % static_cast<long long>(q);
        if (r < 0) r += static_cast<long long>(q);
        std::uint64_t a = static_cast<std::uint64_t>(r);
        if (std::gcd(a, q) != 1)
            throw std::invalid_argument("residue class " + std::to_string(a) +
                                        " is not coprime to q=" + std::to_string(q));
        if (!seen.insert(a).second)
            throw std::invalid_argument("duplicate residue class " + std::to_string(a));
        out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t pi_progression(const PrimeTable& table, double x, std::uint64_t q,
                             std::uint64_t a) {
    if (q == 0) throw std::invalid_argument("pi_progression: q must be positive");
    check_x(table, x, "pi_progression");
    std::uint64_t count = 0;
    for (std::uint64_t p : table.primes) {
        if (static_cast<double>(p) > x) break;
        if (p % q == a % q) ++count;
    }
    return count;
}

cplx psi_chi(const PrimeTable& table, const DirichletCharacter& chi, double x) {
    check_x(table, x, "psi_chi");
    if (x < 2.0) return {0.0, 0.0};
    std::size_t end = power_end(table, x);
    const auto& pp = table.prime_powers;
    return pairwise_sum_cplx(0, end, [&](std::size_t i) {
        cplx v = chi.eval(static_cast<long long>(pp[i].value % chi.modulus()));
        if (v == cplx{0.0, 0.0}) return cplx{0.0, 0.0};
        return v * (std::log(static_cast<double>(pp[i].value)) / pp[i].k);
    });
}

double psi_progression(const PrimeTable& table, double x, std::uint64_t q, std::uint64_t a) {
    if (q == 0) throw std::invalid_argument("psi_progression: q must be positive");
    check_x(table, x, "psi_progression");
    if (x < 2.0) return 0.0;
    std::size_t end = power_end(table, x);
    const auto& pp = table.prime_powers;
    std::uint64_t target = a % q;
    return pairwise_sum(0, end, [&](std::size_t i) {
        if (pp[i].value % q != target) return 0.0;
        return std::log(static_cast<double>(pp[i].value)) / pp[i].k;
    });
}

Rat64 r_progression_exact(const PrimeTable& table, double x, std::uint64_t q, std::uint64_t a) {
    if (q == 0) throw std::invalid_argument("r_progression: q must be positive");
    check_x(table, x, "r_progression");
    Rat64 sum(0);
    std::uint64_t target = a % q;
    for (const PrimePower& pp : table.prime_powers) {
        if (static_cast<double>(pp.value) > x) break;
        if (pp.k >= 2 && pp.value % q == target) sum = sum + Rat64(1, pp.k);
    }
    return sum;
}

double r_progression(const PrimeTable& table, double x, std::uint64_t q, std::uint64_t a) {
    return r_progression_exact(table, x, q, a).value();
}

ProgressionCount progression_count(const PrimeTable& table, double x, std::uint64_t q,
                                   std::uint64_t a) {
    ProgressionCount pc;
    pc.q = q;
    pc.a = a % q;
    pc.x = x;
    pc.pi_value = pi_progression(table, x, q, a);
    pc.r_exact = r_progression_exact(table, x, q, a);
    pc.R_value = pc.r_exact.value();
    pc.Pi_value = static_cast<double>(pc.pi_value) + pc.R_value;
    pc.psi_value = psi_progression(table, x, q, a);
    return pc;
}

cplx c_chi(const std::vector<long long>& classes, std::uint64_t q,
           const DirichletCharacter& chi) {
    if (chi.modulus() != q) throw std::invalid_argument("c_chi: character modulus mismatch");
    auto canon = canonicalize_classes(classes, q);
    cplx sum{0.0, 0.0};
    for (std::uint64_t a : canon) {
        auto v = chi.value(static_cast<long long>(a));
        if (!v) throw std::invalid_argument("c_chi: class not coprime to q");
        sum += v->conjugate().to_complex();
    }
    return sum / static_cast<double>(euler_phi(q));
}

Rat64 kappa_residue(const std::vector<long long>& classes, std::uint64_t q) {
    auto canon = canonicalize_classes(classes, q);
    long long count = 0;
    for (std::uint64_t a : canon)
        for (std::uint64_t b = 0; b < q; ++b)
            if (b * b % q == a) ++count;
    return Rat64(count, static_cast<long long>(euler_phi(q)));
}

} // namespace cheb
