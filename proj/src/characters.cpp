#include "cheb/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace cheb {

cplx TurnFraction::to_complex() const {
    // exact values on the axes
    if (den == 1) return {1.0, 0.0};
    if (den == 2) return {-1.0, 0.0};
    if (den == 4) return (num == 1) ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
    double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

TurnFraction TurnFraction::conjugate() const {
    TurnFraction t;
    t.den = den;
    t.num = (num == 0) ? 0 : den - num;
    return t;
}

namespace {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) result = static_cast<std::uint64_t>((__uint128_t)result * base % mod);
        base = static_cast<std::uint64_t>((__uint128_t)base * base % mod);
        exp >>= 1;
    }
    return result;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

// Primitive root mod p^e for odd prime p. A primitive root g mod p with
// g^(p-1) != 1 mod p^2 stays primitive for every power.
std::uint64_t primitive_root_mod_prime_power(std::uint64_t p, unsigned e) {
    std::uint64_t pm1 = p - 1;
    auto fac = factorize(pm1);
    std::uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto& [r, re] : fac) {
            (void)re;
            if (powmod(g, pm1 / r, p) == 1) { ok = false; break; }
        }
        if (ok) break;
    }
    if (e >= 2) {
        std::uint64_t p2 = p * p;
        if (powmod(g, pm1, p2) == 1) g += p;
    }
    return g;
}

struct CyclicFactor {
    std::uint64_t prime_power; // the modulus component this factor lives in
    std::uint64_t generator;   // generator within that component
    std::uint64_t order;
    // discrete log table: residue mod prime_power -> exponent
    std::map<std::uint64_t, std::uint64_t> dlog;
    bool two_part_sign = false; // the {-1} factor of (Z/2^e)*, e >= 3
};

struct GroupStructure {
    std::uint64_t q = 1;
    std::uint64_t phi = 1;
    std::uint64_t exponent = 1; // lcm of factor orders
    std::vector<CyclicFactor> factors;
    // exponent vector per residue a coprime to q (indexed per factor)
    std::vector<std::vector<std::uint64_t>> residue_exponents; // [a] -> vector, empty if gcd>1
};

GroupStructure analyze_group(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("character_group: q must be positive");
    GroupStructure gs;
    gs.q = q;
    gs.phi = euler_phi(q);

    auto fac = factorize(q);
    std::sort(fac.begin(), fac.end()); // 2 first, then odd primes ascending

    for (auto& [p, e] : fac) {
        std::uint64_t pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue; // (Z/2)* trivial
            if (e == 2) {
                CyclicFactor f;
                f.prime_power = 4;
                f.generator = 3;
                f.order = 2;
                f.dlog[1] = 0;
                f.dlog[3] = 1;
                gs.factors.push_back(std::move(f));
            } else {
                CyclicFactor sign;
                sign.prime_power = pe;
                sign.generator = pe - 1;
                sign.order = 2;
                sign.two_part_sign = true;
                gs.factors.push_back(std::move(sign));

                CyclicFactor five;
                five.prime_power = pe;
                five.generator = 5;
                five.order = pe / 4; // 2^(e-2)
                std::uint64_t v = 1;
                for (std::uint64_t j = 0; j < five.order; ++j) {
                    five.dlog[v] = j;
                    v = v * 5 % pe;
                }
                gs.factors.push_back(std::move(five));
            }
        } else {
            CyclicFactor f;
            f.prime_power = pe;
            f.generator = primitive_root_mod_prime_power(p, e);
            f.order = pe / p * (p - 1);
            std::uint64_t v = 1;
            for (std::uint64_t j = 0; j < f.order; ++j) {
                f.dlog[v] = j;
                v = static_cast<std::uint64_t>((__uint128_t)v * f.generator % pe);
            }
            gs.factors.push_back(std::move(f));
        }
    }

    gs.exponent = 1;
    for (auto& f : gs.factors) gs.exponent = std::lcm(gs.exponent, f.order);

    gs.residue_exponents.assign(q, {});
    for (std::uint64_t a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        std::vector<std::uint64_t> exps;
        exps.reserve(gs.factors.size());
        std::size_t i = 0;
        while (i < gs.factors.size()) {
            const CyclicFactor& f = gs.factors[i];
            std::uint64_t r = a % f.prime_power;
            if (f.two_part_sign) {
                // (Z/2^e)* = {±1} x <5>: r = (-1)^s * 5^j.
                const CyclicFactor& five = gs.factors[i + 1];
                std::uint64_t s = (r % 4 == 3) ? 1 : 0;
                std::uint64_t rr = s ? (f.prime_power - r) : r;
                auto it = five.dlog.find(rr);
                if (it == five.dlog.end())
                    throw std::logic_error("character group: 2-part decomposition failed");
                exps.push_back(s);
                exps.push_back(it->second);
                i += 2;
            } else {
                auto it = f.dlog.find(r);
                if (it == f.dlog.end())
                    throw std::logic_error("character group: discrete log failed");
                exps.push_back(it->second);
                i += 1;
            }
        }
        gs.residue_exponents[a] = std::move(exps);
    }
    return gs;
}

// Mixed-radix decode of a canonical index into generator exponents.
std::vector<std::uint64_t> index_to_exponents(const GroupStructure& gs, std::uint64_t index) {
    std::vector<std::uint64_t> t(gs.factors.size(), 0);
    for (std::size_t i = gs.factors.size(); i-- > 0;) {
        t[i] = index % gs.factors[i].order;
        index /= gs.factors[i].order;
    }
    if (index != 0) throw std::invalid_argument("character index out of range");
    return t;
}

std::uint64_t exponents_to_index(const GroupStructure& gs, const std::vector<std::uint64_t>& t) {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < gs.factors.size(); ++i) index = index * gs.factors[i].order + t[i];
    return index;
}

// Conductor of the component character with exponent t on a cyclic factor.
std::uint64_t component_conductor(const CyclicFactor& f, const CyclicFactor* five_partner,
                                  std::uint64_t t, std::uint64_t t_five) {
    if (f.two_part_sign) {
        // handled jointly with the 5-factor
        std::uint64_t order_t = five_partner ? five_partner->order / std::gcd(five_partner->order, t_five) : 1;
        if (t_five != 0 && order_t > 1) return 4 * order_t; // 2^(k+2)
        return (t != 0) ? 4 : 1;
    }
    if (t == 0) return 1;
    if (f.prime_power % 2 == 0) {
        // the lone C2 factor of (Z/4)*
        return 4;
    }
    // odd p^e: order o = p^alpha * beta with beta | p-1; conductor p^(alpha+1)
    std::uint64_t p = factorize(f.prime_power)[0].first;
    std::uint64_t o = f.order / std::gcd(f.order, t);
    std::uint64_t cond = p;
    while (o % p == 0) { o /= p; cond *= p; }
    return cond;
}

std::uint64_t character_conductor(const GroupStructure& gs, const std::vector<std::uint64_t>& t) {
    std::uint64_t cond = 1;
    for (std::size_t i = 0; i < gs.factors.size(); ++i) {
        const CyclicFactor& f = gs.factors[i];
        if (f.two_part_sign) {
            cond *= component_conductor(f, &gs.factors[i + 1], t[i], t[i + 1]);
            ++i; // partner consumed
        } else {
            cond *= component_conductor(f, nullptr, t[i], 0);
        }
    }
    return cond;
}

// Index of the primitive character mod f agreeing with (gs, t) on residues
// coprime to q.
std::uint64_t inducing_index(const GroupStructure& gs, const std::vector<std::uint64_t>& t,
                             std::uint64_t f, std::uint64_t exponent,
                             const std::vector<std::int64_t>& turns) {
    if (f == gs.q) return exponents_to_index(gs, t);
    GroupStructure sub = analyze_group(f);
    std::vector<std::uint64_t> sub_t(sub.factors.size(), 0);
    for (std::size_t i = 0; i < sub.factors.size(); ++i) {
        // CRT-lift the factor generator to the residue mod f that is 1 on
        // every complementary component, then further to a residue coprime
        // to q, and read off chi at that point.
        std::uint64_t pp = sub.factors[i].prime_power;
        std::uint64_t rest = f / pp;
        std::uint64_t lift = sub.factors[i].generator % pp;
        while (lift % rest != 1 % rest) lift += pp;
        std::uint64_t h = lift;
        while (std::gcd(h, gs.q) != 1) h += f;
        long long u = turns[h % gs.q];
        if (u < 0) throw std::logic_error("inducing_index: lift not coprime");
        // chi1(g) = e(u / exponent) must be an order_i-th root of unity
        std::uint64_t d = sub.factors[i].order;
        if ((static_cast<std::uint64_t>(u) * d) % exponent != 0)
            throw std::logic_error("inducing_index: value is not in the expected value group");
        sub_t[i] = static_cast<std::uint64_t>(u) * d / exponent % d;
    }
    return exponents_to_index(sub, sub_t);
}

} // namespace

struct CharacterBuilder {
    static DirichletCharacter build(const GroupStructure& gs, std::uint64_t index);
};

DirichletCharacter CharacterBuilder::build(const GroupStructure& gs, std::uint64_t index) {
    DirichletCharacter chi;
    chi.q_ = gs.q;
    chi.index_ = index;
    chi.exponent_ = gs.exponent;

    std::vector<std::uint64_t> t = index_to_exponents(gs, index);

    chi.turns_.assign(gs.q, -1);
    if (gs.q == 1) {
        chi.turns_.assign(1, 0); // identically 1
    } else {
        for (std::uint64_t a = 0; a < gs.q; ++a) {
            if (std::gcd(a, gs.q) != 1) continue;
            const auto& s = gs.residue_exponents[a];
            std::uint64_t u = 0;
            for (std::size_t i = 0; i < gs.factors.size(); ++i)
                u = (u + t[i] * s[i] % gs.exponent * (gs.exponent / gs.factors[i].order)) % gs.exponent;
            chi.turns_[a] = static_cast<std::int64_t>(u);
        }
    }

    // parity: chi(-1)
    std::uint64_t minus_one = (gs.q == 1) ? 0 : gs.q - 1;
    std::int64_t u = chi.turns_[minus_one];
    if (u == 0)
        chi.parity_ = 0;
    else if (static_cast<std::uint64_t>(2 * u) == gs.exponent)
        chi.parity_ = 1;
    else
        throw std::logic_error("character parity: chi(-1) is not ±1");

    chi.conductor_ = (gs.q == 1) ? 1 : character_conductor(gs, t);
    chi.inducing_index_ = inducing_index(gs, t, chi.conductor_, gs.exponent, chi.turns_);
    return chi;
}

std::uint64_t euler_phi(std::uint64_t q) {
    std::uint64_t result = q;
    for (auto& [p, e] : factorize(q)) {
        (void)e;
        result -= result / p;
    }
    return q == 0 ? 0 : result;
}

bool DirichletCharacter::is_real() const {
    for (std::int64_t u : turns_)
        if (u > 0 && static_cast<std::uint64_t>(2 * u) != exponent_) return false;
    return true;
}

std::optional<TurnFraction> DirichletCharacter::value(long long n) const {
    long long r = n % static_cast<long long>(q_);
    if (r < 0) r += static_cast<long long>(q_);
    std::int64_t u = turns_[static_cast<std::size_t>(r)];
    if (u < 0) return std::nullopt;
    long long g = std::gcd(u, static_cast<long long>(exponent_));
    TurnFraction tf;
    tf.num = u / g;
    tf.den = static_cast<long long>(exponent_) / g;
    if (u == 0) { tf.num = 0; tf.den = 1; }
    return tf;
}

cplx DirichletCharacter::eval(long long n) const {
    auto v = value(n);
    if (!v) return {0.0, 0.0};
    return v->to_complex();
}

std::pair<std::uint64_t, DirichletCharacter> DirichletCharacter::conductor_and_inducer() const {
    return {conductor_, character_from_index(conductor_, inducing_index_)};
}

std::string DirichletCharacter::descriptor() const {
    return std::to_string(q_) + ":" + std::to_string(index_);
}

std::vector<DirichletCharacter> character_group(std::uint64_t q) {
    GroupStructure gs = analyze_group(q);
    std::vector<DirichletCharacter> out;
    out.reserve(gs.phi);
    for (std::uint64_t index = 0; index < gs.phi; ++index) out.push_back(CharacterBuilder::build(gs, index));
    return out;
}

DirichletCharacter character_from_index(std::uint64_t q, std::uint64_t index) {
    GroupStructure gs = analyze_group(q);
    if (index >= gs.phi) throw std::invalid_argument("character_from_index: index out of range");
    return CharacterBuilder::build(gs, index);
}

DirichletCharacter character_from_descriptor(const std::string& descriptor) {
    auto colon = descriptor.find(':');
    if (colon == std::string::npos)
        throw parse_error("character descriptor must be q:index", 0);
    std::uint64_t q = std::stoull(descriptor.substr(0, colon));
    std::uint64_t index = std::stoull(descriptor.substr(colon + 1));
    return character_from_index(q, index);
}

namespace {

// Census over a list of turn exponents (denominator m): exact sum of
// e(u/m) over the list is |list| when all u = 0, and 0 when every distinct
// exponent occurs with the same multiplicity and more than one occurs.
std::optional<long long> census_sum(const std::vector<std::uint64_t>& exps) {
    if (exps.empty()) return 0;
    std::map<std::uint64_t, std::uint64_t> mult;
    for (auto u : exps) ++mult[u];
    if (mult.size() == 1 && mult.begin()->first == 0)
        return static_cast<long long>(exps.size());
    std::uint64_t m0 = mult.begin()->second;
    for (auto& [u, c] : mult) {
        (void)u;
        if (c != m0) return std::nullopt;
    }
    return 0;
}

} // namespace

std::optional<long long> orthogonality_sum_exact(const DirichletCharacter& chi,
                                                 const DirichletCharacter& chi_prime) {
    if (chi.modulus() != chi_prime.modulus())
        throw std::invalid_argument("orthogonality_sum_exact: moduli differ");
    std::uint64_t q = chi.modulus();
    std::uint64_t m = std::lcm(chi.exponent(), chi_prime.exponent());
    std::vector<std::uint64_t> exps;
    for (std::uint64_t a = 0; a < std::max<std::uint64_t>(q, 1); ++a) {
        auto v = chi.value(static_cast<long long>(a));
        auto w = chi_prime.value(static_cast<long long>(a));
        if (!v || !w) continue;
        // u = m*(v - w) as a turn numerator mod m
        long long uv = v->num * (static_cast<long long>(m) / v->den);
        long long uw = w->num * (static_cast<long long>(m) / w->den);
        long long d = (uv - uw) % static_cast<long long>(m);
        if (d < 0) d += static_cast<long long>(m);
        exps.push_back(static_cast<std::uint64_t>(d));
    }
    return census_sum(exps);
}

std::optional<long long> dual_orthogonality_sum_exact(std::uint64_t q, std::uint64_t a,
                                                      std::uint64_t n) {
    if (std::gcd(a, q) != 1 || std::gcd(n, q) != 1)
        throw std::invalid_argument("dual_orthogonality_sum_exact: arguments must be coprime to q");
    auto group = character_group(q);
    std::uint64_t m = group.empty() ? 1 : group.front().exponent();
    std::vector<std::uint64_t> exps;
    for (const auto& chi : group) {
        auto va = chi.value(static_cast<long long>(a));
        auto vn = chi.value(static_cast<long long>(n));
        long long ua = va->num * (static_cast<long long>(m) / va->den);
        long long un = vn->num * (static_cast<long long>(m) / vn->den);
        long long d = (un - ua) % static_cast<long long>(m);
        if (d < 0) d += static_cast<long long>(m);
        exps.push_back(static_cast<std::uint64_t>(d));
    }
    return census_sum(exps);
}

} // namespace cheb
