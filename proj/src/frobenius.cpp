#include "cheb/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cheb {

std::uint32_t GroupModel::class_index(const std::string& id) const {
    for (std::uint32_t i = 0; i < class_ids.size(); ++i)
        if (class_ids[i] == id) return i;
    throw std::invalid_argument("unknown conjugacy class id: " + id);
}

std::uint32_t GroupModel::power_class(std::uint32_t cls, std::uint64_t m) const {
    // representative: first element in the class
    std::uint32_t rep = 0;
    bool found = false;
    for (std::uint32_t e = 0; e < element_class.size(); ++e)
        if (element_class[e] == cls) { rep = e; found = true; break; }
    if (!found) throw std::invalid_argument("power_class: bad class index");
    std::uint32_t acc = identity;
    for (std::uint64_t i = 0; i < m; ++i) acc = mult[acc][rep];
    return element_class[acc];
}

bool ExtensionCatalogEntry::is_ramified(std::uint64_t p) const {
    return std::find(ramified.begin(), ramified.end(), p) != ramified.end();
}

// ---------------------------------------------------------------------------
// Kronecker symbol
// ---------------------------------------------------------------------------
int kronecker_symbol(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    while ((n & 1) == 0) {
        n >>= 1;
        long long am = ((a % 8) + 8) % 8;
        if (am == 3 || am == 5)
            result = -result;
        else if ((am & 1) == 0)
            return 0;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            if (n % 8 == 3 || n % 8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return (n == 1) ? result : 0;
}

// ---------------------------------------------------------------------------
// Quadratic fields
// ---------------------------------------------------------------------------
QuadraticField::QuadraticField(long long d_) : d(d_) {
    if (d == 0 || d == 1) throw std::invalid_argument("QuadraticField: d must not be 0 or 1");
    long long ad = d < 0 ? -d : d;
    for (long long f = 2; f * f <= ad; ++f)
        if (ad % (f * f) == 0)
            throw std::invalid_argument("QuadraticField: d must be squarefree");
}

long long QuadraticField::discriminant() const {
    long long r = ((d % 4) + 4) % 4;
    return (r == 1) ? d : 4 * d;
}

QuadClass classify_quadratic(std::uint64_t p, const QuadraticField& F) {
    long long D = F.discriminant();
    int k = kronecker_symbol(D, static_cast<long long>(p));
    if (k == 1) return QuadClass::split;
    if (k == -1) return QuadClass::inert;
    return QuadClass::ramified;
}

// ---------------------------------------------------------------------------
// S3: splitting of x^3 - 2
// ---------------------------------------------------------------------------
namespace {

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) result = static_cast<std::uint64_t>((__uint128_t)result * base % mod);
        base = static_cast<std::uint64_t>((__uint128_t)base * base % mod);
        exp >>= 1;
    }
    return result;
}

} // namespace

S3Class classify_s3(std::uint64_t p) {
    if (p == 2 || p == 3) return S3Class::ramified;
    if (p % 3 == 2) {
        // cubing is a bijection mod p: exactly one root, quadratic remainder
        return S3Class::transposition;
    }
    bool cube;
    if (p < 10000) {
        std::uint64_t roots = 0;
        for (std::uint64_t r = 0; r < p; ++r)
            if (r * r % p * r % p == 2 % p) ++roots;
        cube = roots > 0;
    } else {
        cube = powmod_u64(2, (p - 1) / 3, p) == 1;
    }
    return cube ? S3Class::identity : S3Class::three_cycle;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------
namespace {

GroupModel c2_group() {
    GroupModel g;
    g.order = 2;
    g.class_ids = {"split", "inert"};
    g.class_sizes = {1, 1};
    g.element_class = {0, 1};
    g.mult = {{0, 1}, {1, 0}};
    g.identity = 0;
    return g;
}

GroupModel s3_group() {
    // elements as permutations of {0,1,2}, identity first
    const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    auto compose = [&](int a, int b) { // (a after b)
        int out[3];
        for (int i = 0; i < 3; ++i) out[i] = perms[a][perms[b][i]];
        for (int k = 0; k < 6; ++k)
            if (perms[k][0] == out[0] && perms[k][1] == out[1] && perms[k][2] == out[2]) return k;
        throw std::logic_error("s3 composition");
    };
    GroupModel g;
    g.order = 6;
    g.class_ids = {"identity", "transposition", "three_cycle"};
    g.class_sizes = {1, 3, 2};
    g.element_class = {0, 1, 1, 1, 2, 2};
    g.mult.assign(6, std::vector<std::uint32_t>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) g.mult[a][b] = static_cast<std::uint32_t>(compose(a, b));
    g.identity = 0;
    return g;
}

GroupModel unit_group_model(std::uint64_t q) {
    std::vector<std::uint64_t> elements;
    for (std::uint64_t a = 0; a < q; ++a)
        if (std::gcd(a, q) == 1) elements.push_back(a);
    std::map<std::uint64_t, std::uint32_t> pos;
    for (std::uint32_t i = 0; i < elements.size(); ++i) pos[elements[i]] = i;

    GroupModel g;
    g.order = elements.size();
    g.mult.assign(g.order, std::vector<std::uint32_t>(g.order));
    for (std::uint32_t i = 0; i < g.order; ++i)
        for (std::uint32_t j = 0; j < g.order; ++j)
            g.mult[i][j] = pos[elements[i] * elements[j] % q];
    g.element_class.resize(g.order);
    for (std::uint32_t i = 0; i < g.order; ++i) {
        g.element_class[i] = i; // abelian: singleton classes
        g.class_ids.push_back(std::to_string(elements[i]));
        g.class_sizes.push_back(1);
    }
    g.identity = pos[1 % q];
    return g;
}

bool is_prime_small(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

ExtensionCatalogEntry make_quadratic_entry(long long d, const std::string& id) {
    QuadraticField F(d);
    long long D = F.discriminant();
    ExtensionCatalogEntry e;
    e.id = id;
    e.description = "quadratic field Q(sqrt(" + std::to_string(d) + ")), discriminant " +
                    std::to_string(D);
    e.group = c2_group();
    std::uint64_t ad = static_cast<std::uint64_t>(D < 0 ? -D : D);
    for (std::uint64_t p = 2; p <= ad; ++p)
        if (is_prime_small(p) && ad % p == 0) e.ramified.push_back(p);
    AbelianReduction red;
    red.q = ad;
    std::vector<std::uint64_t> split_res, inert_res;
    for (std::uint64_t a = 0; a < red.q; ++a) {
        if (std::gcd(a, red.q) != 1) continue;
        int k = kronecker_symbol(D, static_cast<long long>(a));
        if (k == 1)
            split_res.push_back(a);
        else if (k == -1)
            inert_res.push_back(a);
    }
    red.class_residues = {{"split", split_res}, {"inert", inert_res}};
    e.abelian_reduction = red;
    e.classify = [F](std::uint64_t p) {
        QuadClass c = classify_quadratic(p, F);
        if (c == QuadClass::ramified)
            throw std::invalid_argument("classify: ramified prime");
        return c == QuadClass::split ? std::string("split") : std::string("inert");
    };
    return e;
}

ExtensionCatalogEntry make_cyclotomic_entry(std::uint64_t q) {
    ExtensionCatalogEntry e;
    e.id = "cyclo_" + std::to_string(q);
    e.description = "cyclotomic field Q(zeta_" + std::to_string(q) + ")";
    e.group = unit_group_model(q);
    for (std::uint64_t p = 2; p <= q; ++p)
        if (is_prime_small(p) && q % p == 0) e.ramified.push_back(p);
    AbelianReduction red;
    red.q = q;
    for (std::uint64_t a = 0; a < q; ++a)
        if (std::gcd(a, q) == 1) red.class_residues.push_back({std::to_string(a), {a}});
    e.abelian_reduction = red;
    e.classify = [q](std::uint64_t p) { return std::to_string(p % q); };
    return e;
}

ExtensionCatalogEntry make_s3_entry() {
    ExtensionCatalogEntry e;
    e.id = "s3_x3m2";
    e.description = "splitting field of x^3 - 2, Galois group S3";
    e.group = s3_group();
    e.ramified = {2, 3};
    e.classify = [](std::uint64_t p) {
        switch (classify_s3(p)) {
            case S3Class::identity: return std::string("identity");
            case S3Class::transposition: return std::string("transposition");
            case S3Class::three_cycle: return std::string("three_cycle");
            default: throw std::invalid_argument("classify: ramified prime");
        }
    };
    return e;
}

} // namespace

const std::vector<ExtensionCatalogEntry>& extension_catalog() {
    static const std::vector<ExtensionCatalogEntry> catalog = [] {
        std::vector<ExtensionCatalogEntry> out;
        out.push_back(make_quadratic_entry(-1, "gauss_i"));
        for (long long d : {2LL, -2LL, 3LL, -3LL, 5LL, -5LL, -7LL})
            out.push_back(make_quadratic_entry(d, "quad_" + std::string(d < 0 ? "m" : "") +
                                                      std::to_string(d < 0 ? -d : d)));
        for (std::uint64_t q = 3; q <= 60; ++q) out.push_back(make_cyclotomic_entry(q));
        out.push_back(make_s3_entry());
        return out;
    }();
    return catalog;
}

const ExtensionCatalogEntry& extension_by_id(const std::string& id) {
    for (const auto& e : extension_catalog())
        if (e.id == id) return e;
    throw std::invalid_argument("unknown extension id: " + id);
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------
namespace {

std::vector<std::uint32_t> resolve_classes(const ExtensionCatalogEntry& ext,
                                           const std::vector<std::string>& class_ids) {
    std::vector<std::uint32_t> out;
    for (const auto& id : class_ids) {
        std::uint32_t c = ext.group.class_index(id);
        if (std::find(out.begin(), out.end(), c) != out.end())
            throw std::invalid_argument("duplicate conjugacy class id: " + id);
        out.push_back(c);
    }
    return out;
}

} // namespace

std::uint64_t pi_chebotarev(const PrimeTable& table, const ExtensionCatalogEntry& ext,
                            const std::vector<std::string>& class_ids, double x) {
    if (x > static_cast<double>(table.x_max))
        throw std::out_of_range("pi_chebotarev: x exceeds table bound");
    auto targets = resolve_classes(ext, class_ids);
    std::uint64_t count = 0;
    for (std::uint64_t p : table.primes) {
        if (static_cast<double>(p) > x) break;
        if (ext.is_ramified(p)) continue;
        std::uint32_t c = ext.group.class_index(ext.classify(p));
        if (std::find(targets.begin(), targets.end(), c) != targets.end()) ++count;
    }
    return count;
}

Rat64 r_chebotarev_exact(const PrimeTable& table, const ExtensionCatalogEntry& ext,
                         const std::vector<std::string>& class_ids, double x) {
    if (x > static_cast<double>(table.x_max))
        throw std::out_of_range("r_chebotarev: x exceeds table bound");
    auto targets = resolve_classes(ext, class_ids);
    Rat64 sum(0);
    for (const PrimePower& pp : table.prime_powers) {
        if (static_cast<double>(pp.value) > x) break;
        if (pp.k < 2) continue;
        std::uint64_t p = kth_root_floor(pp.value, pp.k);
        if (ext.is_ramified(p)) continue;
        std::uint32_t base = ext.group.class_index(ext.classify(p));
        std::uint32_t powered = ext.group.power_class(base, pp.k);
        if (std::find(targets.begin(), targets.end(), powered) != targets.end())
            sum = sum + Rat64(1, pp.k);
    }
    return sum;
}

double r_chebotarev(const PrimeTable& table, const ExtensionCatalogEntry& ext,
                    const std::vector<std::string>& class_ids, double x) {
    return r_chebotarev_exact(table, ext, class_ids, x).value();
}

Rat64 kappa_chebotarev(const ExtensionCatalogEntry& ext,
                       const std::vector<std::string>& class_ids) {
    auto targets = resolve_classes(ext, class_ids);
    const GroupModel& g = ext.group;
    long long total = 0;
    for (std::uint32_t cls : targets) {
        long long roots = 0;
        for (std::uint32_t b = 0; b < g.order; ++b)
            if (g.element_class[g.mult[b][b]] == cls) ++roots;
        total += static_cast<long long>(g.class_sizes[cls]) * roots;
    }
    return Rat64(total, static_cast<long long>(g.order));
}

std::uint64_t dedekind_pi(const PrimeTable& table, const QuadraticField& F, double x) {
    if (x > static_cast<double>(table.x_max))
        throw std::out_of_range("dedekind_pi: x exceeds table bound");
    std::uint64_t count = 0;
    for (std::uint64_t p : table.primes) {
        double pd = static_cast<double>(p);
        if (pd > x) break;
        switch (classify_quadratic(p, F)) {
            case QuadClass::split: count += 2; break;
            case QuadClass::ramified: count += 1; break;
            case QuadClass::inert:
                if (pd * pd <= x) count += 1;
                break;
        }
    }
    return count;
}

double dedekind_r(const PrimeTable& table, const QuadraticField& F, double x) {
    if (x > static_cast<double>(table.x_max))
        throw std::out_of_range("dedekind_r: x exceeds table bound");
    double sum = 0.0;
    for (std::uint64_t p : table.primes) {
        double pd = static_cast<double>(p);
        if (pd * pd > x) break; // powers with m >= 2 need norm^2 <= x
        QuadClass c = classify_quadratic(p, F);
        double norm = (c == QuadClass::inert) ? pd * pd : pd;
        double weight = (c == QuadClass::split) ? 2.0 : 1.0;
        double nm = norm * norm;
        for (std::uint64_t m = 2; nm <= x; ++m) {
            sum += weight / static_cast<double>(m);
            nm *= norm;
        }
    }
    return sum;
}

std::vector<std::uint64_t> dedekind_norms(const PrimeTable& table, const QuadraticField& F) {
    std::vector<std::uint64_t> norms;
    std::uint64_t root = isqrt_u64(table.x_max);
    for (std::uint64_t p : table.primes) {
        switch (classify_quadratic(p, F)) {
            case QuadClass::split:
                norms.push_back(p);
                norms.push_back(p);
                break;
            case QuadClass::ramified: norms.push_back(p); break;
            case QuadClass::inert:
                if (p <= root && p * p <= table.x_max) norms.push_back(p * p);
                break;
        }
    }
    std::sort(norms.begin(), norms.end());
    return norms;
}

} // namespace cheb
