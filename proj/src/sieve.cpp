#include "cheb/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cheb {

namespace {

// Plain sieve for the base primes up to sqrt(x_max).
std::vector<std::uint64_t> base_sieve(std::uint64_t limit) {
    std::vector<std::uint8_t> is_prime(limit + 1, 1);
    is_prime[0] = 0;
    if (limit >= 1) is_prime[1] = 0;
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (is_prime[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) is_prime[j] = 0;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (is_prime[i]) primes.push_back(i);
    return primes;
}

} // namespace

PrimeTable build_table(std::uint64_t x_max) {
    if (x_max < 2) throw std::invalid_argument("build_table: x_max must be >= 2");

    PrimeTable table;
    table.x_max = x_max;

    std::uint64_t root = isqrt_u64(x_max);
    std::vector<std::uint64_t> base = base_sieve(root);

    std::uint64_t seg_len = std::max<std::uint64_t>(root, 1 << 16);
    std::uint64_t first = root + 1;
    std::uint64_t span = (x_max >= first) ? x_max - first + 1 : 0;
    std::uint64_t n_segments = span ? (span + seg_len - 1) / seg_len : 0;

    // Each window sieves its own segments into a private list; windows are
    // disjoint, so the final concatenation in window order is deterministic.
    std::vector<std::vector<std::uint64_t>> found(std::max<std::uint64_t>(n_segments, 1));
    parallel_chunks(n_segments, [&](std::uint64_t seg_lo, std::uint64_t seg_hi, unsigned) {
        std::vector<std::uint8_t> mark;
        for (std::uint64_t seg = seg_lo; seg < seg_hi; ++seg) {
            std::uint64_t lo = first + seg * seg_len;
            std::uint64_t hi = std::min(x_max, lo + seg_len - 1);
            mark.assign(hi - lo + 1, 1);
            for (std::uint64_t p : base) {
                if (p * p > hi) break;
                std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
                for (std::uint64_t j = start; j <= hi; j += p) mark[j - lo] = 0;
            }
            auto& out = found[seg];
            for (std::uint64_t i = 0; i < mark.size(); ++i)
                if (mark[i]) out.push_back(lo + i);
        }
    });

    std::size_t total = base.size();
    for (auto& v : found) total += v.size();
    table.primes.reserve(total);
    table.primes.insert(table.primes.end(), base.begin(), base.end());
    for (auto& v : found) table.primes.insert(table.primes.end(), v.begin(), v.end());

    // Prime powers: (p, 1) for every prime, plus all higher powers <= x_max.
    std::vector<PrimePower> higher;
    for (std::uint64_t p : table.primes) {
        if (p > root) break;
        std::uint64_t v = p * p;
        std::uint32_t k = 2;
        while (v <= x_max) {
            higher.push_back({v, k});
            if (v > x_max / p) break;
            v *= p;
            ++k;
        }
    }
    std::sort(higher.begin(), higher.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });

    table.prime_powers.reserve(table.primes.size() + higher.size());
    std::size_t ih = 0;
    for (std::uint64_t p : table.primes) {
        while (ih < higher.size() && higher[ih].value < p) table.prime_powers.push_back(higher[ih++]);
        table.prime_powers.push_back({p, 1});
    }
    while (ih < higher.size()) table.prime_powers.push_back(higher[ih++]);

    return table;
}

namespace {

void check_range(const PrimeTable& table, double x, const char* who) {
    if (!(x >= 0.0)) throw std::out_of_range(std::string(who) + ": x must be >= 0");
    if (x > static_cast<double>(table.x_max))
        throw std::out_of_range(std::string(who) + ": x exceeds table bound");
}

// Index of the first prime power with value > x.
std::size_t power_upper_bound(const PrimeTable& table, double x) {
    std::uint64_t xi = (x < 0) ? 0 : static_cast<std::uint64_t>(x);
    return static_cast<std::size_t>(std::upper_bound(table.prime_powers.begin(), table.prime_powers.end(), xi,
                                                     [](std::uint64_t v, const PrimePower& pp) {
                                                         return v < pp.value;
                                                     }) -
                                    table.prime_powers.begin());
}

} // namespace

std::uint64_t pi(const PrimeTable& table, double x) {
    check_range(table, x, "pi");
    if (x < 2.0) return 0;
    std::uint64_t xi = static_cast<std::uint64_t>(x);
    return static_cast<std::uint64_t>(std::upper_bound(table.primes.begin(), table.primes.end(), xi) -
                                      table.primes.begin());
}

double psi(const PrimeTable& table, double x) {
    check_range(table, x, "psi");
    if (x < 2.0) return 0.0;
    std::size_t end = power_upper_bound(table, x);
    const auto& pp = table.prime_powers;
    // Lambda(p^k) = log(p) = log(p^k)/k.
    return pairwise_sum(0, end, [&pp](std::size_t i) {
        return std::log(static_cast<double>(pp[i].value)) / pp[i].k;
    });
}

double li(double x) {
    if (!(x >= 2.0)) throw std::invalid_argument("li: requires x >= 2");
    if (x == 2.0) return 0.0;
    // Integrate in u = log t: Li(x) = int_{log 2}^{log x} e^u / u du.
    // The substituted integrand is smooth and well scaled for the
    // adaptive refinement at large x.
    return adaptive_simpson([](double u) { return std::exp(u) / u; }, std::log(2.0), std::log(x),
                            1e-10);
}

double r_x1(const PrimeTable& table, double x) {
    check_range(table, x, "r_x1");
    if (x < 4.0) return 0.0;
    std::uint64_t xi = static_cast<std::uint64_t>(x);
    double sum = 0.0;
    for (unsigned k = 2;; ++k) {
        std::uint64_t root = kth_root_floor(xi, k);
        if (root < 2) break;
        sum += static_cast<double>(pi(table, static_cast<double>(root))) / k;
    }
    return sum;
}

void write_prime_cache(const std::string& path, const PrimeTable& table) {
    std::string blob;
    blob.reserve(table.primes.size() + 32);
    blob += "CHEBPRIMES1";
    std::uint64_t xm = table.x_max;
    for (int i = 0; i < 8; ++i) blob.push_back(static_cast<char>((xm >> (8 * i)) & 0xff));
    std::uint64_t prev = 0;
    for (std::uint64_t p : table.primes) {
        varint_append(blob, p - prev);
        prev = p;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_prime_cache: cannot open " + path);
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
}

bool read_prime_cache(const std::string& path, std::uint64_t expected_x_max, PrimeTable& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string magic = "CHEBPRIMES1";
    if (blob.size() < magic.size() + 8 || blob.compare(0, magic.size(), magic) != 0) return false;
    std::size_t pos = magic.size();
    std::uint64_t xm = 0;
    for (int i = 0; i < 8; ++i) xm |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(blob[pos++])) << (8 * i);
    if (xm != expected_x_max) return false;

    std::vector<std::uint64_t> primes;
    std::uint64_t prev = 0;
    while (pos < blob.size()) {
        std::uint64_t gap = 0;
        if (!varint_read(blob, pos, gap)) return false;
        prev += gap;
        if (prev > xm || (!primes.empty() && gap == 0)) return false;
        primes.push_back(prev);
    }

    // Rebuilding powers is cheap relative to sieving; the cache stores only
    // the prime list.
    PrimeTable fresh;
    fresh.x_max = xm;
    fresh.primes = std::move(primes);
    std::uint64_t root = isqrt_u64(xm);
    std::vector<PrimePower> higher;
    for (std::uint64_t p : fresh.primes) {
        if (p > root) break;
        std::uint64_t v = p * p;
        std::uint32_t k = 2;
        while (v <= xm) {
            higher.push_back({v, k});
            if (v > xm / p) break;
            v *= p;
            ++k;
        }
    }
    std::sort(higher.begin(), higher.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.value < b.value; });
    fresh.prime_powers.reserve(fresh.primes.size() + higher.size());
    std::size_t ih = 0;
    for (std::uint64_t p : fresh.primes) {
        while (ih < higher.size() && higher[ih].value < p) fresh.prime_powers.push_back(higher[ih++]);
        fresh.prime_powers.push_back({p, 1});
    }
    while (ih < higher.size()) fresh.prime_powers.push_back(higher[ih++]);

    out = std::move(fresh);
    return true;
}

} // namespace cheb
