// Small shared utilities: exact rationals, compensated/pairwise summation,
// integer roots, adaptive quadrature, a thread chunker, varint coding.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace cheb {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Exact rational on int64. Enough headroom for the class/group weights and
// prime-power remainder sums that appear here (denominators are lcm(2..26)
// or |G| at worst).
// ---------------------------------------------------------------------------
struct Rat64 {
    long long num = 0;
    long long den = 1;

    Rat64() = default;
    Rat64(long long n) : num(n), den(1) {}
    Rat64(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rat64: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rat64 operator+(Rat64 a, Rat64 b) { return Rat64(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat64 operator-(Rat64 a, Rat64 b) { return Rat64(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat64 operator*(Rat64 a, Rat64 b) { return Rat64(a.num * b.num, a.den * b.den); }
    friend bool operator==(Rat64 a, Rat64 b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rat64 a, Rat64 b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Summation helpers
// ---------------------------------------------------------------------------

// Pairwise (cascade) summation of term(i) for i in [lo, hi).
// Rounding error grows like log(n) instead of n.
template <typename F>
double pairwise_sum(std::size_t lo, std::size_t hi, F&& term) {
    if (hi <= lo) return 0.0;
    std::size_t n = hi - lo;
    if (n <= 64) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        return s;
    }
    std::size_t mid = lo + n / 2;
    return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

template <typename F>
cplx pairwise_sum_cplx(std::size_t lo, std::size_t hi, F&& term) {
    if (hi <= lo) return {0.0, 0.0};
    std::size_t n = hi - lo;
    if (n <= 64) {
        cplx s{0.0, 0.0};
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        return s;
    }
    std::size_t mid = lo + n / 2;
    return pairwise_sum_cplx(lo, mid, term) + pairwise_sum_cplx(mid, hi, term);
}

// Kahan compensated accumulator, for long running sums built incrementally.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

// ---------------------------------------------------------------------------
// Integer roots, exact by adjustment after a floating-point seed.
// ---------------------------------------------------------------------------
inline std::uint64_t isqrt_u64(std::uint64_t n) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// floor(n^(1/k)); k >= 1. Overflow-safe comparison via repeated multiply.
inline std::uint64_t kth_root_floor(std::uint64_t n, unsigned k) {
    if (k == 0) throw std::invalid_argument("kth_root_floor: k = 0");
    if (k == 1) return n;
    if (k == 2) return isqrt_u64(n);
    auto pow_le = [&](std::uint64_t b, std::uint64_t limit) {
        // true iff b^k <= limit
        std::uint64_t acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (b != 0 && acc > limit / b) return false;
            acc *= b;
        }
        return acc <= limit;
    };
    std::uint64_t r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 0 && !pow_le(r, n)) --r;
    while (pow_le(r + 1, n)) ++r;
    return r;
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature with absolute-error target.
// ---------------------------------------------------------------------------
namespace detail {
template <typename F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

template <typename F>
double adaptive_simpson(F f, double a, double b, double tol, int max_depth = 48) {
    if (b <= a) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// ---------------------------------------------------------------------------
// Chunked thread runner: fn(begin, end) over disjoint index windows.
// Results must be merged by the caller in window order if order matters.
// ---------------------------------------------------------------------------
template <typename F>
void parallel_chunks(std::uint64_t n, F fn, unsigned max_threads = 0) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (max_threads != 0 && max_threads < hw) hw = max_threads;
    if (hw <= 1 || n < 2) {
        fn(0, n, 0);
        return;
    }
    std::uint64_t chunk = (n + hw - 1) / hw;
    std::vector<std::thread> pool;
    unsigned idx = 0;
    for (std::uint64_t lo = 0; lo < n; lo += chunk, ++idx) {
        std::uint64_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&fn, lo, hi, idx] { fn(lo, hi, idx); });
    }
    for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------
// LEB128 varint coding (prime cache file format).
// ---------------------------------------------------------------------------
inline void varint_append(std::string& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

// Returns false on truncated input.
inline bool varint_read(const std::string& in, std::size_t& pos, std::uint64_t& v) {
    v = 0;
    int shift = 0;
    while (pos < in.size()) {
        std::uint8_t byte = static_cast<std::uint8_t>(in[pos++]);
        v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
        if (!(byte & 0x80)) return true;
        shift += 7;
        if (shift > 63) return false;
    }
    return false;
}

// FNV-1a, used to key cache files by their generating parameters.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Typed error conditions surfaced through the CLI exit codes.
// ---------------------------------------------------------------------------

// Analytic data (zero sets) failed certification and the caller did not
// explicitly opt in to using it.
struct uncertified_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A set with no L-function structure (procedural membership, P_odd) was fed
// into explicit-formula assembly.
struct procedural_set_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An identity that holds exactly by construction failed; always a bug.
struct identity_violation : std::logic_error {
    using std::logic_error::logic_error;
};

// Text-format parse failure with the byte offset of the offending token.
struct parse_error : std::invalid_argument {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::invalid_argument(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

} // namespace cheb
