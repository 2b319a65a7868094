#include "cheb/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cheb {

std::vector<double> ZeroSet::signed_ordinates() const {
    if (!real_character) return ordinates;
    std::vector<double> out;
    out.reserve(2 * ordinates.size());
    for (auto it = ordinates.rbegin(); it != ordinates.rend(); ++it) out.push_back(-*it);
    for (double g : ordinates) out.push_back(g);
    return out;
}

// ---------------------------------------------------------------------------
// log Gamma: Stirling with argument shift. Path stays in Re z > 0, so the
// principal branch is continuous in t.
// ---------------------------------------------------------------------------
cplx log_gamma(cplx z) {
    if (z.real() <= 0.0) throw std::invalid_argument("log_gamma: requires Re z > 0");
    cplx shift{0.0, 0.0};
    while (std::abs(z) < 12.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    static const double stirling[] = {
        1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0,
        -691.0 / 360360.0, 1.0 / 156.0,
    }; // B_{2n} / (2n (2n-1))
    cplx res = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi);
    cplx zi = 1.0 / z;
    cplx zpow = zi;
    cplx zi2 = zi * zi;
    for (double c : stirling) {
        res += c * zpow;
        zpow *= zi2;
    }
    return res + shift;
}

// ---------------------------------------------------------------------------
// Hurwitz zeta, Euler-Maclaurin.
// ---------------------------------------------------------------------------
namespace {

// B_{2k} / (2k)! for k = 1..12
const double kBernOverFact[] = {
    (1.0 / 6.0) / 2.0,
    (-1.0 / 30.0) / 24.0,
    (1.0 / 42.0) / 720.0,
    (-1.0 / 30.0) / 40320.0,
    (5.0 / 66.0) / 3628800.0,
    (-691.0 / 2730.0) / 479001600.0,
    (7.0 / 6.0) / 87178291200.0,
    (-3617.0 / 510.0) / 20922789888000.0,
    (43867.0 / 798.0) / 6402373705728000.0,
    (-174611.0 / 330.0) / 2432902008176640000.0,
    (854513.0 / 138.0) / 1.1240007277776077e21,
    (-236364091.0 / 2730.0) / 6.204484017332394e23,
};

} // namespace

cplx hurwitz_zeta(cplx s, double a) {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("hurwitz_zeta: need 0 < a <= 1");
    if (std::abs(s - cplx{1.0, 0.0}) < 1e-12)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");
    if (std::abs(s.imag()) > 500.0)
        throw std::invalid_argument("hurwitz_zeta: |Im s| > 500 unsupported");

    std::size_t n_terms = static_cast<std::size_t>(std::max(30.0, std::ceil(1.3 * std::abs(s.imag()))));

    cplx sum{0.0, 0.0};
    cplx comp{0.0, 0.0}; // Kahan compensation
    for (std::size_t n = 0; n < n_terms; ++n) {
        cplx term = std::exp(-s * std::log(static_cast<double>(n) + a));
        cplx y = term - comp;
        cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    double na = static_cast<double>(n_terms) + a;
    double lna = std::log(na);
    cplx tail = std::exp((1.0 - s) * lna) / (s - 1.0);
    tail += 0.5 * std::exp(-s * lna);

    // Euler-Maclaurin correction: sum_k B_{2k}/(2k)! * (s)_{2k-1} * na^{-s-2k+1}
    cplx poch = s;                                  // (s)_1
    cplx power = std::exp(-(s + 1.0) * lna);        // na^{-s-1}
    double na2 = 1.0 / (na * na);
    for (std::size_t k = 0; k < sizeof(kBernOverFact) / sizeof(double); ++k) {
        tail += kBernOverFact[k] * poch * power;
        poch *= (s + static_cast<double>(2 * k + 1)) * (s + static_cast<double>(2 * k + 2));
        power *= na2;
    }
    return sum + tail;
}

namespace {

double digamma(double x) {
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series, B_{2k}/(2k x^{2k})
    static const double coeff[] = {1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
                                   1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
    double inv2 = 1.0 / (x * x);
    double res = std::log(x) - 0.5 / x;
    double pow = inv2;
    for (double c : coeff) {
        res -= c * pow;
        pow *= inv2;
    }
    return res + acc;
}

} // namespace

cplx l_value(const DirichletCharacter& chi, cplx s) {
    if (!chi.is_primitive())
        throw std::invalid_argument("l_value: character must be primitive (reduce via conductor)");
    std::uint64_t q = chi.modulus();
    bool at_one = std::abs(s - cplx{1.0, 0.0}) < 1e-9;
    if (q == 1 && at_one)
        throw std::domain_error("l_value: zeta has a pole at s = 1");
    if (at_one) {
        // The Hurwitz terms are individually singular at s = 1 but the poles
        // cancel (sum chi(a) = 0): zeta(s,a) = 1/(s-1) - digamma(a) + O(s-1),
        // so L(1,chi) = -(1/q) sum_a chi(a) digamma(a/q).
        cplx sum{0.0, 0.0};
        for (std::uint64_t a = 1; a < q; ++a) {
            cplx v = chi.eval(static_cast<long long>(a));
            if (v == cplx{0.0, 0.0}) continue;
            sum -= v * digamma(static_cast<double>(a) / static_cast<double>(q));
        }
        return sum / static_cast<double>(q);
    }
    cplx sum{0.0, 0.0};
    for (std::uint64_t a = 1; a <= q; ++a) {
        cplx v = chi.eval(static_cast<long long>(a % q));
        if (v == cplx{0.0, 0.0}) continue;
        sum += v * hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q));
    }
    return std::exp(-s * std::log(static_cast<double>(q))) * sum;
}

double completed_phase(const DirichletCharacter& chi, double t) {
    double a = static_cast<double>(chi.parity());
    cplx z{(0.5 + a) / 2.0, t / 2.0};
    double theta = log_gamma(z).imag();
    theta += (t / 2.0) * std::log(static_cast<double>(chi.modulus()) / std::numbers::pi);
    return theta;
}

cplx rotated_l(const DirichletCharacter& chi, double t) {
    double theta = completed_phase(chi, t);
    cplx phase{std::cos(theta), std::sin(theta)};
    return phase * l_value(chi, cplx{0.5, t});
}

double zero_count_estimate(std::uint64_t q, double T) {
    if (T <= 0.0) return 0.0;
    double pi_ = std::numbers::pi;
    return (T / pi_) * std::log(static_cast<double>(q) * T / (2.0 * pi_)) - T / pi_;
}

// ---------------------------------------------------------------------------
// Zero isolation
// ---------------------------------------------------------------------------
namespace {

// Bisection on Re Z over a sign-change bracket, to interval width ~1e-12.
double bisect_zero(const DirichletCharacter& chi, double lo, double hi, double flo) {
    for (int iter = 0; iter < 60 && hi - lo > 1e-12; ++iter) {
        double mid = 0.5 * (lo + hi);
        double fm = rotated_l(chi, mid).real();
        if (fm == 0.0) return mid;
        if ((flo < 0) != (fm < 0))
            hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// Golden-section minimization of |Z|^2 with a final parabolic polish.
double minimize_abs2(const DirichletCharacter& chi, double lo, double hi) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = std::norm(rotated_l(chi, x1));
    double f2 = std::norm(rotated_l(chi, x2));
    while (b - a > 1e-11) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = std::norm(rotated_l(chi, x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = std::norm(rotated_l(chi, x2));
        }
    }
    return 0.5 * (a + b);
}

struct ScanResult {
    std::vector<double> zeros;
    double max_residual = 0.0;
    double max_imag_drift = 0.0; // |Im Z| seen on a real-character scan
};

ScanResult scan_real_character(const DirichletCharacter& chi, double T, double step,
                               unsigned max_threads) {
    std::uint64_t n = static_cast<std::uint64_t>(std::floor(T / step));
    std::vector<double> values(n + 1);
    std::vector<double> drift(std::max(1u, max_threads ? max_threads : std::thread::hardware_concurrency()), 0.0);
    parallel_chunks(n + 1, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
        double local = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            double t = (i == 0) ? 1e-3 : static_cast<double>(i) * step;
            cplx z = rotated_l(chi, t);
            values[i] = z.real();
            local = std::max(local, std::abs(z.imag()));
        }
        if (w < drift.size()) drift[w] = std::max(drift[w], local);
    }, max_threads);

    ScanResult res;
    for (double d : drift) res.max_imag_drift = std::max(res.max_imag_drift, d);
    for (std::uint64_t i = 0; i + 1 <= n; ++i) {
        double t_lo = (i == 0) ? 1e-3 : static_cast<double>(i) * step;
        double t_hi = static_cast<double>(i + 1) * step;
        if (values[i] == 0.0) {
            res.zeros.push_back(t_lo);
            continue;
        }
        if ((values[i] < 0) != (values[i + 1] < 0)) {
            double g = bisect_zero(chi, t_lo, t_hi, values[i]);
            res.zeros.push_back(g);
        }
    }
    for (double g : res.zeros)
        res.max_residual = std::max(res.max_residual, std::abs(l_value(chi, cplx{0.5, g})));
    return res;
}

ScanResult scan_complex_character(const DirichletCharacter& chi, double T, double step,
                                  unsigned max_threads) {
    // Signed scan over [-T, T].
    std::uint64_t n = static_cast<std::uint64_t>(std::floor(2.0 * T / step));
    auto t_at = [&](std::uint64_t i) { return -T + static_cast<double>(i) * step; };
    std::vector<cplx> values(n + 1);
    parallel_chunks(n + 1, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
        for (std::uint64_t i = lo; i < hi; ++i) values[i] = rotated_l(chi, t_at(i));
    }, max_threads);

    ScanResult res;
    for (std::uint64_t i = 1; i + 1 <= n; ++i) {
        double m = std::abs(values[i]);
        if (m <= std::abs(values[i - 1]) && m <= std::abs(values[i + 1])) {
            // Flag only minima with a phase jump: across a simple zero the
            // argument of Z moves by ~pi on top of the slow drift.
            cplx r1 = values[i] / values[i - 1];
            cplx r2 = values[i + 1] / values[i];
            double winding = std::abs(std::arg(r1)) + std::abs(std::arg(r2));
            if (winding < 1.0 && m > 1e-6) continue;
            double g = minimize_abs2(chi, t_at(i - 1), t_at(i + 1));
            double resid = std::abs(l_value(chi, cplx{0.5, g}));
            if (resid <= 1e-8) {
                if (res.zeros.empty() || std::abs(res.zeros.back() - g) > 1e-9) {
                    res.zeros.push_back(g);
                    res.max_residual = std::max(res.max_residual, resid);
                }
            }
        }
    }
    return res;
}

} // namespace

ZeroSet find_zeros(const DirichletCharacter& chi, double T, const ZeroSearchOptions& opt) {
    if (!chi.is_primitive())
        throw std::invalid_argument("find_zeros: character must be primitive");
    if (!(T > 0.0) || T > 200.0)
        throw std::invalid_argument("find_zeros: T must be in (0, 200]");

    ZeroSet zs;
    zs.q = chi.modulus();
    zs.index = chi.index();
    zs.conductor = chi.conductor();
    zs.parity = chi.parity();
    zs.height_limit = T;
    zs.real_character = chi.is_real();

    double step = opt.grid_step;
    for (int attempt = 0; attempt < 2; ++attempt) {
        ScanResult sr = zs.real_character ? scan_real_character(chi, T, step, opt.max_threads)
                                          : scan_complex_character(chi, T, step, opt.max_threads);
        // Keep only |gamma| <= T after refinement.
        std::vector<double> kept;
        for (double g : sr.zeros)
            if (std::abs(g) <= T) kept.push_back(g);
        std::sort(kept.begin(), kept.end());

        zs.ordinates = kept;
        zs.residual_bound = sr.max_residual;

        double found = static_cast<double>(zs.count_both_signs());
        double est = zero_count_estimate(zs.conductor, T);
        double window = 3.0 + std::log(T);
        bool count_ok = std::abs(found - est) <= window;
        bool resid_ok = zs.residual_bound <= 1e-8;

        std::ostringstream diag;
        diag << "step=" << step << " found=" << zs.ordinates.size() << " (both signs " << found
             << ") estimate=" << est << " window=" << window << " residual=" << zs.residual_bound;
        if (zs.real_character) diag << " imag_drift=" << sr.max_imag_drift;
        zs.diagnostics = diag.str();

        if (count_ok && resid_ok) {
            zs.certified = true;
            return zs;
        }
        step *= 0.5; // one retry with a denser grid
    }
    zs.certified = false;
    return zs;
}

void write_zero_file(const std::string& path, const ZeroSet& zs) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("write_zero_file: cannot open " + path);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "# CHEBZEROS1 q=%llu index=%llu conductor=%llu parity=%d T=%.6f certified=%s\n",
                  static_cast<unsigned long long>(zs.q), static_cast<unsigned long long>(zs.index),
                  static_cast<unsigned long long>(zs.conductor), zs.parity, zs.height_limit,
                  zs.certified ? "true" : "false");
    out << buf;
    for (double g : zs.ordinates) {
        std::snprintf(buf, sizeof(buf), "%.12f\n", g);
        out << buf;
    }
}

bool read_zero_file(const std::string& path, ZeroSet& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::string header;
    if (!std::getline(in, header)) return false;
    ZeroSet zs;
    {
        unsigned long long q = 0, index = 0, conductor = 0;
        int parity = 0;
        double T = 0.0;
        char cert[16] = {0};
        int matched = std::sscanf(header.c_str(),
                                  "# CHEBZEROS1 q=%llu index=%llu conductor=%llu parity=%d T=%lf certified=%15s",
                                  &q, &index, &conductor, &parity, &T, cert);
        if (matched != 6) return false;
        zs.q = q;
        zs.index = index;
        zs.conductor = conductor;
        zs.parity = parity;
        zs.height_limit = T;
        zs.certified = std::string(cert) == "true";
    }
    std::string line;
    double prev = -1e300;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double g = std::stod(line);
        if (g <= prev) return false; // must be strictly increasing
        prev = g;
        zs.ordinates.push_back(g);
    }
    // The storage convention (positive-only vs signed) follows the character,
    // not the file contents.
    try {
        zs.real_character = character_from_index(zs.q, zs.index).is_real();
    } catch (const std::exception&) {
        return false;
    }
    out = std::move(zs);
    return true;
}

} // namespace cheb
