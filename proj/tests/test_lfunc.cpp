#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "cheb/lfunc.hpp"

using namespace cheb;

namespace {

// Independent coarse oracle: sign changes of the rotated function on a fixed
// 0.005-step grid using only hurwitz_zeta + log_gamma directly (no find_zeros
// machinery), refined by plain bisection.
std::vector<double> coarse_zero_oracle(const DirichletCharacter& chi, double T) {
    auto z = [&](double t) {
        cplx L{0.0, 0.0};
        std::uint64_t q = chi.modulus();
        for (std::uint64_t a = 1; a <= q; ++a) {
            cplx v = chi.eval(static_cast<long long>(a % q));
            if (v == cplx{0.0, 0.0}) continue;
            L += v * hurwitz_zeta(cplx{0.5, t}, double(a) / double(q));
        }
        L *= std::exp(-cplx{0.5, t} * std::log(double(q)));
        double a_par = chi.parity();
        double theta = log_gamma(cplx{(0.5 + a_par) / 2.0, t / 2.0}).imag() +
                       (t / 2.0) * std::log(double(q) / std::numbers::pi);
        return (cplx{std::cos(theta), std::sin(theta)} * L).real();
    };
    std::vector<double> zeros;
    double step = 0.005;
    double prev = z(1e-3);
    for (double t = step; t <= T; t += step) {
        double cur = z(t);
        if ((prev < 0) != (cur < 0)) {
            double lo = t - step, hi = t, flo = prev;
            for (int i = 0; i < 80 && hi - lo > 1e-13; ++i) {
                double mid = 0.5 * (lo + hi), fm = z(mid);
                if ((flo < 0) != (fm < 0))
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    return zeros;
}

} // namespace

TEST_CASE("hurwitz_zeta analytic anchors") {
    double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    cplx z = hurwitz_zeta(cplx{2.0, 0.0}, 1.0);
    CHECK(z.real() == doctest::Approx(pi2_6).epsilon(1e-12));
    CHECK(std::abs(z.imag()) < 1e-14);

    // zeta(2, 1/2) = pi^2/2, with a 10^7-term direct-series oracle
    double direct = 0.0;
    const long N = 10000000;
    for (long n = N - 1; n >= 0; --n) direct += 1.0 / ((n + 0.5) * (n + 0.5));
    // series tail ~ 1/N
    cplx half = hurwitz_zeta(cplx{2.0, 0.0}, 0.5);
    CHECK(half.real() == doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0).epsilon(1e-12));
    CHECK(std::abs(half.real() - direct) < 2e-7);

    CHECK_THROWS_AS(hurwitz_zeta(cplx{1.0, 0.0}, 1.0), std::domain_error);
    CHECK_THROWS_AS(hurwitz_zeta(cplx{2.0, 0.0}, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(hurwitz_zeta(cplx{2.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("hurwitz_zeta vanishes at the first zeta zero") {
    cplx z = hurwitz_zeta(cplx{0.5, 14.134725}, 1.0);
    CHECK(std::abs(z) < 1e-6);
}

TEST_CASE("hurwitz_zeta against direct series at s = 3 + 20i") {
    // Dirichlet series converges absolutely at Re s = 3.
    cplx s{3.0, 20.0};
    cplx direct{0.0, 0.0};
    for (long n = 2000000 - 1; n >= 0; --n)
        direct += std::exp(-s * std::log(n + 0.25));
    cplx em = hurwitz_zeta(s, 0.25);
    CHECK(std::abs(em - direct) < 1e-9);
}

TEST_CASE("l_value anchors") {
    auto g4 = character_group(4);
    // Leibniz: L(1, chi_4) = pi/4
    cplx leib = l_value(g4[1], cplx{1.0, 0.0});
    CHECK(leib.real() == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));
    CHECK(std::abs(leib.imag()) < 1e-13);

    // zeta(2) through the trivial character
    auto triv = character_from_index(1, 0);
    CHECK(l_value(triv, cplx{2.0, 0.0}).real() ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-12));

    // q=3 nonprincipal at s=2 against a direct series oracle
    auto g3 = character_group(3);
    const auto& chi3 = g3[1];
    double direct = 0.0;
    for (long n = 1000000; n >= 1; --n) direct += chi3.eval(n).real() / (double(n) * n);
    cplx val = l_value(chi3, cplx{2.0, 0.0});
    CHECK(std::abs(val.real() - direct) < 1e-9);
    CHECK(std::abs(val.imag()) < 1e-12);

    // imprimitive input refused
    auto g8 = character_group(8);
    for (const auto& chi : g8)
        if (!chi.is_primitive()) CHECK_THROWS_AS(l_value(chi, cplx{2.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(l_value(triv, cplx{1.0, 0.0}), std::domain_error);
}

TEST_CASE("rotated completed function is real and even for real characters") {
    for (auto desc : {std::pair<std::uint64_t, std::uint64_t>{1, 0}, {4, 1}, {3, 1}}) {
        auto chi = character_from_index(desc.first, desc.second);
        for (double t : {0.7, 3.3, 11.25, 40.0}) {
            cplx zp = rotated_l(chi, t);
            cplx zm = rotated_l(chi, -t);
            CHECK(std::abs(zp.imag()) < 1e-9 * std::max(1.0, std::abs(zp)));
            CHECK(std::abs(zp - zm) < 1e-9 * std::max(1.0, std::abs(zp)));
        }
    }
}

TEST_CASE("zero_count_estimate values") {
    double est = zero_count_estimate(4, 10.0);
    CHECK(est == doctest::Approx(2.709).epsilon(1e-3));
    CHECK(zero_count_estimate(1, 0.0) == 0.0);
    CHECK(std::abs(zero_count_estimate(1, 1e-3)) < 0.01);
    // main term vanishes at T = 2*pi*e for q = 1
    double T0 = 2.0 * std::numbers::pi * std::numbers::e;
    CHECK(std::abs(zero_count_estimate(1, T0)) < 1e-9);
}

TEST_CASE("find_zeros: odd character mod 4 to T=10") {
    auto chi = character_from_index(4, 1);
    ZeroSet zs = find_zeros(chi, 10.0);
    REQUIRE(zs.certified);
    REQUIRE(zs.ordinates.size() == 1);
    CHECK(zs.ordinates[0] == doctest::Approx(6.0209).epsilon(1e-3));
    CHECK(zs.residual_bound <= 1e-8);

    // against the independent coarse-grid oracle
    auto oracle = coarse_zero_oracle(chi, 10.0);
    REQUIRE(oracle.size() == 1);
    CHECK(std::abs(zs.ordinates[0] - oracle[0]) < 1e-6);
}

TEST_CASE("find_zeros: zeta to T=14.2 finds only the first zero") {
    auto triv = character_from_index(1, 0);
    ZeroSet zs = find_zeros(triv, 14.2);
    REQUIRE(zs.certified);
    REQUIRE(zs.ordinates.size() == 1);
    CHECK(zs.ordinates[0] == doctest::Approx(14.134725).epsilon(1e-6));
}

TEST_CASE("find_zeros: empty below T=1 for small conductors") {
    for (auto desc : {std::pair<std::uint64_t, std::uint64_t>{1, 0}, {3, 1}, {4, 1}}) {
        auto chi = character_from_index(desc.first, desc.second);
        ZeroSet zs = find_zeros(chi, 1.0);
        CHECK(zs.ordinates.empty());
    }
}

TEST_CASE("find_zeros certification across small conductors, including complex characters") {
    // Representative set: trivial (zeta), odd real (3, 4), the q=5 group
    // (two complex quartic characters and one real), a primitive pair mod 8,
    // and the real primitive character mod 12.
    struct Probe { std::uint64_t q, index; };
    std::vector<Probe> probes = {{1, 0}, {3, 1}, {4, 1}};
    for (const auto& chi : character_group(5))
        if (chi.is_primitive()) probes.push_back({5, chi.index()});
    for (const auto& chi : character_group(8))
        if (chi.is_primitive()) probes.push_back({8, chi.index()});
    for (const auto& chi : character_group(12))
        if (chi.is_primitive()) probes.push_back({12, chi.index()});

    const double T = 40.0;
    for (auto [q, index] : probes) {
        auto chi = character_from_index(q, index);
        CAPTURE(q);
        CAPTURE(index);
        ZeroSet zs = find_zeros(chi, T);
        CHECK(zs.certified);
        CHECK(zs.residual_bound <= 1e-8);
        double found = static_cast<double>(zs.count_both_signs());
        double est = zero_count_estimate(chi.conductor(), T);
        CHECK(std::abs(found - est) <= 3.0 + std::log(T) + std::log(double(q)));
        // ordinates strictly increasing and within the height limit
        for (std::size_t i = 0; i < zs.ordinates.size(); ++i) {
            CHECK(std::abs(zs.ordinates[i]) <= T);
            if (i) CHECK(zs.ordinates[i] > zs.ordinates[i - 1]);
        }
        // unit-interval density: N(t+1) - N(t) <= 2 log(q t) for t >= 2
        auto signed_g = zs.signed_ordinates();
        for (double t = 2.0; t + 1.0 <= T; t += 1.0) {
            int cnt = 0;
            for (double g : signed_g)
                if (g >= t && g < t + 1.0) ++cnt;
            CHECK(cnt <= 2.0 * std::log(double(std::max<std::uint64_t>(q, 2)) * t));
        }
    }
}

TEST_CASE("complex character certifies at full height T=100") {
    const DirichletCharacter* complex_chi = nullptr;
    auto g5 = character_group(5);
    for (const auto& c : g5)
        if (!c.is_real() && c.is_primitive()) { complex_chi = &c; break; }
    REQUIRE(complex_chi != nullptr);
    ZeroSet zs = find_zeros(*complex_chi, 100.0);
    CHECK(zs.certified);
    CHECK(zs.residual_bound <= 1e-8);
    double est = zero_count_estimate(5, 100.0);
    CHECK(std::abs(static_cast<double>(zs.count_both_signs()) - est) <= 3.0 + std::log(100.0));
}

TEST_CASE("complex character zeros: conjugate pair symmetry at q=5") {
    // zeros of L(s, conj(chi)) are the negatives of zeros of L(s, chi)
    auto g5 = character_group(5);
    const DirichletCharacter* chi = nullptr;
    const DirichletCharacter* chibar = nullptr;
    for (const auto& c : g5) {
        if (c.is_real()) continue;
        if (!chi) { chi = &c; continue; }
        // find the conjugate: values are complex conjugates everywhere
        bool conj = true;
        for (long long n = 0; n < 5; ++n)
            if (std::abs(c.eval(n) - std::conj(chi->eval(n))) > 1e-12) { conj = false; break; }
        if (conj) chibar = &c;
    }
    REQUIRE(chi != nullptr);
    REQUIRE(chibar != nullptr);

    ZeroSet za = find_zeros(*chi, 30.0);
    ZeroSet zb = find_zeros(*chibar, 30.0);
    REQUIRE(za.certified);
    REQUIRE(zb.certified);
    REQUIRE(za.ordinates.size() == zb.ordinates.size());
    for (std::size_t i = 0; i < za.ordinates.size(); ++i) {
        double a = za.ordinates[i];
        double b = -zb.ordinates[zb.ordinates.size() - 1 - i];
        CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
}

TEST_CASE("zero file round trip") {
    auto chi = character_from_index(4, 1);
    ZeroSet zs = find_zeros(chi, 25.0);
    REQUIRE(zs.certified);
    auto path = std::filesystem::temp_directory_path() / "chebtest_zeros.txt";
    write_zero_file(path.string(), zs);
    {
        // header and first ordinate are pinned, byte for byte
        std::ifstream in(path);
        std::string header, first;
        std::getline(in, header);
        std::getline(in, first);
        CHECK(header == "# CHEBZEROS1 q=4 index=1 conductor=4 parity=1 T=25.000000 certified=true");
        CHECK(first == "6.020948904698");
    }
    ZeroSet back;
    REQUIRE(read_zero_file(path.string(), back));
    CHECK(back.q == zs.q);
    CHECK(back.index == zs.index);
    CHECK(back.conductor == zs.conductor);
    CHECK(back.parity == zs.parity);
    CHECK(back.certified == zs.certified);
    CHECK(back.height_limit == doctest::Approx(zs.height_limit));
    REQUIRE(back.ordinates.size() == zs.ordinates.size());
    for (std::size_t i = 0; i < back.ordinates.size(); ++i)
        CHECK(back.ordinates[i] == doctest::Approx(zs.ordinates[i]).epsilon(1e-11));
    std::filesystem::remove(path);
}

TEST_CASE("find_zeros input validation") {
    auto chi8 = character_group(8);
    for (const auto& c : chi8)
        if (!c.is_primitive()) CHECK_THROWS_AS(find_zeros(c, 10.0), std::invalid_argument);
    auto triv = character_from_index(1, 0);
    CHECK_THROWS_AS(find_zeros(triv, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(find_zeros(triv, 201.0), std::invalid_argument);
}
