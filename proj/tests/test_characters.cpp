#include "doctest.h"

#include <complex>
#include <numeric>

#include "cheb/characters.hpp"

using namespace cheb;

TEST_CASE("character group sizes and principal labeling") {
    CHECK_THROWS_AS(character_group(0), std::invalid_argument);

    auto g1 = character_group(1);
    REQUIRE(g1.size() == 1);
    CHECK(g1[0].is_principal());
    CHECK(g1[0].eval(0) == cplx{1.0, 0.0});
    CHECK(g1[0].eval(7) == cplx{1.0, 0.0});

    auto g4 = character_group(4);
    REQUIRE(g4.size() == 2);
    CHECK(g4[0].is_principal());
    CHECK(g4[1].eval(3).real() == doctest::Approx(-1.0));
    CHECK(g4[1].eval(3).imag() == doctest::Approx(0.0));

    auto g12 = character_group(12);
    REQUIRE(g12.size() == 4);
    for (const auto& chi : g12) CHECK(chi.is_real());
}

TEST_CASE("eval basics") {
    auto g4 = character_group(4);
    const auto& chi = g4[1];
    CHECK(chi.eval(3) == cplx{-1.0, 0.0});
    CHECK(chi.eval(1) == cplx{1.0, 0.0});
    CHECK(chi.eval(-1) == cplx{-1.0, 0.0}); // odd character
    CHECK(g4[0].eval(6) == cplx{0.0, 0.0}); // gcd(6,4) = 2
    CHECK(chi.eval(7) == cplx{-1.0, 0.0});

    // complete multiplicativity on residues coprime to q, exhaustive small q
    for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u, 12u, 15u, 16u, 24u}) {
        for (const auto& c : character_group(q)) {
            for (std::uint64_t m = 1; m < q; ++m) {
                for (std::uint64_t n = 1; n < q; ++n) {
                    cplx lhs = c.eval(static_cast<long long>(m * n));
                    cplx rhs = c.eval(static_cast<long long>(m)) * c.eval(static_cast<long long>(n));
                    CHECK(std::abs(lhs - rhs) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("parity flag matches eval at -1") {
    for (std::uint64_t q = 1; q <= 40; ++q) {
        for (const auto& chi : character_group(q)) {
            cplx v = chi.eval(-1);
            double expected = (chi.parity() == 0) ? 1.0 : -1.0;
            CHECK(v.real() == doctest::Approx(expected).epsilon(1e-12));
            CHECK(std::abs(v.imag()) < 1e-12);
        }
    }
}

TEST_CASE("conductors and inducing characters") {
    auto g4 = character_group(4);
    CHECK(g4[0].conductor() == 1);
    auto [f0, ind0] = g4[0].conductor_and_inducer();
    CHECK(f0 == 1);
    CHECK(ind0.modulus() == 1);

    CHECK(g4[1].conductor() == 4);
    auto [f1, ind1] = g4[1].conductor_and_inducer();
    CHECK(f1 == 4);
    CHECK(ind1 == g4[1]);

    // The character mod 8 agreeing with the mod-4 odd character has conductor 4.
    auto g8 = character_group(8);
    int found = 0;
    for (const auto& chi : g8) {
        bool agrees = true;
        for (long long n : {1, 3, 5, 7}) {
            cplx v4 = g4[1].eval(n);
            cplx v8 = chi.eval(n);
            if (std::abs(v4 - v8) > 1e-12) { agrees = false; break; }
        }
        if (agrees) {
            ++found;
            CHECK(chi.conductor() == 4);
            auto [f, ind] = chi.conductor_and_inducer();
            CHECK(f == 4);
            CHECK(ind == g4[1]);
        }
    }
    CHECK(found == 1);
}

TEST_CASE("inducing character agrees on residues coprime to q") {
    for (std::uint64_t q : {8u, 9u, 12u, 15u, 16u, 21u, 24u, 36u, 40u, 45u, 60u}) {
        for (const auto& chi : character_group(q)) {
            auto [f, chi1] = chi.conductor_and_inducer();
            CHECK(chi1.is_primitive());
            CHECK(chi1.modulus() == f);
            CHECK(q % f == 0);
            for (std::uint64_t n = 0; n < q; ++n) {
                if (std::gcd(n, q) != 1) continue;
                CHECK(std::abs(chi.eval(static_cast<long long>(n)) -
                               chi1.eval(static_cast<long long>(n))) < 1e-12);
            }
        }
    }
}

TEST_CASE("conductor is minimal") {
    // No proper divisor f' < conductor supports a character agreeing on
    // residues coprime to q.
    for (std::uint64_t q : {8u, 12u, 16u, 24u, 36u}) {
        for (const auto& chi : character_group(q)) {
            std::uint64_t f = chi.conductor();
            for (std::uint64_t fp = 1; fp < f; ++fp) {
                if (f % fp != 0 || q % fp != 0) continue;
                bool agrees_somewhere = true;
                for (const auto& psi : character_group(fp)) {
                    agrees_somewhere = true;
                    for (std::uint64_t n = 0; n < q; ++n) {
                        if (std::gcd(n, q) != 1) continue;
                        if (std::abs(chi.eval(static_cast<long long>(n)) -
                                     psi.eval(static_cast<long long>(n))) > 1e-9) {
                            agrees_somewhere = false;
                            break;
                        }
                    }
                    if (agrees_somewhere) break;
                }
                CHECK_FALSE(agrees_somewhere);
            }
        }
    }
}

TEST_CASE("orthogonality exact for all q <= 100") {
    for (std::uint64_t q = 1; q <= 100; ++q) {
        auto group = character_group(q);
        std::uint64_t phi = euler_phi(q);
        REQUIRE(group.size() == phi);
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t j = 0; j < group.size(); ++j) {
                auto s = orthogonality_sum_exact(group[i], group[j]);
                REQUIRE(s.has_value());
                long long expected = (i == j) ? static_cast<long long>(phi) : 0;
                CHECK(*s == expected);
            }
        }
    }
}

TEST_CASE("dual orthogonality (extraction identity backbone) exact for q <= 50") {
    for (std::uint64_t q = 1; q <= 50; ++q) {
        for (std::uint64_t a = 0; a < std::max<std::uint64_t>(q, 1); ++a) {
            if (std::gcd(a, q) != 1) continue;
            for (std::uint64_t n = 0; n < std::max<std::uint64_t>(q, 1); ++n) {
                if (std::gcd(n, q) != 1) continue;
                auto s = dual_orthogonality_sum_exact(q, a, n);
                REQUIRE(s.has_value());
                long long expected = (a % std::max<std::uint64_t>(q, 1) == n % std::max<std::uint64_t>(q, 1))
                                         ? static_cast<long long>(euler_phi(q))
                                         : 0;
                CHECK(*s == expected);
            }
        }
    }
}

TEST_CASE("descriptor round trip") {
    auto chi = character_from_index(12, 3);
    CHECK(chi.descriptor() == "12:3");
    auto back = character_from_descriptor("12:3");
    CHECK(back == chi);
    CHECK_THROWS_AS(character_from_index(12, 4), std::invalid_argument);
}

TEST_CASE("labels are deterministic across construction paths") {
    for (std::uint64_t q : {5u, 8u, 12u, 15u, 40u}) {
        auto group = character_group(q);
        for (std::size_t i = 0; i < group.size(); ++i) {
            CHECK(group[i].index() == i);
            auto solo = character_from_index(q, i);
            for (std::uint64_t n = 0; n < q; ++n)
                CHECK(solo.eval(static_cast<long long>(n)) == group[i].eval(static_cast<long long>(n)));
        }
    }
}
