#include "doctest.h"

#include <cmath>
#include <random>

#include "cheb/characters.hpp"
#include "cheb/primesets.hpp"
#include "test_util.hpp"

using namespace cheb;

TEST_CASE("P_odd counting") {
    const PrimeTable& t = chebtest::table_1e5();
    auto podd = PrimeSetSpec::podd();
    CHECK(count(podd, t, 23) == 5); // 2, 5, 11, 17, 23
    CHECK(count(podd, t, 2) == 1);
    CHECK(count(podd, t, 4) == 1);
    CHECK(count(podd, t, 5) == 2);
    CHECK(*podd.density() == Rat64(1, 2));
}

TEST_CASE("residue union counting with exceptions") {
    const PrimeTable& t = chebtest::table_1e5();
    auto mod4_3 = PrimeSetSpec::residue(4, {3});
    CHECK(count(mod4_3, t, 100) == 13);

    auto with_two = PrimeSetSpec::residue(4, {1}, {2});
    CHECK(count(with_two, t, 10) == 2); // {2, 5}
    CHECK(count(with_two, t, 1.5) == 0);

    auto removed = PrimeSetSpec::residue(4, {1}, {}, {5});
    CHECK(count(removed, t, 20) == 2); // 13, 17

    CHECK(*mod4_3.density() == Rat64(1, 2));
    CHECK(*PrimeSetSpec::residue(12, {1, 5, 11}).density() == Rat64(3, 4));
}

TEST_CASE("residue spec validation") {
    CHECK_THROWS_AS(PrimeSetSpec::residue(4, {2}), std::invalid_argument);      // not coprime
    CHECK_THROWS_AS(PrimeSetSpec::residue(4, {1, 5}), std::invalid_argument);   // duplicate
    CHECK_THROWS_AS(PrimeSetSpec::residue(4, {1}, {5}), std::invalid_argument); // 5 in union
    CHECK_THROWS_AS(PrimeSetSpec::residue(4, {1}, {}, {2}), std::invalid_argument); // 2 outside
    CHECK_THROWS_AS(PrimeSetSpec::residue(4, {1}, {2}, {2}), std::invalid_argument); // overlap
    // non-prime exceptions caught at counting time
    const PrimeTable& t = chebtest::table_1e5();
    auto bad = PrimeSetSpec::residue(4, {1}, {6});
    CHECK_THROWS_AS(count(bad, t, 100), std::invalid_argument);
}

TEST_CASE("frobenius union counting matches residue reduction") {
    const PrimeTable& t = chebtest::table_1e5();
    auto split = PrimeSetSpec::frobenius("gauss_i", {"split"});
    auto mod4_1 = PrimeSetSpec::residue(4, {1});
    for (double x : {10.0, 100.0, 99999.0})
        CHECK(count(split, t, x) == count(mod4_1, t, x));
    CHECK(*split.density() == Rat64(1, 2));

    auto s3_trans = PrimeSetSpec::frobenius("s3_x3m2", {"transposition"});
    CHECK(*s3_trans.density() == Rat64(1, 2));
    CHECK(count(s3_trans, t, 5) == 1); // p=5 is a transposition
}

TEST_CASE("weighted counting F(x)") {
    const PrimeTable& t = chebtest::table_1e5();
    auto w = PrimeSetSpec::weighted("cyclo_4", {{"1", cplx{0.5, 0.0}}, {"3", cplx{-0.5, 0.0}}});
    // F(x) = (pi(x;4,1) - pi(x;4,3)) / 2
    cplx f100 = count_weighted(w, t, 100);
    CHECK(f100.real() == doctest::Approx((11.0 - 13.0) / 2).epsilon(1e-15));
    CHECK(f100.imag() == 0.0);
    CHECK(std::abs(w.weighted_mean()) < 1e-15);
    CHECK_THROWS_AS(count(w, t, 100), std::invalid_argument);

    auto lam = PrimeSetSpec::weighted("s3_x3m2", {{"identity", cplx{1.0, 0.0}}});
    CHECK(lam.weighted_mean().real() == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK_THROWS_AS(PrimeSetSpec::weighted("s3_x3m2", {{"identity", cplx{0.0, 0.0}}}),
                    std::invalid_argument);
}

TEST_CASE("unify_moduli") {
    // {1 mod 4} u {5 mod 6} = {1, 5, 11 mod 12}
    auto u = unify_moduli({{1, 4}, {5, 6}});
    CHECK(u.q == 12);
    CHECK(u.classes == std::vector<std::uint64_t>{1, 5, 11});
    CHECK(u.added.empty());

    // {1 mod 4} alone at target modulus 12: residue 9 shares a factor with 12
    // and carries no primes
    auto e = unify_moduli({{1, 4}}, 12);
    CHECK(e.q == 12);
    CHECK(e.classes == std::vector<std::uint64_t>{1, 5});
    CHECK(e.added.empty());

    // identity when moduli already agree
    auto i = unify_moduli({{3, 4}});
    CHECK(i.q == 4);
    CHECK(i.classes == std::vector<std::uint64_t>{3});

    // a lost prime is preserved as an exception: {2 mod 3} to modulus 12
    auto lost = unify_moduli({{2, 3}}, 12);
    CHECK(lost.classes == std::vector<std::uint64_t>{5, 11});
    CHECK(lost.added == std::vector<std::uint64_t>{2});

    // duplicates collapse silently
    auto dup = unify_moduli({{1, 4}, {1, 4}, {5, 12}});
    CHECK(dup.q == 12);
    CHECK(dup.classes == std::vector<std::uint64_t>{1, 5});
}

TEST_CASE("unified set counts the same primes") {
    const PrimeTable& t = chebtest::table_1e5();
    auto u = unify_moduli({{1, 4}, {5, 6}});
    auto unified = PrimeSetSpec::residue(u.q, std::vector<long long>(u.classes.begin(), u.classes.end()),
                                         u.added);
    // membership must match the direct union at every prime
    for (std::uint64_t p : t.primes) {
        if (p > 50000) break;
        bool direct = (p % 4 == 1) || (p % 6 == 5);
        CHECK(contains_prime(unified, t, p) == direct);
    }
}

TEST_CASE("symmetric difference counts") {
    const PrimeTable& t = chebtest::table_1e5();
    auto a = PrimeSetSpec::residue(4, {1});
    CHECK(symmetric_difference_count(a, a, t, 100000) == 0);

    auto b = PrimeSetSpec::residue(4, {1}, {2});
    for (double x : {2.0, 100.0, 99999.0})
        CHECK(symmetric_difference_count(a, b, t, x) == 1);

    // P_odd vs {1 mod 4} grows; value at 100 by direct enumeration
    auto podd = PrimeSetSpec::podd();
    std::uint64_t expected = 0;
    std::uint64_t idx = 0;
    for (std::uint64_t p : t.primes) {
        if (p > 100) break;
        bool in_odd = (idx % 2 == 0);
        bool in_res = (p % 4 == 1);
        if (in_odd != in_res) ++expected;
        ++idx;
    }
    CHECK(symmetric_difference_count(podd, a, t, 100) == expected);
    CHECK(expected > 0);
}

TEST_CASE("density estimates") {
    const PrimeTable& t = chebtest::table_1e6();
    auto podd = PrimeSetSpec::podd();
    CHECK(std::abs(density_estimate(podd, t, 1e6) - 0.5) < 0.01);
    auto mod4_3 = PrimeSetSpec::residue(4, {3});
    CHECK(std::abs(density_estimate(mod4_3, t, 1e6) - 0.5) < 0.01);
    auto all = PrimeSetSpec::residue(2, {1}, {2});
    CHECK(density_estimate(all, t, 1e6) == 1.0);
}

TEST_CASE("podd identity check is exact for every x <= 1e5") {
    const PrimeTable& t = chebtest::table_1e5();
    CHECK(podd_identity_check(t, 3) == 0.0);
    CHECK(podd_identity_check(t, 5) == 0.5);
    CHECK(podd_identity_check(t, 2) == 0.5);
    // exhaustive walk: the check throws identity_violation on any mismatch
    for (std::uint64_t x = 2; x <= 100000; x += 1) {
        double d = podd_identity_check(t, static_cast<double>(x));
        REQUIRE((d == 0.0 || d == 0.5));
    }
}

TEST_CASE("P_odd stays within 1/2 of pi/2 everywhere (non-Chebotarev witness)") {
    const PrimeTable& t = chebtest::table_1e6();
    auto sc = materialize(PrimeSetSpec::podd(), t);
    // check at every prime (the only movement points)
    for (std::size_t i = 0; i < t.primes.size(); ++i) {
        double diff = static_cast<double>(sc.count(static_cast<double>(t.primes[i]))) -
                      static_cast<double>(i + 1) / 2.0;
        REQUIRE(std::abs(diff) <= 0.5);
    }
}

TEST_CASE("discrepancy of a proper residue set jumps at nearly every prime") {
    const PrimeTable& t = chebtest::table_1e5();
    auto spec = PrimeSetSpec::residue(4, {3});
    double density = spec.density()->value();
    // count(x) - density * pi(x) jumps at p when p's membership weight
    // (1 or 0) differs from density: for density < 1 that is every prime.
    std::uint64_t jumps = 0;
    for (std::uint64_t p : t.primes) {
        bool member = contains_prime(spec, t, p);
        double jump = (member ? 1.0 : 0.0) - density;
        if (jump != 0.0) ++jumps;
    }
    double lower = (1.0 - density) * static_cast<double>(pi(t, 1e5)) * 0.999;
    CHECK(static_cast<double>(jumps) >= lower);
    CHECK(jumps == t.primes.size()); // for density 1/2 every prime moves
}

TEST_CASE("parser round trips and positions") {
    const char* forms[] = {
        "podd",
        "residue q=12 classes=1,5,11 add= remove=",
        "residue q=4 classes=1 add=2 remove=13",
        "frobenius ext=s3_x3m2 classes=transposition add= remove=",
        "weighted ext=cyclo_4 classes=1:0.5,3:-0.5",
    };
    for (const char* f : forms) {
        auto spec = parse_set_spec(f);
        auto again = parse_set_spec(spec.to_string());
        CHECK(again.to_string() == spec.to_string());
    }

    auto check_pos = [](const char* text, std::size_t expected_pos) {
        try {
            parse_set_spec(text);
            FAIL_CHECK("expected parse_error for: " << text);
        } catch (const parse_error& e) {
            CHECK(e.position == expected_pos);
        }
    };
    check_pos("", 0);
    check_pos("gibberish q=4", 0);
    check_pos("residue q=x classes=1", 10);        // bad q value position
    check_pos("residue q=4 classes=1,zap", 22);    // the bad item itself
    check_pos("residue q=4 classes=1 color=red", 22); // unknown key
    // semantic errors surface as parse errors with a position too
    CHECK_THROWS_AS(parse_set_spec("residue q=4 classes=2"), parse_error);
    CHECK_THROWS_AS(parse_set_spec("frobenius ext=nope classes=split"), parse_error);
    CHECK_THROWS_AS(parse_set_spec("weighted ext=cyclo_4 classes=1:zap"), parse_error);
}

TEST_CASE("randomized residue sets: counts, algebra and density agree with brute force") {
    const PrimeTable& t = chebtest::table_1e5();
    std::mt19937_64 rng(20260808);
    for (int trial = 0; trial < 60; ++trial) {
        std::uint64_t q = 3 + rng() % 28;
        std::vector<long long> classes;
        for (std::uint64_t a = 0; a < q; ++a)
            if (std::gcd(a, q) == 1 && rng() % 2 == 0) classes.push_back(static_cast<long long>(a));
        if (classes.empty()) continue;

        auto base = PrimeSetSpec::residue(q, classes);
        // pick exceptions: one prime outside the union, one inside (if any)
        std::vector<std::uint64_t> added, removed;
        for (std::uint64_t p : t.primes) {
            if (p > 500) break;
            bool in = contains_prime(base, t, p);
            if (!in && added.empty() && rng() % 3 == 0) added.push_back(p);
            if (in && removed.empty() && rng() % 3 == 0) removed.push_back(p);
        }
        auto spec = PrimeSetSpec::residue(q, classes, added, removed);

        double x = 1000.0 + static_cast<double>(rng() % 90000);
        std::uint64_t brute = 0;
        for (std::uint64_t p : t.primes) {
            if (static_cast<double>(p) > x) break;
            bool in_union = std::binary_search(spec.as_residue().classes.begin(),
                                               spec.as_residue().classes.end(), p % q);
            bool in = in_union;
            if (!added.empty() && p == added[0]) in = true;
            if (!removed.empty() && p == removed[0]) in = false;
            if (in) ++brute;
        }
        CAPTURE(q);
        CAPTURE(x);
        REQUIRE(count(spec, t, x) == brute);

        // the materialized counter agrees with the one-shot count
        auto sc = materialize(spec, t);
        REQUIRE(sc.count(x) == brute);

        // exceptions are exactly the symmetric difference against the base set
        REQUIRE(symmetric_difference_count(base, spec, t, 1e5) == added.size() + removed.size());

        // density field matches the definition
        REQUIRE(*spec.density() ==
                Rat64(static_cast<long long>(spec.as_residue().classes.size()),
                      static_cast<long long>(euler_phi(q))));
    }
}

TEST_CASE("procedural sets work for counting but carry no density") {
    const PrimeTable& t = chebtest::table_1e5();
    auto twins = PrimeSetSpec::procedural("lower-twin", [&t](std::uint64_t p) {
        return std::binary_search(t.primes.begin(), t.primes.end(), p + 2);
    });
    CHECK(count(twins, t, 20) == 4); // 3, 5, 11, 17
    CHECK_FALSE(twins.density().has_value());
}
