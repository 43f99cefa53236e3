#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cubicl/constants.hpp"
#include "cubicl/mollifier.hpp"

using namespace cubicl;

TEST_CASE("desk schedule shape") {
    IntervalSchedule s = desk_schedule(2);
    CHECK(s.J == 2);
    CHECK(s.theta[2] == doctest::Approx(0.5));
    CHECK(s.theta[1] == doctest::Approx(0.5 / std::exp(1.0)));
    for (int j = 0; j + 1 <= s.J; ++j) CHECK(s.theta[j] < s.theta[j + 1]);
    for (double l : s.ell) {
        CHECK(l >= 2);
        CHECK(std::fmod(l, 2.0) == 0.0);
    }
    // at g=2 only the top interval holds any prime degrees
    CHECK(s.interval_degrees(0).first > s.interval_degrees(0).second);
    CHECK(s.interval_degrees(1).first > s.interval_degrees(1).second);
    CHECK(s.interval_degrees(2).first == 1);
    CHECK(s.interval_degrees(2).second == 2);
    CHECK_THROWS(desk_schedule(2, 2, 0.5, 1.5));  // b outside (0,1)
}

TEST_CASE("paper schedule at desk genus: tiny theta_0, astronomical ell_0") {
    IntervalSchedule s = paper_schedule(4);
    CHECK(s.J > 300);                 // 1000 log log g dominates
    CHECK(s.theta[0] < 1e-100);       // 1/(log g)^1000
    CHECK(s.ell[0] > 1e100);
    CHECK(s.theta[s.J] < 1.0);
    // all but the top few intervals hold no prime degrees
    for (int j = 0; j <= s.J - 3; ++j) {
        auto [lo, hi] = s.interval_degrees(j);
        CHECK(lo > hi);
    }
}

TEST_CASE("weight a: boundary zero, monotone toward 1") {
    IntervalSchedule s = desk_schedule(2);
    // cap of the top interval is (g+2) theta_J = 2
    CHECK(weight_a(s, 5, 2, 2) == doctest::Approx(0.0));
    double prev = weight_a(s, 5, 1, 2);
    CHECK(prev > 0);
    CHECK(prev < 1);
    CHECK_THROWS(weight_a(s, 5, 3, 2));
    // against the closed form e^{-x}(1-x)
    CHECK(weight_a(s, 5, 1, 2) == doctest::Approx(std::exp(-0.5) * 0.5));
}

TEST_CASE("weight b: bounded by 1/2, boundary zero") {
    IntervalSchedule s = desk_schedule(6, 2, 0.5);  // cap 4, half-cap 2
    CHECK(weight_b(s, 5, 2, 2) == doctest::Approx(0.0));
    CHECK(weight_b(s, 5, 1, 2) <= 0.5);
    CHECK(weight_b(s, 5, 1, 2) > 0.0);
    CHECK_THROWS(weight_b(s, 5, 3, 2));
}

TEST_CASE("truncated exponential") {
    CHECK(e_trunc(2, 0.0) == doctest::Approx(1.0));
    CHECK(e_trunc(2, 1.0) == doctest::Approx(2.5));
    CHECK(std::exp(1.0) <= (1.0 + std::exp(-1.0)) * 2.5);
    CHECK_THROWS(e_trunc(3, 1.0));
    // positivity for even ell, including negative arguments
    for (double ell : {2.0, 4.0, 6.0, 8.0}) {
        for (double t = -10.0; t <= 10.0; t += 0.37) CHECK(e_trunc(ell, t) > 0.0);
    }
    // e^t <= (1 + e^{-ell/2}) E_ell(t) for t <= ell/e^2
    for (double ell = 2; ell <= 40; ell += 2) {
        double cap = ell / std::exp(2.0);
        for (double t = -10.0; t <= cap; t += 0.05)
            CHECK(std::exp(t) <= (1.0 + std::exp(-ell / 2.0)) * e_trunc(ell, t) * (1 + 1e-12));
    }
    // large ell falls back to exp
    CHECK(e_trunc(1e18, 3.0) == doctest::Approx(std::exp(3.0)));
}

TEST_CASE("multiplicative power identities vs brute expansion") {
    std::mt19937_64 rng(30);
    auto randc = [&] {
        return std::complex<double>((rng() % 2000) / 1000.0 - 1.0, (rng() % 2000) / 1000.0 - 1.0);
    };
    for (int s = 0; s <= 6; ++s) {
        for (int np = 1; np <= (s <= 3 ? 8 : 5); ++np) {
            std::vector<std::complex<double>> a(np);
            for (auto& v : a) v = randc();
            CHECK(power_identity_residual(a, s) < 1e-10);
        }
    }
}

TEST_CASE("mollifier: two evaluation routes agree on the whole family") {
    FieldCtx F(5);
    FamilyData fam = build_family(F, 2, 2);
    IntervalSchedule s = desk_schedule(2);
    double worst = 0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        auto a = mollifier_eval(fam, static_cast<std::uint32_t>(i), s).value;
        auto b = mollifier_eval_dirichlet(fam, static_cast<std::uint32_t>(i), s);
        worst = std::max(worst, std::abs(a - b));
    }
    CHECK(worst < 1e-10);
    // and with kappa != 1
    IntervalSchedule s2 = desk_schedule(2, 2, 0.5, 0.91, 2.0);
    for (std::size_t i = 0; i < fam.size(); i += 31) {
        auto a = mollifier_eval(fam, static_cast<std::uint32_t>(i), s2).value;
        auto b = mollifier_eval_dirichlet(fam, static_cast<std::uint32_t>(i), s2);
        CHECK(std::abs(a - b) < 1e-10);
    }
}

TEST_CASE("prime sums obey the triangle inequality bound") {
    FieldCtx F(5);
    FamilyData fam = build_family(F, 2, 2);
    IntervalSchedule s = desk_schedule(2);
    for (int j = 0; j <= 2; ++j) {
        double bound = 0;
        auto [lo, hi] = s.interval_degrees(j);
        for (int d = std::max(lo, 1); d <= std::min(hi, fam.primes.max_deg); ++d)
            bound += fam.primes.count(d) * weight_a(s, 5, d, 2) * std::pow(5.0, -0.5 * d);
        for (std::size_t i = 0; i < fam.size(); i += 53)
            CHECK(std::abs(prime_sum(fam, static_cast<std::uint32_t>(i), s, j, 2)) <=
                  bound + 1e-12);
    }
    // a(P; u) decreases from 1 toward the boundary zero as deg P grows
    IntervalSchedule wide = desk_schedule(8, 2, 0.5);  // cap (g+2) theta_J = 5
    double prev = 1.0;
    for (int d = 1; d <= 5; ++d) {
        double a = weight_a(wide, 5, d, 2);
        CHECK(a < prev);
        CHECK(a >= 0.0);
        prev = a;
    }
}

TEST_CASE("empty schedule gives M = 1") {
    FieldCtx F(5);
    FamilyData fam = build_family(F, 0, 1);
    IntervalSchedule s = empty_schedule(0);
    for (std::size_t i = 0; i < fam.size(); i += 3) {
        CHECK(mollifier_eval(fam, static_cast<std::uint32_t>(i), s).value ==
              std::complex<double>(1.0, 0.0));
        CHECK(mollifier_eval_dirichlet(fam, static_cast<std::uint32_t>(i), s) ==
              std::complex<double>(1.0, 0.0));
    }
}

TEST_CASE("single interval, ell = 2: three-term hand expansion") {
    FieldCtx F(5);
    FamilyData fam = build_family(F, 2, 1);
    IntervalSchedule s = desk_schedule(2, 0, 0.5);  // J = 0, ell_0 = 2
    REQUIRE(s.ell[0] == 2);
    for (std::size_t i = 0; i < 25; ++i) {
        std::complex<double> P = prime_sum(fam, static_cast<std::uint32_t>(i), s, 0, 0);
        std::complex<double> hand = 1.0 - P + P * P / 2.0;
        auto got = mollifier_eval(fam, static_cast<std::uint32_t>(i), s).value;
        CHECK(std::abs(got - hand) < 1e-12);
    }
}

TEST_CASE("d and s factors on empty intervals") {
    FieldCtx F(5);
    FamilyData fam = build_family(F, 0, 1);
    IntervalSchedule s = desk_schedule(0, 2, 0.1);  // every interval empty
    double expected = 1.0;
    for (int r = 0; r <= 2; ++r) expected *= 1.0 + std::exp(-s.ell[r] / 2.0);
    CHECK(d_factor(fam, 0, s, 2, 2.0) == doctest::Approx(expected));
    CHECK(s_factor(fam, 0, s, 2, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("s factor is conjugation invariant") {
    FieldCtx F(5);
    FamilyData fam = build_family(F, 4, 2);
    IntervalSchedule s = desk_schedule(4);
    for (std::size_t i = 0; i < fam.size(); i += 97) {
        double a = s_factor(fam, static_cast<std::uint32_t>(i), s, 2, 2.0);
        double b = s_factor(fam, fam.conj_index[i], s, 2, 2.0);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
        CHECK(a > 0.0);
    }
}

TEST_CASE("|M_j|^{k kappa} expansion and kappa-independent prime term") {
    FieldCtx F(5);
    FamilyData fam = build_family(F, 2, 2);
    const std::uint32_t q = 5;
    for (std::uint32_t ci : {0u, 17u, 123u}) {
        // k kappa = 2 and 4 with the same k: the linear term must agree
        IntervalSchedule s1 = desk_schedule(2, 2, 0.5, 0.91, 1.0);
        IntervalSchedule s2 = desk_schedule(2, 2, 0.5, 0.91, 2.0);
        auto e1 = mj_power_expansion(fam, ci, s1, 2, 2.0);
        auto e2 = mj_power_expansion(fam, ci, s2, 2, 2.0);
        CHECK(e1.value == doctest::Approx(e1.direct).epsilon(1e-8));
        CHECK(e2.value == doctest::Approx(e2.direct).epsilon(1e-8));
        CHECK(std::abs(e1.prime_term - e2.prime_term) < 1e-10);
        // and equals -(k/2) a(P;J)(chi + conj chi)/sqrt|P| summed over primes
        std::complex<double> expect = 0;
        for (int d = 1; d <= 2; ++d)
            for (std::uint32_t pi = fam.primes.deg_begin[d]; pi < fam.primes.deg_begin[d + 1];
                 ++pi) {
                SymExp v = fam.chars[ci].prime_value(pi);
                if (v == SYM_ZERO) continue;
                std::complex<double> cv = omega_pow(v).to_complex();
                expect += -1.0 * weight_a(s1, q, d, 2) * (cv + std::conj(cv)) /
                          std::pow(5.0, 0.5 * d);
            }
        CHECK(std::abs(e1.prime_term - expect) < 1e-10);
    }
}

TEST_CASE("case classification and numeric bound") {
    FieldCtx F(5);
    FamilyData fam = build_family(F, 2, 2);
    IntervalSchedule s = desk_schedule(2);
    std::vector<int> sv{2, 2, 2};
    CHECK_THROWS(prop_cases_check(fam, 0, s, 2.0, std::vector<int>{2, 2, 3}));
    int cases[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < fam.size(); ++i) {
        auto r = prop_cases_check(fam, static_cast<std::uint32_t>(i), s, 2.0, sv);
        cases[r.case_id]++;
        CHECK(r.bound_holds);
    }
    MESSAGE("cases: outside=", cases[1], " all-in=", cases[2], " exit=", cases[3]);
    CHECK(cases[1] + cases[2] + cases[3] == static_cast<int>(fam.size()));

    // all-empty schedule: every character lands in case 2 with the bare bound
    // exp(k(1/theta_J + eta)) prod (1 + e^{-ell_r/2})
    IntervalSchedule s0 = desk_schedule(2, 2, 0.1);
    auto r = prop_cases_check(fam, 0, s0, 2.0, sv);
    CHECK(r.case_id == 2);
    double bare = std::exp(2.0 * (1.0 / s0.theta[2] + eta_const()));
    for (int j = 0; j <= 2; ++j) bare *= 1.0 + std::exp(-s0.ell[j] / 2.0);
    CHECK(r.rhs == doctest::Approx(bare).epsilon(1e-9));
}

TEST_CASE("schedule condition value") {
    IntervalSchedule s = desk_schedule(2);
    std::vector<int> sv{2, 2, 2};
    double v = schedule_condition(s, sv);
    double expect = 0;
    for (int j = 0; j <= 2; ++j) expect += 2.0 * s.theta[j] * 2 + 3.0 * s.theta[j] * s.ell[j];
    CHECK(v == doctest::Approx(expect));
    MESSAGE("condition value ", v, " (hypothesis needs <= 0.5)");
}
