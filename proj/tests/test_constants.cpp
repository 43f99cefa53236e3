#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cubicl/constants.hpp"
#include "cubicl/family.hpp"

using namespace cubicl;

TEST_CASE("zeta_q closed form vs geometric series oracle") {
    auto oracle = [](std::uint32_t q, double s) {
        double acc = 0;
        for (int d = 0; d < 2000; ++d) acc += std::pow(static_cast<double>(q), d * (1.0 - s));
        return acc;
    };
    CHECK(zeta_q(5, 2.0) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(zeta_q(5, 2.0) == doctest::Approx(oracle(5, 2.0)).epsilon(1e-12));
    CHECK(zeta_q(5, 3.0) == doctest::Approx(25.0 / 24.0).epsilon(1e-12));
    CHECK(zeta_q(5, 3.0) == doctest::Approx(oracle(5, 3.0)).epsilon(1e-12));
    CHECK_THROWS(zeta_q(5, 1.0));
    CHECK_THROWS(zeta_q(5, 0.5));
}

TEST_CASE("a_nk: trivial point, analytic bound, cutoff stability") {
    CHECK(a_nk(5, 0.0, 0.5).value == doctest::Approx(1.0));
    double v = a_nk(5, 1.0 / 25.0, std::pow(5.0, -1.5)).value;
    double z2inv = 1.0 - 1.0 / 5.0;
    CHECK(v >= z2inv * z2inv);  // >= zeta_q(2)^{-2}
    auto lo = a_nk(5, 1.0 / 25.0, std::pow(5.0, -1.5), 6);
    auto hi = a_nk(5, 1.0 / 25.0, std::pow(5.0, -1.5), 8);
    CHECK(std::abs(hi.value - lo.value) <= lo.tail_bound);
    CHECK(hi.tail_bound < lo.tail_bound);
}

TEST_CASE("c3 truncation: range, bound, stability") {
    auto c = c3(5, 8);
    CHECK(c.value > 0.76);
    CHECK(c.value < 0.79);
    CHECK(c.value <= 0.8);  // zeta_5(2)^{-1}
    auto c6 = c3(5, 6);
    CHECK(std::abs(c.value - c6.value) <= c6.tail_bound);
    // stabilized to three decimals by d_max = 8
    auto c10 = c3(5, 10);
    CHECK(std::abs(c10.value - c.value) < 5e-4);
    CHECK_THROWS(c3(5, 1));
}

TEST_CASE("eta and S_k constants") {
    CHECK(eta_const() == doctest::Approx(1.676972).epsilon(1e-6));
    CHECK(s_k_const(2) == doctest::Approx(3967.15).epsilon(0.01 / 3967.15));
    MESSAGE("eta = ", eta_const(), ", S_2 = ", s_k_const(2));
}

TEST_CASE("D_k: limit and schedule dependence") {
    IntervalSchedule s = desk_schedule(2);
    double v = dk_const(2.0, s);
    CHECK(v > 1.0);
    // all ell_r -> infinity drives every factor to 1
    IntervalSchedule s2 = s;
    for (auto& l : s2.ell) l = 1e18;
    CHECK(dk_const(2.0, s2) == doctest::Approx(1.0));
    CHECK(dk_const(2.0, empty_schedule(2)) == doctest::Approx(1.0));
}

TEST_CASE("explicit optimization pipeline") {
    Section7Result r = optimize_section7();
    CHECK(r.d == doctest::Approx(8.15).epsilon(0.01 / 8.15));
    CHECK(r.b == doctest::Approx(0.91).epsilon(0.005 / 0.91));
    CHECK(r.c == doctest::Approx(1.96).epsilon(0.005 / 1.96));
    CHECK(r.log_inv_thetaJ == doctest::Approx(92.65).epsilon(0.1 / 92.65));
    CHECK(r.exponent > 181.0);
    CHECK(r.exponent < 183.0);
    CHECK(r.constraints_ok);
    CHECK(r.a > 2.0);
    CHECK(4.0 * r.a * r.d * std::pow(r.theta_J, 1.0 - r.b) <= 1.0 + 1e-9);
    MESSAGE("d=", r.d, " b=", r.b, " c=", r.c, " log(1/thetaJ)=", r.log_inv_thetaJ,
            " exponent=", r.exponent, " R1=", r.R1, " R2=", r.R2);
}

TEST_CASE("headline constants") {
    HeadlineReport h = headline_constants(5);
    CHECK(h.floor_first >= 0.6143);
    CHECK(h.floor_first == doctest::Approx(0.6144).epsilon(1e-3));
    CHECK(h.floor_proportion >= 0.4718);
    CHECK(h.floor_proportion == doctest::Approx(0.47186).epsilon(1e-3));
    CHECK(h.exponent_assembled >= 181.0);
    CHECK(h.exponent_assembled <= 183.0);
    CHECK(h.coefficient_squared == doctest::Approx(0.3773).epsilon(2e-4));
}

TEST_CASE("first moment constant") {
    FieldCtx F(5);
    FamilyData fam = build_family(F, 2, 2);

    SUBCASE("empty schedule: U = 1, A = zeta(3/2) a_nk / zeta(3)") {
        auto c = first_moment_constant(fam, empty_schedule(2));
        CHECK(c.U == doctest::Approx(1.0));
        CHECK(c.correction == doctest::Approx(1.0));
        CHECK(c.A == doctest::Approx(zeta_q(5, 1.5) / zeta_q(5, 3.0) *
                                     a_nk(5, 1.0 / 25.0, std::pow(5.0, -1.5)).value));
        CHECK(c.A_truncation_exact == doctest::Approx(c.A));
    }

    SUBCASE("desk schedule: U lower bound and flags") {
        auto c = first_moment_constant(fam, desk_schedule(2));
        CHECK(c.u_lower_bound_ok);
        CHECK(c.U >= 1.0 - 1.0 / std::sqrt(5.0) - 1e-12);
        MESSAGE("U=", c.U, " A=", c.A, " A_exact=", c.A_truncation_exact,
                " corr=", c.correction, " corr_valid=", c.correction_valid);
    }
}

TEST_CASE("m_r factor") {
    // M_R(1/q^2, 1/q) = |R|^2/(|R|^2 + 2|R| - 2) at even degree
    for (int degR : {2, 4}) {
        double nr = std::pow(5.0, degR);
        double got = m_r_factor(5, degR, 1.0 / 25.0, 1.0 / 5.0);
        CHECK(got == doctest::Approx(nr * nr / (nr * nr + 2 * nr - 2)).epsilon(1e-12));
    }
    CHECK_THROWS(m_r_factor(5, 3, 0.1, 0.1));
}
