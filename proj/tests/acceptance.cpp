// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Default tier covers genus 0 and 2 for the exact-identity sweep plus the
// genus-4 aggregates; --long additionally runs the full identity sweep at
// genus 4.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "cubicl/cache.hpp"
#include "cubicl/gauss.hpp"
#include "cubicl/moments.hpp"

using namespace cubicl;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s %-58s %s\n", pass ? "[PASS]" : "[FAIL]", name.c_str(), detail.c_str());
    if (!pass) ++failures;
}

double wall() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// ---- criterion 1: exact identity sweep at one genus ----
void identity_sweep(const FieldCtx& F, const FamilyData& fam, int g) {
    const std::string tag = " (g=" + std::to_string(g) + ")";
    double t0 = wall();
    {
        double worst = 0;
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (int X = 0; X <= g; ++X)
                worst = std::max(worst, afe_residual(fam.L[i], F.q(), g, X));
        report("1. AFE residual < 1e-9, all chi, all X" + tag, worst < 1e-9,
               "max " + std::to_string(worst));
    }
    {
        bool zero_ok = true, division_ok = true;
        double worst = 0;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (!l_at_one(fam.L[i]).is_zero()) zero_ok = false;
            try {
                worst = std::max(worst, curve_zeta(fam.L[i], F.q(), g).max_radius_error);
            } catch (const std::exception&) {
                division_ok = false;
            }
        }
        report("1. L(u=1) = 0 exactly; curve zeros on |u|=q^{-1/2}" + tag,
               zero_ok && division_ok && worst < 1e-6, "max radius err " + std::to_string(worst));
    }
    {
        bool ok = true;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (!root_number_unimodular_exact(fam.L[i], F.q(), g)) ok = false;
            if (std::abs(std::abs(fam.omega[i]) - 1.0) > 1e-9) ok = false;
        }
        report("1. |omega(chi)| = 1 within 1e-9 (and exactly)" + tag, ok);
    }
    {
        std::size_t violations = 0;
        for (int N = 1; N <= g + 2; ++N) violations += sound_inequality_check(fam, N).size();
        report("1. log|L| short-sum bound: zero violations, N <= g+2" + tag, violations == 0,
               std::to_string(violations) + " violations");
    }
    std::printf("       identity sweep took %.1fs%s\n", wall() - t0, tag.c_str());
}

void random_identity_suites(const FieldCtx& F) {
    std::mt19937_64 rng(0);
    {
        int done = 0, bad = 0;
        while (done < 1000) {
            Poly a = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 3), rng);
            Poly b = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 3), rng);
            if (gcd(F, a, b).deg() != 0) continue;
            if (!check_reciprocity(F, a, b)) ++bad;
            ++done;
        }
        report("1. cubic reciprocity on 1000 random coprime pairs", bad == 0,
               std::to_string(bad) + " failures");
    }
    {
        int bad = 0, done = 0;
        while (done < 500) {
            Poly mod = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 2), rng);
            if (!is_squarefree(F, mod)) continue;
            Poly A = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 2), rng);
            if (gcd(F, A, mod).deg() != 0) continue;
            Poly V = random_monic(F, Level::Ext, static_cast<int>(rng() % 3), rng);
            auto lhs = gauss_sum(F, Level::Ext, mul(F, A, V), mod);
            auto rhs = omega_pow(sym_conj(symbol_of_modulus(F, mod, A))).to_complex() *
                       gauss_sum(F, Level::Ext, V, mod);
            if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) ++bad;
            ++done;
        }
        int done2 = 0;
        while (done2 < 200) {
            Poly f1 = random_monic(F, Level::Ext, 1, rng);
            Poly f2 = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 2), rng);
            if (!is_squarefree(F, f2) || gcd(F, f1, f2).deg() != 0) continue;
            Poly V = random_monic(F, Level::Ext, static_cast<int>(rng() % 3), rng);
            auto whole = gauss_sum(F, Level::Ext, V, mul(F, f1, f2), GaussMethod::Brute);
            auto parts = omega_pow(2 * symbol_of_modulus(F, f1, f2)).to_complex() *
                         gauss_sum(F, Level::Ext, V, f1) * gauss_sum(F, Level::Ext, V, f2);
            if (std::abs(whole - parts) > 1e-9 * std::max(1.0, std::abs(whole))) ++bad;
            ++done2;
        }
        report("1. gauss twisting (500) and multiplicativity (200) laws", bad == 0,
               std::to_string(bad) + " failures");
    }
    {
        int bad = 0, done = 0;
        const int g = 2;
        while (done < 100) {
            bool want_cube = done % 2 == 0;
            Poly c;
            if (want_cube) {
                Poly h = random_monic(F, Level::Ext, 1, rng);
                c = mul(F, h, mul(F, h, h));
            } else {
                c = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 2), rng);
                Factorization fc = factor(F, c);
                bool cube = true;
                for (auto& pp : fc.factors)
                    if (pp.exp % 3 != 0) cube = false;
                if (cube) continue;
            }
            if (!orthogonality_check(F, g, c).exact_match) ++bad;
            ++done;
        }
        report("1. orthogonality: cubes exact, non-cubes zero (100 random)", bad == 0,
               std::to_string(bad) + " failures");
    }
    {
        int bad = 0;
        for (int s = 0; s <= 6; ++s)
            for (int np : {3, 5, 8}) {
                std::vector<std::complex<double>> a(np);
                for (auto& v : a)
                    v = {(rng() % 2000) / 1000.0 - 1.0, (rng() % 2000) / 1000.0 - 1.0};
                if (power_identity_residual(a, s) > 1e-10) ++bad;
            }
        report("1. multiplicative power expansions match brute force, s <= 6", bad == 0);
    }
}

}  // namespace

int main(int argc, char** argv) {
    bool long_tier = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--long") == 0) long_tier = true;

    FieldCtx F(5);
    double t_start = wall();

    std::printf("== exact identities (q=5) ==\n");
    FamilyData fam0 = build_family(F, 0, 2);
    FamilyData fam2 = build_family(F, 2, 2);
    identity_sweep(F, fam0, 0);
    identity_sweep(F, fam2, 2);
    random_identity_suites(F);

    std::printf("== family counts ==\n");
    double t4 = wall();
    FamilyData fam4 = build_family(F, 4, 2);
    std::printf("       genus-4 family build took %.1fs (%zu characters)\n", wall() - t4,
                fam4.size());
    {
        report("2. #C(0) = 20", fam0.size() == 20, "measured " + std::to_string(fam0.size()));
        // The stated count 490 comes from an exhaustive-count derivation that
        // keeps the ten Galois-conjugate linear pairs. Those moduli are
        // divisible by an F_q[T] prime (the pair product), their restriction
        // to F_q[T] is imprimitive, and every exact identity above fails on
        // them, so the enumeration excludes them and finds 480. The criterion
        // is asserted as stated and reported honestly.
        report("2. #C(2) = 490", fam2.size() == 490,
               "measured " + std::to_string(fam2.size()) +
                   " (= 300 irreducible quadratics + 190 split pairs - 10 conjugate pairs)");
        double c3v = c3(5, 10).value;
        double d0 = std::abs(fam0.size() / std::pow(5.0, 2) - c3v);
        double d2 = std::abs(fam2.size() / std::pow(5.0, 4) - c3v);
        double d4 = std::abs(fam4.size() / std::pow(5.0, 6) - c3v);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "|ratio - c3|: g0 %.4f, g2 %.4f, g4 %.4f", d0, d2, d4);
        report("2. |#C(g)/q^{g+2} - c3| decreasing g=0..4", d0 > d2 && d2 > d4, buf);
    }

    std::printf("== explicit constants ==\n");
    {
        double t0 = wall();
        bool ok = std::abs(eta_const() - 1.676972) <= 1e-6;
        report("3. eta = 1.676972 +- 1e-6", ok, std::to_string(eta_const()));
        ok = std::abs(s_k_const(2) - 3967.15) <= 0.01;
        report("3. S_2 = 3967.15 +- 0.01", ok, std::to_string(s_k_const(2)));
        HeadlineReport h = headline_constants(5);
        report("3. (1-1/5)^2(1-1/25) >= 0.6143", h.floor_first >= 0.6143,
               std::to_string(h.floor_first));
        report("3. (1-1/5)^3(1-1/25)^2 >= 0.4718", h.floor_proportion >= 0.4718,
               std::to_string(h.floor_proportion));
        Section7Result s7 = optimize_section7();
        report("3. optimizer: d = 8.15 +- 0.01", std::abs(s7.d - 8.15) <= 0.01,
               std::to_string(s7.d));
        report("3. optimizer: b = 0.91 +- 0.005", std::abs(s7.b - 0.91) <= 0.005,
               std::to_string(s7.b));
        report("3. optimizer: c = 1.96 +- 0.005", std::abs(s7.c - 1.96) <= 0.005,
               std::to_string(s7.c));
        report("3. optimizer: log(1/theta_J) = 92.65 +- 0.1",
               std::abs(s7.log_inv_thetaJ - 92.65) <= 0.1, std::to_string(s7.log_inv_thetaJ));
        report("3. assembled double-exponent in [181, 183]",
               s7.exponent >= 181.0 && s7.exponent <= 183.0, std::to_string(s7.exponent));
        double dt = wall() - t0;
        report("3. constants runtime < 5s", dt < 5.0, std::to_string(dt) + "s");
    }

    std::printf("== mollifier algebra ==\n");
    {
        IntervalSchedule s = desk_schedule(2);
        MomentReport r = mollified_first_moment(fam2, s, true);
        report("4. mollified first moment: path (a) = path (b) within 1e-8",
               r.extra.at("path_diff") < 1e-8, "diff " + std::to_string(r.extra.at("path_diff")));
        bool ok = true;
        for (double ell = 2; ell <= 40; ell += 2) {
            double cap = ell / std::exp(2.0);
            for (double t = -10.0; t <= cap; t += 0.05)
                if (std::exp(t) > (1.0 + std::exp(-ell / 2.0)) * e_trunc(ell, t) * (1 + 1e-12))
                    ok = false;
        }
        report("4. truncated-exponential inequality on the scan grid", ok);

        IntervalSchedule s1 = desk_schedule(2, 2, 0.5, 0.91, 1.0);
        IntervalSchedule s2 = desk_schedule(2, 2, 0.5, 0.91, 2.0);
        bool indep = true;
        for (std::uint32_t ci : {0u, 97u, 221u}) {
            auto e1 = mj_power_expansion(fam2, ci, s1, 2, 2.0);  // k kappa = 2
            auto e2 = mj_power_expansion(fam2, ci, s2, 2, 2.0);  // k kappa = 4
            if (std::abs(e1.prime_term - e2.prime_term) > 1e-10) indep = false;
            if (std::abs(e1.value - e1.direct) > 1e-8 * std::max(1.0, std::abs(e1.direct)))
                indep = false;
            if (std::abs(e2.value - e2.direct) > 1e-8 * std::max(1.0, std::abs(e2.direct)))
                indep = false;
        }
        report("4. |M_j|^{k kappa} prime term independent of kappa (kk = 2, 4)", indep);
    }

    std::printf("== squares of primes and census ==\n");
    {
        IntervalSchedule s4 = desk_schedule(4);
        auto sq = squares_average_check(fam4, s4, 2, 2);
        report("5. sum S_{j,2}^2 / q^{g+2} <= S_2 at g=4 (hypothesis met)",
               sq.pass && sq.hypothesis_degree_ok && sq.hypothesis_q_ok,
               std::to_string(sq.lhs_normalized) + " <= " + std::to_string(sq.bound));
    }
    {
        bool ok = true;
        std::string detail;
        for (auto* fam : {&fam0, &fam2, &fam4}) {
            CensusReport c = census(*fam, desk_schedule(fam->g));
            if (!c.bound_ok || !c.monotone) ok = false;
            detail += "g" + std::to_string(fam->g) + ": " + std::to_string(c.nonvanishing) + "/" +
                      std::to_string(c.family_size) + " ";
        }
        report("6. census: CS lower bound <= count, N(V) monotone", ok, detail);
    }

    std::printf("== monitored ratios (reported, not asserted) ==\n");
    {
        std::printf("       g   #C(g)    sum L(1/2)    A q^{g+2}     ratio    sum|L|^2/q^{g+2}\n");
        for (auto* fam : {&fam0, &fam2, &fam4}) {
            MomentReport f = first_moment(*fam);
            MomentReport m = second_moment(*fam, 1);
            std::printf("       %d  %6zu  %12.4f  %12.4f  %7.4f  %10.4f\n", fam->g, fam->size(),
                        f.sum.real(), f.prediction, f.ratio, m.extra.at("normalized"));
        }
        report("7. moment ratio table generated for g in {0,2,4}", true);
    }

    if (long_tier) {
        std::printf("== long tier: genus-4 identity sweep ==\n");
        identity_sweep(F, fam4, 4);
        std::mt19937_64 rng(1);
        int bad = 0, done = 0;
        while (done < 100) {
            bool want_cube = done % 2 == 0;
            Poly c;
            if (want_cube) {
                Poly h = random_monic(F, Level::Ext, 1, rng);
                c = mul(F, h, mul(F, h, h));
            } else {
                c = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 3), rng);
                Factorization fc = factor(F, c);
                bool cube = true;
                for (auto& pp : fc.factors)
                    if (pp.exp % 3 != 0) cube = false;
                if (cube) continue;
            }
            if (!orthogonality_check(F, 4, c).exact_match) ++bad;
            ++done;
        }
        report("long: orthogonality at g=4 (100 random)", bad == 0);
    }

    std::printf("== summary ==\n");
    std::printf("total runtime %.1fs\n", wall() - t_start);
    if (failures) {
        std::printf("%d criterion check(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criterion checks passed\n");
    return 0;
}
