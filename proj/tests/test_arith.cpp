#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cubicl/arith.hpp"

using namespace cubicl;

TEST_CASE("prime counts over F_5") {
    FieldCtx F(5);
    CHECK(prime_count(F, Level::Base, 1) == 5);  // every linear is prime
    CHECK(prime_count(F, Level::Base, 2) == 10);  // (q^2 - q)/2
    CHECK(prime_count(F, Level::Base, 3) == 40);  // (q^3 - q)/3
    CHECK_THROWS(prime_count(F, Level::Base, 0));
    // pi(n) <= q^n / n
    for (int n = 1; n <= 8; ++n) {
        std::uint64_t qn = 1;
        for (int i = 0; i < n; ++i) qn *= 5;
        CHECK(prime_count(F, Level::Base, n) * static_cast<std::uint64_t>(n) <= qn);
    }
}

TEST_CASE("prime count formula matches enumeration up to degree 6") {
    FieldCtx F(5);
    for (int n = 1; n <= 6; ++n)
        CHECK(prime_count(F, Level::Base, n) == prime_count_enumerated(F, Level::Base, n));
    for (int n = 1; n <= 3; ++n)
        CHECK(prime_count(F, Level::Ext, n) == prime_count_enumerated(F, Level::Ext, n));
}

TEST_CASE("prime table ordering and lookup") {
    FieldCtx F(5);
    PrimeTable pt = build_prime_table(F, Level::Base, 4);
    CHECK(pt.count(1) == 5);
    CHECK(pt.count(2) == 10);
    CHECK(pt.count(3) == 40);
    CHECK(pt.count(4) == 150);
    for (std::uint32_t i = 0; i < pt.size(); ++i) {
        CHECK(is_irreducible(F, pt.at(i)));
        CHECK(pt.index_of.at(poly_key(F, pt.at(i))) == i);
        if (i + 1 < pt.size()) CHECK(pt.at(i).deg() <= pt.at(i + 1).deg());
    }
}

TEST_CASE("euler phi examples and mobius identity") {
    FieldCtx F(5);
    Poly T = poly_T(Level::Base);
    Poly T2 = mul(F, T, T);
    CHECK(arith_fn(F, T2, ArithFn::EulerPhi) == 20.0);  // 25 (1 - 1/5)

    // sum_{d | f} mu(d)/|d| = phi(f)/|f| on 200 random monics
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Poly f = random_monic(F, Level::Base, 1 + static_cast<int>(rng() % 5), rng);
        Factorization fa = factor(F, f);
        double lhs = 0;
        for (auto& d : divisors(F, fa)) {
            Factorization fd = factor(F, d);
            lhs += mobius(fd) / norm(F, d);
        }
        double rhs = static_cast<double>(euler_phi(F, fa)) / norm(F, f);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("von mangoldt and liouville") {
    FieldCtx F(5);
    Poly T = poly_T(Level::Base);
    Poly T1 = poly_from(Level::Base, {1, 1});
    CHECK(arith_fn(F, mul(F, T, T1), ArithFn::VonMangoldt) == 0.0);  // not a prime power
    CHECK(arith_fn(F, mul(F, T, T), ArithFn::VonMangoldt) == 1.0);   // deg P
    CHECK(arith_fn(F, mul(F, T, T1), ArithFn::Liouville) == 1.0);
    CHECK(arith_fn(F, T, ArithFn::Liouville) == -1.0);
    CHECK(arith_fn(F, mul(F, T, mul(F, T, T1)), ArithFn::BigOmega) == 3.0);
}

TEST_CASE("nu and nu_j") {
    FieldCtx F(5);
    Poly T = poly_T(Level::Base);
    Poly P2 = mul(F, T, T);
    CHECK(arith_fn(F, P2, ArithFn::Nu) == 0.5);              // 1/2!
    CHECK(arith_fn(F, P2, ArithFn::NuJ, 3) == 4.5);          // 3^2/2!
    CHECK(arith_fn(F, T, ArithFn::NuJ, 4) == 4.0);           // 4^1/1!
}

TEST_CASE("nu_j equals brute j-fold convolution for small inputs") {
    FieldCtx F(5);
    std::mt19937_64 rng(8);
    // brute: nu_j(f) = sum over ordered j-tuples with product f of prod nu(f_i)
    auto brute = [&](const Poly& f, int j) {
        std::function<double(const Poly&, int)> rec = [&](const Poly& g, int left) -> double {
            if (left == 1) return nu(factor(F, g));
            double acc = 0;
            Factorization fa = factor(F, g);
            for (auto& d : divisors(F, fa))
                acc += nu(factor(F, d)) * rec(divmod(F, g, d).first, left - 1);
            return acc;
        };
        return rec(f, j);
    };
    for (int it = 0; it < 40; ++it) {
        Poly f = random_monic(F, Level::Base, 1 + static_cast<int>(rng() % 4), rng);
        if (big_omega(factor(F, f)) > 4) continue;
        for (int j = 1; j <= 4; ++j)
            CHECK(nu_j(factor(F, f), j) == doctest::Approx(brute(f, j)).epsilon(1e-10));
    }
}

TEST_CASE("nu_trunc: truncation dominates and matches definition") {
    FieldCtx F(5);
    Poly T = poly_T(Level::Base);
    // f = P^2: nu_n(P^2; ell)
    Poly P2 = mul(F, T, T);
    Factorization fa = factor(F, P2);
    // n = 2, ell = 1: only the tuple (P, P) survives -> nu(P)^2 = 1
    CHECK(nu_trunc(fa, 2, 1) == doctest::Approx(1.0));
    // ell = 2: adds (P^2, 1) and (1, P^2), each nu(P^2) = 1/2
    CHECK(nu_trunc(fa, 2, 2) == doctest::Approx(2.0));
    // untruncated equals nu_n
    CHECK(nu_trunc(fa, 2, 10) == doctest::Approx(nu_j(fa, 2)));
    CHECK(nu_trunc(fa, 3, 10) == doctest::Approx(nu_j(fa, 3)));
    // termwise domination nu_n(f; ell) <= nu_n(f)
    std::mt19937_64 rng(9);
    for (int it = 0; it < 30; ++it) {
        Poly f = random_monic(F, Level::Base, 1 + static_cast<int>(rng() % 4), rng);
        Factorization ff = factor(F, f);
        for (int n = 1; n <= 3; ++n)
            for (std::int64_t ell = 1; ell <= 4; ++ell)
                CHECK(nu_trunc(ff, n, ell) <= nu_j(ff, n) + 1e-12);
    }
}

TEST_CASE("monic factor table agrees with direct factorization") {
    FieldCtx F(5);
    PrimeTable pt = build_prime_table(F, Level::Base, 3);
    MonicFactorTable mt = build_monic_factor_table(F, pt, 3);
    for (int d = 0; d <= 3; ++d)
        for (std::uint64_t i = 0; i < monic_count(F, Level::Base, d); ++i) {
            Poly f = monic_at(F, Level::Base, d, i);
            std::size_t s = mt.slot(d, i);
            Poly prod = poly_one(Level::Base);
            for (std::uint32_t e = mt.begin[s]; e < mt.begin[s + 1]; ++e)
                for (std::uint8_t r = 0; r < mt.entries[e].second; ++r)
                    prod = mul(F, prod, pt.at(mt.entries[e].first));
            CHECK(prod == f);
        }
}
