#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicl/field.hpp"

using namespace cubicl;

TEST_CASE("tower construction q=5") {
    FieldCtx F(5);
    CHECK(F.p() == 5);
    CHECK(F.q() == 5);
    CHECK(F.q2() == 25);
    CHECK(F.size(Level::Base) == 5);
    CHECK(F.size(Level::Ext) == 25);
}

TEST_CASE("field axioms on both levels") {
    FieldCtx F(5);
    for (Level l : {Level::Base, Level::Ext}) {
        std::uint32_t n = F.size(l);
        for (FElem a = 0; a < n; ++a) {
            CHECK(F.add(l, a, 0) == a);
            CHECK(F.mul(l, a, 1) == a);
            CHECK(F.add(l, a, F.neg(l, a)) == 0);
            if (a != 0) CHECK(F.mul(l, a, F.inv(l, a)) == 1);
            for (FElem b = 0; b < n; ++b) {
                CHECK(F.add(l, a, b) == F.add(l, b, a));
                CHECK(F.mul(l, a, b) == F.mul(l, b, a));
                for (FElem c = 0; c < n; c += 7)
                    CHECK(F.mul(l, a, F.add(l, b, c)) ==
                          F.add(l, F.mul(l, a, b), F.mul(l, a, c)));
            }
        }
    }
}

TEST_CASE("generator has full order") {
    FieldCtx F(5);
    for (Level l : {Level::Base, Level::Ext}) {
        const auto& fld = F.field(l);
        FElem g = fld.generator();
        std::uint32_t ord = 1;
        FElem x = g;
        while (x != 1) {
            x = fld.mul(x, g);
            ++ord;
        }
        CHECK(ord == fld.size() - 1);
    }
}

TEST_CASE("frobenius fixed points are exactly F_q") {
    FieldCtx F(5);
    std::uint32_t fixed = 0;
    for (FElem a = 0; a < F.q2(); ++a) {
        if (F.in_base(a)) {
            ++fixed;
            CHECK(F.frobenius_q(a) == a);
            CHECK(F.project(a) < F.q());
        }
    }
    CHECK(fixed == F.q());
    // lift embeds F_q as the fixed subfield and respects the operations
    for (FElem a = 0; a < F.q(); ++a) {
        CHECK(F.in_base(F.lift(a)));
        for (FElem b = 0; b < F.q(); ++b) {
            CHECK(F.lift(F.add(Level::Base, a, b)) == F.add(Level::Ext, F.lift(a), F.lift(b)));
            CHECK(F.lift(F.mul(Level::Base, a, b)) == F.mul(Level::Ext, F.lift(a), F.lift(b)));
        }
    }
}

TEST_CASE("trace is F_p-linear and surjective") {
    FieldCtx F(5);
    const auto& E = F.field(Level::Ext);
    std::vector<int> hit(F.p(), 0);
    for (FElem a = 0; a < F.q2(); ++a) hit[E.trace_to_prime(a)]++;
    for (auto h : hit) CHECK(h == static_cast<int>(F.q2() / F.p()));
    for (FElem a = 0; a < F.q2(); a += 3)
        for (FElem b = 0; b < F.q2(); b += 5)
            CHECK((E.trace_to_prime(E.add(a, b))) ==
                  (E.trace_to_prime(a) + E.trace_to_prime(b)) % F.p());
}

TEST_CASE("cube root of unity") {
    FieldCtx F(5);
    FElem w = F.omega_cube_root();
    const auto& E = F.field(Level::Ext);
    CHECK(w != 1);
    CHECK(E.pow(w, 3) == 1);
    CHECK(F.cube_root_exponent(1) == 0);
    CHECK(F.cube_root_exponent(w) == 1);
    CHECK(F.cube_root_exponent(E.mul(w, w)) == 2);
    CHECK(F.cube_root_exponent(E.generator()) == -1);
    // q = 2 mod 3: the q-power Frobenius conjugates the cube roots
    CHECK(F.frobenius_q(w) == E.mul(w, w));
}

TEST_CASE("rejects bad q") {
    CHECK_THROWS(FieldCtx(7));   // 7 = 1 mod 3
    CHECK_THROWS(FieldCtx(8));   // even
    CHECK_THROWS(FieldCtx(15));  // not a prime power
}

TEST_CASE("prime power tower q=11") {
    FieldCtx F11(11);
    CHECK(F11.q2() == 121);
    CHECK(F11.field(Level::Ext).pow(F11.omega_cube_root(), 3) == 1);
}

TEST_CASE("extension field over F_p with e > 1") {
    // F_125 = F_5[x]/(m) exercises the generic construction path.
    TableField F = TableField::make(5, 3);
    CHECK(F.size() == 125);
    FElem g = F.generator();
    std::uint32_t ord = 1;
    FElem x = g;
    while (x != 1) {
        x = F.mul(x, g);
        ++ord;
    }
    CHECK(ord == 124);
    for (FElem a = 1; a < 125; a += 11) CHECK(F.mul(a, F.inv(a)) == 1);
    std::vector<int> hit(5, 0);
    for (FElem a = 0; a < 125; ++a) hit[F.trace_to_prime(a)]++;
    for (int h : hit) CHECK(h == 25);
}
