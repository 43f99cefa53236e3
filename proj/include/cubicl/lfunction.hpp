#pragma once

#include <complex>
#include <vector>

#include "cubicl/arith.hpp"
#include "cubicl/character.hpp"
#include "cubicl/cyclotomic.hpp"

namespace cubicl {

// Exact L-polynomial of a family character: coefficient d is the full
// character sum over monic base polynomials of degree d, an element of Z[w].
// Length is the base-conductor degree g+2 (degrees 0..g+1).
struct LPolynomial {
    std::vector<ZOmega> c;

    int top_degree() const { return static_cast<int>(c.size()) - 1; }
    std::vector<std::complex<double>> to_complex() const {
        std::vector<std::complex<double>> v(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i].to_complex();
        return v;
    }
    LPolynomial conj() const {
        LPolynomial r;
        r.c.reserve(c.size());
        for (auto& z : c) r.c.push_back(z.conj());
        return r;
    }
};

// Coefficients by exact counting of cached prime symbol values over the monic
// factorization table. Requires the character's prime cache to be built.
LPolynomial l_polynomial(const FieldCtx& F, const CubicCharacter& chi,
                         const MonicFactorTable& monics, int g);

std::complex<double> eval_L(const LPolynomial& L, std::complex<double> u);
// L(1/2) = script-L(q^{-1/2}); two independent evaluation orders.
std::complex<double> eval_central_horner(const LPolynomial& L, std::uint32_t q);
std::complex<double> eval_central_direct(const LPolynomial& L, std::uint32_t q);
// Exact scaled central value: q^{(g+1)/2} * scriptL(q^{-1/2}) = X + Y*sqrt(q).
SqrtExt central_exact(const LPolynomial& L, std::uint32_t q, int g);
std::complex<double> central_from_exact(const SqrtExt& v, std::uint32_t q, int g);
bool central_is_zero(const SqrtExt& v);
// Exact |L(1/2)|^2 = (A + B*sqrt(q)) / q^{g+1}.
std::pair<std::int64_t, std::int64_t> central_abs2_exact(const SqrtExt& v, std::uint32_t q);
double central_abs2(const SqrtExt& v, std::uint32_t q, int g);

ZOmega l_at_one(const LPolynomial& L);  // scriptL(1), exactly

// omega(chi) = -q^{-g/2} * c_{g+1}.
std::complex<double> root_number(const LPolynomial& L, std::uint32_t q, int g);
// |omega| = 1 exactly iff Norm(c_{g+1}) = q^g.
bool root_number_unimodular_exact(const LPolynomial& L, std::uint32_t q, int g);

// |LHS - RHS| of the four-sum approximate functional equation at split point X.
// Errors when X > g or X < 0.
double afe_residual(const LPolynomial& L, std::uint32_t q, int g, int X);

// P_C(u) = scriptL(u, chi) scriptL(u, conj chi) / (1-u)^2, computed exactly;
// roots from the companion matrix. Throws if either division leaves a
// remainder (signals a character or L bug).
struct CurveZeta {
    std::vector<std::int64_t> coeffs;          // real integer coefficients, degree 2g
    std::vector<std::complex<double>> roots;   // all on |u| = q^{-1/2} for valid input
    double max_radius_error = 0.0;             // max | |root| - q^{-1/2} |
};

CurveZeta curve_zeta(const LPolynomial& L, std::uint32_t q, int g);

}  // namespace cubicl
