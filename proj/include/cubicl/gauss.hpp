#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cubicl/character.hpp"

namespace cubicl {

// Additive character of F_q((1/T)) evaluated on V/F (F monic nonzero): the
// p-th root of unity at the trace of the 1/T Laurent coefficient, which for a
// monic F equals the coefficient of T^{deg F - 1} of (V mod F).
std::complex<double> hayes_e(const FieldCtx& F, Level l, const Poly& V, const Poly& mod);
// The exact exponent: Tr(coefficient) in [0, p).
std::uint32_t hayes_exponent(const FieldCtx& F, Level l, const Poly& V, const Poly& mod);

enum class GaussMethod { Brute, Multiplicative, Auto };

// G(V, F) = sum over residues u mod F of chi_F(u) e(uV/F). Brute enumerates
// all |F| residues (capped at 1e6); the multiplicative method needs F
// square-free and composes prime Gauss sums through the twisting law.
std::complex<double> gauss_sum(const FieldCtx& F, Level l, const Poly& V, const Poly& mod,
                               GaussMethod method = GaussMethod::Auto);

// Cubic-character Gauss sum of the residue field F_{q^2} itself:
// tau = sum over a in F_{q^2}^* of chi_3(a) zeta_p^{Tr(a)}, with
// chi_3(a) = Omega^{-1}(a^{(q^2-1)/3}).
std::complex<double> tau_cubic(const FieldCtx& F);

// Aggregated Gauss sums over all moduli of one degree, with the predicted
// main term, at the Ext level.
struct GaussDegreeTotal {
    std::complex<double> lhs;        // exact sum over F in M_{q^2,d}, (F,f)=1
    std::complex<double> main_term;  // delta_{f2=1} q^{4d/3-...} * conj(G(1,f1)) * rho * products
    double ratio_abs = 0.0;          // |lhs| / |main_term| when the main term is nonzero
    bool f2_is_one = true;
    int residue_class = 0;           // [d + deg f1]_3
    std::complex<double> rho;        // rho(1, residue_class)
    Poly f1, f2, f3;
};

GaussDegreeTotal gauss_sum_degree_total(const FieldCtx& F, const Poly& f, int d);

// [x]_3: the representative of x mod 3 in {0,1,2}.
inline int mod3_class(std::int64_t x) { return static_cast<int>(((x % 3) + 3) % 3); }

// Coefficient extraction from a power series (the polynomial analogue of the
// contour integrals): exact coefficient n, or the partial sum through n.
enum class PerronMode { ExactN, UpToN };
std::complex<double> perron_coeff(const std::vector<std::complex<double>>& coeffs, int n, PerronMode mode);

// Truncated generating series of Gauss sums: coefficient d is
// gauss_sum_degree_total(f, d).lhs for 0 <= d <= D.
std::vector<std::complex<double>> gen_series_coeffs(const FieldCtx& F, const Poly& f, int D);

}  // namespace cubicl
