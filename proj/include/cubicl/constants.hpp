#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubicl/mollifier.hpp"

namespace cubicl {

// zeta_q(s) = (1 - q^{1-s})^{-1} for s > 1; errors at or below the pole.
double zeta_q(std::uint32_t q, double s);

// A truncated Euler product over base primes with a tail estimate: moving the
// cutoff changes the value by less than tail_bound.
struct EulerProductTrunc {
    double value = 1.0;
    int d_max = 0;
    double tail_bound = 0.0;
};

// prod over base primes R of
//   deg odd:  1/(1 + x^{deg R})
//   deg even: (1 + 2 x^{deg R/2} (1 - u^{deg R})) / (1 + x^{deg R/2})^2
EulerProductTrunc a_nk(std::uint32_t q, double x, double u, int d_max = 14);

// Density of admissible family moduli:
//   prod_{deg odd} (1 - |R|^{-2}) prod_{deg even} (1 - 3|R|^{-2} + 2|R|^{-3}).
EulerProductTrunc c3(std::uint32_t q, int d_max = 8);

// eta = 2 sum_{h>=3} 5^{-h/6} / sqrt(h) = 1.676972...
double eta_const();
// S_k = e^{3k} + (4 k! e^{k(gamma+2)}/3) (25/9)^k  (S_2 ~ 3967.15).
double s_k_const(int k);
// D_k = (1+e^{-ell_0/2})^2 prod_{r>=1} (1+e^{-ell_r/2})^2 (1 + e^{16k^2}/2^{ell_r}).
double dk_const(double k, const IntervalSchedule& sched);

// Output of the explicit-constant optimization for the mollified second
// moment bound (k = 2, kappa = 1 in the headline application).
struct Section7Result {
    double d = 0;        // ~8.15
    double a = 0;        // 10e/((d-8)(e-1)), > 2
    double b = 0;        // ~0.91
    double c = 0;        // ~1.96
    double x = 0;        // log(40de/((d-8)(e-1)))
    double alpha = 0;    // 2b - 2 + c/3
    double Fconst = 0;   // k^2 e^{2+c/3} 5^{c/3} / (4 d^{2-c/3} c^{c/3})
    double log_inv_thetaJ = 0;  // ~92.65
    double theta_J = 0;
    double R1 = 0, R2 = 0;
    double exponent = 0;  // log of the inner exponent of the double-exponential bound (~181.7)
    bool constraints_ok = false;  // a > 2, d > 8, 4 a d theta_J^{1-b} <= 1
};

Section7Result optimize_section7(double k = 2.0, double kappa = 1.0);

struct HeadlineReport {
    double exponent_assembled = 0;   // target within [181, 183]
    double floor_first = 0;          // (1-1/q)^2 (1-1/q^2)      >= 0.6143 at q=5
    double floor_proportion = 0;     // (1-1/q)^3 (1-1/q^2)^2    >= 0.4718 at q=5
    double coefficient_squared = 0;  // 0.6143^2 ~ 0.3773 consistency value
};

HeadlineReport headline_constants(std::uint32_t q);

// The first-moment constant A for a given schedule: A = zeta_q(3/2)/zeta_q(3)
// * a_nk(1/q^2, q^{-3/2}) * U * correction, where U is the per-prime product
// truncated at degree (g+2)theta_J and the correction is the tail product
// over the big-Omega truncation (>= 1 - e^{-e^{84}} under the asymptotic
// schedule; at desk scale it can be vacuous, in which case it is reported but
// not applied).
struct FirstMomentConstant {
    double A = 0;               // value used for prediction ratios
    double A_truncation_exact = 0;  // zeta * a_nk * prod_r T(r), the exact finite-support constant
    double U = 1;               // untruncated-exponential per-prime product
    double a_nk_value = 0;
    double zeta32 = 0, zeta3 = 0;
    double correction = 1.0;
    bool correction_valid = true;  // all correction factors in (0, 1]
    bool u_lower_bound_ok = true;  // U >= zeta_q(3/2)^{-1}
};

FirstMomentConstant first_moment_constant(const FamilyData& fam, const IntervalSchedule& sched);

// M_R(x, u) = 1 / (1 + 2 x^{deg R/2} (1 - u^{deg R})) for even-degree R.
double m_r_factor(std::uint32_t q, int degR, double x, double u);

}  // namespace cubicl
