#include "cubicl/constants.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace cubicl {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
const double kE = std::exp(1.0);

// pi(n) as a double (exact below 2^53 for desk q).
double prime_count_d(std::uint32_t q, int n) {
    double total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        int m = 1, dd = d;
        for (int r = 2; r * r <= dd; ++r) {
            if (dd % r == 0) {
                dd /= r;
                if (dd % r == 0) { m = 0; break; }
                m = -m;
            }
        }
        if (dd > 1 && m != 0) m = -m;
        if (m == 0) continue;
        total += m * std::pow(static_cast<double>(q), n / d);
    }
    return total / n;
}

}  // namespace

double zeta_q(std::uint32_t q, double s) {
    if (s <= 1.0) throw std::invalid_argument("zeta_q: pole at s <= 1");
    return 1.0 / (1.0 - std::pow(static_cast<double>(q), 1.0 - s));
}

double m_r_factor(std::uint32_t q, int degR, double x, double u) {
    if (degR % 2 != 0) throw std::invalid_argument("m_r_factor: even degree required");
    (void)q;
    return 1.0 / (1.0 + 2.0 * std::pow(x, degR / 2.0) * (1.0 - std::pow(u, degR)));
}

EulerProductTrunc a_nk(std::uint32_t q, double x, double u, int d_max) {
    if (std::abs(x) >= 1.0 / q) throw std::invalid_argument("a_nk: |x| must be < 1/q");
    EulerProductTrunc out;
    out.d_max = d_max;
    double logv = 0;
    for (int n = 1; n <= d_max; ++n) {
        double pin = prime_count_d(q, n);
        double f;
        if (n % 2 == 1)
            f = 1.0 / (1.0 + std::pow(x, n));
        else
            f = (1.0 + 2.0 * std::pow(x, n / 2.0) * (1.0 - std::pow(u, n))) /
                ((1.0 + std::pow(x, n / 2.0)) * (1.0 + std::pow(x, n / 2.0)));
        logv += pin * std::log(f);
    }
    out.value = std::exp(logv);
    // Tail: per degree-n prime, |log factor| <= 5(|x|^{n/2}|u|^n + |x|^n) for
    // even n and 2|x|^n for odd n; multiplied by pi(n) <= q^n/n.
    double tail = 0;
    for (int n = d_max + 1; n <= d_max + 200; ++n) {
        double per = n % 2 == 0
                         ? 5.0 * (std::pow(std::abs(x), n / 2.0) * std::pow(std::abs(u), n) +
                                  std::pow(std::abs(x), n))
                         : 2.0 * std::pow(std::abs(x), n);
        tail += std::pow(static_cast<double>(q), n) / n * per;
        if (per == 0) break;
    }
    out.tail_bound = tail * std::abs(out.value) * 2;
    return out;
}

EulerProductTrunc c3(std::uint32_t q, int d_max) {
    if (d_max < 2) throw std::invalid_argument("c3: d_max must be >= 2");
    EulerProductTrunc out;
    out.d_max = d_max;
    double logv = 0;
    for (int n = 1; n <= d_max; ++n) {
        double nr = std::pow(static_cast<double>(q), n);
        double f = n % 2 == 1 ? 1.0 - 1.0 / (nr * nr) : 1.0 - 3.0 / (nr * nr) + 2.0 / (nr * nr * nr);
        logv += prime_count_d(q, n) * std::log(f);
    }
    out.value = std::exp(logv);
    double tail = 0;
    for (int n = d_max + 1; n <= d_max + 200; ++n) {
        double nr = std::pow(static_cast<double>(q), n);
        tail += std::pow(static_cast<double>(q), n) / n * 4.0 / (nr * nr);
    }
    out.tail_bound = tail * out.value * 2;
    return out;
}

double eta_const() {
    double acc = 0;
    for (int h = 3; h < 4000; ++h) acc += 2.0 * std::pow(5.0, -h / 6.0) / std::sqrt(static_cast<double>(h));
    return acc;
}

double s_k_const(int k) {
    if (k <= 0) throw std::invalid_argument("s_k_const: k must be positive");
    double kfact = 1;
    for (int i = 2; i <= k; ++i) kfact *= i;
    return std::exp(3.0 * k) +
           4.0 * kfact * std::exp(k * (kEulerGamma + 2.0)) / 3.0 * std::pow(25.0 / 9.0, k);
}

double dk_const(double k, const IntervalSchedule& sched) {
    if (sched.J < 0) return 1.0;
    double v = std::pow(1.0 + std::exp(-sched.ell[0] / 2.0), 2);
    for (int r = 1; r <= sched.J; ++r)
        v *= std::pow(1.0 + std::exp(-sched.ell[r] / 2.0), 2) *
             (1.0 + std::exp(16.0 * k * k) / std::pow(2.0, sched.ell[r]));
    return v;
}

namespace {

// log(1/theta_J) as a function of d alone, after substituting the optimal
// b(d), c(d): 3 (d e + x) / (1 - (d-8)(e-1)/(5e)), valid for 8 < d < 8 + 5e/(e-1).
double objective(double d) {
    double denom = 1.0 - (d - 8.0) * (kE - 1.0) / (5.0 * kE);
    if (d <= 8.0 || denom <= 0.0) return 1e300;
    double x = std::log(40.0 * d * kE / ((d - 8.0) * (kE - 1.0)));
    return 3.0 * (d * kE + x) / denom;
}

}  // namespace

Section7Result optimize_section7(double k, double kappa) {
    (void)kappa;
    // Golden-section on d in (8, 20]; the objective is +inf outside the
    // feasible subrange, preserving unimodality.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 8.0 + 1e-9, hi = 20.0;
    double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
    double f1 = objective(c1), f2 = objective(c2);
    int iters = 0;
    while (hi - lo > 1e-10 && ++iters < 400) {
        if (f1 <= f2) {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = objective(c1);
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = objective(c2);
        }
    }
    if (iters >= 400) throw std::runtime_error("optimize_section7: golden section did not converge");

    Section7Result r;
    r.d = (lo + hi) / 2.0;
    r.c = 2.0 - 2.0 * (r.d - 8.0) * (kE - 1.0) / (5.0 * kE);
    r.x = std::log(40.0 * r.d * kE / ((r.d - 8.0) * (kE - 1.0)));
    r.b = 1.0 - r.c * r.x / (6.0 * (r.d * kE + r.x));
    r.a = 10.0 * kE / ((r.d - 8.0) * (kE - 1.0));
    r.alpha = 2.0 * r.b - 2.0 + r.c / 3.0;
    r.log_inv_thetaJ = r.x / (1.0 - r.b);
    r.theta_J = std::exp(-r.log_inv_thetaJ);
    r.Fconst = k * k * std::exp(2.0 + r.c / 3.0) * std::pow(5.0, r.c / 3.0) /
               (4.0 * std::pow(r.d, 2.0 - r.c / 3.0) * std::pow(r.c, r.c / 3.0));
    r.R2 = r.alpha / (2.0 * r.d);
    r.R1 = k * kE - r.R2 * r.log_inv_thetaJ + std::log(r.Fconst) / (2.0 * r.d);
    // Inner exponent of the double-exponential: log(R2 e^{R1/R2 - 1} / theta_J).
    r.exponent = std::log(r.R2) + r.R1 / r.R2 - 1.0 + r.log_inv_thetaJ;

    double t1b = std::exp((1.0 - r.b) * std::log(r.theta_J));  // theta_J^{1-b}
    r.constraints_ok = r.a > 2.0 && r.d > 8.0 && 4.0 * r.a * r.d * t1b <= 1.0 + 1e-9;
    return r;
}

HeadlineReport headline_constants(std::uint32_t q) {
    HeadlineReport h;
    Section7Result s7 = optimize_section7();
    h.exponent_assembled = s7.exponent;
    double z2inv = 1.0 - 1.0 / q;                 // zeta_q(2)^{-1}
    double z3inv = 1.0 - 1.0 / (double(q) * q);   // zeta_q(3)^{-1}
    h.floor_first = z2inv * z2inv * z3inv;
    h.floor_proportion = z2inv * z2inv * z2inv * z3inv * z3inv;
    h.coefficient_squared = 0.6143 * 0.6143;
    return h;
}

namespace {

// Per-prime factor of the mollified first-moment main product: the cube-class
// average of exp(-a(P;J) xi/sqrt|P|) weighted by (1 + xi/sqrt|P| + xi^2/|P|)/3
// over the three cube roots xi, minus 1.
double u_gamma(double a, double sqrtnorm) {
    std::complex<double> acc = 0;
    for (int kk = 0; kk < 3; ++kk) {
        std::complex<double> xi = omega_pow(kk).to_complex();
        std::complex<double> weight =
            (1.0 + xi / sqrtnorm + xi * xi / (sqrtnorm * sqrtnorm)) / 3.0;
        acc += weight * std::exp(-xi * a / sqrtnorm);
    }
    return acc.real() - 1.0;
}

}  // namespace

FirstMomentConstant first_moment_constant(const FamilyData& fam, const IntervalSchedule& sched) {
    const std::uint32_t q = fam.F->q();
    FirstMomentConstant out;
    out.zeta32 = zeta_q(q, 1.5);
    out.zeta3 = zeta_q(q, 3.0);
    out.a_nk_value = a_nk(q, 1.0 / (double(q) * q), std::pow(q, -1.5)).value;

    const double x = 1.0 / (double(q) * q), u = std::pow(static_cast<double>(q), -1.5);
    double U = 1.0;
    if (sched.J >= 0) {
        int dmax = static_cast<int>(std::floor((fam.g + 2) * sched.theta[sched.J] + 1e-12));
        for (int n = 1; n <= dmax; ++n) {
            double a = weight_a(sched, q, n, sched.J);
            double g = u_gamma(a, std::pow(static_cast<double>(q), 0.5 * n));
            double NP = n % 2 == 0 ? m_r_factor(q, n, x, u) : 1.0;
            U *= std::pow(1.0 + g * NP, prime_count_d(q, n));
        }
    }
    out.U = U;
    out.u_lower_bound_ok = U >= 1.0 - std::pow(static_cast<double>(q), -0.5) - 1e-12;

    // Exact finite-support truncation factors T(r), and the tail correction.
    double Tprod = 1.0;
    double corr = 1.0;
    bool corr_valid = true;
    for (int j = 0; j <= sched.J; ++j) {
        auto [lo, hi] = sched.interval_degrees(j);
        // T(j): sum over interval-smooth h with Omega(h) <= ell_j of
        // a(h;J) lambda(h) nu(h) / (|C|^{3/2}|S|^{3/2}|E|^{3/2}) * prod M_R.
        double Tj = 0.0;
        for (auto& t : interval_support(fam, sched, j, sched.ell[j])) {
            double coeff = t.coeff;  // a(h;J) lambda(h) nu(h) / sqrt|h|
            Factorization fa = t.h.is_one() ? Factorization{} : factor(*fam.F, t.h);
            double mrprod = 1.0;
            int degC = 0, degS = 0, degE = 0;
            for (auto& pp : fa.factors) {
                int r3 = pp.exp % 3, a3 = pp.exp / 3;
                if (r3 == 1) degC += pp.prime.deg();
                if (r3 == 2) degS += pp.prime.deg();
                degE += a3 * pp.prime.deg();
                if (pp.prime.deg() % 2 == 0) mrprod *= m_r_factor(q, pp.prime.deg(), x, u);
            }
            // coeff divides by sqrt|h|; the main term wants |C S E|^{-3/2}.
            double denom_fix = std::pow(static_cast<double>(q),
                                        0.5 * t.h.deg() - 1.5 * (degC + degS + degE));
            Tj += coeff * denom_fix * mrprod;
        }
        Tprod *= Tj;

        // correction factor (1 - 1/(2^{ell_j} U(j) Pi_j))
        double Uj = 1.0;
        for (int n = std::max(lo, 1); n <= hi; ++n) {
            double a = weight_a(sched, q, n, sched.J);
            double g = u_gamma(a, std::pow(static_cast<double>(q), 0.5 * n));
            double NP = n % 2 == 0 ? m_r_factor(q, n, x, u) : 1.0;
            Uj *= std::pow(1.0 + g * NP, prime_count_d(q, n));
        }
        double Pi = 1.0;
        for (int n = std::max(lo, 1); n <= hi; ++n) {
            double n32 = std::pow(static_cast<double>(q), 1.5 * n);
            double per = (1.0 - 2.0 / n32) * (1.0 - 4.0 / n32) * (1.0 - 8.0 / n32);
            Pi *= std::pow(per, prime_count_d(q, n));
        }
        double fac = 1.0 - 1.0 / (std::pow(2.0, sched.ell[j]) * Uj * Pi);
        corr *= fac;
        if (!(fac > 0.0 && fac <= 1.0)) corr_valid = false;
    }
    out.correction = corr;
    out.correction_valid = corr_valid;

    double base = out.zeta32 / out.zeta3 * out.a_nk_value;
    out.A_truncation_exact = base * Tprod;
    out.A = base * U * (corr_valid ? corr : 1.0);
    return out;
}

}  // namespace cubicl
