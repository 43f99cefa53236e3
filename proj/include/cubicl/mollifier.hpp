#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cubicl/family.hpp"

namespace cubicl {

// Degree-interval schedule driving the prime sums and the mollifier.
// Interval j covers prime degrees in ((g+2)theta_{j-1}, (g+2)theta_j], with
// interval 0 starting at 0. Paper mode uses theta_j = e^j / (log g)^1000,
// which empties every interval at desk genus; desk mode keeps the e^{j-J}
// spacing but takes theta_J directly.
struct IntervalSchedule {
    enum class Mode { Paper, Desk };
    Mode mode = Mode::Desk;
    int g = 0;
    int J = 0;
    double b = 0.91;
    double kappa = 1.0;
    std::vector<double> theta;  // theta_0 .. theta_J, strictly increasing
    std::vector<double> ell;    // even truncation lengths (astronomical in paper mode)

    // Degrees of interval j: [lo, hi] (empty when lo > hi).
    std::pair<int, int> interval_degrees(int j) const;
    int max_degree() const { return interval_degrees(J).second; }
    std::string describe() const;
};

IntervalSchedule desk_schedule(int g, int J = 2, double theta_J = 0.5, double b = 0.91,
                               double kappa = 1.0);
IntervalSchedule paper_schedule(int g, double theta_J = 0.5, double b = 0.91, double kappa = 1.0);
IntervalSchedule empty_schedule(int g, double kappa = 1.0);  // J = -1: no intervals, M = 1
void validate_schedule(const IntervalSchedule& s);

// a(P; u) = |P|^{-1/((g+2)theta_u log q)} (1 - deg P / ((g+2)theta_u)), in [0,1).
// Errors when deg P exceeds (g+2)theta_u.
double weight_a(const IntervalSchedule& s, std::uint32_t q, int degP, int u);
// b(P; j) = (1/2)|P|^{-2/((g+2)theta_j log q)} (1 - 2 deg P/((g+2)theta_j)) <= 1/2.
double weight_b(const IntervalSchedule& s, std::uint32_t q, int degP, int j);

// E_ell(t) = sum_{s <= ell} t^s / s!; ell even (errors otherwise). Positive for
// every real t; converges to exp(t) as ell grows.
double e_trunc(double ell, double t);

// P_{I_j}(chi; u) = sum over primes with degree in I_j of a(P;u) chi(P)/sqrt|P|.
std::complex<double> prime_sum(const FamilyData& fam, std::uint32_t chi_idx,
                               const IntervalSchedule& s, int j, int u);
// D_{j,k} = prod_{r<=j} (1+e^{-ell_r/2}) E_{ell_r}(k Re P_{I_r}(chi;j)).
double d_factor(const FamilyData& fam, std::uint32_t chi_idx, const IntervalSchedule& s, int j,
                double k);
// S_{j,k} = exp(k Re sum_{deg P <= (g+2)theta_j/2} chi(P) b(P;j)/|P|).
double s_factor(const FamilyData& fam, std::uint32_t chi_idx, const IntervalSchedule& s, int j,
                double k);

// One term of the mollifier support: a monic h smooth on the intervals with
// the per-interval big-Omega truncation, together with its coefficient
// a(h;J) lambda(h) prod_j nu(h_j) / sqrt|h| (kappa power excluded).
struct MollTerm {
    Poly h;
    double coeff = 0.0;
    std::uint32_t omega = 0;  // big-Omega of h
};

// Deterministic enumeration of the full mollifier support (product over the
// disjoint intervals).
std::vector<MollTerm> mollifier_support(const FamilyData& fam, const IntervalSchedule& s);
// Support of the single interval-j factor with a custom big-Omega cap.
std::vector<MollTerm> interval_support(const FamilyData& fam, const IntervalSchedule& s, int j,
                                       double omega_cap);

struct MollifierValue {
    std::vector<std::complex<double>> factors;  // M_j, truncated-exponential route
    std::complex<double> value{1.0, 0.0};       // product
};

// M_j = E_{ell_j}(-(1/kappa) P_{I_j}(chi; J)), M = prod M_j.
MollifierValue mollifier_eval(const FamilyData& fam, std::uint32_t chi_idx,
                              const IntervalSchedule& s);
// The same value through the explicit Dirichlet-sum expansion (independent
// route for cross-checking).
std::complex<double> mollifier_eval_dirichlet(const FamilyData& fam, std::uint32_t chi_idx,
                                              const IntervalSchedule& s);

// |M_j|^{k kappa} as the explicit double Dirichlet sum, plus the coefficient
// of the prime term (f_j h_j = P), which must be -(k/2) a(P;J)(chi+conj chi)/
// sqrt|P| independently of kappa.
struct MjPowerExpansion {
    double value = 0.0;                 // the expansion, summed
    double direct = 0.0;                // |M_j|^{k kappa} computed directly
    std::complex<double> prime_term;    // total contribution of f_j h_j = P terms
};
MjPowerExpansion mj_power_expansion(const FamilyData& fam, std::uint32_t chi_idx,
                                    const IntervalSchedule& s, int j, double k);

// Brute-force verification of the multiplicative-expansion identities
//   P^s = s! sum_{Omega(f)=s} a(f) nu(f)
//   (Re P)^s = s!/2^s sum_{Omega(fh)=s} a(f) conj(a(h)) nu(f) nu(h)
// for arbitrary complex prime values a(P). Returns the max residual.
double power_identity_residual(const std::vector<std::complex<double>>& prime_values, int s);
inline bool power_identity_check(const std::vector<std::complex<double>>& prime_values, int s) {
    return power_identity_residual(prime_values, s) < 1e-10;
}

// Case classification from the almost-sharp upper bound machinery:
// case 1: chi outside T_0; case 2: chi in every T_r; case 3: first exit at
// j+1 <= J. For cases 2 and 3 the stated numeric bound on |L(1/2,chi)|^k is
// evaluated; s_j must be even.
struct PropCasesResult {
    int case_id = 0;
    bool bound_holds = true;   // vacuously true in case 1
    double lhs = 0.0;          // |L(1/2,chi)|^k
    double rhs = 0.0;          // evaluated bound (cases 2, 3)
    bool hypothesis_ok = true; // schedule condition 2 sum theta_j s_j + 3 sum theta_j ell_j <= 1/2
};
PropCasesResult prop_cases_check(const FamilyData& fam, std::uint32_t chi_idx,
                                 const IntervalSchedule& s, double k,
                                 const std::vector<int>& s_choices);

// 2 sum theta_j s_j + 3 sum theta_j ell_j (the averaging lemma hypothesis).
double schedule_condition(const IntervalSchedule& s, const std::vector<int>& s_choices);

}  // namespace cubicl
