#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "cubicl/constants.hpp"
#include "cubicl/family.hpp"
#include "cubicl/mollifier.hpp"

namespace cubicl {

// One family-wide aggregate with its prediction and diagnostics. Predictions
// are reported, never asserted, wherever the underlying statement is
// asymptotic; the `extra` map carries per-kind diagnostics.
struct MomentReport {
    std::uint32_t q = 0;
    int g = 0;
    std::string kind;
    std::size_t family_size = 0;
    std::complex<double> sum;
    double imag_abs = 0.0;
    double prediction = 0.0;  // 0 when no prediction applies
    double ratio = 0.0;       // Re(sum)/prediction when prediction != 0
    double seconds = 0.0;
    bool exact_real = false;  // imaginary part vanishes exactly (conjugation closure)
    std::map<std::string, double> extra;
};

// h = C S^2 E^3 with C, S square-free and coprime (exponent mod 3 rule).
struct HDecomp {
    Poly C, S, E;
};
HDecomp cse_decompose(const FieldCtx& F, const Poly& h);

MomentReport first_moment(const FamilyData& fam);
// sum of chi(h) L(1/2, chi); h monic nonzero over F_q with prime factors of
// degree <= g+1. Sets extra["hypothesis_warn"] when deg h >= g/10.
MomentReport twisted_first_moment(const FamilyData& fam, const Poly& h);
// Direct path (a): sum L(1/2,chi) M(chi). With check_path_b, also the
// twisted-moment expansion path (b); extra["path_diff"] is |a - b|.
MomentReport mollified_first_moment(const FamilyData& fam, const IntervalSchedule& sched,
                                    bool check_path_b = false);
// sum |L(1/2,chi)|^{2k}; k = 0 returns the family size exactly.
MomentReport second_moment(const FamilyData& fam, double k);
// sum |L|^k |M|^{k kappa}; k*kappa must be an even integer.
MomentReport mollified_second_moment(const FamilyData& fam, double k, const IntervalSchedule& sched);

// sum over ALL monic R of degree g/2+1 over F_{q^2} of chi_R(c), exactly.
// Cube c (with square-free radical of degree <= g/2+1): equals
// q^{g+2} phi_{q^2}(c)/|c|_{q^2}. Non-cube c of degree <= g/2+1: equals 0.
// Errors when the degree hypothesis fails. With `literal` set, evaluates
// chi_R(c) prime-by-prime instead of through the symbol of modulus c.
struct OrthogonalityResult {
    ZOmega sum;
    std::int64_t expected = 0;
    bool is_cube = false;
    bool exact_match = false;
};
OrthogonalityResult orthogonality_check(const FieldCtx& F, int g, const Poly& c, bool literal = false);

// Indices of characters violating the short-Dirichlet-polynomial bound
// log|L(1/2,chi)| <= Re sum_{deg f <= N} Lambda(f) chi(f) (N - deg f)
//                    / (N |f|^{1/2 + 1/(N log q)} deg f) + (g+2)/N + 1e-9
// for 1 <= N <= g+2 (characters with L = 0 are skipped). Must be empty.
std::vector<std::uint32_t> sound_inequality_check(const FamilyData& fam, int N);

struct SquaresAvgReport {
    int j = 0;
    double k = 0;
    double lhs_normalized = 0;  // sum S_{j,k}(chi)^2 / q^{g+2}
    double bound = 0;           // S_k
    bool pass = false;
    bool hypothesis_degree_ok = false;  // (g+2) theta_j / 2 >= 1
    bool hypothesis_q_ok = false;       // q >= 5
};
SquaresAvgReport squares_average_check(const FamilyData& fam, const IntervalSchedule& sched, int j,
                                       int k);

struct CensusReport {
    std::size_t family_size = 0;
    std::size_t nonvanishing = 0;        // exact integer zero test
    std::size_t nonvanishing_float = 0;  // |L| > 1e-8 cross-check
    double proportion = 0;
    double cs_lower_bound = 0;  // |sum L M|^2 / sum |L M|^2
    bool bound_ok = false;      // cs_lower_bound <= nonvanishing
    std::vector<std::pair<int, std::size_t>> n_table;  // N(V) at integer V
    bool monotone = false;
};
CensusReport census(const FamilyData& fam, const IntervalSchedule& sched);

}  // namespace cubicl
