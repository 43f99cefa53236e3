#include "cubicl/mollifier.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace cubicl {

std::pair<int, int> IntervalSchedule::interval_degrees(int j) const {
    double lo = j == 0 ? 0.0 : (g + 2) * theta[j - 1];
    double hi = (g + 2) * theta[j];
    int lo_i = static_cast<int>(std::floor(lo)) + 1;
    int hi_i = static_cast<int>(std::floor(hi));
    if (std::abs(hi - std::round(hi)) < 1e-12) hi_i = static_cast<int>(std::round(hi));
    if (std::abs(lo - std::round(lo)) < 1e-12) lo_i = static_cast<int>(std::round(lo)) + 1;
    return {lo_i, hi_i};
}

std::string IntervalSchedule::describe() const {
    std::ostringstream os;
    os << (mode == Mode::Desk ? "desk" : "paper") << " J=" << J << " b=" << b << " kappa=" << kappa;
    for (int j = 0; j <= J; ++j) {
        auto [lo, hi] = interval_degrees(j);
        os << " I_" << j << "=(" << theta[j] << ",ell=" << ell[j] << ",deg " << lo << ".." << hi << ")";
    }
    return os.str();
}

void validate_schedule(const IntervalSchedule& s) {
    if (s.J + 1 != static_cast<int>(s.theta.size()) || s.J + 1 != static_cast<int>(s.ell.size()))
        throw std::invalid_argument("schedule: size mismatch");
    for (int j = 0; j + 1 <= s.J; ++j)
        if (!(s.theta[j] < s.theta[j + 1])) throw std::invalid_argument("schedule: theta not increasing");
    for (double l : s.ell) {
        if (l < 2) throw std::invalid_argument("schedule: ell must be >= 2");
        if (l < 1e15 && std::fmod(l, 2.0) != 0.0)
            throw std::invalid_argument("schedule: ell must be even");
    }
    if (!(s.b > 0 && s.b < 1)) throw std::invalid_argument("schedule: b must be in (0,1)");
    if (s.kappa <= 0) throw std::invalid_argument("schedule: kappa must be positive");
    if (s.J >= 0 && s.theta[s.J] > 1.0) throw std::invalid_argument("schedule: theta_J must be <= 1");
}

IntervalSchedule desk_schedule(int g, int J, double theta_J, double b, double kappa) {
    IntervalSchedule s;
    s.mode = IntervalSchedule::Mode::Desk;
    s.g = g;
    s.J = J;
    s.b = b;
    s.kappa = kappa;
    for (int j = 0; j <= J; ++j) {
        double th = theta_J * std::exp(static_cast<double>(j - J));
        s.theta.push_back(th);
        s.ell.push_back(2.0 * std::floor(std::pow(th, -b)));
    }
    validate_schedule(s);
    return s;
}

IntervalSchedule paper_schedule(int g, double theta_J, double b, double kappa) {
    if (g < 3) throw std::invalid_argument("paper schedule: needs g >= 3 for a positive J");
    IntervalSchedule s;
    s.mode = IntervalSchedule::Mode::Paper;
    s.g = g;
    s.b = b;
    s.kappa = kappa;
    double logg = std::log(static_cast<double>(g));
    double denom = std::pow(logg, 1000.0);  // theta_0 = 1/(log g)^1000
    int J = static_cast<int>(std::floor(1000.0 * std::log(logg) + std::log(theta_J)));
    if (J < 0) J = 0;
    s.J = J;
    for (int j = 0; j <= J; ++j) {
        double th = std::exp(static_cast<double>(j)) / denom;
        s.theta.push_back(th);
        s.ell.push_back(2.0 * std::floor(std::pow(th, -b)));
    }
    validate_schedule(s);
    return s;
}

IntervalSchedule empty_schedule(int g, double kappa) {
    IntervalSchedule s;
    s.mode = IntervalSchedule::Mode::Desk;
    s.g = g;
    s.J = -1;
    s.kappa = kappa;
    return s;
}

double weight_a(const IntervalSchedule& s, std::uint32_t q, int degP, int u) {
    (void)q;
    double cap = (s.g + 2) * s.theta.at(u);
    if (degP > cap + 1e-12) throw std::invalid_argument("weight_a: prime degree out of range");
    double x = degP / cap;
    return std::exp(-x) * (1.0 - x);  // |P|^{-1/(cap log q)} = e^{-deg P / cap}
}

double weight_b(const IntervalSchedule& s, std::uint32_t q, int degP, int j) {
    (void)q;
    double cap = (s.g + 2) * s.theta.at(j);
    if (degP > cap / 2 + 1e-12) throw std::invalid_argument("weight_b: prime degree out of range");
    double x = degP / cap;
    return 0.5 * std::exp(-2.0 * x) * (1.0 - 2.0 * x);
}

double e_trunc(double ell, double t) {
    if (ell < 0) throw std::invalid_argument("e_trunc: ell must be nonnegative");
    if (ell < 1e15 && std::fmod(ell, 2.0) != 0.0) throw std::invalid_argument("e_trunc: ell must be even");
    double sum = 1.0, term = 1.0;
    double smax = std::min(ell, 1e6);
    for (double s = 1; s <= smax; ++s) {
        term *= t / s;
        sum += term;
        if (s > std::abs(t) && std::abs(term) < 1e-30 * std::abs(sum)) break;
    }
    return sum;
}

std::complex<double> prime_sum(const FamilyData& fam, std::uint32_t chi_idx,
                               const IntervalSchedule& s, int j, int u) {
    auto [lo, hi] = s.interval_degrees(j);
    std::complex<double> acc = 0;
    const std::uint32_t q = fam.F->q();
    for (int d = std::max(lo, 1); d <= std::min(hi, fam.primes.max_deg); ++d) {
        double a = weight_a(s, q, d, u);
        double invsq = std::pow(static_cast<double>(q), -0.5 * d);
        for (std::uint32_t i = fam.primes.deg_begin[d]; i < fam.primes.deg_begin[d + 1]; ++i) {
            SymExp v = fam.chars[chi_idx].prime_value(i);
            if (v == SYM_ZERO) continue;
            acc += a * invsq * omega_pow(v).to_complex();
        }
    }
    return acc;
}

double d_factor(const FamilyData& fam, std::uint32_t chi_idx, const IntervalSchedule& s, int j,
                double k) {
    double prod = 1.0;
    for (int r = 0; r <= j; ++r) {
        double t = k * prime_sum(fam, chi_idx, s, r, j).real();
        prod *= (1.0 + std::exp(-s.ell[r] / 2.0)) * e_trunc(s.ell[r], t);
    }
    return prod;
}

double s_factor(const FamilyData& fam, std::uint32_t chi_idx, const IntervalSchedule& s, int j,
                double k) {
    const std::uint32_t q = fam.F->q();
    double cap = (fam.g + 2) * s.theta.at(j) / 2.0;
    std::complex<double> acc = 0;
    for (int d = 1; d <= std::min(static_cast<int>(std::floor(cap + 1e-12)), fam.primes.max_deg); ++d) {
        double bw = weight_b(s, q, d, j);
        double invn = std::pow(static_cast<double>(q), -d);
        for (std::uint32_t i = fam.primes.deg_begin[d]; i < fam.primes.deg_begin[d + 1]; ++i) {
            SymExp v = fam.chars[chi_idx].prime_value(i);
            if (v == SYM_ZERO) continue;
            acc += bw * invn * omega_pow(v).to_complex();
        }
    }
    return std::exp(k * acc.real());
}

namespace {

// Enumerate interval-smooth monics with big-Omega <= cap, collecting
// (h, a(h;J) lambda(h) nu(h), Omega(h)). Deterministic DFS in prime order.
struct SmoothEnum {
    const FamilyData& fam;
    const IntervalSchedule& s;
    std::vector<std::uint32_t> prime_idx;  // primes of this interval
    double cap_omega;
    std::vector<MollTerm> out;

    void run() {
        Poly one = poly_one(Level::Base);
        dfs(0, one, 0, 1.0, 1.0);
    }
    void dfs(std::size_t pi, const Poly& h, std::uint32_t omega, double nuprod, double aprod) {
        // close current h
        const std::uint32_t q = fam.F->q();
        double lam = omega % 2 == 0 ? 1.0 : -1.0;
        double coeff = aprod * lam * nuprod / std::pow(static_cast<double>(q), 0.5 * h.deg());
        out.push_back({h, coeff, omega});
        if (pi >= prime_idx.size()) return;
        for (std::size_t i = pi; i < prime_idx.size(); ++i) {
            const Poly& P = fam.primes.at(prime_idx[i]);
            Poly cur = h;
            double fact = 1.0;
            for (std::uint32_t e = 1; omega + e <= cap_omega; ++e) {
                cur = mul(*fam.F, cur, P);
                fact *= e;
                double a = weight_a(s, q, P.deg(), s.J);
                double apow = std::pow(a, e);
                dfs(i + 1, cur, omega + e, nuprod / fact, aprod * apow);
            }
        }
    }
};

std::vector<std::uint32_t> interval_primes(const FamilyData& fam, const IntervalSchedule& s, int j) {
    std::vector<std::uint32_t> idx;
    auto [lo, hi] = s.interval_degrees(j);
    for (int d = std::max(lo, 1); d <= std::min(hi, fam.primes.max_deg); ++d)
        for (std::uint32_t i = fam.primes.deg_begin[d]; i < fam.primes.deg_begin[d + 1]; ++i)
            idx.push_back(i);
    return idx;
}

}  // namespace

std::vector<MollTerm> interval_support(const FamilyData& fam, const IntervalSchedule& s, int j,
                                       double omega_cap) {
    SmoothEnum en{fam, s, interval_primes(fam, s, j), omega_cap, {}};
    en.run();
    return en.out;
}

std::vector<MollTerm> mollifier_support(const FamilyData& fam, const IntervalSchedule& s) {
    std::vector<MollTerm> total{{poly_one(Level::Base), 1.0, 0}};
    for (int j = 0; j <= s.J; ++j) {
        auto part = interval_support(fam, s, j, s.ell[j]);
        if (part.size() == 1) continue;  // empty interval
        std::vector<MollTerm> next;
        next.reserve(total.size() * part.size());
        for (auto& t : total)
            for (auto& u : part)
                next.push_back({mul(*fam.F, t.h, u.h), t.coeff * u.coeff, t.omega + u.omega});
        total.swap(next);
    }
    return total;
}

MollifierValue mollifier_eval(const FamilyData& fam, std::uint32_t chi_idx,
                              const IntervalSchedule& s) {
    MollifierValue mv;
    for (int j = 0; j <= s.J; ++j) {
        std::complex<double> P = prime_sum(fam, chi_idx, s, j, s.J);
        // E_ell at a complex argument: truncated Taylor sum of exp.
        std::complex<double> t = -P / s.kappa;
        std::complex<double> sum = 1.0, term = 1.0;
        double smax = std::min(s.ell[j], 1e6);
        for (double step = 1; step <= smax; ++step) {
            term *= t / step;
            sum += term;
            if (step > std::abs(t) && std::abs(term) < 1e-30 * std::abs(sum)) break;
        }
        mv.factors.push_back(sum);
        mv.value *= sum;
    }
    return mv;
}

std::complex<double> mollifier_eval_dirichlet(const FamilyData& fam, std::uint32_t chi_idx,
                                              const IntervalSchedule& s) {
    std::complex<double> acc = 0;
    for (auto& t : mollifier_support(fam, s)) {
        SymExp v = t.omega == 0 ? SymExp{0} : fam.eval_base_monic(chi_idx, t.h);
        if (v == SYM_ZERO) continue;
        acc += t.coeff * std::pow(s.kappa, -static_cast<double>(t.omega)) * omega_pow(v).to_complex();
    }
    return acc;
}

MjPowerExpansion mj_power_expansion(const FamilyData& fam, std::uint32_t chi_idx,
                                    const IntervalSchedule& s, int j, double k) {
    double kk = k * s.kappa;
    if (std::abs(kk - std::round(kk)) > 1e-12 || static_cast<std::int64_t>(std::round(kk)) % 2 != 0)
        throw std::invalid_argument("mj_power_expansion: k*kappa must be an even integer");
    int n = static_cast<int>(std::round(kk)) / 2;

    MjPowerExpansion out;
    // |M_j|^{k kappa} = M_j^n conj(M_j)^n; each power is a single Dirichlet
    // sum with nu_n(.; ell_j) weights, so the double sum factors.
    auto terms = interval_support(fam, s, j, static_cast<double>(n) * s.ell[j]);
    std::complex<double> sum_f = 0, sum_h = 0, prime_f = 0, prime_h = 0;
    for (auto& t : terms) {
        Factorization ff = t.h.is_one() ? Factorization{} : factor(*fam.F, t.h);
        double nf = nu_trunc(ff, n, static_cast<std::int64_t>(s.ell[j]));
        if (nf == 0.0) continue;
        double base = t.coeff / nu(ff) * nf *
                      std::pow(s.kappa, -static_cast<double>(t.omega));  // a lambda nu_n / (kappa^W sqrt|h|)
        SymExp v = t.omega == 0 ? SymExp{0} : fam.eval_base_monic(chi_idx, t.h);
        if (v == SYM_ZERO) continue;
        std::complex<double> tf = base * omega_pow(v).to_complex();
        std::complex<double> th = base * omega_pow(sym_conj(v)).to_complex();
        sum_f += tf;
        sum_h += th;
        if (t.omega == 1) {
            prime_f += tf;
            prime_h += th;
        }
    }
    out.value = (sum_f * sum_h).real();
    out.prime_term = prime_f + prime_h;  // coefficient of the f h = P terms in the product

    MollifierValue mv = mollifier_eval(fam, chi_idx, s);
    out.direct = std::pow(std::abs(mv.factors.at(j)), kk);
    return out;
}

double power_identity_residual(const std::vector<std::complex<double>>& a, int s) {
    const int n = static_cast<int>(a.size());
    // Left sides by direct powering.
    std::complex<double> P = 0;
    for (auto& v : a) P += v;
    std::complex<double> lhs1 = std::pow(P, s);
    double lhs2 = std::pow(P.real(), s);

    // Right sides: sum over exponent vectors (multinomial oracle).
    // P^s = s! sum_{Omega(f)=s} a(f) nu(f) with a completely multiplicative.
    double sfact = 1;
    for (int i = 2; i <= s; ++i) sfact *= i;
    std::complex<double> rhs1 = 0;
    std::function<void(int, int, std::complex<double>, double)> rec1 =
        [&](int i, int left, std::complex<double> prod, double nuv) {
            if (i == n) {
                if (left == 0) rhs1 += prod * nuv;
                return;
            }
            double fact = 1;
            std::complex<double> pw = 1;
            for (int e = 0; e <= left; ++e) {
                if (e) {
                    fact *= e;
                    pw *= a[i];
                }
                rec1(i + 1, left - e, prod * pw, nuv / fact);
            }
        };
    rec1(0, s, 1.0, 1.0);
    rhs1 *= sfact;

    // (Re P)^s = s!/2^s sum_{Omega(f h)=s} a(f) conj(a(h)) nu(f) nu(h).
    std::complex<double> rhs2 = 0;
    std::function<void(int, int, std::complex<double>, double)> rec2 =
        [&](int i, int left, std::complex<double> prod, double nuv) {
            if (i == 2 * n) {
                if (left == 0) rhs2 += prod * nuv;
                return;
            }
            std::complex<double> base = i < n ? a[i] : std::conj(a[i - n]);
            double fact = 1;
            std::complex<double> pw = 1;
            for (int e = 0; e <= left; ++e) {
                if (e) {
                    fact *= e;
                    pw *= base;
                }
                rec2(i + 1, left - e, prod * pw, nuv / fact);
            }
        };
    rec2(0, s, 1.0, 1.0);
    rhs2 *= sfact / std::pow(2.0, s);

    return std::max(std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2));
}

double schedule_condition(const IntervalSchedule& s, const std::vector<int>& s_choices) {
    double acc = 0;
    for (int j = 0; j <= s.J; ++j)
        acc += 2.0 * s.theta[j] * s_choices.at(j) + 3.0 * s.theta[j] * s.ell[j];
    return acc;
}

PropCasesResult prop_cases_check(const FamilyData& fam, std::uint32_t chi_idx,
                                 const IntervalSchedule& s, double k,
                                 const std::vector<int>& s_choices) {
    for (int sj : s_choices)
        if (sj % 2 != 0) throw std::invalid_argument("prop_cases_check: s_j must be even");
    PropCasesResult out;
    out.hypothesis_ok = schedule_condition(s, s_choices) <= 0.5;

    // eta = 2 sum_{h>=3} 5^{-h/6}/sqrt(h), the prime-power tail constant
    static const double eta = [] {
        double acc = 0;
        for (int h = 3; h < 2000; ++h) acc += 2.0 * std::pow(5.0, -h / 6.0) / std::sqrt(static_cast<double>(h));
        return acc;
    }();
    const double e2 = std::exp(2.0);

    // T_r membership: max_{r <= u <= J} |Re P_{I_r}(chi;u)| <= ell_r/(k e^2).
    auto in_T = [&](int r) {
        double cap = s.ell[r] / (k * e2);
        for (int u = r; u <= s.J; ++u)
            if (std::abs(prime_sum(fam, chi_idx, s, r, u).real()) > cap) return false;
        return true;
    };

    double lhs = std::pow(std::abs(fam.central_c[chi_idx]), k);
    out.lhs = lhs;

    if (!in_T(0)) {
        out.case_id = 1;
        out.bound_holds = true;  // no bound asserted in this case
        return out;
    }
    int first_exit = -1;
    for (int r = 1; r <= s.J; ++r)
        if (!in_T(r)) { first_exit = r; break; }

    if (first_exit < 0) {
        out.case_id = 2;
        out.rhs = std::exp(k * (1.0 / s.theta[s.J] + eta)) * d_factor(fam, chi_idx, s, s.J, k) *
                  s_factor(fam, chi_idx, s, s.J, k);
    } else {
        out.case_id = 3;
        double total = 0;
        for (int j = 0; j <= s.J - 1; ++j)
            for (int u = j + 1; u <= s.J; ++u) {
                double rp = prime_sum(fam, chi_idx, s, j + 1, u).real();
                double pw = std::pow(e2 * k * rp / s.ell[j + 1], s_choices.at(j + 1));
                total += std::exp(k * (1.0 / s.theta[j] + eta)) * d_factor(fam, chi_idx, s, j, k) *
                         s_factor(fam, chi_idx, s, j, k) * pw;
            }
        out.rhs = total;
    }
    out.bound_holds = lhs <= out.rhs * (1.0 + 1e-9) + 1e-9;
    return out;
}

}  // namespace cubicl
