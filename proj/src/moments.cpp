#include "cubicl/moments.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cubicl/reduce.hpp"

namespace cubicl {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

double q_pow(std::uint32_t q, int e) {
    double r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
}

// Prediction for the twisted first moment with decomposition h = C S^2 E^3.
double twisted_prediction(const FamilyData& fam, const HDecomp& hd, const Factorization& fh) {
    const std::uint32_t q = fam.F->q();
    double x = 1.0 / (double(q) * q), u = std::pow(static_cast<double>(q), -1.5);
    double pred = q_pow(q, fam.g + 2) * zeta_q(q, 1.5) / zeta_q(q, 3.0) /
                  (norm(*fam.F, hd.C) * std::sqrt(norm(*fam.F, hd.S))) * a_nk(q, x, u).value;
    for (auto& pp : fh.factors)
        if (pp.prime.deg() % 2 == 0) pred *= m_r_factor(q, pp.prime.deg(), x, u);
    return pred;
}

}  // namespace

HDecomp cse_decompose(const FieldCtx& F, const Poly& h) {
    Factorization fa = factor(F, h);
    HDecomp d{poly_one(h.level), poly_one(h.level), poly_one(h.level)};
    for (auto& pp : fa.factors) {
        std::uint32_t r = pp.exp % 3, a = pp.exp / 3;
        if (r == 1) d.C = mul(F, d.C, pp.prime);
        if (r == 2) d.S = mul(F, d.S, pp.prime);
        for (std::uint32_t i = 0; i < a; ++i) d.E = mul(F, d.E, pp.prime);
    }
    return d;
}

MomentReport first_moment(const FamilyData& fam) {
    MomentReport r;
    double t0 = now_seconds();
    r.q = fam.F->q();
    r.g = fam.g;
    r.kind = "first";
    r.family_size = fam.size();

    SqrtExt total;
    for (auto& v : fam.central) total += v;
    r.exact_real = total.x.b == 0 && total.y.b == 0;
    double sq = std::sqrt(static_cast<double>(r.q));
    r.sum = total.to_complex(sq) / std::pow(sq, fam.g + 1);
    r.imag_abs = std::abs(r.sum.imag());

    HDecomp hd{poly_one(Level::Base), poly_one(Level::Base), poly_one(Level::Base)};
    r.prediction = twisted_prediction(fam, hd, Factorization{});
    r.ratio = r.sum.real() / r.prediction;
    r.seconds = now_seconds() - t0;
    return r;
}

MomentReport twisted_first_moment(const FamilyData& fam, const Poly& h) {
    if (h.is_zero()) throw std::invalid_argument("twisted_first_moment: h must be nonzero");
    if (h.level != Level::Base || !h.is_monic())
        throw std::invalid_argument("twisted_first_moment: h must be monic over F_q");
    MomentReport r;
    double t0 = now_seconds();
    r.q = fam.F->q();
    r.g = fam.g;
    r.kind = "twisted-first";
    r.family_size = fam.size();

    Factorization fh = factor(*fam.F, h);
    std::vector<std::pair<std::uint32_t, std::uint8_t>> entries;
    for (auto& pp : fh.factors) {
        auto it = fam.primes.index_of.find(poly_key(*fam.F, pp.prime));
        if (it == fam.primes.index_of.end())
            throw std::invalid_argument("twisted_first_moment: prime factor of h beyond the cache");
        entries.emplace_back(it->second, static_cast<std::uint8_t>(pp.exp));
    }

    SqrtExt total;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        SymExp v = fam.chars[i].eval_factored(entries);
        if (v == SYM_ZERO) continue;
        total += fam.central[i].times_omega_pow(v);
    }
    r.exact_real = total.x.b == 0 && total.y.b == 0;
    double sq = std::sqrt(static_cast<double>(r.q));
    r.sum = total.to_complex(sq) / std::pow(sq, fam.g + 1);
    r.imag_abs = std::abs(r.sum.imag());

    HDecomp hd = cse_decompose(*fam.F, h);
    r.prediction = twisted_prediction(fam, hd, fh);
    r.ratio = r.sum.real() / r.prediction;
    if (10 * h.deg() >= fam.g) r.extra["hypothesis_warn"] = 1;
    r.seconds = now_seconds() - t0;
    return r;
}

MomentReport mollified_first_moment(const FamilyData& fam, const IntervalSchedule& sched,
                                    bool check_path_b) {
    MomentReport r;
    double t0 = now_seconds();
    r.q = fam.F->q();
    r.g = fam.g;
    r.kind = "mollified-first";
    r.family_size = fam.size();
    if (sched.g != fam.g) throw std::invalid_argument("mollified_first_moment: schedule/genus mismatch");

    std::vector<std::complex<double>> terms(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i)
        terms[i] = fam.central_c[i] * mollifier_eval(fam, static_cast<std::uint32_t>(i), sched).value;
    std::complex<double> path_a = pairwise_sum(std::move(terms));
    r.sum = path_a;
    r.imag_abs = std::abs(path_a.imag());

    if (check_path_b) {
        std::complex<double> path_b = 0;
        for (auto& t : mollifier_support(fam, sched)) {
            MomentReport tw = twisted_first_moment(fam, t.h);
            path_b += t.coeff * std::pow(sched.kappa, -static_cast<double>(t.omega)) * tw.sum;
        }
        r.extra["path_b_re"] = path_b.real();
        r.extra["path_diff"] = std::abs(path_a - path_b);
    }

    FirstMomentConstant A = first_moment_constant(fam, sched);
    r.prediction = A.A * q_pow(r.q, fam.g + 2);
    r.ratio = r.sum.real() / r.prediction;
    r.extra["prediction_truncation_exact"] = A.A_truncation_exact * q_pow(r.q, fam.g + 2);
    r.extra["ratio_truncation_exact"] = r.sum.real() / r.extra["prediction_truncation_exact"];
    r.extra["floor_first"] = 0.6143 * q_pow(r.q, fam.g + 2);
    r.seconds = now_seconds() - t0;
    return r;
}

MomentReport second_moment(const FamilyData& fam, double k) {
    MomentReport r;
    double t0 = now_seconds();
    r.q = fam.F->q();
    r.g = fam.g;
    r.kind = "second";
    r.family_size = fam.size();
    std::vector<double> terms(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (k == 0.0) {
            terms[i] = 1.0;
        } else {
            double a2 = central_abs2(fam.central[i], r.q, fam.g);
            terms[i] = std::pow(a2, k);
        }
    }
    double s = pairwise_sum(std::move(terms));
    r.sum = s;
    r.extra["normalized"] = s / q_pow(r.q, fam.g + 2);
    if (fam.g > 0) r.extra["vs_g_pow_k2"] = s / (q_pow(r.q, fam.g + 2) * std::pow(fam.g, k * k));
    r.exact_real = true;
    r.seconds = now_seconds() - t0;
    return r;
}

MomentReport mollified_second_moment(const FamilyData& fam, double k, const IntervalSchedule& sched) {
    double kk = k * sched.kappa;
    if (std::abs(kk - std::round(kk)) > 1e-12 || static_cast<std::int64_t>(std::round(kk)) % 2 != 0)
        throw std::invalid_argument("mollified_second_moment: k*kappa must be an even integer");
    MomentReport r;
    double t0 = now_seconds();
    r.q = fam.F->q();
    r.g = fam.g;
    r.kind = "mollified-second";
    r.family_size = fam.size();
    std::vector<double> terms(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        double absL = std::abs(fam.central_c[i]);
        double absM = std::abs(mollifier_eval(fam, static_cast<std::uint32_t>(i), sched).value);
        terms[i] = std::pow(absL, k) * std::pow(absM, kk);
    }
    double s = pairwise_sum(std::move(terms));
    r.sum = s;
    r.extra["normalized"] = s / q_pow(r.q, fam.g + 2);
    r.exact_real = true;
    r.seconds = now_seconds() - t0;
    return r;
}

OrthogonalityResult orthogonality_check(const FieldCtx& F, int g, const Poly& c, bool literal) {
    if (c.level != Level::Ext || !c.is_monic())
        throw std::invalid_argument("orthogonality_check: c must be monic over F_{q^2}");
    OrthogonalityResult out;
    Factorization fc = factor(F, c);
    out.is_cube = true;
    int rad_deg = 0;
    for (auto& pp : fc.factors) {
        if (pp.exp % 3 != 0) out.is_cube = false;
        rad_deg += pp.prime.deg();
    }
    const int n = g / 2 + 1;
    if (out.is_cube && rad_deg > n)
        throw std::invalid_argument("orthogonality_check: radical degree exceeds g/2+1");
    if (!out.is_cube && c.deg() > n)
        throw std::invalid_argument("orthogonality_check: degree exceeds g/2+1");

    std::int64_t counts[3] = {0, 0, 0};
    const std::uint64_t total = monic_count(F, Level::Ext, n);
    if (!literal) {
        // chi_R(c) = chi_c(R) for gcd(R, c) = 1 (reciprocity, prime by prime).
        SymbolTableCache cache(F);
        std::vector<const SymbolTable*> tabs;
        for (auto& pp : fc.factors) tabs.push_back(&cache.get(pp.prime));
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Poly R = monic_at(F, Level::Ext, n, idx);
            int s = 0;
            bool zero = false;
            for (std::size_t i = 0; i < fc.factors.size(); ++i) {
                SymExp v = tabs[i]->at_key(poly_key(F, rem(F, R, fc.factors[i].prime)));
                if (v == SYM_ZERO) { zero = true; break; }
                s += static_cast<int>(v) * static_cast<int>(fc.factors[i].exp);
            }
            if (!zero) counts[s % 3]++;
        }
    } else {
        SymbolTableCache cache(F);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            Poly R = monic_at(F, Level::Ext, n, idx);
            Factorization fr = factor(F, R);
            int s = 0;
            bool zero = false;
            for (auto& pp : fr.factors) {
                const SymbolTable& t = cache.get(pp.prime);
                SymExp v = t.at_key(poly_key(F, rem(F, c, pp.prime)));
                if (v == SYM_ZERO) { zero = true; break; }
                s += static_cast<int>(v) * static_cast<int>(pp.exp);
            }
            if (!zero) counts[s % 3]++;
        }
    }
    out.sum = ZOmega{counts[0] - counts[2], counts[1] - counts[2]};

    if (out.is_cube) {
        // q^{g+2} phi_{q^2}(c)/|c|_{q^2} = q^{g+2-2 sum deg} prod (q^{2 deg} - 1)
        std::int64_t e = 1;
        const std::int64_t q = F.q();
        for (int i = 0; i < g + 2 - 2 * rad_deg; ++i) e *= q;
        for (auto& pp : fc.factors) {
            std::int64_t np = 1;
            for (int i = 0; i < 2 * pp.prime.deg(); ++i) np *= q;
            e *= np - 1;
        }
        out.expected = e;
    } else {
        out.expected = 0;
    }
    out.exact_match = out.sum == ZOmega{out.expected, 0};
    return out;
}

std::vector<std::uint32_t> sound_inequality_check(const FamilyData& fam, int N) {
    if (N < 1 || N > fam.g + 2)
        throw std::invalid_argument("sound_inequality_check: N must satisfy 1 <= N <= g+2");
    const std::uint32_t q = fam.F->q();
    std::vector<std::uint32_t> violators;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (central_is_zero(fam.central[i])) continue;
        double lhs = 0.5 * std::log(central_abs2(fam.central[i], q, fam.g));
        double rhs = static_cast<double>(fam.g + 2) / N + 1e-9;
        for (int d = 1; d <= std::min(N, fam.primes.max_deg); ++d) {
            for (std::uint32_t pi = fam.primes.deg_begin[d]; pi < fam.primes.deg_begin[d + 1]; ++pi) {
                SymExp v = fam.chars[i].prime_value(pi);
                if (v == SYM_ZERO) continue;
                for (int j = 1; j * d <= N; ++j) {
                    double re = omega_pow(v * j).to_complex().real();
                    double weight = (N - j * d) /
                                    (N * j * std::exp(j * d * (0.5 * std::log(q) + 1.0 / N)));
                    rhs += re * weight;
                }
            }
        }
        if (lhs > rhs) violators.push_back(static_cast<std::uint32_t>(i));
    }
    return violators;
}

SquaresAvgReport squares_average_check(const FamilyData& fam, const IntervalSchedule& sched, int j,
                                       int k) {
    SquaresAvgReport r;
    r.j = j;
    r.k = k;
    r.hypothesis_degree_ok = (fam.g + 2) * sched.theta.at(j) / 2.0 >= 1.0;
    r.hypothesis_q_ok = fam.F->q() >= 5;
    std::vector<double> terms(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        double s = s_factor(fam, static_cast<std::uint32_t>(i), sched, j, k);
        terms[i] = s * s;
    }
    r.lhs_normalized = pairwise_sum(std::move(terms)) / q_pow(fam.F->q(), fam.g + 2);
    r.bound = k == 0 ? 1.0 : s_k_const(k);
    r.pass = r.lhs_normalized <= r.bound + 1e-12;
    return r;
}

CensusReport census(const FamilyData& fam, const IntervalSchedule& sched) {
    CensusReport c;
    c.family_size = fam.size();
    double max_log = -1e9;
    std::vector<double> logs;
    logs.reserve(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        bool zero = central_is_zero(fam.central[i]);
        if (!zero) ++c.nonvanishing;
        double absL = std::abs(fam.central_c[i]);
        if (absL > 1e-8) ++c.nonvanishing_float;
        if (!zero) {
            double lg = 0.5 * std::log(central_abs2(fam.central[i], fam.F->q(), fam.g));
            logs.push_back(lg);
            max_log = std::max(max_log, lg);
        }
    }
    c.proportion = static_cast<double>(c.nonvanishing) / static_cast<double>(c.family_size);

    std::vector<std::complex<double>> lm(fam.size());
    std::vector<double> lm2(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        std::complex<double> v =
            fam.central_c[i] * mollifier_eval(fam, static_cast<std::uint32_t>(i), sched).value;
        lm[i] = v;
        lm2[i] = std::norm(v);
    }
    std::complex<double> num = pairwise_sum(std::move(lm));
    double den = pairwise_sum(std::move(lm2));
    c.cs_lower_bound = den > 0 ? std::norm(num) / den : 0.0;
    c.bound_ok = c.cs_lower_bound <= static_cast<double>(c.nonvanishing) + 1e-9;

    int vmax = static_cast<int>(std::ceil(std::max(max_log, 2.0)));
    c.monotone = true;
    std::size_t prev = c.family_size + 1;
    for (int V = -2; V <= vmax; ++V) {
        std::size_t nv = 0;
        for (double lg : logs)
            if (lg >= V) ++nv;
        c.n_table.emplace_back(V, nv);
        if (nv > prev) c.monotone = false;
        prev = nv;
    }
    return c;
}

}  // namespace cubicl
