// Command-line front end: family enumeration and caching, L-value computation,
// identity verification, moments, census, constants, and the explicit-bound
// optimizer. All outputs are deterministic for a fixed config (reports carry a
// timestamp field; everything else is reproducible byte for byte).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>

#include "cubicl/cache.hpp"
#include "cubicl/config.hpp"
#include "cubicl/constants.hpp"
#include "cubicl/gauss.hpp"
#include "cubicl/moments.hpp"

using json = nlohmann::ordered_json;
using namespace cubicl;

namespace {

std::string timestamp() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

IntervalSchedule schedule_from_config(const RunConfig& cfg, int g) {
    if (cfg.schedule_mode == "empty") return empty_schedule(g, cfg.kappa);
    if (cfg.schedule_mode == "paper") return paper_schedule(g, cfg.theta_J, cfg.b, cfg.kappa);
    return desk_schedule(g, cfg.schedule_J, cfg.theta_J, cfg.b, cfg.kappa);
}

// Load the family from cache when valid, else build and write the cache.
FamilyData obtain_family(const FieldCtx& F, const RunConfig& cfg, int g, bool want_lvalues,
                         bool quiet = false) {
    std::string path = cache_path(cfg.resolved_cache_dir(), F.q(), g);
    CacheStatus st = probe_cache(path, F.q(), g);
    FamilyData fam;
    if (st.valid && (st.has_lvalues || !want_lvalues)) {
        std::string err;
        if (read_cache(path, F, g, fam, &err)) {
            if (!quiet) std::cerr << "cache: loaded " << fam.size() << " characters from " << path << "\n";
            return fam;
        }
        std::cerr << "cache: unreadable (" << err << "), regenerating\n";
    } else if (st.exists && !st.valid) {
        std::cerr << "cache: " << st.message << ", regenerating " << path << "\n";
    }
    int threads = cfg.threads > 0 ? cfg.threads : 2;
    fam = build_family(F, g, threads);
    write_cache(path, fam, true);
    if (!quiet) std::cerr << "cache: wrote " << fam.size() << " characters to " << path << "\n";
    return fam;
}

json moment_to_json(const MomentReport& r) {
    json j;
    j["q"] = r.q;
    j["g"] = r.g;
    j["kind"] = r.kind;
    j["family_size"] = r.family_size;
    j["sum_re"] = r.sum.real();
    j["sum_im"] = r.sum.imag();
    j["imag_abs"] = r.imag_abs;
    j["prediction"] = r.prediction;
    j["ratio"] = r.ratio;
    j["exact_real"] = r.exact_real;
    for (auto& [k, v] : r.extra) j[k] = v;
    return j;
}

void emit(const json& j, const std::string& out_path, const std::string& format) {
    std::string body;
    if (format == "tsv") {
        std::string keys, vals;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!keys.empty()) {
                keys += '\t';
                vals += '\t';
            }
            keys += it.key();
            vals += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        }
        body = keys + "\n" + vals + "\n";
    } else {
        body = j.dump(2) + "\n";
    }
    if (out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream os(out_path);
        os << body;
    }
}

Poly parse_base_poly(const std::string& text, Level level) {
    // comma-separated coefficients, low degree first: "1,0,2" = 2T^2 + 1
    std::vector<FElem> c;
    std::string tok;
    std::istringstream ss(text);
    while (std::getline(ss, tok, ',')) c.push_back(static_cast<FElem>(std::stoul(tok)));
    return poly_from(level, std::move(c));
}

struct SuiteResult {
    std::string name;
    std::string provenance;
    bool pass = false;
    std::string detail;
};

int run_verify(const RunConfig& cfg, int g) {
    FieldCtx F(cfg.q);
    FamilyData fam = obtain_family(F, cfg, g, true);
    std::mt19937_64 rng(cfg.seed);
    std::vector<SuiteResult> suites;

    {  // 1. approximate functional equation
        double worst = 0;
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (int X = 0; X <= g; ++X)
                worst = std::max(worst, afe_residual(fam.L[i], F.q(), g, X));
        suites.push_back({"afe", "approximate functional equation, all split points",
                          worst < 1e-9, "max residual " + std::to_string(worst)});
    }
    {  // 2. trivial zero + curve zeta on the critical circle
        bool zero_ok = true;
        double worst = 0;
        bool division_ok = true;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (!l_at_one(fam.L[i]).is_zero()) zero_ok = false;
            try {
                CurveZeta z = curve_zeta(fam.L[i], F.q(), g);
                worst = std::max(worst, z.max_radius_error);
            } catch (const std::exception&) {
                division_ok = false;
            }
        }
        suites.push_back({"curve-zeta", "trivial zero at u=1 and zeros on |u| = q^{-1/2}",
                          zero_ok && division_ok && worst < 1e-6,
                          "max radius error " + std::to_string(worst)});
    }
    {  // 3. root numbers
        bool ok = true;
        for (std::size_t i = 0; i < fam.size(); ++i) {
            if (!root_number_unimodular_exact(fam.L[i], F.q(), g)) ok = false;
            if (std::abs(fam.omega[fam.conj_index[i]] - std::conj(fam.omega[i])) > 1e-12) ok = false;
        }
        suites.push_back({"root-number", "unimodular root numbers, conjugation symmetry", ok, ""});
    }
    {  // 4. cubic reciprocity
        int done = 0, bad = 0;
        while (done < 1000) {
            Poly a = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 3), rng);
            Poly b = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 3), rng);
            if (gcd(F, a, b).deg() != 0) continue;
            if (!check_reciprocity(F, a, b)) ++bad;
            ++done;
        }
        suites.push_back({"reciprocity", "cubic reciprocity on 1000 random coprime pairs", bad == 0,
                          std::to_string(bad) + " failures"});
    }
    {  // 5. gauss sum laws
        int bad = 0, done = 0;
        while (done < 500) {
            Poly mod = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 2), rng);
            if (!is_squarefree(F, mod)) continue;
            Poly A = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 2), rng);
            if (gcd(F, A, mod).deg() != 0) continue;
            Poly V = random_monic(F, Level::Ext, static_cast<int>(rng() % 3), rng);
            auto lhs = gauss_sum(F, Level::Ext, mul(F, A, V), mod);
            auto rhs = omega_pow(sym_conj(symbol_of_modulus(F, mod, A))).to_complex() *
                       gauss_sum(F, Level::Ext, V, mod);
            if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) ++bad;
            ++done;
        }
        done = 0;
        while (done < 200) {
            Poly f1 = random_monic(F, Level::Ext, 1, rng);
            Poly f2 = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % 2), rng);
            if (!is_squarefree(F, f2) || gcd(F, f1, f2).deg() != 0) continue;
            Poly V = random_monic(F, Level::Ext, static_cast<int>(rng() % 3), rng);
            auto whole = gauss_sum(F, Level::Ext, V, mul(F, f1, f2), GaussMethod::Brute);
            auto parts = omega_pow(2 * symbol_of_modulus(F, f1, f2)).to_complex() *
                         gauss_sum(F, Level::Ext, V, f1) * gauss_sum(F, Level::Ext, V, f2);
            if (std::abs(whole - parts) > 1e-9 * std::max(1.0, std::abs(whole))) ++bad;
            ++done;
        }
        suites.push_back({"gauss-laws", "twisting and multiplicativity of cubic gauss sums",
                          bad == 0, std::to_string(bad) + " failures"});
    }
    {  // 6. orthogonality
        int bad = 0, done = 0;
        while (done < 100) {
            bool want_cube = done % 2 == 0;
            Poly c;
            if (want_cube) {
                Poly h = random_monic(F, Level::Ext, 1, rng);
                c = mul(F, h, mul(F, h, h));
                Factorization fc = factor(F, c);
                int rad = 0;
                for (auto& pp : fc.factors) rad += pp.prime.deg();
                if (rad > g / 2 + 1) continue;
            } else {
                c = random_monic(F, Level::Ext, 1 + static_cast<int>(rng() % (g / 2 + 1)), rng);
                Factorization fc = factor(F, c);
                bool cube = true;
                for (auto& pp : fc.factors)
                    if (pp.exp % 3 != 0) cube = false;
                if (cube) continue;
            }
            if (!orthogonality_check(F, g, c).exact_match) ++bad;
            ++done;
        }
        suites.push_back({"orthogonality", "character sums over the full modulus set: cubes vs non-cubes",
                          bad == 0, std::to_string(bad) + " failures"});
    }
    {  // 7. multiplicative power identities
        int bad = 0;
        for (int s = 0; s <= 6; ++s) {
            std::vector<std::complex<double>> a(5);
            for (auto& v : a)
                v = {(rng() % 2000) / 1000.0 - 1.0, (rng() % 2000) / 1000.0 - 1.0};
            if (power_identity_residual(a, s) > 1e-10) ++bad;
        }
        suites.push_back({"power-identities", "prime-sum powers vs multiplicative expansions",
                          bad == 0, ""});
    }
    {  // 8. short-sum upper bound for log |L|
        std::size_t violations = 0;
        for (int N = 1; N <= g + 2; ++N) violations += sound_inequality_check(fam, N).size();
        suites.push_back({"log-l-bound", "short Dirichlet-polynomial bound on log |L(1/2)|",
                          violations == 0, std::to_string(violations) + " violations"});
    }

    bool all = true;
    for (auto& s : suites) {
        std::cout << (s.pass ? "PASS " : "FAIL ") << s.name << " (" << s.provenance << ")";
        if (!s.detail.empty()) std::cout << " - " << s.detail;
        std::cout << "\n";
        if (!s.pass) all = false;
    }
    std::cout << (all ? "verify: all " : "verify: FAILURES among ") << suites.size()
              << " identity suites (q=" << cfg.q << ", g=" << g << ")\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cubic character L-function toolkit over F_q[T]"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "key = value config file");

    // global flag overrides
    std::uint32_t opt_q = 0;
    int opt_threads = -1;
    std::uint64_t opt_seed = std::uint64_t(-1);
    std::string opt_cache, opt_out, opt_format, opt_mode;
    double opt_thetaJ = -1, opt_b = -1, opt_kappa = -1;
    int opt_J = -1;
    app.add_option("--q", opt_q, "field size, odd prime power, 2 mod 3");
    app.add_option("--threads", opt_threads, "worker threads");
    app.add_option("--seed", opt_seed, "seed for randomized suites");
    app.add_option("--cache-dir", opt_cache, "cache root (or CUBICL_CACHE_DIR)");
    app.add_option("--out", opt_out, "report output path (stdout when empty)");
    app.add_option("--format", opt_format, "json or tsv");
    app.add_option("--mode", opt_mode, "schedule mode: desk, paper, empty");
    app.add_option("--theta-J", opt_thetaJ, "top interval endpoint");
    app.add_option("--schedule-b", opt_b, "truncation exponent b");
    app.add_option("--kappa", opt_kappa, "mollifier exponent kappa");
    app.add_option("--J", opt_J, "interval count J");
    std::string sched_file;
    app.add_option("--schedule", sched_file, "schedule config file (key = value)");

    int g_single = 0;
    auto add_g = [&](CLI::App* sub) { sub->add_option("--g", g_single, "genus (even)")->required(); };

    auto* sub_family = app.add_subcommand("family", "enumerate the family and write the cache");
    add_g(sub_family);
    auto* sub_lvalues = app.add_subcommand("lvalues", "compute L-polynomials into the cache");
    add_g(sub_lvalues);
    auto* sub_verify = app.add_subcommand("verify", "run the exact identity suites");
    add_g(sub_verify);
    auto* sub_moments = app.add_subcommand("moments", "family-wide moment reports");
    add_g(sub_moments);
    std::string kind = "first", h_arg;
    double mom_k = 1.0;
    sub_moments->add_option("--kind", kind,
                            "first | twisted-first | mollified-first | second | mollified-second");
    sub_moments->add_option("--twist", h_arg, "twist polynomial, coefficients low-first, e.g. 0,1");
    sub_moments->add_option("--k", mom_k, "moment exponent k");
    auto* sub_census = app.add_subcommand("census", "non-vanishing census");
    add_g(sub_census);
    auto* sub_constants = app.add_subcommand("constants", "every named explicit constant");
    auto* sub_s7 = app.add_subcommand("section7", "explicit-bound optimizer");
    auto* sub_gauss = app.add_subcommand("gauss-table", "degree-aggregated gauss sums (TSV)");
    std::string f_arg = "1";
    int dmax = 2;
    sub_gauss->add_option("--f", f_arg, "shift polynomial over F_{q^2}, coefficients low-first");
    sub_gauss->add_option("--dmax", dmax, "max modulus degree");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) cfg = load_config(config_path);
        if (!sched_file.empty())
            for (auto& [k, v] : parse_kv_file(sched_file)) apply_kv(cfg, k, v);
        if (opt_q) cfg.q = opt_q;
        if (opt_threads >= 0) cfg.threads = opt_threads;
        if (opt_seed != std::uint64_t(-1)) cfg.seed = opt_seed;
        if (!opt_cache.empty()) cfg.cache_dir = opt_cache;
        if (!opt_out.empty()) cfg.out_path = opt_out;
        if (!opt_format.empty()) cfg.out_format = opt_format;
        if (!opt_mode.empty()) cfg.schedule_mode = opt_mode;
        if (opt_thetaJ > 0) cfg.theta_J = opt_thetaJ;
        if (opt_b > 0) cfg.b = opt_b;
        if (opt_kappa > 0) cfg.kappa = opt_kappa;
        if (opt_J >= 0) cfg.schedule_J = opt_J;
        cfg.validate();

        if (*sub_family) {
            FieldCtx F(cfg.q);
            std::string path = cache_path(cfg.resolved_cache_dir(), cfg.q, g_single);
            CacheStatus st = probe_cache(path, cfg.q, g_single);
            if (st.valid) {
                std::cout << "family: cache valid, " << st.count << " characters at " << path
                          << " (no-op)\n";
                return 0;
            }
            FamilyData fam = build_family(F, g_single, cfg.threads > 0 ? cfg.threads : 2);
            write_cache(path, fam, false);
            std::cout << "family: " << fam.size() << " characters cached at " << path << "\n";
            return 0;
        }
        if (*sub_lvalues) {
            FieldCtx F(cfg.q);
            std::string path = cache_path(cfg.resolved_cache_dir(), cfg.q, g_single);
            CacheStatus st = probe_cache(path, cfg.q, g_single);
            if (st.valid && st.has_lvalues) {
                std::cout << "lvalues: cache already holds L-coefficients (no-op)\n";
                return 0;
            }
            FamilyData fam = obtain_family(F, cfg, g_single, true, true);
            write_cache(path, fam, true);
            std::cout << "lvalues: " << fam.size() << " L-polynomials cached at " << path << "\n";
            return 0;
        }
        if (*sub_verify) return run_verify(cfg, g_single);
        if (*sub_moments) {
            FieldCtx F(cfg.q);
            FamilyData fam = obtain_family(F, cfg, g_single, true);
            MomentReport r;
            if (kind == "first") r = first_moment(fam);
            else if (kind == "twisted-first")
                r = twisted_first_moment(fam, parse_base_poly(h_arg.empty() ? "1" : h_arg, Level::Base));
            else if (kind == "mollified-first")
                r = mollified_first_moment(fam, schedule_from_config(cfg, g_single), g_single <= 2);
            else if (kind == "second") r = second_moment(fam, mom_k);
            else if (kind == "mollified-second")
                r = mollified_second_moment(fam, mom_k, schedule_from_config(cfg, g_single));
            else throw std::invalid_argument("moments: unknown kind " + kind);
            json j = moment_to_json(r);
            j["provenance"] = "family average over primitive cubic characters";
            j["timestamp"] = timestamp();
            emit(j, cfg.out_path, cfg.out_format);
            return 0;
        }
        if (*sub_census) {
            FieldCtx F(cfg.q);
            FamilyData fam = obtain_family(F, cfg, g_single, true);
            CensusReport c = census(fam, schedule_from_config(cfg, g_single));
            json j;
            j["q"] = cfg.q;
            j["g"] = g_single;
            j["family_size"] = c.family_size;
            j["nonvanishing"] = c.nonvanishing;
            j["nonvanishing_float"] = c.nonvanishing_float;
            j["proportion"] = c.proportion;
            j["cs_lower_bound"] = c.cs_lower_bound;
            j["bound_ok"] = c.bound_ok;
            j["monotone"] = c.monotone;
            json nv = json::array();
            for (auto& [V, n] : c.n_table) nv.push_back({{"V", V}, {"count", n}});
            j["tail_counts"] = nv;
            j["provenance"] = "exact integer zero test on scaled central values";
            j["timestamp"] = timestamp();
            emit(j, cfg.out_path, cfg.out_format);
            return 0;
        }
        if (*sub_constants) {
            json j;
            j["q"] = cfg.q;
            j["zeta_q_2"] = {{"value", zeta_q(cfg.q, 2)}, {"provenance", "geometric zeta value"}};
            j["zeta_q_3"] = {{"value", zeta_q(cfg.q, 3)}, {"provenance", "geometric zeta value"}};
            j["eta"] = {{"value", eta_const()},
                        {"provenance", "prime-power tail constant, 2 sum 5^{-h/6}/sqrt(h)"}};
            j["S_2"] = {{"value", s_k_const(2)},
                        {"provenance", "squares-of-primes average bound at k=2"}};
            auto c = c3(cfg.q, 8);
            j["c3"] = {{"value", c.value},
                       {"tail_bound", c.tail_bound},
                       {"provenance", "family density Euler product"}};
            auto a = a_nk(cfg.q, 1.0 / (double(cfg.q) * cfg.q), std::pow(double(cfg.q), -1.5));
            j["a_nk"] = {{"value", a.value},
                         {"tail_bound", a.tail_bound},
                         {"provenance", "first-moment Euler product at (q^{-2}, q^{-3/2})"}};
            HeadlineReport h = headline_constants(cfg.q);
            j["floor_first_moment"] = {{"value", h.floor_first},
                                       {"floor", 0.6143},
                                       {"provenance", "zeta_q(2)^{-2} zeta_q(3)^{-1}"}};
            j["floor_proportion"] = {{"value", h.floor_proportion},
                                     {"floor", 0.4718},
                                     {"provenance", "zeta_q(2)^{-3} zeta_q(3)^{-2}"}};
            j["double_exponent"] = {{"value", h.exponent_assembled},
                                    {"target", 182.0},
                                    {"provenance", "assembled mollified-second-moment bound exponent"}};
            j["proportion_coefficient"] = {
                {"value", h.coefficient_squared},
                {"floor", 0.3773},
                {"provenance", "square of the first-moment floor over the second-moment bound"}};
            j["timestamp"] = timestamp();
            emit(j, cfg.out_path, cfg.out_format);
            return 0;
        }
        if (*sub_s7) {
            Section7Result r = optimize_section7();
            json j;
            j["d"] = r.d;
            j["a"] = r.a;
            j["b"] = r.b;
            j["c"] = r.c;
            j["x"] = r.x;
            j["alpha"] = r.alpha;
            j["F"] = r.Fconst;
            j["log_inv_thetaJ"] = r.log_inv_thetaJ;
            j["theta_J"] = r.theta_J;
            j["R1"] = r.R1;
            j["R2"] = r.R2;
            j["exponent"] = r.exponent;
            j["constraints_ok"] = r.constraints_ok;
            j["provenance"] = "golden-section minimization of the explicit-bound objective";
            j["timestamp"] = timestamp();
            emit(j, cfg.out_path, cfg.out_format);
            return 0;
        }
        if (*sub_gauss) {
            FieldCtx F(cfg.q);
            Poly f = parse_base_poly(f_arg, Level::Ext);
            std::ostringstream os;
            os << "f\td\tlhs_re\tlhs_im\tmain_re\tmain_im\tratio\n";
            for (int d = 0; d <= dmax; ++d) {
                auto t = gauss_sum_degree_total(F, f, d);
                os << f_arg << "\t" << d << "\t" << t.lhs.real() << "\t" << t.lhs.imag() << "\t"
                   << t.main_term.real() << "\t" << t.main_term.imag() << "\t" << t.ratio_abs
                   << "\n";
            }
            if (cfg.out_path.empty())
                std::cout << os.str();
            else
                std::ofstream(cfg.out_path) << os.str();
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
