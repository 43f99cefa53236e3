#include "cubicl/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cubicl/field.hpp"

namespace cubicl {

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t\r");
            std::size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        std::string t = strip(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) + ": expected key = value");
        kv[strip(t.substr(0, eq))] = strip(t.substr(eq + 1));
    }
    return kv;
}

void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "q") cfg.q = static_cast<std::uint32_t>(std::stoul(value));
    else if (key == "g") {
        cfg.g_list.clear();
        std::istringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.g_list.push_back(std::stoi(tok));
    } else if (key == "mode") cfg.schedule_mode = value;
    else if (key == "J") cfg.schedule_J = std::stoi(value);
    else if (key == "theta_J") cfg.theta_J = std::stod(value);
    else if (key == "b") cfg.b = std::stod(value);
    else if (key == "kappa") cfg.kappa = std::stod(value);
    else if (key == "cache_dir") cfg.cache_dir = value;
    else if (key == "threads") cfg.threads = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "out") cfg.out_path = value;
    else if (key == "format") cfg.out_format = value;
    else throw std::runtime_error("config: unknown key '" + key + "'");
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    for (auto& [k, v] : parse_kv_file(path)) apply_kv(cfg, k, v);
    return cfg;
}

std::string RunConfig::resolved_cache_dir() const {
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("CUBICL_CACHE_DIR")) return env;
    return ".";
}

void RunConfig::validate() const {
    if (q % 2 == 0 || q % 3 != 2)
        throw std::invalid_argument("config: q must be odd and 2 mod 3");
    prime_power_decompose(q);
    for (int g : g_list)
        if (g < 0 || g % 2 != 0) throw std::invalid_argument("config: genus must be even and >= 0");
    if (schedule_mode != "desk" && schedule_mode != "paper" && schedule_mode != "empty")
        throw std::invalid_argument("config: mode must be desk, paper, or empty");
    if (out_format != "json" && out_format != "tsv")
        throw std::invalid_argument("config: format must be json or tsv");
}

}  // namespace cubicl
