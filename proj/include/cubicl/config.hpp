#pragma once

#include <map>
#include <string>
#include <vector>

namespace cubicl {

// Plain key = value text config with '#' comments; flags override file values.
struct RunConfig {
    std::uint32_t q = 5;
    std::vector<int> g_list{0, 2};
    std::string schedule_mode = "desk";  // desk | paper | empty
    int schedule_J = 2;
    double theta_J = 0.5;
    double b = 0.91;
    double kappa = 1.0;
    std::string cache_dir;  // empty: CUBICL_CACHE_DIR or "."
    int threads = 0;        // 0: hardware default
    std::uint64_t seed = 0;
    std::string out_path;
    std::string out_format = "json";  // json | tsv

    std::string resolved_cache_dir() const;
    void validate() const;  // q odd, q = 2 mod 3, g even, schedule sane
};

RunConfig load_config(const std::string& path);                  // throws on parse errors
void apply_kv(RunConfig& cfg, const std::string& key, const std::string& value);
std::map<std::string, std::string> parse_kv_file(const std::string& path);

}  // namespace cubicl
