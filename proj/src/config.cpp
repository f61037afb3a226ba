#include "kuzlab/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

namespace kuzlab {

void RunConfig::validate() const {
    if (!(abs_tol > 0)) throw SchemaError("abs_tol: must be positive");
    if (!(rel_tol >= 0)) throw SchemaError("rel_tol: must be nonnegative");
    if (worker_count < 1) throw SchemaError("worker_count: must be at least 1");
    if (modulus_cap < 1) throw SchemaError("modulus_cap: must be at least 1");
    if (!(delta >= 0)) throw SchemaError("delta: must be nonnegative");
    if (!(C_smoothing > 0)) throw SchemaError("C_smoothing: must be positive");
    if (output_format != "csv" && output_format != "json")
        throw SchemaError("output_format: must be csv or json");
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

real parse_real(const std::string& v, const std::string& where) {
    char* end = nullptr;
    real x = std::strtold(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ParseError(where + ": cannot parse '" + v + "' as a number");
    return x;
}

long long parse_int(const std::string& v, const std::string& where) {
    char* end = nullptr;
    long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ParseError(where + ": cannot parse '" + v + "' as an integer");
    return x;
}

u64 parse_u64(const std::string& v, const std::string& where) {
    long long x = parse_int(v, where);
    if (x < 0) throw ParseError(where + ": value must be nonnegative");
    return static_cast<u64>(x);
}

// single assignment point shared by file parsing and environment overrides
void set_key(RunConfig& cfg, const std::string& key, const std::string& value,
             const std::string& where) {
    if (key == "abs_tol") cfg.abs_tol = parse_real(value, where);
    else if (key == "rel_tol") cfg.rel_tol = parse_real(value, where);
    else if (key == "worker_count")
        cfg.worker_count = static_cast<int>(parse_int(value, where));
    else if (key == "modulus_cap") cfg.modulus_cap = parse_u64(value, where);
    else if (key == "delta") cfg.delta = parse_real(value, where);
    else if (key == "C_smoothing") cfg.C_smoothing = parse_real(value, where);
    else if (key == "output_format") cfg.output_format = value;
    else if (key == "seed") cfg.seed = parse_u64(value, where);
    else throw SchemaError(where + ": unknown config key '" + key + "'");
}

constexpr const char* kKeys[] = {
    "abs_tol", "rel_tol", "worker_count", "modulus_cap",
    "delta",   "C_smoothing", "output_format", "seed",
};

} // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);

    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::string where = path + " line " + std::to_string(lineno);
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError(where + ": expected key = value");
        set_key(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), where);
    }
    cfg.validate();
    return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
    for (const char* key : kKeys) {
        std::string env = "KUZLAB_";
        for (const char* p = key; *p; ++p)
            env += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
        if (const char* v = std::getenv(env.c_str()))
            set_key(cfg, key, v, env);
    }
}

} // namespace kuzlab
