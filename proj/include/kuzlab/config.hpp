#pragma once
// Run configuration: defaults, flat key=value files, KUZLAB_* environment
// overrides. CLI flags are applied on top by the command-line tool.

#include "kuzlab/core.hpp"
#include "kuzlab/errors.hpp"

#include <string>

namespace kuzlab {

struct RunConfig {
    real abs_tol = 1e-13L;
    real rel_tol = 1e-11L;
    int worker_count = 1;
    u64 modulus_cap = 20000;
    real delta = 0.1L;       // AFE window widening
    real C_smoothing = 10;   // sharpness constant, h = C log K
    std::string output_format = "csv"; // csv | json
    u64 seed = 1;            // property-test sampling only

    void validate() const; // SchemaError on out-of-range fields
};

// parses a flat key=value file ('#' comments, blank lines allowed);
// unknown keys raise SchemaError, malformed lines ParseError
RunConfig load_config(const std::string& path);

// applies KUZLAB_<UPPER_SNAKE_KEY> environment overrides on top of cfg
void apply_env_overrides(RunConfig& cfg);

} // namespace kuzlab
