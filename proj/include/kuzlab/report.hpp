#pragma once
// Check reports: one row per verification (name, value, reference,
// tolerance, pass), emitted as CSV or JSON with 15 significant digits.

#include "kuzlab/core.hpp"

#include <string>
#include <vector>

namespace kuzlab {

struct CheckRow {
    std::string name;
    real value = 0;
    real reference = 0;
    real tolerance = 0;
    bool pass = false;
};

struct Report {
    std::vector<CheckRow> rows;

    void add(const std::string& name, real value, real reference, real tolerance);
    bool all_pass() const;

    // header 'name,value,reference,tolerance,pass' then one row per check
    std::string to_csv() const;
    // {"rows":[{...}],"all_pass":bool}
    std::string to_json() const;
};

// machine-readable error object for --format json channels
std::string error_json(const std::string& kind, const std::string& message);

} // namespace kuzlab
