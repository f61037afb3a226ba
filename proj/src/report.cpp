#include "kuzlab/report.hpp"

#include "kuzlab/dataset.hpp" // fmt15

#include <cmath>
#include <cstdio>

namespace kuzlab {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out;
}

} // namespace

void Report::add(const std::string& name, real value, real reference,
                 real tolerance) {
    rows.push_back({name, value, reference, tolerance,
                    std::fabs(value - reference) <= tolerance});
}

bool Report::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

std::string Report::to_csv() const {
    std::string out = "name,value,reference,tolerance,pass\n";
    for (const auto& r : rows) {
        out += r.name;
        out += ',';
        out += fmt15(r.value);
        out += ',';
        out += fmt15(r.reference);
        out += ',';
        out += fmt15(r.tolerance);
        out += ',';
        out += r.pass ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string Report::to_json() const {
    std::string out = "{\"rows\":[";
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (i) out += ',';
        out += "{\"name\":\"" + json_escape(r.name) + "\"";
        out += ",\"value\":" + fmt15(r.value);
        out += ",\"reference\":" + fmt15(r.reference);
        out += ",\"tolerance\":" + fmt15(r.tolerance);
        out += ",\"pass\":";
        out += r.pass ? "true" : "false";
        out += '}';
    }
    out += "],\"all_pass\":";
    out += all_pass() ? "true" : "false";
    out += '}';
    return out;
}

std::string error_json(const std::string& kind, const std::string& message) {
    return "{\"error\":\"" + json_escape(kind) + "\",\"message\":\""
           + json_escape(message) + "\"}";
}

} // namespace kuzlab
