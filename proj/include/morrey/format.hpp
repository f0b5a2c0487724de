#pragma once

// Output formatting shared by the CLI and the report writers. All floating
// point output goes through twelve significant digits so runs are
// byte-comparable across machines.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace morrey {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Round to the printed precision so JSON serialization emits the same
// digits the text formatter would.
inline double sig12(double v) {
    return std::strtod(fmt_double(v).c_str(), nullptr);
}

inline std::string csv_escape(const std::string& field) {
    bool needs_quote = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quote = true;
            break;
        }
    if (!needs_quote) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) os << ',';
        os << csv_escape(fields[k]);
    }
    os << '\n';
}

}  // namespace morrey
