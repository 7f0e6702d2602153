#include "xygibbs/report.hpp"

#include <cstdio>

namespace xygibbs {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += fmt17(row[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace xygibbs
