#pragma once

#include <string>
#include <vector>

namespace xygibbs {

/// Shortest fixed rendering that round-trips doubles: 17 significant digits.
std::string fmt17(double v);

/// CSV with a header line and one row per entry; '\n' line endings, values
/// rendered by fmt17. Deterministic byte-for-byte for identical inputs.
std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

}  // namespace xygibbs
