#include "xygibbs/errors.hpp"

namespace xygibbs {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::config_parse: return "config_parse";
        case ErrorCode::domain: return "domain";
        case ErrorCode::divergence: return "divergence";
        case ErrorCode::accuracy: return "accuracy";
        case ErrorCode::non_concave_peak: return "non_concave_peak";
        case ErrorCode::endpoint_peak: return "endpoint_peak";
        case ErrorCode::unsupported_multiplicity: return "unsupported_multiplicity";
        case ErrorCode::degenerate_peak: return "degenerate_peak";
    }
    return "unknown";
}

}  // namespace xygibbs
