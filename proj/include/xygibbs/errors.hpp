#pragma once

#include <stdexcept>
#include <string>

namespace xygibbs {

/// Machine-readable failure categories. The CLI maps these to exit codes.
enum class ErrorCode {
    config_parse,              // bad config / flags            -> exit 2
    domain,                    // argument outside the domain   -> exit 3
    divergence,                // divergent tail / double tail  -> exit 3
    accuracy,                  // quadrature budget exhausted   -> exit 3
    non_concave_peak,          // Laplace needs F'' < 0         -> exit 4
    endpoint_peak,             // selection needs interior max  -> exit 4
    unsupported_multiplicity,  // more than two matched maxima  -> exit 4
    degenerate_peak,           // F'' >= 0 at a matched maximum -> exit 4
};

const char* error_code_name(ErrorCode code);

class XygibbsError : public std::runtime_error {
  public:
    XygibbsError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

class DomainError : public XygibbsError {
  public:
    explicit DomainError(const std::string& what) : XygibbsError(ErrorCode::domain, what) {}
};

class DivergenceError : public XygibbsError {
  public:
    explicit DivergenceError(const std::string& what)
        : XygibbsError(ErrorCode::divergence, what) {}
};

class ConfigError : public XygibbsError {
  public:
    explicit ConfigError(const std::string& what)
        : XygibbsError(ErrorCode::config_parse, what) {}
};

}  // namespace xygibbs
