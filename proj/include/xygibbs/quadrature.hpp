#pragma once

#include <functional>
#include <span>
#include <vector>

#include "xygibbs/errors.hpp"
#include "xygibbs/potential.hpp"
#include "xygibbs/types.hpp"

namespace xygibbs {

/// Integrand evaluated on a batch of abscissae (one panel's nodes at a time).
using BatchFn = std::function<void(std::span<const double>, std::span<double>)>;

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Subdivision budget exhausted; carries the best estimate reached.
class AccuracyError : public XygibbsError {
  public:
    AccuracyError(const std::string& what, QuadratureResult best_so_far)
        : XygibbsError(ErrorCode::accuracy, what), best(best_so_far) {}
    QuadratureResult best;
};

struct QuadratureOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    std::size_t max_panels = 4096;
    /// Interior points where panel boundaries are forced (peak pre-splitting).
    std::vector<double> split_points;
};

/// Adaptive bisection with a 15-point Kronrod / 7-point Gauss pair per
/// panel. Deterministic for fixed inputs: the worst panel is selected by
/// (error, position) and the final sums run over panels sorted by position.
QuadratureResult integrate(const BatchFn& fn, Interval range,
                           const QuadratureOptions& opt = {});

/// Convenience overload for plain scalar integrands; tol is absolute.
QuadratureResult integrate(const std::function<double(double)>& fn,
                           Interval range, double tol);

/// log of integral_domain e^{beta F}, computed as beta*M + log integral of
/// e^{beta(F - M)} with M the refined maximum of F.
struct PeakedIntegralResult {
    double log_value = 0.0;
    double shift = 0.0;  // the subtracted maximum M
    QuadratureResult raw;
};

PeakedIntegralResult log_partition(const PotentialFamily& family, double beta,
                                   double tol = 1e-10);

/// Leading-order approximation of log integral e^{beta F} at an interior
/// nondegenerate maximum: beta*F_at_peak + (1/2) log(-2 pi / (beta F'')).
double laplace_approx(double F_at_peak, double F2_at_peak, double beta);

}  // namespace xygibbs
