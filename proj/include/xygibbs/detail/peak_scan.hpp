#pragma once

#include <vector>

#include "xygibbs/quadrature.hpp"
#include "xygibbs/types.hpp"

namespace xygibbs::detail {

/// Grid scan plus golden-section refinement of every strict local maximum.
/// Shared by the partition-function pre-splitter, the maxima report and the
/// per-box sup computations.
struct PeakScanResult {
    double max_value;  // max over grid, endpoints and refined peaks
    double arg_max;
    std::vector<double> interior_peaks;   // ascending, refined
    std::vector<double> interior_values;  // f at the refined peaks
    bool all_finite = true;
};

PeakScanResult scan_peaks(const BatchFn& f, Interval range, int grid_points,
                          double xtol);

/// Golden-section maximization on [lo, hi] down to width xtol.
/// Returns the abscissa; *value receives f there.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, double* value);

}  // namespace xygibbs::detail
