#pragma once

#include <span>
#include <vector>

#include "xygibbs/measure.hpp"
#include "xygibbs/potential.hpp"
#include "xygibbs/types.hpp"

namespace xygibbs {

struct Peak {
    double location;
    double second_derivative;  // analytic when the family declares one,
                               // else Richardson-extrapolated differences
    bool interior;
};

/// m(f) = max_a F(a) plus every location attaining it (within the matching
/// tolerance), from a 4097-point scan with golden-section refinement.
struct MaximaReport {
    double m_f;
    std::vector<Peak> peaks;  // ascending by location, at most two
};

/// Throws unsupported_multiplicity when more than two maxima match.
MaximaReport find_maxima(const PotentialFamily& family, double tol = 1e-10);

/// max over a refinement grid of |[f(ax) + u(ax) - u(x)] - F(a)|, combined
/// with the deviation of the bracket's own maximum from m(f).
double calibration_residual(const PotentialFamily& family,
                            const EventuallyConstantPoint& x);

/// Zero-temperature limit weights of the equilibrium measures.
struct SelectionReport {
    MaximaReport report;
    std::vector<double> weights;  // one per peak, summing to 1
};

/// One interior peak selects the point mass there; two interior peaks split
/// as p_1/p_2 = sqrt(F''(a_2)/F''(a_1)). Endpoint or degenerate peaks are
/// rejected.
SelectionReport selection_weights(const MaximaReport& report);

struct SweepRow {
    double beta;
    double log_mass;
    double pressure_over_beta;  // (1/beta) log lambda_beta
};

/// Cylinder masses and pressure across a beta schedule; rows may be
/// computed in parallel (XYGIBBS_THREADS) with output order fixed by the
/// input list.
std::vector<SweepRow> beta_sweep(const PotentialFamily& family,
                                 const Cylinder& cylinder,
                                 std::span<const double> betas);

}  // namespace xygibbs
