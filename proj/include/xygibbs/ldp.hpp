#pragma once

#include <span>
#include <vector>

#include "xygibbs/potential.hpp"
#include "xygibbs/types.hpp"

namespace xygibbs {

/// Rate function restricted to a cylinder: the infimum decomposes into
/// per-box terms m(f) - sup_{A_j} F.
struct RateBoxTerm {
    double sup_F;
    double contribution;  // m_f - sup_F
};

struct RateResult {
    double inf_I;
    std::vector<RateBoxTerm> per_box;
};

RateResult rate_on_cylinder(const PotentialFamily& family, const Cylinder& cylinder);

struct LdpRow {
    double beta;
    double log_mass_over_beta;  // (1/beta) log mu_beta(D)
    double neg_inf_I;
    double residual;
};

/// Verifies the exponential decay of cylinder masses against the rate
/// function across a beta schedule.
std::vector<LdpRow> ldp_residual(const PotentialFamily& family,
                                 const Cylinder& cylinder,
                                 std::span<const double> betas);

/// Partial sum over the first `terms` coordinates of sum_j (m_f - F(x_j)),
/// with the constant tail resolved analytically: zero when the tail value
/// maximizes F, otherwise the rate is infinite.
struct RateAtPoint {
    bool finite;
    double value;  // meaningful when finite
};

RateAtPoint rate_at_point(const PotentialFamily& family,
                          const EventuallyConstantPoint& x, std::size_t terms);

}  // namespace xygibbs
