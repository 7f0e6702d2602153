#include "xygibbs/ldp.hpp"

#include <cmath>

#include "xygibbs/detail/parallel.hpp"
#include "xygibbs/detail/peak_scan.hpp"
#include "xygibbs/detail/prefix_algebra.hpp"
#include "xygibbs/measure.hpp"
#include "xygibbs/quadrature.hpp"

namespace xygibbs {

namespace {

double global_max_F(const PotentialFamily& family) {
    const Interval dom = family.domain();
    BatchFn f = [&family](std::span<const double> xs, std::span<double> ys) {
        family.F_batch(xs, ys);
    };
    const auto scan = detail::scan_peaks(f, dom, 4097, 1e-12 * dom.width());
    if (!scan.all_finite)
        throw DomainError("rate function: potential not finite on the domain");
    return scan.max_value;
}

double box_sup_F(const PotentialFamily& family, const Interval& box) {
    BatchFn f = [&family](std::span<const double> xs, std::span<double> ys) {
        family.F_batch(xs, ys);
    };
    return detail::scan_peaks(f, box, 1025, 1e-12 * box.width()).max_value;
}

}  // namespace

RateResult rate_on_cylinder(const PotentialFamily& family,
                            const Cylinder& cylinder) {
    cylinder.validate_inside(family.domain());
    const double m_f = global_max_F(family);

    RateResult out;
    out.inf_I = 0.0;
    out.per_box.reserve(cylinder.boxes.size());
    for (const Interval& box : cylinder.boxes) {
        const double sup = box_sup_F(family, box);
        out.per_box.push_back(RateBoxTerm{sup, m_f - sup});
        out.inf_I += m_f - sup;
    }
    return out;
}

std::vector<LdpRow> ldp_residual(const PotentialFamily& family,
                                 const Cylinder& cylinder,
                                 std::span<const double> betas) {
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (!(betas[i] > 0.0))
            throw DomainError("ldp_residual: betas must be positive");
        if (i > 0 && !(betas[i] > betas[i - 1]))
            throw DomainError("ldp_residual: betas must be increasing");
    }
    const double neg_inf_i = -rate_on_cylinder(family, cylinder).inf_I;

    std::vector<LdpRow> rows(betas.size());
    detail::run_indexed(betas.size(), [&](std::size_t i) {
        const double beta = betas[i];
        const MarginalSpec spec = MarginalSpec::tilde(family, beta);
        const double col = cylinder_mass(spec, cylinder) / beta;
        rows[i] = LdpRow{beta, col, neg_inf_i, std::abs(col - neg_inf_i)};
    });
    return rows;
}

RateAtPoint rate_at_point(const PotentialFamily& family,
                          const EventuallyConstantPoint& x, std::size_t terms) {
    if (terms < x.prefix_size())
        throw DomainError("rate_at_point: terms must cover the prefix");
    family.require_in_domain(x);
    const double m_f = global_max_F(family);

    double sum = 0.0;
    for (std::size_t j = 1; j <= terms; ++j) sum += m_f - family.F(x.coord(j));

    const double tail_gap = m_f - family.F(x.tail_value());
    if (std::abs(tail_gap) > detail::peak_match_tol(m_f))
        return RateAtPoint{false, 0.0};
    return RateAtPoint{true, sum};
}

}  // namespace xygibbs
