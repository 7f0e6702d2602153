#include "xygibbs/ergodic.hpp"

#include <algorithm>
#include <cmath>

#include "xygibbs/detail/parallel.hpp"
#include "xygibbs/detail/peak_scan.hpp"
#include "xygibbs/detail/prefix_algebra.hpp"
#include "xygibbs/quadrature.hpp"

namespace xygibbs {

namespace {

// Richardson-extrapolated central second difference: two steps h and h/2,
// combined to cancel the h^2 term. Used when the family has no analytic F''.
double second_derivative_fd(const PotentialFamily& fam, double a) {
    const Interval dom = fam.domain();
    double h = 1e-4 * dom.width();
    h = std::min({h, a - dom.lo, dom.hi - a});
    if (h <= 0.0) h = 1e-4 * dom.width();
    auto d2h = [&](double step) {
        return (fam.F(a + step) - 2.0 * fam.F(a) + fam.F(a - step)) /
               (step * step);
    };
    const double coarse = d2h(h);
    const double fine = d2h(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

double second_derivative_oneside(const PotentialFamily& fam, double a) {
    const Interval dom = fam.domain();
    const double h = 1e-4 * dom.width();
    const double dir = (a - dom.lo < dom.hi - a) ? 1.0 : -1.0;
    return (fam.F(a) - 2.0 * fam.F(a + dir * h) + fam.F(a + 2.0 * dir * h)) /
           (h * h);
}

}  // namespace

MaximaReport find_maxima(const PotentialFamily& family, double tol) {
    if (!(tol > 0.0)) throw DomainError("find_maxima: tol must be > 0");
    const Interval dom = family.domain();
    BatchFn f_batch = [&family](std::span<const double> xs, std::span<double> ys) {
        family.F_batch(xs, ys);
    };
    const auto scan = detail::scan_peaks(f_batch, dom, 4097, tol);
    if (!scan.all_finite)
        throw DomainError("find_maxima: potential not finite on the domain");

    struct Candidate {
        double location, value;
    };
    std::vector<Candidate> candidates;
    for (std::size_t k = 0; k < scan.interior_peaks.size(); ++k)
        candidates.push_back({scan.interior_peaks[k], scan.interior_values[k]});
    candidates.push_back({dom.lo, family.F(dom.lo)});
    candidates.push_back({dom.hi, family.F(dom.hi)});

    const double match_tol = detail::peak_match_tol(scan.max_value);
    std::vector<Candidate> matched;
    for (const Candidate& c : candidates) {
        if (c.value >= scan.max_value - match_tol) matched.push_back(c);
    }
    std::sort(matched.begin(), matched.end(),
              [](const Candidate& a, const Candidate& b) {
                  return a.location < b.location;
              });

    // merge candidates closer than the separation threshold
    const double sep = 1e-7 * dom.width();
    std::vector<Candidate> distinct;
    for (const Candidate& c : matched) {
        if (!distinct.empty() && c.location - distinct.back().location < sep) {
            if (c.value > distinct.back().value) distinct.back() = c;
        } else {
            distinct.push_back(c);
        }
    }

    if (distinct.size() > 2)
        throw XygibbsError(ErrorCode::unsupported_multiplicity,
                           "find_maxima: more than two maximizing locations");

    MaximaReport report;
    report.m_f = scan.max_value;
    const double edge = 1e-9 * dom.width();
    for (const Candidate& c : distinct) {
        Peak p;
        p.location = c.location;
        p.interior = (c.location - dom.lo > edge) && (dom.hi - c.location > edge);
        if (p.interior) {
            const auto analytic = family.d2(c.location);
            p.second_derivative =
                analytic ? *analytic : second_derivative_fd(family, c.location);
        } else {
            p.second_derivative = second_derivative_oneside(family, c.location);
        }
        report.peaks.push_back(p);
    }
    return report;
}

double calibration_residual(const PotentialFamily& family,
                            const EventuallyConstantPoint& x) {
    family.require_in_domain(x);
    const Interval dom = family.domain();
    const double u_x = eval_u(family, x).value;
    const double cfu = detail::prefix_constant_fu(family, x);

    BatchFn fu = detail::first_coordinate_fu(family);
    BatchFn bracket = [fu, cfu, u_x](std::span<const double> xs,
                                     std::span<double> ys) {
        fu(xs, ys);
        for (double& v : ys) v += cfu - u_x;
    };

    const int n = 4097;
    std::vector<double> xs(n), lhs(n), rhs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = dom.lo + dom.width() * static_cast<double>(i) / (n - 1);
    xs[n - 1] = dom.hi;
    bracket(xs, std::span<double>(lhs));
    family.F_batch(xs, std::span<double>(rhs));
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));

    // the maximum of the bracket over a must reproduce m(f)
    const auto bracket_scan =
        detail::scan_peaks(bracket, dom, 4097, 1e-12 * dom.width());
    const double m_f = find_maxima(family).m_f;
    return std::max(worst, std::abs(bracket_scan.max_value - m_f));
}

SelectionReport selection_weights(const MaximaReport& report) {
    if (report.peaks.empty() || report.peaks.size() > 2)
        throw XygibbsError(ErrorCode::unsupported_multiplicity,
                           "selection_weights: needs one or two peaks");
    for (const Peak& p : report.peaks) {
        if (!p.interior)
            throw XygibbsError(
                ErrorCode::endpoint_peak,
                "selection_weights: maximum at a domain endpoint is outside "
                "the asymptotic regime");
        if (!(p.second_derivative < 0.0))
            throw XygibbsError(ErrorCode::degenerate_peak,
                               "selection_weights: needs F'' < 0 at every peak");
    }

    SelectionReport out;
    out.report = report;
    if (report.peaks.size() == 1) {
        out.weights = {1.0};
        return out;
    }
    const double s1 = std::sqrt(-report.peaks[0].second_derivative);
    const double s2 = std::sqrt(-report.peaks[1].second_derivative);
    out.weights = {s2 / (s1 + s2), s1 / (s1 + s2)};
    return out;
}

std::vector<SweepRow> beta_sweep(const PotentialFamily& family,
                                 const Cylinder& cylinder,
                                 std::span<const double> betas) {
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (!(betas[i] > 0.0))
            throw DomainError("beta_sweep: betas must be positive");
        if (i > 0 && !(betas[i] > betas[i - 1]))
            throw DomainError("beta_sweep: betas must be increasing");
    }
    cylinder.validate_inside(family.domain());

    std::vector<SweepRow> rows(betas.size());
    detail::run_indexed(betas.size(), [&](std::size_t i) {
        const double beta = betas[i];
        const MarginalSpec spec = MarginalSpec::tilde(family, beta);
        rows[i] = SweepRow{beta, cylinder_mass(spec, cylinder),
                           spec.eigen().log_lambda / beta};
    });
    return rows;
}

}  // namespace xygibbs
