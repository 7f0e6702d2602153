#pragma once

#include <span>
#include <vector>

#include "xygibbs/potential.hpp"
#include "xygibbs/quadrature.hpp"
#include "xygibbs/types.hpp"

namespace xygibbs::detail {

// For the point a x = (a, x_1, ..., x_n; c) the sums f(a x) and u(a x)
// split into a part depending on the integration variable a and a constant:
//   f(a x) = f_1(a) + sum_{j=2}^{n+1} f_j(x_{j-1}) + T_{n+1}(c)
//   u(a x) = T_1(a) + sum_{j=2}^{n+1} T_j(x_{j-1}) + sum_{j>n+1} T_j(c)

inline double prefix_constant_f(const PotentialFamily& fam,
                                const EventuallyConstantPoint& x) {
    const std::size_t n = x.prefix_size();
    double c = 0.0;
    for (std::size_t j = 2; j <= n + 1; ++j) c += fam.factor(j, x.coord(j - 1));
    c += fam.tail(n + 1, x.tail_value()).value;
    return c;
}

inline double prefix_constant_fu(const PotentialFamily& fam,
                                 const EventuallyConstantPoint& x) {
    const std::size_t n = x.prefix_size();
    double c = 0.0;
    for (std::size_t j = 2; j <= n + 1; ++j) {
        const double xj = x.coord(j - 1);
        c += fam.factor(j, xj);
        c += fam.tail(j, xj).value;
    }
    c += fam.tail(n + 1, x.tail_value()).value;
    c += fam.double_tail(n + 1, x.tail_value()).value;
    return c;
}

/// Batch a -> f_1(a) + T_1(a); mathematically F(a), but assembled through
/// the factor/tail route that the eigenrelation and calibration exercise.
inline BatchFn first_coordinate_fu(PotentialFamily fam) {
    return [fam](std::span<const double> xs, std::span<double> ys) {
        std::vector<double> t(xs.size());
        fam.factor_batch(1, xs, ys);
        fam.tail_batch(1, xs, std::span<double>(t));
        for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += t[i];
    };
}

/// Matching tolerance for "attains the maximum": peaks with
/// F >= m_f - peak_match_tol(m_f) count as maximizing.
inline double peak_match_tol(double m_f) {
    return 1e-9 * std::max(1.0, std::abs(m_f));
}

}  // namespace xygibbs::detail
