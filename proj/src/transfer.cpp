#include "xygibbs/transfer.hpp"

#include <cmath>

#include "xygibbs/detail/peak_scan.hpp"
#include "xygibbs/detail/prefix_algebra.hpp"
#include "xygibbs/kernels.hpp"

namespace xygibbs {

EigenData compute_eigendata(const PotentialFamily& family, double beta,
                            double tol) {
    PeakedIntegralResult part = log_partition(family, beta, tol);
    return EigenData{family, beta, part.log_value, part};
}

double apply_L(const PotentialFamily& family, double beta,
               const TestFunction& phi, const EventuallyConstantPoint& x,
               double tol) {
    family.require_in_domain(x);
    const Interval dom = family.domain();
    const double cf = detail::prefix_constant_f(family, x);

    BatchFn f1 = [&family](std::span<const double> xs, std::span<double> ys) {
        family.factor_batch(1, xs, ys);
    };
    const auto scan = detail::scan_peaks(f1, dom, 1025, 1e-12 * dom.width());
    const double shift = scan.max_value;

    std::vector<double> args(std::max<std::size_t>(phi.depth, 1));
    BatchFn integrand = [&](std::span<const double> xs, std::span<double> ys) {
        std::vector<double> f(xs.size());
        family.factor_batch(1, xs, std::span<double>(f));
        kernels::active().exp_scaled(f.data(), ys.data(), xs.size(), beta, shift);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            args[0] = xs[i];
            for (std::size_t d = 1; d < phi.depth; ++d) args[d] = x.coord(d);
            ys[i] *= phi.fn(std::span<const double>(args.data(), phi.depth));
        }
    };

    QuadratureOptions opt;
    opt.rel_tol = tol;
    opt.abs_tol = 1e-14;
    opt.split_points = scan.interior_peaks;
    const QuadratureResult raw = integrate(integrand, dom, opt);
    return std::exp(beta * (cf + shift)) * raw.value;
}

double eval_h_log(const PotentialFamily& family, double beta,
                  const EventuallyConstantPoint& x) {
    return beta * eval_u(family, x).value;
}

double normalized_density(const EigenData& eig, double a) {
    eig.family.require_in_domain(a);
    return std::exp(eig.beta * eig.family.F(a) - eig.log_lambda);
}

double normalized_density(const PotentialFamily& family, double beta, double a,
                          double tol) {
    return normalized_density(compute_eigendata(family, beta, tol), a);
}

double eigen_residual(const EigenData& eig, const EventuallyConstantPoint& x,
                      double tol) {
    const PotentialFamily& fam = eig.family;
    fam.require_in_domain(x);
    const double beta = eig.beta;

    const double u_x = eval_u(fam, x).value;
    const double cfu = detail::prefix_constant_fu(fam, x);

    BatchFn fu = detail::first_coordinate_fu(fam);
    const Interval dom = fam.domain();
    const auto scan = detail::scan_peaks(fu, dom, 4097, 1e-12 * dom.width());
    const double shift = scan.max_value;

    BatchFn integrand = [&](std::span<const double> xs, std::span<double> ys) {
        std::vector<double> f(xs.size());
        fu(xs, std::span<double>(f));
        kernels::active().exp_scaled(f.data(), ys.data(), xs.size(), beta, shift);
    };
    QuadratureOptions opt;
    opt.rel_tol = tol;
    opt.split_points = scan.interior_peaks;
    const QuadratureResult raw = integrate(integrand, dom, opt);

    const double lhs_log = beta * (cfu + shift) + std::log(raw.value);
    const double rhs_log = eig.log_lambda + beta * u_x;
    return std::abs(lhs_log - rhs_log);
}

double dual_fixed_point_residual(
    const EigenData& eig,
    const std::vector<std::function<double(double)>>& phi_factors,
    double tol) {
    if (phi_factors.empty())
        throw DomainError("dual_fixed_point_residual: needs >= 1 factor");
    const PotentialFamily& fam = eig.family;
    const Interval dom = fam.domain();
    const double beta = eig.beta;
    const double log_lambda = eig.log_lambda;

    BatchFn f_batch = [&fam](std::span<const double> xs, std::span<double> ys) {
        fam.F_batch(xs, ys);
    };
    const auto scan = detail::scan_peaks(f_batch, dom, 4097, 1e-12 * dom.width());

    QuadratureOptions opt;
    opt.rel_tol = tol;
    opt.abs_tol = 1e-13;
    opt.split_points = scan.interior_peaks;

    // normalized marginal density against a 1-D test function
    auto integral_against_density = [&](const std::function<double(double)>& g) {
        BatchFn integrand = [&](std::span<const double> xs, std::span<double> ys) {
            std::vector<double> f(xs.size());
            fam.F_batch(xs, std::span<double>(f));
            kernels::active().exp_scaled(f.data(), ys.data(), xs.size(), beta,
                                         log_lambda / (beta != 0.0 ? beta : 1.0));
            if (beta == 0.0) {
                // exp(0*(F-s)) = 1; normalize explicitly
                for (std::size_t i = 0; i < ys.size(); ++i)
                    ys[i] = std::exp(-log_lambda);
            }
            for (std::size_t i = 0; i < xs.size(); ++i) ys[i] *= g(xs[i]);
        };
        return integrate(integrand, dom, opt).value;
    };

    // right side: prod_k integral of phi_k against the marginal density
    double rhs = 1.0;
    for (const auto& phi_k : phi_factors) rhs *= integral_against_density(phi_k);

    // left side: the operator applied with the normalized kernel assembled
    // from the factor/tail route, then integrated against the product
    // measure; factors beyond the second reduce to the same 1-D integrals.
    const double c0 = dom.midpoint();
    BatchFn fu = detail::first_coordinate_fu(fam);

    auto inner_A = [&](double x1) {
        const EventuallyConstantPoint x({x1}, c0);
        const double cfu = detail::prefix_constant_fu(fam, x);
        const double u_x = eval_u(fam, x).value;
        BatchFn integrand = [&](std::span<const double> xs, std::span<double> ys) {
            std::vector<double> f(xs.size());
            fu(xs, std::span<double>(f));
            for (std::size_t i = 0; i < f.size(); ++i)
                f[i] = beta * (f[i] + cfu - u_x) - log_lambda;
            kernels::active().exp_scaled(f.data(), ys.data(), xs.size(), 1.0, 0.0);
            for (std::size_t i = 0; i < xs.size(); ++i)
                ys[i] *= phi_factors[0](xs[i]);
        };
        return integrate(integrand, dom, opt).value;
    };

    const std::function<double(double)> outer = [&](double t) {
        double v = inner_A(t);
        if (phi_factors.size() >= 2) v *= phi_factors[1](t);
        return v;
    };
    double lhs = integral_against_density(outer);
    for (std::size_t k = 2; k < phi_factors.size(); ++k)
        lhs *= integral_against_density(phi_factors[k]);

    return std::abs(lhs - rhs);
}

}  // namespace xygibbs
