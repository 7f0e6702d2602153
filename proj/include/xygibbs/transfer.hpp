#pragma once

#include <functional>
#include <span>
#include <vector>

#include "xygibbs/potential.hpp"
#include "xygibbs/quadrature.hpp"
#include "xygibbs/types.hpp"

namespace xygibbs {

/// Leading eigendata of the transfer operator for the potential beta*f:
/// the eigenvalue in log scale plus the partition diagnostics behind it.
struct EigenData {
    PotentialFamily family;
    double beta;
    double log_lambda;
    PeakedIntegralResult partition;
};

EigenData compute_eigendata(const PotentialFamily& family, double beta,
                            double tol = 1e-10);

/// A test function of finitely many coordinates: phi(y_1, ..., y_depth).
struct TestFunction {
    std::size_t depth;
    std::function<double(std::span<const double>)> fn;
};

/// (L_{beta f} phi)(x) = integral over a of e^{beta f(a x)} phi(a, x_1, ...),
/// with f(a x) assembled from the factor/tail algebra of the family.
double apply_L(const PotentialFamily& family, double beta,
               const TestFunction& phi, const EventuallyConstantPoint& x,
               double tol = 1e-10);

/// log h_beta(x) = beta * u(x), exactly.
double eval_h_log(const PotentialFamily& family, double beta,
                  const EventuallyConstantPoint& x);

/// Density of the equilibrium marginal: exp(beta F(a) - log lambda_beta).
/// Equals the normalized kernel, which depends only on the first coordinate.
double normalized_density(const EigenData& eig, double a);
double normalized_density(const PotentialFamily& family, double beta, double a,
                          double tol = 1e-10);

/// |log (L h_beta)(x) - log lambda - log h_beta(x)|, the eigenrelation
/// residual, with every ingredient computed independently.
double eigen_residual(const EigenData& eig, const EventuallyConstantPoint& x,
                      double tol = 1e-10);

/// |integral of L_{tilde f}(phi) d mu - integral of phi d mu| for a product
/// test function phi(x) = prod_k phi_k(x_k); both sides reduce to 1-D
/// quadratures against the marginal density.
double dual_fixed_point_residual(
    const EigenData& eig,
    const std::vector<std::function<double(double)>>& phi_factors,
    double tol = 1e-10);

}  // namespace xygibbs
