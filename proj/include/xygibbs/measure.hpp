#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "xygibbs/potential.hpp"
#include "xygibbs/transfer.hpp"
#include "xygibbs/types.hpp"

namespace xygibbs {

/// One-dimensional marginal of the product eigenmeasures. The tilde kind is
/// the equilibrium marginal with density e^{beta F}/lambda_beta; the plain
/// kind is the (unnormalized) eigenmeasure factor with log-density
/// beta * sum_{i<=n} f_i(a) - log lambda_beta.
class MarginalSpec {
  public:
    enum class Kind { eigen_tilde, eigen_plain };

    static MarginalSpec tilde(const PotentialFamily& family, double beta,
                              double tol = 1e-10);
    static MarginalSpec plain(const PotentialFamily& family, double beta,
                              std::size_t index, double tol = 1e-10);

    Kind kind() const;
    double beta() const;
    std::size_t index() const;  // the n of the plain kind
    const PotentialFamily& family() const;
    const EigenData& eigen() const;

    double log_density(double a) const;
    void log_density_batch(std::span<const double> a, std::span<double> out) const;
    /// Refined peak locations of the density exponent (for pre-splitting).
    const std::vector<double>& density_peaks() const;

    /// Inverse-CDF sampler on a cached 2^12-cell cumulative table. The table
    /// is built once, on first use, under a guard; draws are deterministic
    /// given the seed.
    std::vector<double> sample(std::uint64_t seed, std::size_t count) const;

  private:
    struct State;
    explicit MarginalSpec(std::shared_ptr<State> state);
    std::shared_ptr<State> state_;
};

/// log mu(D) = sum_j log integral_{A_j} density, for the tilde marginal.
double cylinder_mass(const MarginalSpec& spec, const Cylinder& cylinder);

/// max over probes of |log g_tilde(a) - beta T_j(a) - log density_{mu_j}(a)|;
/// zero in exact arithmetic by the factor/tail telescoping.
double marginal_relation_residual(const PotentialFamily& family, double beta,
                                  std::size_t j, std::span<const double> probes,
                                  double tol = 1e-10);

std::vector<double> sample_marginal(const MarginalSpec& spec, std::uint64_t seed,
                                    std::size_t count);

/// Entropy of the product equilibrium measure: -integral of g log g over the
/// domain; equals log lambda_beta - beta * mean_f(beta) by the explicit form.
double entropy(const PotentialFamily& family, double beta, double tol = 1e-11);

/// integral of F against the equilibrium marginal density.
double mean_f(const PotentialFamily& family, double beta, double tol = 1e-11);

/// |log lambda - entropy - beta * mean_f| with the three ingredients
/// produced by independently-run quadratures.
double variational_residual(const PotentialFamily& family, double beta);

}  // namespace xygibbs
