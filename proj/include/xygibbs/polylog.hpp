#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace xygibbs {

/// Real polylogarithm Li_s(a) on a in [-1, 1], s > 0.
///
/// Away from the edges the truncated power series evaluates in one batched
/// Horner pass. On (0.875, 1] the series converges too slowly, so the
/// evaluator switches to the expansion of Li_s(e^mu) in powers of
/// mu = log(a) with zeta-function coefficients, which needs ~17 terms; on
/// [-1, -0.875) the square identity Li_s(a) = 2^(1-s) Li_s(a^2) - Li_s(-a)
/// reduces to the positive branch. Divergence (s <= 1 at a = 1) is reported
/// as +infinity.
class PolylogEvaluator {
  public:
    explicit PolylogEvaluator(double order);

    double order() const { return s_; }

    double eval1(double a) const;
    void eval(std::span<const double> a, std::span<double> out) const;

    /// Certified absolute truncation bound of the series path; the edge
    /// expansion is at least this accurate at double precision.
    double truncation_bound() const { return 1e-13; }

  private:
    double edge_eval(double a) const;
    double edge_eval_positive(double a) const;

    double s_;
    bool integer_order_ = false;
    int n_ = 0;              // the integer order when integer_order_
    double harmonic_ = 0.0;  // H_{n-1}
    std::vector<double> zeta_;         // zeta(s - k), k = 0..kZetaTerms-1
    std::vector<double> series_;       // Horner coefficients, highest first
    static constexpr int kZetaTerms = 17;
    static constexpr int kSeriesTerms = 292;
    static constexpr double kEdge = 0.875;
};

}  // namespace xygibbs
