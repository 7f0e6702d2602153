#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xygibbs/errors.hpp"
#include "xygibbs/types.hpp"

namespace xygibbs {

struct ValueWithError {
    double value = 0.0;
    double abs_error = 0.0;
};

namespace detail {
class FamilyImpl;
}

/// A product-type potential f(x) = sum_j f_j(x_j) with certified tail sums
/// T_j(a) = sum_{i>j} f_i(a) and double tails sum_{j>m} T_j(c). Immutable
/// after construction; all evaluators are pure.
class PotentialFamily {
  public:
    static PotentialFamily zero(Interval domain = Interval(0.0, 1.0));
    static PotentialFamily example1(Interval domain = Interval(-0.5, 0.5));
    static PotentialFamily polylog(double gamma, Interval domain = Interval(-1.0, 1.0));
    /// Single-coordinate family: f_1 the given polynomial (coefficients
    /// lowest degree first), f_i = 0 for i >= 2.
    static PotentialFamily single(std::vector<double> coeffs,
                                  Interval domain = Interval(-1.0, 1.0));

    /// Parses the family configuration object; see the CLI docs for the
    /// schema. Throws ConfigError on malformed input.
    static PotentialFamily from_config_text(const std::string& json_text);

    const Interval& domain() const;
    const std::string& name() const;
    /// Declared absolute tolerance of every evaluator.
    double tolerance() const;
    /// Resolved configuration echo as a JSON object string.
    std::string config_echo() const;

    double factor(std::size_t i, double a) const;  // f_i(a), i >= 1
    double F(double a) const;                      // sum_i f_i(a), domain-checked
    /// Batch F without per-point domain checks; callers guarantee range.
    void F_batch(std::span<const double> a, std::span<double> out) const;
    void factor_batch(std::size_t i, std::span<const double> a,
                      std::span<double> out) const;
    void tail_batch(std::size_t j, std::span<const double> a,
                    std::span<double> out) const;

    ValueWithError tail(std::size_t j, double a) const;        // T_j(a)
    ValueWithError double_tail(std::size_t m, double c) const;  // sum_{j>m} T_j(c)

    std::optional<double> lipschitz_bound(std::size_t i) const;  // c_i >= Lip(f_i)
    std::optional<double> d1(double a) const;  // F'(a) when analytic
    std::optional<double> d2(double a) const;  // F''(a) when analytic

    /// Upper bound on sup_a |T_j(a)| over the domain.
    double tail_sup(std::size_t j) const;
    /// Certified bound on sum_{j>=1} sup_a |T_j(a)|, when finite.
    std::optional<double> tail_sup_total() const;

    void require_in_domain(double a) const;
    void require_in_domain(const EventuallyConstantPoint& x) const;

  private:
    explicit PotentialFamily(std::shared_ptr<const detail::FamilyImpl> impl);
    std::shared_ptr<const detail::FamilyImpl> impl_;
};

/// F(a) = f(a, a, a, ...), with the family's declared tolerance.
double eval_F(const PotentialFamily& family, double a);

/// f(x) = sum_{j<=n} f_j(x_j) + T_n(c) for the eventually constant point x.
ValueWithError eval_f(const PotentialFamily& family,
                      const EventuallyConstantPoint& x);

/// u(x) = sum_{j<=n} T_j(x_j) + sum_{j>n} T_j(c); the calibrated subaction.
ValueWithError eval_u(const PotentialFamily& family,
                      const EventuallyConstantPoint& x);

/// Certification that the summability hypothesis behind the explicit
/// eigendata holds: either every Lipschitz bound decays geometrically
/// (c_i <= K 2^-i over the probe horizon) or the uniform tail bounds are
/// summable, and u is finite at the probe point.
struct Prop22Report {
    enum class Route { geometric, finiteness, none };
    bool ok = false;
    Route route = Route::none;
    double K = 0.0;      // geometric route: observed sup_i c_i 2^i
    std::string reason;  // failure reason when !ok
};

Prop22Report check_prop22(const PotentialFamily& family,
                          const EventuallyConstantPoint& xbar);

}  // namespace xygibbs
