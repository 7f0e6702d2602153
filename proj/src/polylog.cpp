#include "xygibbs/polylog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "xygibbs/kernels.hpp"

namespace xygibbs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530942;
}  // namespace

PolylogEvaluator::PolylogEvaluator(double order) : s_(order) {
    if (!(order > 0.0))
        throw std::invalid_argument("PolylogEvaluator: order must be > 0");

    const double rounded = std::nearbyint(s_);
    if (std::abs(s_ - rounded) <= 1e-9 && rounded >= 1.0) {
        // orders this close to an integer are evaluated at the integer;
        // the expansion below is singular in between
        integer_order_ = true;
        n_ = static_cast<int>(rounded);
        s_ = rounded;
        for (int i = 1; i < n_; ++i) harmonic_ += 1.0 / i;
    }

    zeta_.resize(kZetaTerms);
    for (int k = 0; k < kZetaTerms; ++k) {
        const double arg = s_ - k;
        zeta_[k] = (integer_order_ && k == n_ - 1)
                       ? 0.0  // pole term, replaced by the log term
                       : std::riemann_zeta(arg);
    }

    // sum_{k=1}^{K} k^{-s} a^k as a polynomial, highest degree first, with a
    // trailing zero for the absent constant term
    series_.resize(kSeriesTerms + 1);
    for (int k = 1; k <= kSeriesTerms; ++k)
        series_[kSeriesTerms - k] = std::pow(static_cast<double>(k), -s_);
    series_[kSeriesTerms] = 0.0;
}

double PolylogEvaluator::edge_eval_positive(double a) const {
    // a in (kEdge, 1]; expansion of Li_s(e^mu) around mu = 0
    if (integer_order_ && n_ == 1) return -std::log1p(-a);

    const double mu = std::log(a);
    double sum = 0.0;
    double mu_pow = 1.0;
    double inv_fact = 1.0;
    for (int k = 0; k < kZetaTerms; ++k) {
        sum += zeta_[k] * mu_pow * inv_fact;
        mu_pow *= mu;
        inv_fact /= (k + 1);
    }
    if (integer_order_) {
        if (mu != 0.0) {
            double mu_nm1 = 1.0;
            double fact = 1.0;
            for (int i = 1; i < n_; ++i) {
                mu_nm1 *= mu;
                fact *= i;
            }
            sum += mu_nm1 / fact * (harmonic_ - std::log(-mu));
        }
        // at mu == 0 the log term vanishes for n >= 2
    } else {
        sum += std::tgamma(1.0 - s_) * std::pow(-mu, s_ - 1.0);
    }
    return sum;
}

double PolylogEvaluator::edge_eval(double a) const {
    if (a > 0.0) return edge_eval_positive(a);
    if (a == -1.0) {
        // Li_s(-1) = -eta(s); the square identity degenerates at s <= 1
        if (integer_order_ && n_ == 1) return -kLn2;
        return -(1.0 - std::pow(2.0, 1.0 - s_)) * std::riemann_zeta(s_);
    }
    // square identity; both arguments land in (kEdge^2, 1)
    return std::pow(2.0, 1.0 - s_) * eval1(a * a) - eval1(-a);
}

double PolylogEvaluator::eval1(double a) const {
    double out;
    eval(std::span<const double>(&a, 1), std::span<double>(&out, 1));
    return out;
}

void PolylogEvaluator::eval(std::span<const double> a,
                            std::span<double> out) const {
    const auto& k = kernels::active();
    k.eval_poly(a.data(), out.data(), a.size(), series_.data(), series_.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i]) > kEdge) out[i] = edge_eval(a[i]);
    }
}

}  // namespace xygibbs
