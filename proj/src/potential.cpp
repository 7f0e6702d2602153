#include "xygibbs/potential.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "xygibbs/kernels.hpp"
#include "xygibbs/polylog.hpp"

namespace xygibbs {

namespace detail {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

double pow_int(double base, std::size_t e) {
    double r = 1.0;
    for (std::size_t k = 0; k < e; ++k) r *= base;
    return r;
}
}  // namespace

class FamilyImpl {
  public:
    FamilyImpl(std::string name, Interval domain)
        : name_(std::move(name)), domain_(domain) {}
    virtual ~FamilyImpl() = default;

    const std::string& name() const { return name_; }
    const Interval& domain() const { return domain_; }
    double tolerance() const { return 1e-12; }

    virtual void F_batch(std::span<const double> a, std::span<double> out) const = 0;
    virtual void factor_batch(std::size_t i, std::span<const double> a,
                              std::span<double> out) const = 0;
    virtual void tail_batch(std::size_t j, std::span<const double> a,
                            std::span<double> out) const = 0;
    virtual double tail_abs_error(std::size_t j, double value) const = 0;
    virtual ValueWithError double_tail(std::size_t m, double c) const = 0;
    virtual std::optional<double> lipschitz_bound(std::size_t i) const = 0;
    virtual std::optional<double> d1(double) const { return std::nullopt; }
    virtual std::optional<double> d2(double) const { return std::nullopt; }
    virtual double tail_sup(std::size_t j) const = 0;
    virtual std::optional<double> tail_sup_total() const = 0;
    virtual nlohmann::json config_echo() const = 0;

  private:
    std::string name_;
    Interval domain_;
};

namespace {

void fill_zero(std::span<double> out) {
    for (double& v : out) v = 0.0;
}

class ZeroFamily final : public FamilyImpl {
  public:
    explicit ZeroFamily(Interval dom) : FamilyImpl("zero", dom) {}

    void F_batch(std::span<const double>, std::span<double> out) const override {
        fill_zero(out);
    }
    void factor_batch(std::size_t, std::span<const double>,
                      std::span<double> out) const override {
        fill_zero(out);
    }
    void tail_batch(std::size_t, std::span<const double>,
                    std::span<double> out) const override {
        fill_zero(out);
    }
    double tail_abs_error(std::size_t, double) const override { return 0.0; }
    ValueWithError double_tail(std::size_t, double) const override { return {0.0, 0.0}; }
    std::optional<double> lipschitz_bound(std::size_t) const override { return 0.0; }
    std::optional<double> d1(double) const override { return 0.0; }
    std::optional<double> d2(double) const override { return 0.0; }
    double tail_sup(std::size_t) const override { return 0.0; }
    std::optional<double> tail_sup_total() const override { return 0.0; }
    nlohmann::json config_echo() const override {
        return {{"family", "zero"}, {"domain", {domain().lo, domain().hi}}};
    }
};

// f_i(a) = -a^{2i}; F(a) = 1 + 1/(a^2-1); all tails in closed form.
class Example1Family final : public FamilyImpl {
  public:
    explicit Example1Family(Interval dom)
        : FamilyImpl("example1", dom), h_(std::max(std::abs(dom.lo), std::abs(dom.hi))) {
        if (!(h_ < 1.0))
            throw std::invalid_argument(
                "example1 family: domain must lie strictly inside (-1, 1)");
    }

    void F_batch(std::span<const double> a, std::span<double> out) const override {
        kernels::active().eval_example1(a.data(), out.data(), a.size());
    }
    void factor_batch(std::size_t i, std::span<const double> a,
                      std::span<double> out) const override {
        // f_i(a) = -a^{2i} as a sparse Horner polynomial
        std::vector<double> c(2 * i + 1, 0.0);
        c[0] = -1.0;
        kernels::active().eval_poly(a.data(), out.data(), a.size(), c.data(), c.size());
    }
    void tail_batch(std::size_t j, std::span<const double> a,
                    std::span<double> out) const override {
        kernels::active().eval_example1_tail(a.data(), out.data(), a.size(),
                                             static_cast<unsigned>(j));
    }
    double tail_abs_error(std::size_t, double value) const override {
        return 8.0 * kEps * (1.0 + std::abs(value));
    }
    ValueWithError double_tail(std::size_t m, double c) const override {
        const double q = c * c;
        const double r = 1.0 - q;
        const double v = -pow_int(q, m + 2) / (r * r);
        return {v, 8.0 * kEps * (1.0 + std::abs(v))};
    }
    std::optional<double> lipschitz_bound(std::size_t i) const override {
        // sup |f_i'| = 2 i h^{2i-1}
        return 2.0 * static_cast<double>(i) * pow_int(h_, 2 * i - 1);
    }
    std::optional<double> d1(double a) const override {
        const double t = a * a - 1.0;
        return -2.0 * a / (t * t);
    }
    std::optional<double> d2(double a) const override {
        const double t = a * a - 1.0;
        return (6.0 * a * a + 2.0) / (t * t * t);
    }
    double tail_sup(std::size_t j) const override {
        return pow_int(h_, 2 * j + 2) / (1.0 - h_ * h_);
    }
    std::optional<double> tail_sup_total() const override {
        const double q = h_ * h_;
        return q * q / ((1.0 - q) * (1.0 - q));
    }
    nlohmann::json config_echo() const override {
        return {{"family", "example1"}, {"domain", {domain().lo, domain().hi}}};
    }

  private:
    double h_;
};

// f_i(a) = a^i i^{-gamma}; F is the polylogarithm Li_gamma(a).
class PolylogFamily final : public FamilyImpl {
  public:
    PolylogFamily(double gamma, Interval dom)
        : FamilyImpl("polylog", dom),
          gamma_(gamma),
          li_g_(gamma),
          li_gm1_(gamma - 1.0),
          h_(std::max(std::abs(dom.lo), std::abs(dom.hi))) {
        if (!(gamma > 1.0))
            throw std::invalid_argument("polylog family: gamma must be > 1");
        if (h_ > 1.0)
            throw std::invalid_argument(
                "polylog family: domain must lie inside [-1, 1]");
    }

    void F_batch(std::span<const double> a, std::span<double> out) const override {
        li_g_.eval(a, out);
    }
    void factor_batch(std::size_t i, std::span<const double> a,
                      std::span<double> out) const override {
        std::vector<double> c(i + 1, 0.0);
        c[0] = std::pow(static_cast<double>(i), -gamma_);
        kernels::active().eval_poly(a.data(), out.data(), a.size(), c.data(), c.size());
    }
    void tail_batch(std::size_t j, std::span<const double> a,
                    std::span<double> out) const override {
        li_g_.eval(a, out);
        if (j == 0) return;
        std::vector<double> prefix(a.size());
        std::vector<double> c(j + 1, 0.0);
        for (std::size_t k = 1; k <= j; ++k)
            c[j - k] = std::pow(static_cast<double>(k), -gamma_);
        kernels::active().eval_poly(a.data(), prefix.data(), a.size(), c.data(),
                                    c.size());
        for (std::size_t t = 0; t < out.size(); ++t) out[t] -= prefix[t];
    }
    double tail_abs_error(std::size_t, double value) const override {
        return li_g_.truncation_bound() + 4.0 * kEps * (1.0 + std::abs(value));
    }
    ValueWithError double_tail(std::size_t m, double c) const override {
        // sum_{j>m} T_j(c) = [Li_{g-1}(c) - S_{m+1}(g-1)] - (m+1)[Li_g(c) - S_{m+1}(g)]
        const double li1 = li_gm1_.eval1(c);
        if (!std::isfinite(li1))
            throw DivergenceError(
                "polylog double tail diverges (gamma <= 2 at the domain edge)");
        const double li0 = li_g_.eval1(c);
        double s1 = 0.0, s0 = 0.0, cp = 1.0;
        for (std::size_t i = 1; i <= m + 1; ++i) {
            cp *= c;
            s1 += cp * std::pow(static_cast<double>(i), 1.0 - gamma_);
            s0 += cp * std::pow(static_cast<double>(i), -gamma_);
        }
        const double v = (li1 - s1) - static_cast<double>(m + 1) * (li0 - s0);
        const double err = 2.0 * li_g_.truncation_bound() * (m + 2.0) +
                           8.0 * kEps * (1.0 + std::abs(v));
        return {v, err};
    }
    std::optional<double> lipschitz_bound(std::size_t i) const override {
        // sup |f_i'| = i^{1-gamma} h^{i-1}
        return std::pow(static_cast<double>(i), 1.0 - gamma_) * pow_int(h_, i - 1);
    }
    double tail_sup(std::size_t j) const override {
        if (j == 0) return std::riemann_zeta(gamma_);
        // integral estimate sum_{i>j} i^-gamma <= j^{1-gamma}/(gamma-1)
        return std::pow(static_cast<double>(j), 1.0 - gamma_) / (gamma_ - 1.0);
    }
    std::optional<double> tail_sup_total() const override {
        if (gamma_ <= 2.0) return std::nullopt;
        return (1.0 + 1.0 / (gamma_ - 2.0)) / (gamma_ - 1.0);
    }
    nlohmann::json config_echo() const override {
        return {{"family", "polylog"},
                {"gamma", gamma_},
                {"domain", {domain().lo, domain().hi}}};
    }

  private:
    double gamma_;
    PolylogEvaluator li_g_;
    PolylogEvaluator li_gm1_;
    double h_;
};

// f_1 an arbitrary polynomial, f_i = 0 for i >= 2; F = f_1.
class SinglePolyFamily final : public FamilyImpl {
  public:
    SinglePolyFamily(std::vector<double> coeffs, Interval dom)
        : FamilyImpl("single", dom), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw std::invalid_argument("single family: needs coefficients");
        horner_.assign(coeffs_.rbegin(), coeffs_.rend());
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            d1_coeffs_.push_back(coeffs_[k] * static_cast<double>(k));
        for (std::size_t k = 1; k < d1_coeffs_.size(); ++k)
            d2_coeffs_.push_back(d1_coeffs_[k] * static_cast<double>(k));
        d1_horner_.assign(d1_coeffs_.rbegin(), d1_coeffs_.rend());
        d2_horner_.assign(d2_coeffs_.rbegin(), d2_coeffs_.rend());

        const double h = std::max(std::abs(dom.lo), std::abs(dom.hi));
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            lip_ += static_cast<double>(k) * std::abs(coeffs_[k]) * pow_int(h, k - 1);
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            sup_ += std::abs(coeffs_[k]) * pow_int(h, k);
    }

    void F_batch(std::span<const double> a, std::span<double> out) const override {
        kernels::active().eval_poly(a.data(), out.data(), a.size(), horner_.data(),
                                    horner_.size());
    }
    void factor_batch(std::size_t i, std::span<const double> a,
                      std::span<double> out) const override {
        if (i == 1)
            F_batch(a, out);
        else
            fill_zero(out);
    }
    void tail_batch(std::size_t j, std::span<const double> a,
                    std::span<double> out) const override {
        if (j == 0)
            F_batch(a, out);
        else
            fill_zero(out);
    }
    double tail_abs_error(std::size_t j, double value) const override {
        return j == 0 ? 4.0 * kEps * (1.0 + std::abs(value)) : 0.0;
    }
    ValueWithError double_tail(std::size_t, double) const override { return {0.0, 0.0}; }
    std::optional<double> lipschitz_bound(std::size_t i) const override {
        return i == 1 ? lip_ : 0.0;
    }
    std::optional<double> d1(double a) const override {
        double out;
        kernels::active().eval_poly(&a, &out, 1, d1_horner_.data(), d1_horner_.size());
        return out;
    }
    std::optional<double> d2(double a) const override {
        double out;
        kernels::active().eval_poly(&a, &out, 1, d2_horner_.data(), d2_horner_.size());
        return out;
    }
    double tail_sup(std::size_t j) const override { return j == 0 ? sup_ : 0.0; }
    std::optional<double> tail_sup_total() const override { return 0.0; }
    nlohmann::json config_echo() const override {
        return {{"family", "single"},
                {"coeffs", coeffs_},
                {"domain", {domain().lo, domain().hi}}};
    }

  private:
    std::vector<double> coeffs_;  // lowest degree first
    std::vector<double> horner_, d1_coeffs_, d2_coeffs_, d1_horner_, d2_horner_;
    double lip_ = 0.0;
    double sup_ = 0.0;
};

}  // namespace

}  // namespace detail

PotentialFamily::PotentialFamily(std::shared_ptr<const detail::FamilyImpl> impl)
    : impl_(std::move(impl)) {}

PotentialFamily PotentialFamily::zero(Interval domain) {
    return PotentialFamily(std::make_shared<detail::ZeroFamily>(domain));
}
PotentialFamily PotentialFamily::example1(Interval domain) {
    return PotentialFamily(std::make_shared<detail::Example1Family>(domain));
}
PotentialFamily PotentialFamily::polylog(double gamma, Interval domain) {
    return PotentialFamily(std::make_shared<detail::PolylogFamily>(gamma, domain));
}
PotentialFamily PotentialFamily::single(std::vector<double> coeffs, Interval domain) {
    return PotentialFamily(
        std::make_shared<detail::SinglePolyFamily>(std::move(coeffs), domain));
}

PotentialFamily PotentialFamily::from_config_text(const std::string& json_text) {
    try {
        const auto cfg = nlohmann::json::parse(json_text);
        const std::string family = cfg.at("family").get<std::string>();
        std::optional<Interval> dom;
        if (cfg.contains("domain")) {
            const auto& d = cfg.at("domain");
            if (!d.is_array() || d.size() != 2)
                throw ConfigError("config: \"domain\" must be [lo, hi]");
            dom = Interval(d[0].get<double>(), d[1].get<double>());
        }
        if (family == "zero") return zero(dom.value_or(Interval(0.0, 1.0)));
        if (family == "example1") return example1(dom.value_or(Interval(-0.5, 0.5)));
        if (family == "polylog") {
            if (!cfg.contains("gamma"))
                throw ConfigError("config: polylog family needs \"gamma\"");
            return polylog(cfg.at("gamma").get<double>(),
                           dom.value_or(Interval(-1.0, 1.0)));
        }
        if (family == "single") {
            if (!cfg.contains("coeffs"))
                throw ConfigError("config: single family needs \"coeffs\"");
            return single(cfg.at("coeffs").get<std::vector<double>>(),
                          dom.value_or(Interval(-1.0, 1.0)));
        }
        throw ConfigError("config: unknown family \"" + family + "\"");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

const Interval& PotentialFamily::domain() const { return impl_->domain(); }
const std::string& PotentialFamily::name() const { return impl_->name(); }
double PotentialFamily::tolerance() const { return impl_->tolerance(); }
std::string PotentialFamily::config_echo() const { return impl_->config_echo().dump(); }

double PotentialFamily::factor(std::size_t i, double a) const {
    double out;
    impl_->factor_batch(i, std::span<const double>(&a, 1), std::span<double>(&out, 1));
    return out;
}

double PotentialFamily::F(double a) const {
    require_in_domain(a);
    double out;
    impl_->F_batch(std::span<const double>(&a, 1), std::span<double>(&out, 1));
    return out;
}

void PotentialFamily::F_batch(std::span<const double> a, std::span<double> out) const {
    impl_->F_batch(a, out);
}
void PotentialFamily::factor_batch(std::size_t i, std::span<const double> a,
                                   std::span<double> out) const {
    impl_->factor_batch(i, a, out);
}
void PotentialFamily::tail_batch(std::size_t j, std::span<const double> a,
                                 std::span<double> out) const {
    impl_->tail_batch(j, a, out);
}

ValueWithError PotentialFamily::tail(std::size_t j, double a) const {
    double out;
    impl_->tail_batch(j, std::span<const double>(&a, 1), std::span<double>(&out, 1));
    return {out, impl_->tail_abs_error(j, out)};
}

ValueWithError PotentialFamily::double_tail(std::size_t m, double c) const {
    return impl_->double_tail(m, c);
}

std::optional<double> PotentialFamily::lipschitz_bound(std::size_t i) const {
    return impl_->lipschitz_bound(i);
}
std::optional<double> PotentialFamily::d1(double a) const { return impl_->d1(a); }
std::optional<double> PotentialFamily::d2(double a) const { return impl_->d2(a); }
double PotentialFamily::tail_sup(std::size_t j) const { return impl_->tail_sup(j); }
std::optional<double> PotentialFamily::tail_sup_total() const {
    return impl_->tail_sup_total();
}

void PotentialFamily::require_in_domain(double a) const {
    if (!impl_->domain().contains(a)) {
        std::ostringstream os;
        os << "argument " << a << " outside domain [" << impl_->domain().lo << ", "
           << impl_->domain().hi << "]";
        throw DomainError(os.str());
    }
}

void PotentialFamily::require_in_domain(const EventuallyConstantPoint& x) const {
    for (double v : x.prefix()) require_in_domain(v);
    require_in_domain(x.tail_value());
}

double eval_F(const PotentialFamily& family, double a) { return family.F(a); }

ValueWithError eval_f(const PotentialFamily& family,
                      const EventuallyConstantPoint& x) {
    family.require_in_domain(x);
    const std::size_t n = x.prefix_size();
    double sum = 0.0;
    double err = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double fj = family.factor(j, x.coord(j));
        sum += fj;
        err += 2.0 * std::numeric_limits<double>::epsilon() * std::abs(fj);
    }
    const ValueWithError t = family.tail(n, x.tail_value());
    sum += t.value;
    err += t.abs_error;
    if (!std::isfinite(sum))
        throw DivergenceError("eval_f: divergent tail at the given point");
    return {sum, err};
}

ValueWithError eval_u(const PotentialFamily& family,
                      const EventuallyConstantPoint& x) {
    family.require_in_domain(x);
    const std::size_t n = x.prefix_size();
    double sum = 0.0;
    double err = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const ValueWithError t = family.tail(j, x.coord(j));
        sum += t.value;
        err += t.abs_error;
    }
    const ValueWithError dt = family.double_tail(n, x.tail_value());
    sum += dt.value;
    err += dt.abs_error;
    if (!std::isfinite(sum))
        throw DivergenceError("eval_u: divergent double tail at the given point");
    return {sum, err};
}

Prop22Report check_prop22(const PotentialFamily& family,
                          const EventuallyConstantPoint& xbar) {
    Prop22Report report;

    bool u_finite = false;
    try {
        u_finite = std::isfinite(eval_u(family, xbar).value);
    } catch (const DivergenceError&) {
        u_finite = false;
    }
    if (!u_finite) {
        report.reason = "u-divergent";
        return report;
    }

    // geometric route: c_i 2^i bounded over the probe horizon, with the
    // bound attained early enough that the decay is credible
    constexpr std::size_t kHorizon = 64;
    bool have_all = true;
    double K = 0.0;
    std::size_t arg_max = 0;
    for (std::size_t i = 1; i <= kHorizon; ++i) {
        const auto ci = family.lipschitz_bound(i);
        if (!ci) {
            have_all = false;
            break;
        }
        const double Ki = *ci * std::ldexp(1.0, static_cast<int>(i));
        if (Ki > K) {
            K = Ki;
            arg_max = i;
        }
    }
    if (have_all && std::isfinite(K) && arg_max <= kHorizon / 2) {
        report.ok = true;
        report.route = Prop22Report::Route::geometric;
        report.K = K;
        return report;
    }

    // finiteness route: sum_j sup_a |T_j(a)| certified finite
    if (family.tail_sup_total().has_value()) {
        report.ok = true;
        report.route = Prop22Report::Route::finiteness;
        return report;
    }

    report.reason = have_all ? "tail-sums-not-certified" : "lipschitz-unavailable";
    return report;
}

void Cylinder::validate_inside(const Interval& dom) const {
    for (const Interval& box : boxes) {
        if (!dom.contains(box))
            throw DomainError("cylinder box outside the family domain");
    }
}

}  // namespace xygibbs
