#include "xygibbs/measure.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "xygibbs/detail/peak_scan.hpp"
#include "xygibbs/kernels.hpp"
#include "xygibbs/quadrature.hpp"

namespace xygibbs {

namespace {

constexpr int kCdfCells = 4096;  // 2^12

struct CdfTable {
    std::vector<double> nodes;  // kCdfCells + 1 abscissae
    std::vector<double> cdf;    // normalized cumulative values, same length
};

}  // namespace

struct MarginalSpec::State {
    State(Kind k, std::size_t idx, EigenData eig)
        : kind(k), index(idx), eigen(std::move(eig)) {}

    Kind kind;
    std::size_t index;
    EigenData eigen;
    std::vector<double> peaks;  // refined peaks of the density exponent

    mutable std::once_flag cdf_once;
    mutable std::unique_ptr<CdfTable> cdf;

    // log-density exponent before normalization: beta*F for the tilde kind,
    // beta * sum_{i<=index} f_i for the plain kind
    void exponent_batch(std::span<const double> a, std::span<double> out) const {
        const PotentialFamily& fam = eigen.family;
        if (kind == Kind::eigen_tilde) {
            fam.F_batch(a, out);
        } else {
            std::vector<double> term(a.size());
            for (double& v : out) v = 0.0;
            for (std::size_t i = 1; i <= index; ++i) {
                fam.factor_batch(i, a, std::span<double>(term));
                for (std::size_t t = 0; t < out.size(); ++t) out[t] += term[t];
            }
        }
        const double beta = eigen.beta;
        for (double& v : out) v *= beta;
    }
};

MarginalSpec::MarginalSpec(std::shared_ptr<State> state) : state_(std::move(state)) {}

MarginalSpec MarginalSpec::tilde(const PotentialFamily& family, double beta,
                                 double tol) {
    auto st = std::make_shared<State>(Kind::eigen_tilde, std::size_t{0},
                                      compute_eigendata(family, beta, tol));
    BatchFn expo = [st](std::span<const double> xs, std::span<double> ys) {
        st->exponent_batch(xs, ys);
    };
    st->peaks = detail::scan_peaks(expo, family.domain(), 4097,
                                   1e-12 * family.domain().width())
                    .interior_peaks;
    return MarginalSpec(std::move(st));
}

MarginalSpec MarginalSpec::plain(const PotentialFamily& family, double beta,
                                 std::size_t index, double tol) {
    if (index < 1) throw DomainError("plain marginal: index must be >= 1");
    auto st = std::make_shared<State>(Kind::eigen_plain, index,
                                      compute_eigendata(family, beta, tol));
    BatchFn expo = [st](std::span<const double> xs, std::span<double> ys) {
        st->exponent_batch(xs, ys);
    };
    st->peaks = detail::scan_peaks(expo, family.domain(), 4097,
                                   1e-12 * family.domain().width())
                    .interior_peaks;
    return MarginalSpec(std::move(st));
}

MarginalSpec::Kind MarginalSpec::kind() const { return state_->kind; }
double MarginalSpec::beta() const { return state_->eigen.beta; }
std::size_t MarginalSpec::index() const { return state_->index; }
const PotentialFamily& MarginalSpec::family() const { return state_->eigen.family; }
const EigenData& MarginalSpec::eigen() const { return state_->eigen; }
const std::vector<double>& MarginalSpec::density_peaks() const {
    return state_->peaks;
}

double MarginalSpec::log_density(double a) const {
    family().require_in_domain(a);
    double out;
    state_->exponent_batch(std::span<const double>(&a, 1), std::span<double>(&out, 1));
    return out - state_->eigen.log_lambda;
}

void MarginalSpec::log_density_batch(std::span<const double> a,
                                     std::span<double> out) const {
    state_->exponent_batch(a, out);
    const double ll = state_->eigen.log_lambda;
    for (double& v : out) v -= ll;
}

double cylinder_mass(const MarginalSpec& spec, const Cylinder& cylinder) {
    if (spec.kind() != MarginalSpec::Kind::eigen_tilde)
        throw DomainError("cylinder_mass: defined for the tilde marginal");
    cylinder.validate_inside(spec.family().domain());

    BatchFn logdens = [&spec](std::span<const double> xs, std::span<double> ys) {
        spec.log_density_batch(xs, ys);
    };
    double total = 0.0;
    for (const Interval& box : cylinder.boxes) {
        const auto scan = detail::scan_peaks(logdens, box, 513, 1e-12 * box.width());
        const double shift = scan.max_value;
        BatchFn integrand = [&](std::span<const double> xs, std::span<double> ys) {
            std::vector<double> t(xs.size());
            spec.log_density_batch(xs, std::span<double>(t));
            kernels::active().exp_scaled(t.data(), ys.data(), xs.size(), 1.0, shift);
        };
        QuadratureOptions opt;
        opt.rel_tol = 1e-10;
        opt.split_points = scan.interior_peaks;
        const QuadratureResult raw = integrate(integrand, box, opt);
        total += shift + std::log(raw.value);
    }
    return total;
}

double marginal_relation_residual(const PotentialFamily& family, double beta,
                                  std::size_t j, std::span<const double> probes,
                                  double tol) {
    if (j < 1) throw DomainError("marginal_relation_residual: j must be >= 1");
    const double log_lambda = log_partition(family, beta, tol).log_value;
    double worst = 0.0;
    for (double a : probes) {
        family.require_in_domain(a);
        const double lhs = beta * family.F(a) - log_lambda;
        double prefix = 0.0;
        for (std::size_t i = 1; i <= j; ++i) prefix += family.factor(i, a);
        const double rhs =
            beta * family.tail(j, a).value + (beta * prefix - log_lambda);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

std::vector<double> MarginalSpec::sample(std::uint64_t seed,
                                         std::size_t count) const {
    const State& st = *state_;
    std::call_once(st.cdf_once, [&st]() {
        auto table = std::make_unique<CdfTable>();
        const Interval dom = st.eigen.family.domain();
        const double w = dom.width();
        table->nodes.resize(kCdfCells + 1);
        for (int k = 0; k <= kCdfCells; ++k)
            table->nodes[k] = dom.lo + w * static_cast<double>(k) / kCdfCells;
        table->nodes[kCdfCells] = dom.hi;

        BatchFn integrand = [&st](std::span<const double> xs, std::span<double> ys) {
            std::vector<double> e(xs.size());
            st.exponent_batch(xs, std::span<double>(e));
            kernels::active().exp_scaled(e.data(), ys.data(), xs.size(), 1.0,
                                         st.eigen.log_lambda);
        };
        QuadratureOptions opt;
        opt.rel_tol = 1e-9;
        opt.abs_tol = 1e-15;
        table->cdf.resize(kCdfCells + 1);
        table->cdf[0] = 0.0;
        for (int k = 0; k < kCdfCells; ++k) {
            const Interval cell(table->nodes[k], table->nodes[k + 1]);
            table->cdf[k + 1] = table->cdf[k] + integrate(integrand, cell, opt).value;
        }
        const double total = table->cdf[kCdfCells];
        for (double& v : table->cdf) v /= total;
        table->cdf[kCdfCells] = 1.0;
        st.cdf = std::move(table);
    });

    const CdfTable& t = *st.cdf;
    std::mt19937_64 rng(seed);
    std::vector<double> draws(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u =
            static_cast<double>(rng() >> 11) * 0x1.0p-53;  // uniform [0,1)
        const auto it = std::upper_bound(t.cdf.begin(), t.cdf.end(), u);
        std::size_t k = static_cast<std::size_t>(it - t.cdf.begin());
        k = (k == 0) ? 0 : k - 1;
        if (k >= static_cast<std::size_t>(kCdfCells)) k = kCdfCells - 1;
        const double c0 = t.cdf[k], c1 = t.cdf[k + 1];
        const double x0 = t.nodes[k], x1 = t.nodes[k + 1];
        draws[i] = (c1 > c0) ? x0 + (u - c0) / (c1 - c0) * (x1 - x0) : x0;
    }
    return draws;
}

std::vector<double> sample_marginal(const MarginalSpec& spec, std::uint64_t seed,
                                    std::size_t count) {
    return spec.sample(seed, count);
}

double entropy(const PotentialFamily& family, double beta, double tol) {
    if (beta < 0.0) throw DomainError("entropy: beta must be >= 0");
    const double log_lambda = log_partition(family, beta, tol).log_value;
    const Interval dom = family.domain();

    BatchFn f_batch = [&family](std::span<const double> xs, std::span<double> ys) {
        family.F_batch(xs, ys);
    };
    const auto scan = detail::scan_peaks(f_batch, dom, 4097, 1e-12 * dom.width());

    BatchFn integrand = [&](std::span<const double> xs, std::span<double> ys) {
        std::vector<double> t(xs.size()), e(xs.size());
        family.F_batch(xs, std::span<double>(t));
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = beta * t[i] - log_lambda;
        kernels::active().exp_scaled(t.data(), e.data(), t.size(), 1.0, 0.0);
        for (std::size_t i = 0; i < t.size(); ++i)
            ys[i] = (e[i] > 0.0) ? -e[i] * t[i] : 0.0;
    };
    QuadratureOptions opt;
    opt.rel_tol = tol;
    opt.abs_tol = 1e-13;
    opt.split_points = scan.interior_peaks;
    return integrate(integrand, dom, opt).value;
}

double mean_f(const PotentialFamily& family, double beta, double tol) {
    if (beta < 0.0) throw DomainError("mean_f: beta must be >= 0");
    const Interval dom = family.domain();
    BatchFn f_batch = [&family](std::span<const double> xs, std::span<double> ys) {
        family.F_batch(xs, ys);
    };
    const auto scan = detail::scan_peaks(f_batch, dom, 4097, 1e-12 * dom.width());
    const double shift = scan.max_value;

    QuadratureOptions opt;
    opt.rel_tol = tol;
    opt.abs_tol = 1e-13;
    opt.split_points = scan.interior_peaks;

    BatchFn weighted = [&](std::span<const double> xs, std::span<double> ys) {
        std::vector<double> f(xs.size()), e(xs.size());
        family.F_batch(xs, std::span<double>(f));
        kernels::active().exp_scaled(f.data(), e.data(), f.size(), beta, shift);
        for (std::size_t i = 0; i < f.size(); ++i) ys[i] = f[i] * e[i];
    };
    BatchFn plain = [&](std::span<const double> xs, std::span<double> ys) {
        std::vector<double> f(xs.size());
        family.F_batch(xs, std::span<double>(f));
        kernels::active().exp_scaled(f.data(), ys.data(), f.size(), beta, shift);
    };
    const double num = integrate(weighted, dom, opt).value;
    const double den = integrate(plain, dom, opt).value;
    return num / den;
}

double variational_residual(const PotentialFamily& family, double beta) {
    const double log_lambda = log_partition(family, beta, 1e-11).log_value;
    const double h = entropy(family, beta, 1e-11);
    const double m = mean_f(family, beta, 1e-11);
    return std::abs(log_lambda - h - beta * m);
}

}  // namespace xygibbs
