#include "xygibbs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "xygibbs/detail/peak_scan.hpp"
#include "xygibbs/kernels.hpp"

namespace xygibbs {

namespace {

// 15-point Kronrod rule with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
    double lo, hi;
    double integral;
    double error;
};

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.lo > b.lo;  // ties broken toward the leftmost panel
    }
};

Panel eval_panel(const BatchFn& fn, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);

    double xs[15], ys[15];
    xs[0] = c;
    for (int k = 0; k < 7; ++k) {
        xs[1 + k] = c - h * kXgk[k];
        xs[8 + k] = c + h * kXgk[k];
    }
    fn(std::span<const double>(xs, 15), std::span<double>(ys, 15));

    double wk[15], wgf[15];
    wk[0] = kWgk[7];
    wgf[0] = kWg[3];
    for (int k = 0; k < 7; ++k) {
        wk[1 + k] = kWgk[k];
        wk[8 + k] = kWgk[k];
        const double g = (k % 2 == 1) ? kWg[(k - 1) / 2] : 0.0;
        wgf[1 + k] = g;
        wgf[8 + k] = g;
    }

    const auto& kern = kernels::active();
    const double resk = kern.dot(wk, ys, 15);
    const double resg = kern.dot(wgf, ys, 15);

    double abs_ys[15];
    for (int i = 0; i < 15; ++i) abs_ys[i] = std::abs(ys[i]);
    const double resabs = kern.dot(wk, abs_ys, 15) * h;

    const double reskh = resk * 0.5;
    double dev[15];
    for (int i = 0; i < 15; ++i) dev[i] = std::abs(ys[i] - reskh);
    const double resasc = kern.dot(wk, dev, 15) * h;

    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > kTiny / (50.0 * kEps)) err = std::max(err, 50.0 * kEps * resabs);

    return Panel{lo, hi, resk * h, err};
}

QuadratureResult sum_sorted(std::vector<Panel> panels, std::size_t evals) {
    std::sort(panels.begin(), panels.end(),
              [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    QuadratureResult out;
    for (const Panel& p : panels) out.value += p.integral;
    for (const Panel& p : panels) out.abs_error_estimate += p.error;
    out.evaluations = evals;
    return out;
}

}  // namespace

QuadratureResult integrate(const BatchFn& fn, Interval range,
                           const QuadratureOptions& opt) {
    std::vector<double> cuts{range.lo};
    for (double s : opt.split_points) {
        if (s > range.lo && s < range.hi) cuts.push_back(s);
    }
    cuts.push_back(range.hi);
    std::sort(cuts.begin(), cuts.end());
    const double min_gap = 1e-13 * range.width();
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [min_gap](double a, double b) {
                               return std::abs(b - a) <= min_gap;
                           }),
               cuts.end());
    cuts.back() = range.hi;

    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    std::size_t evals = 0;
    double total_i = 0.0, total_e = 0.0;
    auto push = [&](const Panel& p) {
        total_i += p.integral;
        total_e += p.error;
        heap.push(p);
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        push(eval_panel(fn, cuts[k], cuts[k + 1]));
        evals += 15;
    }

    const double min_width = 64.0 * kEps * std::max({std::abs(range.lo),
                                                     std::abs(range.hi), 1.0});
    auto collect = [&heap]() {
        std::vector<Panel> out;
        out.reserve(heap.size());
        auto h = heap;
        while (!h.empty()) {
            out.push_back(h.top());
            h.pop();
        }
        return out;
    };

    while (total_e > std::max(opt.abs_tol, opt.rel_tol * std::abs(total_i))) {
        const Panel worst = heap.top();
        if (heap.size() >= opt.max_panels || worst.hi - worst.lo <= min_width) {
            QuadratureResult best = sum_sorted(collect(), evals);
            throw AccuracyError("integrate: subdivision budget exhausted", best);
        }
        heap.pop();
        total_i -= worst.integral;
        total_e -= worst.error;
        const double mid = 0.5 * (worst.lo + worst.hi);
        push(eval_panel(fn, worst.lo, mid));
        push(eval_panel(fn, mid, worst.hi));
        evals += 30;
    }

    return sum_sorted(collect(), evals);
}

QuadratureResult integrate(const std::function<double(double)>& fn,
                           Interval range, double tol) {
    BatchFn batch = [&fn](std::span<const double> xs, std::span<double> ys) {
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = fn(xs[i]);
    };
    QuadratureOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = 0.0;
    return integrate(batch, range, opt);
}

PeakedIntegralResult log_partition(const PotentialFamily& family, double beta,
                                   double tol) {
    if (beta < 0.0) throw DomainError("log_partition: beta must be >= 0");

    const Interval dom = family.domain();
    BatchFn f_batch = [&family](std::span<const double> xs, std::span<double> ys) {
        family.F_batch(xs, ys);
    };
    const auto scan =
        detail::scan_peaks(f_batch, dom, 4097, 1e-12 * dom.width());
    if (!scan.all_finite)
        throw DomainError("log_partition: potential not finite on the domain");
    const double shift = scan.max_value;

    BatchFn integrand = [&family, beta, shift](std::span<const double> xs,
                                               std::span<double> ys) {
        std::vector<double> f(xs.size());
        family.F_batch(xs, std::span<double>(f));
        kernels::active().exp_scaled(f.data(), ys.data(), xs.size(), beta, shift);
    };

    QuadratureOptions opt;
    opt.rel_tol = tol;
    opt.split_points = scan.interior_peaks;

    PeakedIntegralResult out;
    out.shift = shift;
    out.raw = integrate(integrand, dom, opt);
    out.log_value = beta * shift + std::log(out.raw.value);
    return out;
}

double laplace_approx(double F_at_peak, double F2_at_peak, double beta) {
    if (!(beta > 0.0)) throw DomainError("laplace_approx: beta must be > 0");
    if (!(F2_at_peak < 0.0))
        throw XygibbsError(ErrorCode::non_concave_peak,
                           "laplace_approx: needs F'' < 0 at the peak");
    constexpr double kLog2Pi = 1.8378770664093454836;
    return beta * F_at_peak +
           0.5 * (kLog2Pi - std::log(beta) - std::log(-F2_at_peak));
}

}  // namespace xygibbs
