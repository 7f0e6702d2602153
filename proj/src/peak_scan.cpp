#include "xygibbs/detail/peak_scan.hpp"

#include <algorithm>
#include <cmath>

namespace xygibbs::detail {

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol, double* value) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    if (fc > fd) {
        if (value) *value = fc;
        return c;
    }
    if (value) *value = fd;
    return d;
}

PeakScanResult scan_peaks(const BatchFn& f, Interval range, int grid_points,
                          double xtol) {
    const int n = std::max(grid_points, 9);
    std::vector<double> xs(n), ys(n);
    const double w = range.width();
    for (int i = 0; i < n; ++i)
        xs[i] = range.lo + w * static_cast<double>(i) / (n - 1);
    xs[n - 1] = range.hi;
    f(xs, ys);

    PeakScanResult res;
    res.max_value = ys[0];
    res.arg_max = xs[0];
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(ys[i])) res.all_finite = false;
        if (ys[i] > res.max_value) {
            res.max_value = ys[i];
            res.arg_max = xs[i];
        }
    }

    auto f1 = [&f](double x) {
        double y;
        f(std::span<const double>(&x, 1), std::span<double>(&y, 1));
        return y;
    };

    for (int i = 1; i + 1 < n; ++i) {
        const bool local_max = ys[i] >= ys[i - 1] && ys[i] >= ys[i + 1] &&
                               (ys[i] > ys[i - 1] || ys[i] > ys[i + 1]);
        if (!local_max) continue;
        double fv;
        const double p = golden_max(f1, xs[i - 1], xs[i + 1], xtol, &fv);
        if (fv >= ys[i]) {
            res.interior_peaks.push_back(p);
            res.interior_values.push_back(fv);
        } else {
            res.interior_peaks.push_back(xs[i]);
            res.interior_values.push_back(ys[i]);
        }
        // skip the immediate right neighbor of a plateau edge
        if (ys[i] == ys[i + 1]) ++i;
    }

    for (std::size_t k = 0; k < res.interior_peaks.size(); ++k) {
        if (res.interior_values[k] > res.max_value) {
            res.max_value = res.interior_values[k];
            res.arg_max = res.interior_peaks[k];
        }
    }
    return res;
}

}  // namespace xygibbs::detail
