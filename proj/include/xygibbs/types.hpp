#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace xygibbs {

/// Closed interval [lo, hi] on the state-space axis. All potential
/// evaluations are restricted to it.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi)) throw std::invalid_argument("Interval: requires lo < hi");
    }

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double a) const { return a >= lo && a <= hi; }
    bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }
};

/// A point of the sequence space given by a finite prefix plus a constant
/// tail value: (x_1, ..., x_n, c, c, c, ...). The prefix may be empty.
class EventuallyConstantPoint {
  public:
    EventuallyConstantPoint(std::vector<double> prefix, double tail_value)
        : prefix_(std::move(prefix)), tail_(tail_value) {}

    explicit EventuallyConstantPoint(double tail_value) : tail_(tail_value) {}

    const std::vector<double>& prefix() const { return prefix_; }
    double tail_value() const { return tail_; }
    std::size_t prefix_size() const { return prefix_.size(); }

    /// Coordinate x_j, 1-based; beyond the prefix every coordinate is the
    /// tail value.
    double coord(std::size_t j) const {
        return (j >= 1 && j <= prefix_.size()) ? prefix_[j - 1] : tail_;
    }

    /// Left shift: drops the first coordinate. On an empty prefix the point
    /// is constant and the shift fixes it.
    EventuallyConstantPoint shift() const {
        if (prefix_.empty()) return *this;
        return EventuallyConstantPoint(
            std::vector<double>(prefix_.begin() + 1, prefix_.end()), tail_);
    }

    /// Prepends a new first coordinate: x -> (a, x_1, ..., x_n; c).
    EventuallyConstantPoint prepend(double a) const {
        std::vector<double> p;
        p.reserve(prefix_.size() + 1);
        p.push_back(a);
        p.insert(p.end(), prefix_.begin(), prefix_.end());
        return EventuallyConstantPoint(std::move(p), tail_);
    }

    bool in_domain(const Interval& dom) const {
        for (double v : prefix_)
            if (!dom.contains(v)) return false;
        return dom.contains(tail_);
    }

  private:
    std::vector<double> prefix_;
    double tail_;
};

/// A finite product of subintervals A_1 x ... x A_n of the domain.
struct Cylinder {
    std::vector<Interval> boxes;

    explicit Cylinder(std::vector<Interval> b) : boxes(std::move(b)) {
        if (boxes.empty()) throw std::invalid_argument("Cylinder: requires at least one box");
    }

    std::size_t depth() const { return boxes.size(); }

    void validate_inside(const Interval& dom) const;
};

}  // namespace xygibbs
