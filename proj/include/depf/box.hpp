#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "depf/rng.hpp"

namespace depf {

/// Axis-aligned box in n dimensions, scenario units.
struct AxisBox {
    std::vector<double> lo;
    std::vector<double> hi;

    AxisBox() = default;
    AxisBox(std::vector<double> lo_, std::vector<double> hi_)
        : lo(std::move(lo_)), hi(std::move(hi_)) {}

    /// Cube [lo, hi]^dim.
    static AxisBox cube(std::size_t dim, double lo_, double hi_) {
        return AxisBox(std::vector<double>(dim, lo_), std::vector<double>(dim, hi_));
    }

    std::size_t dim() const { return lo.size(); }

    bool contains(std::span<const double> p) const {
        if (p.size() != lo.size()) return false;
        for (std::size_t k = 0; k < lo.size(); ++k) {
            if (p[k] < lo[k] || p[k] > hi[k]) return false;
        }
        return true;
    }

    double side(std::size_t k) const { return hi[k] - lo[k]; }

    double volume() const {
        double v = 1.0;
        for (std::size_t k = 0; k < lo.size(); ++k) v *= side(k);
        return v;
    }

    std::vector<double> center() const {
        std::vector<double> c(lo.size());
        for (std::size_t k = 0; k < lo.size(); ++k) c[k] = 0.5 * (lo[k] + hi[k]);
        return c;
    }

    /// One point uniform over the box; coordinates drawn in axis order.
    void sample(Rng& rng, std::span<double> out) const {
        for (std::size_t k = 0; k < lo.size(); ++k) out[k] = rng.uniform(lo[k], hi[k]);
    }
};

}  // namespace depf
