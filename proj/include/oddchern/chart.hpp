#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddchern {

using Point = std::vector<double>;

/// One coordinate axis of a chart grid. Periodic axes place nodes at
/// lo + k h with h = (hi-lo)/samples and wrap around; bounded axes are either
/// node-centered (endpoints included) or cell-centered (half-cell offset, used
/// where the volume density vanishes at the ends).
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int samples = 3;
    bool periodic = false;
    bool cell_centered = false;

    double step() const {
        if (periodic || cell_centered) return (hi - lo) / samples;
        return (hi - lo) / (samples - 1);
    }
    double node(int k) const {
        if (cell_centered) return lo + (k + 0.5) * step();
        return lo + k * step();
    }
};

/// Coordinate grid standing in for the manifold: axes with quadrature
/// metadata, a volume density, and (for the built-in sphere charts) the
/// embedding into the unit sphere with its Jacobian.
struct Chart {
    std::string name;
    std::vector<Axis> axes;
    std::function<double(const Point&)> jacobian;  // volume density, > 0 in the interior
    std::function<std::vector<double>(const Point&)> embedding;
    // embedding_jacobian[i][j] = d x_i / d u_j
    std::function<std::vector<std::vector<double>>(const Point&)> embedding_jacobian;

    int dim() const { return static_cast<int>(axes.size()); }

    size_t grid_size() const {
        size_t n = 1;
        for (const auto& ax : axes) n *= static_cast<size_t>(ax.samples);
        return n;
    }

    std::vector<int> shape() const {
        std::vector<int> s;
        for (const auto& ax : axes) s.push_back(ax.samples);
        return s;
    }

    // Row-major strides; last axis is fastest.
    std::vector<size_t> strides() const {
        std::vector<size_t> st(axes.size(), 1);
        for (int i = dim() - 2; i >= 0; --i)
            st[i] = st[i + 1] * static_cast<size_t>(axes[i + 1].samples);
        return st;
    }

    std::vector<int> unflatten(size_t idx) const {
        std::vector<int> ks(axes.size());
        for (int i = dim() - 1; i >= 0; --i) {
            ks[i] = static_cast<int>(idx % axes[i].samples);
            idx /= axes[i].samples;
        }
        return ks;
    }

    size_t flatten(const std::vector<int>& ks) const {
        size_t idx = 0;
        for (int i = 0; i < dim(); ++i) idx = idx * axes[i].samples + static_cast<size_t>(ks[i]);
        return idx;
    }

    Point point_at(const std::vector<int>& ks) const {
        Point p(axes.size());
        for (int i = 0; i < dim(); ++i) p[i] = axes[i].node(ks[i]);
        return p;
    }

    double jacobian_at(const Point& p) const { return jacobian ? jacobian(p) : 1.0; }

    bool same_grid(const Chart& other) const {
        if (dim() != other.dim()) return false;
        for (int i = 0; i < dim(); ++i) {
            const Axis &a = axes[i], &b = other.axes[i];
            if (a.samples != b.samples || a.periodic != b.periodic ||
                a.cell_centered != b.cell_centered || a.lo != b.lo || a.hi != b.hi)
                return false;
        }
        return true;
    }

    /// Same chart, different resolution. One value = all axes, or one per axis.
    Chart with_samples(const std::vector<int>& samples) const;

    // Built-in charts. Default grids: 256 (1-D), 64x64 torus, 64x128 sphere,
    // 24^3 Hopf coordinates.
    static Chart interval(int n = 256);
    static Chart circle(int n = 256);
    static Chart torus2(int nx = 64, int ny = 64);
    static Chart sphere2(int ntheta = 64, int nphi = 128);
    static Chart sphere3_hopf(int n = 24);
    static Chart single_point();

    static Chart by_name(const std::string& name);
};

/// Per-node quadrature weights along one axis: trapezoidal on periodic axes,
/// composite Simpson on bounded node-centered axes, and fourth-order
/// endpoint-corrected midpoint on cell-centered axes.
std::vector<double> axis_weights(const Axis& ax);

/// Walk the whole grid in flat order.
void for_each_grid_point(const Chart& chart,
                         const std::function<void(size_t, const Point&)>& fn);

}  // namespace oddchern
