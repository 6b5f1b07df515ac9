#include "oddchern/chart.hpp"

#include <cmath>
#include <numbers>

namespace oddchern {

namespace {
constexpr double pi = std::numbers::pi;
}

Chart Chart::with_samples(const std::vector<int>& samples) const {
    if (samples.empty()) return *this;
    Chart c = *this;
    for (int i = 0; i < c.dim(); ++i) {
        int n = (samples.size() == 1) ? samples[0] : samples.at(i);
        if (n < 3) throw std::invalid_argument("chart axis needs at least 3 samples");
        c.axes[i].samples = n;
    }
    return c;
}

Chart Chart::interval(int n) {
    Chart c;
    c.name = "interval";
    c.axes = {Axis{0.0, 1.0, n, false, false}};
    c.jacobian = [](const Point&) { return 1.0; };
    return c;
}

Chart Chart::circle(int n) {
    Chart c;
    c.name = "circle";
    c.axes = {Axis{0.0, 1.0, n, true, false}};
    c.jacobian = [](const Point&) { return 1.0; };
    c.embedding = [](const Point& p) {
        return std::vector<double>{std::cos(2.0 * pi * p[0]), std::sin(2.0 * pi * p[0])};
    };
    c.embedding_jacobian = [](const Point& p) {
        return std::vector<std::vector<double>>{{-2.0 * pi * std::sin(2.0 * pi * p[0])},
                                                {2.0 * pi * std::cos(2.0 * pi * p[0])}};
    };
    return c;
}

Chart Chart::torus2(int nx, int ny) {
    Chart c;
    c.name = "torus2";
    c.axes = {Axis{0.0, 1.0, nx, true, false}, Axis{0.0, 1.0, ny, true, false}};
    c.jacobian = [](const Point&) { return 1.0; };
    return c;
}

Chart Chart::sphere2(int ntheta, int nphi) {
    Chart c;
    c.name = "sphere2";
    // theta in [0, pi] on a half-cell offset grid so the poles are never hit.
    c.axes = {Axis{0.0, pi, ntheta, false, true}, Axis{0.0, 2.0 * pi, nphi, true, false}};
    c.jacobian = [](const Point& p) { return std::sin(p[0]); };
    c.embedding = [](const Point& p) {
        const double st = std::sin(p[0]), ct = std::cos(p[0]);
        return std::vector<double>{st * std::cos(p[1]), st * std::sin(p[1]), ct};
    };
    c.embedding_jacobian = [](const Point& p) {
        const double st = std::sin(p[0]), ct = std::cos(p[0]);
        const double cf = std::cos(p[1]), sf = std::sin(p[1]);
        return std::vector<std::vector<double>>{
            {ct * cf, -st * sf}, {ct * sf, st * cf}, {-st, 0.0}};
    };
    return c;
}

Chart Chart::sphere3_hopf(int n) {
    Chart c;
    c.name = "sphere3";
    c.axes = {Axis{0.0, 0.5 * pi, n, false, true},
              Axis{0.0, 2.0 * pi, n, true, false},
              Axis{0.0, 2.0 * pi, n, true, false}};
    c.jacobian = [](const Point& p) { return std::sin(p[0]) * std::cos(p[0]); };
    c.embedding = [](const Point& p) {
        const double ce = std::cos(p[0]), se = std::sin(p[0]);
        return std::vector<double>{ce * std::cos(p[1]), ce * std::sin(p[1]),
                                   se * std::cos(p[2]), se * std::sin(p[2])};
    };
    c.embedding_jacobian = [](const Point& p) {
        const double ce = std::cos(p[0]), se = std::sin(p[0]);
        const double c1 = std::cos(p[1]), s1 = std::sin(p[1]);
        const double c2 = std::cos(p[2]), s2 = std::sin(p[2]);
        return std::vector<std::vector<double>>{{-se * c1, -ce * s1, 0.0},
                                                {-se * s1, ce * c1, 0.0},
                                                {ce * c2, 0.0, -se * s2},
                                                {ce * s2, 0.0, se * c2}};
    };
    return c;
}

Chart Chart::single_point() {
    Chart c;
    c.name = "point";
    c.jacobian = [](const Point&) { return 1.0; };
    return c;
}

Chart Chart::by_name(const std::string& name) {
    if (name == "interval") return interval();
    if (name == "circle") return circle();
    if (name == "torus2") return torus2();
    if (name == "sphere2") return sphere2();
    if (name == "sphere3" || name == "sphere3_hopf") return sphere3_hopf();
    if (name == "point") return single_point();
    throw std::invalid_argument("unknown chart: " + name);
}

std::vector<double> axis_weights(const Axis& ax) {
    const int n = ax.samples;
    const double h = ax.step();
    std::vector<double> w(n, h);
    if (ax.periodic) return w;

    if (ax.cell_centered) {
        // Midpoint rule plus the h^2/24 Euler-Maclaurin end correction, with the
        // boundary derivatives taken from 4-point one-sided stencils; leaves an
        // O(h^4) remainder for smooth integrands.
        if (n >= 8) {
            static const double c[4] = {71.0 / 576.0, -141.0 / 576.0, 93.0 / 576.0,
                                        -23.0 / 576.0};
            for (int j = 0; j < 4; ++j) {
                w[j] += c[j] * h;
                w[n - 1 - j] += c[j] * h;
            }
        }
        return w;
    }

    // Node-centered bounded axis: composite Simpson; odd interval count gets a
    // 3/8 tail.
    std::fill(w.begin(), w.end(), 0.0);
    int intervals = n - 1;
    int simpson_end = intervals;       // node index where the paired part stops
    bool tail38 = (intervals % 2 != 0);
    if (tail38) {
        if (intervals < 3) {  // two points: trapezoid
            w[0] = w[1] = h / 2.0;
            return w;
        }
        simpson_end = intervals - 3;
    }
    for (int k = 0; k + 2 <= simpson_end; k += 2) {
        w[k] += h / 3.0;
        w[k + 1] += 4.0 * h / 3.0;
        w[k + 2] += h / 3.0;
    }
    if (tail38) {
        const int s = simpson_end;
        w[s] += 3.0 * h / 8.0;
        w[s + 1] += 9.0 * h / 8.0;
        w[s + 2] += 9.0 * h / 8.0;
        w[s + 3] += 3.0 * h / 8.0;
    }
    return w;
}

void for_each_grid_point(const Chart& chart,
                         const std::function<void(size_t, const Point&)>& fn) {
    const size_t total = chart.grid_size();
    for (size_t idx = 0; idx < total; ++idx) fn(idx, chart.point_at(chart.unflatten(idx)));
}

}  // namespace oddchern
