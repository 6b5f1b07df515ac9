#include "oddchern/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace oddchern {

namespace {

// Gauss-Legendre on [-1, 1].
const LineRule& gauss_reference(int n) {
    static std::map<int, LineRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    LineRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // recompute derivative at the converged node
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    std::vector<size_t> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return rule.nodes[a] < rule.nodes[b]; });
    LineRule sorted;
    for (size_t k : order) {
        sorted.nodes.push_back(rule.nodes[k]);
        sorted.weights.push_back(rule.weights[k]);
    }
    return cache.emplace(n, std::move(sorted)).first->second;
}

LineRule simpson_rule(int n, double a, double b) {
    if (n < 3) n = 3;
    if (n % 2 == 0) ++n;  // composite Simpson wants an even interval count
    LineRule rule;
    const double h = (b - a) / (n - 1);
    rule.nodes.resize(n);
    rule.weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) rule.nodes[i] = a + i * h;
    for (int k = 0; k + 2 < n; k += 2) {
        rule.weights[k] += h / 3.0;
        rule.weights[k + 1] += 4.0 * h / 3.0;
        rule.weights[k + 2] += h / 3.0;
    }
    return rule;
}

}  // namespace

LineRule line_rule(const QuadratureSpec& spec, double a, double b) {
    if (spec.nodes < 2) throw std::invalid_argument("quadrature needs at least 2 nodes");
    if (spec.rule == QuadratureSpec::Rule::simpson) return simpson_rule(spec.nodes, a, b);
    const LineRule& ref = gauss_reference(spec.nodes);
    LineRule rule;
    rule.nodes.reserve(ref.nodes.size());
    rule.weights.reserve(ref.nodes.size());
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < ref.nodes.size(); ++i) {
        rule.nodes.push_back(mid + half * ref.nodes[i]);
        rule.weights.push_back(half * ref.weights[i]);
    }
    return rule;
}

LineRule segmented_rule(const QuadratureSpec& spec, const std::vector<double>& breaks) {
    std::vector<double> cuts = {0.0};
    for (double b : breaks)
        if (b > 1e-12 && b < 1.0 - 1e-12) cuts.push_back(b);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    LineRule rule;
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
        LineRule seg = line_rule(spec, cuts[s], cuts[s + 1]);
        rule.nodes.insert(rule.nodes.end(), seg.nodes.begin(), seg.nodes.end());
        rule.weights.insert(rule.weights.end(), seg.weights.begin(), seg.weights.end());
    }
    return rule;
}

MatrixForm fiber_integrate_t(const std::function<MatrixForm(double)>& integrand,
                             const QuadratureSpec& spec, const std::vector<double>& breaks) {
    const LineRule rule = segmented_rule(spec, breaks);
    MatrixForm acc;
    bool first = true;
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        MatrixForm term = integrand(rule.nodes[j]);
        term *= cplx(rule.weights[j]);
        if (first) {
            acc = std::move(term);
            first = false;
        } else {
            acc += term;
        }
    }
    return acc;
}

cplx integrate_scalar(const std::function<cplx(double)>& f, const QuadratureSpec& spec,
                      double a, double b) {
    const LineRule rule = line_rule(spec, a, b);
    cplx acc = 0.0;
    for (size_t j = 0; j < rule.nodes.size(); ++j) acc += rule.weights[j] * f(rule.nodes[j]);
    return acc;
}

}  // namespace oddchern
