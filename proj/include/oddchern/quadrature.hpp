#pragma once

#include <functional>
#include <vector>

#include "oddchern/matrix_form.hpp"

namespace oddchern {

struct QuadratureSpec {
    enum class Rule { gauss, simpson };
    int nodes = 64;
    Rule rule = Rule::gauss;
};

/// Nodes and weights of the given rule on [a, b]. Gauss-Legendre computed by
/// Newton iteration on the Legendre polynomials (cached per node count).
struct LineRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

LineRule line_rule(const QuadratureSpec& spec, double a = 0.0, double b = 1.0);

/// Rule over [0, 1] split at the given interior breakpoints, applying the
/// base rule on each segment. Keeps the quadrature away from the kinks of
/// piecewise-smooth integrands (composed paths).
LineRule segmented_rule(const QuadratureSpec& spec, const std::vector<double>& breaks);

/// Integration along the fiber coordinate: sum of w_j * integrand(t_j) per
/// multi-index coefficient.
MatrixForm fiber_integrate_t(const std::function<MatrixForm(double)>& integrand,
                             const QuadratureSpec& spec,
                             const std::vector<double>& breaks = {});

cplx integrate_scalar(const std::function<cplx(double)>& f, const QuadratureSpec& spec,
                      double a = 0.0, double b = 1.0);

}  // namespace oddchern
