#include "oddchern/chern.hpp"

#include <cmath>
#include <numbers>

namespace oddchern {

namespace {

constexpr double pi = std::numbers::pi;

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double binom(int n, int k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
}

cplx two_pi_i_pow(int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= cplx(0.0, 2.0 * pi);
    return r;
}

// (-1)^n n! / ((2 pi i)^{n+1} (2n+1)!)
cplx odd_coefficient(int n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial(n) / (two_pi_i_pow(n + 1) * factorial(2 * n + 1));
}

// (-1)^n n! / ((2 pi i)^{n+1} (2n)!)
cplx cs_coefficient(int n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial(n) / (two_pi_i_pow(n + 1) * factorial(2 * n));
}

// 1 / ((2 pi i)^n n!)
cplx even_coefficient(int n) {
    return 1.0 / (two_pi_i_pow(n) * factorial(n));
}

}  // namespace

MatrixForm odd_chern_at(const UnitaryMap& g, const Point& p, const SeriesSpec& spec) {
    const int d = g.chart.dim();
    const int nmax = spec.resolve(d);
    const MatrixForm a = maurer_cartan(g, p);

    MatrixForm result(d, 1);
    MatrixForm power = a;  // A^{2n+1}
    MatrixForm a2;
    bool have_a2 = false;
    for (int n = 0; n <= nmax && 2 * n + 1 <= d; ++n) {
        if (n > 0) {
            if (!have_a2) {
                a2 = wedge(a, a);
                have_a2 = true;
            }
            power = wedge(power, a2);
        }
        MatrixForm term = trace_form(power);
        term *= odd_coefficient(n);
        result += term;
    }
    return result;
}

FormField odd_chern(const UnitaryMap& g, const SeriesSpec& spec) {
    return assemble_field(
        g.chart, [&](const Point& p) { return odd_chern_at(g, p, spec); }, true);
}

FormField cs(const PathOfMaps& path, const SeriesSpec& spec, const QuadratureSpec& quad) {
    const Chart& chart = path.chart;
    const int d = chart.dim();
    const int nmax = spec.resolve(d);
    const LineRule rule = segmented_rule(quad, path.t_breaks);

    std::vector<cplx> coeffs;
    for (int n = 0; n <= nmax && 2 * n <= d; ++n) coeffs.push_back(cs_coefficient(n));

    FormField out(chart);
    out.real_tagged = true;
    for_each_grid_point(chart, [&](size_t idx, const Point& p) {
        MatrixForm acc(d, 1);
        for (size_t j = 0; j < rule.nodes.size(); ++j) {
            const double t = rule.nodes[j];
            const PathJet jet = path.at(p, t);
            const ComplexMatrix inv = jet.value.adjoint();
            const ComplexMatrix v = inv * jet.t_deriv;
            MatrixForm a(d, path.matrix_dim);
            for (int i = 0; i < d; ++i) a.add_term(1u << i, inv * jet.partials[i]);

            MatrixForm cur = MatrixForm::from_matrix(d, v);  // V A^{2n}
            MatrixForm a2;
            bool have_a2 = false;
            for (size_t n = 0; n < coeffs.size(); ++n) {
                if (n > 0) {
                    if (!have_a2) {
                        a2 = wedge(a, a);
                        have_a2 = true;
                    }
                    cur = wedge(cur, a2);
                }
                MatrixForm term = trace_form(cur);
                term *= coeffs[n] * rule.weights[j];
                acc += term;
            }
        }
        for (const auto& [mask, coeff] : acc.terms) out.component(mask)[idx] = coeff(0, 0);
    });
    return out;
}

FormField even_chern_of_projection(const ProjectionMap& p, const SeriesSpec& spec) {
    const Chart& chart = p.chart;
    const int d = chart.dim();
    const int nmax = spec.resolve(d);

    FormField out(chart);
    out.real_tagged = true;
    for_each_grid_point(chart, [&](size_t idx, const Point& q) {
        const ComplexMatrix proj = p.eval(q);
        const auto dp = p.partials(q);
        MatrixForm dpf(d, p.matrix_dim);
        for (int i = 0; i < d; ++i) dpf.add_term(1u << i, dp[i]);

        MatrixForm cur = MatrixForm::from_matrix(d, proj);  // P (dP)^{2n}
        MatrixForm dp2;
        bool have_dp2 = false;
        MatrixForm acc(d, 1);
        for (int n = 0; n <= nmax && 2 * n <= d; ++n) {
            if (n > 0) {
                if (!have_dp2) {
                    dp2 = wedge(dpf, dpf);
                    have_dp2 = true;
                }
                cur = wedge(cur, dp2);
            }
            MatrixForm term = trace_form(cur);
            term *= even_coefficient(n);
            acc += term;
        }
        for (const auto& [mask, coeff] : acc.terms) out.component(mask)[idx] = coeff(0, 0);
    });
    return out;
}

FormField h_form(const TwoParamFamily& family, const SeriesSpec& spec,
                 const QuadratureSpec& quad) {
    const Chart& chart = family.chart;
    const int d = chart.dim();
    const int nmax = spec.resolve(d);
    const LineRule rule = line_rule(quad);

    FormField out(chart);
    out.real_tagged = true;
    for_each_grid_point(chart, [&](size_t idx, const Point& p) {
        MatrixForm acc(d, 1);
        for (size_t jt = 0; jt < rule.nodes.size(); ++jt) {
            for (size_t js = 0; js < rule.nodes.size(); ++js) {
                const double t = rule.nodes[jt], s = rule.nodes[js];
                const double w = rule.weights[jt] * rule.weights[js];
                const FamilyJet jet = family.at(p, t, s);
                const ComplexMatrix inv = jet.value.adjoint();
                const MatrixForm tf = MatrixForm::from_matrix(d, inv * jet.t_deriv);
                const MatrixForm sf = MatrixForm::from_matrix(d, inv * jet.s_deriv);
                MatrixForm a(d, family.matrix_dim);
                for (int i = 0; i < d; ++i) a.add_term(1u << i, inv * jet.partials[i]);

                // string of 2n+1 factors, A everywhere except the t-velocity in
                // slot i and the s-velocity in slot j; the sign is the Koszul
                // sign of pulling dt ds to the front of the wedge expansion.
                for (int n = 1; n <= nmax && 2 * n - 1 <= d; ++n) {
                    const int len = 2 * n + 1;
                    const cplx cn = odd_coefficient(n);
                    for (int i = 1; i <= len; ++i) {
                        for (int j = 1; j <= len; ++j) {
                            if (i == j) continue;
                            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                            if (i < j) sign = -sign;
                            MatrixForm prod;
                            bool first = true;
                            for (int slot = 1; slot <= len; ++slot) {
                                const MatrixForm& f = (slot == i) ? tf : (slot == j) ? sf : a;
                                if (first) {
                                    prod = f;
                                    first = false;
                                } else {
                                    prod = wedge(prod, f);
                                }
                            }
                            MatrixForm term = trace_form(prod);
                            term *= cn * sign * w;
                            acc += term;
                        }
                    }
                }
            }
        }
        for (const auto& [mask, coeff] : acc.terms) out.component(mask)[idx] = coeff(0, 0);
    });
    return out;
}

WindingResult winding_at(const PathOfMaps& loop, const Point& p, const QuadratureSpec& quad) {
    const LineRule rule = segmented_rule(quad, loop.t_breaks);
    cplx acc = 0.0;
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = rule.nodes[j];
        const ComplexMatrix val = loop.eval(p, t);
        const ComplexMatrix vel = loop.t_deriv(p, t);
        acc += rule.weights[j] * (val.adjoint() * vel).trace();
    }
    const double value = (acc / cplx(0.0, 2.0 * pi)).real();
    return WindingResult{value, std::abs(value - std::round(value))};
}

WindingResult winding(const PathOfMaps& loop, const QuadratureSpec& quad) {
    const Chart& chart = loop.chart;
    const size_t total = chart.grid_size();
    const size_t stride = std::max<size_t>(1, total / 128);
    for (size_t idx = 0; idx < total; idx += stride) {
        const Point p = chart.point_at(chart.unflatten(idx));
        if (max_abs_diff(loop.eval(p, 0.0), loop.eval(p, 1.0)) > 1e-10)
            throw std::invalid_argument("winding: path is not a closed loop");
    }
    WindingResult worst{0.0, -1.0};
    for (size_t idx = 0; idx < total; ++idx) {
        const Point p = chart.point_at(chart.unflatten(idx));
        const WindingResult r = winding_at(loop, p, quad);
        if (r.residual > worst.residual) worst = r;
    }
    return worst;
}

double truncated_loop_coefficient(int n, double s, const QuadratureSpec& quad) {
    if (n == 0) return s;
    const cplx integral = integrate_scalar(
        [n](double t) { return cplx(std::pow(std::sin(pi * t), 2 * n)); }, quad, 0.0, s);
    return std::pow(4.0, n) / binom(2 * n, n) * integral.real();
}

TruncatedCsReport truncated_cs_check(const ProjectionMap& p, double s, const SeriesSpec& spec,
                                     const QuadratureSpec& quad) {
    const int d = p.chart.dim();
    const FormField cs_field = cs(projection_loop(p, s), spec, quad);
    const FormField even = even_chern_of_projection(p, spec);

    TruncatedCsReport report;
    FormField expected(p.chart);
    for (int n = 0; 2 * n <= d; ++n) {
        const double f = truncated_loop_coefficient(n, s, quad);
        report.f_values.push_back(f);
        FormField part = even.degree_part(2 * n);
        part *= cplx(f);
        expected += part;
    }

    FormField diff = cs_field - expected;
    for (int deg = 0; deg <= d; deg += 2) {
        const double m = diff.degree_part(deg).max_abs();
        report.degree_max_diff[deg] = m;
        report.max_diff = std::max(report.max_diff, m);
    }
    return report;
}

}  // namespace oddchern
