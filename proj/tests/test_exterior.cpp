#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "oddchern/form_field.hpp"
#include "oddchern/quadrature.hpp"

using namespace oddchern;

namespace {

constexpr double pi = std::numbers::pi;

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(u(rng), u(rng));
    return m;
}

MatrixForm random_one_form(int chart_dim, int mat_dim, std::mt19937_64& rng) {
    MatrixForm f(chart_dim, mat_dim);
    for (int a = 0; a < chart_dim; ++a) f.add_term(1u << a, random_matrix(mat_dim, rng));
    return f;
}

double form_diff(const MatrixForm& a, const MatrixForm& b) {
    MatrixForm d = a;
    MatrixForm minus_b = b;
    minus_b *= -1.0;
    d += minus_b;
    return d.max_abs();
}

}  // namespace

TEST_CASE("wedge basics: repeated index kills, Koszul sign flips") {
    std::mt19937_64 rng(1);
    ComplexMatrix a = random_matrix(2, rng), b = random_matrix(2, rng);
    MatrixForm fa(3, 2), fb1(3, 2), fb2(3, 2);
    fa.add_term(0b001u, a);
    fb1.add_term(0b001u, b);
    fb2.add_term(0b010u, b);

    CHECK(wedge(fa, fb1).max_abs() < 1e-15);

    MatrixForm ab = wedge(fa, fb2);
    CHECK(max_abs_diff(ab.coefficient(0b011u), a * b) < 1e-15);
    MatrixForm ba = wedge(fb2, fa);
    ComplexMatrix minus_ba = b * a;
    minus_ba *= -1.0;
    CHECK(max_abs_diff(ba.coefficient(0b011u), minus_ba) < 1e-15);
}

TEST_CASE("wedge associativity, brute force over degree-1 forms in four axes") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        MatrixForm a = random_one_form(4, 2, rng);
        MatrixForm b = random_one_form(4, 2, rng);
        MatrixForm c = random_one_form(4, 2, rng);
        CHECK(form_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-13);
    }
}

TEST_CASE("trace form") {
    MatrixForm f(2, 3);
    f.add_term(0b01u, ComplexMatrix::identity(3));
    MatrixForm t = trace_form(f);
    CHECK(std::abs(t.coefficient(0b01u)(0, 0) - cplx(3.0)) < 1e-15);

    std::mt19937_64 rng(3);
    ComplexMatrix a = random_matrix(2, rng), b = random_matrix(2, rng);
    MatrixForm fa(2, 2), fb(2, 2);
    fa.add_term(0b01u, a);
    fb.add_term(0b10u, b);
    CHECK(std::abs(trace_form(wedge(fa, fb)).coefficient(0b11u)(0, 0) - (a * b).trace()) <
          1e-14);
}

TEST_CASE("trace of a wedge is graded commutative") {
    std::mt19937_64 rng(4);
    for (int deg_a : {1, 3}) {
        for (int deg_b : {1, 3}) {
            if (deg_a + deg_b > 4) continue;
            // build odd-degree forms as wedge powers of random one-forms
            MatrixForm a = random_one_form(4, 2, rng);
            if (deg_a == 3) a = wedge(a, wedge(random_one_form(4, 2, rng), random_one_form(4, 2, rng)));
            MatrixForm b = random_one_form(4, 2, rng);
            if (deg_b == 3) b = wedge(b, wedge(random_one_form(4, 2, rng), random_one_form(4, 2, rng)));
            a = a.degree_part(deg_a);
            b = b.degree_part(deg_b);

            MatrixForm lhs = trace_form(wedge(a, b));
            MatrixForm rhs = trace_form(wedge(b, a));
            const double sign = ((deg_a * deg_b) % 2 == 0) ? 1.0 : -1.0;
            rhs *= sign;
            CHECK(form_diff(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("exterior derivative: constants, quadratics, d after d") {
    // constant 0-form
    Chart interval = Chart::interval(65);
    FormField constf(interval);
    constf.component(0u).assign(interval.grid_size(), cplx(2.5));
    CHECK(exterior_derivative(constf).max_abs() < 1e-13);

    // f(x) = x^2: derivative 2x with O(h^2) error, here exact for the central
    // stencil on a quadratic
    FormField f(interval);
    auto& arr = f.component(0u);
    for_each_grid_point(interval, [&](size_t idx, const Point& p) { arr[idx] = p[0] * p[0]; });
    FormField df = exterior_derivative(f);
    const auto& d1 = *df.find(0b1u);
    double worst = 0.0;
    for (int k = 1; k + 1 < 65; ++k) {
        const double x = interval.axes[0].node(k);
        worst = std::max(worst, std::abs(d1[k] - cplx(2.0 * x)));
    }
    CHECK(worst < 1e-12);

    // d of d on the torus sits at roundoff (commuting central stencils)
    Chart t2 = Chart::torus2(32, 32);
    FormField g(t2);
    auto& garr = g.component(0u);
    for_each_grid_point(t2, [&](size_t idx, const Point& p) {
        garr[idx] = std::sin(2 * pi * p[0]) * std::cos(2 * pi * (p[1] + 0.2 * p[0]));
    });
    CHECK(exterior_derivative(exterior_derivative(g)).max_abs() < 1e-10);

    // linearity
    FormField sum = exterior_derivative(g + g);
    FormField two_dg = exterior_derivative(g);
    two_dg *= 2.0;
    CHECK(max_abs_diff(sum, two_dg) < 1e-13);
}

TEST_CASE("exterior derivative error is second order on a smooth field") {
    double resid[2];
    const int grids[2] = {64, 128};
    for (int gi = 0; gi < 2; ++gi) {
        Chart c = Chart::interval(grids[gi] + 1);
        FormField f(c);
        auto& arr = f.component(0u);
        FormField expected(c);
        auto& earr = expected.component(0b1u);
        for_each_grid_point(c, [&](size_t idx, const Point& p) {
            arr[idx] = std::sin(3.0 * p[0]);
            earr[idx] = 3.0 * std::cos(3.0 * p[0]);
        });
        expected.margin = {1};
        resid[gi] = max_abs_diff(exterior_derivative(f), expected);
    }
    const double ratio = resid[0] / resid[1];
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("top-degree integration") {
    CHECK(std::abs(integrate_top(volume_form(Chart::sphere2())) - cplx(4.0 * pi)) < 1e-6);
    CHECK(std::abs(integrate_top(volume_form(Chart::sphere3_hopf())) - cplx(2.0 * pi * pi)) <
          1e-5);
    CHECK(std::abs(integrate_top(volume_form(Chart::interval())) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(integrate_top(volume_form(Chart::torus2())) - cplx(1.0)) < 1e-12);

    FormField zero(Chart::sphere2());
    CHECK(std::abs(integrate_top(zero)) == 0.0);

    // Stokes: the integral of d(alpha) over the closed torus vanishes
    Chart t2 = Chart::torus2(48, 48);
    FormField alpha(t2);
    auto& a1 = alpha.component(0b01u);
    auto& a2 = alpha.component(0b10u);
    for_each_grid_point(t2, [&](size_t idx, const Point& p) {
        const double bump = std::exp(-20.0 * (std::pow(p[0] - 0.5, 2) + std::pow(p[1] - 0.5, 2)));
        a1[idx] = bump;
        a2[idx] = bump * std::sin(2 * pi * p[0]);
    });
    CHECK(std::abs(integrate_top(exterior_derivative(alpha))) < 1e-8);
}

TEST_CASE("fiber integration identities") {
    QuadratureSpec quad;  // 64 Gauss nodes

    // constant integrand comes back unchanged
    MatrixForm value(2, 2);
    value.add_term(0b01u, ComplexMatrix::identity(2));
    MatrixForm got = fiber_integrate_t([&](double) { return value; }, quad);
    CHECK(max_abs_diff(got.coefficient(0b01u), ComplexMatrix::identity(2)) < 1e-14);

    // sin^{2n} moments
    for (int n = 0; n <= 6; ++n) {
        const double expected =
            factorial(2 * n) / (factorial(n) * factorial(n) * std::pow(4.0, n));
        const cplx v = integrate_scalar(
            [n](double t) { return cplx(std::pow(std::sin(pi * t), 2 * n)); }, quad);
        CHECK(std::abs(v.real() - expected) / expected < 1e-12);
    }

    // beta moments
    for (int k = 0; k <= 5; ++k)
        for (int l = 0; l <= 5; ++l) {
            const double expected = factorial(k) * factorial(l) / factorial(k + l + 1);
            const cplx v = integrate_scalar(
                [k, l](double s) { return cplx(std::pow(s, k) * std::pow(1.0 - s, l)); }, quad);
            CHECK(std::abs(v.real() - expected) / expected < 1e-12);
        }

    // Gauss rules integrate polynomials below degree 2*nodes exactly
    QuadratureSpec small{5, QuadratureSpec::Rule::gauss};
    const cplx v = integrate_scalar([](double t) { return cplx(std::pow(t, 9)); }, small);
    CHECK(std::abs(v.real() - 0.1) < 1e-15);

    QuadratureSpec bad{1, QuadratureSpec::Rule::gauss};
    CHECK_THROWS_AS(line_rule(bad), std::invalid_argument);
}

TEST_CASE("chart plumbing") {
    CHECK_THROWS_AS(Chart::by_name("nope"), std::invalid_argument);
    CHECK_THROWS_AS(Chart::interval().with_samples({2}), std::invalid_argument);

    Chart s2 = Chart::sphere2();
    CHECK(s2.dim() == 2);
    CHECK(s2.grid_size() == 64u * 128u);
    // the offset grid keeps away from the poles
    CHECK(s2.axes[0].node(0) > 0.0);
    CHECK(s2.axes[0].node(63) < pi);

    Chart pt = Chart::single_point();
    CHECK(pt.dim() == 0);
    CHECK(pt.grid_size() == 1u);
}

TEST_CASE("CSV serialization schema") {
    Chart c = Chart::interval(3);
    FormField f(c);
    f.component(0b1u) = {cplx(1.0, -2.0), cplx(0.5), cplx(0.0)};
    std::ostringstream os;
    write_csv(f, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "multi_index,x1,re,im");
    std::getline(is, line);
    CHECK(line == "1,0,1,-2");
}
