#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oddchern/chern.hpp"

using namespace oddchern;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace

TEST_CASE("odd character basics") {
    Chart interval = Chart::interval(33);

    std::mt19937_64 rng(1);
    UnitaryMap c = constant_map(interval, random_unitary(3, rng));
    CHECK(odd_chern(c).max_abs() < 1e-15);

    // g = e^{2 pi i x}: Ch = dx
    UnitaryMap g = exp_scalar_map([](const Point& p) { return p[0]; }, interval,
                                  [](const Point&) { return std::vector<double>{1.0}; });
    FormField ch = odd_chern(g);
    const auto* d1 = ch.find(0b1u);
    REQUIRE(d1 != nullptr);
    for (const auto& v : *d1) CHECK(std::abs(v - cplx(1.0)) < 1e-13);
    CHECK(ch.max_imag() < 1e-13);
}

TEST_CASE("odd character of the sphere map: degree support and periods") {
    Chart s3 = Chart::sphere3_hopf(12);
    UnitaryMap g = clifford_sphere_map(1, s3);
    FormField ch = odd_chern(g);

    // degree-1 part vanishes identically, so every 1-cycle period is zero
    CHECK(ch.degree_part(1).max_abs() < 1e-13);
    // the top period is a unit
    CHECK(std::abs(std::abs(integrate_top(ch).real()) - 1.0) < 1e-3);
    CHECK(ch.max_imag() < 1e-9);
}

TEST_CASE("transgression form basics") {
    Chart interval = Chart::interval(17);

    std::mt19937_64 rng(2);
    PathOfMaps constant = constant_path(constant_map(interval, random_unitary(2, rng)));
    CHECK(cs(constant).max_abs() < 1e-15);

    // 1x1 loop e^{2 pi i t}: degree-0 component is identically 1
    PathOfMaps loop = exp_loop(interval, 1);
    FormField f = cs(loop);
    const auto* deg0 = f.find(0u);
    REQUIRE(deg0 != nullptr);
    for (const auto& v : *deg0) CHECK(std::abs(v - cplx(1.0)) < 1e-13);
}

TEST_CASE("projection loop transgression equals the even character") {
    Chart s2 = Chart::sphere2(24, 48);
    ProjectionMap bott = bott_projection(s2);
    FormField lhs = cs(projection_loop(bott));
    FormField rhs = even_chern_of_projection(bott);
    CHECK(max_abs_diff(lhs, rhs) < 1e-8);
    CHECK(lhs.max_imag() < 1e-9);
}

TEST_CASE("even character of projections") {
    Chart t2 = Chart::torus2(8, 8);
    std::mt19937_64 rng(3);

    ProjectionMap constp = constant_projection(t2, random_projection(3, 2, rng));
    FormField f = even_chern_of_projection(constp);
    const auto* deg0 = f.find(0u);
    REQUIRE(deg0 != nullptr);
    for (const auto& v : *deg0) CHECK(std::abs(v - cplx(2.0)) < 1e-13);
    CHECK(f.degree_part(2).max_abs() < 1e-14);

    ProjectionMap idp = constant_projection(t2, ComplexMatrix::identity(3));
    FormField id_field = even_chern_of_projection(idp);
    const auto* full = id_field.find(0u);
    REQUIRE(full != nullptr);
    for (const auto& v : *full) CHECK(std::abs(v - cplx(3.0)) < 1e-13);
}

TEST_CASE("even character period against an independent quadrature oracle") {
    // The oracle integrates Tr P (dP)^2 / (2 pi i) over a fine midpoint grid,
    // with its own wedge arithmetic spelled out by hand.
    Chart fine = Chart::sphere2(128, 256);
    ProjectionMap bott = bott_projection(fine);
    cplx oracle = 0.0;
    const double ht = pi / 128, hp = two_pi / 256;
    for (int i = 0; i < 128; ++i) {
        for (int j = 0; j < 256; ++j) {
            const Point p = {(i + 0.5) * ht, j * hp};
            const ComplexMatrix pv = bott.eval(p);
            const auto dp = bott.partials(p);
            const ComplexMatrix comm = dp[0] * dp[1] - dp[1] * dp[0];
            oracle += (pv * comm).trace() * ht * hp;
        }
    }
    oracle /= cplx(0.0, two_pi);

    Chart s2 = Chart::sphere2();
    const cplx period = integrate_top(even_chern_of_projection(bott_projection(s2)));
    CHECK(std::abs(period.real() - 1.0) < 1e-5);
    CHECK(std::abs(period - oracle) < 1e-3);
}

TEST_CASE("double transgression vanishes for one-parameter content") {
    Chart t2 = Chart::torus2(8, 8);
    QuadratureSpec q12{12, QuadratureSpec::Rule::gauss};

    // constant in s
    PathOfMaps base = analytic_unitary_path(t2, 4);
    TwoParamFamily in_t;
    in_t.chart = t2;
    in_t.matrix_dim = 2;
    in_t.eval = [base](const Point& p, double t, double) { return base.eval(p, t); };
    in_t.partials = [base](const Point& p, double t, double) { return base.partials(p, t); };
    in_t.t_deriv = [base](const Point& p, double t, double) { return base.t_deriv(p, t); };
    in_t.s_deriv = [](const Point&, double, double) { return ComplexMatrix::zero(2); };
    CHECK(h_form(in_t, {}, q12).max_abs() < 1e-14);

    // constant in t
    TwoParamFamily in_s;
    in_s.chart = t2;
    in_s.matrix_dim = 2;
    in_s.eval = [base](const Point& p, double, double s) { return base.eval(p, s); };
    in_s.partials = [base](const Point& p, double, double s) { return base.partials(p, s); };
    in_s.t_deriv = [](const Point&, double, double) { return ComplexMatrix::zero(2); };
    in_s.s_deriv = [base](const Point& p, double, double s) { return base.t_deriv(p, s); };
    CHECK(h_form(in_s, {}, q12).max_abs() < 1e-14);
}

TEST_CASE("winding numbers") {
    Chart pt = Chart::single_point();

    CHECK(winding(constant_path(constant_map(pt, ComplexMatrix::identity(2)))).value ==
          doctest::Approx(0.0));

    for (int k = -3; k <= 3; ++k) {
        const WindingResult w = winding(exp_loop(pt, k));
        CHECK(std::lround(w.value) == k);
        CHECK(w.residual < 1e-10);
    }

    // conjugated loops keep the winding
    const WindingResult w = winding(conjugated_loop(pt, 2, 9));
    CHECK(std::lround(w.value) == 2);
    CHECK(w.residual < 1e-10);

    // open paths are rejected
    PathOfMaps open;
    open.chart = pt;
    open.matrix_dim = 1;
    open.eval = [](const Point&, double t) {
        ComplexMatrix m(1);
        m(0, 0) = std::exp(cplx(0.0, pi * t));
        return m;
    };
    open.t_deriv = [](const Point&, double t) {
        ComplexMatrix m(1);
        m(0, 0) = cplx(0.0, pi) * std::exp(cplx(0.0, pi * t));
        return m;
    };
    open.partials = [](const Point&, double) { return std::vector<ComplexMatrix>{}; };
    CHECK_THROWS_AS(winding(open), std::invalid_argument);
}

TEST_CASE("truncated loop coefficients and identity") {
    // f_0(s) = s, and f_{2n}(1) = 1
    CHECK(truncated_loop_coefficient(0, 0.5) == doctest::Approx(0.5));
    for (int n = 0; n <= 3; ++n)
        CHECK(truncated_loop_coefficient(n, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(truncated_loop_coefficient(1, 0.5) == doctest::Approx(0.5).epsilon(1e-12));

    Chart s2 = Chart::sphere2(16, 32);
    ProjectionMap bott = bott_projection(s2);
    for (double s : {1.0 / 3.0, 1.0}) {
        const auto rep = truncated_cs_check(bott, s);
        CHECK(rep.max_diff < 1e-8);
    }
}

TEST_CASE("series truncation beyond the chart dimension changes nothing") {
    Chart t2 = Chart::torus2(8, 8);
    UnitaryMap g = analytic_unitary_map(t2, 5);
    FormField a = odd_chern(g, {1});
    FormField b = odd_chern(g, {5});
    CHECK(max_abs_diff(a, b) < 1e-15);

    PathOfMaps path = analytic_unitary_path(t2, 6);
    QuadratureSpec q16{16, QuadratureSpec::Rule::gauss};
    CHECK(max_abs_diff(cs(path, {1}, q16), cs(path, {6}, q16)) < 1e-15);
}

TEST_CASE("character additivity on small grids") {
    Chart t2 = Chart::torus2(12, 12);
    UnitaryMap g = analytic_unitary_map(t2, 7);
    UnitaryMap h = analytic_unitary_map(t2, 8);

    CHECK(max_abs_diff(odd_chern(block_sum_map(g, h)), odd_chern(g) + odd_chern(h)) < 1e-10);

    FormField minus = odd_chern(g);
    minus *= -1.0;
    CHECK(max_abs_diff(odd_chern(inverse_map(g)), minus) < 1e-10);
    CHECK(odd_chern(block_sum_map(g, inverse_map(g))).max_abs() < 1e-9);
}

TEST_CASE("transgression closedness under refinement") {
    // d of the assembled character field shrinks at second order. The test map
    // mixes frequencies (2, 1) so the cross-derivative truncation terms of the
    // two stencils do not cancel each other.
    double resid[2];
    const int grids[2] = {32, 64};
    for (int gi = 0; gi < 2; ++gi) {
        Chart t2 = Chart::torus2(grids[gi], grids[gi]);
        UnitaryMap g = exp_scalar_map(
            [](const Point& p) { return 0.3 * std::cos(two_pi * (2.0 * p[0] + p[1])); }, t2,
            [](const Point& p) {
                const double s = -0.3 * two_pi * std::sin(two_pi * (2.0 * p[0] + p[1]));
                return std::vector<double>{2.0 * s, s};
            });
        resid[gi] = exterior_derivative(odd_chern(g)).max_abs();
    }
    const double ratio = resid[0] / resid[1];
    CHECK(ratio > 3.3);
    CHECK(ratio < 4.7);
}
