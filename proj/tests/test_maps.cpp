#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oddchern/chern.hpp"
#include "oddchern/maps.hpp"

using namespace oddchern;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace

TEST_CASE("maurer-cartan form") {
    Chart circle = Chart::circle(64);

    // constant map
    std::mt19937_64 rng(5);
    UnitaryMap c = constant_map(circle, random_unitary(2, rng));
    CHECK(maurer_cartan(c, {0.25}).max_abs() < 1e-15);

    // g(theta) = e^{2 pi i theta}: g^{-1} dg = 2 pi i d theta
    UnitaryMap g = exp_scalar_map([](const Point& p) { return p[0]; }, circle,
                                  [](const Point&) { return std::vector<double>{1.0}; });
    MatrixForm mc = maurer_cartan(g, {0.3});
    CHECK(std::abs(mc.coefficient(0b1u)(0, 0) - cplx(0.0, two_pi)) < 1e-12);

    // skew-hermitian coefficients for the sphere map
    Chart s3 = Chart::sphere3_hopf(8);
    UnitaryMap cl = clifford_sphere_map(1, s3);
    std::uniform_real_distribution<double> u01(0.05, 0.95);
    for (int trial = 0; trial < 5; ++trial) {
        Point p = {u01(rng) * pi / 2, u01(rng) * two_pi, u01(rng) * two_pi};
        MatrixForm a = maurer_cartan(cl, p);
        for (const auto& [mask, coeff] : a.terms) CHECK(is_skew_hermitian(coeff, 1e-8));
    }

    // rejects non-unitary evaluations
    UnitaryMap bad;
    bad.chart = circle;
    bad.matrix_dim = 1;
    bad.eval = [](const Point&) {
        ComplexMatrix m(1);
        m(0, 0) = 2.0;
        return m;
    };
    bad.partials = [](const Point&) { return std::vector<ComplexMatrix>{ComplexMatrix(1)}; };
    CHECK_THROWS_AS(maurer_cartan(bad, {0.0}), std::invalid_argument);
}

TEST_CASE("clifford sphere maps") {
    // n=0: 2x2, |det| = 1 everywhere, unit winding in the character
    UnitaryMap g0 = clifford_sphere_map(0);
    for_each_grid_point(g0.chart, [&](size_t, const Point& p) {
        const ComplexMatrix v = g0.eval(p);
        CHECK(is_unitary(v, 1e-12));
        CHECK(std::abs(std::abs(det(v)) - 1.0) < 1e-12);
    });
    const double period0 = integrate_top(odd_chern(g0)).real();
    CHECK(std::abs(std::abs(period0) - 1.0) < 1e-10);

    // n=1 on a coarse Hopf grid: unitary, top coefficient a constant multiple
    // of the volume density
    Chart s3 = Chart::sphere3_hopf(10);
    UnitaryMap g1 = clifford_sphere_map(1, s3);
    CHECK(g1.matrix_dim == 4);
    FormField ch = odd_chern(g1);
    const auto* top = ch.find(0b111u);
    REQUIRE(top != nullptr);
    double lo = 1e300, hi = -1e300;
    for_each_grid_point(s3, [&](size_t idx, const Point& p) {
        CHECK(is_unitary(g1.eval(p), 1e-12));
        const double r = (*top)[idx].real() / s3.jacobian_at(p);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    });
    CHECK((hi - lo) / std::abs(hi) < 1e-12);

    CHECK_THROWS_AS(clifford_sphere_map(2), std::invalid_argument);
}

TEST_CASE("exp_scalar_map characters") {
    // f = 0
    Chart t2 = Chart::torus2(16, 16);
    UnitaryMap id = exp_scalar_map([](const Point&) { return 0.0; }, t2,
                                   [](const Point&) { return std::vector<double>{0.0, 0.0}; });
    CHECK(odd_chern(id).max_abs() < 1e-15);

    // f = x on the interval: Ch = dx
    Chart interval = Chart::interval(65);
    UnitaryMap gx = exp_scalar_map([](const Point& p) { return p[0]; }, interval,
                                   [](const Point&) { return std::vector<double>{1.0}; });
    FormField ch = odd_chern(gx);
    const auto* d1 = ch.find(0b1u);
    REQUIRE(d1 != nullptr);
    for (int k = 0; k < 65; ++k) CHECK(std::abs((*d1)[k] - cplx(1.0)) < 1e-12);

    // f = cos(theta) on the sphere: Ch = -sin(theta) d theta
    Chart s2 = Chart::sphere2(32, 8);
    UnitaryMap gc = exp_scalar_map(
        [](const Point& p) { return std::cos(p[0]); }, s2,
        [](const Point& p) { return std::vector<double>{-std::sin(p[0]), 0.0}; });
    FormField chc = odd_chern(gc);
    double worst = 0.0;
    const auto* dtheta = chc.find(0b01u);
    REQUIRE(dtheta != nullptr);
    for_each_grid_point(s2, [&](size_t idx, const Point& p) {
        worst = std::max(worst, std::abs((*dtheta)[idx] - cplx(-std::sin(p[0]))));
    });
    CHECK(worst < 1e-12);
}

TEST_CASE("projection loop") {
    Chart s2 = Chart::sphere2(16, 16);
    ProjectionMap bott = bott_projection(s2);

    PathOfMaps loop = projection_loop(bott);
    const Point p = {0.7, 1.3};
    CHECK(max_abs_diff(loop.eval(p, 0.0), ComplexMatrix::identity(2)) < 1e-14);
    CHECK(max_abs_diff(loop.eval(p, 1.0), ComplexMatrix::identity(2)) < 1e-12);

    // g_{1/2} = Id - 2P, so g_{1/2} - Id has the rank of P
    ComplexMatrix expected = ComplexMatrix::identity(2);
    ComplexMatrix twop = bott.eval(p);
    twop *= -2.0;
    expected += twop;
    CHECK(max_abs_diff(loop.eval(p, 0.5), expected) < 1e-13);

    // constant zero projection gives the constant identity path
    ProjectionMap zero = constant_projection(s2, ComplexMatrix::zero(2));
    PathOfMaps idpath = projection_loop(zero);
    CHECK(max_abs_diff(idpath.eval(p, 0.37), ComplexMatrix::identity(2)) < 1e-15);
    CHECK(idpath.t_deriv(p, 0.37).max_abs() < 1e-15);

    CHECK_THROWS_AS(projection_loop(bott, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(projection_loop(bott, 1.5), std::invalid_argument);

    // analytic t-derivative against finite differences
    const double h = 1e-6;
    ComplexMatrix fd = loop.eval(p, 0.4 + h) - loop.eval(p, 0.4 - h);
    fd *= cplx(1.0 / (2.0 * h));
    CHECK(max_abs_diff(fd, loop.t_deriv(p, 0.4)) < 1e-8);
}

TEST_CASE("swap, cancellation and multiplication path endpoints") {
    Chart t2 = Chart::torus2(8, 8);
    UnitaryMap g = analytic_unitary_map(t2, 21);
    UnitaryMap h = analytic_unitary_map(t2, 22);
    const Point p = {0.3, 0.6};
    const ComplexMatrix gv = g.eval(p), hv = h.eval(p);

    PathOfMaps sw = swap_path(g, h);
    CHECK(max_abs_diff(sw.eval(p, 0.0), block_sum(gv, hv)) < 1e-13);
    CHECK(max_abs_diff(sw.eval(p, 1.0), block_sum(hv, gv)) < 1e-13);

    PathOfMaps ca = cancellation_path(g);
    CHECK(max_abs_diff(ca.eval(p, 0.0), block_sum(gv, gv.adjoint())) < 1e-13);
    CHECK(max_abs_diff(ca.eval(p, 1.0), ComplexMatrix::identity(4)) < 1e-13);

    PathOfMaps mu = multiplication_path(g, h);
    CHECK(max_abs_diff(mu.eval(p, 0.0), block_sum(gv, hv)) < 1e-13);
    CHECK(max_abs_diff(mu.eval(p, 1.0), block_sum(gv * hv, ComplexMatrix::identity(2))) <
          1e-13);

    // h = Id keeps the multiplication path constant
    UnitaryMap id2 = constant_map(t2, ComplexMatrix::identity(2));
    PathOfMaps constant = multiplication_path(g, id2);
    for (double t : {0.0, 0.4, 1.0})
        CHECK(max_abs_diff(constant.eval(p, t), block_sum(gv, ComplexMatrix::identity(2))) <
              1e-13);

    // g = h still has a pointwise-vanishing swap integrand
    PathOfMaps same = swap_path(g, g);
    const PathJet jet = same.at(p, 0.35);
    CHECK(std::abs((jet.value.adjoint() * jet.t_deriv).trace()) < 1e-13);
}

TEST_CASE("composition and reparametrization") {
    Chart t2 = Chart::torus2(6, 6);
    PathOfMaps a = analytic_unitary_path(t2, 31);
    PathOfMaps q = analytic_unitary_path(t2, 32);
    PathOfMaps b = left_multiply(path_slice(a, 1.0), q);

    PathOfMaps ab = compose_paths(a, b);
    const Point p = {0.4, 0.1};
    CHECK(max_abs_diff(ab.eval(p, 0.0), a.eval(p, 0.0)) < 1e-13);
    CHECK(max_abs_diff(ab.eval(p, 1.0), b.eval(p, 1.0)) < 1e-13);
    // plateau
    CHECK(max_abs_diff(ab.eval(p, 0.5), a.eval(p, 1.0)) < 1e-13);
    CHECK(ab.t_deriv(p, 0.5).max_abs() < 1e-15);
    CHECK(ab.t_breaks.size() == 2);

    // mismatched endpoints rejected
    CHECK_THROWS_AS(compose_paths(a, analytic_unitary_path(t2, 33)), std::invalid_argument);

    // reversal flips endpoints
    PathOfMaps rev = reverse_path(a);
    CHECK(max_abs_diff(rev.eval(p, 0.0), a.eval(p, 1.0)) < 1e-14);
}

TEST_CASE("derivative closures agree with finite differences") {
    Chart t2 = Chart::torus2(8, 8);
    const Point p = {0.35, 0.15};
    const double step = 1e-4;

    UnitaryMap g = analytic_unitary_map(t2, 41);
    auto fd = fd_partials(t2, g.eval, step);
    const auto analytic = g.partials(p);
    const auto numeric = fd(p);
    for (size_t i = 0; i < analytic.size(); ++i)
        CHECK(max_abs_diff(analytic[i], numeric[i]) < 1e-6);

    UnitaryMap ginv = inverse_map(g);
    auto fd_inv = fd_partials(t2, ginv.eval, step);
    const auto analytic_inv = ginv.partials(p);
    const auto numeric_inv = fd_inv(p);
    for (size_t i = 0; i < analytic_inv.size(); ++i)
        CHECK(max_abs_diff(analytic_inv[i], numeric_inv[i]) < 1e-6);

    // maurer_cartan of the inverse map equals -g (g^{-1} dg) g^{-1} = -dg g^{-1}
    MatrixForm mc = maurer_cartan(g, p);
    MatrixForm mc_inv = maurer_cartan(ginv, p);
    const ComplexMatrix gv = g.eval(p);
    for (const auto& [mask, coeff] : mc.terms) {
        ComplexMatrix expect = gv * coeff * gv.adjoint();
        expect *= -1.0;
        CHECK(max_abs_diff(mc_inv.coefficient(mask), expect) < 1e-10);
    }

    // path jets: spatial and t derivatives
    PathOfMaps path = analytic_unitary_path(t2, 42);
    const double t = 0.3;
    const PathJet jet = path.at(p, t);
    ComplexMatrix fd_t = path.eval(p, t + step) - path.eval(p, t - step);
    fd_t *= cplx(1.0 / (2.0 * step));
    CHECK(max_abs_diff(jet.t_deriv, fd_t) < 1e-6);

    // block sums propagate derivatives
    PathOfMaps two = block_sum_path(path, inverse_path(path));
    const PathJet jet2 = two.at(p, t);
    CHECK(jet2.value.dim() == 4);
    ComplexMatrix fd2 = two.eval(p, t + step) - two.eval(p, t - step);
    fd2 *= cplx(1.0 / (2.0 * step));
    CHECK(max_abs_diff(jet2.t_deriv, fd2) < 1e-6);
}

TEST_CASE("two-parameter families fix their endpoints") {
    Chart t2 = Chart::torus2(6, 6);
    const std::vector<TwoParamFamily> families = {reparam_family(t2, 51),
                                                  generic_endpoint_fixed_family(t2, 52)};
    for (const auto& fam : families) {
        CHECK(fam.endpoints_constant);
        const Point p = {0.2, 0.8};
        for (double s : {0.0, 0.3, 1.0}) {
            CHECK(max_abs_diff(fam.eval(p, 0.0, s), fam.eval(p, 0.0, 0.0)) < 1e-13);
            CHECK(max_abs_diff(fam.eval(p, 1.0, s), fam.eval(p, 1.0, 0.0)) < 1e-13);
        }
        // jets against finite differences in t and s
        const double step = 1e-5;
        const FamilyJet jet = fam.at(p, 0.4, 0.6);
        ComplexMatrix fd_t = fam.eval(p, 0.4 + step, 0.6) - fam.eval(p, 0.4 - step, 0.6);
        fd_t *= cplx(1.0 / (2.0 * step));
        CHECK(max_abs_diff(jet.t_deriv, fd_t) < 1e-7);
        ComplexMatrix fd_s = fam.eval(p, 0.4, 0.6 + step) - fam.eval(p, 0.4, 0.6 - step);
        fd_s *= cplx(1.0 / (2.0 * step));
        CHECK(max_abs_diff(jet.s_deriv, fd_s) < 1e-7);
    }
}

TEST_CASE("per-slice unitarity of constructed paths") {
    Chart t2 = Chart::torus2(6, 6);
    PathOfMaps path = analytic_unitary_path(t2, 61);
    PathOfMaps loop = conjugated_loop(Chart::single_point(), 2, 62);
    std::mt19937_64 rng(63);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double t = u01(rng);
        CHECK(is_unitary(path.eval({u01(rng), u01(rng)}, t), 1e-9));
        CHECK(is_unitary(loop.eval({}, t), 1e-9));
    }
}
