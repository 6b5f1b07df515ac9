#include "oddchern/maps.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <utility>

namespace oddchern {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

void check_grid_match(const Chart& a, const Chart& b, const char* who) {
    if (!a.same_grid(b)) throw std::invalid_argument(std::string(who) + ": chart mismatch");
}

}  // namespace

std::function<std::vector<ComplexMatrix>(const Point&)> fd_partials(
    const Chart& chart, const std::function<ComplexMatrix(const Point&)>& eval, double step) {
    const int d = chart.dim();
    return [d, step, eval](const Point& p) {
        std::vector<ComplexMatrix> out;
        out.reserve(d);
        for (int a = 0; a < d; ++a) {
            Point up = p, down = p;
            up[a] += step;
            down[a] -= step;
            ComplexMatrix diff = eval(up) - eval(down);
            diff *= cplx(1.0 / (2.0 * step));
            out.push_back(std::move(diff));
        }
        return out;
    };
}

MatrixForm maurer_cartan(const UnitaryMap& g, const Point& p) {
    const ComplexMatrix val = g.eval(p);
    if (!is_unitary(val, 1e-8))
        throw std::invalid_argument("maurer_cartan: map evaluation is not unitary");
    const ComplexMatrix inv = val.adjoint();
    const auto dg = g.partials(p);
    MatrixForm a(g.chart.dim(), g.matrix_dim);
    for (int i = 0; i < g.chart.dim(); ++i) a.add_term(1u << i, inv * dg[i]);
    return a;
}

MatrixForm maurer_cartan_slice(const PathOfMaps& path, const Point& p, double t) {
    const PathJet jet = path.at(p, t);
    const ComplexMatrix inv = jet.value.adjoint();
    MatrixForm a(path.chart.dim(), path.matrix_dim);
    for (int i = 0; i < path.chart.dim(); ++i) a.add_term(1u << i, inv * jet.partials[i]);
    return a;
}

UnitaryMap path_slice(const PathOfMaps& path, double t) {
    UnitaryMap g;
    g.chart = path.chart;
    g.matrix_dim = path.matrix_dim;
    g.eval = [path, t](const Point& p) { return path.eval(p, t); };
    g.partials = [path, t](const Point& p) { return path.partials(p, t); };
    return g;
}

UnitaryMap constant_map(const Chart& chart, const ComplexMatrix& value) {
    UnitaryMap g;
    g.chart = chart;
    g.matrix_dim = value.dim();
    g.eval = [value](const Point&) { return value; };
    const int d = chart.dim();
    const int n = value.dim();
    g.partials = [d, n](const Point&) {
        return std::vector<ComplexMatrix>(d, ComplexMatrix::zero(n));
    };
    return g;
}

PathOfMaps constant_path(const UnitaryMap& g) {
    PathOfMaps p;
    p.chart = g.chart;
    p.matrix_dim = g.matrix_dim;
    p.eval = [g](const Point& q, double) { return g.eval(q); };
    p.partials = [g](const Point& q, double) { return g.partials(q); };
    const int n = g.matrix_dim;
    p.t_deriv = [n](const Point&, double) { return ComplexMatrix::zero(n); };
    return p;
}

UnitaryMap inverse_map(const UnitaryMap& g) {
    UnitaryMap r;
    r.chart = g.chart;
    r.matrix_dim = g.matrix_dim;
    r.eval = [g](const Point& p) { return g.eval(p).adjoint(); };
    r.partials = [g](const Point& p) {
        const ComplexMatrix inv = g.eval(p).adjoint();
        auto dg = g.partials(p);
        for (auto& m : dg) {
            m = inv * m * inv;
            m *= -1.0;
        }
        return dg;
    };
    return r;
}

PathOfMaps inverse_path(const PathOfMaps& a) {
    PathOfMaps r;
    r.chart = a.chart;
    r.matrix_dim = a.matrix_dim;
    r.t_breaks = a.t_breaks;
    r.eval = [a](const Point& p, double t) { return a.eval(p, t).adjoint(); };
    r.jet = [a](const Point& p, double t) {
        PathJet j = a.at(p, t);
        const ComplexMatrix inv = j.value.adjoint();
        PathJet out;
        out.value = inv;
        out.partials.reserve(j.partials.size());
        for (const auto& m : j.partials) {
            ComplexMatrix v = inv * m * inv;
            v *= -1.0;
            out.partials.push_back(std::move(v));
        }
        out.t_deriv = inv * j.t_deriv * inv;
        out.t_deriv *= -1.0;
        return out;
    };
    r.partials = [r_jet = r.jet](const Point& p, double t) { return r_jet(p, t).partials; };
    r.t_deriv = [r_jet = r.jet](const Point& p, double t) { return r_jet(p, t).t_deriv; };
    return r;
}

UnitaryMap block_sum_map(const UnitaryMap& a, const UnitaryMap& b) {
    check_grid_match(a.chart, b.chart, "block_sum_map");
    UnitaryMap r;
    r.chart = a.chart;
    r.matrix_dim = a.matrix_dim + b.matrix_dim;
    r.eval = [a, b](const Point& p) { return block_sum(a.eval(p), b.eval(p)); };
    r.partials = [a, b](const Point& p) {
        auto da = a.partials(p);
        auto db = b.partials(p);
        std::vector<ComplexMatrix> out;
        out.reserve(da.size());
        for (size_t i = 0; i < da.size(); ++i) out.push_back(block_sum(da[i], db[i]));
        return out;
    };
    return r;
}

PathOfMaps block_sum_path(const PathOfMaps& a, const PathOfMaps& b) {
    check_grid_match(a.chart, b.chart, "block_sum_path");
    PathOfMaps r;
    r.chart = a.chart;
    r.matrix_dim = a.matrix_dim + b.matrix_dim;
    r.t_breaks = a.t_breaks;
    r.t_breaks.insert(r.t_breaks.end(), b.t_breaks.begin(), b.t_breaks.end());
    r.jet = [a, b](const Point& p, double t) {
        PathJet ja = a.at(p, t);
        PathJet jb = b.at(p, t);
        PathJet out;
        out.value = block_sum(ja.value, jb.value);
        out.partials.reserve(ja.partials.size());
        for (size_t i = 0; i < ja.partials.size(); ++i)
            out.partials.push_back(block_sum(ja.partials[i], jb.partials[i]));
        out.t_deriv = block_sum(ja.t_deriv, jb.t_deriv);
        return out;
    };
    r.eval = [a, b](const Point& p, double t) { return block_sum(a.eval(p, t), b.eval(p, t)); };
    r.partials = [jet = r.jet](const Point& p, double t) { return jet(p, t).partials; };
    r.t_deriv = [jet = r.jet](const Point& p, double t) { return jet(p, t).t_deriv; };
    return r;
}

UnitaryMap pointwise_product(const UnitaryMap& a, const UnitaryMap& b) {
    check_grid_match(a.chart, b.chart, "pointwise_product");
    if (a.matrix_dim != b.matrix_dim)
        throw std::invalid_argument("pointwise_product: matrix dim mismatch");
    UnitaryMap r;
    r.chart = a.chart;
    r.matrix_dim = a.matrix_dim;
    r.eval = [a, b](const Point& p) { return a.eval(p) * b.eval(p); };
    r.partials = [a, b](const Point& p) {
        const ComplexMatrix va = a.eval(p), vb = b.eval(p);
        auto da = a.partials(p);
        auto db = b.partials(p);
        std::vector<ComplexMatrix> out;
        out.reserve(da.size());
        for (size_t i = 0; i < da.size(); ++i) out.push_back(da[i] * vb + va * db[i]);
        return out;
    };
    return r;
}

PathOfMaps left_multiply(const UnitaryMap& g, const PathOfMaps& q) {
    check_grid_match(g.chart, q.chart, "left_multiply");
    if (g.matrix_dim != q.matrix_dim)
        throw std::invalid_argument("left_multiply: matrix dim mismatch");
    PathOfMaps r;
    r.chart = q.chart;
    r.matrix_dim = q.matrix_dim;
    r.t_breaks = q.t_breaks;
    r.jet = [g, q](const Point& p, double t) {
        const ComplexMatrix vg = g.eval(p);
        const auto dg = g.partials(p);
        PathJet jq = q.at(p, t);
        PathJet out;
        out.value = vg * jq.value;
        out.partials.reserve(jq.partials.size());
        for (size_t i = 0; i < jq.partials.size(); ++i)
            out.partials.push_back(dg[i] * jq.value + vg * jq.partials[i]);
        out.t_deriv = vg * jq.t_deriv;
        return out;
    };
    r.eval = [g, q](const Point& p, double t) { return g.eval(p) * q.eval(p, t); };
    r.partials = [jet = r.jet](const Point& p, double t) { return jet(p, t).partials; };
    r.t_deriv = [jet = r.jet](const Point& p, double t) { return jet(p, t).t_deriv; };
    return r;
}

UnitaryMap stabilize(const UnitaryMap& g, int dim) {
    if (dim == g.matrix_dim) return g;
    if (dim < g.matrix_dim) throw std::invalid_argument("stabilize: cannot shrink");
    return block_sum_map(g, constant_map(g.chart, ComplexMatrix::identity(dim - g.matrix_dim)));
}

// ---- Clifford sphere map --------------------------------------------------

UnitaryMap clifford_sphere_map(int n) {
    if (n == 0) return clifford_sphere_map(0, Chart::circle());
    if (n == 1) return clifford_sphere_map(1, Chart::sphere3_hopf());
    throw std::invalid_argument("clifford_sphere_map: n must be 0 or 1 at desk scale");
}

UnitaryMap clifford_sphere_map(int n, const Chart& chart) {
    if (n < 0 || n > 1) throw std::invalid_argument("clifford_sphere_map: n must be 0 or 1");
    if (!chart.embedding || !chart.embedding_jacobian)
        throw std::invalid_argument("clifford_sphere_map: chart has no sphere embedding");

    const int m = 2 * n + 2;          // ambient coordinates
    const int half = 1 << n;          // chiral block size
    const int full = 2 * half;        // stabilized dimension 2^{n+1}

    // Coefficient matrices of the chiral block: skew generators for the first
    // 2n+1 coordinates, the identity slot for the last one.
    std::vector<ComplexMatrix> herm = hermitian_clifford(m - 1);
    std::vector<ComplexMatrix> coeff;
    coeff.reserve(m);
    for (int i = 0; i < m - 1; ++i) {
        ComplexMatrix e = herm[i];
        e *= cplx(0.0, 1.0);
        coeff.push_back(block_sum(e, ComplexMatrix::zero(half)));
    }
    coeff.push_back(block_sum(ComplexMatrix::identity(half), ComplexMatrix::zero(half)));

    ComplexMatrix pad = block_sum(ComplexMatrix::zero(half), ComplexMatrix::identity(half));

    UnitaryMap g;
    g.chart = chart;
    g.matrix_dim = full;
    g.eval = [chart, coeff, pad, m, full](const Point& p) {
        const auto x = chart.embedding(p);
        if (static_cast<int>(x.size()) != m)
            throw std::invalid_argument("clifford_sphere_map: embedding dimension mismatch");
        ComplexMatrix v = pad;
        for (int i = 0; i < m; ++i) {
            ComplexMatrix c = coeff[i];
            c *= cplx(x[i]);
            v += c;
        }
        return v;
    };
    g.partials = [chart, coeff, m, full](const Point& p) {
        const auto jac = chart.embedding_jacobian(p);
        const int d = chart.dim();
        std::vector<ComplexMatrix> out(d, ComplexMatrix::zero(full));
        for (int a = 0; a < d; ++a)
            for (int i = 0; i < m; ++i) {
                ComplexMatrix c = coeff[i];
                c *= cplx(jac[i][a]);
                out[a] += c;
            }
        return out;
    };
    return g;
}

UnitaryMap exp_scalar_map(const std::function<double(const Point&)>& f, const Chart& chart,
                          const std::function<std::vector<double>(const Point&)>& grad) {
    UnitaryMap g;
    g.chart = chart;
    g.matrix_dim = 1;
    g.eval = [f](const Point& p) {
        ComplexMatrix m(1);
        m(0, 0) = std::exp(cplx(0.0, two_pi * f(p)));
        return m;
    };
    if (grad) {
        g.partials = [f, grad](const Point& p) {
            const cplx val = std::exp(cplx(0.0, two_pi * f(p)));
            const auto df = grad(p);
            std::vector<ComplexMatrix> out;
            out.reserve(df.size());
            for (double d : df) {
                ComplexMatrix m(1);
                m(0, 0) = cplx(0.0, two_pi * d) * val;
                out.push_back(std::move(m));
            }
            return out;
        };
    } else {
        g.partials = fd_partials(chart, g.eval, g.fd_step);
    }
    return g;
}

// ---- projections ----------------------------------------------------------

ProjectionMap bott_projection(const Chart& sphere2_chart) {
    if (!sphere2_chart.embedding || !sphere2_chart.embedding_jacobian)
        throw std::invalid_argument("bott_projection: chart has no embedding");

    // Pauli triple; the sign of the third component is pinned so the image
    // bundle integrates to first Chern number +1 with this chart orientation.
    std::vector<ComplexMatrix> sigma(3, ComplexMatrix(2));
    sigma[0](0, 1) = 1.0;
    sigma[0](1, 0) = 1.0;
    sigma[1](0, 1) = cplx(0.0, -1.0);
    sigma[1](1, 0) = cplx(0.0, 1.0);
    sigma[2](0, 0) = 1.0;
    sigma[2](1, 1) = -1.0;

    ProjectionMap p;
    p.chart = sphere2_chart;
    p.matrix_dim = 2;
    p.eval = [chart = sphere2_chart, sigma](const Point& q) {
        const auto x = chart.embedding(q);
        ComplexMatrix m = ComplexMatrix::identity(2);
        for (int i = 0; i < 3; ++i) {
            ComplexMatrix s = sigma[i];
            s *= cplx(x[i]);
            m += s;
        }
        m *= 0.5;
        return m;
    };
    p.partials = [chart = sphere2_chart, sigma](const Point& q) {
        const auto jac = chart.embedding_jacobian(q);
        const int d = chart.dim();
        std::vector<ComplexMatrix> out(d, ComplexMatrix::zero(2));
        for (int a = 0; a < d; ++a)
            for (int i = 0; i < 3; ++i) {
                ComplexMatrix s = sigma[i];
                s *= cplx(0.5 * jac[i][a]);
                out[a] += s;
            }
        return out;
    };
    return p;
}

ProjectionMap constant_projection(const Chart& chart, const ComplexMatrix& value) {
    if (!is_projection(value)) throw std::invalid_argument("constant_projection: not a projection");
    ProjectionMap p;
    p.chart = chart;
    p.matrix_dim = value.dim();
    p.eval = [value](const Point&) { return value; };
    const int d = chart.dim();
    const int n = value.dim();
    p.partials = [d, n](const Point&) {
        return std::vector<ComplexMatrix>(d, ComplexMatrix::zero(n));
    };
    return p;
}

PathOfMaps projection_loop(const ProjectionMap& p, double s_cut) {
    if (!(s_cut > 0.0 && s_cut <= 1.0))
        throw std::invalid_argument("projection_loop: s_cut must be in (0, 1]");
    PathOfMaps path;
    path.chart = p.chart;
    path.matrix_dim = p.matrix_dim;
    path.jet = [p, s_cut](const Point& q, double t) {
        const ComplexMatrix proj = p.eval(q);
        const auto dp = p.partials(q);
        const cplx phase = std::exp(cplx(0.0, two_pi * s_cut * t));
        PathJet out;
        out.value = ComplexMatrix::identity(p.matrix_dim);
        ComplexMatrix scaled = proj;
        scaled *= (phase - 1.0);
        out.value += scaled;
        out.partials.reserve(dp.size());
        for (const auto& d : dp) {
            ComplexMatrix m = d;
            m *= (phase - 1.0);
            out.partials.push_back(std::move(m));
        }
        out.t_deriv = proj;
        out.t_deriv *= cplx(0.0, two_pi * s_cut) * phase;
        return out;
    };
    path.eval = [p, s_cut](const Point& q, double t) {
        return projection_exponential(p.eval(q), s_cut * t, 1e-8);
    };
    path.partials = [jet = path.jet](const Point& q, double t) { return jet(q, t).partials; };
    path.t_deriv = [jet = path.jet](const Point& q, double t) { return jet(q, t).t_deriv; };
    return path;
}

// ---- rotation-conjugation paths -------------------------------------------

namespace {

// t -> G(p) X(t pi/2) H(p) X(t pi/2)^{-1}; covers the swap, cancellation and
// multiplication paths.
PathOfMaps conjugated_block_path(const UnitaryMap& gmap, const UnitaryMap& hmap) {
    check_grid_match(gmap.chart, hmap.chart, "conjugated_block_path");
    if (gmap.matrix_dim != hmap.matrix_dim)
        throw std::invalid_argument("conjugated_block_path: dim mismatch");
    const int dim = gmap.matrix_dim;
    if (dim % 2 != 0) throw std::invalid_argument("conjugated_block_path: dim must be even");
    const ComplexMatrix jgen = rotation_generator(dim / 2);

    PathOfMaps path;
    path.chart = gmap.chart;
    path.matrix_dim = dim;
    path.jet = [gmap, hmap, jgen, dim](const Point& p, double t) {
        const double theta = 0.5 * pi * t;
        const ComplexMatrix x = rotation_block(theta, dim / 2);
        const ComplexMatrix xinv = rotation_block(-theta, dim / 2);
        const ComplexMatrix g = gmap.eval(p);
        const ComplexMatrix h = hmap.eval(p);
        const auto dg = gmap.partials(p);
        const auto dh = hmap.partials(p);
        const ComplexMatrix xh = x * h;
        const ComplexMatrix xhxinv = xh * xinv;

        PathJet out;
        out.value = g * xhxinv;
        out.partials.reserve(dg.size());
        for (size_t a = 0; a < dg.size(); ++a)
            out.partials.push_back(dg[a] * xhxinv + g * (x * dh[a] * xinv));
        ComplexMatrix comm = jgen * h - h * jgen;
        out.t_deriv = g * (x * comm * xinv);
        out.t_deriv *= 0.5 * pi;
        return out;
    };
    path.eval = [jet = path.jet](const Point& p, double t) { return jet(p, t).value; };
    path.partials = [jet = path.jet](const Point& p, double t) { return jet(p, t).partials; };
    path.t_deriv = [jet = path.jet](const Point& p, double t) { return jet(p, t).t_deriv; };
    return path;
}

std::pair<UnitaryMap, UnitaryMap> common_dim(const UnitaryMap& g, const UnitaryMap& h) {
    const int n = std::max(g.matrix_dim, h.matrix_dim);
    return {stabilize(g, n), stabilize(h, n)};
}

}  // namespace

PathOfMaps swap_path(const UnitaryMap& g_in, const UnitaryMap& h_in) {
    auto [g, h] = common_dim(g_in, h_in);
    UnitaryMap id2n = constant_map(g.chart, ComplexMatrix::identity(2 * g.matrix_dim));
    return conjugated_block_path(id2n, block_sum_map(g, h));
}

PathOfMaps cancellation_path(const UnitaryMap& g) {
    UnitaryMap idn = constant_map(g.chart, ComplexMatrix::identity(g.matrix_dim));
    return conjugated_block_path(block_sum_map(g, idn), block_sum_map(idn, inverse_map(g)));
}

PathOfMaps multiplication_path(const UnitaryMap& g_in, const UnitaryMap& h_in) {
    auto [g, h] = common_dim(g_in, h_in);
    UnitaryMap idn = constant_map(g.chart, ComplexMatrix::identity(g.matrix_dim));
    return conjugated_block_path(block_sum_map(g, idn), block_sum_map(idn, h));
}

// ---- composition and reparametrization -------------------------------------

double smoothstep5(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double smoothstep5_deriv(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}

namespace {

double invert_monotone(const std::function<double(double)>& f, double target) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

PathOfMaps compose_paths(const PathOfMaps& a, const PathOfMaps& b) {
    check_grid_match(a.chart, b.chart, "compose_paths");
    if (a.matrix_dim != b.matrix_dim)
        throw std::invalid_argument("compose_paths: matrix dim mismatch");

    // a_1 = b_0 pointwise, spot checked over the grid.
    {
        const size_t total = a.chart.grid_size();
        const size_t stride = std::max<size_t>(1, total / 64);
        for (size_t idx = 0; idx < total; idx += stride) {
            const Point p = a.chart.point_at(a.chart.unflatten(idx));
            if (max_abs_diff(a.eval(p, 1.0), b.eval(p, 0.0)) > 1e-10)
                throw std::invalid_argument("compose_paths: endpoint mismatch a(1) != b(0)");
        }
    }

    PathOfMaps r;
    r.chart = a.chart;
    r.matrix_dim = a.matrix_dim;
    r.jet = [a, b](const Point& p, double t) {
        if (t <= 0.4) {
            const double u = t / 0.4;
            PathJet j = a.at(p, smoothstep5(u));
            j.t_deriv *= smoothstep5_deriv(u) / 0.4;
            return j;
        }
        if (t < 0.6) {
            PathJet j = a.at(p, 1.0);
            j.t_deriv = ComplexMatrix::zero(a.matrix_dim);
            return j;
        }
        const double u = (t - 0.6) / 0.4;
        PathJet j = b.at(p, smoothstep5(u));
        j.t_deriv *= smoothstep5_deriv(u) / 0.4;
        return j;
    };
    r.eval = [jet = r.jet](const Point& p, double t) { return jet(p, t).value; };
    r.partials = [jet = r.jet](const Point& p, double t) { return jet(p, t).partials; };
    r.t_deriv = [jet = r.jet](const Point& p, double t) { return jet(p, t).t_deriv; };

    r.t_breaks = {0.4, 0.6};
    for (double br : a.t_breaks)
        r.t_breaks.push_back(0.4 * invert_monotone(smoothstep5, br));
    for (double br : b.t_breaks)
        r.t_breaks.push_back(0.6 + 0.4 * invert_monotone(smoothstep5, br));
    return r;
}

PathOfMaps reparametrize(const PathOfMaps& a, const std::function<double(double)>& clock,
                         const std::function<double(double)>& clock_deriv) {
    PathOfMaps r;
    r.chart = a.chart;
    r.matrix_dim = a.matrix_dim;
    r.jet = [a, clock, clock_deriv](const Point& p, double t) {
        PathJet j = a.at(p, clock(t));
        j.t_deriv *= clock_deriv(t);
        return j;
    };
    r.eval = [a, clock](const Point& p, double t) { return a.eval(p, clock(t)); };
    r.partials = [jet = r.jet](const Point& p, double t) { return jet(p, t).partials; };
    r.t_deriv = [jet = r.jet](const Point& p, double t) { return jet(p, t).t_deriv; };
    for (double br : a.t_breaks)
        r.t_breaks.push_back(invert_monotone(clock, br));
    return r;
}

PathOfMaps reverse_path(const PathOfMaps& a) {
    PathOfMaps r;
    r.chart = a.chart;
    r.matrix_dim = a.matrix_dim;
    for (double br : a.t_breaks) r.t_breaks.push_back(1.0 - br);
    r.jet = [a](const Point& p, double t) {
        PathJet j = a.at(p, 1.0 - t);
        j.t_deriv *= -1.0;
        return j;
    };
    r.eval = [a](const Point& p, double t) { return a.eval(p, 1.0 - t); };
    r.partials = [jet = r.jet](const Point& p, double t) { return jet(p, t).partials; };
    r.t_deriv = [jet = r.jet](const Point& p, double t) { return jet(p, t).t_deriv; };
    return r;
}

PathOfMaps family_slice(const TwoParamFamily& family, double s) {
    PathOfMaps path;
    path.chart = family.chart;
    path.matrix_dim = family.matrix_dim;
    path.jet = [family, s](const Point& p, double t) {
        FamilyJet j = family.at(p, t, s);
        return PathJet{std::move(j.value), std::move(j.partials), std::move(j.t_deriv)};
    };
    path.eval = [family, s](const Point& p, double t) { return family.eval(p, t, s); };
    path.partials = [jet = path.jet](const Point& p, double t) { return jet(p, t).partials; };
    path.t_deriv = [jet = path.jet](const Point& p, double t) { return jet(p, t).t_deriv; };
    return path;
}

// ---- seeded analytic product-of-exponential families ------------------------

namespace {

struct ScalarFn {
    std::function<double(const Point&)> val;
    std::function<std::vector<double>(const Point&)> grad;
};

// Trigonometric polynomial in the chart coordinates, or a linear function of
// the sphere embedding when the chart has one. Smooth and periodic where the
// chart is.
ScalarFn random_scalar_fn(const Chart& chart, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(0.2, 0.42);
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    std::uniform_int_distribution<int> freq(-1, 1);
    const int d = chart.dim();

    if (chart.embedding) {
        const auto probe = chart.embedding(chart.point_at(std::vector<int>(d, 0)));
        const int m = static_cast<int>(probe.size());
        std::vector<double> v(m);
        for (auto& c : v) c = amp(rng) * (freq(rng) >= 0 ? 1.0 : -1.0);
        ScalarFn f;
        f.val = [chart, v, m](const Point& p) {
            const auto x = chart.embedding(p);
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += v[i] * x[i];
            return s;
        };
        f.grad = [chart, v, m, d](const Point& p) {
            const auto jac = chart.embedding_jacobian(p);
            std::vector<double> g(d, 0.0);
            for (int a = 0; a < d; ++a)
                for (int i = 0; i < m; ++i) g[a] += v[i] * jac[i][a];
            return g;
        };
        return f;
    }

    struct Term {
        double a;
        double ph;
        std::vector<int> k;
    };
    std::vector<Term> terms(2);
    for (auto& t : terms) {
        t.a = amp(rng);
        t.ph = phase(rng);
        t.k.resize(d);
        bool nonzero = false;
        for (auto& ki : t.k) {
            ki = freq(rng);
            nonzero = nonzero || ki != 0;
        }
        if (!nonzero && d > 0) t.k[0] = 1;
    }
    ScalarFn f;
    f.val = [terms, d](const Point& p) {
        double s = 0.0;
        for (const auto& t : terms) {
            double arg = t.ph;
            for (int a = 0; a < d; ++a) arg += two_pi * t.k[a] * p[a];
            s += t.a * std::cos(arg);
        }
        return s;
    };
    f.grad = [terms, d](const Point& p) {
        std::vector<double> g(d, 0.0);
        for (const auto& t : terms) {
            double arg = t.ph;
            for (int a = 0; a < d; ++a) arg += two_pi * t.k[a] * p[a];
            const double s = -t.a * std::sin(arg);
            for (int a = 0; a < d; ++a) g[a] += s * two_pi * t.k[a];
        }
        return g;
    };
    return f;
}

struct Clock2 {
    std::function<double(double, double)> c;
    std::function<double(double, double)> ct;
    std::function<double(double, double)> cs;
};

struct ExpFactor {
    ComplexMatrix k;
    ScalarFn f;
    Clock2 clock;
};

// g(p,t,s) = prod_k exp(c_k(t,s) f_k(p) K_k), with all first derivatives from
// the product rule; each factor commutes with its own derivative.
struct ProductExpFamily {
    Chart chart;
    std::vector<ExpFactor> factors;

    FamilyJet jet(const Point& p, double t, double s) const {
        const int d = chart.dim();
        const size_t m = factors.size();
        const int n = factors.front().k.dim();

        std::vector<double> fv(m);
        std::vector<std::vector<double>> fg(m);
        std::vector<double> cv(m), ctv(m), csv(m);
        std::vector<ComplexMatrix> u(m);
        for (size_t k = 0; k < m; ++k) {
            fv[k] = factors[k].f.val(p);
            fg[k] = factors[k].f.grad(p);
            cv[k] = factors[k].clock.c(t, s);
            ctv[k] = factors[k].clock.ct(t, s);
            csv[k] = factors[k].clock.cs(t, s);
            u[k] = exp_skew(factors[k].k, cv[k] * fv[k]);
        }
        // prefix[k] = u_0 ... u_{k-1}, suffix[k] = u_k ... u_{m-1}
        std::vector<ComplexMatrix> prefix(m + 1), suffix(m + 1);
        prefix[0] = ComplexMatrix::identity(n);
        for (size_t k = 0; k < m; ++k) prefix[k + 1] = prefix[k] * u[k];
        suffix[m] = ComplexMatrix::identity(n);
        for (size_t k = m; k-- > 0;) suffix[k] = u[k] * suffix[k + 1];

        FamilyJet out;
        out.value = prefix[m];
        out.partials.assign(d, ComplexMatrix::zero(n));
        out.t_deriv = ComplexMatrix::zero(n);
        out.s_deriv = ComplexMatrix::zero(n);
        for (size_t k = 0; k < m; ++k) {
            const ComplexMatrix ku = factors[k].k * u[k];
            const ComplexMatrix wrapped = prefix[k] * ku * suffix[k + 1];
            for (int a = 0; a < d; ++a) {
                ComplexMatrix term = wrapped;
                term *= cv[k] * fg[k][a];
                out.partials[a] += term;
            }
            ComplexMatrix tterm = wrapped;
            tterm *= ctv[k] * fv[k];
            out.t_deriv += tterm;
            ComplexMatrix sterm = wrapped;
            sterm *= csv[k] * fv[k];
            out.s_deriv += sterm;
        }
        return out;
    }
};

ProductExpFamily make_family(const Chart& chart, unsigned long long seed, int factors,
                             const std::vector<Clock2>& clocks) {
    std::mt19937_64 rng(seed);
    ProductExpFamily fam;
    fam.chart = chart;
    for (int k = 0; k < factors; ++k) {
        ExpFactor f;
        f.k = random_skew_hermitian(2, rng, 0.9);
        f.f = random_scalar_fn(chart, rng);
        f.clock = clocks[k % clocks.size()];
        fam.factors.push_back(std::move(f));
    }
    return fam;
}

const Clock2 kUnitClock{[](double, double) { return 1.0; },
                        [](double, double) { return 0.0; },
                        [](double, double) { return 0.0; }};

}  // namespace

UnitaryMap analytic_unitary_map(const Chart& chart, unsigned long long seed, int factors) {
    auto fam = std::make_shared<ProductExpFamily>(
        make_family(chart, seed, factors, {kUnitClock}));
    UnitaryMap g;
    g.chart = chart;
    g.matrix_dim = 2;
    g.eval = [fam](const Point& p) { return fam->jet(p, 0.0, 0.0).value; };
    g.partials = [fam](const Point& p) { return fam->jet(p, 0.0, 0.0).partials; };
    return g;
}

PathOfMaps analytic_unitary_path(const Chart& chart, unsigned long long seed, int factors) {
    const std::vector<Clock2> clocks = {
        Clock2{[](double t, double) { return t; }, [](double, double) { return 1.0; },
               [](double, double) { return 0.0; }},
        Clock2{[](double t, double) { return t * t * (3.0 - 2.0 * t); },
               [](double t, double) { return 6.0 * t * (1.0 - t); },
               [](double, double) { return 0.0; }},
        Clock2{[](double t, double) { return std::sin(0.5 * pi * t); },
               [](double t, double) { return 0.5 * pi * std::cos(0.5 * pi * t); },
               [](double, double) { return 0.0; }},
    };
    auto fam = std::make_shared<ProductExpFamily>(make_family(chart, seed, factors, clocks));
    PathOfMaps path;
    path.chart = chart;
    path.matrix_dim = 2;
    path.jet = [fam](const Point& p, double t) {
        FamilyJet j = fam->jet(p, t, 0.0);
        return PathJet{std::move(j.value), std::move(j.partials), std::move(j.t_deriv)};
    };
    path.eval = [fam](const Point& p, double t) { return fam->jet(p, t, 0.0).value; };
    path.partials = [jet = path.jet](const Point& p, double t) { return jet(p, t).partials; };
    path.t_deriv = [jet = path.jet](const Point& p, double t) { return jet(p, t).t_deriv; };
    return path;
}

PathOfMaps exp_loop(const Chart& chart, int k, int dim) {
    PathOfMaps path;
    path.chart = chart;
    path.matrix_dim = dim;
    path.eval = [k, dim](const Point&, double t) {
        ComplexMatrix m = ComplexMatrix::identity(dim);
        m *= std::exp(cplx(0.0, two_pi * k * t));
        return m;
    };
    const int d = chart.dim();
    path.partials = [d, dim](const Point&, double) {
        return std::vector<ComplexMatrix>(d, ComplexMatrix::zero(dim));
    };
    path.t_deriv = [k, dim](const Point&, double t) {
        ComplexMatrix m = ComplexMatrix::identity(dim);
        m *= cplx(0.0, two_pi * k) * std::exp(cplx(0.0, two_pi * k * t));
        return m;
    };
    return path;
}

PathOfMaps conjugated_loop(const Chart& chart, int k, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    const ComplexMatrix k1 = random_skew_hermitian(2, rng, 0.8);
    const ComplexMatrix k2 = random_skew_hermitian(2, rng, 0.8);

    auto conj_frame = [k1, k2, k](double t) {
        // P_t = exp(t K1) exp(t^2 K2), D_t = diag(e^{2 pi i k t}, 1)
        const ComplexMatrix u1 = exp_skew(k1, t);
        const ComplexMatrix u2 = exp_skew(k2, t * t);
        const ComplexMatrix pt = u1 * u2;
        ComplexMatrix ptdot = k1 * pt + cplx(2.0 * t) * (pt * k2);
        ComplexMatrix dt(2);
        dt(0, 0) = std::exp(cplx(0.0, two_pi * k * t));
        dt(1, 1) = 1.0;
        ComplexMatrix dtdot(2);
        dtdot(0, 0) = cplx(0.0, two_pi * k) * dt(0, 0);
        const ComplexMatrix pinv = pt.adjoint();
        const ComplexMatrix pinvdot = ptdot.adjoint();  // (P^-1)' = (P')^dagger for unitary P
        ComplexMatrix value = pt * dt * pinv;
        ComplexMatrix deriv = ptdot * dt * pinv + pt * dtdot * pinv + pt * dt * pinvdot;
        return std::pair<ComplexMatrix, ComplexMatrix>(value, deriv);
    };

    PathOfMaps path;
    path.chart = chart;
    path.matrix_dim = 2;
    path.eval = [conj_frame](const Point&, double t) { return conj_frame(t).first; };
    const int d = chart.dim();
    path.partials = [d](const Point&, double) {
        return std::vector<ComplexMatrix>(d, ComplexMatrix::zero(2));
    };
    path.t_deriv = [conj_frame](const Point&, double t) { return conj_frame(t).second; };
    return path;
}

TwoParamFamily reparam_family(const Chart& chart, unsigned long long seed) {
    PathOfMaps base = analytic_unitary_path(chart, seed);
    auto clock = [](double t, double s) {
        const double c0 = smoothstep5(t);
        return (1.0 - s) * c0 + s * c0 * c0;
    };
    auto clock_t = [](double t, double s) {
        const double c0 = smoothstep5(t), d0 = smoothstep5_deriv(t);
        return (1.0 - s) * d0 + s * 2.0 * c0 * d0;
    };
    auto clock_s = [](double t, double) {
        const double c0 = smoothstep5(t);
        return c0 * c0 - c0;
    };

    TwoParamFamily fam;
    fam.chart = chart;
    fam.matrix_dim = base.matrix_dim;
    fam.endpoints_constant = true;
    fam.jet = [base, clock, clock_t, clock_s](const Point& p, double t, double s) {
        PathJet j = base.at(p, clock(t, s));
        FamilyJet out;
        out.value = std::move(j.value);
        out.partials = std::move(j.partials);
        out.t_deriv = j.t_deriv;
        out.t_deriv *= clock_t(t, s);
        out.s_deriv = std::move(j.t_deriv);
        out.s_deriv *= clock_s(t, s);
        return out;
    };
    fam.eval = [jet = fam.jet](const Point& p, double t, double s) { return jet(p, t, s).value; };
    fam.partials = [jet = fam.jet](const Point& p, double t, double s) {
        return jet(p, t, s).partials;
    };
    fam.t_deriv = [jet = fam.jet](const Point& p, double t, double s) {
        return jet(p, t, s).t_deriv;
    };
    fam.s_deriv = [jet = fam.jet](const Point& p, double t, double s) {
        return jet(p, t, s).s_deriv;
    };
    return fam;
}

TwoParamFamily generic_endpoint_fixed_family(const Chart& chart, unsigned long long seed) {
    // exp(t f1 K1) exp(s b(t) f2 K2) exp(t^2 f3 K3) with b(0) = b(1) = 0,
    // so the t = 0 and t = 1 slices do not move with s.
    const std::vector<Clock2> clocks = {
        Clock2{[](double t, double) { return t; }, [](double, double) { return 1.0; },
               [](double, double) { return 0.0; }},
        Clock2{[](double t, double s) { return s * std::sin(pi * t) * std::sin(pi * t); },
               [](double t, double s) { return s * pi * std::sin(2.0 * pi * t); },
               [](double t, double) { return std::sin(pi * t) * std::sin(pi * t); }},
        Clock2{[](double t, double) { return t * t; }, [](double t, double) { return 2.0 * t; },
               [](double, double) { return 0.0; }},
    };
    auto fam_core = std::make_shared<ProductExpFamily>(make_family(chart, seed, 3, clocks));

    TwoParamFamily fam;
    fam.chart = chart;
    fam.matrix_dim = 2;
    fam.endpoints_constant = true;
    fam.jet = [fam_core](const Point& p, double t, double s) { return fam_core->jet(p, t, s); };
    fam.eval = [jet = fam.jet](const Point& p, double t, double s) { return jet(p, t, s).value; };
    fam.partials = [jet = fam.jet](const Point& p, double t, double s) {
        return jet(p, t, s).partials;
    };
    fam.t_deriv = [jet = fam.jet](const Point& p, double t, double s) {
        return jet(p, t, s).t_deriv;
    };
    fam.s_deriv = [jet = fam.jet](const Point& p, double t, double s) {
        return jet(p, t, s).s_deriv;
    };
    return fam;
}

}  // namespace oddchern
