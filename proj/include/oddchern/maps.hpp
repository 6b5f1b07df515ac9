#pragma once

#include <functional>

#include "oddchern/chart.hpp"
#include "oddchern/matrix_form.hpp"

namespace oddchern {

/// Smooth map g: chart -> U(n) with partial-derivative access. Partials are
/// analytic when the constructor can supply them, otherwise central finite
/// differences with the declared step.
struct UnitaryMap {
    Chart chart;
    int matrix_dim = 0;
    std::function<ComplexMatrix(const Point&)> eval;
    std::function<std::vector<ComplexMatrix>(const Point&)> partials;
    double fd_step = 1e-5;

    ComplexMatrix operator()(const Point& p) const { return eval(p); }
};

/// Value plus all first derivatives at one (point, t); lets hot loops avoid
/// re-evaluating shared factors.
struct PathJet {
    ComplexMatrix value;
    std::vector<ComplexMatrix> partials;
    ComplexMatrix t_deriv;
};

/// One-parameter family g_t over the chart, t in [0, 1], with spatial
/// partials and the t-derivative. `t_breaks` marks interior parameter values
/// where the family is only piecewise-analytic (plateaued compositions);
/// quadratures split there. `jet`, when present, is a fused evaluator.
struct PathOfMaps {
    Chart chart;
    int matrix_dim = 0;
    std::function<ComplexMatrix(const Point&, double)> eval;
    std::function<std::vector<ComplexMatrix>(const Point&, double)> partials;
    std::function<ComplexMatrix(const Point&, double)> t_deriv;
    std::function<PathJet(const Point&, double)> jet;
    std::vector<double> t_breaks;

    PathJet at(const Point& p, double t) const {
        if (jet) return jet(p, t);
        return PathJet{eval(p, t), partials(p, t), t_deriv(p, t)};
    }
};

struct FamilyJet {
    ComplexMatrix value;
    std::vector<ComplexMatrix> partials;
    ComplexMatrix t_deriv;
    ComplexMatrix s_deriv;
};

/// Two-parameter family g(p, t, s) with all first partials.
struct TwoParamFamily {
    Chart chart;
    int matrix_dim = 0;
    std::function<ComplexMatrix(const Point&, double, double)> eval;
    std::function<std::vector<ComplexMatrix>(const Point&, double, double)> partials;
    std::function<ComplexMatrix(const Point&, double, double)> t_deriv;
    std::function<ComplexMatrix(const Point&, double, double)> s_deriv;
    std::function<FamilyJet(const Point&, double, double)> jet;
    bool endpoints_constant = false;

    FamilyJet at(const Point& p, double t, double s) const {
        if (jet) return jet(p, t, s);
        return FamilyJet{eval(p, t, s), partials(p, t, s), t_deriv(p, t, s), s_deriv(p, t, s)};
    }
};

/// Projection-valued map P: chart -> hermitian idempotents.
struct ProjectionMap {
    Chart chart;
    int matrix_dim = 0;
    std::function<ComplexMatrix(const Point&)> eval;
    std::function<std::vector<ComplexMatrix>(const Point&)> partials;
};

/// Build finite-difference partials for a map given only its evaluator.
std::function<std::vector<ComplexMatrix>(const Point&)> fd_partials(
    const Chart& chart, const std::function<ComplexMatrix(const Point&)>& eval, double step);

/// g^{-1} dg at a point, as a degree-1 matrix-valued form.
MatrixForm maurer_cartan(const UnitaryMap& g, const Point& p);
MatrixForm maurer_cartan_slice(const PathOfMaps& path, const Point& p, double t);

UnitaryMap path_slice(const PathOfMaps& path, double t);

UnitaryMap constant_map(const Chart& chart, const ComplexMatrix& value);
PathOfMaps constant_path(const UnitaryMap& g);

/// Pointwise conjugate transpose; spatial derivatives by d(g^{-1}) = -g^{-1} dg g^{-1}.
UnitaryMap inverse_map(const UnitaryMap& g);
PathOfMaps inverse_path(const PathOfMaps& a);

UnitaryMap block_sum_map(const UnitaryMap& a, const UnitaryMap& b);
PathOfMaps block_sum_path(const PathOfMaps& a, const PathOfMaps& b);

/// Pointwise matrix product g(p) h(p), product rule for derivatives.
UnitaryMap pointwise_product(const UnitaryMap& a, const UnitaryMap& b);

/// t -> g(p) q_t(p).
PathOfMaps left_multiply(const UnitaryMap& g, const PathOfMaps& q);

/// Pad with an identity block on the right up to `dim`.
UnitaryMap stabilize(const UnitaryMap& g, int dim);

/// The sphere map built from Clifford multiplication on the chiral half,
/// identity-stabilized to dimension 2^{n+1}. n = 0 lives on the circle chart,
/// n = 1 on the Hopf chart of the 3-sphere.
UnitaryMap clifford_sphere_map(int n);
UnitaryMap clifford_sphere_map(int n, const Chart& chart);

/// g = e^{2 pi i f} as a 1x1 unitary map. Analytic gradient optional.
UnitaryMap exp_scalar_map(const std::function<double(const Point&)>& f, const Chart& chart,
                          const std::function<std::vector<double>(const Point&)>& grad = nullptr);

/// Rank-one projection (Id + x.sigma)/2 on the 2-sphere chart (unit Chern number).
ProjectionMap bott_projection(const Chart& sphere2_chart);
ProjectionMap constant_projection(const Chart& chart, const ComplexMatrix& p);

/// g_t(p) = Id + (e^{2 pi i s_cut t} - 1) P(p), reparametrized to t in [0,1];
/// a loop when s_cut = 1.
PathOfMaps projection_loop(const ProjectionMap& p, double s_cut = 1.0);

/// X(t pi/2) (g + h) X(t pi/2)^{-1}: from g + h to h + g, CS integrand vanishes.
PathOfMaps swap_path(const UnitaryMap& g, const UnitaryMap& h);

/// (g + 1) X(t pi/2) (1 + g^{-1}) X(t pi/2)^{-1}: from g + g^{-1} to Id.
PathOfMaps cancellation_path(const UnitaryMap& g);

/// (g + 1) X(t pi/2) (1 + h) X(t pi/2)^{-1}: from g + h to gh + 1.
PathOfMaps multiplication_path(const UnitaryMap& g, const UnitaryMap& h);

/// Smooth concatenation: a on [0, 2/5], plateau, b on [3/5, 1], clocked by a
/// quintic smoothstep so the t-derivative is continuous and vanishes on the
/// plateau. Requires a_1 = b_0 pointwise.
PathOfMaps compose_paths(const PathOfMaps& a, const PathOfMaps& b);

/// Precompose the parameter with a smooth monotone clock c: [0,1] -> [0,1].
PathOfMaps reparametrize(const PathOfMaps& a, const std::function<double(double)>& clock,
                         const std::function<double(double)>& clock_deriv);

/// t -> a_{1-t}.
PathOfMaps reverse_path(const PathOfMaps& a);

/// Fix the second parameter of a family, giving the path t -> g(., t, s).
PathOfMaps family_slice(const TwoParamFamily& family, double s);

/// Quintic smoothstep and its derivative (C^2 joins).
double smoothstep5(double u);
double smoothstep5_deriv(double u);

// ---- seeded analytic test maps ------------------------------------------
// Products of factors exp(c_k(t) f_k(p) K_k) with fixed 2x2 skew-hermitian
// K_k and trigonometric scalar fields f_k; all derivatives in closed form.

UnitaryMap analytic_unitary_map(const Chart& chart, unsigned long long seed, int factors = 3);
PathOfMaps analytic_unitary_path(const Chart& chart, unsigned long long seed, int factors = 3);

/// g_t = e^{2 pi i k t} Id_dim, constant in space.
PathOfMaps exp_loop(const Chart& chart, int k, int dim = 1);

/// P_t diag(e^{2 pi i k t}, 1) P_t^{-1} with a seeded smooth unitary path P_t.
PathOfMaps conjugated_loop(const Chart& chart, int k, unsigned long long seed);

/// Endpoint-fixed two-parameter family interpolating between two smoothstep
/// reparametrizations of one analytic path (t- and s-velocities parallel).
TwoParamFamily reparam_family(const Chart& chart, unsigned long long seed);

/// Generic endpoint-fixed homotopy with a bump factor that vanishes at t = 0, 1.
TwoParamFamily generic_endpoint_fixed_family(const Chart& chart, unsigned long long seed);

}  // namespace oddchern
