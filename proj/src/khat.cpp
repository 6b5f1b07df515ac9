#include "oddchern/khat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace oddchern {

namespace {

// Integrate a degree-1 component around one periodic coordinate circle, the
// other coordinates held at their first grid node.
cplx circle_period(const FormField& f, int axis) {
    const Chart& chart = f.chart;
    const Mask mask = 1u << axis;
    const auto* arr = f.find(mask);
    if (!arr) return 0.0;
    const Axis& ax = chart.axes[axis];
    const double h = ax.step();
    cplx acc = 0.0;
    std::vector<int> ks(chart.axes.size(), 0);
    for (int k = 0; k < ax.samples; ++k) {
        ks[axis] = k;
        acc += (*arr)[chart.flatten(ks)] * h;
    }
    return acc;
}

cplx point_evaluation(const FormField& f) {
    const auto* arr = f.find(0u);
    if (!arr) return 0.0;
    // first interior node
    const Chart& chart = f.chart;
    std::vector<int> ks(chart.axes.size(), 0);
    for (int a = 0; a < chart.dim(); ++a) ks[a] = f.margin[a];
    return (*arr)[chart.flatten(ks)];
}

}  // namespace

CycleSet CycleSet::for_chart(const Chart& chart) {
    CycleSet set;
    set.cycles.push_back(Cycle{"point", 0, point_evaluation});

    const int d = chart.dim();
    for (int a = 0; a < d; ++a) {
        if (!chart.axes[a].periodic) continue;
        set.cycles.push_back(Cycle{"circle_x" + std::to_string(a + 1), 1,
                                   [a](const FormField& f) { return circle_period(f, a); }});
    }
    if (d >= 1)
        set.cycles.push_back(Cycle{"fundamental", d, [](const FormField& f) {
            return integrate_top(f);
        }});

    if (chart.name == "sphere3") set.default_tol = 1e-3;   // coarser default grid
    else set.default_tol = 1e-6;

    // The interval has a boundary, so its 1-dimensional integral is not a
    // period of closed forms; degree 0 evaluation is the only cycle.
    if (chart.name == "interval") set.cycles.resize(1);
    return set;
}

ModExactReport mod_exact_equal(const FormField& a, const FormField& b, const CycleSet& cycles,
                               double tol) {
    if (!a.chart.same_grid(b.chart))
        throw std::invalid_argument("mod_exact_equal: fields on different grids");
    FormField diff = a;
    diff -= b;

    auto degrees_of = [](const FormField& f) {
        std::vector<int> degs = f.degree_support();
        return degs;
    };
    const auto da = degrees_of(a);
    const auto db = degrees_of(b);

    ModExactReport report;
    report.equal = true;
    for (const auto& cyc : cycles.cycles) {
        CycleResidual r;
        r.label = cyc.label;
        r.degree = cyc.degree;
        const bool in_a = std::find(da.begin(), da.end(), cyc.degree) != da.end();
        const bool in_b = std::find(db.begin(), db.end(), cyc.degree) != db.end();
        if (!in_a && !in_b) {
            r.skipped = true;
            report.residuals.push_back(r);
            continue;
        }
        r.residual = std::abs(cyc.integrate(diff));
        report.max_residual = std::max(report.max_residual, r.residual);
        if (r.residual >= tol) report.equal = false;
        report.residuals.push_back(r);
    }
    return report;
}

ModExactReport cs_equivalent_witness(const PathOfMaps& path, const CycleSet& cycles, double tol,
                                     const SeriesSpec& spec, const QuadratureSpec& quad) {
    const FormField field = cs(path, spec, quad);
    FormField zero(path.chart);
    return mod_exact_equal(field, zero, cycles, tol);
}

cplx point_cs(const PathOfMaps& path, const QuadratureSpec& quad) {
    const Point p = path.chart.dim() == 0
                        ? Point{}
                        : path.chart.point_at(std::vector<int>(path.chart.axes.size(), 0));
    const LineRule rule = segmented_rule(quad, path.t_breaks);
    cplx acc = 0.0;
    for (size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = rule.nodes[j];
        acc += rule.weights[j] * (path.eval(p, t).adjoint() * path.t_deriv(p, t)).trace();
    }
    return acc;
}

cplx point_det(const PointClass& c) { return det(c.representative); }

PairElement pair_sum(const PairElement& a, const PairElement& b) {
    if (!a.g.chart.same_grid(b.g.chart)) throw std::invalid_argument("pair_sum: chart mismatch");
    PairElement r;
    r.g = block_sum_map(a.g, b.g);
    r.x = a.x + b.x;
    return r;
}

FormField pair_S(const PairElement& a, const SeriesSpec& spec) {
    return odd_chern(a.g, spec) + exterior_derivative(a.x);
}

PairElement pair_b(const Chart& chart, const FormField& x) {
    if (!chart.same_grid(x.chart)) throw std::invalid_argument("pair_b: chart mismatch");
    PairElement r;
    r.g = constant_map(chart, ComplexMatrix::identity(1));
    r.x = x;
    return r;
}

PairElement phi(const UnitaryMap& g) {
    PairElement r;
    r.g = g;
    r.x = FormField(g.chart);
    return r;
}

ModExactReport pair_equivalent(const PairElement& a, const PairElement& b,
                               const PathOfMaps& path, const CycleSet& cycles, double tol,
                               const SeriesSpec& spec, const QuadratureSpec& quad) {
    // endpoints must match the pair representatives
    {
        const Chart& chart = path.chart;
        const size_t total = chart.grid_size();
        const size_t stride = std::max<size_t>(1, total / 32);
        for (size_t idx = 0; idx < total; idx += stride) {
            const Point p = chart.point_at(chart.unflatten(idx));
            if (max_abs_diff(path.eval(p, 0.0), a.g.eval(p)) > 1e-10 ||
                max_abs_diff(path.eval(p, 1.0), b.g.eval(p)) > 1e-10)
                throw std::invalid_argument("pair_equivalent: path endpoints do not match");
        }
    }
    const FormField cs_field = cs(path, spec, quad);
    const FormField delta = b.x - a.x;
    return mod_exact_equal(cs_field, delta, cycles, tol);
}

std::string to_json_line(const CheckRecord& rec) {
    nlohmann::json j;
    j["check_id"] = rec.check_id;
    j["lemma_ref"] = rec.lemma_ref;
    j["status"] = rec.status;
    j["residuals"] = rec.residuals;
    j["grid"] = rec.grid;
    j["tolerance"] = rec.tolerance;
    j["elapsed_s"] = rec.elapsed_s;
    if (!rec.notes.empty()) j["notes"] = rec.notes;
    return j.dump();
}

}  // namespace oddchern
