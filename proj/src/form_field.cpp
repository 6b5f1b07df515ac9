#include "oddchern/form_field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace oddchern {

std::vector<cplx>& FormField::component(Mask mask) {
    auto it = comps.find(mask);
    if (it == comps.end())
        it = comps.emplace(mask, std::vector<cplx>(chart.grid_size())).first;
    return it->second;
}

const std::vector<cplx>* FormField::find(Mask mask) const {
    auto it = comps.find(mask);
    return it == comps.end() ? nullptr : &it->second;
}

bool FormField::interior(const std::vector<int>& ks) const {
    for (int a = 0; a < chart.dim(); ++a) {
        if (chart.axes[a].periodic) continue;
        const int m = margin[a];
        if (ks[a] < m || ks[a] >= chart.axes[a].samples - m) return false;
    }
    return true;
}

std::vector<int> FormField::degree_support() const {
    std::set<int> degs;
    for (const auto& [mask, arr] : comps) {
        for (const auto& v : arr)
            if (std::abs(v) > 1e-14) { degs.insert(mask_degree(mask)); break; }
    }
    return std::vector<int>(degs.begin(), degs.end());
}

FormField FormField::degree_part(int k) const {
    FormField r(chart);
    r.margin = margin;
    r.real_tagged = real_tagged;
    for (const auto& [mask, arr] : comps)
        if (mask_degree(mask) == k) r.comps.emplace(mask, arr);
    return r;
}

double FormField::max_abs() const {
    double m = 0.0;
    for (const auto& [mask, arr] : comps) {
        for (size_t idx = 0; idx < arr.size(); ++idx) {
            if (!interior(chart.unflatten(idx))) continue;
            m = std::max(m, std::abs(arr[idx]));
        }
    }
    return m;
}

double FormField::max_imag() const {
    double m = 0.0;
    for (const auto& [mask, arr] : comps) {
        for (size_t idx = 0; idx < arr.size(); ++idx) {
            if (!interior(chart.unflatten(idx))) continue;
            m = std::max(m, std::abs(arr[idx].imag()));
        }
    }
    return m;
}

namespace {

void check_same_grid(const FormField& a, const FormField& b) {
    if (!a.chart.same_grid(b.chart)) throw std::invalid_argument("FormField: grid mismatch");
}

}  // namespace

FormField& FormField::operator+=(const FormField& o) {
    check_same_grid(*this, o);
    for (const auto& [mask, arr] : o.comps) {
        auto& mine = component(mask);
        for (size_t i = 0; i < arr.size(); ++i) mine[i] += arr[i];
    }
    for (int a = 0; a < chart.dim(); ++a) margin[a] = std::max(margin[a], o.margin[a]);
    real_tagged = real_tagged && o.real_tagged;
    return *this;
}

FormField& FormField::operator-=(const FormField& o) {
    check_same_grid(*this, o);
    for (const auto& [mask, arr] : o.comps) {
        auto& mine = component(mask);
        for (size_t i = 0; i < arr.size(); ++i) mine[i] -= arr[i];
    }
    for (int a = 0; a < chart.dim(); ++a) margin[a] = std::max(margin[a], o.margin[a]);
    real_tagged = real_tagged && o.real_tagged;
    return *this;
}

FormField& FormField::operator*=(cplx s) {
    for (auto& [mask, arr] : comps)
        for (auto& v : arr) v *= s;
    if (s.imag() != 0.0) real_tagged = false;
    return *this;
}

FormField operator+(FormField a, const FormField& b) { return a += b; }
FormField operator-(FormField a, const FormField& b) { return a -= b; }
FormField operator*(cplx s, FormField a) { return a *= s; }

FormField assemble_field(const Chart& chart,
                         const std::function<MatrixForm(const Point&)>& fn, bool tag_real) {
    FormField f(chart);
    f.real_tagged = tag_real;
    for_each_grid_point(chart, [&](size_t idx, const Point& p) {
        MatrixForm v = fn(p);
        if (v.matrix_dim != 1) throw std::invalid_argument("assemble_field: matrix_dim must be 1");
        for (const auto& [mask, coeff] : v.terms) f.component(mask)[idx] = coeff(0, 0);
    });
    return f;
}

FormField exterior_derivative(const FormField& f) {
    const Chart& chart = f.chart;
    const int d = chart.dim();
    FormField out(chart);
    out.margin = f.margin;
    out.real_tagged = f.real_tagged;
    for (int a = 0; a < d; ++a)
        if (!chart.axes[a].periodic) out.margin[a] = f.margin[a] + 1;

    const auto strides = chart.strides();
    for (const auto& [mask, arr] : f.comps) {
        if (mask_degree(mask) >= d) continue;  // top degree: d truncates to nothing
        for (int a = 0; a < d; ++a) {
            const Mask abit = 1u << a;
            if (mask & abit) continue;
            // d(c dx_I) picks up dx_a ^ dx_I = sign * dx_{sorted}
            const int sign = koszul_sign(abit, mask);
            auto& target = out.component(mask | abit);
            const Axis& ax = chart.axes[a];
            const double inv2h = 1.0 / (2.0 * ax.step());
            const size_t stride = strides[a];
            for (size_t idx = 0; idx < arr.size(); ++idx) {
                const auto ks = chart.unflatten(idx);
                size_t up, down;
                if (ax.periodic) {
                    up = idx + (ks[a] + 1 == ax.samples ? stride * (1 - ax.samples) : stride);
                    down = idx - (ks[a] == 0 ? stride * (1 - ax.samples) : stride);
                } else {
                    if (ks[a] == 0 || ks[a] + 1 == ax.samples) continue;
                    up = idx + stride;
                    down = idx - stride;
                }
                target[idx] += static_cast<double>(sign) * (arr[up] - arr[down]) * inv2h;
            }
        }
    }
    return out;
}

cplx integrate_top(const FormField& f) {
    const Chart& chart = f.chart;
    const int d = chart.dim();
    const Mask top = (d >= 32) ? ~0u : ((1u << d) - 1u);
    const auto* arr = f.find(top);
    if (!arr) return 0.0;

    std::vector<std::vector<double>> w;
    for (const auto& ax : chart.axes) w.push_back(axis_weights(ax));

    cplx acc = 0.0;
    for (size_t idx = 0; idx < arr->size(); ++idx) {
        const auto ks = chart.unflatten(idx);
        double weight = 1.0;
        for (int a = 0; a < d; ++a) weight *= w[a][ks[a]];
        acc += (*arr)[idx] * weight;
    }
    return acc;
}

FormField volume_form(const Chart& chart) {
    FormField f(chart);
    f.real_tagged = true;
    const int d = chart.dim();
    const Mask top = (d >= 32) ? ~0u : ((1u << d) - 1u);
    auto& arr = f.component(top);
    for_each_grid_point(chart,
                        [&](size_t idx, const Point& p) { arr[idx] = chart.jacobian_at(p); });
    return f;
}

double max_abs_diff(const FormField& a, const FormField& b) {
    check_same_grid(a, b);
    FormField diff = a;
    diff -= b;
    return diff.max_abs();
}

void write_csv(const FormField& f, std::ostream& os) {
    os << "multi_index";
    for (int a = 0; a < f.chart.dim(); ++a) os << ",x" << (a + 1);
    os << ",re,im\n";
    for (const auto& [mask, arr] : f.comps) {
        const std::string label = mask_to_string(mask);
        for (size_t idx = 0; idx < arr.size(); ++idx) {
            const Point p = f.chart.point_at(f.chart.unflatten(idx));
            os << label;
            for (double x : p) os << ',' << x;
            os << ',' << arr[idx].real() << ',' << arr[idx].imag() << '\n';
        }
    }
}

void write_csv(const FormField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    write_csv(f, os);
}

}  // namespace oddchern
