#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "oddchern/chart.hpp"
#include "oddchern/matrix_form.hpp"

namespace oddchern {

/// Scalar-valued differential form over an entire chart grid. One coefficient
/// array per multi-index. `margin[axis]` marks how many boundary layers on a
/// non-periodic axis are invalid (grows when finite-difference derivatives
/// are taken); max-norm queries skip them.
struct FormField {
    Chart chart;
    std::map<Mask, std::vector<cplx>> comps;
    std::vector<int> margin;      // per axis
    bool real_tagged = false;

    FormField() = default;
    explicit FormField(const Chart& c) : chart(c), margin(c.axes.size(), 0) {}

    std::vector<cplx>& component(Mask mask);
    const std::vector<cplx>* find(Mask mask) const;

    bool interior(const std::vector<int>& ks) const;

    std::vector<int> degree_support() const;
    FormField degree_part(int k) const;

    double max_abs() const;   // margin aware
    double max_imag() const;

    FormField& operator+=(const FormField& o);
    FormField& operator-=(const FormField& o);
    FormField& operator*=(cplx s);
};

FormField operator+(FormField a, const FormField& b);
FormField operator-(FormField a, const FormField& b);
FormField operator*(cplx s, FormField a);

/// Assemble a field by evaluating a pointwise MatrixForm of matrix_dim 1.
FormField assemble_field(const Chart& chart,
                         const std::function<MatrixForm(const Point&)>& fn,
                         bool tag_real = false);

/// Second-order central finite-difference exterior derivative, wrapping on
/// periodic axes; on non-periodic axes the result is valid on the interior
/// only (margin grows by one).
FormField exterior_derivative(const FormField& f);

/// Integral of the top-degree component against the grid weights. The
/// coefficient of a top form already carries the volume density; the volume
/// form itself has coefficient equal to the chart jacobian.
cplx integrate_top(const FormField& f);

/// Top-degree field whose coefficient is the chart jacobian; integrates to
/// the chart volume.
FormField volume_form(const Chart& chart);

/// Max norm of the difference on the common valid interior.
double max_abs_diff(const FormField& a, const FormField& b);

/// CSV schema: multi_index, x1..xd, re, im; one row per grid point per
/// multi-index.
void write_csv(const FormField& f, std::ostream& os);
void write_csv(const FormField& f, const std::string& path);

}  // namespace oddchern
