#include "oddchern/matrix_form.hpp"

namespace oddchern {

std::string mask_to_string(Mask m) {
    if (m == 0) return "-";
    std::string s;
    for (int bit = 0; m >> bit; ++bit) {
        if (!(m & (1u << bit))) continue;
        if (!s.empty()) s += '-';
        s += std::to_string(bit + 1);
    }
    return s;
}

void MatrixForm::add_term(Mask mask, const ComplexMatrix& coeff) {
    if (coeff.dim() != matrix_dim) throw std::invalid_argument("MatrixForm: coefficient dim mismatch");
    auto it = terms.find(mask);
    if (it == terms.end())
        terms.emplace(mask, coeff);
    else
        it->second += coeff;
}

MatrixForm MatrixForm::degree_part(int k) const {
    MatrixForm r(chart_dim, matrix_dim);
    for (const auto& [mask, coeff] : terms)
        if (mask_degree(mask) == k) r.terms.emplace(mask, coeff);
    return r;
}

ComplexMatrix MatrixForm::coefficient(Mask mask) const {
    auto it = terms.find(mask);
    if (it == terms.end()) return ComplexMatrix::zero(matrix_dim);
    return it->second;
}

MatrixForm& MatrixForm::operator+=(const MatrixForm& o) {
    if (o.chart_dim != chart_dim || o.matrix_dim != matrix_dim)
        throw std::invalid_argument("MatrixForm: dimension mismatch");
    for (const auto& [mask, coeff] : o.terms) add_term(mask, coeff);
    return *this;
}

MatrixForm& MatrixForm::operator*=(cplx s) {
    for (auto& [mask, coeff] : terms) coeff *= s;
    return *this;
}

double MatrixForm::max_abs() const {
    double m = 0.0;
    for (const auto& [mask, coeff] : terms) m = std::max(m, coeff.max_abs());
    return m;
}

MatrixForm operator+(MatrixForm a, const MatrixForm& b) { return a += b; }
MatrixForm operator*(cplx s, MatrixForm a) { return a *= s; }

MatrixForm wedge(const MatrixForm& a, const MatrixForm& b) {
    if (a.chart_dim != b.chart_dim || a.matrix_dim != b.matrix_dim)
        throw std::invalid_argument("wedge: dimension mismatch");
    MatrixForm r(a.chart_dim, a.matrix_dim);
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            if (ma & mb) continue;
            ComplexMatrix prod = ca * cb;
            if (koszul_sign(ma, mb) < 0) prod *= -1.0;
            r.add_term(ma | mb, prod);
        }
    }
    return r;
}

MatrixForm trace_form(const MatrixForm& a) {
    MatrixForm r(a.chart_dim, 1);
    for (const auto& [mask, coeff] : a.terms) {
        ComplexMatrix t(1);
        t(0, 0) = coeff.trace();
        r.add_term(mask, t);
    }
    return r;
}

MatrixForm wedge_power(const MatrixForm& a, int power) {
    if (power < 1) throw std::invalid_argument("wedge_power: power must be >= 1");
    MatrixForm r = a;
    for (int i = 1; i < power; ++i) r = wedge(r, a);
    return r;
}

}  // namespace oddchern
