#pragma once

#include <bit>
#include <map>
#include <string>

#include "oddchern/matrix.hpp"

namespace oddchern {

/// Multi-index as a bitmask over chart axes; bit i set means dx_{i+1} present.
using Mask = unsigned;

inline int mask_degree(Mask m) { return std::popcount(m); }

/// Sign of sorting dx_I ^ dx_J into the increasing order of I u J
/// (zero overlap assumed): one transposition per pair (i in I, j in J) with i > j.
inline int koszul_sign(Mask i_mask, Mask j_mask) {
    int swaps = 0;
    for (Mask j = j_mask; j != 0; j &= j - 1) {
        const int bit = std::countr_zero(j);
        swaps += std::popcount(i_mask >> (bit + 1));
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

std::string mask_to_string(Mask m);  // "1-3" style, "-" for degree zero

/// Graded matrix-valued exterior form at a point: multi-index -> coefficient.
struct MatrixForm {
    int chart_dim = 0;
    int matrix_dim = 0;
    std::map<Mask, ComplexMatrix> terms;

    MatrixForm() = default;
    MatrixForm(int chart_d, int matrix_d) : chart_dim(chart_d), matrix_dim(matrix_d) {}

    static MatrixForm from_matrix(int chart_dim, const ComplexMatrix& m) {
        MatrixForm f(chart_dim, m.dim());
        f.terms[0u] = m;
        return f;
    }

    void add_term(Mask mask, const ComplexMatrix& coeff);

    MatrixForm degree_part(int k) const;
    ComplexMatrix coefficient(Mask mask) const;  // zero matrix if absent

    MatrixForm& operator+=(const MatrixForm& o);
    MatrixForm& operator*=(cplx s);
    double max_abs() const;
};

MatrixForm operator+(MatrixForm a, const MatrixForm& b);
MatrixForm operator*(cplx s, MatrixForm a);

/// Wedge product with matrix coefficients multiplied in order; terms with
/// overlapping indices vanish, the rest pick up the Koszul sign.
MatrixForm wedge(const MatrixForm& a, const MatrixForm& b);

/// Componentwise matrix trace; result has matrix_dim 1.
MatrixForm trace_form(const MatrixForm& a);

/// a wedged with itself `power` times (power >= 1).
MatrixForm wedge_power(const MatrixForm& a, int power);

}  // namespace oddchern
