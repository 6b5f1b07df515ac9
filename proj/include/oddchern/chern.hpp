#pragma once

#include "oddchern/form_field.hpp"
#include "oddchern/maps.hpp"
#include "oddchern/quadrature.hpp"

namespace oddchern {

/// Truncation of the character series. Terms whose form degree exceeds the
/// chart dimension vanish identically, so any n_max at or above
/// floor(chart_dim / 2) is exact; negative means "auto".
struct SeriesSpec {
    int n_max = -1;

    int resolve(int chart_dim) const {
        const int needed = chart_dim / 2 + 1;
        if (n_max < 0) return needed;
        return n_max;
    }
};

/// Odd character form of a unitary map: at each point
///   Tr sum_n (-1)^n n! / ((2 pi i)^{n+1} (2n+1)!) (g^{-1}dg)^{2n+1}.
FormField odd_chern(const UnitaryMap& g, const SeriesSpec& spec = {});

/// Pointwise value of the same series (used by suites for spot checks).
MatrixForm odd_chern_at(const UnitaryMap& g, const Point& p, const SeriesSpec& spec = {});

/// Transgression form of a path:
///   Tr sum_n (-1)^n n! / ((2 pi i)^{n+1} (2n)!) int_0^1 (g^{-1}g') (g^{-1}dg)^{2n} dt.
FormField cs(const PathOfMaps& path, const SeriesSpec& spec = {},
             const QuadratureSpec& quad = {});

/// Even character of a projection-valued map:
///   Tr sum_n 1 / ((2 pi i)^n n!) P (dP)^{2n}.
FormField even_chern_of_projection(const ProjectionMap& p, const SeriesSpec& spec = {});

/// Double transgression of a two-parameter family: tensor-product quadrature
/// of the double-insertion series; satisfies dH = CS(g^1) - CS(g^0) for
/// endpoint-constant families.
FormField h_form(const TwoParamFamily& family, const SeriesSpec& spec = {},
                 const QuadratureSpec& quad = {});

struct WindingResult {
    double value = 0.0;
    double residual = 0.0;  // distance to the nearest integer
};

/// (1/2 pi i) Tr int_0^1 g^{-1} g' dt of a loop, evaluated at one point.
WindingResult winding_at(const PathOfMaps& loop, const Point& p,
                         const QuadratureSpec& quad = {});

/// Same, over every grid point; returns the consensus value and the largest
/// residual. Throws if the path is not a loop to 1e-10.
WindingResult winding(const PathOfMaps& loop, const QuadratureSpec& quad = {});

/// Per-degree max-norm difference between CS of the truncated projection loop
/// and sum_n f_{2n}(s) times the degree-2n part of the even character, where
/// f_{2n}(s) = (4^n / binom(2n, n)) int_0^s sin^{2n}(pi t) dt.
struct TruncatedCsReport {
    std::vector<double> f_values;           // f_{2n}(s) per n
    std::map<int, double> degree_max_diff;  // degree -> max-norm difference
    double max_diff = 0.0;
};

TruncatedCsReport truncated_cs_check(const ProjectionMap& p, double s,
                                     const SeriesSpec& spec = {},
                                     const QuadratureSpec& quad = {});

/// f_{2n}(s) itself.
double truncated_loop_coefficient(int n, double s, const QuadratureSpec& quad = {});

}  // namespace oddchern
