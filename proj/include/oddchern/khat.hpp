#pragma once

#include <string>

#include "oddchern/chern.hpp"

namespace oddchern {

/// One integration cycle: a degree and a routine pairing fields against it.
struct Cycle {
    std::string label;
    int degree = 0;
    std::function<cplx(const FormField&)> integrate;
};

/// Generating cycles per built-in chart: point evaluation in degree zero, the
/// fundamental cycle, and the coordinate sub-circles on the torus. Period
/// equality against these operationalizes "equal modulo exact forms".
struct CycleSet {
    std::vector<Cycle> cycles;
    double default_tol = 1e-6;

    static CycleSet for_chart(const Chart& chart);
};

struct CycleResidual {
    std::string label;
    int degree = 0;
    double residual = 0.0;
    bool skipped = false;
};

struct ModExactReport {
    bool equal = false;
    std::vector<CycleResidual> residuals;
    double max_residual = 0.0;
};

/// True iff every cycle period of a - b is below tol. Cycles whose degree is
/// absent from both fields are skipped and recorded.
ModExactReport mod_exact_equal(const FormField& a, const FormField& b, const CycleSet& cycles,
                               double tol);

/// One-sided witness check: certifies the path endpoints CS-equivalent when
/// CS(path) has vanishing periods. A false result only says this witness fails.
ModExactReport cs_equivalent_witness(const PathOfMaps& path, const CycleSet& cycles,
                                     double tol, const SeriesSpec& spec = {},
                                     const QuadratureSpec& quad = {});

/// Tr int_0^1 g^{-1} g' dt over a point (no 1/(2 pi i) normalization here;
/// the degree-zero CS component carries that factor separately).
cplx point_cs(const PathOfMaps& path_at_point, const QuadratureSpec& quad = {});

struct PointClass {
    ComplexMatrix representative;

    explicit PointClass(ComplexMatrix u) : representative(std::move(u)) {
        if (!is_unitary(representative))
            throw std::invalid_argument("PointClass: representative must be unitary");
    }
};

/// Determinant of the representative; unit modulus.
cplx point_det(const PointClass& c);

/// Pair model element: a unitary map together with an even form.
struct PairElement {
    UnitaryMap g;
    FormField x;
};

PairElement pair_sum(const PairElement& a, const PairElement& b);

/// S([g, X]) = Ch(g) + dX.
FormField pair_S(const PairElement& a, const SeriesSpec& spec = {});

/// b(X) = (1, X).
PairElement pair_b(const Chart& chart, const FormField& x);

/// [g] -> [g, 0].
PairElement phi(const UnitaryMap& g);

/// (g0, X0) ~ (g1, X1) iff CS(path) = X1 - X0 modulo exact forms, for the
/// given witness path from g0 to g1.
ModExactReport pair_equivalent(const PairElement& a, const PairElement& b,
                               const PathOfMaps& path, const CycleSet& cycles, double tol,
                               const SeriesSpec& spec = {}, const QuadratureSpec& quad = {});

/// One verification check as reported by the suites, serialized as JSON lines.
struct CheckRecord {
    std::string check_id;
    std::string lemma_ref;
    std::string status;  // "pass" or "fail"
    std::vector<double> residuals;
    std::string grid;
    double tolerance = 0.0;
    double elapsed_s = 0.0;
    std::string notes;
};

std::string to_json_line(const CheckRecord& rec);

}  // namespace oddchern
