// Acceptance suite: runs every verification suite and reports one line per
// acceptance check, with its residuals, tolerance and time budget.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cstdio>
#include <map>

#include "oddchern/suites.hpp"

using namespace oddchern;

namespace {

struct Criterion {
    std::string id;
    std::string title;
    double time_budget_s;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> table = {
        {"c01", "quadrature identities (sine and beta moments)", 1.0},
        {"c02", "transgression Stokes identity, second-order refinement", 30.0},
        {"c03", "closedness of the character under refinement", 60.0},
        {"c04", "projection-loop transgression equals the even character", 20.0},
        {"c05", "swap and cancellation integrands vanish pointwise", 5.0},
        {"c06", "winding integrality for direct and conjugated loops", 5.0},
        {"c07", "additivity and antisymmetry of character and transgression", 20.0},
        {"c08", "sphere map character is a unit multiple of the volume form", 120.0},
        {"c09", "truncated-loop scaling identity", 30.0},
        {"c10", "double transgression differentiates to the CS difference", 60.0},
        {"c11", "point transgression and determinant isomorphism", 5.0},
        {"c12", "pair model: S after b is d, equivalence examples", 20.0},
        {"c13", "character of a scalar exponential is the exact 1-form", 5.0},
    };
    return table;
}

}  // namespace

TEST_CASE("acceptance criteria") {
    RunConfig config;  // defaults: seed 42, 64 nodes, per-suite grids

    std::map<std::string, std::vector<CheckRecord>> by_criterion;
    for (const auto& suite : suite_names()) {
        const auto checks = run_suite(suite, config);
        for (const auto& check : checks)
            by_criterion[check.check_id.substr(0, 3)].push_back(check);
    }

    int failed = 0;
    for (const auto& crit : criteria()) {
        const auto it = by_criterion.find(crit.id);
        REQUIRE(it != by_criterion.end());
        bool pass = true;
        double worst = 0.0;
        double elapsed = 0.0;
        for (const auto& check : it->second) {
            pass = pass && check.status == "pass";
            for (double r : check.residuals) worst = std::max(worst, std::abs(r));
            elapsed += check.elapsed_s;
        }
        const bool in_budget = elapsed < crit.time_budget_s;
        std::printf("[%s] %s %s  (%.1fs / %.0fs budget)\n",
                    (pass && in_budget) ? "PASS" : "FAIL", crit.id.c_str(), crit.title.c_str(),
                    elapsed, crit.time_budget_s);
        for (const auto& check : it->second) {
            std::printf("        %-28s %-4s tol %.0e resid", check.check_id.c_str(),
                        check.status.c_str(), check.tolerance);
            for (double r : check.residuals) std::printf(" %.2e", r);
            if (!check.notes.empty()) std::printf("  [%s]", check.notes.c_str());
            std::printf("\n");
        }
        std::fflush(stdout);
        CHECK_MESSAGE(pass, crit.id, " checks failed");
        CHECK_MESSAGE(in_budget, crit.id, " exceeded its time budget");
        if (!pass || !in_budget) ++failed;
    }
    CHECK(failed == 0);
}
