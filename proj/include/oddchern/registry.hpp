#pragma once

#include <stdexcept>
#include <string>

#include "oddchern/maps.hpp"

namespace oddchern {

/// Bad user input (unknown names, malformed specs). The CLI maps this to the
/// usage exit code.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Effective run configuration; flags > config file > defaults.
struct RunConfig {
    std::string chart_name;
    std::vector<int> grid;     // per-axis override, or one value for all axes
    std::string map_spec;
    std::string path_spec;
    int nodes = 64;
    int n_max = -1;
    double tol = -1.0;         // negative means per-check default
    unsigned long long seed = 42;
    std::string out_path;
};

/// Chart by registry name with optional grid override.
Chart make_chart(const std::string& name, const std::vector<int>& grid = {});

/// Chart a named map or path wants when the user gave none.
std::string implied_chart(const std::string& spec);

// Registry grammar: name[:arg[,key=value...]]. Nested map arguments (swap,
// cancel, mult) must themselves be comma-free specs.
//   maps:  clifford:0|1, exp_scalar:<x|x2|cos_theta|xy_sin|zero>,
//          analytic:seed=S, random_const:seed=S[,n=N], const:id[,n=N]
//   paths: projection_loop:bott[,s=X], exp_loop:k=K[,n=N],
//          conj_loop:k=K[,seed=S], analytic_path:seed=S,
//          swap:<map>,<map>, cancel:<map>, mult:<map>,<map>
UnitaryMap make_map(const std::string& spec, const Chart& chart, unsigned long long seed);
PathOfMaps make_path(const std::string& spec, const Chart& chart, unsigned long long seed);

}  // namespace oddchern
