#include "oddchern/registry.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace oddchern {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::pair<std::string, std::string> split_head(const std::string& spec) {
    const auto pos = spec.find(':');
    if (pos == std::string::npos) return {spec, ""};
    return {spec.substr(0, pos), spec.substr(pos + 1)};
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

// key=value pairs after the positional head of the argument list
struct Args {
    std::vector<std::string> positional;
    std::map<std::string, std::string> kv;

    double num(const std::string& key, double fallback) const {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        return std::stod(it->second);
    }
};

Args parse_args(const std::string& rest) {
    Args args;
    if (rest.empty()) return args;
    for (const auto& tok : split_commas(rest)) {
        const auto eq = tok.find('=');
        const auto colon = tok.find(':');
        // a nested spec like "analytic:seed=1" stays positional
        if (eq == std::string::npos || (colon != std::string::npos && colon < eq))
            args.positional.push_back(tok);
        else
            args.kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return args;
}

std::function<double(const Point&)> scalar_by_name(const std::string& name,
                                                   std::function<std::vector<double>(const Point&)>* grad,
                                                   int dim) {
    if (name == "zero") {
        *grad = [dim](const Point&) { return std::vector<double>(dim, 0.0); };
        return [](const Point&) { return 0.0; };
    }
    if (name == "x") {
        *grad = [dim](const Point&) {
            std::vector<double> g(dim, 0.0);
            g[0] = 1.0;
            return g;
        };
        return [](const Point& p) { return p[0]; };
    }
    if (name == "x2") {
        *grad = [dim](const Point& p) {
            std::vector<double> g(dim, 0.0);
            g[0] = 2.0 * p[0];
            return g;
        };
        return [](const Point& p) { return p[0] * p[0]; };
    }
    if (name == "cos_theta") {
        *grad = [dim](const Point& p) {
            std::vector<double> g(dim, 0.0);
            g[0] = -std::sin(p[0]);
            return g;
        };
        return [](const Point& p) { return std::cos(p[0]); };
    }
    if (name == "xy_sin") {
        if (dim < 2) throw UsageError("exp_scalar:xy_sin needs a 2-d chart");
        *grad = [dim](const Point& p) {
            std::vector<double> g(dim, 0.0);
            g[0] = two_pi * std::cos(two_pi * p[0]) * std::cos(two_pi * p[1]);
            g[1] = -two_pi * std::sin(two_pi * p[0]) * std::sin(two_pi * p[1]);
            return g;
        };
        return [](const Point& p) {
            return std::sin(two_pi * p[0]) * std::cos(two_pi * p[1]);
        };
    }
    throw UsageError("unknown scalar function: " + name);
}

}  // namespace

Chart make_chart(const std::string& name, const std::vector<int>& grid) {
    Chart c;
    try {
        c = Chart::by_name(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!grid.empty()) c = c.with_samples(grid);
    return c;
}

std::string implied_chart(const std::string& spec) {
    const auto [head, rest] = split_head(spec);
    if (head == "clifford") return rest == "1" ? "sphere3" : "circle";
    if (head == "projection_loop") return "sphere2";
    if (head == "conj_loop" || head == "exp_loop") return "point";
    return "torus2";
}

UnitaryMap make_map(const std::string& spec, const Chart& chart, unsigned long long seed) {
    const auto [head, rest] = split_head(spec);
    const Args args = parse_args(rest);

    if (head == "clifford") {
        if (args.positional.empty()) throw UsageError("clifford needs n (0 or 1)");
        const int n = std::stoi(args.positional[0]);
        if (n < 0 || n > 1) throw UsageError("clifford: n must be 0 or 1");
        return clifford_sphere_map(n, chart);
    }
    if (head == "exp_scalar") {
        if (args.positional.empty()) throw UsageError("exp_scalar needs a function name");
        std::function<std::vector<double>(const Point&)> grad;
        auto f = scalar_by_name(args.positional[0], &grad, chart.dim());
        return exp_scalar_map(f, chart, grad);
    }
    if (head == "analytic") {
        return analytic_unitary_map(chart,
                                    static_cast<unsigned long long>(args.num("seed", double(seed))));
    }
    if (head == "random_const") {
        std::mt19937_64 rng(static_cast<unsigned long long>(args.num("seed", double(seed))));
        const int n = static_cast<int>(args.num("n", 2));
        return constant_map(chart, random_unitary(n, rng));
    }
    if (head == "const") {
        const int n = static_cast<int>(args.num("n", 1));
        return constant_map(chart, ComplexMatrix::identity(n));
    }
    throw UsageError("unknown map spec: " + spec);
}

PathOfMaps make_path(const std::string& spec, const Chart& chart, unsigned long long seed) {
    const auto [head, rest] = split_head(spec);
    const Args args = parse_args(rest);

    if (head == "projection_loop") {
        if (args.positional.empty() || args.positional[0] != "bott")
            throw UsageError("projection_loop supports the built-in 'bott' projection");
        return projection_loop(bott_projection(chart), args.num("s", 1.0));
    }
    if (head == "exp_loop") {
        return exp_loop(chart, static_cast<int>(args.num("k", 1)),
                        static_cast<int>(args.num("n", 1)));
    }
    if (head == "conj_loop") {
        return conjugated_loop(chart, static_cast<int>(args.num("k", 1)),
                               static_cast<unsigned long long>(args.num("seed", double(seed))));
    }
    if (head == "analytic_path") {
        return analytic_unitary_path(
            chart, static_cast<unsigned long long>(args.num("seed", double(seed))));
    }
    if (head == "swap" || head == "mult") {
        if (args.positional.size() != 2)
            throw UsageError(head + " needs two comma-free map specs");
        UnitaryMap g = make_map(args.positional[0], chart, seed);
        UnitaryMap h = make_map(args.positional[1], chart, seed + 1);
        return head == "swap" ? swap_path(g, h) : multiplication_path(g, h);
    }
    if (head == "cancel") {
        if (args.positional.size() != 1) throw UsageError("cancel needs one map spec");
        return cancellation_path(make_map(args.positional[0], chart, seed));
    }
    throw UsageError("unknown path spec: " + spec);
}

}  // namespace oddchern
