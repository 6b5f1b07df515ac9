// Command-line front end: run verification suites, compute character and
// transgression fields for registered maps, and emit machine-readable reports.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "oddchern/suites.hpp"

using namespace oddchern;

namespace {

struct CliOptions {
    std::string chart;
    std::string map_spec;
    std::string path_spec;
    std::string grid;
    int nodes = -1;
    int nmax = -2;
    double tol = -1.0;
    long long seed = -1;
    std::string out;
    std::string config_file;
};

std::vector<int> parse_grid(const std::string& s) {
    std::vector<int> grid;
    if (s.empty()) return grid;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stoi(tok));
    return grid;
}

// flags > config file > defaults
RunConfig effective_config(const CliOptions& opts) {
    RunConfig cfg;
    if (!opts.config_file.empty()) {
        std::ifstream in(opts.config_file);
        if (!in) throw UsageError("cannot open config file: " + opts.config_file);
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t");
                const auto b = s.find_last_not_of(" \t");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key == "chart") cfg.chart_name = val;
            else if (key == "map") cfg.map_spec = val;
            else if (key == "path") cfg.path_spec = val;
            else if (key == "grid") cfg.grid = parse_grid(val);
            else if (key == "nodes") cfg.nodes = std::stoi(val);
            else if (key == "nmax") cfg.n_max = std::stoi(val);
            else if (key == "tol") cfg.tol = std::stod(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "out") cfg.out_path = val;
            else throw UsageError("unknown config key: " + key);
        }
    }
    if (!opts.chart.empty()) cfg.chart_name = opts.chart;
    if (!opts.map_spec.empty()) cfg.map_spec = opts.map_spec;
    if (!opts.path_spec.empty()) cfg.path_spec = opts.path_spec;
    if (!opts.grid.empty()) cfg.grid = parse_grid(opts.grid);
    if (opts.nodes > 0) cfg.nodes = opts.nodes;
    if (opts.nmax > -2) cfg.n_max = opts.nmax;
    if (opts.tol > 0.0) cfg.tol = opts.tol;
    if (opts.seed >= 0) cfg.seed = static_cast<unsigned long long>(opts.seed);
    if (!opts.out.empty()) cfg.out_path = opts.out;
    return cfg;
}

nlohmann::json config_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["chart"] = cfg.chart_name;
    j["map"] = cfg.map_spec;
    j["path"] = cfg.path_spec;
    j["grid"] = cfg.grid;
    j["nodes"] = cfg.nodes;
    j["nmax"] = cfg.n_max;
    j["tol"] = cfg.tol;
    j["seed"] = cfg.seed;
    return j;
}

void emit_report(const std::vector<CheckRecord>& checks, const RunConfig& cfg,
                 const std::string& header_kind) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path);
        if (!file) throw UsageError("cannot open output path: " + cfg.out_path);
        os = &file;
    }
    nlohmann::json header;
    header["report"] = header_kind;
    header["config"] = config_json(cfg);
    *os << header.dump() << "\n";
    for (const auto& c : checks) *os << to_json_line(c) << "\n";
}

Chart chart_for(const RunConfig& cfg, const std::string& spec) {
    const std::string name = cfg.chart_name.empty() ? implied_chart(spec) : cfg.chart_name;
    return make_chart(name, cfg.grid);
}

nlohmann::json field_summary(const FormField& field) {
    nlohmann::json j;
    j["degree_support"] = field.degree_support();
    j["max_imag"] = field.max_imag();
    nlohmann::json periods = nlohmann::json::object();
    const CycleSet cycles = CycleSet::for_chart(field.chart);
    for (const auto& cyc : cycles.cycles) {
        const cplx v = cyc.integrate(field);
        periods[cyc.label] = {v.real(), v.imag()};
    }
    j["periods"] = periods;
    return j;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg) {
    const auto checks = run_suite(suite, cfg);
    emit_report(checks, cfg, "verify:" + suite);
    for (const auto& c : checks)
        if (c.status != "pass")
            std::cerr << "FAIL " << c.check_id << " (max resid "
                      << (c.residuals.empty() ? 0.0 : c.residuals[0]) << ")\n";
    return all_passed(checks) ? 0 : 1;
}

int cmd_chern(const RunConfig& cfg) {
    if (cfg.map_spec.empty()) throw UsageError("chern needs --map");
    const Chart chart = chart_for(cfg, cfg.map_spec);
    UnitaryMap g = make_map(cfg.map_spec, chart, cfg.seed);
    FormField field = odd_chern(g, {cfg.n_max});
    if (!cfg.out_path.empty()) write_csv(field, cfg.out_path);
    nlohmann::json j = field_summary(field);
    j["map"] = cfg.map_spec;
    j["csv"] = cfg.out_path;
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_cs(const RunConfig& cfg) {
    if (cfg.path_spec.empty()) throw UsageError("cs needs --path");
    const Chart chart = chart_for(cfg, cfg.path_spec);
    PathOfMaps path = make_path(cfg.path_spec, chart, cfg.seed);
    FormField field = cs(path, {cfg.n_max}, {cfg.nodes, QuadratureSpec::Rule::gauss});
    if (!cfg.out_path.empty()) write_csv(field, cfg.out_path);
    nlohmann::json j = field_summary(field);
    j["path"] = cfg.path_spec;
    j["csv"] = cfg.out_path;
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_winding(const RunConfig& cfg) {
    if (cfg.path_spec.empty()) throw UsageError("winding needs --path");
    const Chart chart = chart_for(cfg, cfg.path_spec);
    PathOfMaps path = make_path(cfg.path_spec, chart, cfg.seed);
    const WindingResult w = winding(path, {cfg.nodes, QuadratureSpec::Rule::gauss});
    nlohmann::json j;
    j["path"] = cfg.path_spec;
    j["winding"] = w.value;
    j["residual"] = w.residual;
    std::cout << j.dump() << "\n";
    return w.residual < (cfg.tol > 0 ? cfg.tol : 1e-8) ? 0 : 1;
}

int cmd_report(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open report: " + file);
    std::string line;
    int total = 0, failed = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        if (j.contains("report")) {
            std::cout << "report: " << j["report"].get<std::string>() << "\n";
            continue;
        }
        ++total;
        const std::string status = j.value("status", "?");
        if (status != "pass") ++failed;
        std::cout << (status == "pass" ? "  ok   " : "  FAIL ") << j.value("check_id", "?");
        if (j.contains("residuals") && !j["residuals"].empty())
            std::cout << "  (resid " << j["residuals"][0].get<double>() << ")";
        std::cout << "\n";
    }
    std::cout << total - failed << "/" << total << " checks passed\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odd character and transgression forms for unitary-valued maps"};
    app.require_subcommand(1);

    CliOptions opts;
    std::string suite, report_file;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--chart", opts.chart, "chart name (interval, circle, torus2, sphere2, sphere3, point)");
        cmd->add_option("--map", opts.map_spec, "map spec, e.g. clifford:1 or exp_scalar:xy_sin");
        cmd->add_option("--path", opts.path_spec, "path spec, e.g. projection_loop:bott");
        cmd->add_option("--grid", opts.grid, "grid override N or N,N,..");
        cmd->add_option("--nodes", opts.nodes, "quadrature nodes (default 64)");
        cmd->add_option("--nmax", opts.nmax, "series truncation override");
        cmd->add_option("--tol", opts.tol, "tolerance override");
        cmd->add_option("--seed", opts.seed, "seed for randomized checks (default 42)");
        cmd->add_option("--out", opts.out, "output path (CSV or JSON-lines report)");
        cmd->add_option("--config", opts.config_file, "key=value config file");
    };

    CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("suite", suite, "suite name")->required();
    add_common(verify);
    CLI::App* chern_cmd = app.add_subcommand("chern", "odd character of a map (CSV + summary)");
    add_common(chern_cmd);
    CLI::App* cs_cmd = app.add_subcommand("cs", "transgression form of a path (CSV + summary)");
    add_common(cs_cmd);
    CLI::App* winding_cmd = app.add_subcommand("winding", "winding number of a loop");
    add_common(winding_cmd);
    CLI::App* report_cmd = app.add_subcommand("report", "summarize a JSON-lines report");
    report_cmd->add_option("file", report_file, "report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const RunConfig cfg = effective_config(opts);
        if (verify->parsed()) return cmd_verify(suite, cfg);
        if (chern_cmd->parsed()) return cmd_chern(cfg);
        if (cs_cmd->parsed()) return cmd_cs(cfg);
        if (winding_cmd->parsed()) return cmd_winding(cfg);
        if (report_cmd->parsed()) return cmd_report(report_file);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
