// crnsim: load CRN instances, validate them, enumerate feasible schedules,
// solve the capacity-region oracle and run/sweep the scheduling algorithms.
//
// Exit codes: 0 success, 1 validation or bound failure, 2 usage/config error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crn/io.hpp"

namespace fs = std::filesystem;
using crn::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunFlags {
    std::string instance_path;
    std::string config_path;
    std::string out_dir;
    std::string model, source_mode, scheduler;
    std::optional<double> v1, v2;
    std::optional<long> horizon;
    std::optional<std::uint64_t> seed;
    std::optional<double> burn_in;
    std::optional<bool> strict;
    bool trace = false;
    bool bounds = false;
};

crn::Instance load_checked_instance(const std::string& path) {
    crn::Instance inst = crn::load_instance(path);
    auto rep = crn::validate_topology(inst.topo, inst.has_routes() ? &inst.route_paths : nullptr);
    if (!rep.ok()) {
        for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
        throw std::runtime_error("instance failed validation");
    }
    return inst;
}

void apply_overrides(crn::SimConfig& cfg, const RunFlags& f) {
    if (!f.model.empty())
        cfg.model = f.model == "inelastic" ? crn::Model::inelastic : crn::Model::elastic;
    if (!f.source_mode.empty())
        cfg.source = f.source_mode == "backlogged" ? crn::SourceMode::backlogged
                                                   : crn::SourceMode::arbitrary;
    if (!f.scheduler.empty())
        cfg.scheduler =
            f.scheduler == "exact" ? crn::SchedulerKind::exact : crn::SchedulerKind::gmm;
    if (f.v1) cfg.inelastic.V1 = *f.v1;
    if (f.v2) cfg.elastic.V2 = *f.v2;
    if (f.horizon) cfg.horizon = *f.horizon;
    if (f.seed) cfg.seed = *f.seed;
    if (f.burn_in) cfg.burn_in = *f.burn_in;
    if (f.strict) cfg.strict = *f.strict;
}

crn::OracleSolution solve_oracle(const crn::Instance& inst, const crn::SimConfig& cfg,
                                 const crn::RouteSet* routes) {
    if (cfg.model == crn::Model::elastic) {
        if (!routes) throw UsageError("elastic oracle needs routes in the instance");
        return crn::elastic_optimum(inst.topo, *routes, cfg.elastic.rho, cfg.elastic.epsilon,
                                    cfg.enumeration_cap);
    }
    return crn::inelastic_optimum(inst.topo, cfg.inelastic.a_P, cfg.inelastic.f, cfg.inelastic.g,
                                  cfg.inelastic.epsilon, cfg.enumeration_cap);
}

void write_or_print(const json& j, const std::string& out_dir, const std::string& filename) {
    if (out_dir.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / filename);
    out << j.dump(2) << "\n";
}

int cmd_validate(const std::string& path) {
    crn::Instance inst = crn::load_instance(path);
    auto rep = crn::validate_topology(inst.topo, inst.has_routes() ? &inst.route_paths : nullptr);
    if (rep.ok()) {
        std::cout << "valid\n";
        return 0;
    }
    for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
    return 1;
}

int cmd_enumerate(const std::string& path, int cap, bool hops) {
    crn::Instance inst = load_checked_instance(path);
    json out;
    out["schema_version"] = crn::kSchemaVersion;
    json scheds = json::array();
    if (hops) {
        if (!inst.has_routes()) throw UsageError("--hops needs routes in the instance");
        crn::RouteSet routes = inst.routes();
        auto space = crn::UnitSpace::hops(inst.topo, routes);
        for (const auto& s : crn::enumerate_feasible_units(space, cap)) scheds.push_back(s);
    } else {
        for (const auto& s : crn::enumerate_feasible(inst.topo, cap)) scheds.push_back(s.on);
    }
    out["count"] = scheds.size();
    out["schedules"] = std::move(scheds);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_oracle(const std::string& inst_path, const std::string& config_path,
               const std::string& model, double eps, double a_P, int cap,
               const std::string& out_dir) {
    crn::Instance inst = load_checked_instance(inst_path);
    crn::OracleSolution sol;
    if (!config_path.empty()) {
        crn::SimConfig cfg = crn::load_config(config_path, inst.topo.num_su(), static_cast<int>(inst.route_paths.size()));
        if (!model.empty())
            cfg.model = model == "elastic" ? crn::Model::elastic : crn::Model::inelastic;
        if (eps >= 0.0) {
            cfg.elastic.epsilon = eps;
            cfg.inelastic.epsilon = eps;
        }
        crn::RouteSet routes;
        const crn::RouteSet* rp = nullptr;
        if (inst.has_routes()) {
            routes = inst.routes();
            rp = &routes;
        }
        sol = solve_oracle(inst, cfg, rp);
    } else if (model == "elastic") {
        if (!inst.has_routes()) throw UsageError("elastic oracle needs routes in the instance");
        crn::RouteSet routes = inst.routes();
        std::vector<double> rho(routes.num_routes(), 1.0);
        sol = crn::elastic_optimum(inst.topo, routes, rho, eps < 0.0 ? 0.0 : eps, cap);
    } else if (model == "inelastic") {
        std::vector<crn::UtilitySpec> g(inst.topo.num_su(), crn::UtilitySpec::make_linear(1.0));
        sol = crn::inelastic_optimum(inst.topo, a_P, crn::UtilitySpec::make_linear(1.0), g,
                                     eps < 0.0 ? 0.0 : eps, cap);
    } else {
        throw UsageError("--model must be 'elastic' or 'inelastic' (or give --config)");
    }
    write_or_print(crn::oracle_to_json(sol), out_dir, "oracle.json");
    return sol.ok() ? 0 : 1;
}

int cmd_run(const RunFlags& f) {
    crn::Instance inst = load_checked_instance(f.instance_path);
    crn::SimConfig cfg = crn::load_config(f.config_path, inst.topo.num_su(), static_cast<int>(inst.route_paths.size()));
    apply_overrides(cfg, f);

    crn::RouteSet routes;
    const crn::RouteSet* rp = nullptr;
    if (inst.has_routes()) {
        routes = inst.routes();
        rp = &routes;
    }
    if (f.trace && f.out_dir.empty()) throw UsageError("--trace needs --out DIR");

    std::ofstream trace_file;
    std::optional<crn::CsvTraceWriter> writer;
    if (f.trace) {
        fs::create_directories(f.out_dir);
        trace_file.open(fs::path(f.out_dir) / "trace.csv");
        writer.emplace(trace_file);
    }

    crn::SummaryStats stats = crn::run_sim(inst.topo, rp, cfg, writer ? &*writer : nullptr);
    json summary = crn::summary_to_json(stats, cfg);

    bool bounds_ok = true;
    if (f.bounds) {
        crn::OracleSolution sol = solve_oracle(inst, cfg, rp);
        if (!sol.ok()) throw std::runtime_error("oracle did not solve; cannot check bounds");
        crn::BoundReport rep = crn::verify_bounds(stats, cfg, inst.topo, rp, sol);
        summary["bounds"] = crn::bound_report_to_json(rep);
        bounds_ok = rep.all_hard_pass();
    }
    write_or_print(summary, f.out_dir, "summary.json");
    if (stats.violations() > 0) {
        std::cerr << "bound violations detected: " << stats.violations() << "\n";
        return 1;
    }
    return bounds_ok ? 0 : 1;
}

int cmd_sweep(const RunFlags& f, const std::vector<double>& values, bool with_oracle) {
    crn::Instance inst = load_checked_instance(f.instance_path);
    crn::SimConfig cfg = crn::load_config(f.config_path, inst.topo.num_su(), static_cast<int>(inst.route_paths.size()));
    apply_overrides(cfg, f);

    crn::RouteSet routes;
    const crn::RouteSet* rp = nullptr;
    if (inst.has_routes()) {
        routes = inst.routes();
        rp = &routes;
    }

    crn::OracleSolution sol;
    if (with_oracle) {
        sol = solve_oracle(inst, cfg, rp);
        if (!sol.ok()) throw std::runtime_error("oracle did not solve");
    }
    auto rows = crn::sweep(inst.topo, rp, cfg, values, with_oracle ? &sol : nullptr);

    std::ostream& out = std::cout;
    out.precision(17);
    out << "value,objective,pu_rate,pu_utility,su_utility_total,max_u,avg_q_total,"
           "delay_pu,oracle_gap,violations\n";
    for (const auto& row : rows) {
        double objective = cfg.model == crn::Model::inelastic ? row.stats.su_utility_total
                                                              : row.stats.pu_rate;
        double gap = 0.0;
        if (with_oracle) {
            double opt = 0.0;
            if (cfg.model == crn::Model::inelastic)
                for (int l = 0; l < inst.topo.num_su(); ++l)
                    opt += cfg.inelastic.g[l].value(sol.rates[l]);
            else
                for (double r : sol.rates) opt += r;
            gap = opt - objective;
        }
        out << row.value << ',' << objective << ',' << row.stats.pu_rate << ','
            << row.stats.pu_utility << ',' << row.stats.su_utility_total << ','
            << row.stats.max_u << ',' << row.stats.avg_q_total << ',' << row.stats.delay_pu << ','
            << gap << ',' << row.stats.violations() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cooperative CRN cross-layer scheduling laboratory"};
    app.require_subcommand(1);

    std::string inst_path, config_path, out_dir, model, values_csv;
    int cap = 20;
    bool hops = false, trace = false, bounds = false;
    double eps = -1.0, a_P = 0.1;
    RunFlags flags;
    double v1 = -1.0, v2 = -1.0, burn_in = -1.0;
    long horizon = -1;
    std::int64_t seed = -1;
    bool strict = false, no_strict = false;

    auto* validate = app.add_subcommand("validate", "check instance structure");
    validate->add_option("instance", inst_path)->required();

    auto* enumerate = app.add_subcommand("enumerate", "list all feasible schedules");
    enumerate->add_option("instance", inst_path)->required();
    enumerate->add_option("--cap", cap, "enumeration cap on decision units");
    enumerate->add_flag("--hops", hops, "enumerate hop/link schedules over the routes");

    auto* oracle = app.add_subcommand("oracle", "solve the capacity-region optimum");
    oracle->add_option("instance", inst_path)->required();
    oracle->add_option("--config", config_path, "pull model parameters from a run config");
    oracle->add_option("--model", model, "elastic or inelastic");
    oracle->add_option("--eps", eps, "interior slack epsilon (default 0)");
    oracle->add_option("--a-P", a_P, "PU minimum utility (inelastic without --config)");
    oracle->add_option("--cap", cap, "enumeration cap");
    oracle->add_option("--out", out_dir, "write oracle.json here instead of stdout");

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("instance", inst_path)->required();
        cmd->add_option("config", config_path)->required();
        cmd->add_option("--model", flags.model);
        cmd->add_option("--source-mode", flags.source_mode);
        cmd->add_option("--scheduler", flags.scheduler);
        cmd->add_option("--V1", v1);
        cmd->add_option("--V2", v2);
        cmd->add_option("--T", horizon);
        cmd->add_option("--seed", seed);
        cmd->add_option("--burn-in", burn_in);
        cmd->add_flag("--strict", strict, "abort on the first bound violation");
        cmd->add_flag("--no-strict", no_strict, "count bound violations instead of aborting");
        cmd->add_option("--out", out_dir, "output directory");
    };

    auto* run = app.add_subcommand("run", "run one simulation");
    add_run_flags(run);
    run->add_flag("--trace", trace, "write per-slot trace.csv (needs --out)");
    run->add_flag("--bounds", bounds, "solve the oracle and attach the bound report");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a V1/V2 grid on one instance");
    add_run_flags(sweep_cmd);
    sweep_cmd->add_option("--values", values_csv, "comma-separated grid values")->required();
    sweep_cmd->add_flag("--bounds", bounds, "solve the oracle and report gaps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    flags.instance_path = inst_path;
    flags.config_path = config_path;
    flags.out_dir = out_dir;
    flags.trace = trace;
    flags.bounds = bounds;
    if (v1 >= 0.0) flags.v1 = v1;
    if (v2 >= 0.0) flags.v2 = v2;
    if (horizon >= 0) flags.horizon = horizon;
    if (seed >= 0) flags.seed = static_cast<std::uint64_t>(seed);
    if (burn_in >= 0.0) flags.burn_in = burn_in;
    if (strict) flags.strict = true;
    if (no_strict) flags.strict = false;

    try {
        if (validate->parsed()) return cmd_validate(inst_path);
        if (enumerate->parsed()) return cmd_enumerate(inst_path, cap, hops);
        if (oracle->parsed()) return cmd_oracle(inst_path, config_path, model, eps, a_P, cap, out_dir);
        if (run->parsed()) return cmd_run(flags);
        if (sweep_cmd->parsed()) {
            std::vector<double> values;
            std::stringstream ss(values_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) values.push_back(std::stod(tok));
            if (values.empty()) throw UsageError("--values is empty");
            return cmd_sweep(flags, values, bounds);
        }
    } catch (const crn::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const crn::EnumerationCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const crn::BoundViolationError& e) {
        std::cerr << "bound violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
