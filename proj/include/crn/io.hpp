#pragma once

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "crn/oracle.hpp"
#include "crn/simkit.hpp"
#include "crn/topology.hpp"

namespace crn {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Instance {
    CrnTopology topo;
    std::vector<std::vector<int>> route_paths;  // may be empty

    bool has_routes() const { return !route_paths.empty(); }
    RouteSet routes() const { return make_route_set(topo, route_paths); }
};

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

namespace detail {

template <typename T>
T require(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(where + ": field '" + key + "': " + e.what());
    }
}

}  // namespace detail

/// Instance files are the single source of truth for a topology: node sets,
/// the directed relay links, one SU link per listed secondary node, conflict
/// edges as index pairs into the concatenated link list (relay links first,
/// then SU links) and optional fixed routes.
inline Instance parse_instance(const json& j, const std::string& where = "instance") {
    Instance inst;
    json nodes = detail::require<json>(j, "nodes", where);
    inst.topo.pu_source = detail::require<int>(nodes, "pu_source", where + ".nodes");
    inst.topo.pu_dest = detail::require<int>(nodes, "pu_dest", where + ".nodes");
    inst.topo.su_nodes = detail::require<std::vector<int>>(nodes, "su", where + ".nodes");
    auto relays =
        detail::require<std::vector<std::vector<int>>>(j, "relay_links", where);
    for (const auto& r : relays) {
        if (r.size() != 2) throw ParseError(where + ": relay link must be a [from,to] pair");
        inst.topo.relay_links.push_back({r[0], r[1]});
    }
    inst.topo.su_link_nodes = detail::require<std::vector<int>>(j, "su_links", where);
    auto conflicts = detail::require<std::vector<std::vector<int>>>(j, "conflict_edges", where);
    for (const auto& c : conflicts) {
        if (c.size() != 2) throw ParseError(where + ": conflict edge must be an [i,j] pair");
        inst.topo.conflict_edges.push_back({c[0], c[1]});
    }
    if (j.contains("routes"))
        inst.route_paths = j.at("routes").get<std::vector<std::vector<int>>>();
    inst.topo.rebuild_index();
    return inst;
}

inline Instance load_instance(const std::string& path) {
    return parse_instance(load_json_file(path), path);
}

inline json instance_to_json(const Instance& inst) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["nodes"] = {{"pu_source", inst.topo.pu_source},
                  {"pu_dest", inst.topo.pu_dest},
                  {"su", inst.topo.su_nodes}};
    json relays = json::array();
    for (const auto& L : inst.topo.relay_links) relays.push_back({L.from, L.to});
    j["relay_links"] = std::move(relays);
    j["su_links"] = inst.topo.su_link_nodes;
    json conflicts = json::array();
    for (auto [a, b] : inst.topo.conflict_edges) conflicts.push_back({a, b});
    j["conflict_edges"] = std::move(conflicts);
    if (inst.has_routes()) j["routes"] = inst.route_paths;
    return j;
}

inline UtilitySpec parse_utility(const json& j, const std::string& where) {
    std::string family = detail::require<std::string>(j, "family", where);
    double theta = detail::require<double>(j, "theta", where);
    if (family == "log") return UtilitySpec::make_log(theta);
    if (family == "linear") return UtilitySpec::make_linear(theta);
    throw ParseError(where + ": unknown utility family '" + family + "'");
}

inline json utility_to_json(const UtilitySpec& u) {
    return {{"family", u.family == UtilitySpec::Family::log ? "log" : "linear"},
            {"theta", u.theta}};
}

inline ArrivalSpec parse_arrival(const json& j, const std::string& where) {
    std::string kind = detail::require<std::string>(j, "kind", where);
    if (kind == "constant") return ArrivalSpec::constant(detail::require<double>(j, "c", where));
    if (kind == "bernoulli")
        return ArrivalSpec::bernoulli(detail::require<double>(j, "p", where),
                                      j.value("batch", 1.0));
    throw ParseError(where + ": unknown arrival kind '" + kind + "'");
}

/// Run configuration: model, source mode, scheduler, horizon/seed/burn-in
/// and the parameter block of the selected model. One file describes one
/// reproducible experiment; CLI flags override individual fields. Scalar
/// `g` and `rho` entries are replicated per SU / per route.
inline SimConfig parse_config(const json& j, int num_su, int num_routes = -1,
                              const std::string& where = "config") {
    SimConfig cfg;
    std::string model = detail::require<std::string>(j, "model", where);
    if (model == "inelastic") cfg.model = Model::inelastic;
    else if (model == "elastic") cfg.model = Model::elastic;
    else throw ParseError(where + ": unknown model '" + model + "'");

    std::string source = j.value("source_mode", "backlogged");
    if (source == "backlogged") cfg.source = SourceMode::backlogged;
    else if (source == "arbitrary") cfg.source = SourceMode::arbitrary;
    else throw ParseError(where + ": unknown source_mode '" + source + "'");

    std::string sched = j.value("scheduler", "exact");
    if (sched == "exact") cfg.scheduler = SchedulerKind::exact;
    else if (sched == "gmm") cfg.scheduler = SchedulerKind::gmm;
    else throw ParseError(where + ": unknown scheduler '" + sched + "'");

    cfg.horizon = detail::require<long>(j, "horizon", where);
    cfg.seed = j.value("seed", 1ULL);
    cfg.burn_in = j.value("burn_in", 0.2);
    cfg.strict = j.value("strict", true);
    cfg.floor_rewards = j.value("floor_rewards", false);
    cfg.enumeration_cap = j.value("enumeration_cap", 20);

    json params = detail::require<json>(j, "params", where);
    const std::string pw = where + ".params";
    if (cfg.model == Model::inelastic) {
        InelasticParams& p = cfg.inelastic;
        p.V1 = detail::require<double>(params, "V1", pw);
        p.q_M = detail::require<double>(params, "q_M", pw);
        p.mu_M = detail::require<double>(params, "mu_M", pw);
        p.A_M = detail::require<double>(params, "A_M", pw);
        p.a_P = detail::require<double>(params, "a_P", pw);
        p.epsilon = params.value("epsilon", 0.05);
        p.W_P = params.value("W_P", 0.0);
        p.W_S = params.value("W_S", 0.0);
        p.f = parse_utility(detail::require<json>(params, "f", pw), pw + ".f");
        json g = detail::require<json>(params, "g", pw);
        if (g.is_array()) {
            for (size_t i = 0; i < g.size(); ++i)
                p.g.push_back(parse_utility(g[i], pw + ".g[" + std::to_string(i) + "]"));
        } else {
            p.g.assign(num_su, parse_utility(g, pw + ".g"));
        }
    } else {
        ElasticParams& p = cfg.elastic;
        p.V2 = detail::require<double>(params, "V2", pw);
        p.mu_M = detail::require<double>(params, "mu_M", pw);
        p.A_M = params.value("A_M", 1.0);
        p.epsilon = params.value("epsilon", 0.05);
        p.W_P = params.value("W_P", 0.0);
        p.W_S = params.value("W_S", 0.0);
        json rho = detail::require<json>(params, "rho", pw);
        if (rho.is_array()) {
            p.rho = rho.get<std::vector<double>>();
        } else if (rho.is_number() && num_routes >= 0) {
            p.rho.assign(num_routes, rho.get<double>());
        } else {
            throw ParseError(pw + ".rho: expected an array (one reward per route) or a scalar");
        }
    }

    if (j.contains("arrivals")) {
        json arr = j.at("arrivals");
        if (arr.contains("E_p")) cfg.arrival_pu = parse_arrival(arr.at("E_p"), where + ".arrivals.E_p");
        if (arr.contains("E_l")) {
            json el = arr.at("E_l");
            if (el.is_array()) {
                for (size_t i = 0; i < el.size(); ++i)
                    cfg.arrival_su.push_back(
                        parse_arrival(el[i], where + ".arrivals.E_l[" + std::to_string(i) + "]"));
            } else {
                cfg.arrival_su.assign(num_su, parse_arrival(el, where + ".arrivals.E_l"));
            }
        }
    }
    return cfg;
}

inline SimConfig load_config(const std::string& path, int num_su, int num_routes = -1) {
    return parse_config(load_json_file(path), num_su, num_routes, path);
}

inline json summary_to_json(const SummaryStats& s, const SimConfig& cfg) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["model"] = cfg.model == Model::inelastic ? "inelastic" : "elastic";
    j["source_mode"] = cfg.source == SourceMode::backlogged ? "backlogged" : "arbitrary";
    j["scheduler"] = cfg.scheduler == SchedulerKind::exact ? "exact" : "gmm";
    j["seed"] = cfg.seed;
    j["horizon"] = s.horizon;
    j["burn_in_slots"] = s.burn_in_slots;
    j["measured_slots"] = s.measured_slots;
    j["pu_rate"] = s.pu_rate;
    if (!s.route_rate.empty()) j["route_rate"] = s.route_rate;
    j["virtual_rate_avg"] = s.virtual_rate_avg;
    j["aux_pu_avg"] = s.aux_pu_avg;
    j["su_admission_avg"] = s.su_admission_avg;
    j["su_queue_arrival_avg"] = s.su_queue_arrival_avg;
    j["pu_delivered_rate"] = s.pu_delivered_rate;
    j["su_served_rate"] = s.su_served_rate;
    j["pu_utility"] = s.pu_utility;
    j["su_utility_total"] = s.su_utility_total;
    j["avg_u_total"] = s.avg_u_total;
    if (!s.avg_u_route.empty()) j["avg_u_route"] = s.avg_u_route;
    j["avg_q"] = s.avg_q;
    j["avg_q_total"] = s.avg_q_total;
    j["avg_u_p"] = s.avg_u_p;
    j["avg_z"] = s.avg_z;
    j["avg_y_p"] = s.avg_y_p;
    j["avg_w_p"] = s.avg_w_p;
    j["avg_y_l_total"] = s.avg_y_l_total;
    j["avg_w_l_total"] = s.avg_w_l_total;
    j["max_u"] = s.max_u;
    j["max_w_p"] = s.max_w_p;
    j["max_w_l"] = s.max_w_l;
    j["violations"] = {{"prop1", s.prop1_violations},
                       {"prop2", s.prop2_violations},
                       {"prop3", s.prop3_violations},
                       {"first_slot", s.first_violation_slot}};
    j["delay"] = {{"pu", s.delay_pu}, {"su", s.delay_su}};
    if (!s.delay_route.empty()) j["delay"]["route"] = s.delay_route;
    if (cfg.source == SourceMode::arbitrary) {
        j["arrival_mean_pu"] = s.arrival_mean_pu;
        j["arrival_mean_su"] = s.arrival_mean_su;
    }
    return j;
}

inline json oracle_to_json(const OracleSolution& sol) {
    json j;
    j["schema_version"] = kSchemaVersion;
    switch (sol.status) {
        case LpStatus::optimal: j["status"] = "optimal"; break;
        case LpStatus::infeasible: j["status"] = "infeasible"; break;
        case LpStatus::unbounded: j["status"] = "unbounded"; break;
    }
    j["objective"] = sol.objective;
    j["rates"] = sol.rates;
    j["shares"] = sol.shares;
    return j;
}

inline json bound_report_to_json(const BoundReport& rep) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["constants"] = {{"B1", rep.bounds.B1},
                      {"B2", rep.bounds.B2},
                      {"B3", rep.bounds.B3},
                      {"B4", rep.bounds.B4},
                      {"delta1", rep.bounds.delta1},
                      {"delta2", rep.bounds.delta2},
                      {"g_M_upper", rep.bounds.g_M_upper},
                      {"B_R_upper", rep.bounds.B_R_upper},
                      {"buffer_condition", rep.bounds.buffer_condition}};
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json jc;
        jc["name"] = c.name;
        jc["lhs"] = c.lhs;
        jc["rhs"] = std::isinf(c.rhs) ? json("inf") : json(c.rhs);
        jc["pass"] = c.pass;
        jc["informational"] = c.informational;
        if (!c.note.empty()) jc["note"] = c.note;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    j["all_hard_pass"] = rep.all_hard_pass();
    return j;
}

/// Trace rows as CSV. First line pins the schema, then the column header.
class CsvTraceWriter : public TraceSink {
public:
    explicit CsvTraceWriter(std::ostream& out) : out_(&out) {
        *out_ << "# schema_version=" << kSchemaVersion << "\n";
        *out_ << "slot,entity_kind,entity_id,value\n";
        out_->precision(17);
    }
    void row(long slot, std::string_view kind, std::string_view id, double value) override {
        *out_ << slot << ',' << kind << ',' << id << ',' << value << '\n';
    }

private:
    std::ostream* out_;
};

}  // namespace crn
