#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "crn/lp.hpp"
#include "crn/rng.hpp"
#include "crn/topology.hpp"
#include "crn/utility.hpp"

namespace crn {

/// Capacity-region optimum on one instance: optimal rates, the achieving
/// time-share distribution over feasible schedules, and the LP status.
/// Any point of the program corresponds to a stationary randomized policy
/// drawing schedule s with probability shares[s] each slot.
struct OracleSolution {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> rates;                      // lambda_k or r_l
    std::vector<double> shares;                     // over `schedules`
    std::vector<std::vector<std::uint8_t>> schedules;  // unit activation vectors
    UnitSpace space;

    bool ok() const { return status == LpStatus::optimal; }
};

struct UnsupportedOracle : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Optimal total PU throughput of the elastic model: maximize sum(lambda_k)
/// over time-shares x of feasible hop/link schedules such that every hop of
/// route k is served at rate >= lambda_k + eps and every SU link at rate >=
/// the reward arrivals it must carry at lambda + eps.
inline OracleSolution elastic_optimum(const CrnTopology& topo, const RouteSet& routes,
                                      const std::vector<double>& rho, double eps, int cap = 20) {
    if (static_cast<int>(rho.size()) != routes.num_routes())
        throw std::invalid_argument("need one reward factor per route");
    OracleSolution sol;
    sol.space = UnitSpace::hops(topo, routes);
    sol.schedules = enumerate_feasible_units(sol.space, cap);
    const int S = static_cast<int>(sol.schedules.size());
    const int K = routes.num_routes();

    LinearProgram lp;
    lp.num_vars = S + K;
    lp.objective.assign(lp.num_vars, 0.0);
    for (int k = 0; k < K; ++k) lp.objective[S + k] = 1.0;

    for (int k = 0; k < K; ++k) {
        for (int m = 0; m < routes.hops(k); ++m) {
            std::vector<double> row(lp.num_vars, 0.0);
            int unit = routes.hop_unit(k, m);
            for (int s = 0; s < S; ++s) row[s] = sol.schedules[s][unit];
            row[S + k] = -1.0;
            lp.add_row(std::move(row), LpSense::ge, eps);
        }
    }
    for (int l = 0; l < topo.num_su(); ++l) {
        std::vector<double> row(lp.num_vars, 0.0);
        int unit = routes.total_hops() + l;
        for (int s = 0; s < S; ++s) row[s] = sol.schedules[s][unit];
        double eps_reward = 0.0;
        for (int k = 0; k < K; ++k) {
            bool on_route = std::binary_search(routes.su_on_route[k].begin(),
                                               routes.su_on_route[k].end(), l);
            if (!on_route) continue;
            row[S + k] = -rho[k];
            eps_reward += rho[k] * eps;
        }
        lp.add_row(std::move(row), LpSense::ge, eps_reward);
    }
    {
        std::vector<double> row(lp.num_vars, 0.0);
        for (int s = 0; s < S; ++s) row[s] = 1.0;
        lp.add_row(std::move(row), LpSense::eq, 1.0);
    }

    LpSolution res = lp_solve(lp);
    sol.status = res.status;
    if (!sol.ok()) return sol;
    sol.objective = res.objective;
    sol.rates.assign(res.x.begin() + S, res.x.begin() + S + K);
    sol.shares.assign(res.x.begin(), res.x.begin() + S);
    return sol;
}

/// Optimal SU utility of the inelastic model at minimum PU utility a_P:
/// maximize sum_l g_l(r_l) over time-shares of feasible link schedules and a
/// PU flow of value f^{-1}(a_P) + eps routed arbitrarily over the relay
/// links, each link's flow capped by its service share and each SU link
/// serving at least r_l + eps. Linear SU utilities only; concave families
/// would make this a convex program rather than an LP.
inline OracleSolution inelastic_optimum(const CrnTopology& topo, double a_P, const UtilitySpec& f,
                                        const std::vector<UtilitySpec>& g, double eps,
                                        int cap = 20) {
    if (static_cast<int>(g.size()) != topo.num_su())
        throw std::invalid_argument("need one SU utility per secondary node");
    for (const auto& gl : g)
        if (!gl.is_linear())
            throw UnsupportedOracle("inelastic oracle supports linear SU utilities only");

    OracleSolution sol;
    sol.space = UnitSpace::physical(topo);
    sol.schedules = enumerate_feasible_units(sol.space, cap);
    const int S = static_cast<int>(sol.schedules.size());
    const int E = topo.num_relay();
    const int N = topo.num_su();
    const double inject = f.inverse(a_P) + eps;

    // Variables: shares x_s, link flows f_e, SU rates r_l.
    LinearProgram lp;
    lp.num_vars = S + E + N;
    lp.objective.assign(lp.num_vars, 0.0);
    for (int l = 0; l < N; ++l) lp.objective[S + E + l] = g[l].theta;

    auto flow_var = [&](int e) { return S + e; };
    {
        // Source pushes the required PU flow.
        std::vector<double> row(lp.num_vars, 0.0);
        for (int e : topo.relay_out(topo.pu_source)) row[flow_var(e)] = 1.0;
        lp.add_row(std::move(row), LpSense::eq, inject);
    }
    for (int l = 0; l < N; ++l) {
        // Conservation at every relay node.
        std::vector<double> row(lp.num_vars, 0.0);
        int node = topo.su_nodes[l];
        for (int e : topo.relay_in(node)) row[flow_var(e)] += 1.0;
        for (int e : topo.relay_out(node)) row[flow_var(e)] -= 1.0;
        lp.add_row(std::move(row), LpSense::eq, 0.0);
    }
    for (int e = 0; e < E; ++e) {
        // Flow at most the link's scheduled share.
        std::vector<double> row(lp.num_vars, 0.0);
        row[flow_var(e)] = 1.0;
        for (int s = 0; s < S; ++s) row[s] -= sol.schedules[s][e];
        lp.add_row(std::move(row), LpSense::le, 0.0);
    }
    for (int l = 0; l < N; ++l) {
        std::vector<double> row(lp.num_vars, 0.0);
        int v = topo.su_vertex(l);
        for (int s = 0; s < S; ++s) row[s] = sol.schedules[s][v];
        row[S + E + l] = -1.0;
        lp.add_row(std::move(row), LpSense::ge, eps);
    }
    {
        std::vector<double> row(lp.num_vars, 0.0);
        for (int s = 0; s < S; ++s) row[s] = 1.0;
        lp.add_row(std::move(row), LpSense::eq, 1.0);
    }

    LpSolution res = lp_solve(lp);
    sol.status = res.status;
    if (!sol.ok()) return sol;
    sol.objective = res.objective;
    sol.rates.assign(res.x.begin() + S + E, res.x.end());
    sol.shares.assign(res.x.begin(), res.x.begin() + S);
    return sol;
}

/// I.i.d. schedule draws from the oracle's time-share distribution; the
/// randomized policy behind the capacity region, made executable.
class StationaryPolicy {
public:
    StationaryPolicy(const OracleSolution& sol, std::uint64_t seed) : sol_(&sol), rng_(seed) {
        if (!sol.ok()) throw std::invalid_argument("cannot sample a non-optimal oracle solution");
        double acc = 0.0;
        for (double s : sol.shares) {
            acc += s > 0.0 ? s : 0.0;  // clip solver dust
            cum_.push_back(acc);
        }
        if (acc <= 0.0) throw std::invalid_argument("degenerate share vector");
    }

    int next_index() { return rng_.pick(cum_.data(), static_cast<int>(cum_.size())); }

    const std::vector<std::uint8_t>& next() { return sol_->schedules[next_index()]; }

private:
    const OracleSolution* sol_;
    Rng rng_;
    std::vector<double> cum_;
};

}  // namespace crn
