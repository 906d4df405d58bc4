#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "crn/maxweight.hpp"
#include "crn/queueing.hpp"

namespace crn {

/// Parameters of the elastic algorithm.
struct ElasticParams {
    double V2 = 10.0;           // control parameter
    double mu_M = 1.0;          // max total admitted PU rate per slot
    std::vector<double> rho;    // SU reward per admitted PU packet, per route
    double A_M = 1.0;           // max admitted SU rate (arbitrary-arrival mode)
    double epsilon = 0.05;      // analysis parameter, reporting only
    double W_P = 0.0, W_S = 0.0;

    void check(int num_routes) const {
        if (!(V2 > 0.0)) throw std::invalid_argument("V2 must be positive");
        if (!(mu_M > 0.0) || !(A_M > 0.0)) throw std::invalid_argument("rate bounds must be positive");
        if (static_cast<int>(rho.size()) != num_routes)
            throw std::invalid_argument("need one reward factor per route");
        for (double r : rho)
            if (r < 0.0) throw std::invalid_argument("rewards must be nonnegative");
        if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
        if (W_P < 0.0 || W_S < 0.0) throw std::invalid_argument("buffer caps must be nonnegative");
    }
};

/// Per-route admission scores: reward-weighted SU backlog along the route
/// plus the route's first-hop backlog.
inline std::vector<double> route_scores(const ElasticQueues& state, const ElasticParams& p,
                                        const RouteSet& routes) {
    std::vector<double> score(routes.num_routes(), 0.0);
    for (int k = 0; k < routes.num_routes(); ++k) {
        double qsum = 0.0;
        for (int l : routes.su_on_route[k]) qsum += state.q[l];
        score[k] = p.rho[k] * qsum + state.u[k][0];
    }
    return score;
}

/// PU congestion controller: the lowest-score route admits mu_M if its score
/// is at most V2, every other route admits nothing. Ties go to the smallest
/// route index.
inline std::vector<double> pu_congestion_elastic(const ElasticQueues& state,
                                                 const ElasticParams& p, const RouteSet& routes) {
    std::vector<double> mu(routes.num_routes(), 0.0);
    if (routes.num_routes() == 0) return mu;
    std::vector<double> score = route_scores(state, p, routes);
    int best = 0;
    for (int k = 1; k < routes.num_routes(); ++k)
        if (score[k] < score[best]) best = k;
    if (score[best] <= p.V2) mu[best] = p.mu_M;
    return mu;
}

/// Scheduler weights: hop back-pressure differentials (destination backlog
/// is zero) and SU backlogs; hop units sharing a relay link exclude each
/// other through the unit space.
inline WeightedProblem hop_weights(const ElasticQueues& state, const CrnTopology& topo,
                                   const RouteSet& routes) {
    WeightedProblem prob;
    prob.space = UnitSpace::hops(topo, routes);
    prob.weights.assign(prob.space.num_units(), 0.0);
    for (int k = 0; k < routes.num_routes(); ++k) {
        const int H = routes.hops(k);
        for (int m = 0; m < H; ++m) {
            double next = m + 1 < H ? state.u[k][m + 1] : 0.0;
            prob.weights[routes.hop_unit(k, m)] = state.u[k][m] - next;
        }
    }
    for (int i = 0; i < topo.num_su(); ++i)
        prob.weights[routes.total_hops() + i] = state.q[i];
    return prob;
}

/// Arbitrary-arrival SU congestion controller.
inline double su_congestion_elastic_arb(double q_l, double y_l, double w_l, double e_l,
                                        const ElasticParams& p) {
    return q_l <= y_l ? std::min(w_l + e_l, p.A_M) : 0.0;
}

/// Arbitrary-arrival PU congestion controller: the auxiliary u_p is gated by
/// Y_p against V2; admission goes to the route minimizing the Y-weighted
/// score and is transport-limited.
inline std::pair<double, std::vector<double>> pu_congestion_elastic_arb(
    const ElasticQueues& state, const ElasticParams& p, const RouteSet& routes, double w_p,
    double e_p) {
    double aux = state.y_p <= p.V2 ? p.mu_M : 0.0;
    std::vector<double> mu(routes.num_routes(), 0.0);
    if (routes.num_routes() == 0) return {aux, mu};
    std::vector<double> score(routes.num_routes(), 0.0);
    for (int k = 0; k < routes.num_routes(); ++k) {
        double ysum = 0.0;
        for (int l : routes.su_on_route[k]) ysum += state.y_l[l];
        score[k] = p.rho[k] * ysum + state.u[k][0] - state.y_p;
    }
    int best = 0;
    for (int k = 1; k < routes.num_routes(); ++k)
        if (score[k] < score[best]) best = k;
    if (score[best] <= 0.0) mu[best] = std::min(w_p + e_p, p.mu_M);
    return {aux, mu};
}

}  // namespace crn
