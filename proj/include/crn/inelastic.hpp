#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "crn/maxweight.hpp"
#include "crn/queueing.hpp"
#include "crn/utility.hpp"

namespace crn {

/// Parameters of the inelastic algorithm.
struct InelasticParams {
    double V1 = 1.0;       // penalty weight
    double q_M = 10.0;     // PU buffer size
    double mu_M = 1.0;     // max admitted PU rate per slot
    double A_M = 1.0;      // max admitted SU rate per slot
    double a_P = 0.1;      // PU minimum utility
    UtilitySpec f;                  // PU utility
    std::vector<UtilitySpec> g;     // SU utilities, one per secondary node
    double epsilon = 0.05;          // analysis parameter, reporting only
    double W_P = 0.0, W_S = 0.0;    // transport buffer caps (arbitrary-arrival mode)

    void check(int num_su) const {
        if (!(V1 > 0.0)) throw std::invalid_argument("V1 must be positive");
        if (!(mu_M > 0.0) || !(A_M > 0.0)) throw std::invalid_argument("rate bounds must be positive");
        if (!(q_M >= mu_M)) throw std::invalid_argument("q_M must be at least mu_M");
        if (!(a_P > 0.0)) throw std::invalid_argument("a_P must be positive");
        if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
        f.check();
        if (static_cast<int>(g.size()) != num_su)
            throw std::invalid_argument("need one SU utility per secondary node");
        for (const auto& gl : g) gl.check();
        if (W_P < 0.0 || W_S < 0.0) throw std::invalid_argument("buffer caps must be nonnegative");
    }

    /// Whether q_M is large enough for the utility-gap guarantee to apply at
    /// this epsilon. Evaluated and reported, never enforced.
    bool meets_buffer_condition(int num_su) const {
        return q_M > (mu_M * mu_M + num_su + 1) / epsilon + mu_M;
    }
};

/// Admitted SU rate: minimizes A*Q_l - V1*g_l(A) over [0, A_M]. Closed forms
/// for the two utility families; ties resolve to the maximal rate.
inline double su_congestion(double q_l, const InelasticParams& p, int l) {
    const UtilitySpec& g = p.g[l];
    if (g.is_linear()) return q_l <= p.V1 * g.theta ? p.A_M : 0.0;
    if (q_l <= 0.0) return p.A_M;
    return std::clamp(p.V1 * g.theta / q_l - 1.0, 0.0, p.A_M);
}

/// Virtual rate R: zero while the scaled transport backlog exceeds the
/// service deficit Z, maximal otherwise.
inline double r_regulator(double u_p, double z, const InelasticParams& p) {
    return u_p * (p.q_M - p.mu_M) / p.q_M - z > 0.0 ? 0.0 : p.mu_M;
}

/// Admitted PU rate: maximal while the source buffer has q_M - mu_M headroom.
inline double pu_congestion(double u_source, const InelasticParams& p) {
    return p.q_M - p.mu_M - u_source <= 0.0 ? 0.0 : p.mu_M;
}

/// Scheduler weights: back-pressure differentials scaled by U_p/q_M on relay
/// links, plain backlogs on SU links.
inline WeightedProblem link_weights(const InelasticQueues& state, const InelasticParams& p,
                                    const CrnTopology& topo) {
    WeightedProblem prob;
    prob.space = UnitSpace::physical(topo);
    prob.weights.assign(topo.num_vertices(), 0.0);
    double scale = state.u_p / p.q_M;
    for (int e = 0; e < topo.num_relay(); ++e) {
        const Link& L = topo.relay_links[e];
        double um = state.u[topo.node_slot(L.from)];
        double un = L.to == topo.pu_dest ? 0.0 : state.u[topo.node_slot(L.to)];
        prob.weights[e] = scale * (um - un);
    }
    for (int i = 0; i < topo.num_su(); ++i) prob.weights[topo.su_vertex(i)] = state.q[i];
    return prob;
}

/// Arbitrary-arrival SU controller: the auxiliary u_l chases utility against
/// Y_l, the actual admission A_l moves whatever the transport buffer holds
/// whenever Q_l does not exceed Y_l.
inline std::pair<double, double> su_congestion_arb(double y_l, double q_l, double w_l, double e_l,
                                                   const InelasticParams& p, int l) {
    const UtilitySpec& g = p.g[l];
    double u_l;
    if (g.is_linear())
        u_l = y_l <= p.V1 * g.theta ? p.A_M : 0.0;
    else
        u_l = y_l <= 0.0 ? p.A_M : std::clamp(p.V1 * g.theta / y_l - 1.0, 0.0, p.A_M);
    double cap = std::min(w_l + e_l, p.A_M);
    double a_l = q_l <= y_l ? cap : 0.0;
    return {u_l, a_l};
}

/// Arbitrary-arrival R(t) regulator and its auxiliary.
inline std::pair<double, double> r_regulator_arb(double y_p, double z, double u_p, double w_p,
                                                 double e_p, const InelasticParams& p) {
    double aux = y_p - z <= 0.0 ? p.mu_M : 0.0;
    double r = (p.q_M - p.mu_M) / p.q_M * u_p - y_p <= 0.0 ? std::min(w_p + e_p, p.mu_M) : 0.0;
    return {aux, r};
}

/// Arbitrary-arrival PU congestion controller: transport-limited admission.
inline double pu_congestion_arb(double u_source, double w_p, double e_p,
                                const InelasticParams& p) {
    if (p.q_M - p.mu_M - u_source <= 0.0) return 0.0;
    return std::min(w_p + e_p, p.mu_M);
}

}  // namespace crn
