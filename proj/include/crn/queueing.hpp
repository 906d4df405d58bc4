#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "crn/topology.hpp"

namespace crn {

inline double pos(double x) { return x > 0.0 ? x : 0.0; }

/// Queue state of the inelastic model: per-node PU backlogs (source first,
/// then SUs; the destination holds no queue), per-SU backlogs, the virtual
/// transport queue and the virtual service queue, plus the transport-layer
/// and auxiliary queues used when sources are not backlogged.
struct InelasticQueues {
    std::vector<double> u;   // PU backlog per node slot
    std::vector<double> q;   // SU backlog per secondary node
    double u_p = 0.0;
    double z = 0.0;
    double w_p = 0.0;        // transport backlogs (arbitrary-arrival mode)
    double y_p = 0.0;
    std::vector<double> w_l;
    std::vector<double> y_l;

    static InelasticQueues zeros(const CrnTopology& topo) {
        InelasticQueues s;
        s.u.assign(topo.num_node_slots(), 0.0);
        s.q.assign(topo.num_su(), 0.0);
        s.w_l.assign(topo.num_su(), 0.0);
        s.y_l.assign(topo.num_su(), 0.0);
        return s;
    }
};

/// Queue state of the elastic model: per-route per-hop PU backlogs
/// (m = 0..H_k; the destination entry is identically zero and not stored)
/// and per-SU backlogs, plus transport/auxiliary queues as above.
struct ElasticQueues {
    std::vector<std::vector<double>> u;  // [route][hop position]
    std::vector<double> q;
    double w_p = 0.0;
    double y_p = 0.0;
    std::vector<double> w_l;
    std::vector<double> y_l;
    std::vector<double> reward_residual;  // fractional rewards held back by the floor counter

    static ElasticQueues zeros(const CrnTopology& topo, const RouteSet& routes) {
        ElasticQueues s;
        s.u.resize(routes.num_routes());
        for (int k = 0; k < routes.num_routes(); ++k) s.u[k].assign(routes.hops(k), 0.0);
        s.q.assign(topo.num_su(), 0.0);
        s.w_l.assign(topo.num_su(), 0.0);
        s.y_l.assign(topo.num_su(), 0.0);
        s.reward_residual.assign(topo.num_su(), 0.0);
        return s;
    }
};

/// Everything one slot of control decided: the schedule, admissions, the
/// virtual rate and the auxiliary/exogenous quantities of the
/// arbitrary-arrival variants. Unused fields stay zero.
struct SlotDecision {
    Schedule schedule;
    double pu_admission = 0.0;              // admitted PU rate (inelastic)
    std::vector<double> route_admission;    // admitted PU rate per route (elastic)
    std::vector<double> su_admission;       // A_l
    double virtual_rate = 0.0;              // R
    double aux_pu = 0.0;                    // u_p
    std::vector<double> aux_su;             // u_l
    double exo_pu = 0.0;                    // E_p
    std::vector<double> exo_su;             // E_l
};

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct InelasticStep {
    InelasticQueues queues;
    double pu_delivered = 0.0;
    double su_served = 0.0;
};

/// One slot of inelastic queue dynamics. Departures are computed from
/// start-of-slot backlogs (a transfer ships min(backlog, 1) on each active
/// link) and admissions are appended afterwards. `z_arrival` is the constant
/// arrival f^{-1}(a_P) of the virtual service queue; with `arbitrary` set
/// that queue is served by the auxiliary u_p instead of R.
inline InelasticStep step_inelastic(const InelasticQueues& state, const SlotDecision& dec,
                                    const CrnTopology& topo, double z_arrival,
                                    bool arbitrary = false) {
    if (!is_feasible(topo, dec.schedule)) throw ContractViolation("infeasible schedule");
    if (static_cast<int>(dec.su_admission.size()) != topo.num_su())
        throw ContractViolation("SU admission vector dimension mismatch");

    InelasticStep out;
    out.queues = state;
    InelasticQueues& next = out.queues;

    std::vector<double> gain(state.u.size(), 0.0);
    std::vector<double> drop(state.u.size(), 0.0);
    for (int e = 0; e < topo.num_relay(); ++e) {
        if (!dec.schedule.on[e]) continue;
        const Link& L = topo.relay_links[e];
        int src = topo.node_slot(L.from);
        double amt = std::min(state.u[src], 1.0);
        drop[src] += amt;
        if (L.to == topo.pu_dest)
            out.pu_delivered += amt;
        else
            gain[topo.node_slot(L.to)] += amt;
    }
    for (size_t i = 0; i < state.u.size(); ++i) next.u[i] = state.u[i] - drop[i] + gain[i];
    next.u[0] += dec.pu_admission;

    for (int i = 0; i < topo.num_su(); ++i) {
        double served = dec.schedule.on[topo.su_vertex(i)] ? std::min(state.q[i], 1.0) : 0.0;
        out.su_served += served;
        next.q[i] = state.q[i] - served + dec.su_admission[i];
    }

    next.u_p = pos(state.u_p - dec.pu_admission) + dec.virtual_rate;
    next.z = pos(state.z - (arbitrary ? dec.aux_pu : dec.virtual_rate)) + z_arrival;
    return out;
}

/// Reward packets generated for SU `l` by this slot's route admissions.
inline std::vector<double> reward_arrivals(const std::vector<double>& route_admission,
                                           const RouteSet& routes, const std::vector<double>& rho,
                                           int num_su) {
    std::vector<double> arr(num_su, 0.0);
    for (int k = 0; k < routes.num_routes(); ++k)
        for (int l : routes.su_on_route[k]) arr[l] += rho[k] * route_admission[k];
    return arr;
}

struct ElasticStep {
    ElasticQueues queues;
    double pu_delivered = 0.0;
    double su_served = 0.0;
    std::vector<double> q_arrival;  // what actually entered each SU queue
};

/// One slot of elastic queue dynamics. Hops ship min(backlog, 1); route
/// admissions enter hop 0 and generate rewards for the SUs on the route. In
/// backlogged mode the rewards are the SU queue arrivals (optionally through
/// the integer floor counter); in arbitrary-arrival mode the admitted A_l
/// enter the SU queues and the rewards are credited to the Y queues instead.
inline ElasticStep step_elastic(const ElasticQueues& state, const SlotDecision& dec,
                                const CrnTopology& topo, const RouteSet& routes,
                                const std::vector<double>& rho, bool arbitrary = false,
                                bool floor_rewards = false,
                                const UnitSpace* hop_space = nullptr) {
    if (static_cast<int>(dec.schedule.hop_on.size()) != routes.total_hops())
        throw ContractViolation("hop activation dimension mismatch");
    UnitSpace local;
    if (!hop_space) {
        local = UnitSpace::hops(topo, routes);
        hop_space = &local;
    }
    std::vector<std::uint8_t> unit_on(dec.schedule.hop_on);
    for (int i = 0; i < topo.num_su(); ++i) unit_on.push_back(dec.schedule.on[topo.su_vertex(i)]);
    if (!hop_space->feasible(unit_on)) throw ContractViolation("infeasible hop/link schedule");
    if (static_cast<int>(dec.route_admission.size()) != routes.num_routes())
        throw ContractViolation("route admission vector dimension mismatch");

    ElasticStep out;
    out.queues = state;
    ElasticQueues& next = out.queues;

    for (int k = 0; k < routes.num_routes(); ++k) {
        const int H = routes.hops(k);
        std::vector<double> dep(H, 0.0);
        for (int m = 0; m < H; ++m)
            if (dec.schedule.hop_on[routes.hop_unit(k, m)])
                dep[m] = std::min(state.u[k][m], 1.0);
        for (int m = 0; m < H; ++m) {
            next.u[k][m] = state.u[k][m] - dep[m] + (m > 0 ? dep[m - 1] : 0.0);
        }
        next.u[k][0] += dec.route_admission[k];
        out.pu_delivered += dep[H - 1];
    }

    std::vector<double> rewards = reward_arrivals(dec.route_admission, routes, rho, topo.num_su());
    out.q_arrival.assign(topo.num_su(), 0.0);
    for (int i = 0; i < topo.num_su(); ++i) {
        double served = dec.schedule.on[topo.su_vertex(i)] ? std::min(state.q[i], 1.0) : 0.0;
        out.su_served += served;
        double arrival;
        if (arbitrary) {
            arrival = dec.su_admission.empty() ? 0.0 : dec.su_admission[i];
        } else if (floor_rewards) {
            next.reward_residual[i] += rewards[i];
            arrival = std::floor(next.reward_residual[i]);
            next.reward_residual[i] -= arrival;
        } else {
            arrival = rewards[i];
        }
        out.q_arrival[i] = arrival;
        next.q[i] = state.q[i] - served + arrival;
    }
    return out;
}

struct TransportCaps {
    double w_pu = 0.0;  // W_P
    double w_su = 0.0;  // W_S
};

/// Transport-layer and Y-queue updates of the arbitrary-arrival inelastic
/// model, applied against start-of-slot values.
inline void step_transport(InelasticQueues& next, const InelasticQueues& state,
                           const SlotDecision& dec, const TransportCaps& caps) {
    next.w_p = std::min(pos(state.w_p + dec.exo_pu - dec.pu_admission), caps.w_pu);
    next.y_p = pos(state.y_p - dec.virtual_rate) + dec.aux_pu;
    for (size_t i = 0; i < state.w_l.size(); ++i) {
        next.w_l[i] = std::min(pos(state.w_l[i] + dec.exo_su[i] - dec.su_admission[i]), caps.w_su);
        next.y_l[i] = pos(state.y_l[i] - dec.su_admission[i]) + dec.aux_su[i];
    }
}

/// Elastic counterpart: the PU side is served by the total route admission
/// and the SU Y queues are credited with the slot's rewards.
inline void step_transport(ElasticQueues& next, const ElasticQueues& state,
                           const SlotDecision& dec, const TransportCaps& caps,
                           const RouteSet& routes, const std::vector<double>& rho) {
    double mu_total = 0.0;
    for (double m : dec.route_admission) mu_total += m;
    next.w_p = std::min(pos(state.w_p + dec.exo_pu - mu_total), caps.w_pu);
    next.y_p = pos(state.y_p - mu_total) + dec.aux_pu;
    std::vector<double> rewards =
        reward_arrivals(dec.route_admission, routes, rho, static_cast<int>(state.w_l.size()));
    for (size_t i = 0; i < state.w_l.size(); ++i) {
        next.w_l[i] = std::min(pos(state.w_l[i] + dec.exo_su[i] - dec.su_admission[i]), caps.w_su);
        next.y_l[i] = pos(state.y_l[i] - dec.su_admission[i]) + rewards[i];
    }
}

}  // namespace crn
