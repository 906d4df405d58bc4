#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "crn/topology.hpp"

namespace crn {

/// Per-slot weighted scheduling problem: one weight per decision unit.
/// Units with non-positive weight are never activated.
struct WeightedProblem {
    UnitSpace space;
    std::vector<double> weights;

    void check() const {
        if (static_cast<int>(weights.size()) != space.num_units())
            throw std::invalid_argument("weight vector does not match decision units");
    }
};

/// Exact max-weight schedule by enumeration over a precomputed feasible set
/// (see enumerate_feasible_units). Ties break toward the lexicographically
/// smallest activation vector, so results are reproducible.
inline std::vector<std::uint8_t> solve_exact(
    const WeightedProblem& prob, const std::vector<std::vector<std::uint8_t>>& feasible) {
    prob.check();
    const int U = prob.space.num_units();
    std::vector<std::uint8_t> best(U, 0);
    double best_weight = 0.0;
    std::vector<std::uint8_t> cand(U, 0);
    for (const auto& s : feasible) {
        double w = 0.0;
        for (int u = 0; u < U; ++u) {
            cand[u] = s[u] && prob.weights[u] > 0.0;
            if (cand[u]) w += prob.weights[u];
        }
        if (w > best_weight ||
            (w == best_weight && std::lexicographical_compare(cand.begin(), cand.end(),
                                                              best.begin(), best.end()))) {
            best_weight = w;
            best = cand;
        }
    }
    return best;
}

inline std::vector<std::uint8_t> solve_exact(const WeightedProblem& prob, int cap = 20) {
    if (prob.space.num_units() > cap)
        throw EnumerationCapExceeded(
            "exact scheduling needs enumeration (" + std::to_string(prob.space.num_units()) +
            " units > cap " + std::to_string(cap) + "); use solve_gmm at this scale");
    return solve_exact(prob, enumerate_feasible_units(prob.space, cap));
}

/// Greedy maximal scheduling: activate units in decreasing weight order
/// (ties toward the lower index), skipping units that are non-positive or
/// incompatible with what has been picked. Maximal among positive units.
inline std::vector<std::uint8_t> solve_gmm(const WeightedProblem& prob) {
    prob.check();
    const int U = prob.space.num_units();
    std::vector<int> order(U);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return prob.weights[a] > prob.weights[b]; });

    detail::FeasibilityTracker tracker(*prob.space.topo);
    std::vector<std::uint8_t> picked(U, 0);
    for (int u : order) {
        if (!(prob.weights[u] > 0.0)) break;
        int v = prob.space.unit_phys[u];
        if (tracker.admits(v)) {
            tracker.activate(v);
            picked[u] = 1;
        }
    }
    return picked;
}

inline double schedule_weight(const WeightedProblem& prob, const std::vector<std::uint8_t>& on) {
    double w = 0.0;
    for (int u = 0; u < prob.space.num_units(); ++u)
        if (on[u]) w += prob.weights[u];
    return w;
}

/// Maximum degree of the effective exclusion structure: conflict edges plus
/// the pairwise exclusions implied by the transceiver constraint and by
/// units sharing a physical link. This is the degree the greedy scheduler's
/// 1/Delta weight guarantee refers to.
inline int exclusion_degree(const UnitSpace& space) {
    const CrnTopology& topo = *space.topo;
    const int U = space.num_units();
    int max_deg = 0;
    for (int a = 0; a < U; ++a) {
        int deg = 0;
        for (int b = 0; b < U; ++b) {
            if (a == b) continue;
            int va = space.unit_phys[a], vb = space.unit_phys[b];
            bool excl = va == vb;
            if (!excl) {
                const auto& adj = topo.conflict_neighbors(va);
                excl = std::binary_search(adj.begin(), adj.end(), vb);
            }
            if (!excl) {
                // Same transceiver: both touch a common node other than the
                // source, or both leave the source.
                auto nodes_of = [&](int v) {
                    std::vector<int> ns;
                    if (v < topo.num_relay()) {
                        ns.push_back(topo.relay_links[v].from);
                        ns.push_back(topo.relay_links[v].to);
                    } else {
                        ns.push_back(topo.su_link_nodes[v - topo.num_relay()]);
                    }
                    return ns;
                };
                for (int na : nodes_of(va)) {
                    for (int nb : nodes_of(vb)) {
                        if (na != nb) continue;
                        bool both_out_of_source =
                            na == topo.pu_source && va < topo.num_relay() &&
                            vb < topo.num_relay() && topo.relay_links[va].from == na &&
                            topo.relay_links[vb].from == na;
                        if (na != topo.pu_source || both_out_of_source) excl = true;
                    }
                }
            }
            if (excl) ++deg;
        }
        max_deg = std::max(max_deg, deg);
    }
    return max_deg;
}

}  // namespace crn
