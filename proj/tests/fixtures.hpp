#pragma once

// Shared fixture topologies and the independent brute-force oracles the
// tests check the implementation against. Oracles here must stay naive:
// they filter or enumerate directly from definitions and never call into
// the code paths they are used to verify.

#include <cmath>
#include <vector>

#include "crn/maxweight.hpp"
#include "crn/rng.hpp"
#include "crn/topology.hpp"

namespace crntest {

using crn::CrnTopology;
using crn::Link;
using crn::RouteSet;
using crn::Schedule;

/// Source, one relaying SU, destination; all three links mutually conflict.
inline CrnTopology one_relay() {
    return CrnTopology(0, 2, {1}, {{0, 1}, {1, 2}}, {1}, {{0, 1}, {0, 2}, {1, 2}});
}

inline RouteSet one_relay_route(const CrnTopology& topo) {
    return crn::make_route_set(topo, {{0, 1, 2}});
}

/// Three relaying SUs in a line with two-hop interference.
inline CrnTopology line3() {
    return CrnTopology(0, 4, {1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {1, 2, 3},
                       {{0, 2}, {1, 3}, {4, 2}, {5, 0}, {5, 3}, {6, 1}, {4, 5}, {5, 6}});
}

inline RouteSet line3_route(const CrnTopology& topo) {
    return crn::make_route_set(topo, {{0, 1, 2, 3, 4}});
}

/// Five SUs, three routes, a mildly meshed relay graph.
inline CrnTopology mesh5() {
    return CrnTopology(
        0, 6, {1, 2, 3, 4, 5},
        {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}, {3, 6}, {5, 6}, {4, 6}},
        {1, 2, 3, 4, 5},
        {{0, 3}, {1, 2}, {2, 8}, {4, 8}, {9, 1}, {10, 0}, {11, 3}, {12, 4}, {13, 6}, {9, 10}});
}

inline RouteSet mesh5_routes(const CrnTopology& topo) {
    return crn::make_route_set(topo, {{0, 1, 3, 6}, {0, 2, 4, 6}, {0, 1, 3, 5, 6}});
}

/// Two disjoint relay paths sharing only source and destination.
inline CrnTopology two_route() {
    return CrnTopology(0, 3, {1, 2}, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, {1, 2}, {});
}

inline RouteSet two_route_routes(const CrnTopology& topo) {
    return crn::make_route_set(topo, {{0, 1, 3}, {0, 2, 3}});
}

/// Brute-force feasible set: filter every subset of the vertex set through
/// is_feasible. Quadratic in 2^V; the reference the fast enumerator must match.
inline std::vector<Schedule> brute_force_feasible(const CrnTopology& topo) {
    const int V = topo.num_vertices();
    std::vector<Schedule> out;
    for (std::uint32_t mask = 0; mask < (1u << V); ++mask) {
        Schedule s = Schedule::empty(topo);
        for (int v = 0; v < V; ++v) s.on[v] = (mask >> v) & 1u;
        if (crn::is_feasible(topo, s)) out.push_back(std::move(s));
    }
    return out;
}

/// Brute-force max-weight over every feasible unit subset (positive-weight
/// units only, since feasibility is monotone down).
inline double brute_force_max_weight(const crn::WeightedProblem& prob) {
    const int U = prob.space.num_units();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << U); ++mask) {
        std::vector<std::uint8_t> on(U, 0);
        for (int u = 0; u < U; ++u) on[u] = (mask >> u) & 1u;
        if (!prob.space.feasible(on)) continue;
        double w = 0.0;
        for (int u = 0; u < U; ++u)
            if (on[u] && prob.weights[u] > 0.0) w += prob.weights[u];
        best = std::max(best, w);
    }
    return best;
}

/// Grid minimizer for the 1-D controller objectives, step 1e-4.
template <typename F>
double grid_minimize(F&& f, double lo, double hi, double step = 1e-4) {
    double best_x = lo, best_f = f(lo);
    for (double x = lo; x <= hi + 1e-12; x += step) {
        double fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    return best_x;
}

/// Random small instance: a handful of SUs, random extra relay links beyond
/// a guaranteed source->SU->dest path, random conflict edges. Weights for
/// scheduling tests are drawn on a dyadic grid so sums compare exactly.
struct RandomInstance {
    CrnTopology topo;
};

inline RandomInstance random_instance(crn::Rng& rng, int max_vertices = 12) {
    for (;;) {
        int n_su = 1 + static_cast<int>(rng.next_u64() % 4);  // 1..4 SUs
        int src = 0, dst = 1;
        std::vector<int> sus;
        for (int i = 0; i < n_su; ++i) sus.push_back(2 + i);

        std::vector<Link> relays;
        relays.push_back({src, sus[0]});
        relays.push_back({sus[n_su - 1], dst});
        for (int i = 0; i + 1 < n_su; ++i) relays.push_back({sus[i], sus[i + 1]});
        int extra = static_cast<int>(rng.next_u64() % 3);
        for (int e = 0; e < extra; ++e) {
            int a = sus[rng.next_u64() % n_su];
            int b = sus[rng.next_u64() % n_su];
            if (a == b) continue;
            bool dup = false;
            for (const auto& L : relays) dup |= (L.from == a && L.to == b);
            if (!dup) relays.push_back({a, b});
        }

        int V = static_cast<int>(relays.size()) + n_su;
        if (V > max_vertices) continue;

        std::vector<std::pair<int, int>> conflicts;
        for (int a = 0; a < V; ++a)
            for (int b = a + 1; b < V; ++b)
                if (rng.uniform01() < 0.3) conflicts.push_back({a, b});

        RandomInstance inst;
        inst.topo = CrnTopology(src, dst, sus, relays, sus, conflicts);
        return inst;
    }
}

inline double dyadic_weight(crn::Rng& rng) {
    // Multiples of 1/4 in [-2.5, 7.5]: exactly representable, sums exact.
    return static_cast<double>(static_cast<int>(rng.next_u64() % 41) - 10) * 0.25;
}

}  // namespace crntest
