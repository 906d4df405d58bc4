#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

struct Link {
    int from = -1;
    int to = -1;
    friend bool operator==(const Link&, const Link&) = default;
};

/// Cooperative CRN instance: a PU relay subnetwork (source, destination and
/// the relaying secondary nodes), one SU link per secondary node, and an
/// explicit conflict graph over the concatenated link list (relay links
/// first, then SU links).
///
/// Immutable after construction; all schedule-feasibility queries are
/// read-only and safe to share across threads.
class CrnTopology {
public:
    int pu_source = -1;
    int pu_dest = -1;
    std::vector<int> su_nodes;          // secondary node ids, order fixes SU indexing
    std::vector<Link> relay_links;      // directed links of the relay subnetwork
    std::vector<int> su_link_nodes;     // one SU link per entry; order fixes vertex indexing
    std::vector<std::pair<int, int>> conflict_edges;  // undirected, vertex indices

    CrnTopology() = default;
    CrnTopology(int s, int d, std::vector<int> sus, std::vector<Link> relays,
                std::vector<int> su_links, std::vector<std::pair<int, int>> conflicts)
        : pu_source(s), pu_dest(d), su_nodes(std::move(sus)), relay_links(std::move(relays)),
          su_link_nodes(std::move(su_links)), conflict_edges(std::move(conflicts)) {
        rebuild_index();
    }

    int num_su() const { return static_cast<int>(su_nodes.size()); }
    int num_relay() const { return static_cast<int>(relay_links.size()); }
    /// Vertices of the conflict graph: relay links then SU links.
    int num_vertices() const { return num_relay() + static_cast<int>(su_link_nodes.size()); }
    int su_vertex(int su_index) const { return num_relay() + su_index; }
    bool is_su_vertex(int v) const { return v >= num_relay(); }

    int su_index(int node) const {
        auto it = su_index_.find(node);
        return it == su_index_.end() ? -1 : it->second;
    }
    /// Backlog slot for PU queues: 0 = source, 1+i = i-th SU. Destination has no queue.
    int node_slot(int node) const {
        if (node == pu_source) return 0;
        int i = su_index(node);
        return i < 0 ? -1 : 1 + i;
    }
    int num_node_slots() const { return 1 + num_su(); }

    const std::vector<int>& conflict_neighbors(int v) const { return conflict_adj_[v]; }

    /// Relay link index for the directed pair (u, v), or -1.
    int relay_index(int u, int v) const {
        auto it = relay_index_.find({u, v});
        return it == relay_index_.end() ? -1 : it->second;
    }

    const std::vector<int>& relay_in(int node) const { return in_of(node); }
    const std::vector<int>& relay_out(int node) const { return out_of(node); }

    /// Must be called after mutating the public fields directly.
    void rebuild_index() {
        su_index_.clear();
        relay_index_.clear();
        in_.clear();
        out_.clear();
        for (int i = 0; i < num_su(); ++i) su_index_[su_nodes[i]] = i;
        for (int e = 0; e < num_relay(); ++e) {
            relay_index_[{relay_links[e].from, relay_links[e].to}] = e;
            out_[relay_links[e].from].push_back(e);
            in_[relay_links[e].to].push_back(e);
        }
        conflict_adj_.assign(num_vertices(), {});
        for (auto [a, b] : conflict_edges) {
            if (a < 0 || b < 0 || a >= num_vertices() || b >= num_vertices() || a == b) continue;
            conflict_adj_[a].push_back(b);
            conflict_adj_[b].push_back(a);
        }
        for (auto& adj : conflict_adj_) {
            std::sort(adj.begin(), adj.end());
            adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        }
    }

private:
    const std::vector<int>& in_of(int node) const {
        static const std::vector<int> empty;
        auto it = in_.find(node);
        return it == in_.end() ? empty : it->second;
    }
    const std::vector<int>& out_of(int node) const {
        static const std::vector<int> empty;
        auto it = out_.find(node);
        return it == out_.end() ? empty : it->second;
    }

    std::map<int, int> su_index_;
    std::map<std::pair<int, int>, int> relay_index_;
    std::map<int, std::vector<int>> in_;
    std::map<int, std::vector<int>> out_;
    std::vector<std::vector<int>> conflict_adj_;
};

/// Pre-determined loopless PU routes for the elastic model. Paths run from
/// the PU source to the PU destination; hop (k, m) covers the m-th link of
/// route k and maps onto a physical relay link.
struct RouteSet {
    std::vector<std::vector<int>> paths;          // node ids, source ... dest
    std::vector<std::vector<int>> hop_vertex;     // [k][m] -> relay vertex index
    std::vector<std::vector<int>> su_on_route;    // [k] -> SU indices of interior nodes
    std::vector<int> hop_offset;                  // flattened (k, m) indexing

    int num_routes() const { return static_cast<int>(paths.size()); }
    /// Number of hops on route k (H_k + 1 with the paper-style hop count H_k).
    int hops(int k) const { return static_cast<int>(hop_vertex[k].size()); }
    int total_hops() const { return hop_offset.empty() ? 0 : hop_offset.back(); }
    int hop_unit(int k, int m) const { return hop_offset[k] + m; }
};

/// Builds the derived route tables. Call validate_topology first; this
/// throws on paths that do not map onto relay links.
inline RouteSet make_route_set(const CrnTopology& topo, std::vector<std::vector<int>> paths) {
    RouteSet rs;
    rs.paths = std::move(paths);
    rs.hop_offset.assign(rs.paths.size() + 1, 0);
    for (size_t k = 0; k < rs.paths.size(); ++k) {
        const auto& p = rs.paths[k];
        if (p.size() < 2) throw std::invalid_argument("route " + std::to_string(k) + " too short");
        std::vector<int> hv;
        for (size_t m = 0; m + 1 < p.size(); ++m) {
            int e = topo.relay_index(p[m], p[m + 1]);
            if (e < 0)
                throw std::invalid_argument("route " + std::to_string(k) +
                                            " uses a pair that is not a relay link");
            hv.push_back(e);
        }
        std::vector<int> sus;
        for (size_t m = 1; m + 1 < p.size(); ++m) {
            int i = topo.su_index(p[m]);
            if (i >= 0) sus.push_back(i);
        }
        std::sort(sus.begin(), sus.end());
        sus.erase(std::unique(sus.begin(), sus.end()), sus.end());
        rs.hop_vertex.push_back(std::move(hv));
        rs.su_on_route.push_back(std::move(sus));
        rs.hop_offset[k + 1] = rs.hop_offset[k] + rs.hops(static_cast<int>(k));
    }
    return rs;
}

/// A per-slot activation decision. `on` covers the physical vertices (relay
/// links then SU links). In elastic mode `hop_on` covers the flattened
/// (route, hop) units and its projection onto relay links must match `on`.
struct Schedule {
    std::vector<std::uint8_t> on;
    std::vector<std::uint8_t> hop_on;

    static Schedule empty(const CrnTopology& topo) {
        Schedule s;
        s.on.assign(topo.num_vertices(), 0);
        return s;
    }
    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string v) { violations.push_back(std::move(v)); }
};

inline ValidationReport validate_topology(const CrnTopology& topo,
                                          const std::vector<std::vector<int>>* routes = nullptr) {
    ValidationReport rep;
    std::set<int> sus(topo.su_nodes.begin(), topo.su_nodes.end());
    if (sus.size() != topo.su_nodes.size()) rep.add("duplicate secondary node id");
    if (topo.pu_source == topo.pu_dest) rep.add("PU source equals PU destination");
    if (sus.count(topo.pu_source)) rep.add("PU source listed as secondary node");
    if (sus.count(topo.pu_dest)) rep.add("PU destination listed as secondary node");

    auto declared = [&](int n) {
        return n == topo.pu_source || n == topo.pu_dest || sus.count(n) > 0;
    };
    std::set<std::pair<int, int>> seen_links;
    for (int e = 0; e < topo.num_relay(); ++e) {
        const Link& L = topo.relay_links[e];
        std::string tag = "relay link #" + std::to_string(e);
        if (!declared(L.from) || !declared(L.to)) rep.add(tag + ": undeclared endpoint");
        if (L.from == L.to) rep.add(tag + ": self-loop");
        if (L.to == topo.pu_source) rep.add(tag + ": relay link into source");
        if (L.from == topo.pu_dest) rep.add(tag + ": relay link out of destination");
        if (!seen_links.insert({L.from, L.to}).second) rep.add(tag + ": duplicate link");
    }

    std::multiset<int> su_link_set(topo.su_link_nodes.begin(), topo.su_link_nodes.end());
    for (int n : topo.su_nodes)
        if (su_link_set.count(n) != 1)
            rep.add("secondary node " + std::to_string(n) + " must carry exactly one SU link");
    for (int n : topo.su_link_nodes)
        if (!sus.count(n)) rep.add("SU link at non-secondary node " + std::to_string(n));

    int V = topo.num_vertices();
    for (size_t i = 0; i < topo.conflict_edges.size(); ++i) {
        auto [a, b] = topo.conflict_edges[i];
        std::string tag = "conflict edge #" + std::to_string(i);
        if (a < 0 || b < 0 || a >= V || b >= V) rep.add(tag + ": vertex index out of range");
        else if (a == b) rep.add(tag + ": self-loop");
    }

    if (routes) {
        std::set<int> covered;
        for (size_t k = 0; k < routes->size(); ++k) {
            const auto& p = (*routes)[k];
            std::string tag = "route #" + std::to_string(k);
            if (p.size() < 2) {
                rep.add(tag + ": fewer than two nodes");
                continue;
            }
            if (p.front() != topo.pu_source) rep.add(tag + ": does not start at PU source");
            if (p.back() != topo.pu_dest) rep.add(tag + ": does not end at PU destination");
            std::set<int> uniq(p.begin(), p.end());
            if (uniq.size() != p.size()) rep.add(tag + ": route has a loop");
            for (size_t m = 0; m + 1 < p.size(); ++m)
                if (topo.relay_index(p[m], p[m + 1]) < 0)
                    rep.add(tag + ": consecutive pair (" + std::to_string(p[m]) + "," +
                            std::to_string(p[m + 1]) + ") is not a relay link");
            for (size_t m = 1; m + 1 < p.size(); ++m)
                if (sus.count(p[m])) covered.insert(p[m]);
        }
        if (!routes->empty())
            for (int n : topo.su_nodes)
                if (!covered.count(n))
                    rep.add("secondary node " + std::to_string(n) + " appears on no route");
    }
    return rep;
}

/// True iff the activation vector is a feasible link schedule: independent in
/// the conflict graph, at most one transmission or reception per node, and at
/// most one outgoing relay activation at the PU source.
inline bool is_feasible(const CrnTopology& topo, const Schedule& sched) {
    const int V = topo.num_vertices();
    if (static_cast<int>(sched.on.size()) != V)
        throw std::invalid_argument("schedule dimension does not match topology");
    for (auto [a, b] : topo.conflict_edges)
        if (sched.on[a] && sched.on[b]) return false;

    auto node_load = [&](int n) {
        int load = 0;
        for (int e : topo.relay_in(n)) load += sched.on[e];
        for (int e : topo.relay_out(n)) load += sched.on[e];
        int i = topo.su_index(n);
        if (i >= 0) load += sched.on[topo.su_vertex(i)];
        return load;
    };
    for (int n : topo.su_nodes)
        if (node_load(n) > 1) return false;
    if (node_load(topo.pu_dest) > 1) return false;
    // Single radio at the source as well: no two outgoing relay links at once.
    int src_out = 0;
    for (int e : topo.relay_out(topo.pu_source)) src_out += sched.on[e];
    return src_out <= 1;
}

/// Decision units over a topology. Each unit activates one physical vertex;
/// several units may map to the same vertex (route hops sharing a relay
/// link), in which case at most one of them can be active per slot.
struct UnitSpace {
    const CrnTopology* topo = nullptr;
    std::vector<int> unit_phys;  // unit -> physical vertex
    bool hop_space = false;      // units are (route, hop) pairs plus SU links

    int num_units() const { return static_cast<int>(unit_phys.size()); }

    /// One unit per physical vertex (inelastic scheduling).
    static UnitSpace physical(const CrnTopology& topo) {
        UnitSpace s;
        s.topo = &topo;
        s.unit_phys.resize(topo.num_vertices());
        for (int v = 0; v < topo.num_vertices(); ++v) s.unit_phys[v] = v;
        return s;
    }

    /// Route-hop units followed by SU-link units (elastic scheduling).
    static UnitSpace hops(const CrnTopology& topo, const RouteSet& routes) {
        UnitSpace s;
        s.topo = &topo;
        s.hop_space = true;
        for (int k = 0; k < routes.num_routes(); ++k)
            for (int m = 0; m < routes.hops(k); ++m) s.unit_phys.push_back(routes.hop_vertex[k][m]);
        for (int i = 0; i < topo.num_su(); ++i) s.unit_phys.push_back(topo.su_vertex(i));
        return s;
    }

    Schedule project(const std::vector<std::uint8_t>& unit_on) const {
        Schedule sched = Schedule::empty(*topo);
        for (int u = 0; u < num_units(); ++u)
            if (unit_on[u]) sched.on[unit_phys[u]] = 1;
        if (hop_space) sched.hop_on.assign(unit_on.begin(), unit_on.end() - topo->num_su());
        return sched;
    }

    bool feasible(const std::vector<std::uint8_t>& unit_on) const {
        if (static_cast<int>(unit_on.size()) != num_units())
            throw std::invalid_argument("unit activation dimension mismatch");
        std::vector<int> phys_count(topo->num_vertices(), 0);
        for (int u = 0; u < num_units(); ++u)
            if (unit_on[u] && ++phys_count[unit_phys[u]] > 1) return false;
        Schedule sched = Schedule::empty(*topo);
        for (int v = 0; v < topo->num_vertices(); ++v) sched.on[v] = phys_count[v] > 0;
        return is_feasible(*topo, sched);
    }
};

struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

class FeasibilityTracker {
public:
    explicit FeasibilityTracker(const CrnTopology& topo) : topo_(&topo) {
        std::vector<int> node_ids;
        node_ids.push_back(topo.pu_source);
        node_ids.push_back(topo.pu_dest);
        node_ids.insert(node_ids.end(), topo.su_nodes.begin(), topo.su_nodes.end());
        std::map<int, int> slot;
        for (size_t i = 0; i < node_ids.size(); ++i) slot[node_ids[i]] = static_cast<int>(i);
        load_.assign(node_ids.size(), 0);
        phys_used_.assign(topo.num_vertices(), 0);
        conflict_hits_.assign(topo.num_vertices(), 0);
        touched_.resize(topo.num_vertices());
        from_source_.assign(topo.num_vertices(), 0);
        for (int v = 0; v < topo.num_vertices(); ++v) {
            if (v < topo.num_relay()) {
                const Link& L = topo.relay_links[v];
                touched_[v] = {slot.at(L.from), slot.at(L.to)};
                from_source_[v] = L.from == topo.pu_source;
            } else {
                touched_[v] = {slot.at(topo.su_link_nodes[v - topo.num_relay()]), -1};
            }
        }
    }

    /// Can `v` be activated on top of the current partial schedule?
    bool admits(int v) const {
        if (phys_used_[v] || conflict_hits_[v] > 0) return false;
        if (from_source_[v] && source_out_ >= 1) return false;
        for (int n : touched_[v]) {
            if (n <= 0) continue;  // slot 0 is the source: only the outgoing cap applies
            if (load_[n] >= 1) return false;
        }
        return true;
    }

    void activate(int v) {
        phys_used_[v] = 1;
        for (int n : touched_[v])
            if (n >= 0) ++load_[n];
        for (int u : topo_->conflict_neighbors(v)) ++conflict_hits_[u];
        source_out_ += from_source_[v];
    }

    void deactivate(int v) {
        phys_used_[v] = 0;
        for (int n : touched_[v])
            if (n >= 0) --load_[n];
        for (int u : topo_->conflict_neighbors(v)) --conflict_hits_[u];
        source_out_ -= from_source_[v];
    }

    bool phys_used(int v) const { return phys_used_[v]; }

private:
    const CrnTopology* topo_;
    std::vector<int> load_;
    std::vector<std::uint8_t> phys_used_;
    std::vector<int> conflict_hits_;
    std::vector<std::array<int, 2>> touched_;
    std::vector<std::uint8_t> from_source_;
    int source_out_ = 0;
};

}  // namespace detail

/// All feasible unit activation vectors, in lexicographic order (unit 0 most
/// significant, inactive before active). Exact enumeration is desk-scale
/// only; instances above `cap` units are refused.
inline std::vector<std::vector<std::uint8_t>> enumerate_feasible_units(const UnitSpace& space,
                                                                       int cap = 20) {
    const int U = space.num_units();
    if (U > cap)
        throw EnumerationCapExceeded("instance has " + std::to_string(U) +
                                     " decision units, enumeration cap is " + std::to_string(cap));
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> cur(U, 0);
    detail::FeasibilityTracker tracker(*space.topo);

    auto rec = [&](auto&& self, int u) -> void {
        if (u == U) {
            out.push_back(cur);
            return;
        }
        cur[u] = 0;
        self(self, u + 1);
        int v = space.unit_phys[u];
        if (tracker.admits(v)) {
            cur[u] = 1;
            tracker.activate(v);
            self(self, u + 1);
            tracker.deactivate(v);
            cur[u] = 0;
        }
    };
    rec(rec, 0);  // off-before-on recursion emits lexicographic order directly
    return out;
}

/// The feasible schedule set of the conflict graph, lexicographic order.
inline std::vector<Schedule> enumerate_feasible(const CrnTopology& topo, int cap = 20) {
    auto space = UnitSpace::physical(topo);
    std::vector<Schedule> out;
    for (auto& on : enumerate_feasible_units(space, cap)) {
        Schedule s;
        s.on = std::move(on);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace crn
