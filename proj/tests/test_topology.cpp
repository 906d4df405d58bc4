#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "crn/topology.hpp"
#include "fixtures.hpp"

using namespace crn;
using namespace crntest;

TEST(Validate, OneRelayIsValid) {
    CrnTopology topo = one_relay();
    std::vector<std::vector<int>> routes = {{0, 1, 2}};
    EXPECT_TRUE(validate_topology(topo, &routes).ok());
}

TEST(Validate, RelayLinkIntoSourceFlagged) {
    CrnTopology topo = one_relay();
    topo.relay_links.push_back({1, 0});
    topo.rebuild_index();
    auto rep = validate_topology(topo);
    ASSERT_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations) found |= v.find("into source") != std::string::npos;
    EXPECT_TRUE(found);
}

TEST(Validate, RelayLinkOutOfDestinationFlagged) {
    CrnTopology topo = one_relay();
    topo.relay_links.push_back({2, 1});
    topo.rebuild_index();
    EXPECT_FALSE(validate_topology(topo).ok());
}

TEST(Validate, LoopedRouteFlagged) {
    CrnTopology topo = one_relay();
    topo.relay_links.push_back({1, 1});  // give the loop a link to ride on
    topo.rebuild_index();
    std::vector<std::vector<int>> routes = {{0, 1, 1, 2}};
    auto rep = validate_topology(topo, &routes);
    ASSERT_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations) found |= v.find("loop") != std::string::npos;
    EXPECT_TRUE(found);
}

TEST(Validate, UncoveredSuFlagged) {
    CrnTopology topo = line3();
    std::vector<std::vector<int>> routes = {{0, 1, 2, 3, 4}};
    EXPECT_TRUE(validate_topology(topo, &routes).ok());
    std::vector<std::vector<int>> partial = {{0, 1, 2, 3, 4}};
    CrnTopology wider = line3();
    wider.su_nodes.push_back(7);  // declared but unreachable by any route
    wider.su_link_nodes.push_back(7);
    wider.rebuild_index();
    EXPECT_FALSE(validate_topology(wider, &partial).ok());
}

TEST(Validate, SuLinkMultiplicity) {
    CrnTopology topo = one_relay();
    topo.su_link_nodes.push_back(1);
    topo.rebuild_index();
    EXPECT_FALSE(validate_topology(topo).ok());
}

TEST(Feasible, AllZeroSchedule) {
    CrnTopology topo = one_relay();
    EXPECT_TRUE(is_feasible(topo, Schedule::empty(topo)));
}

TEST(Feasible, ConflictEdgeBlocksPair) {
    CrnTopology topo = one_relay();
    Schedule s = Schedule::empty(topo);
    s.on[0] = s.on[1] = 1;
    EXPECT_FALSE(is_feasible(topo, s));
}

TEST(Feasible, TransceiverBlocksRelayPlusSuLink) {
    // Relay into node 1 and the SU link at node 1 active, no conflict edge.
    CrnTopology topo(0, 2, {1}, {{0, 1}, {1, 2}}, {1}, {});
    Schedule s = Schedule::empty(topo);
    s.on[0] = 1;                   // relay (0,1)
    s.on[topo.su_vertex(0)] = 1;   // SU link at 1
    EXPECT_FALSE(is_feasible(topo, s));
}

TEST(Feasible, SourceSingleRadio) {
    CrnTopology topo = two_route();
    Schedule s = Schedule::empty(topo);
    s.on[0] = 1;  // (0,1)
    s.on[2] = 1;  // (0,2)
    EXPECT_FALSE(is_feasible(topo, s));
}

TEST(Feasible, DimensionMismatchThrows) {
    CrnTopology topo = one_relay();
    Schedule s;
    s.on.assign(topo.num_vertices() + 1, 0);
    EXPECT_THROW(is_feasible(topo, s), std::invalid_argument);
}

TEST(Enumerate, SingleFreeLink) {
    CrnTopology topo(0, 2, {1}, {{0, 1}}, {1}, {{0, 1}});
    auto all = enumerate_feasible(topo);
    // vertices: relay (0,1) and the SU link, mutually conflicting
    ASSERT_EQ(all.size(), 3u);  // empty, each singleton
    EXPECT_TRUE(std::all_of(all.begin(), all.end(),
                            [&](const Schedule& s) { return is_feasible(topo, s); }));
}

TEST(Enumerate, LoneRelayLinkWithoutConflicts) {
    // No secondary nodes at all: the single link is either idle or active.
    CrnTopology topo(0, 1, {}, {{0, 1}}, {}, {});
    auto all = enumerate_feasible(topo);
    ASSERT_EQ(all.size(), 2u);
    EXPECT_EQ(all[0].on, (std::vector<std::uint8_t>{0}));
    EXPECT_EQ(all[1].on, (std::vector<std::uint8_t>{1}));
}

TEST(Enumerate, ThreeMutualConflicts) {
    CrnTopology topo = one_relay();
    auto all = enumerate_feasible(topo);
    ASSERT_EQ(all.size(), 4u);  // empty plus three singletons
    EXPECT_EQ(all.front(), Schedule::empty(topo));
}

TEST(Enumerate, MatchesBruteForceOnRandomInstances) {
    Rng rng(12345);
    for (int trial = 0; trial < 25; ++trial) {
        auto inst = random_instance(rng);
        auto fast = enumerate_feasible(inst.topo);
        auto slow = brute_force_feasible(inst.topo);
        std::sort(fast.begin(), fast.end(), [](const Schedule& a, const Schedule& b) {
            return a.on < b.on;
        });
        std::sort(slow.begin(), slow.end(), [](const Schedule& a, const Schedule& b) {
            return a.on < b.on;
        });
        ASSERT_EQ(fast.size(), slow.size());
        for (size_t i = 0; i < fast.size(); ++i) ASSERT_EQ(fast[i].on, slow[i].on);
    }
}

TEST(Enumerate, LexicographicOrder) {
    CrnTopology topo = line3();
    auto all = enumerate_feasible(topo);
    for (size_t i = 1; i < all.size(); ++i)
        EXPECT_TRUE(std::lexicographical_compare(all[i - 1].on.begin(), all[i - 1].on.end(),
                                                 all[i].on.begin(), all[i].on.end()));
}

TEST(Enumerate, CapRefused) {
    // 21 SUs, no conflicts: 21 units exceed the default cap.
    std::vector<int> sus;
    std::vector<Link> relays;
    for (int i = 0; i < 21; ++i) sus.push_back(10 + i);
    relays.push_back({0, 10});
    relays.push_back({10, 1});
    CrnTopology topo(0, 1, sus, relays, sus, {});
    EXPECT_THROW(enumerate_feasible(topo), EnumerationCapExceeded);
}

TEST(Enumerate, MonotoneDownFeasibility) {
    Rng rng(999);
    auto inst = random_instance(rng);
    auto all = enumerate_feasible(inst.topo);
    for (const auto& s : all) {
        Schedule sub = s;
        for (int v = 0; v < inst.topo.num_vertices(); ++v) {
            if (!sub.on[v]) continue;
            sub.on[v] = 0;
            EXPECT_TRUE(is_feasible(inst.topo, sub));
            sub.on[v] = 1;
        }
    }
}

TEST(Enumerate, InvariantUnderNodeRelabeling) {
    CrnTopology a = line3();
    // Shift every node id by 10; links and SU list follow, conflict edges
    // are index-based and unchanged.
    auto shift = [](int n) { return n + 10; };
    std::vector<int> sus;
    for (int n : a.su_nodes) sus.push_back(shift(n));
    std::vector<Link> relays;
    for (const auto& L : a.relay_links) relays.push_back({shift(L.from), shift(L.to)});
    std::vector<int> su_links;
    for (int n : a.su_link_nodes) su_links.push_back(shift(n));
    CrnTopology b(shift(a.pu_source), shift(a.pu_dest), sus, relays, su_links, a.conflict_edges);

    auto ea = enumerate_feasible(a);
    auto eb = enumerate_feasible(b);
    ASSERT_EQ(ea.size(), eb.size());
    for (size_t i = 0; i < ea.size(); ++i) EXPECT_EQ(ea[i].on, eb[i].on);
}

TEST(Routes, HopMappingAndSuCoverage) {
    CrnTopology topo = mesh5();
    RouteSet rs = mesh5_routes(topo);
    ASSERT_EQ(rs.num_routes(), 3);
    EXPECT_EQ(rs.hops(0), 3);
    EXPECT_EQ(rs.hops(2), 4);
    EXPECT_EQ(rs.total_hops(), 10);
    EXPECT_EQ(rs.hop_vertex[0][0], topo.relay_index(0, 1));
    EXPECT_EQ(rs.su_on_route[2], (std::vector<int>{0, 2, 4}));  // SUs 1, 3, 5
}

TEST(Routes, BadHopThrows) {
    CrnTopology topo = one_relay();
    EXPECT_THROW(crn::make_route_set(topo, {{0, 2}}), std::invalid_argument);
}
