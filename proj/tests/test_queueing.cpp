#include <gtest/gtest.h>

#include "crn/queueing.hpp"
#include "fixtures.hpp"

using namespace crn;
using namespace crntest;

namespace {

SlotDecision empty_decision(const CrnTopology& topo) {
    SlotDecision dec;
    dec.schedule = Schedule::empty(topo);
    dec.su_admission.assign(topo.num_su(), 0.0);
    dec.aux_su.assign(topo.num_su(), 0.0);
    dec.exo_su.assign(topo.num_su(), 0.0);
    return dec;
}

SlotDecision empty_decision(const CrnTopology& topo, const RouteSet& routes) {
    SlotDecision dec = empty_decision(topo);
    dec.schedule.hop_on.assign(routes.total_hops(), 0);
    dec.route_admission.assign(routes.num_routes(), 0.0);
    return dec;
}

}  // namespace

TEST(StepInelastic, EmptyQueueSendsNothing) {
    CrnTopology topo = one_relay();
    InelasticQueues s = InelasticQueues::zeros(topo);
    SlotDecision dec = empty_decision(topo);
    dec.schedule.on[0] = 1;  // (0,1) active, source empty
    auto res = step_inelastic(s, dec, topo, 0.0);
    EXPECT_DOUBLE_EQ(res.queues.u[0], 0.0);
    EXPECT_DOUBLE_EQ(res.queues.u[1], 0.0);
}

TEST(StepInelastic, VirtualTransportQueueUpdate) {
    CrnTopology topo = one_relay();
    InelasticQueues s = InelasticQueues::zeros(topo);
    s.u_p = 2.0;
    SlotDecision dec = empty_decision(topo);
    dec.pu_admission = 1.0;
    dec.virtual_rate = 0.5;
    auto res = step_inelastic(s, dec, topo, 0.0);
    EXPECT_DOUBLE_EQ(res.queues.u_p, 1.5);
}

TEST(StepInelastic, SuQueueServiceThenAdmission) {
    CrnTopology topo = one_relay();
    InelasticQueues s = InelasticQueues::zeros(topo);
    s.q[0] = 3.0;
    SlotDecision dec = empty_decision(topo);
    dec.schedule.on[topo.su_vertex(0)] = 1;
    dec.su_admission[0] = 2.0;
    auto res = step_inelastic(s, dec, topo, 0.0);
    EXPECT_DOUBLE_EQ(res.queues.q[0], 4.0);
}

TEST(StepInelastic, TransferConservesPackets) {
    CrnTopology topo = line3();
    InelasticQueues s = InelasticQueues::zeros(topo);
    s.u[1] = 2.5;  // node 1
    SlotDecision dec = empty_decision(topo);
    dec.schedule.on[topo.relay_index(1, 2)] = 1;
    auto res = step_inelastic(s, dec, topo, 0.0);
    EXPECT_DOUBLE_EQ(res.queues.u[1], 1.5);
    EXPECT_DOUBLE_EQ(res.queues.u[2], 1.0);
    double before = 2.5, after = res.queues.u[1] + res.queues.u[2];
    EXPECT_DOUBLE_EQ(before, after);
}

TEST(StepInelastic, DeliveryAtDestinationLeavesNetwork) {
    CrnTopology topo = one_relay();
    InelasticQueues s = InelasticQueues::zeros(topo);
    s.u[1] = 0.7;
    SlotDecision dec = empty_decision(topo);
    dec.schedule.on[1] = 1;  // (1,2) into destination
    auto res = step_inelastic(s, dec, topo, 0.0);
    EXPECT_DOUBLE_EQ(res.queues.u[1], 0.0);
    EXPECT_DOUBLE_EQ(res.pu_delivered, 0.7);
}

TEST(StepInelastic, ZServedByAuxInArbitraryMode) {
    CrnTopology topo = one_relay();
    InelasticQueues s = InelasticQueues::zeros(topo);
    s.z = 2.0;
    SlotDecision dec = empty_decision(topo);
    dec.virtual_rate = 0.0;
    dec.aux_pu = 1.5;
    auto res = step_inelastic(s, dec, topo, 0.25, true);
    EXPECT_DOUBLE_EQ(res.queues.z, 0.75);
}

TEST(StepInelastic, InfeasibleScheduleRejected) {
    CrnTopology topo = one_relay();
    InelasticQueues s = InelasticQueues::zeros(topo);
    SlotDecision dec = empty_decision(topo);
    dec.schedule.on[0] = dec.schedule.on[1] = 1;
    EXPECT_THROW(step_inelastic(s, dec, topo, 0.0), ContractViolation);
}

TEST(StepInelastic, DominatedByScheduledDynamics) {
    // next backlog <= [backlog - scheduled service]^+ + scheduled arrivals
    Rng rng(55);
    CrnTopology topo = line3();
    auto feasible = enumerate_feasible(topo);
    InelasticQueues s = InelasticQueues::zeros(topo);
    for (int t = 0; t < 200; ++t) {
        SlotDecision dec = empty_decision(topo);
        dec.schedule = feasible[rng.next_u64() % feasible.size()];
        dec.pu_admission = (rng.next_u64() % 2) * 1.0;
        for (int i = 0; i < topo.num_su(); ++i) dec.su_admission[i] = rng.uniform01();
        auto res = step_inelastic(s, dec, topo, 0.0);
        for (size_t slot = 0; slot < s.u.size(); ++slot) {
            double sched_out = 0.0, sched_in = 0.0;
            for (int e = 0; e < topo.num_relay(); ++e) {
                const Link& L = topo.relay_links[e];
                if (!dec.schedule.on[e]) continue;
                if (topo.node_slot(L.from) == static_cast<int>(slot)) sched_out += 1.0;
                if (L.to != topo.pu_dest && topo.node_slot(L.to) == static_cast<int>(slot))
                    sched_in += 1.0;
            }
            if (slot == 0) sched_in += dec.pu_admission;
            EXPECT_LE(res.queues.u[slot], pos(s.u[slot] - sched_out) + sched_in + 1e-12);
            EXPECT_GE(res.queues.u[slot], -0.0);
        }
        s = res.queues;
    }
}

TEST(StepElastic, ConveyorMovesOnePacket) {
    CrnTopology topo = one_relay();
    RouteSet rs = one_relay_route(topo);
    ElasticQueues s = ElasticQueues::zeros(topo, rs);
    s.u[0][0] = 1.0;
    SlotDecision dec = empty_decision(topo, rs);
    dec.schedule.hop_on[rs.hop_unit(0, 0)] = 1;
    dec.schedule.on[0] = 1;
    auto res = step_elastic(s, dec, topo, rs, {1.0});
    EXPECT_DOUBLE_EQ(res.queues.u[0][0], 0.0);
    EXPECT_DOUBLE_EQ(res.queues.u[0][1], 1.0);
}

TEST(StepElastic, RewardArrivalEntersSuQueue) {
    CrnTopology topo = one_relay();
    RouteSet rs = one_relay_route(topo);
    ElasticQueues s = ElasticQueues::zeros(topo, rs);
    SlotDecision dec = empty_decision(topo, rs);
    dec.route_admission[0] = 1.0;
    auto res = step_elastic(s, dec, topo, rs, {2.0});
    EXPECT_DOUBLE_EQ(res.queues.q[0], 2.0);
    EXPECT_DOUBLE_EQ(res.queues.u[0][0], 1.0);
}

TEST(StepElastic, SuOnRouteCountedOncePerRoute) {
    CrnTopology topo = mesh5();
    RouteSet rs = mesh5_routes(topo);
    // SU 1 appears on routes 0 and 2; one admitted packet on each.
    std::vector<double> rho = {1.0, 1.0, 0.5};
    auto arr = reward_arrivals({1.0, 0.0, 1.0}, rs, rho, topo.num_su());
    EXPECT_DOUBLE_EQ(arr[0], 1.5);  // SU node 1
    EXPECT_DOUBLE_EQ(arr[1], 0.0);  // SU node 2, route 1 admitted nothing
}

TEST(StepElastic, FloorCounterHoldsFractions) {
    CrnTopology topo = one_relay();
    RouteSet rs = one_relay_route(topo);
    ElasticQueues s = ElasticQueues::zeros(topo, rs);
    SlotDecision dec = empty_decision(topo, rs);
    dec.route_admission[0] = 1.0;
    auto res = step_elastic(s, dec, topo, rs, {0.6}, false, true);
    EXPECT_DOUBLE_EQ(res.queues.q[0], 0.0);
    EXPECT_DOUBLE_EQ(res.queues.reward_residual[0], 0.6);
    auto res2 = step_elastic(res.queues, dec, topo, rs, {0.6}, false, true);
    EXPECT_DOUBLE_EQ(res2.queues.q[0], 1.0);
    EXPECT_NEAR(res2.queues.reward_residual[0], 0.2, 1e-12);
}

TEST(StepElastic, ArbitraryModeAdmitsSuDataNotRewards) {
    CrnTopology topo = one_relay();
    RouteSet rs = one_relay_route(topo);
    ElasticQueues s = ElasticQueues::zeros(topo, rs);
    SlotDecision dec = empty_decision(topo, rs);
    dec.route_admission[0] = 1.0;
    dec.su_admission[0] = 0.25;
    auto res = step_elastic(s, dec, topo, rs, {2.0}, true);
    EXPECT_DOUBLE_EQ(res.queues.q[0], 0.25);
}

TEST(StepElastic, PerLinkHopUniquenessEnforced) {
    CrnTopology topo = one_relay();
    RouteSet rs = crn::make_route_set(topo, {{0, 1, 2}, {0, 1, 2}});
    ElasticQueues s = ElasticQueues::zeros(topo, rs);
    SlotDecision dec = empty_decision(topo, rs);
    dec.schedule.hop_on[rs.hop_unit(0, 0)] = 1;
    dec.schedule.hop_on[rs.hop_unit(1, 0)] = 1;
    dec.schedule.on[0] = 1;
    EXPECT_THROW(step_elastic(s, dec, topo, rs, {1.0, 1.0}), ContractViolation);
}

TEST(StepTransport, SuBufferZeroCapStaysEmpty) {
    CrnTopology topo = one_relay();
    InelasticQueues s = InelasticQueues::zeros(topo);
    InelasticQueues next = s;
    SlotDecision dec = empty_decision(topo);
    dec.exo_su[0] = 3.0;
    step_transport(next, s, dec, {10.0, 0.0});
    EXPECT_DOUBLE_EQ(next.w_l[0], 0.0);
}

TEST(StepTransport, PuBufferCapClamps) {
    CrnTopology topo = one_relay();
    InelasticQueues s = InelasticQueues::zeros(topo);
    s.w_p = 5.0;
    InelasticQueues next = s;
    SlotDecision dec = empty_decision(topo);
    dec.exo_pu = 1.0;
    dec.pu_admission = 2.0;
    step_transport(next, s, dec, {3.0, 0.0});
    EXPECT_DOUBLE_EQ(next.w_p, 3.0);
}

TEST(StepTransport, YQueueUpdate) {
    CrnTopology topo = one_relay();
    InelasticQueues s = InelasticQueues::zeros(topo);
    s.y_l[0] = 1.0;
    InelasticQueues next = s;
    SlotDecision dec = empty_decision(topo);
    dec.su_admission[0] = 2.0;
    dec.aux_su[0] = 0.5;
    step_transport(next, s, dec, {0.0, 10.0});
    EXPECT_DOUBLE_EQ(next.y_l[0], 0.5);
}

TEST(StepTransport, ElasticYQueuesCreditRewards) {
    CrnTopology topo = one_relay();
    RouteSet rs = one_relay_route(topo);
    ElasticQueues s = ElasticQueues::zeros(topo, rs);
    s.y_p = 2.0;
    ElasticQueues next = s;
    SlotDecision dec = empty_decision(topo, rs);
    dec.route_admission[0] = 1.0;
    dec.aux_pu = 0.5;
    step_transport(next, s, dec, {10.0, 10.0}, rs, {2.0});
    EXPECT_DOUBLE_EQ(next.y_p, 1.5);    // [2 - 1]^+ + 0.5
    EXPECT_DOUBLE_EQ(next.y_l[0], 2.0); // reward credit
}

TEST(Queues, NonNegativityUnderRandomDriving) {
    Rng rng(808);
    CrnTopology topo = two_route();
    RouteSet rs = two_route_routes(topo);
    auto space = UnitSpace::hops(topo, rs);
    auto feasible = enumerate_feasible_units(space);
    ElasticQueues s = ElasticQueues::zeros(topo, rs);
    for (int t = 0; t < 300; ++t) {
        SlotDecision dec = empty_decision(topo, rs);
        const auto& units = feasible[rng.next_u64() % feasible.size()];
        dec.schedule = space.project(units);
        dec.route_admission[rng.next_u64() % 2] = rng.uniform01();
        auto res = step_elastic(s, dec, topo, rs, {0.5, 1.5});
        for (const auto& route : res.queues.u)
            for (double v : route) ASSERT_GE(v, 0.0);
        for (double v : res.queues.q) ASSERT_GE(v, 0.0);
        s = res.queues;
    }
}
