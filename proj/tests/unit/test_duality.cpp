#include <gtest/gtest.h>

#include "lowtw/corpus.hpp"
#include "lowtw/duality.hpp"
#include "lowtw/flow.hpp"

using namespace lowtw;

TEST(Flow, NetworkShape) {
    const Graph g = path_graph(4);
    const FlowNetwork net = build_network(g, 0, 3, 2);
    EXPECT_EQ(net.supply, 4);
    EXPECT_EQ(net.middle, (std::vector<Vertex>{1, 2}));
    EXPECT_EQ(net.num_nodes, 2 + 4 * 2);
    int unit_arcs = 0;
    for (const auto& a : net.arcs)
        if (!a.infinite) {
            EXPECT_EQ(a.cap, 1);
            EXPECT_EQ(a.cost, 0);
            ++unit_arcs;
        }
    EXPECT_EQ(unit_arcs, 2);
}

TEST(Flow, PathCostIsSharing) {
    // Four units through two middle vertices: each carries 4, one of them free.
    const Graph g = path_graph(4);
    const FlowSolution sol = min_cost_flow(build_network(g, 0, 3, 2));
    EXPECT_EQ(sol.cost, 6);
}

TEST(Flow, DisjointPathsAreFree) {
    // Theta graph with 4 arms of length 2: 2q = 4 units fit without sharing.
    const Graph g = theta_graph(4, 2);
    const Vertex s = 0;
    const Vertex t = 1;
    const FlowNetwork net = build_network(g, s, t, 2);
    const FlowSolution sol = min_cost_flow(net);
    EXPECT_EQ(sol.cost, 0);
    const DualSolution d = extract_duals(net, sol);
    EXPECT_EQ(d.objective, 0);
}

TEST(Flow, DecompositionProjectsToSimplePaths) {
    Rng rng(31);
    for (int it = 0; it < 30; ++it) {
        const Graph g = random_planar_like(25, rng);
        const FlowNetwork net = build_network(g, 0, 24, 3);
        const FlowSolution sol = min_cost_flow(net);
        const auto paths = decompose_flow(net, sol);
        EXPECT_EQ(static_cast<std::int64_t>(paths.size()), net.supply);
        for (const auto& nodes : paths) {
            const auto p = project_path(net, nodes);
            ASSERT_GE(p.size(), 2u);
            EXPECT_EQ(p.front(), 0u);
            EXPECT_EQ(p.back(), 24u);
            for (std::size_t i = 0; i + 1 < p.size(); ++i) EXPECT_TRUE(g.adjacent(p[i], p[i + 1]));
        }
    }
}

TEST(Duality, GridAlternatives) {
    // A 2-wide strip has a chain of size-2 cuts; many p force the chain side.
    const Graph g = grid_graph(2, 30);
    const DualityOutcome d = duality(g, 0, 59, 5, 1);
    if (d.kind == DualityOutcome::Kind::Chain) {
        EXPECT_TRUE(validate_chain(g, 0, 59, d.chain, 2).ok);
        EXPECT_EQ(d.chain.sets.size(), 5u);
    } else {
        EXPECT_TRUE(validate_paths(g, 0, 59, d.family, 5).ok);
    }
}

TEST(Duality, OutcomesValidateOnRandomGraphs) {
    Rng rng(32);
    for (int it = 0; it < 100; ++it) {
        const int n = static_cast<int>(rng.uniform_int(3, 40));
        const Graph g = random_planar_like(n, rng);
        const int p = static_cast<int>(rng.uniform_int(1, 6));
        const int q = static_cast<int>(rng.uniform_int(1, 6));
        const auto t = static_cast<Vertex>(n - 1);
        const DualityOutcome d = duality(g, 0, t, p, q);
        if (d.kind == DualityOutcome::Kind::Chain) {
            EXPECT_TRUE(validate_chain(g, 0, t, d.chain, 2 * q).ok);
            for (const auto& c : d.chain.sets) EXPECT_TRUE(is_separator(g, 0, t, c));
        } else {
            EXPECT_TRUE(validate_paths(g, 0, t, d.family, p).ok);
            EXPECT_EQ(d.family.paths.size(), static_cast<std::size_t>(q));
        }
    }
}

TEST(Duality, ValidatorsRejectBadCertificates) {
    const Graph g = grid_graph(3, 3);
    SeparatorChain bad;
    bad.sets = {{1}};
    EXPECT_FALSE(validate_chain(g, 0, 8, bad).ok);
    PathFamily broken;
    broken.paths = {{0, 4, 8}};
    EXPECT_FALSE(validate_paths(g, 0, 8, broken, 1).ok);
    EXPECT_TRUE(is_separator(g, 0, 8, {1, 3}));
    EXPECT_FALSE(is_separator(g, 0, 8, {4}));
    EXPECT_TRUE(is_separator(g, 0, 8, {2, 4, 6}));
}

TEST(Duality, AdjacentTerminalsHaveNoSeparator) {
    const Graph g = path_graph(2);
    const DualityOutcome d = duality(g, 0, 1, 3, 2);
    EXPECT_EQ(d.kind, DualityOutcome::Kind::Paths);
    EXPECT_TRUE(validate_paths(g, 0, 1, d.family, 3).ok);
}
