#include <gtest/gtest.h>

#include "lowtw/corpus.hpp"
#include "lowtw/pattern_cover.hpp"
#include "lowtw/solvers.hpp"

using namespace lowtw;

namespace {

Constants small(int k) {
    Constants c;
    c.k = k;
    c.scale = 0.01;
    return c;
}

void expect_contract(const Graph& g, const Constants& c, const CoverResult& r) {
    const TdReport rep = validate(induced_subgraph(g, r.A), r.td);
    EXPECT_TRUE(rep.ok) << rep.violation;
    EXPECT_TRUE(contains(r.A, r.root));
    ASSERT_GE(r.td.root, 0);
    EXPECT_TRUE(contains(r.td.nodes[static_cast<std::size_t>(r.td.root)].bag, r.root));
    EXPECT_LE(r.td.width(), c.width_cap());
}

}  // namespace

TEST(Constants, DerivedCaps) {
    Constants c;
    c.k = 16;
    c.c_tw = 10;
    // sqrt(16) lg 16 = 16.
    EXPECT_DOUBLE_EQ(c.sk_lgk(), 16.0);
    EXPECT_DOUBLE_EQ(c.width_cap(), 24022.0 * 10 * 16);
    EXPECT_DOUBLE_EQ(c.terminal_cap(), 16014.0 * 10 * 16);
    EXPECT_DOUBLE_EQ(c.separator_cap(), 8007.0 * 10 * 16);
    EXPECT_EQ(c.chain_p(), 120 * 16);
    EXPECT_DOUBLE_EQ(c.credit_cap(), 0.4);
    c.k = 0;
    EXPECT_THROW(c.check(), std::invalid_argument);
}

TEST(Constants, TrivialThreshold) {
    Constants c;
    c.k = 9;
    EXPECT_EQ(c.trivial_threshold(), 1024);
    c.scale = 0.5;
    EXPECT_EQ(c.trivial_threshold(), 1);
}

TEST(Sampler, ContractOnGrids) {
    for (int side : {4, 7, 10})
        for (int k : {6, 9}) {
            const Graph g = grid_graph(side, side);
            for (int t = 0; t < 10; ++t) {
                DecisionSource src(Rng::trial_seed(41, static_cast<std::uint64_t>(t * 100 + side)));
                const CoverResult r = sample_cover(g, small(k), src);
                expect_contract(g, small(k), r);
                EXPECT_FALSE(r.trivial);
            }
        }
}

TEST(Sampler, ContractOnPlanarLike) {
    Rng rng(42);
    for (int t = 0; t < 10; ++t) {
        const Graph g = random_planar_like(150, rng);
        DecisionSource src(Rng::trial_seed(42, static_cast<std::uint64_t>(t)));
        expect_contract(g, small(9), sample_cover(g, small(9), src));
    }
}

TEST(Sampler, ReplayIsExact) {
    const Graph g = grid_graph(9, 9);
    DecisionSource src(43);
    const CoverResult a = sample_cover(g, small(9), src);
    DecisionSource again = DecisionSource::replay(a.trace);
    const CoverResult b = sample_cover(g, small(9), again);
    EXPECT_EQ(a.A, b.A);
    EXPECT_EQ(a.root, b.root);
    EXPECT_EQ(a.td.width(), b.td.width());
}

TEST(Sampler, ReplayRejectsForeignTrace) {
    DecisionSource src(44);
    const CoverResult a = sample_cover(grid_graph(6, 6), small(6), src);
    std::vector<Decision> trace = a.trace;
    ASSERT_FALSE(trace.empty());
    trace.front().kind = "not-a-kind";
    DecisionSource again = DecisionSource::replay(trace);
    EXPECT_THROW(sample_cover(grid_graph(6, 6), small(6), again), ReplayMismatch);
}

TEST(Sampler, TrivialSamplerBelowThreshold) {
    Constants c;
    c.k = 4;
    const Graph g = grid_graph(5, 5);
    DecisionSource src(45);
    const CoverResult r = sample_cover(g, c, src);
    EXPECT_TRUE(r.trivial);
    EXPECT_LE(r.A.size(), 4u);
    EXPECT_TRUE(validate(induced_subgraph(g, r.A), r.td).ok);
}

TEST(Sampler, EmptyGraphRejected) {
    DecisionSource src(46);
    EXPECT_THROW(sample_cover(Graph(), small(6), src), EmptyGraph);
}

TEST(Sampler, DebugLawsOnPlantedStrip) {
    const Planted p = planted_row_path(3, 100, 1, 25);
    Constants c;
    c.k = 25;
    c.scale = 0.0005;
    DebugOptions d;
    d.pattern = p.x;
    DecisionSource src(47);
    const CoverResult r = cover_from_root(p.g, p.order.front(), c, src, &d);
    ASSERT_TRUE(r.debug.has_value());
    bool saw_pattern = false;
    for (const auto& l : r.debug->checks) {
        if (l.law == "pattern") saw_pattern = true;
        if (l.law.rfind("chain ", 0) == 0 || l.law == "paths pi unchanged" || l.law == "disjoint pi split") {
            EXPECT_TRUE(l.ok) << l.law << ": " << l.detail;
        }
    }
    EXPECT_TRUE(saw_pattern);
    EXPECT_EQ(r.debug->balanced_failures, 0);
}

TEST(Sampler, PotentialsOfRootInstance) {
    const Graph g = path_graph(10);
    Instance I;
    I.g = g;
    I.root = 0;
    I.light = {0};
    Constants c;
    c.k = 4;
    const Potentials pot = potentials_of(I, {0, 1, 2, 3}, c);
    EXPECT_EQ(pot.pi, 3);
    EXPECT_EQ(pot.gamma, graph_potential(I));
    EXPECT_FALSE(instance_violation(I, c).has_value());
}

TEST(Family, CoverageCountsHits) {
    const Graph g = grid_graph(5, 5);
    const auto fam = covering_family(g, small(6), 4, 48);
    ASSERT_EQ(fam.size(), 4u);
    const std::vector<VertexSet> xs{{fam[0].A.front()}, {}};
    EXPECT_DOUBLE_EQ(family_coverage(fam, xs), 1.0);
    const auto again = covering_family(g, small(6), 4, 48, 2);
    for (std::size_t i = 0; i < fam.size(); ++i) EXPECT_EQ(fam[i].A, again[i].A);
}
