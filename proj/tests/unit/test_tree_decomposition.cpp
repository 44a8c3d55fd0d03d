#include <gtest/gtest.h>

#include <sstream>

#include "lowtw/corpus.hpp"
#include "lowtw/graph_io.hpp"
#include "lowtw/tree_decomposition.hpp"

using namespace lowtw;

namespace {

TreeDecomposition path_td(int n) {
    TreeDecomposition td;
    int at = -1;
    for (int i = 0; i + 1 < n; ++i) at = td.add_node({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)}, at);
    return td;
}

}  // namespace

TEST(TreeDecomposition, PathDecompositionValidates) {
    const Graph g = path_graph(6);
    const TreeDecomposition td = path_td(6);
    EXPECT_TRUE(validate(g, td).ok);
    EXPECT_EQ(td.width(), 1);
}

TEST(TreeDecomposition, DetectsEachViolation) {
    const Graph g = path_graph(4);
    TreeDecomposition missing = path_td(3);
    EXPECT_FALSE(validate(g, missing).ok);

    TreeDecomposition no_edge;
    const int r = no_edge.add_node({0, 1}, -1);
    no_edge.add_node({2}, r);
    no_edge.add_node({2, 3}, r);
    EXPECT_FALSE(validate(g, no_edge).ok);

    // Vertex 1 appears in two bags separated by a bag without it.
    TreeDecomposition split;
    const int a = split.add_node({0, 1}, -1);
    const int b = split.add_node({0, 2}, a);
    split.add_node({1, 2, 3}, b);
    EXPECT_FALSE(validate(g, split).ok);
}

TEST(TreeDecomposition, PaceRoundTrip) {
    const Graph g = grid_graph(4, 5);
    const TreeDecomposition td = decompose(g);
    std::ostringstream out;
    write_pace_td(out, td, g.num_vertices());
    EXPECT_EQ(out.str().rfind("s td ", 0), 0u);
    std::istringstream in(out.str());
    const TreeDecomposition back = read_pace_td(in);
    EXPECT_EQ(back.width(), td.width());
    EXPECT_TRUE(validate(g, back).ok);
}

TEST(TreeDecomposition, PaceParseErrors) {
    std::istringstream early("b 1 1 2\n");
    EXPECT_THROW(read_pace_td(early), ParseError);
    std::istringstream index("s td 1 2 3\nb 2 1 2\n");
    EXPECT_THROW(read_pace_td(index), ParseError);
    std::istringstream vertex("s td 1 2 3\nb 1 0 2\n");
    EXPECT_THROW(read_pace_td(vertex), ParseError);
}

TEST(TreeDecomposition, HeuristicWidths) {
    EXPECT_EQ(decompose(path_graph(30)).width(), 1);
    EXPECT_EQ(decompose(cycle_graph(12)).width(), 2);
    for (int n = 2; n <= 8; ++n) {
        const Graph g = grid_graph(n, n);
        const TreeDecomposition td = decompose(g);
        EXPECT_TRUE(validate(g, td).ok);
        EXPECT_EQ(td.width(), n) << n << "x" << n;
    }
    Rng rng(3);
    EXPECT_EQ(decompose(random_tree(200, rng)).width(), 1);
}

TEST(TreeDecomposition, EveryHeuristicValidates) {
    Rng rng(5);
    for (int it = 0; it < 30; ++it) {
        const Graph g = random_planar_like(60, rng);
        for (Heuristic h : {Heuristic::MinFill, Heuristic::MinDegree, Heuristic::Sweep}) {
            const auto td = decompose_by_elimination(g, h);
            ASSERT_TRUE(td.has_value());
            EXPECT_TRUE(validate(g, *td).ok);
        }
    }
}

TEST(TreeDecomposition, BudgetRejectsWideBags) {
    EXPECT_FALSE(decompose_by_elimination(grid_graph(6, 6), Heuristic::MinDegree, 3).has_value());
}

TEST(TreeDecomposition, BalancedSeparatorHalvesWeight) {
    const Graph g = path_graph(21);
    const TreeDecomposition td = decompose(g);
    std::vector<double> w(21, 1.0);
    const VertexSet x = balanced_separator(g, td, w);
    const Graph rest = remove_vertices(g, x);
    for (const auto& c : components(rest)) EXPECT_LE(static_cast<double>(c.size()), 10.5);
}

TEST(TreeDecomposition, BakerLayersPartitionByDepth) {
    const Graph g = path_graph(10);
    const auto layers = baker_layers(g, 0, 3);
    ASSERT_EQ(layers.size(), 3u);
    EXPECT_EQ(layers[0], (VertexSet{0, 3, 6, 9}));
    EXPECT_EQ(layers[1], (VertexSet{1, 4, 7}));
}
