#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowtw/graph.hpp"

namespace lowtw {

struct TreeDecomposition {
    struct Node {
        VertexSet bag;
        int parent = -1;
        std::vector<int> children;
    };

    std::vector<Node> nodes;
    int root = -1;

    int width() const;
    bool empty() const { return nodes.empty(); }
    int add_node(VertexSet bag, int parent);
    // Copies `child` and hangs its root below node `at`; returns the new index
    // of child's root. An empty child is ignored and yields -1.
    int attach(int at, const TreeDecomposition& child);
    // Bags intersected with keep.
    TreeDecomposition restricted(const VertexFlags& keep) const;
    VertexSet all_vertices() const;

    static TreeDecomposition single_bag(VertexSet bag);
};

struct TdReport {
    bool ok = true;
    std::string violation;
};

// Tree shape, then (T1) vertex coverage, (T2) edge coverage and (T3) subtree
// connectivity; the first failure found is reported.
TdReport validate(const Graph& g, const TreeDecomposition& td);

// Bag X of td with every component of g - X of weight at most w(V)/2.
// w is indexed by vertex id; missing entries weigh 0.
VertexSet balanced_separator(const Graph& g, const TreeDecomposition& td, const std::vector<double>& w);

// Sweep eliminates in BFS order from the far end of a double sweep.
enum class Heuristic { MinFill, MinDegree, Sweep };

// nullopt when some bag would exceed width_budget + 1 vertices.
std::optional<TreeDecomposition> decompose_by_elimination(const Graph& g, Heuristic h, int width_budget = -1);

struct DecomposeOptions {
    int min_fill_budget = 48;
    // Min-fill is quadratic per step; above this size only min-degree runs.
    std::size_t min_fill_max_vertices = 2500;
};

// Narrowest of min-fill (under its budget), min-degree, both again with ties
// broken by sweep order, and the sweep order itself. Stops early once a
// width equals the degeneracy.
TreeDecomposition decompose(const Graph& g, const DecomposeOptions& opt = {});

// Provider for the sampler's bounded-radius graphs; ghosts are treated as
// ordinary vertices.
TreeDecomposition decompose_bounded_radius(const Graph& g, const VertexSet& ghosts, Vertex root);

// L_i = BFS layers from root with index congruent to i-1 mod ell.
std::vector<VertexSet> baker_layers(const Graph& g, Vertex root, int ell);

// PACE `.td`: bags numbered from 1 in node order with the root first,
// vertex ids shifted by +1.
void write_pace_td(std::ostream& out, const TreeDecomposition& td, std::size_t n_vertices);
TreeDecomposition read_pace_td(std::istream& in);
TreeDecomposition read_pace_td_file(const std::string& path);

}  // namespace lowtw
