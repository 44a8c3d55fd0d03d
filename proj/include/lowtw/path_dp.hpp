#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowtw/graph.hpp"
#include "lowtw/tree_decomposition.hpp"

namespace lowtw {

struct WidthTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadQuery : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// k counts vertices for both kinds. A directed query on a directed graph uses
// its arcs; otherwise every edge is usable both ways. A missing weight is 1.
struct PathQuery {
    enum class Kind { Path, Cycle };
    enum class Objective { Exists, MinWeight, MaxWeight };
    Kind kind = Kind::Path;
    int k = 2;
    bool directed = false;
    Objective objective = Objective::Exists;

    void check() const;  // k >= 2, k >= 3 for cycles
};

struct PathAnswer {
    bool found = false;
    std::vector<Vertex> witness;  // traversal order; a cycle does not repeat its first vertex
    Weight weight{0};
};

bool usable_arc(const Graph& g, const PathQuery& q, Vertex u, Vertex v);
Weight arc_weight(const Graph& g, const PathQuery& q, Vertex u, Vertex v);

// nullopt when w is a simple path or cycle of exactly q.k vertices whose
// consecutive pairs (and the closing pair of a cycle) are usable arcs.
std::optional<std::string> witness_violation(const Graph& g, const PathQuery& q, const std::vector<Vertex>& w);
Weight witness_weight(const Graph& g, const PathQuery& q, const std::vector<Vertex>& w);

// Exact DP over a nice form of td. Throws WidthTooLarge when td is wider than
// width_budget, std::invalid_argument when td is not a decomposition of g.
PathAnswer dp_longest_path(const Graph& g, const TreeDecomposition& td, const PathQuery& q, int width_budget = 14);

// Exhaustive DFS; throws TooLarge above cap vertices.
PathAnswer brute_force_paths(const Graph& g, const PathQuery& q, std::size_t cap = 16);

}  // namespace lowtw
