#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lowtw/graph.hpp"

namespace lowtw {

struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vertex-split network. Node 0 is s, node 1 is t; middle vertex i (the i-th
// non-terminal id in ascending order) owns nodes 2+4i .. 2+4i+3 =
// v0_in, v0_out, v1_in, v1_out. Every copy is split so that vertex
// capacities become arc capacities.
struct FlowNetwork {
    struct Arc {
        int from;
        int to;
        std::int64_t cap;
        std::int64_t cost;
        bool infinite;
    };

    Vertex s = 0;
    Vertex t = 0;
    std::int64_t supply = 0;   // 2q
    std::int64_t cap_inf = 0;  // 2q
    int num_nodes = 2;
    std::vector<Vertex> middle;  // index -> vertex id
    std::vector<int> index_of;   // vertex id -> index, -1 for s, t, absent ids
    std::vector<Arc> arcs;

    static int v0_in(int i) { return 2 + 4 * i; }
    static int v0_out(int i) { return 3 + 4 * i; }
    static int v1_in(int i) { return 4 + 4 * i; }
    static int v1_out(int i) { return 5 + 4 * i; }
    int out_node(Vertex v, int copy) const;  // s for s, else v{copy}_out
    int in_node(Vertex v, int copy) const;   // t for t, else v{copy}_in
    // Original vertex a node belongs to.
    Vertex vertex_of(int node) const;
};

FlowNetwork build_network(const Graph& g, Vertex s, Vertex t, int q);

struct FlowSolution {
    std::vector<std::int64_t> flow;  // per arc
    std::int64_t cost = 0;
    // Shortest distances from s in the final residual network, where arcs of
    // infinite capacity always keep their forward residual.
    std::vector<std::int64_t> potential;
};

// Successive shortest paths with Johnson potentials; Dijkstra breaks ties
// by node index. Throws Infeasible when fewer than supply units reach t.
FlowSolution min_cost_flow(const FlowNetwork& net);

// Dual of the flow LP read off the potentials.
struct DualSolution {
    std::vector<std::int64_t> y0;  // per middle index: y at v0
    std::vector<std::int64_t> y1;  // per middle index: y at v1
    std::vector<std::int64_t> z;   // per middle index
    std::int64_t yt = 0;           // ys is 0
    std::int64_t objective = 0;    // 2q * yt - sum z
};

DualSolution extract_duals(const FlowNetwork& net, const FlowSolution& sol);

// Unit flow paths as node sequences s..t. Circulations are cancelled.
std::vector<std::vector<int>> decompose_flow(const FlowNetwork& net, const FlowSolution& sol);

// Maps copies to vertices, collapses repeats and splices out loops.
std::vector<Vertex> project_path(const FlowNetwork& net, const std::vector<int>& nodes);

}  // namespace lowtw
