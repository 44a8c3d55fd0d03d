#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowtw/graph.hpp"
#include "lowtw/rng.hpp"

namespace lowtw {

struct BadParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Vertex (i, j) of a rows x cols lattice has id i * cols + j.
Graph grid_graph(int rows, int cols);
// Grid whose columns wrap around; cols >= 3.
Graph cylinder_graph(int rows, int cols);
Graph path_graph(int n);
Graph cycle_graph(int n);
// Random recursive tree: vertex i > 0 attaches to a uniform earlier vertex.
Graph random_tree(int n, Rng& rng);
// Stacked triangulation: start from a triangle and repeatedly insert a vertex
// into a uniform inner face, joined to its three corners. Planar, simple and
// connected by construction.
Graph random_planar_like(int n, Rng& rng);
// Hubs 0 and 1 joined by `arms` internally disjoint paths with `length`
// internal vertices each.
Graph theta_graph(int arms, int length);

struct Planted {
    Graph g;
    VertexSet x;
    std::vector<Vertex> order;  // certificate: a walk in g visiting x
};

// Self-avoiding random walk of k vertices in a grid; retried until it has
// full length.
Planted planted_grid_path(int rows, int cols, int k, Rng& rng);
// First k vertices of row `row` from column 0.
Planted planted_row_path(int rows, int cols, int row, int k);

// Directed grid: every edge gets a uniform orientation, except the planted
// k-path whose arcs point along it. Uniform integer weights in [1, max_weight]
// when max_weight > 0.
Planted planted_directed_grid(int rows, int cols, int k, int max_weight, Rng& rng);
// Directed grid with arcs from even to odd colour classes, so no directed
// path has more than two vertices.
Graph bipartite_directed_grid(int rows, int cols);

// True when x is a connected vertex set of g and order is a walk through
// exactly the vertices of x.
bool check_planted(const Planted& p);

// Generator dispatch for the CLI: kind in {grid, cylinder, random-planar-like,
// path, tree, theta}.
Graph generate(const std::string& kind, int a, int b, Rng& rng);

}  // namespace lowtw
