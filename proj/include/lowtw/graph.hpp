#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "lowtw/vertex_set.hpp"

namespace lowtw {

using Weight = boost::rational<std::int64_t>;

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAVertex : GraphError {
    using GraphError::GraphError;
};
struct NotAnEdge : GraphError {
    using GraphError::GraphError;
};
struct Disconnected : GraphError {
    using GraphError::GraphError;
};
struct NoAttachment : GraphError {
    using GraphError::GraphError;
};

// Simple undirected graph over opaque ids. Ids come from a per-graph counter
// and are never reused, so ids of surviving vertices are stable across
// contraction. An optional arc set and weight map ride along for the solvers;
// every structural operation here works on the underlying undirected graph.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    Vertex add_vertex();
    void add_edge(Vertex u, Vertex v);
    void remove_vertex(Vertex v);

    bool contains(Vertex v) const { return v < alive_.size() && alive_[v]; }
    bool adjacent(Vertex u, Vertex v) const;
    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_[v].size(); }

    std::size_t num_vertices() const { return live_; }
    std::size_t num_edges() const;
    Vertex id_bound() const { return static_cast<Vertex>(alive_.size()); }
    VertexSet vertices() const;
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    // Solver metadata. An arc implies its underlying edge.
    void add_arc(Vertex from, Vertex to);
    bool has_arc(Vertex from, Vertex to) const { return arcs_.count({from, to}) != 0; }
    bool directed() const { return directed_; }
    const std::set<std::pair<Vertex, Vertex>>& arcs() const { return arcs_; }
    void set_directed(bool d) { directed_ = d; }

    // Keyed by the arc when directed, by the sorted pair otherwise.
    void set_weight(Vertex u, Vertex v, Weight w);
    std::optional<Weight> weight(Vertex u, Vertex v) const;
    bool weighted() const { return !weights_.empty(); }
    void clear_metadata();

    // Merges every vertex of s into keep (keep ∉ s). No precondition checks;
    // drops solver metadata.
    void merge_into(Vertex keep, const VertexSet& s);

    // Same id space, only flagged vertices alive; metadata restricted.
    Graph induced(const VertexFlags& keep) const;

private:
    void check(Vertex v) const;

    std::vector<std::vector<Vertex>> adj_;
    std::vector<char> alive_;
    std::size_t live_ = 0;
    bool directed_ = false;
    std::set<std::pair<Vertex, Vertex>> arcs_;
    std::map<std::pair<Vertex, Vertex>, Weight> weights_;
};

Graph contract_edge(const Graph& g, Vertex u, Vertex v, Vertex keep);

// s is connected, target ∉ s has a neighbour in s.
Graph contract_set_onto(const Graph& g, const VertexSet& s, Vertex target);

// keep ∈ s and g[s] connected; s collapses to keep.
Graph contract_subgraph(const Graph& g, const VertexSet& s, Vertex keep);

Graph induced_subgraph(const Graph& g, const VertexSet& keep);
Graph remove_vertices(const Graph& g, const VertexSet& drop);

// Cost of a walk = non-ghost vertices after the source. Distance subtracts
// one more when the source is a ghost and the target is not, so for non-ghost
// endpoints it is (#non-ghosts on the path) - 1 and for two ghosts it is the
// number of non-ghost internal vertices.
std::vector<int> ghost_distances(const Graph& g, const VertexFlags& ghosts, Vertex source);
int ghost_distance(const Graph& g, const VertexSet& ghosts, Vertex x, Vertex y);

// Ghosts eliminated in ascending id order.
Graph torso(const Graph& g, const VertexSet& ghosts);

struct NormalizedGhosts {
    Graph graph;
    VertexSet ghosts;
};
NormalizedGhosts normalize_ghosts(const Graph& g, const VertexSet& ghosts, Vertex root);

VertexSet reach(const Graph& g, Vertex u);
VertexSet reach_avoiding(const Graph& g, Vertex u, const VertexFlags& blocked);
VertexSet ball(const Graph& g, const VertexSet& ghosts, Vertex v, int radius);

std::vector<VertexSet> components(const Graph& g);
// Components of g - blocked, each sorted; ordered by smallest member.
std::vector<VertexSet> components_avoiding(const Graph& g, const VertexFlags& blocked);
std::vector<VertexSet> components_within(const Graph& g, const VertexSet& s);
bool is_connected(const Graph& g);
bool is_connected_subset(const Graph& g, const VertexSet& s);

// Open neighbourhood of s.
VertexSet neighborhood(const Graph& g, const VertexSet& s);

}  // namespace lowtw
