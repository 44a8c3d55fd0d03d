#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowtw/graph.hpp"
#include "lowtw/rng.hpp"
#include "lowtw/tree_decomposition.hpp"

namespace lowtw {

struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};
struct EmptyGraph : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Every numeric constant of the recursion except the credit cap and the
// alpha range is multiplied by scale.
struct Constants {
    int k = 1;
    double scale = 1.0;
    int c_tw = 10;
    double c1 = 2.0;
    double c2 = 2.0;
    // Below this k the trivial sampler runs. Negative: max(10, 2^c_tw) at
    // scale 1, and 1 (never trivial) at scale < 1.
    int recursion_threshold = -1;

    double sk_lgk() const;  // sqrt(k) lg k
    double margin_radius() const;  // scale 2000 sqrt(k) lg k, at least 3
    double far_threshold() const;  // scale 1000 sqrt(k) lg k
    double terminal_cap() const;   // scale 16014 c_tw sqrt(k) lg k
    double separator_cap() const;  // scale 8007 c_tw sqrt(k) lg k
    double width_cap() const;      // scale 24022 c_tw sqrt(k) lg k
    double far_drop() const;       // scale 511 sqrt(k) lg k
    int chain_p() const;           // max(4, ceil(scale 120 sqrt(k) lg k))
    double credit_cap() const;     // sqrt(k) / 10
    double pattern_slack() const;  // scale 10 sqrt(k), per unit of credit
    int alpha_max() const;         // max(1, ceil(sqrt(k) / 10))
    int trivial_threshold() const;
    void check() const;  // throws std::invalid_argument
};

struct Instance {
    Graph g;
    Vertex root = 0;
    VertexSet light;
    VertexSet heavy;
    VertexSet ghosts;
    int credit = 0;

    VertexSet terminals() const { return set_union(light, heavy); }
};

struct Potentials {
    std::int64_t pi = 0;     // |X \ T_li|
    std::int64_t gamma = 0;  // |V \ (T_li u R)|
    std::int64_t phi = 0;    // far vertices of X
};

std::int64_t graph_potential(const Instance& I);
Potentials potentials_of(const Instance& I, const VertexSet& x, const Constants& c);
// r in X, X avoids ghosts, X reachable from r through X u R, and
// |X| <= k - pattern_slack * credit.
bool is_pattern(const Instance& I, const VertexSet& x, const Constants& c);
// Natural log of the coverage lower bound; 0 when pi = 0. n < 4 uses
// lg lg 4 = 1 so that the bound stays finite.
double log_lb_value(std::size_t n, std::int64_t pi, std::int64_t gamma, std::int64_t phi, const Constants& c);
double lb_value(std::size_t n, std::int64_t pi, std::int64_t gamma, std::int64_t phi, const Constants& c);

// Checks the instance invariants; the message names the first failure.
std::optional<std::string> instance_violation(const Instance& I, const Constants& c);

// Stalled: a disjoint-case child whose (Gamma, |V|) did not drop; it is
// resolved whole instead of recursed on.
enum class NodeKind { Base, Disjoint, IntersectPaths, IntersectChain, Stalled };

struct NodeSummary {
    int depth = 0;
    NodeKind kind = NodeKind::Base;
    std::size_t n = 0;
    std::int64_t gamma = 0;
    std::size_t light = 0;
    std::size_t heavy = 0;
    std::size_t ghosts = 0;
    int credit = 0;
    std::size_t children = 0;
};

struct LawCheck {
    std::string law;
    bool ok = true;
    std::string detail;
};

// Test facility: threads a pattern through the recursion and checks the
// potential laws. With steer set, every random choice is forced to the
// value compliant with the pattern and recorded with the probability the
// unsteered draw would have had.
struct DebugOptions {
    VertexSet pattern;
    bool steer = true;
    int cluster_attempts = 2000;
};

struct DebugReport {
    std::vector<LawCheck> checks;
    bool compliant = true;  // every steered choice could be made
    std::string noncompliance;
    int balanced_scans = 0;
    int balanced_failures = 0;
    // Base cases reached by credit with part of the pattern outside T.
    int credit_cap_losses = 0;
    double log_path_probability = 0.0;  // sum of log probabilities of the forced choices

    std::size_t violations() const;
};

struct CoverResult {
    VertexSet A;
    TreeDecomposition td;
    std::vector<Decision> trace;
    std::vector<NodeSummary> nodes;
    Vertex root = 0;
    bool trivial = false;
    bool aborted = false;
    std::string abort_reason;
    std::optional<DebugReport> debug;
};

// Samples the root uniformly, restricts to its component and solves
// (G, r, {r}, {}, {}, 0). Below the trivial threshold, k vertices are drawn
// uniformly and independently instead.
CoverResult sample_cover(const Graph& g0, const Constants& c, DecisionSource& src);

// Same recursion from a fixed root; used by the debug harness, which
// conditions on the root lying in the pattern.
CoverResult cover_from_root(const Graph& g0, Vertex root, const Constants& c, DecisionSource& src,
                            const DebugOptions* debug = nullptr);

CoverResult solve_instance(Instance I, const Constants& c, DecisionSource& src, const DebugOptions* debug = nullptr);

// Building blocks, exposed for tests.
namespace detail {

// Lifts a torso path to g: a torso edge not present in g is replaced by its
// lowest-id common ghost neighbour, then repeated vertices are spliced out.
std::vector<Vertex> lift_path(const Graph& g, const VertexFlags& ghosts, const std::vector<Vertex>& path);

// The contraction set of case_intersect for island C around z at distance d.
VertexSet intersect_contraction_set(const Graph& island, const VertexFlags& ghosts, Vertex z, std::int64_t d);

// Center of an island: non-ghost vertex of least ghost-eccentricity, ties
// by id. Returns (z, eccentricity).
std::pair<Vertex, int> island_center(const Graph& island, const VertexFlags& ghosts);

struct Segment {
    Vertex start;
    std::vector<Vertex> interior;
    std::optional<Vertex> ghost;  // contraction target when present
};
// Splits the suffix of path from its last light terminal to z at the public
// vertices.
std::vector<Segment> path_segments(const std::vector<Vertex>& path, const VertexFlags& light,
                                   const VertexFlags& ghosts, const VertexSet& pub);

// Smallest index i (0-based) with beta |X cap C_i| <= min(a_i, b_i), where
// a_i, b_i count X \ T_li before and after C_i; -1 when none.
int balanced_index(const Graph& g, Vertex root, const std::vector<VertexSet>& chain, const VertexSet& x,
                   const VertexSet& light, double beta);

}  // namespace detail

}  // namespace lowtw
