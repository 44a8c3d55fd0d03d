#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowtw/graph.hpp"
#include "lowtw/rng.hpp"

namespace lowtw {

struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CarveStep {
    Vertex center;
    std::int64_t radius;
};

struct ClusterResult {
    VertexSet kept;
    std::vector<CarveStep> carve_log;
    bool aborted = false;  // kept is empty when set
};

// 9 k^2 lg n; a sampled radius strictly above it aborts the run.
double radius_bound(int k, std::size_t n);
// ceil(9 k^2 lg n).
std::int64_t radius_cap(int k, std::size_t n);

// Ball carving on a ghost-free graph. Centers are the lowest live id, radii
// are geometric with p = 1/(2k^2); ball(v, r-1) is kept and ball(v, r) is
// removed, both measured in the graph of still-live vertices. n counts the
// live vertices of g.
ClusterResult carve(const Graph& g, int k, DecisionSource& src);

// With ghosts: carve the torso, then add every ghost adjacent to a kept
// vertex. Ghosts never appear in the carve log.
ClusterResult cluster(const Graph& g, const VertexSet& ghosts, int k, DecisionSource& src);

struct RadiusReport {
    bool ok = true;
    std::string violation;
    int max_radius = 0;  // largest certified component radius
};

// Re-verifies a result: every component of g[kept] contains exactly one carve
// center, its ghost-eccentricity from that center is below the center's r_i,
// and (when not aborted) below radius_bound(k, n). n is the number of
// non-ghost vertices of g.
RadiusReport check_cluster_radii(const Graph& g, const VertexSet& ghosts, int k, const ClusterResult& res);

}  // namespace lowtw
