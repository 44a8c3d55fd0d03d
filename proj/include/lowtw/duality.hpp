#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowtw/flow.hpp"
#include "lowtw/graph.hpp"

namespace lowtw {

struct ExtractionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeparatorChain {
    std::vector<VertexSet> sets;  // C_1 .. C_p, from s towards t
};

struct PathFamily {
    std::vector<std::vector<Vertex>> paths;  // each runs s .. t
    // Internal vertices of paths[i] that lie on another returned path.
    std::vector<VertexSet> shared;
};

struct DualityOutcome {
    enum class Kind { Chain, Paths };
    Kind kind = Kind::Paths;
    SeparatorChain chain;
    PathFamily family;
    std::int64_t flow_cost = 0;
    // Sharing cost over all 2q projected flow paths.
    std::int64_t total_sharing = 0;
};

// Chain when the optimal flow cost exceeds 2pq, q paths of least sharing
// otherwise. Every outcome is validated before it is returned.
DualityOutcome duality(const Graph& g, Vertex s, Vertex t, int p, int q);

struct DualityReport {
    bool ok = true;
    std::string violation;
};

// Disjointness, s,t exclusion, separation, minimality, ordering and
// (for max_size >= 0) |C_j| <= max_size.
DualityReport validate_chain(const Graph& g, Vertex s, Vertex t, const SeparatorChain& chain, int max_size = -1);
// Simple s-t paths along edges of g, and at most 4p shared internal vertices
// per path (recomputed, not read from family.shared).
DualityReport validate_paths(const Graph& g, Vertex s, Vertex t, const PathFamily& family, int p);

bool is_separator(const Graph& g, Vertex s, Vertex t, const VertexSet& c);

}  // namespace lowtw
