#include "lowtw/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace lowtw {

double radius_bound(int k, std::size_t n) {
    return 9.0 * static_cast<double>(k) * static_cast<double>(k) * std::log2(static_cast<double>(n));
}

std::int64_t radius_cap(int k, std::size_t n) {
    return static_cast<std::int64_t>(std::ceil(radius_bound(k, n) - 1e-9));
}

ClusterResult carve(const Graph& g, int k, DecisionSource& src) {
    const std::size_t n = g.num_vertices();
    if (n <= 1) throw DegenerateInput("clustering needs more than one vertex");
    if (k < 1) throw std::invalid_argument("clustering needs k >= 1");
    const double p = 1.0 / (2.0 * k * k);
    const double bound = radius_bound(k, n);

    VertexSet order = g.vertices();
    std::vector<char> live(g.id_bound(), 0);
    for (Vertex v : order) live[v] = 1;
    std::vector<std::int64_t> dist(g.id_bound(), -1);

    ClusterResult res;
    std::vector<Vertex> kept;
    std::vector<Vertex> touched;
    std::size_t cursor = 0;
    bool over = false;
    for (;;) {
        while (cursor < order.size() && !live[order[cursor]]) ++cursor;
        if (cursor == order.size()) break;
        const Vertex c = order[cursor];
        const std::int64_t r = src.geometric("cluster.radius", p);
        res.carve_log.push_back({c, r});
        if (static_cast<double>(r) > bound) over = true;

        touched.clear();
        touched.push_back(c);
        dist[c] = 0;
        for (std::size_t head = 0; head < touched.size(); ++head) {
            Vertex u = touched[head];
            if (dist[u] == r) continue;
            for (Vertex w : g.neighbors(u)) {
                if (!live[w] || dist[w] >= 0) continue;
                dist[w] = dist[u] + 1;
                touched.push_back(w);
            }
        }
        for (Vertex u : touched)
            if (dist[u] < r) kept.push_back(u);
        for (Vertex u : touched) live[u] = 0;
        // N[B] misses every surviving vertex.
        for (Vertex u : touched) {
            if (dist[u] >= r) continue;
            for (Vertex w : g.neighbors(u))
                if (live[w]) throw std::logic_error("carve-exclusion violated");
        }
        for (Vertex u : touched) dist[u] = -1;
    }
    res.aborted = over;
    if (!over) res.kept = make_set(std::move(kept));
    return res;
}

ClusterResult cluster(const Graph& g, const VertexSet& ghosts, int k, DecisionSource& src) {
    if (ghosts.empty()) return carve(g, k, src);
    Graph t = torso(g, ghosts);
    ClusterResult res = carve(t, k, src);
    if (res.aborted) return res;
    VertexFlags kept(res.kept, g.id_bound());
    std::vector<Vertex> extra;
    for (Vertex x : ghosts) {
        if (!g.contains(x)) continue;
        for (Vertex w : g.neighbors(x))
            if (kept[w]) {
                extra.push_back(x);
                break;
            }
    }
    res.kept = set_union(res.kept, make_set(std::move(extra)));
    return res;
}

RadiusReport check_cluster_radii(const Graph& g, const VertexSet& ghosts, int k, const ClusterResult& res) {
    RadiusReport rep;
    if (res.aborted) {
        if (!res.kept.empty()) {
            rep.ok = false;
            rep.violation = "aborted run kept vertices";
        }
        return rep;
    }
    std::size_t n = 0;
    for (Vertex v : g.vertices())
        if (!contains(ghosts, v)) ++n;
    const double bound = radius_bound(k, n);
    Graph sub = induced_subgraph(g, res.kept);
    VertexFlags ghost_flags(ghosts, g.id_bound());
    VertexFlags kept_flags(res.kept, g.id_bound());
    std::vector<int> owner(g.id_bound(), -1);
    auto comps = components(sub);
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (Vertex v : comps[i]) owner[v] = static_cast<int>(i);
    std::vector<int> center_of(comps.size(), -1);
    for (std::size_t s = 0; s < res.carve_log.size(); ++s) {
        const auto& step = res.carve_log[s];
        if (!kept_flags[step.center]) continue;
        int c = owner[step.center];
        if (center_of[c] >= 0) {
            rep.ok = false;
            rep.violation = "component holds two carve centers";
            return rep;
        }
        center_of[c] = static_cast<int>(s);
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (center_of[i] < 0) {
            bool only_ghosts = std::all_of(comps[i].begin(), comps[i].end(), [&](Vertex v) { return ghost_flags[v]; });
            rep.ok = false;
            rep.violation = only_ghosts ? "ghost-only component" : "component without carve center";
            return rep;
        }
        const auto& step = res.carve_log[center_of[i]];
        auto d = ghost_distances(sub, ghost_flags, step.center);
        int ecc = 0;
        for (Vertex v : comps[i]) ecc = std::max(ecc, d[v]);
        rep.max_radius = std::max(rep.max_radius, ecc);
        if (ecc >= step.radius) {
            rep.ok = false;
            rep.violation = "radius " + std::to_string(ecc) + " not below sampled r = " + std::to_string(step.radius);
            return rep;
        }
        if (static_cast<double>(ecc) >= bound) {
            rep.ok = false;
            rep.violation = "radius " + std::to_string(ecc) + " not below 9k^2 lg n";
            return rep;
        }
    }
    return rep;
}

}  // namespace lowtw
