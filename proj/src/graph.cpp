#include "lowtw/graph.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace lowtw {

namespace {

void insert_sorted(std::vector<Vertex>& v, Vertex x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

void erase_sorted(std::vector<Vertex>& v, Vertex x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
}

std::pair<Vertex, Vertex> ordered(Vertex u, Vertex v) {
    return u < v ? std::pair{u, v} : std::pair{v, u};
}

}  // namespace

Graph::Graph(std::size_t n) : adj_(n), alive_(n, 1), live_(n) {}

Vertex Graph::add_vertex() {
    adj_.emplace_back();
    alive_.push_back(1);
    ++live_;
    return static_cast<Vertex>(alive_.size() - 1);
}

void Graph::check(Vertex v) const {
    if (!contains(v)) throw NotAVertex("vertex " + std::to_string(v) + " not in graph");
}

void Graph::add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
}

void Graph::remove_vertex(Vertex v) {
    check(v);
    for (Vertex y : adj_[v]) erase_sorted(adj_[y], v);
    adj_[v].clear();
    alive_[v] = 0;
    --live_;
    for (auto it = arcs_.begin(); it != arcs_.end();) {
        if (it->first == v || it->second == v) it = arcs_.erase(it); else ++it;
    }
    for (auto it = weights_.begin(); it != weights_.end();) {
        if (it->first.first == v || it->first.second == v) it = weights_.erase(it); else ++it;
    }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) return false;
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), other);
}

std::size_t Graph::num_edges() const {
    std::size_t d = 0;
    for (const auto& a : adj_) d += a.size();
    return d / 2;
}

VertexSet Graph::vertices() const {
    VertexSet out;
    out.reserve(live_);
    for (Vertex v = 0; v < alive_.size(); ++v)
        if (alive_[v]) out.push_back(v);
    return out;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < alive_.size(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

void Graph::add_arc(Vertex from, Vertex to) {
    add_edge(from, to);
    directed_ = true;
    arcs_.insert({from, to});
}

void Graph::set_weight(Vertex u, Vertex v, Weight w) {
    if (!adjacent(u, v)) throw NotAnEdge("weight on non-edge");
    weights_[directed_ ? std::pair{u, v} : ordered(u, v)] = w;
}

std::optional<Weight> Graph::weight(Vertex u, Vertex v) const {
    auto it = weights_.find(directed_ ? std::pair{u, v} : ordered(u, v));
    if (it == weights_.end()) return std::nullopt;
    return it->second;
}

void Graph::clear_metadata() {
    directed_ = false;
    arcs_.clear();
    weights_.clear();
}

void Graph::merge_into(Vertex keep, const VertexSet& s) {
    if (s.empty()) return;
    VertexFlags gone(s, id_bound());
    std::vector<Vertex> nb;
    for (Vertex y : adj_[keep])
        if (!gone[y]) nb.push_back(y);
    for (Vertex x : s)
        for (Vertex y : adj_[x])
            if (!gone[y] && y != keep) nb.push_back(y);
    nb = make_set(std::move(nb));
    for (Vertex x : s) {
        for (Vertex y : adj_[x])
            if (!gone[y] && y != keep) erase_sorted(adj_[y], x);
        adj_[x].clear();
        alive_[x] = 0;
        --live_;
    }
    for (Vertex y : nb) insert_sorted(adj_[y], keep);
    adj_[keep] = std::move(nb);
    clear_metadata();
}

Graph Graph::induced(const VertexFlags& keep) const {
    Graph h;
    h.adj_.resize(adj_.size());
    h.alive_.assign(alive_.size(), 0);
    for (Vertex v = 0; v < alive_.size(); ++v) {
        if (!alive_[v] || !keep[v]) continue;
        h.alive_[v] = 1;
        ++h.live_;
        for (Vertex y : adj_[v])
            if (keep[y]) h.adj_[v].push_back(y);
    }
    h.directed_ = directed_;
    for (const auto& a : arcs_)
        if (keep[a.first] && keep[a.second]) h.arcs_.insert(a);
    for (const auto& [e, w] : weights_)
        if (keep[e.first] && keep[e.second]) h.weights_.emplace(e, w);
    return h;
}

Graph contract_edge(const Graph& g, Vertex u, Vertex v, Vertex keep) {
    if (!g.adjacent(u, v)) throw NotAnEdge("contract_edge: not an edge");
    if (keep != u && keep != v) throw GraphError("contract_edge: keep must be an endpoint");
    Graph h = g;
    h.merge_into(keep, VertexSet{keep == u ? v : u});
    return h;
}

Graph contract_set_onto(const Graph& g, const VertexSet& s, Vertex target) {
    if (!g.contains(target)) throw NotAVertex("contract_set_onto: target missing");
    if (contains(s, target)) throw GraphError("contract_set_onto: target inside set");
    for (Vertex x : s)
        if (!g.contains(x)) throw NotAVertex("contract_set_onto: set vertex missing");
    if (!is_connected_subset(g, s)) throw Disconnected("contract_set_onto: set not connected");
    bool attached = std::any_of(s.begin(), s.end(), [&](Vertex x) { return g.adjacent(x, target); });
    if (!attached) throw NoAttachment("contract_set_onto: target has no neighbour in set");
    Graph h = g;
    h.merge_into(target, s);
    return h;
}

Graph contract_subgraph(const Graph& g, const VertexSet& s, Vertex keep) {
    if (!contains(s, keep)) throw GraphError("contract_subgraph: keep outside set");
    if (!is_connected_subset(g, s)) throw Disconnected("contract_subgraph: set not connected");
    Graph h = g;
    VertexSet rest = s;
    rest.erase(std::lower_bound(rest.begin(), rest.end(), keep));
    h.merge_into(keep, rest);
    return h;
}

Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
    return g.induced(VertexFlags(keep, g.id_bound()));
}

Graph remove_vertices(const Graph& g, const VertexSet& drop) {
    VertexFlags keep;
    VertexFlags gone(drop, g.id_bound());
    for (Vertex v : g.vertices())
        if (!gone[v]) keep.set(v);
    return g.induced(keep);
}

std::vector<int> ghost_distances(const Graph& g, const VertexFlags& ghosts, Vertex source) {
    std::vector<int> d(g.id_bound(), kUnreachable);
    if (!g.contains(source)) return d;
    std::deque<Vertex> dq;
    d[source] = 0;
    dq.push_back(source);
    while (!dq.empty()) {
        Vertex u = dq.front();
        dq.pop_front();
        for (Vertex y : g.neighbors(u)) {
            int w = ghosts[y] ? 0 : 1;
            if (d[u] + w < d[y]) {
                d[y] = d[u] + w;
                if (w == 0) dq.push_front(y); else dq.push_back(y);
            }
        }
    }
    if (ghosts[source]) {
        for (Vertex v = 0; v < d.size(); ++v)
            if (d[v] != kUnreachable && !ghosts[v] && g.contains(v)) d[v] -= 1;
    }
    return d;
}

int ghost_distance(const Graph& g, const VertexSet& ghosts, Vertex x, Vertex y) {
    if (!g.contains(x) || !g.contains(y)) throw NotAVertex("ghost_distance: vertex missing");
    return ghost_distances(g, VertexFlags(ghosts, g.id_bound()), x)[y];
}

Graph torso(const Graph& g, const VertexSet& ghosts) {
    Graph h = g;
    h.clear_metadata();
    for (Vertex x : ghosts) {
        if (!h.contains(x)) continue;
        std::vector<Vertex> nb(h.neighbors(x).begin(), h.neighbors(x).end());
        h.remove_vertex(x);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) h.add_edge(nb[i], nb[j]);
    }
    return h;
}

NormalizedGhosts normalize_ghosts(const Graph& g, const VertexSet& ghosts, Vertex root) {
    NormalizedGhosts out{g, {}};
    Graph& h = out.graph;
    VertexFlags is_ghost(ghosts, g.id_bound());
    // Each ghost component collapses to its lowest id.
    VertexFlags seen;
    VertexSet survivors;
    for (Vertex x : ghosts) {
        if (!h.contains(x) || seen[x]) continue;
        VertexSet comp;
        std::vector<Vertex> stack{x};
        seen.set(x);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (Vertex y : h.neighbors(u))
                if (is_ghost[y] && !seen[y]) {
                    seen.set(y);
                    stack.push_back(y);
                }
        }
        comp = make_set(std::move(comp));
        Vertex keep = comp.front();
        comp.erase(comp.begin());
        h.merge_into(keep, comp);
        survivors.push_back(keep);
    }
    for (Vertex x : survivors) {
        if (h.adjacent(x, root)) h.merge_into(root, VertexSet{x});
        else out.ghosts.push_back(x);
    }
    out.ghosts = make_set(std::move(out.ghosts));
    return out;
}

VertexSet reach_avoiding(const Graph& g, Vertex u, const VertexFlags& blocked) {
    VertexSet out;
    if (!g.contains(u) || blocked[u]) return out;
    std::vector<char> seen(g.id_bound(), 0);
    std::vector<Vertex> stack{u};
    seen[u] = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (Vertex y : g.neighbors(x))
            if (!seen[y] && !blocked[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

VertexSet reach(const Graph& g, Vertex u) { return reach_avoiding(g, u, VertexFlags{}); }

VertexSet ball(const Graph& g, const VertexSet& ghosts, Vertex v, int radius) {
    auto d = ghost_distances(g, VertexFlags(ghosts, g.id_bound()), v);
    VertexSet out;
    for (Vertex x : g.vertices())
        if (d[x] <= radius) out.push_back(x);
    return out;
}

std::vector<VertexSet> components_avoiding(const Graph& g, const VertexFlags& blocked) {
    std::vector<VertexSet> out;
    std::vector<char> seen(g.id_bound(), 0);
    std::vector<Vertex> stack;
    for (Vertex s : g.vertices()) {
        if (seen[s] || blocked[s]) continue;
        VertexSet comp;
        stack.assign(1, s);
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (Vertex y : g.neighbors(x))
                if (!seen[y] && !blocked[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<VertexSet> components(const Graph& g) { return components_avoiding(g, VertexFlags{}); }

std::vector<VertexSet> components_within(const Graph& g, const VertexSet& s) {
    VertexFlags blocked;
    VertexFlags inside(s, g.id_bound());
    for (Vertex v : g.vertices())
        if (!inside[v]) blocked.set(v);
    return components_avoiding(g, blocked);
}

bool is_connected(const Graph& g) {
    if (g.num_vertices() == 0) return true;
    return reach(g, g.vertices().front()).size() == g.num_vertices();
}

bool is_connected_subset(const Graph& g, const VertexSet& s) {
    if (s.empty()) return true;
    VertexFlags blocked;
    VertexFlags inside(s, g.id_bound());
    for (Vertex v : g.vertices())
        if (!inside[v]) blocked.set(v);
    return reach_avoiding(g, s.front(), blocked).size() == s.size();
}

VertexSet neighborhood(const Graph& g, const VertexSet& s) {
    VertexFlags inside(s, g.id_bound());
    std::vector<Vertex> out;
    for (Vertex x : s)
        for (Vertex y : g.neighbors(x))
            if (!inside[y]) out.push_back(y);
    return make_set(std::move(out));
}

}  // namespace lowtw
