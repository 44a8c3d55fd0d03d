#include "lowtw/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

namespace lowtw {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

bool is_terminal(const FlowNetwork& net, Vertex v) { return v == net.s || v == net.t; }

// Residual arc 2e is arc e forward, 2e+1 its reverse.
struct Residual {
    const FlowNetwork& net;
    std::vector<std::int64_t>& flow;
    std::vector<std::vector<int>> out;

    Residual(const FlowNetwork& n, std::vector<std::int64_t>& f) : net(n), flow(f), out(n.num_nodes) {
        for (std::size_t e = 0; e < n.arcs.size(); ++e) {
            out[n.arcs[e].from].push_back(static_cast<int>(2 * e));
            out[n.arcs[e].to].push_back(static_cast<int>(2 * e + 1));
        }
    }
    int head(int r) const {
        const auto& a = net.arcs[r / 2];
        return r % 2 == 0 ? a.to : a.from;
    }
    std::int64_t cost(int r) const {
        const auto& a = net.arcs[r / 2];
        return r % 2 == 0 ? a.cost : -a.cost;
    }
    std::int64_t room(int r) const {
        const auto& a = net.arcs[r / 2];
        return r % 2 == 0 ? a.cap - flow[r / 2] : flow[r / 2];
    }
    // Arcs of infinite capacity never lose their forward residual.
    bool open_unbounded(int r) const {
        const auto& a = net.arcs[r / 2];
        if (r % 2 == 0) return a.infinite || flow[r / 2] < a.cap;
        return flow[r / 2] > 0;
    }
    void push(int r, std::int64_t amount) {
        if (r % 2 == 0) flow[r / 2] += amount;
        else flow[r / 2] -= amount;
    }
};

}  // namespace

int FlowNetwork::out_node(Vertex v, int copy) const {
    if (v == s) return 0;
    if (v == t) return 1;
    int i = index_of[v];
    return copy == 0 ? v0_out(i) : v1_out(i);
}

int FlowNetwork::in_node(Vertex v, int copy) const {
    if (v == s) return 0;
    if (v == t) return 1;
    int i = index_of[v];
    return copy == 0 ? v0_in(i) : v1_in(i);
}

Vertex FlowNetwork::vertex_of(int node) const {
    if (node == 0) return s;
    if (node == 1) return t;
    return middle[static_cast<std::size_t>((node - 2) / 4)];
}

FlowNetwork build_network(const Graph& g, Vertex s, Vertex t, int q) {
    if (!g.contains(s) || !g.contains(t)) throw NotAVertex("network terminal is not a vertex");
    if (s == t) throw std::invalid_argument("network needs s != t");
    if (q < 1) throw std::invalid_argument("network needs q >= 1");
    FlowNetwork net;
    net.s = s;
    net.t = t;
    net.supply = 2 * static_cast<std::int64_t>(q);
    net.cap_inf = net.supply;
    net.index_of.assign(g.id_bound(), -1);
    for (Vertex v : g.vertices()) {
        if (v == s || v == t) continue;
        net.index_of[v] = static_cast<int>(net.middle.size());
        net.middle.push_back(v);
    }
    net.num_nodes = 2 + 4 * static_cast<int>(net.middle.size());
    for (std::size_t i = 0; i < net.middle.size(); ++i) {
        int ii = static_cast<int>(i);
        net.arcs.push_back({FlowNetwork::v0_in(ii), FlowNetwork::v0_out(ii), 1, 0, false});
        net.arcs.push_back({FlowNetwork::v1_in(ii), FlowNetwork::v1_out(ii), net.cap_inf, 1, true});
    }
    auto copies = [&](Vertex v) { return is_terminal(net, v) ? 1 : 2; };
    for (const auto& [u, v] : g.edges()) {
        for (int dir = 0; dir < 2; ++dir) {
            Vertex a = dir == 0 ? u : v;
            Vertex b = dir == 0 ? v : u;
            for (int ca = 0; ca < copies(a); ++ca)
                for (int cb = 0; cb < copies(b); ++cb)
                    net.arcs.push_back({net.out_node(a, ca), net.in_node(b, cb), net.cap_inf, 0, true});
        }
    }
    return net;
}

FlowSolution min_cost_flow(const FlowNetwork& net) {
    FlowSolution sol;
    sol.flow.assign(net.arcs.size(), 0);
    Residual res(net, sol.flow);
    const int n = net.num_nodes;
    std::vector<std::int64_t> h(n, 0);
    std::vector<std::int64_t> d(n);
    std::vector<int> via(n);
    std::vector<char> done(n);
    std::int64_t left = net.supply;
    using Item = std::pair<std::int64_t, int>;
    while (left > 0) {
        std::fill(d.begin(), d.end(), kInf);
        std::fill(via.begin(), via.end(), -1);
        std::fill(done.begin(), done.end(), 0);
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        d[0] = 0;
        pq.push({0, 0});
        while (!pq.empty()) {
            auto [du, u] = pq.top();
            pq.pop();
            if (done[u]) continue;
            done[u] = 1;
            if (u == 1) break;
            for (int r : res.out[u]) {
                if (res.room(r) <= 0) continue;
                int w = res.head(r);
                std::int64_t nd = du + res.cost(r) + h[u] - h[w];
                if (nd < d[w]) {
                    d[w] = nd;
                    via[w] = r;
                    pq.push({nd, w});
                }
            }
        }
        if (!done[1]) throw Infeasible("network cannot carry the required flow");
        const std::int64_t dt = d[1];
        for (int v = 0; v < n; ++v) h[v] += std::min(done[v] ? d[v] : dt, dt);
        std::int64_t push = left;
        for (int v = 1; v != 0; v = res.head(via[v] ^ 1)) push = std::min(push, res.room(via[v]));
        for (int v = 1; v != 0; v = res.head(via[v] ^ 1)) res.push(via[v], push);
        left -= push;
    }
    for (std::size_t e = 0; e < net.arcs.size(); ++e) sol.cost += sol.flow[e] * net.arcs[e].cost;

    // Queue-based Bellman-Ford; the optimum leaves no negative cycle.
    std::vector<std::int64_t>& pi = sol.potential;
    pi.assign(n, kInf);
    std::vector<char> queued(n, 0);
    std::vector<int> relaxed(n, 0);
    std::deque<int> queue{0};
    pi[0] = 0;
    queued[0] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        queued[u] = 0;
        for (int r : res.out[u]) {
            if (!res.open_unbounded(r)) continue;
            int w = res.head(r);
            std::int64_t nd = pi[u] + res.cost(r);
            if (nd < pi[w]) {
                pi[w] = nd;
                if (++relaxed[w] > n + 1) throw std::logic_error("negative residual cycle after min-cost flow");
                if (!queued[w]) {
                    queued[w] = 1;
                    queue.push_back(w);
                }
            }
        }
    }
    return sol;
}

DualSolution extract_duals(const FlowNetwork& net, const FlowSolution& sol) {
    DualSolution dual;
    const auto& pi = sol.potential;
    std::size_t m = net.middle.size();
    dual.y0.resize(m);
    dual.y1.resize(m);
    dual.z.resize(m);
    std::int64_t zsum = 0;
    for (std::size_t i = 0; i < m; ++i) {
        int ii = static_cast<int>(i);
        dual.y0[i] = pi[FlowNetwork::v0_out(ii)];
        dual.y1[i] = pi[FlowNetwork::v1_out(ii)];
        dual.z[i] = std::max<std::int64_t>(0, pi[FlowNetwork::v0_out(ii)] - pi[FlowNetwork::v0_in(ii)]);
        zsum += dual.z[i];
    }
    dual.yt = pi[1];
    dual.objective = net.supply * (dual.yt - pi[0]) - zsum;
    return dual;
}

std::vector<std::vector<int>> decompose_flow(const FlowNetwork& net, const FlowSolution& sol) {
    std::vector<std::int64_t> left = sol.flow;
    std::vector<std::vector<int>> out(net.num_nodes);
    for (std::size_t e = 0; e < net.arcs.size(); ++e) out[net.arcs[e].from].push_back(static_cast<int>(e));
    std::vector<std::vector<int>> paths;
    std::vector<int> pos(net.num_nodes, -1);
    for (std::int64_t unit = 0; unit < net.supply; ++unit) {
        std::vector<int> nodes{0};
        std::vector<int> used;
        pos[0] = 0;
        int u = 0;
        while (u != 1) {
            int next_arc = -1;
            for (int e : out[u])
                if (left[e] > 0) {
                    next_arc = e;
                    break;
                }
            if (next_arc < 0) throw std::logic_error("flow decomposition stuck");
            int w = net.arcs[next_arc].to;
            if (pos[w] >= 0) {
                // Cancel the circulation closed by this arc.
                --left[next_arc];
                for (std::size_t j = static_cast<std::size_t>(pos[w]); j < used.size(); ++j) --left[used[j]];
                for (std::size_t j = static_cast<std::size_t>(pos[w]) + 1; j < nodes.size(); ++j) pos[nodes[j]] = -1;
                nodes.resize(static_cast<std::size_t>(pos[w]) + 1);
                used.resize(static_cast<std::size_t>(pos[w]));
                u = w;
                continue;
            }
            used.push_back(next_arc);
            pos[w] = static_cast<int>(nodes.size());
            nodes.push_back(w);
            u = w;
        }
        for (int e : used) --left[e];
        for (int v : nodes) pos[v] = -1;
        paths.push_back(std::move(nodes));
    }
    return paths;
}

std::vector<Vertex> project_path(const FlowNetwork& net, const std::vector<int>& nodes) {
    std::vector<Vertex> walk;
    for (int x : nodes) {
        Vertex v = net.vertex_of(x);
        if (walk.empty() || walk.back() != v) walk.push_back(v);
    }
    std::vector<Vertex> path;
    std::vector<std::pair<Vertex, std::size_t>> where;
    auto find = [&](Vertex v) -> long {
        for (const auto& [x, i] : where)
            if (x == v) return static_cast<long>(i);
        return -1;
    };
    for (Vertex v : walk) {
        long at = find(v);
        if (at >= 0) {
            // Splice out the loop back to the earlier visit.
            path.resize(static_cast<std::size_t>(at) + 1);
            where.erase(std::remove_if(where.begin(), where.end(),
                                       [&](const auto& p) { return p.second > static_cast<std::size_t>(at); }),
                        where.end());
            continue;
        }
        where.push_back({v, path.size()});
        path.push_back(v);
    }
    return path;
}

}  // namespace lowtw
