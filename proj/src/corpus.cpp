#include "lowtw/corpus.hpp"

#include <algorithm>
#include <array>

namespace lowtw {

namespace {

void need(bool ok, const char* what) {
    if (!ok) throw BadParams(what);
}

}  // namespace

Graph grid_graph(int rows, int cols) {
    need(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1");
    Graph g(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            auto v = static_cast<Vertex>(i * cols + j);
            if (j + 1 < cols) g.add_edge(v, v + 1);
            if (i + 1 < rows) g.add_edge(v, v + static_cast<Vertex>(cols));
        }
    return g;
}

Graph cylinder_graph(int rows, int cols) {
    need(rows >= 1 && cols >= 3, "cylinder needs rows >= 1, cols >= 3");
    Graph g = grid_graph(rows, cols);
    for (int i = 0; i < rows; ++i) g.add_edge(static_cast<Vertex>(i * cols), static_cast<Vertex>(i * cols + cols - 1));
    return g;
}

Graph path_graph(int n) {
    need(n >= 1, "path needs n >= 1");
    Graph g(static_cast<std::size_t>(n));
    for (int i = 0; i + 1 < n; ++i) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
    return g;
}

Graph cycle_graph(int n) {
    need(n >= 3, "cycle needs n >= 3");
    Graph g = path_graph(n);
    g.add_edge(0, static_cast<Vertex>(n - 1));
    return g;
}

Graph random_tree(int n, Rng& rng) {
    need(n >= 1, "tree needs n >= 1");
    Graph g(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i)
        g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(rng.uniform_int(0, i - 1)));
    return g;
}

Graph random_planar_like(int n, Rng& rng) {
    need(n >= 3, "random-planar-like needs n >= 3");
    Graph g(static_cast<std::size_t>(n));
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    // Inner faces; the outer face 0-1-2 is never split.
    std::vector<std::array<Vertex, 3>> faces{{0, 1, 2}};
    for (int v = 3; v < n; ++v) {
        auto f = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(faces.size()) - 1));
        auto [a, b, c] = faces[f];
        const auto x = static_cast<Vertex>(v);
        g.add_edge(x, a);
        g.add_edge(x, b);
        g.add_edge(x, c);
        faces[f] = {a, b, x};
        faces.push_back({b, c, x});
        faces.push_back({a, c, x});
    }
    return g;
}

Graph theta_graph(int arms, int length) {
    need(arms >= 1 && length >= 0, "theta needs arms >= 1, length >= 0");
    need(arms == 1 || length >= 1, "theta with several arms needs length >= 1");
    Graph g(2);
    for (int a = 0; a < arms; ++a) {
        Vertex prev = 0;
        for (int i = 0; i < length; ++i) {
            Vertex v = g.add_vertex();
            g.add_edge(prev, v);
            prev = v;
        }
        g.add_edge(prev, 1);
    }
    return g;
}

Planted planted_grid_path(int rows, int cols, int k, Rng& rng) {
    need(k >= 1 && k <= rows * cols, "planted path needs 1 <= k <= rows * cols");
    Planted p;
    p.g = grid_graph(rows, cols);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<char> used(p.g.id_bound(), 0);
        std::vector<Vertex> walk{static_cast<Vertex>(rng.uniform_int(0, rows * cols - 1))};
        used[walk.back()] = 1;
        while (static_cast<int>(walk.size()) < k) {
            std::vector<Vertex> free;
            for (Vertex w : p.g.neighbors(walk.back()))
                if (!used[w]) free.push_back(w);
            if (free.empty()) break;
            Vertex nxt = free[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(free.size()) - 1))];
            used[nxt] = 1;
            walk.push_back(nxt);
        }
        if (static_cast<int>(walk.size()) == k) {
            p.order = walk;
            p.x = make_set(std::move(walk));
            return p;
        }
    }
    throw BadParams("could not plant a self-avoiding path of the requested length");
}

Planted planted_row_path(int rows, int cols, int row, int k) {
    need(row >= 0 && row < rows && k >= 1 && k <= cols, "row path out of range");
    Planted p;
    p.g = grid_graph(rows, cols);
    for (int j = 0; j < k; ++j) p.order.push_back(static_cast<Vertex>(row * cols + j));
    p.x = make_set(p.order);
    return p;
}

Planted planted_directed_grid(int rows, int cols, int k, int max_weight, Rng& rng) {
    Planted base = planted_grid_path(rows, cols, k, rng);
    std::set<std::pair<Vertex, Vertex>> along;
    for (std::size_t i = 0; i + 1 < base.order.size(); ++i) along.insert({base.order[i], base.order[i + 1]});
    Planted p;
    p.g = Graph(base.g.id_bound());
    for (const auto& [u, v] : base.g.edges()) {
        bool forward = along.count({u, v}) ? true : along.count({v, u}) ? false : rng.uniform_int(0, 1) == 0;
        if (forward) p.g.add_arc(u, v);
        else p.g.add_arc(v, u);
    }
    if (max_weight > 0)
        for (const auto& [u, v] : p.g.arcs()) p.g.set_weight(u, v, Weight(rng.uniform_int(1, max_weight)));
    p.x = base.x;
    p.order = base.order;
    return p;
}

Graph bipartite_directed_grid(int rows, int cols) {
    Graph base = grid_graph(rows, cols);
    Graph g(base.id_bound());
    g.set_directed(true);
    for (const auto& [u, v] : base.edges()) {
        const int cu = static_cast<int>(u) / cols + static_cast<int>(u) % cols;
        if (cu % 2 == 0) g.add_arc(u, v);
        else g.add_arc(v, u);
    }
    return g;
}

bool check_planted(const Planted& p) {
    if (p.x.empty() || make_set(p.order) != p.x) return false;
    for (Vertex v : p.x)
        if (!p.g.contains(v)) return false;
    for (std::size_t i = 0; i + 1 < p.order.size(); ++i)
        if (!p.g.adjacent(p.order[i], p.order[i + 1])) return false;
    return is_connected_subset(p.g, p.x);
}

Graph generate(const std::string& kind, int a, int b, Rng& rng) {
    if (kind == "grid") return grid_graph(a, b);
    if (kind == "cylinder") return cylinder_graph(a, b);
    if (kind == "random-planar-like") return random_planar_like(a, rng);
    if (kind == "path") return path_graph(a);
    if (kind == "tree") return random_tree(a, rng);
    if (kind == "theta") return theta_graph(a, b);
    throw BadParams("unknown generator kind '" + kind + "'");
}

}  // namespace lowtw
