#include "lowtw/tree_decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lowtw/graph_io.hpp"

namespace lowtw {

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& n : nodes) w = std::max(w, static_cast<int>(n.bag.size()) - 1);
    return w;
}

int TreeDecomposition::add_node(VertexSet bag, int parent) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back(Node{std::move(bag), parent, {}});
    if (parent >= 0) nodes[parent].children.push_back(id);
    else if (root < 0) root = id;
    return id;
}

int TreeDecomposition::attach(int at, const TreeDecomposition& child) {
    if (child.empty()) return -1;
    int offset = static_cast<int>(nodes.size());
    for (const auto& n : child.nodes) {
        Node c = n;
        c.parent = n.parent < 0 ? at : n.parent + offset;
        for (int& ch : c.children) ch += offset;
        nodes.push_back(std::move(c));
    }
    int r = child.root + offset;
    if (at >= 0) nodes[at].children.push_back(r);
    else if (root < 0) root = r;
    return r;
}

TreeDecomposition TreeDecomposition::restricted(const VertexFlags& keep) const {
    TreeDecomposition out = *this;
    for (auto& n : out.nodes) {
        VertexSet b;
        for (Vertex v : n.bag)
            if (keep[v]) b.push_back(v);
        n.bag = std::move(b);
    }
    return out;
}

VertexSet TreeDecomposition::all_vertices() const {
    std::vector<Vertex> all;
    for (const auto& n : nodes) all.insert(all.end(), n.bag.begin(), n.bag.end());
    return make_set(std::move(all));
}

TreeDecomposition TreeDecomposition::single_bag(VertexSet bag) {
    TreeDecomposition td;
    td.add_node(std::move(bag), -1);
    return td;
}

TdReport validate(const Graph& g, const TreeDecomposition& td) {
    auto fail = [](std::string s) { return TdReport{false, std::move(s)}; };
    const int n = static_cast<int>(td.nodes.size());
    if (n == 0) {
        if (g.num_vertices() == 0) return {};
        return fail("(T1) empty decomposition of a nonempty graph");
    }
    if (td.root < 0 || td.root >= n || td.nodes[td.root].parent != -1) return fail("tree: bad root");
    std::vector<char> seen(n, 0);
    std::vector<int> stack{td.root};
    seen[td.root] = 1;
    int count = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        ++count;
        for (int c : td.nodes[x].children) {
            if (c < 0 || c >= n || td.nodes[c].parent != x) return fail("tree: inconsistent parent/child at node " + std::to_string(x));
            if (seen[c]) return fail("tree: node " + std::to_string(c) + " reached twice");
            seen[c] = 1;
            stack.push_back(c);
        }
    }
    if (count != n) return fail("tree: " + std::to_string(n - count) + " nodes unreachable from root");
    for (int x = 0; x < n; ++x) {
        const auto& b = td.nodes[x].bag;
        if (!std::is_sorted(b.begin(), b.end()) || std::adjacent_find(b.begin(), b.end()) != b.end())
            return fail("bag " + std::to_string(x) + " not a sorted set");
        for (Vertex v : b)
            if (!g.contains(v)) return fail("bag " + std::to_string(x) + " holds non-vertex " + std::to_string(v));
    }
    // tops[v] counts nodes holding v whose parent does not; T3 iff exactly one.
    std::vector<int> holders(g.id_bound(), 0);
    std::vector<int> tops(g.id_bound(), 0);
    for (int x = 0; x < n; ++x) {
        const auto& b = td.nodes[x].bag;
        const int p = td.nodes[x].parent;
        for (Vertex v : b) {
            ++holders[v];
            if (p < 0 || !contains(td.nodes[p].bag, v)) ++tops[v];
        }
    }
    for (Vertex v : g.vertices())
        if (holders[v] == 0) return fail("(T1) vertex " + std::to_string(v) + " in no bag");
    std::vector<std::vector<int>> bags_of(g.id_bound());
    for (int x = 0; x < n; ++x)
        for (Vertex v : td.nodes[x].bag) bags_of[v].push_back(x);
    for (const auto& [u, v] : g.edges()) {
        const auto& a = bags_of[u].size() <= bags_of[v].size() ? bags_of[u] : bags_of[v];
        Vertex other = bags_of[u].size() <= bags_of[v].size() ? v : u;
        bool covered = std::any_of(a.begin(), a.end(), [&](int x) { return contains(td.nodes[x].bag, other); });
        if (!covered) return fail("(T2) edge " + std::to_string(u) + "-" + std::to_string(v) + " in no bag");
    }
    for (Vertex v : g.vertices())
        if (tops[v] != 1) return fail("(T3) bags holding vertex " + std::to_string(v) + " are disconnected");
    return {};
}

VertexSet balanced_separator(const Graph& g, const TreeDecomposition& td, const std::vector<double>& w) {
    auto weight = [&](Vertex v) { return v < w.size() ? w[v] : 0.0; };
    double total = 0;
    for (Vertex v : g.vertices()) total += weight(v);
    const int n = static_cast<int>(td.nodes.size());
    if (n == 0) return {};
    int x = td.root;
    for (int step = 0; step <= n; ++step) {
        const auto& bag = td.nodes[x].bag;
        auto comps = components_avoiding(g, VertexFlags(bag, g.id_bound()));
        const VertexSet* heavy = nullptr;
        for (const auto& c : comps) {
            double cw = 0;
            for (Vertex v : c) cw += weight(v);
            if (2 * cw > total) {
                heavy = &c;
                break;
            }
        }
        if (!heavy) return bag;
        // Step towards the nearest node holding a vertex of the heavy side.
        Vertex u = heavy->front();
        std::vector<int> from(n, -2);
        std::queue<int> q;
        q.push(x);
        from[x] = -1;
        int hit = -1;
        while (!q.empty() && hit < 0) {
            int y = q.front();
            q.pop();
            if (contains(td.nodes[y].bag, u)) {
                hit = y;
                break;
            }
            auto visit = [&](int z) {
                if (z >= 0 && from[z] == -2) {
                    from[z] = y;
                    q.push(z);
                }
            };
            visit(td.nodes[y].parent);
            for (int c : td.nodes[y].children) visit(c);
        }
        if (hit < 0) throw std::logic_error("balanced_separator: decomposition does not cover the graph");
        while (from[hit] != x) hit = from[hit];
        x = hit;
    }
    throw std::logic_error("balanced_separator: no centroid bag (invalid decomposition?)");
}

namespace {

// Dense symmetric adjacency over compacted indices.
class BitGraph {
public:
    explicit BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}
    bool test(std::size_t u, std::size_t v) const { return (row(u)[v >> 6] >> (v & 63)) & 1u; }
    void set(std::size_t u, std::size_t v) {
        row(u)[v >> 6] |= std::uint64_t{1} << (v & 63);
        row(v)[u >> 6] |= std::uint64_t{1} << (u & 63);
    }
    void clear_vertex(std::size_t v, const std::vector<std::size_t>& nbrs) {
        for (auto u : nbrs) row(u)[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        std::fill(row(v), row(v) + words_, 0);
    }
    std::size_t common(std::size_t u, std::size_t v) const {
        std::size_t c = 0;
        const auto* a = row(u);
        const auto* b = row(v);
        for (std::size_t i = 0; i < words_; ++i) c += std::popcount(a[i] & b[i]);
        return c;
    }
    std::uint64_t* row(std::size_t u) { return bits_.data() + u * words_; }
    const std::uint64_t* row(std::size_t u) const { return bits_.data() + u * words_; }

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

// Drops nodes whose bag is contained in the parent's bag.
TreeDecomposition compress(const TreeDecomposition& td) {
    if (td.empty()) return td;
    const int n = static_cast<int>(td.nodes.size());
    std::vector<int> keep_parent(n, -1);  // new parent in old indices
    std::vector<char> dropped(n, 0);
    std::vector<int> order;
    std::vector<int> stack{td.root};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (int c : td.nodes[x].children) stack.push_back(c);
    }
    for (int x : order) {
        int p = td.nodes[x].parent;
        if (p < 0) continue;
        int eff = dropped[p] ? keep_parent[p] : p;
        if (is_subset(td.nodes[x].bag, td.nodes[eff].bag)) {
            dropped[x] = 1;
            keep_parent[x] = eff;
        } else {
            keep_parent[x] = eff;
        }
    }
    // A dropped node's parent may itself be a larger bag that is dropped into
    // an ancestor; keep_parent already points at a kept node by construction.
    TreeDecomposition out;
    std::vector<int> index(n, -1);
    for (int x : order) {
        if (dropped[x]) continue;
        int p = x == td.root ? -1 : index[keep_parent[x]];
        index[x] = out.add_node(td.nodes[x].bag, p);
    }
    return out;
}

}  // namespace

namespace {

std::optional<TreeDecomposition> eliminate(const Graph& g, Heuristic h, int width_budget, const std::vector<std::size_t>* rank);

// Vertex ranks in BFS order from the far end of a double sweep.
std::vector<std::size_t> sweep_rank(const Graph& g) {
    const VertexSet verts = g.vertices();
    std::vector<std::size_t> rank(verts.size(), 0);
    if (verts.empty()) return rank;
    std::vector<std::size_t> index(g.id_bound(), 0);
    for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = i;
    auto bfs = [&](Vertex s, std::vector<Vertex>& order) {
        std::vector<char> seen(g.id_bound(), 0);
        order.clear();
        for (Vertex root : verts) {
            Vertex from = order.empty() ? s : root;
            if (seen[from]) continue;
            std::queue<Vertex> q;
            q.push(from);
            seen[from] = 1;
            while (!q.empty()) {
                Vertex u = q.front();
                q.pop();
                order.push_back(u);
                for (Vertex w : g.neighbors(u))
                    if (!seen[w]) {
                        seen[w] = 1;
                        q.push(w);
                    }
            }
        }
    };
    std::vector<Vertex> order;
    bfs(verts.front(), order);
    bfs(order.back(), order);
    for (std::size_t i = 0; i < order.size(); ++i) rank[index[order[i]]] = i;
    return rank;
}

// Largest minimum degree met while peeling minimum-degree vertices.
int degeneracy(const Graph& g) {
    std::vector<std::size_t> deg(g.id_bound(), 0);
    std::set<std::pair<std::size_t, Vertex>> order;
    for (Vertex v : g.vertices()) {
        deg[v] = g.degree(v);
        order.insert({deg[v], v});
    }
    std::vector<char> gone(g.id_bound(), 0);
    std::size_t best = 0;
    while (!order.empty()) {
        auto [d, v] = *order.begin();
        order.erase(order.begin());
        best = std::max(best, d);
        gone[v] = 1;
        for (Vertex y : g.neighbors(v)) {
            if (gone[y]) continue;
            order.erase({deg[y], y});
            order.insert({--deg[y], y});
        }
    }
    return static_cast<int>(best);
}

}  // namespace

std::optional<TreeDecomposition> decompose_by_elimination(const Graph& g, Heuristic h, int width_budget) {
    if (h == Heuristic::Sweep) {
        const std::vector<std::size_t> rank = sweep_rank(g);
        return eliminate(g, h, width_budget, &rank);
    }
    return eliminate(g, h, width_budget, nullptr);
}

namespace {

std::optional<TreeDecomposition> eliminate(const Graph& g, Heuristic h, int width_budget, const std::vector<std::size_t>* rank) {
    const VertexSet verts = g.vertices();
    const std::size_t n = verts.size();
    if (n == 0) return TreeDecomposition{};
    std::vector<std::size_t> index(g.id_bound(), 0);
    for (std::size_t i = 0; i < n; ++i) index[verts[i]] = i;
    BitGraph adj(n);
    std::vector<std::vector<std::size_t>> nb(n);
    for (const auto& [u, v] : g.edges()) {
        adj.set(index[u], index[v]);
        nb[index[u]].push_back(index[v]);
        nb[index[v]].push_back(index[u]);
    }
    std::vector<char> alive(n, 1);
    std::vector<long long> fill(n, 0);
    auto compute_fill = [&](std::size_t v) {
        long long d = static_cast<long long>(nb[v].size());
        long long inner = 0;
        for (auto u : nb[v]) inner += static_cast<long long>(adj.common(u, v));
        fill[v] = d * (d - 1) / 2 - inner / 2;
    };
    if (h == Heuristic::MinFill)
        for (std::size_t v = 0; v < n; ++v) compute_fill(v);

    std::vector<std::size_t> order;
    std::vector<std::vector<std::size_t>> higher(n);
    std::vector<long long> stamp(n, -1);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            if (best == n) {
                best = v;
                continue;
            }
            if (h == Heuristic::Sweep) {
                if ((*rank)[v] < (*rank)[best]) best = v;
                continue;
            }
            const bool earlier = rank && (*rank)[v] < (*rank)[best];
            bool better = h == Heuristic::MinFill
                              ? (fill[v] < fill[best] ||
                                 (fill[v] == fill[best] &&
                                  (nb[v].size() < nb[best].size() || (nb[v].size() == nb[best].size() && earlier))))
                              : (nb[v].size() < nb[best].size() || (nb[v].size() == nb[best].size() && earlier));
            if (better) best = v;
        }
        const std::size_t v = best;
        if (width_budget >= 0 && static_cast<int>(nb[v].size()) > width_budget) return std::nullopt;
        higher[v] = nb[v];
        order.push_back(v);
        std::vector<std::size_t> touched = nb[v];
        for (std::size_t i = 0; i < nb[v].size(); ++i)
            for (std::size_t j = i + 1; j < nb[v].size(); ++j) {
                auto a = nb[v][i];
                auto b = nb[v][j];
                if (!adj.test(a, b)) {
                    adj.set(a, b);
                    nb[a].push_back(b);
                    nb[b].push_back(a);
                }
            }
        for (auto u : nb[v]) {
            auto& l = nb[u];
            l.erase(std::find(l.begin(), l.end(), v));
        }
        adj.clear_vertex(v, nb[v]);
        alive[v] = 0;
        if (h == Heuristic::MinFill) {
            std::vector<std::size_t> redo;
            for (auto u : touched) {
                if (stamp[u] != static_cast<long long>(step)) {
                    stamp[u] = static_cast<long long>(step);
                    redo.push_back(u);
                }
                for (auto y : nb[u])
                    if (stamp[y] != static_cast<long long>(step)) {
                        stamp[y] = static_cast<long long>(step);
                        redo.push_back(y);
                    }
            }
            for (auto u : redo) compute_fill(u);
        }
        nb[v].clear();
    }
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    // Parent of v's bag: the earliest-eliminated vertex among its higher
    // neighbours. Roots of separate components hang below the last root.
    TreeDecomposition raw;
    std::vector<int> node_of(n, -1);
    std::vector<std::size_t> parent_of(n, n);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t p = n;
        for (auto u : higher[v])
            if (p == n || pos[u] < pos[p]) p = u;
        parent_of[v] = p;
    }
    std::size_t top = order.back();
    raw.nodes.resize(n);
    for (std::size_t i = n; i-- > 0;) {
        std::size_t v = order[i];
        std::vector<Vertex> bag{verts[v]};
        for (auto u : higher[v]) bag.push_back(verts[u]);
        raw.nodes[i].bag = make_set(std::move(bag));
        node_of[v] = static_cast<int>(i);
    }
    raw.root = static_cast<int>(pos[top]);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t v = order[i];
        if (v == top) continue;
        std::size_t p = parent_of[v] == n ? top : parent_of[v];
        raw.nodes[i].parent = node_of[p];
        raw.nodes[node_of[p]].children.push_back(static_cast<int>(i));
    }
    return compress(raw);
}

}  // namespace

TreeDecomposition decompose(const Graph& g, const DecomposeOptions& opt) {
    const int floor = degeneracy(g);
    std::optional<TreeDecomposition> best;
    auto keep = [&](std::optional<TreeDecomposition> td) {
        if (td && (!best || td->width() < best->width())) best = std::move(td);
    };
    // No decomposition is narrower than the degeneracy.
    auto settled = [&] { return best && best->width() <= floor; };
    const bool fill = g.num_vertices() <= opt.min_fill_max_vertices;
    if (fill) keep(eliminate(g, Heuristic::MinFill, opt.min_fill_budget, nullptr));
    if (!settled()) keep(eliminate(g, Heuristic::MinDegree, -1, nullptr));
    if (settled()) return std::move(*best);
    const std::vector<std::size_t> rank = sweep_rank(g);
    if (fill) keep(eliminate(g, Heuristic::MinFill, opt.min_fill_budget, &rank));
    if (!settled()) keep(eliminate(g, Heuristic::MinDegree, -1, &rank));
    if (!settled()) keep(eliminate(g, Heuristic::Sweep, -1, &rank));
    return std::move(*best);
}

TreeDecomposition decompose_bounded_radius(const Graph& g, const VertexSet& ghosts, Vertex root) {
    (void)ghosts;
    (void)root;
    return decompose(g);
}

std::vector<VertexSet> baker_layers(const Graph& g, Vertex root, int ell) {
    if (ell < 1) throw std::invalid_argument("baker_layers: ell must be positive");
    std::vector<int> layer(g.id_bound(), -1);
    std::queue<Vertex> q;
    layer[root] = 0;
    q.push(root);
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex y : g.neighbors(u))
            if (layer[y] < 0) {
                layer[y] = layer[u] + 1;
                q.push(y);
            }
    }
    std::vector<VertexSet> out(static_cast<std::size_t>(ell));
    for (Vertex v : g.vertices()) {
        if (layer[v] < 0) throw std::invalid_argument("baker_layers: graph not connected");
        out[static_cast<std::size_t>(layer[v] % ell)].push_back(v);
    }
    return out;
}

void write_pace_td(std::ostream& out, const TreeDecomposition& td, std::size_t n_vertices) {
    std::vector<int> order;
    std::vector<int> number(td.nodes.size(), 0);
    if (!td.empty()) {
        std::queue<int> q;
        q.push(td.root);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            number[x] = static_cast<int>(order.size()) + 1;
            order.push_back(x);
            for (int c : td.nodes[x].children) q.push(c);
        }
    }
    out << "s td " << order.size() << ' ' << (td.width() + 1) << ' ' << n_vertices << '\n';
    for (int x : order) {
        out << "b " << number[x];
        for (Vertex v : td.nodes[x].bag) out << ' ' << (v + 1);
        out << '\n';
    }
    for (int x : order)
        if (td.nodes[x].parent >= 0) out << number[td.nodes[x].parent] << ' ' << number[x] << '\n';
}

TreeDecomposition read_pace_td(std::istream& in) {
    std::string line;
    long long nbags = -1;
    std::vector<VertexSet> bags;
    std::vector<std::vector<int>> adj;
    std::size_t edges = 0;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok) || tok == "c") continue;
        if (tok == "s") {
            std::string kind;
            long long width1 = 0, n = 0;
            if (!(ss >> kind >> nbags >> width1 >> n) || kind != "td" || nbags < 0)
                throw ParseError("bad .td solution line");
            bags.assign(static_cast<std::size_t>(nbags), {});
            adj.assign(static_cast<std::size_t>(nbags), {});
            continue;
        }
        if (nbags < 0) throw ParseError(".td content before the s-line");
        if (tok == "b") {
            long long i = 0;
            if (!(ss >> i) || i < 1 || i > nbags) throw ParseError("bad bag index in .td");
            std::vector<Vertex> b;
            long long v = 0;
            while (ss >> v) {
                if (v < 1) throw ParseError("bad vertex id in .td bag");
                b.push_back(static_cast<Vertex>(v - 1));
            }
            if (!ss.eof()) throw ParseError("bad token in .td bag line");
            bags[static_cast<std::size_t>(i - 1)] = make_set(std::move(b));
            continue;
        }
        long long a = 0, b = 0;
        std::istringstream es(line);
        if (!(es >> a >> b) || a < 1 || b < 1 || a > nbags || b > nbags || a == b)
            throw ParseError("bad tree edge line in .td: '" + line + "'");
        adj[static_cast<std::size_t>(a - 1)].push_back(static_cast<int>(b - 1));
        adj[static_cast<std::size_t>(b - 1)].push_back(static_cast<int>(a - 1));
        ++edges;
    }
    if (nbags < 0) throw ParseError("missing .td s-line");
    TreeDecomposition td;
    if (nbags == 0) return td;
    if (edges + 1 != static_cast<std::size_t>(nbags)) throw ParseError(".td tree has wrong edge count");
    std::vector<int> index(static_cast<std::size_t>(nbags), -1);
    std::queue<int> q;
    q.push(0);
    index[0] = td.add_node(bags[0], -1);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : adj[static_cast<std::size_t>(x)]) {
            if (index[static_cast<std::size_t>(y)] >= 0) continue;
            index[static_cast<std::size_t>(y)] = td.add_node(bags[static_cast<std::size_t>(y)], index[static_cast<std::size_t>(x)]);
            q.push(y);
        }
    }
    if (td.nodes.size() != static_cast<std::size_t>(nbags)) throw ParseError(".td tree is disconnected");
    return td;
}

TreeDecomposition read_pace_td_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open .td file '" + path + "'");
    return read_pace_td(in);
}

}  // namespace lowtw
