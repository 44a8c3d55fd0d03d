#include "lowtw/duality.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lowtw {

namespace {

std::vector<VertexSet> sharing(const std::vector<std::vector<Vertex>>& paths, Vertex s, Vertex t) {
    std::map<Vertex, std::vector<std::size_t>> on;
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (Vertex v : paths[i])
            if (v != s && v != t) on[v].push_back(i);
    std::vector<VertexSet> shared(paths.size());
    for (const auto& [v, idx] : on) {
        std::vector<std::size_t> distinct = idx;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (distinct.size() < 2) continue;
        for (std::size_t i : distinct) shared[i].push_back(v);
    }
    return shared;
}

VertexSet minimalize(const Graph& g, Vertex s, Vertex t, VertexSet c) {
    for (std::size_t i = 0; i < c.size();) {
        VertexSet smaller = c;
        smaller.erase(smaller.begin() + static_cast<long>(i));
        if (is_separator(g, s, t, smaller)) c = std::move(smaller);
        else ++i;
    }
    return c;
}

}  // namespace

bool is_separator(const Graph& g, Vertex s, Vertex t, const VertexSet& c) {
    if (contains(c, s) || contains(c, t)) return false;
    VertexFlags blocked(c, g.id_bound());
    return !contains(reach_avoiding(g, s, blocked), t);
}

DualityOutcome duality(const Graph& g, Vertex s, Vertex t, int p, int q) {
    if (p < 1 || q < 1) throw std::invalid_argument("duality needs p, q >= 1");
    if (!is_connected(g)) throw Disconnected("duality needs a connected graph");
    FlowNetwork net = build_network(g, s, t, q);
    FlowSolution sol = min_cost_flow(net);
    DualSolution dual = extract_duals(net, sol);
    if (dual.objective != sol.cost)
        throw ExtractionFailed("strong duality fails: primal " + std::to_string(sol.cost) + ", dual " +
                               std::to_string(dual.objective));
    for (std::int64_t z : dual.z)
        if (z != 0 && z != 1) throw ExtractionFailed("dual z outside {0,1}");

    DualityOutcome out;
    out.flow_cost = sol.cost;
    const std::int64_t budget = 2 * static_cast<std::int64_t>(p) * q;

    std::vector<std::vector<Vertex>> all;
    for (const auto& nodes : decompose_flow(net, sol)) all.push_back(project_path(net, nodes));
    auto shared_all = sharing(all, s, t);
    for (const auto& sh : shared_all) out.total_sharing += static_cast<std::int64_t>(sh.size());

    if (sol.cost <= budget) {
        if (out.total_sharing > 2 * sol.cost) throw ExtractionFailed("path sharing exceeds twice the flow cost");
        std::vector<std::size_t> order(all.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return shared_all[a].size() < shared_all[b].size(); });
        out.kind = DualityOutcome::Kind::Paths;
        for (int i = 0; i < q; ++i) out.family.paths.push_back(all[order[static_cast<std::size_t>(i)]]);
        out.family.shared = sharing(out.family.paths, s, t);
        auto rep = validate_paths(g, s, t, out.family, p);
        if (!rep.ok) throw ExtractionFailed("path family invalid: " + rep.violation);
        return out;
    }

    out.kind = DualityOutcome::Kind::Chain;
    std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(p));
    for (std::size_t i = 0; i < net.middle.size(); ++i) {
        if (dual.z[i] != 1) continue;
        std::int64_t j = dual.y0[i];
        if (j >= 1 && j <= p) layers[static_cast<std::size_t>(j - 1)].push_back(net.middle[i]);
    }
    for (auto& layer : layers) out.chain.sets.push_back(minimalize(g, s, t, make_set(std::move(layer))));
    auto rep = validate_chain(g, s, t, out.chain, 2 * q);
    if (!rep.ok) throw ExtractionFailed("separator chain invalid: " + rep.violation);
    return out;
}

DualityReport validate_chain(const Graph& g, Vertex s, Vertex t, const SeparatorChain& chain, int max_size) {
    auto fail = [](std::string why) { return DualityReport{false, std::move(why)}; };
    const auto& c = chain.sets;
    for (std::size_t j = 0; j < c.size(); ++j) {
        std::string tag = "C_" + std::to_string(j + 1);
        if (c[j].empty()) return fail(tag + " is empty");
        if (!std::is_sorted(c[j].begin(), c[j].end()) ||
            std::adjacent_find(c[j].begin(), c[j].end()) != c[j].end())
            return fail(tag + " is not a sorted set");
        for (Vertex v : c[j])
            if (!g.contains(v)) return fail(tag + " holds a non-vertex");
        if (contains(c[j], s) || contains(c[j], t)) return fail(tag + " contains s or t");
        if (max_size >= 0 && c[j].size() > static_cast<std::size_t>(max_size))
            return fail(tag + " exceeds size " + std::to_string(max_size));
        if (!is_separator(g, s, t, c[j])) return fail(tag + " does not separate s from t");
        for (std::size_t i = 0; i < c[j].size(); ++i) {
            VertexSet smaller = c[j];
            smaller.erase(smaller.begin() + static_cast<long>(i));
            if (is_separator(g, s, t, smaller)) return fail(tag + " is not minimal");
        }
    }
    for (std::size_t j = 0; j < c.size(); ++j)
        for (std::size_t jj = j + 1; jj < c.size(); ++jj)
            if (intersects(c[j], c[jj]))
                return fail("C_" + std::to_string(j + 1) + " and C_" + std::to_string(jj + 1) + " are not disjoint");
    std::vector<VertexSet> from_s(c.size());
    std::vector<VertexSet> from_t(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        VertexFlags blocked(c[j], g.id_bound());
        from_s[j] = reach_avoiding(g, s, blocked);
        from_t[j] = reach_avoiding(g, t, blocked);
    }
    for (std::size_t j = 0; j < c.size(); ++j)
        for (std::size_t jj = j + 1; jj < c.size(); ++jj) {
            if (!is_subset(c[j], from_s[jj]))
                return fail("C_" + std::to_string(j + 1) + " not on the s side of C_" + std::to_string(jj + 1));
            if (!is_subset(c[jj], from_t[j]))
                return fail("C_" + std::to_string(jj + 1) + " not on the t side of C_" + std::to_string(j + 1));
        }
    return {};
}

DualityReport validate_paths(const Graph& g, Vertex s, Vertex t, const PathFamily& family, int p) {
    auto fail = [](std::string why) { return DualityReport{false, std::move(why)}; };
    for (std::size_t i = 0; i < family.paths.size(); ++i) {
        const auto& path = family.paths[i];
        std::string tag = "P_" + std::to_string(i + 1);
        if (path.size() < 2 || path.front() != s || path.back() != t) return fail(tag + " is not an s-t path");
        VertexSet seen = make_set(path);
        if (seen.size() != path.size()) return fail(tag + " repeats a vertex");
        for (std::size_t j = 0; j + 1 < path.size(); ++j)
            if (!g.adjacent(path[j], path[j + 1])) return fail(tag + " uses a non-edge");
    }
    auto shared = sharing(family.paths, s, t);
    for (std::size_t i = 0; i < shared.size(); ++i)
        if (shared[i].size() > 4 * static_cast<std::size_t>(p))
            return fail("P_" + std::to_string(i + 1) + " shares " + std::to_string(shared[i].size()) +
                        " vertices, above 4p");
    return {};
}

}  // namespace lowtw
