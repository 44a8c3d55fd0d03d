#include "lowtw/pattern_cover.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "lowtw/clustering.hpp"
#include "lowtw/duality.hpp"

namespace lowtw {

namespace detail {

std::vector<Vertex> lift_path(const Graph& g, const VertexFlags& ghosts, const std::vector<Vertex>& path) {
    std::vector<Vertex> walk;
    for (std::size_t j = 0; j < path.size(); ++j) {
        if (j > 0 && !g.adjacent(path[j - 1], path[j])) {
            std::optional<Vertex> via;
            for (Vertex w : g.neighbors(path[j - 1]))
                if (ghosts[w] && g.adjacent(w, path[j])) {
                    via = w;
                    break;
                }
            if (!via) throw InvariantViolation("torso edge without a common ghost neighbour");
            walk.push_back(*via);
        }
        walk.push_back(path[j]);
    }
    std::vector<Vertex> out;
    std::map<Vertex, std::size_t> at;
    for (Vertex v : walk) {
        auto it = at.find(v);
        if (it == at.end()) {
            at[v] = out.size();
            out.push_back(v);
            continue;
        }
        const std::size_t keep = it->second + 1;
        for (std::size_t j = keep; j < out.size(); ++j) at.erase(out[j]);
        out.resize(keep);
    }
    return out;
}

VertexSet intersect_contraction_set(const Graph& island, const VertexFlags& ghosts, Vertex z, std::int64_t d) {
    auto dz = ghost_distances(island, ghosts, z);
    const std::int64_t lim = std::max<std::int64_t>(d, 1);
    VertexSet s;
    for (Vertex u : island.vertices()) {
        if (dz[u] == kUnreachable) continue;
        if (ghosts[u] ? dz[u] < lim - 1 : dz[u] < lim) s.push_back(u);
    }
    return s;
}

std::pair<Vertex, int> island_center(const Graph& island, const VertexFlags& ghosts) {
    std::optional<Vertex> best;
    int best_ecc = std::numeric_limits<int>::max();
    for (Vertex v : island.vertices()) {
        if (ghosts[v]) continue;
        auto d = ghost_distances(island, ghosts, v);
        int ecc = 0;
        for (Vertex u : island.vertices()) ecc = std::max(ecc, d[u]);
        if (ecc < best_ecc) {
            best_ecc = ecc;
            best = v;
        }
    }
    if (!best) throw InvariantViolation("island without a non-ghost vertex");
    return {*best, best_ecc};
}

std::vector<Segment> path_segments(const std::vector<Vertex>& path, const VertexFlags& light, const VertexFlags& ghosts,
                                   const VertexSet& pub) {
    std::size_t v0 = 0;
    for (std::size_t j = 0; j < path.size(); ++j)
        if (light[path[j]]) v0 = j;
    std::vector<std::size_t> cuts{v0};
    for (std::size_t j = v0 + 1; j + 1 < path.size(); ++j)
        if (contains(pub, path[j])) cuts.push_back(j);
    if (path.size() - 1 > v0) cuts.push_back(path.size() - 1);
    std::vector<Segment> out;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        Segment s{path[cuts[c]], {}, std::nullopt};
        for (std::size_t j = cuts[c] + 1; j < cuts[c + 1]; ++j) {
            s.interior.push_back(path[j]);
            if (!s.ghost && ghosts[path[j]]) s.ghost = path[j];
        }
        out.push_back(std::move(s));
    }
    return out;
}

int balanced_index(const Graph& g, Vertex root, const std::vector<VertexSet>& chain, const VertexSet& x,
                   const VertexSet& light, double beta) {
    const VertexSet xl = set_difference(x, light);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        VertexSet in = reach_avoiding(g, root, VertexFlags(chain[i], g.id_bound()));
        const auto a = static_cast<double>(set_intersection(xl, in).size());
        const auto on = static_cast<double>(set_intersection(xl, chain[i]).size());
        const auto b = static_cast<double>(xl.size()) - a - on;
        const auto c = static_cast<double>(set_intersection(x, chain[i]).size());
        if (beta * c <= std::min(a, b) + 1e-9) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace detail

namespace {

struct Part {
    VertexSet A;
    TreeDecomposition td;
};

// Unwinds a trial whose subcase made no progress.
struct TrialAborted {
    std::string reason;
};

VertexFlags flags_of(const VertexSet& s, const Graph& g) { return VertexFlags(s, g.id_bound()); }

VertexSet restrict_to(const VertexSet& s, const Graph& g) {
    VertexSet out;
    for (Vertex v : s)
        if (g.contains(v)) out.push_back(v);
    return out;
}

bool has_free_vertex(const Instance& I) {
    VertexFlags used(set_union(I.terminals(), I.ghosts), I.g.id_bound());
    for (Vertex v : I.g.vertices())
        if (!used[v]) return true;
    return false;
}

Part base_part(const Instance& I) {
    Part p;
    p.A = I.terminals();
    p.td = TreeDecomposition::single_bag(p.A);
    return p;
}

double p_lg_p(std::int64_t p) { return p <= 1 ? 0.0 : static_cast<double>(p) * std::log2(static_cast<double>(p)); }

double binomial(std::size_t n, std::size_t a) {
    double b = 1.0;
    for (std::size_t i = 0; i < a; ++i) b = b * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return b;
}

std::string pair_text(std::int64_t lhs, std::int64_t rhs) { return std::to_string(lhs) + " vs " + std::to_string(rhs); }

VertexSet far_set(const Instance& I, const VertexSet& x, const Constants& c) {
    auto dist = ghost_distances(I.g, VertexFlags(I.ghosts, I.g.id_bound()), I.root);
    VertexSet out;
    for (Vertex u : x)
        if (I.g.contains(u) && static_cast<double>(dist[u]) > c.far_threshold()) out.push_back(u);
    return out;
}

bool progresses(const Instance& parent, const Instance& child) {
    const auto gp = graph_potential(parent);
    const auto gc = graph_potential(child);
    return gc < gp || (gc == gp && child.g.num_vertices() < parent.g.num_vertices());
}

// Lexicographic (Gamma, |V|) must drop from parent to child.
void check_progress(const Instance& parent, const Instance& child, const char* where) {
    if (progresses(parent, child)) return;
    const auto gp = graph_potential(parent);
    const auto gc = graph_potential(child);
    throw InvariantViolation(std::string(where) + ": termination measure did not decrease (Gamma " + pair_text(gc, gp) +
                             ", |V| " + pair_text(static_cast<std::int64_t>(child.g.num_vertices()),
                                                  static_cast<std::int64_t>(parent.g.num_vertices())) +
                             ")");
}

struct Run {
    const Constants& c;
    DecisionSource& src;
    const DebugOptions* dbg;
    DebugReport* report;
    std::vector<NodeSummary>* nodes;

    bool steer(const std::optional<VertexSet>& x) const { return dbg != nullptr && dbg->steer && x.has_value(); }
    void law(const std::string& name, bool ok, std::string detail) {
        if (report) report->checks.push_back({name, ok, std::move(detail)});
    }
    // The pattern stops being tracked below the first wrong choice.
    void lost(std::optional<VertexSet>& x, const std::string& why) {
        if (!x) return;
        if (report && report->compliant) {
            report->compliant = false;
            report->noncompliance = why;
        }
        x.reset();
    }
    void force(const std::string& kind, std::vector<std::int64_t> value, double probability) {
        src.force(kind, std::move(value), probability);
        if (report) report->log_path_probability += std::log(probability);
    }
    NodeSummary& node(std::size_t slot) { return (*nodes)[slot]; }
};

Part solve(Run& run, Instance I, int depth, std::optional<VertexSet> x);

// A disjoint-case child whose charged boundary keeps (Gamma, |V|) level is
// kept whole: A = V \ R, with T added to every bag of a fresh decomposition.
Part stalled_part(Run& run, const Instance& I, int depth) {
    run.nodes->push_back({depth, NodeKind::Stalled, I.g.num_vertices(), graph_potential(I), I.light.size(),
                          I.heavy.size(), I.ghosts.size(), I.credit, 0});
    Part p;
    p.A = set_difference(I.g.vertices(), I.ghosts);
    p.td = decompose(induced_subgraph(I.g, p.A));
    const VertexSet t = I.terminals();
    for (auto& node : p.td.nodes) node.bag = set_union(node.bag, t);
    if (p.td.empty()) p.td = TreeDecomposition::single_bag(t);
    return p;
}

VertexSet cluster_outside(Run& run, const Graph& g, const VertexSet& outside, const VertexFlags& ghost,
                          const VertexSet& need, bool steer) {
    if (outside.empty()) return {};
    Graph rest = induced_subgraph(g, outside);
    VertexSet rest_ghosts;
    VertexSet free;
    for (Vertex v : outside) (ghost[v] ? rest_ghosts : free).push_back(v);
    if (free.empty()) return {};
    if (free.size() == 1) {
        VertexSet b{free.front()};
        for (Vertex w : rest.neighbors(free.front()))
            if (ghost[w]) b.push_back(w);
        return make_set(std::move(b));
    }
    const bool rejecting = steer && !need.empty();
    const int attempts = rejecting ? std::max(1, run.dbg->cluster_attempts) : 1;
    for (int a = 0;; ++a) {
        const std::size_t mark = run.src.mark();
        ClusterResult res = cluster(rest, rest_ghosts, run.c.k, run.src);
        if (!rejecting || is_subset(need, res.kept) || a + 1 >= attempts) return std::move(res.kept);
        run.src.truncate(mark);
    }
}

Part case_disjoint(Run& run, const Instance& J, const VertexSet& w_isl, const VertexSet& w_nrm, int depth,
                   const std::optional<VertexSet>& x, std::size_t slot) {
    const Constants& c = run.c;
    const Vertex r = J.root;
    Graph g2 = remove_vertices(J.g, w_isl);
    const Vertex bound = g2.id_bound();
    auto cc = components_avoiding(g2, VertexFlags(w_nrm, bound));

    // L collapses every component onto its lowest id; BFS parents decide charging.
    Graph l = g2;
    std::vector<int> comp_of(bound, -1);
    for (std::size_t j = 0; j < cc.size(); ++j) {
        for (Vertex v : cc[j]) comp_of[v] = static_cast<int>(j);
        l.merge_into(cc[j].front(), VertexSet(cc[j].begin() + 1, cc[j].end()));
    }
    std::vector<int> charged(bound, -1);
    {
        std::vector<char> seen(bound, 0);
        std::deque<Vertex> queue{r};
        seen[r] = 1;
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            for (Vertex w : l.neighbors(u)) {
                if (seen[w]) continue;
                seen[w] = 1;
                if (comp_of[u] >= 0) charged[w] = comp_of[u];
                queue.push_back(w);
            }
        }
    }

    const VertexFlags light = flags_of(J.light, J.g);
    const VertexFlags ghost = flags_of(J.ghosts, J.g);
    const VertexSet terminals = J.terminals();
    const VertexSet root_nbrs = make_set(VertexSet(g2.neighbors(r).begin(), g2.neighbors(r).end()));
    const VertexFlags near_root(root_nbrs, bound);

    const bool laws = run.report != nullptr;
    Potentials pj;
    if (laws) pj = potentials_of(J, x.value_or(VertexSet{}), c);
    Potentials sum;

    run.node(slot).kind = NodeKind::Disjoint;
    run.node(slot).children = cc.size();

    std::vector<Part> parts;
    std::vector<VertexSet> vds;
    std::map<Vertex, std::vector<std::size_t>> owners;
    for (std::size_t j = 0; j < cc.size(); ++j) {
        const VertexSet& d = cc[j];
        VertexSet bd = neighborhood(g2, d);
        VertexSet vd = set_union(set_union(d, bd), VertexSet{r});
        for (Vertex v : bd) owners[v].push_back(j);

        Instance child;
        child.root = r;
        child.credit = J.credit;
        child.g = g2;
        VertexSet fresh;
        for (const VertexSet& q : components_avoiding(g2, VertexFlags(vd, bound))) {
            bool touches = std::any_of(q.begin(), q.end(), [&](Vertex v) { return near_root[v]; });
            if (touches) {
                child.g.merge_into(r, q);
            } else {
                Vertex f = child.g.add_vertex();
                child.g.merge_into(f, q);
                fresh.push_back(f);
            }
        }
        VertexSet li = set_intersection(J.light, vd);
        VertexSet he = set_intersection(J.heavy, d);
        for (Vertex v : bd) {
            if (light[v] || ghost[v]) continue;
            (charged[v] == static_cast<int>(j) ? he : li).push_back(v);
        }
        child.light = make_set(std::move(li));
        child.heavy = make_set(std::move(he));
        child.ghosts = set_union(set_intersection(J.ghosts, vd), fresh);
        const bool stalled = !progresses(J, child);

        std::optional<VertexSet> xd;
        if (x) xd = set_intersection(*x, vd);
        if (laws) {
            Potentials pd = potentials_of(child, xd.value_or(VertexSet{}), c);
            sum.pi += pd.pi;
            sum.gamma += pd.gamma;
            sum.phi += pd.phi;
            run.law("disjoint gamma halving", 2 * pd.gamma <= pj.gamma, pair_text(2 * pd.gamma, pj.gamma));
            const auto td_count = static_cast<double>(child.light.size() + child.heavy.size());
            const double allowance = static_cast<double>(terminals.size()) / 2.0 + static_cast<double>(w_nrm.size());
            run.law("disjoint terminal split", td_count <= allowance + 1e-9,
                    std::to_string(child.light.size() + child.heavy.size()) + " vs " + std::to_string(allowance));
        }
        parts.push_back(stalled ? stalled_part(run, child, depth + 1) : solve(run, std::move(child), depth + 1, std::move(xd)));
        vds.push_back(std::move(vd));
    }
    if (laws) {
        run.law("disjoint gamma split", sum.gamma <= pj.gamma, pair_text(sum.gamma, pj.gamma));
        if (x) {
            run.law("disjoint pi split", sum.pi <= pj.pi, pair_text(sum.pi, pj.pi));
            run.law("disjoint phi split", sum.phi <= pj.phi, pair_text(sum.phi, pj.phi));
        }
    }

    VertexSet a;
    for (std::size_t j = 0; j < cc.size(); ++j)
        for (Vertex v : set_intersection(cc[j], parts[j].A)) a.push_back(v);
    for (Vertex v : w_nrm) {
        if (ghost[v]) continue;
        bool everywhere = true;
        auto it = owners.find(v);
        if (it != owners.end())
            for (std::size_t j : it->second) everywhere = everywhere && contains(parts[j].A, v);
        if (everywhere) a.push_back(v);
    }
    Part out;
    out.A = make_set(std::move(a));
    const VertexSet root_bag = set_intersection(out.A, set_union(terminals, set_difference(w_nrm, J.ghosts)));
    out.td = TreeDecomposition::single_bag(root_bag);
    for (std::size_t j = 0; j < cc.size(); ++j)
        out.td.attach(out.td.root, parts[j].td.restricted(flags_of(set_intersection(out.A, vds[j]), J.g)));
    return out;
}

Part subcase_paths(Run& run, const Instance& J, const Instance& k2, const PathFamily& family, Vertex z, int depth,
                   std::optional<VertexSet>& x, std::size_t slot) {
    const Constants& c = run.c;
    const Vertex r = k2.root;
    run.node(slot).kind = NodeKind::IntersectPaths;
    run.node(slot).children = 1;
    const VertexFlags ghost = flags_of(k2.ghosts, k2.g);
    const VertexFlags light = flags_of(k2.light, k2.g);

    std::vector<std::vector<Vertex>> paths;
    for (const auto& q : family.paths) {
        paths.push_back(detail::lift_path(k2.g, ghost, q));
        if (paths.back().front() != r || paths.back().back() != z)
            throw InvariantViolation("lifted path lost an endpoint");
    }
    std::map<Vertex, int> load;
    for (const auto& p : paths)
        for (Vertex v : make_set(p)) ++load[v];
    auto part_of = [&](std::size_t i, bool shared) {
        VertexSet s;
        for (Vertex v : paths[i])
            if (!ghost[v] && v != r && v != z && (load[v] >= 2) == shared) s.push_back(v);
        return make_set(std::move(s));
    };

    std::int64_t i = -1;
    if (run.steer(x)) {
        for (std::size_t j = 0; j < paths.size() && i < 0; ++j)
            if (!intersects(part_of(j, false), *x)) i = static_cast<std::int64_t>(j);
        if (i >= 0) run.force("paths.index", {i}, 1.0 / c.k);
    }
    if (i < 0) i = run.src.uniform_int("paths.index", 0, c.k - 1);
    const auto ii = static_cast<std::size_t>(i);
    if (x && intersects(part_of(ii, false), *x)) run.lost(x, "chosen path carries pattern vertices");

    Instance h = k2;
    for (const auto& seg : detail::path_segments(paths[ii], light, ghost, part_of(ii, true))) {
        if (seg.interior.empty()) continue;
        const Vertex target = seg.ghost ? *seg.ghost : seg.start;
        h.g.merge_into(target, set_difference(make_set(seg.interior), VertexSet{target}));
    }
    h.heavy = restrict_to(k2.heavy, h.g);
    h.ghosts = restrict_to(k2.ghosts, h.g);
    if (graph_potential(h) >= graph_potential(k2)) throw TrialAborted{"path contraction removed no non-ghost vertex"};
    check_progress(J, h, "subcase_paths");

    if (run.report && x) {
        Potentials pj = potentials_of(J, *x, c);
        Potentials ph = potentials_of(h, *x, c);
        run.law("paths pi unchanged", ph.pi == pj.pi, pair_text(ph.pi, pj.pi));
        run.law("paths gamma decrease", ph.gamma < pj.gamma, pair_text(ph.gamma, pj.gamma));
        VertexSet far_j = far_set(J, *x, c);
        VertexSet far_h = far_set(h, *x, c);
        run.law("paths far subset", is_subset(far_h, far_j), pair_text(ph.phi, pj.phi));
        // Premise: a pattern vertex within distance 1 of z before contraction.
        auto dz = ghost_distances(k2.g, ghost, z);
        bool near = std::any_of(x->begin(), x->end(), [&](Vertex u) { return k2.g.contains(u) && dz[u] <= 1; });
        if (near) {
            const auto drop = static_cast<double>(set_difference(far_j, far_h).size());
            run.law("paths far drop", drop >= c.far_drop() - 1e-9,
                    std::to_string(static_cast<long>(drop)) + " vs " + std::to_string(c.far_drop()));
        }
    }
    return solve(run, std::move(h), depth + 1, x);
}

Part subcase_chain(Run& run, const Instance& J, const Instance& k2, const SeparatorChain& chain, int depth,
                   std::optional<VertexSet>& x, std::size_t slot) {
    const Constants& c = run.c;
    const Vertex r = k2.root;
    run.node(slot).kind = NodeKind::IntersectChain;
    run.node(slot).children = 2;
    if (chain.sets.size() < 4) throw InvariantViolation("separator chain shorter than four");
    const std::vector<VertexSet> rest(chain.sets.begin() + 3, chain.sets.end());
    for (const auto& ci : rest)
        if (intersects(ci, k2.light) || intersects(ci, k2.ghosts))
            throw InvariantViolation("a kept separator holds a light terminal or a ghost");
    const auto m = static_cast<std::int64_t>(rest.size());

    int balanced = -1;
    if (run.report && x) {
        bool all_hit = std::all_of(rest.begin(), rest.end(), [&](const VertexSet& ci) { return intersects(ci, *x); });
        if (all_hit) {
            balanced = detail::balanced_index(k2.g, r, rest, *x, k2.light, c.pattern_slack());
            ++run.report->balanced_scans;
            if (balanced < 0) ++run.report->balanced_failures;
            run.law("chain balanced index", balanced >= 0, "over " + std::to_string(m) + " separators");
        }
    }

    std::int64_t i = -1;
    if (run.steer(x) && balanced >= 0) {
        i = balanced;
        run.force("chain.index", {i}, 1.0 / static_cast<double>(m));
    }
    if (i < 0) i = run.src.uniform_int("chain.index", 0, m - 1);
    const VertexSet& ci = rest[static_cast<std::size_t>(i)];
    const std::int64_t amax = std::min<std::int64_t>(c.alpha_max(), static_cast<std::int64_t>(ci.size()));

    VertexSet q;
    std::int64_t alpha = -1;
    if (run.steer(x)) {
        VertexSet want = set_intersection(*x, ci);
        if (!want.empty() && static_cast<std::int64_t>(want.size()) <= amax) {
            alpha = static_cast<std::int64_t>(want.size());
            run.force("chain.alpha", {alpha}, 1.0 / static_cast<double>(amax));
            std::vector<std::int64_t> idx;
            for (Vertex v : want) idx.push_back(std::lower_bound(ci.begin(), ci.end(), v) - ci.begin());
            run.force("chain.subset", idx, 1.0 / binomial(ci.size(), want.size()));
            q = std::move(want);
        }
    }
    if (alpha < 0) {
        alpha = run.src.uniform_int("chain.alpha", 1, amax);
        for (std::int64_t j : run.src.subset("chain.subset", static_cast<std::int64_t>(ci.size()), alpha))
            q.push_back(ci[static_cast<std::size_t>(j)]);
    }
    if (x && set_intersection(*x, ci) != q) run.lost(x, "separator guess differs from the pattern");

    const VertexSet vin = reach_avoiding(k2.g, r, flags_of(ci, k2.g));
    const int credit = k2.credit + static_cast<int>(alpha);

    Instance out;
    out.root = r;
    out.credit = credit;
    out.g = contract_subgraph(k2.g, set_union(vin, set_difference(ci, q)), r);
    out.light = set_union(VertexSet{r}, q);
    out.heavy = set_difference(restrict_to(k2.heavy, out.g), q);
    out.ghosts = restrict_to(k2.ghosts, out.g);

    Instance in;
    in.root = r;
    in.credit = credit;
    in.g = k2.g;
    VertexSet fresh;
    for (const VertexSet& d : components_avoiding(k2.g, flags_of(set_union(vin, q), k2.g))) {
        Vertex f = in.g.add_vertex();
        in.g.merge_into(f, d);
        fresh.push_back(f);
    }
    in.light = k2.light;
    in.heavy = set_union(restrict_to(k2.heavy, in.g), q);
    in.ghosts = set_union(set_intersection(k2.ghosts, vin), fresh);

    check_progress(J, out, "subcase_chain out");
    check_progress(J, in, "subcase_chain in");

    std::optional<VertexSet> x_out;
    std::optional<VertexSet> x_in;
    if (x) {
        x_out = restrict_to(*x, out.g);
        x_in = restrict_to(*x, in.g);
    }
    if (run.report) {
        Potentials pk = potentials_of(k2, x.value_or(VertexSet{}), c);
        Potentials po = potentials_of(out, x_out.value_or(VertexSet{}), c);
        Potentials pi = potentials_of(in, x_in.value_or(VertexSet{}), c);
        run.law("chain gamma split", po.gamma + pi.gamma <= pk.gamma, pair_text(po.gamma + pi.gamma, pk.gamma));
        if (x) {
            run.law("chain pi split", po.pi + pi.pi <= pk.pi, pair_text(po.pi + pi.pi, pk.pi));
            run.law("chain phi split", po.phi + pi.phi <= pk.phi, pair_text(po.phi + pi.phi, pk.phi));
            const double lhs = p_lg_p(pk.pi);
            const double rhs = p_lg_p(po.pi) + p_lg_p(pi.pi) + c.pattern_slack() * static_cast<double>(alpha);
            run.law("chain pi lg pi", lhs + 1e-9 >= rhs, std::to_string(lhs) + " vs " + std::to_string(rhs));
        }
    }

    const VertexSet terminals = k2.terminals();
    Part po = solve(run, std::move(out), depth + 1, std::move(x_out));
    Part pin = solve(run, std::move(in), depth + 1, std::move(x_in));
    Part res;
    res.A = set_union(set_difference(po.A, q), pin.A);
    res.td = TreeDecomposition::single_bag(set_intersection(set_union(terminals, q), res.A));
    res.td.attach(res.td.root, po.td.restricted(flags_of(set_intersection(res.A, po.A), k2.g)));
    res.td.attach(res.td.root, pin.td);
    return res;
}

Part case_intersect(Run& run, const Instance& J, const std::vector<VertexSet>& islands, const std::vector<int>& zi,
                    int depth, std::optional<VertexSet>& x, std::size_t slot) {
    const Constants& c = run.c;
    const Vertex r = J.root;
    const auto m = static_cast<std::int64_t>(zi.size());
    std::int64_t pick = -1;
    if (run.steer(x)) {
        for (std::int64_t j = 0; j < m && pick < 0; ++j)
            if (intersects(*x, islands[static_cast<std::size_t>(zi[static_cast<std::size_t>(j)])])) pick = j;
        if (pick >= 0) run.force("intersect.island", {pick}, 1.0 / static_cast<double>(m));
    }
    if (pick < 0) pick = run.src.uniform_int("intersect.island", 0, m - 1);
    const VertexSet& isl = islands[static_cast<std::size_t>(zi[static_cast<std::size_t>(pick)])];
    if (x && !intersects(*x, isl)) run.lost(x, "chosen island misses the pattern");

    const Graph island = induced_subgraph(J.g, isl);
    const VertexFlags ghost = flags_of(J.ghosts, J.g);
    const auto [z, ecc] = detail::island_center(island, ghost);
    std::int64_t d = -1;
    if (run.steer(x)) {
        auto dz = ghost_distances(island, ghost, z);
        int best = kUnreachable;
        for (Vertex u : *x)
            if (contains(isl, u)) best = std::min(best, dz[u]);
        if (best != kUnreachable) {
            d = best;
            run.force("intersect.distance", {d}, 1.0 / static_cast<double>(ecc + 1));
        }
    }
    if (d < 0) d = run.src.uniform_int("intersect.distance", 0, ecc);

    const VertexSet s = detail::intersect_contraction_set(island, ghost, z, d);
    const VertexSet gone = set_difference(s, VertexSet{z});
    if (x && intersects(*x, gone)) run.lost(x, "distance guess contracts a pattern vertex");
    Instance k2;
    k2.root = r;
    k2.credit = J.credit;
    k2.light = J.light;
    k2.g = gone.empty() ? J.g : contract_subgraph(J.g, s, z);
    k2.heavy = set_difference(J.heavy, gone);
    k2.ghosts = set_difference(J.ghosts, gone);

    const DualityOutcome dual = duality(torso(k2.g, k2.ghosts), r, z, c.chain_p(), c.k);
    if (dual.kind == DualityOutcome::Kind::Paths) return subcase_paths(run, J, k2, dual.family, z, depth, x, slot);
    return subcase_chain(run, J, k2, dual.chain, depth, x, slot);
}

Part solve(Run& run, Instance I, int depth, std::optional<VertexSet> x) {
    const Constants& c = run.c;
    {
        auto ng = normalize_ghosts(I.g, I.ghosts, I.root);
        I.g = std::move(ng.graph);
        I.ghosts = std::move(ng.ghosts);
    }
    if (auto why = instance_violation(I, c))
        throw InvariantViolation("instance at depth " + std::to_string(depth) + ": " + *why);
    if (x) {
        *x = restrict_to(*x, I.g);
        run.law("pattern", is_pattern(I, *x, c), "depth " + std::to_string(depth));
    }
    const std::size_t slot = run.nodes->size();
    run.nodes->push_back({depth, NodeKind::Base, I.g.num_vertices(), graph_potential(I), I.light.size(), I.heavy.size(),
                          I.ghosts.size(), I.credit, 0});
    if (static_cast<double>(I.credit) > c.credit_cap()) {
        if (x && run.report && !is_subset(*x, I.terminals())) ++run.report->credit_cap_losses;
        return base_part(I);
    }
    if (!has_free_vertex(I)) return base_part(I);

    const Graph& g = I.g;
    const Vertex r = I.root;
    const VertexFlags ghost = flags_of(I.ghosts, g);
    const auto dist = ghost_distances(g, ghost, r);
    const double margin = c.margin_radius();
    VertexSet m;
    VertexSet outside;
    for (Vertex v : g.vertices()) (static_cast<double>(dist[v]) <= margin ? m : outside).push_back(v);

    const VertexSet need = x ? set_difference(*x, m) : VertexSet{};
    const VertexSet b = cluster_outside(run, g, outside, ghost, need, run.steer(x));
    if (x && !is_subset(need, b)) run.lost(x, "clustering dropped a pattern vertex");

    const VertexSet comp = reach(induced_subgraph(g, set_union(m, b)), r);
    Instance J;
    J.g = induced_subgraph(g, comp);
    J.root = r;
    J.light = set_intersection(I.light, comp);
    J.heavy = set_intersection(I.heavy, comp);
    J.ghosts = set_intersection(I.ghosts, comp);
    J.credit = I.credit;
    if (J.light.size() != I.light.size()) throw InvariantViolation("a light terminal lies outside the margin");
    if (x && !is_subset(*x, comp)) run.lost(x, "pattern left the root component");
    if (!has_free_vertex(J)) return base_part(J);

    // Islands collapse onto their lowest id in H.
    const VertexFlags in_m = flags_of(m, J.g);
    const auto islands = components_avoiding(J.g, in_m);
    Graph h = J.g;
    std::vector<int> island_of(J.g.id_bound(), -1);
    for (std::size_t i = 0; i < islands.size(); ++i) {
        island_of[islands[i].front()] = static_cast<int>(i);
        h.merge_into(islands[i].front(), VertexSet(islands[i].begin() + 1, islands[i].end()));
    }
    const VertexFlags term = flags_of(J.terminals(), J.g);
    const VertexFlags light = flags_of(J.light, J.g);
    const VertexFlags jghost = flags_of(J.ghosts, J.g);
    std::vector<double> w1(h.id_bound(), 0.0);
    std::vector<double> w2(h.id_bound(), 0.0);
    for (Vertex v : h.vertices()) {
        if (island_of[v] >= 0) {
            for (Vertex u : islands[static_cast<std::size_t>(island_of[v])]) {
                w1[v] += term[u] ? 1.0 : 0.0;
                w2[v] += (!light[u] && !jghost[u]) ? 1.0 : 0.0;
            }
        } else {
            w1[v] = term[v] ? 1.0 : 0.0;
            w2[v] = (!light[v] && !jghost[v]) ? 1.0 : 0.0;
        }
    }
    const TreeDecomposition td_h = decompose_bounded_radius(h, set_intersection(J.ghosts, m), r);
    const VertexSet z = set_union(set_union(balanced_separator(h, td_h, w1), balanced_separator(h, td_h, w2)), VertexSet{r});
    std::vector<int> zi;
    VertexSet w_isl;
    VertexSet w_nrm;
    for (Vertex v : z) {
        if (island_of[v] >= 0) {
            zi.push_back(island_of[v]);
            w_isl = set_union(w_isl, islands[static_cast<std::size_t>(island_of[v])]);
        } else {
            w_nrm.push_back(v);
        }
    }

    bool intersect = false;
    if (!zi.empty()) {
        const double p = 1.0 / c.k;
        if (run.steer(x)) {
            intersect = intersects(*x, w_isl);
            run.force("branch.intersect", {intersect ? 1 : 0}, intersect ? p : 1.0 - p);
        } else {
            intersect = run.src.bernoulli("branch.intersect", p);
        }
    }
    if (x && intersect != intersects(*x, w_isl)) run.lost(x, "branch assumption is wrong");
    if (intersect) return case_intersect(run, J, islands, zi, depth, x, slot);
    return case_disjoint(run, J, w_isl, w_nrm, depth, x, slot);
}

CoverResult run_from_root(const Graph& g0, Vertex root, const Constants& c, DecisionSource& src,
                          const DebugOptions* debug, std::size_t mark) {
    if (!g0.contains(root)) throw NotAVertex("root is not a vertex");
    Instance I;
    I.g = induced_subgraph(g0, reach(g0, root));
    I.g.clear_metadata();
    I.root = root;
    I.light = {root};
    CoverResult res = solve_instance(std::move(I), c, src, debug);
    res.trace.assign(src.trace().begin() + static_cast<long>(mark), src.trace().end());
    return res;
}

}  // namespace

CoverResult solve_instance(Instance I, const Constants& c, DecisionSource& src, const DebugOptions* debug) {
    c.check();
    CoverResult res;
    res.root = I.root;
    const std::size_t mark = src.mark();
    DebugReport report;
    Run run{c, src, debug, debug ? &report : nullptr, &res.nodes};
    std::optional<VertexSet> x;
    if (debug) x = make_set(debug->pattern);
    const VertexSet light = I.light;
    try {
        Part p = solve(run, std::move(I), 0, std::move(x));
        res.A = std::move(p.A);
        res.td = std::move(p.td);
    } catch (const TrialAborted& a) {
        res.aborted = true;
        res.abort_reason = a.reason;
        res.A = light;
        res.td = TreeDecomposition::single_bag(light);
    }
    res.trace.assign(src.trace().begin() + static_cast<long>(mark), src.trace().end());
    if (debug) res.debug = std::move(report);
    return res;
}

CoverResult cover_from_root(const Graph& g0, Vertex root, const Constants& c, DecisionSource& src,
                            const DebugOptions* debug) {
    return run_from_root(g0, root, c, src, debug, src.mark());
}

CoverResult sample_cover(const Graph& g0, const Constants& c, DecisionSource& src) {
    c.check();
    if (g0.num_vertices() == 0) throw EmptyGraph("cannot sample from an empty graph");
    const std::size_t mark = src.mark();
    const VertexSet vs = g0.vertices();
    const auto n = static_cast<std::int64_t>(vs.size());
    if (c.k < c.trivial_threshold()) {
        VertexSet a;
        for (int i = 0; i < c.k; ++i) a.push_back(vs[static_cast<std::size_t>(src.uniform_int("trivial.vertex", 0, n - 1))]);
        CoverResult res;
        res.trivial = true;
        res.A = make_set(std::move(a));
        res.root = res.A.front();
        res.td = decompose(induced_subgraph(g0, res.A));
        res.trace.assign(src.trace().begin() + static_cast<long>(mark), src.trace().end());
        return res;
    }
    const Vertex root = vs[static_cast<std::size_t>(src.uniform_int("sample.root", 0, n - 1))];
    return run_from_root(g0, root, c, src, nullptr, mark);
}

}  // namespace lowtw
