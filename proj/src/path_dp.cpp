#include "lowtw/path_dp.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace lowtw {

void PathQuery::check() const {
    if (k < 2) throw BadQuery("k must be at least 2");
    if (k > 65535) throw BadQuery("k must be at most 65535");
    if (kind == Kind::Cycle && k < 3) throw BadQuery("a cycle needs k >= 3");
}

bool usable_arc(const Graph& g, const PathQuery& q, Vertex u, Vertex v) {
    if (u == v || !g.contains(u) || !g.contains(v)) return false;
    if (q.directed && g.directed()) return g.has_arc(u, v);
    return g.adjacent(u, v);
}

Weight arc_weight(const Graph& g, const PathQuery& q, Vertex u, Vertex v) {
    if (auto w = g.weight(u, v)) return *w;
    if (!(q.directed && g.directed()))
        if (auto w = g.weight(v, u)) return *w;
    return Weight(1);
}

std::optional<std::string> witness_violation(const Graph& g, const PathQuery& q, const std::vector<Vertex>& w) {
    if (static_cast<int>(w.size()) != q.k) return "witness has " + std::to_string(w.size()) + " vertices, expected " + std::to_string(q.k);
    if (make_set(w).size() != w.size()) return "witness repeats a vertex";
    for (Vertex v : w)
        if (!g.contains(v)) return "witness vertex " + std::to_string(v) + " is not in the graph";
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (!usable_arc(g, q, w[i], w[i + 1]))
            return "no usable arc " + std::to_string(w[i]) + " -> " + std::to_string(w[i + 1]);
    if (q.kind == PathQuery::Kind::Cycle && !usable_arc(g, q, w.back(), w.front()))
        return "no closing arc " + std::to_string(w.back()) + " -> " + std::to_string(w.front());
    return std::nullopt;
}

Weight witness_weight(const Graph& g, const PathQuery& q, const std::vector<Vertex>& w) {
    Weight s(0);
    for (std::size_t i = 0; i + 1 < w.size(); ++i) s += arc_weight(g, q, w[i], w[i + 1]);
    if (q.kind == PathQuery::Kind::Cycle && w.size() >= 2) s += arc_weight(g, q, w.back(), w.front());
    return s;
}

namespace {

bool improves(const PathQuery& q, const Weight& cand, const Weight& cur) {
    switch (q.objective) {
    case PathQuery::Objective::MinWeight: return cand < cur;
    case PathQuery::Objective::MaxWeight: return cand > cur;
    case PathQuery::Objective::Exists: return false;
    }
    return false;
}

// ---------------------------------------------------------------- nice form

struct NiceNode {
    enum class Type { Leaf, Introduce, Forget, Edge, Join };
    Type type = Type::Leaf;
    Vertex v = 0;  // introduced/forgotten vertex, or the lower edge end
    Vertex u = 0;  // upper edge end
    VertexSet bag;
    int a = -1;
    int b = -1;
};

class NiceBuilder {
public:
    NiceBuilder(const Graph& g, const TreeDecomposition& td) : g_(g), td_(td) {}

    // Nodes come out in post-order; the last one is the root with an empty bag.
    // Each edge is introduced once, right after its later endpoint.
    std::vector<NiceNode> build() {
        int top = from(td_.root);
        for (Vertex v : td_.nodes[static_cast<std::size_t>(td_.root)].bag) top = forget(top, v);
        if (done_edges_.size() != g_.num_edges()) throw std::invalid_argument("decomposition misses an edge");
        return std::move(nodes_);
    }

private:
    int push(NiceNode n) {
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }

    int edges_at(int child, Vertex v) {
        const VertexSet bag = nodes_[static_cast<std::size_t>(child)].bag;
        for (Vertex u : bag) {
            if (u == v || !g_.adjacent(u, v)) continue;
            if (!done_edges_.insert(std::minmax(u, v)).second) continue;
            child = push({NiceNode::Type::Edge, v, u, bag, child, -1});
        }
        return child;
    }

    int forget(int child, Vertex v) {
        child = edges_at(child, v);
        VertexSet bag = set_difference(nodes_[static_cast<std::size_t>(child)].bag, VertexSet{v});
        return push({NiceNode::Type::Forget, v, 0, std::move(bag), child, -1});
    }

    int introduce(int child, Vertex v) {
        VertexSet bag = set_union(nodes_[static_cast<std::size_t>(child)].bag, VertexSet{v});
        return edges_at(push({NiceNode::Type::Introduce, v, 0, std::move(bag), child, -1}), v);
    }

    int from(int x) {
        const auto& tn = td_.nodes[static_cast<std::size_t>(x)];
        int joined = -1;
        for (int c : tn.children) {
            int at = from(c);
            const VertexSet cb = td_.nodes[static_cast<std::size_t>(c)].bag;
            for (Vertex v : set_difference(cb, tn.bag)) at = forget(at, v);
            for (Vertex v : set_difference(tn.bag, cb)) at = introduce(at, v);
            // Joining at once keeps every subtree a contiguous index range.
            joined = joined < 0 ? at : push({NiceNode::Type::Join, 0, 0, tn.bag, joined, at});
        }
        if (joined >= 0) return joined;
        int at = push({NiceNode::Type::Leaf, 0, 0, {}, -1, -1});
        for (Vertex v : tn.bag) at = introduce(at, v);
        return at;
    }

    const Graph& g_;
    const TreeDecomposition& td_;
    std::vector<NiceNode> nodes_;
    std::set<std::pair<Vertex, Vertex>> done_edges_;
};

// -------------------------------------------------------------- DP states

constexpr std::size_t kMaxBag = 32;

// Per bag slot: kAbsent, kFull (in = out = 1) or an open end with a segment
// label and its in/out degree. A segment's start is its member with in = 0,
// its end the member with out = 0; a missing one has been forgotten.
constexpr int kAbsent = -2;
constexpr int kFull = -1;
constexpr int kFresh = 100;

struct State {
    std::size_t n = 0;
    std::array<int, kMaxBag> lab{};
    std::array<std::uint8_t, kMaxBag> in{};
    std::array<std::uint8_t, kMaxBag> out{};
    int count = 0;
    bool done = false;
};

// Slot codes, then count as two bytes, then done; labels are renumbered by first use.
struct Key {
    std::array<std::uint8_t, kMaxBag + 3> b{};
    std::uint8_t len = 0;
    bool operator==(const Key& o) const {
        return len == o.len && std::equal(b.begin(), b.begin() + len, o.b.begin());
    }
};

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::size_t i = 0; i < k.len; ++i) h = (h ^ k.b[i]) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

Key encode(const State& s) {
    std::array<int, 2 * kMaxBag + kFresh + 1> relabel;
    relabel.fill(-1);
    int next = 0;
    Key key;
    for (std::size_t i = 0; i < s.n; ++i) {
        int c = 0;
        if (s.lab[i] == kFull) c = 1;
        else if (s.lab[i] >= 0) {
            int& r = relabel[static_cast<std::size_t>(s.lab[i])];
            if (r < 0) r = next++;
            c = 2 + 4 * r + s.in[i] + 2 * s.out[i];
        }
        key.b[i] = static_cast<std::uint8_t>(c);
    }
    key.b[s.n] = static_cast<std::uint8_t>(s.count & 0xff);
    key.b[s.n + 1] = static_cast<std::uint8_t>(s.count >> 8);
    key.b[s.n + 2] = s.done ? 1 : 0;
    key.len = static_cast<std::uint8_t>(s.n + 3);
    return key;
}

State decode(const Key& key) {
    State s;
    s.n = key.len - 3u;
    for (std::size_t i = 0; i < s.n; ++i) {
        const int c = key.b[i];
        if (c == 0) s.lab[i] = kAbsent;
        else if (c == 1) {
            s.lab[i] = kFull;
            s.in[i] = s.out[i] = 1;
        } else {
            s.lab[i] = (c - 2) / 4;
            s.in[i] = static_cast<std::uint8_t>((c - 2) & 1);
            s.out[i] = static_cast<std::uint8_t>(((c - 2) >> 1) & 1);
        }
    }
    s.count = key.b[s.n] | (key.b[s.n + 1] << 8);
    s.done = key.b[s.n + 2] != 0;
    return s;
}

bool has_label(const State& s) {
    return std::any_of(s.lab.begin(), s.lab.begin() + static_cast<long>(s.n), [](int l) { return l >= 0; });
}

std::uint32_t used_mask(const Key& key) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i + 3 < key.len; ++i)
        if (key.b[i] != 0) m |= 1u << i;
    return m;
}

struct Entry {
    Weight w{0};
    Key from_a;
    Key from_b;
    Vertex arc_u = 0;
    Vertex arc_v = 0;
    bool arc = false;
};

using Table = std::unordered_map<Key, Entry, KeyHash>;

class Solver {
public:
    Solver(const Graph& g, const PathQuery& q, std::vector<NiceNode> nodes) : g_(g), q_(q), nodes_(std::move(nodes)) {
        liveness();
    }

    PathAnswer run() {
        tables_.resize(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size() && !early_; ++i) {
            step(i);
        }
        PathAnswer ans;
        State goal;
        goal.count = q_.k;
        goal.done = true;
        const Key gk = encode(goal);
        std::size_t at = nodes_.size() - 1;
        if (early_) {
            at = early_at_;
        } else if (!tables_.back().count(gk)) {
            return ans;
        }
        const Key key = early_ ? early_key_ : gk;
        std::vector<std::pair<Vertex, Vertex>> arcs;
        collect(at, key, arcs);
        ans.found = true;
        ans.witness = order(arcs);
        ans.weight = tables_[at].at(key).w;
        return ans;
    }

private:
    // live_in/live_out: the slot's vertex may still gain an arc outside the
    // subtree. Post-order makes every subtree a contiguous index range.
    void liveness() {
        const std::size_t m = nodes_.size();
        std::vector<int> lo(m);
        std::map<std::pair<Vertex, Vertex>, int> edge_at;
        for (std::size_t i = 0; i < m; ++i) {
            const NiceNode& n = nodes_[i];
            lo[i] = static_cast<int>(i);
            if (n.a >= 0) lo[i] = std::min(lo[i], lo[static_cast<std::size_t>(n.a)]);
            if (n.b >= 0) lo[i] = std::min(lo[i], lo[static_cast<std::size_t>(n.b)]);
            if (n.type == NiceNode::Type::Edge) edge_at[std::minmax(n.u, n.v)] = static_cast<int>(i);
        }
        live_in_.resize(m);
        live_out_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const VertexSet& bag = nodes_[i].bag;
            live_in_[i].assign(bag.size(), 0);
            live_out_[i].assign(bag.size(), 0);
            for (std::size_t s = 0; s < bag.size(); ++s) {
                const Vertex v = bag[s];
                for (Vertex u : g_.neighbors(v)) {
                    const int e = edge_at.at(std::minmax(u, v));
                    if (e >= lo[i] && e <= static_cast<int>(i)) continue;
                    if (usable_arc(g_, q_, u, v)) live_in_[i][s] = 1;
                    if (usable_arc(g_, q_, v, u)) live_out_[i][s] = 1;
                }
            }
        }
    }

    // A start or end is terminal once forgotten or frozen. A path has one of
    // each, a cycle none; a segment closed at both ends is the whole answer.
    bool viable(const State& s, std::size_t node) const {
        if (s.count > q_.k) return false;
        const auto& li = live_in_[node];
        const auto& lo = live_out_[node];
        const bool cycle = q_.kind == PathQuery::Kind::Cycle;
        std::array<std::int8_t, 2 * kMaxBag + kFresh + 1> st;
        std::array<std::int8_t, 2 * kMaxBag + kFresh + 1> en;
        st.fill(-1);
        en.fill(-1);
        int labels = 0;
        for (std::size_t i = 0; i < s.n; ++i) {
            const int l = s.lab[i];
            if (l < 0) continue;
            const auto ul = static_cast<std::size_t>(l);
            if (st[ul] == -1 && en[ul] == -1) ++labels;
            // 2 marks a label seen without a live start (end).
            if (st[ul] == -1) st[ul] = 2;
            if (en[ul] == -1) en[ul] = 2;
            if (!s.in[i]) {
                if (cycle && !li[i]) return false;
                st[ul] = li[i] ? 1 : 0;
            }
            if (!s.out[i]) {
                if (cycle && !lo[i]) return false;
                en[ul] = lo[i] ? 1 : 0;
            }
        }
        if (labels == 0) return true;
        int dead_start = 0;
        int dead_end = 0;
        bool closed = false;
        for (std::size_t l = 0; l < st.size(); ++l) {
            if (st[l] == -1) continue;
            const bool ds = st[l] != 1;
            const bool de = en[l] != 1;
            dead_start += ds ? 1 : 0;
            dead_end += de ? 1 : 0;
            closed = closed || (ds && de);
        }
        if (dead_start > 1 || dead_end > 1) return false;
        if (closed && (labels > 1 || s.count != q_.k || s.done)) return false;
        return true;
    }

    void offer(std::size_t node, const State& s, const Weight& w, Entry e) {
        if (!viable(s, node)) return;
        Table& t = tables_[node];
        e.w = w;
        Key key = encode(s);
        auto it = t.find(key);
        if (it == t.end()) {
            if (s.done && q_.objective == PathQuery::Objective::Exists && !early_) {
                early_ = true;
                early_at_ = node;
                early_key_ = key;
            }
            t.emplace(key, std::move(e));
        } else if (improves(q_, w, it->second.w)) {
            it->second = std::move(e);
        }
    }

    static std::size_t pos(const VertexSet& bag, Vertex v) {
        return static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    }

    static void insert_slot(State& s, std::size_t p) {
        for (std::size_t i = s.n; i > p; --i) {
            s.lab[i] = s.lab[i - 1];
            s.in[i] = s.in[i - 1];
            s.out[i] = s.out[i - 1];
        }
        s.lab[p] = kAbsent;
        s.in[p] = s.out[p] = 0;
        ++s.n;
    }

    static void erase_slot(State& s, std::size_t p) {
        for (std::size_t i = p; i + 1 < s.n; ++i) {
            s.lab[i] = s.lab[i + 1];
            s.in[i] = s.in[i + 1];
            s.out[i] = s.out[i + 1];
        }
        --s.n;
    }

    void step(std::size_t i) {
        const NiceNode& n = nodes_[i];
        switch (n.type) {
        case NiceNode::Type::Leaf: {
            offer(i, State{}, Weight(0), Entry{});
            break;
        }
        case NiceNode::Type::Introduce: {
            const std::size_t p = pos(n.bag, n.v);
            for (const auto& [key, e] : tables_[static_cast<std::size_t>(n.a)]) {
                State s = decode(key);
                Entry back{Weight(0), key, {}, 0, 0, false};
                insert_slot(s, p);
                offer(i, s, e.w, back);
                if (s.done) continue;
                s.lab[p] = kFresh;
                ++s.count;
                offer(i, s, e.w, back);
            }
            break;
        }
        case NiceNode::Type::Forget: {
            const VertexSet& cb = nodes_[static_cast<std::size_t>(n.a)].bag;
            const std::size_t p = pos(cb, n.v);
            for (const auto& [key, e] : tables_[static_cast<std::size_t>(n.a)]) {
                State s = decode(key);
                const int l = s.lab[p];
                const bool open = l >= 0;
                if (open && (q_.kind == PathQuery::Kind::Cycle || (!s.in[p] && !s.out[p]))) continue;
                erase_slot(s, p);
                if (open && std::find(s.lab.begin(), s.lab.begin() + static_cast<long>(s.n), l) ==
                                s.lab.begin() + static_cast<long>(s.n)) {
                    // Both ends of the segment are gone: it is the whole answer.
                    if (s.done || has_label(s) || s.count != q_.k) continue;
                    s.done = true;
                }
                offer(i, s, e.w, Entry{Weight(0), key, {}, 0, 0, false});
            }
            break;
        }
        case NiceNode::Type::Edge: {
            const std::size_t pv = pos(n.bag, n.v);
            const std::size_t pu = pos(n.bag, n.u);
            const bool fwd = usable_arc(g_, q_, n.u, n.v);
            const bool bwd = usable_arc(g_, q_, n.v, n.u);
            for (const auto& [key, e] : tables_[static_cast<std::size_t>(n.a)]) {
                const State base = decode(key);
                offer(i, base, e.w, Entry{Weight(0), key, {}, 0, 0, false});
                for (int dir = 0; dir < 2; ++dir) {
                    if (!(dir == 0 ? fwd : bwd)) continue;
                    const std::size_t pa = dir == 0 ? pu : pv;
                    const std::size_t pb = dir == 0 ? pv : pu;
                    State s = base;
                    if (!add_arc(s, pa, pb)) continue;
                    const Vertex a = n.bag[pa];
                    const Vertex b = n.bag[pb];
                    offer(i, s, e.w + arc_weight(g_, q_, a, b), Entry{Weight(0), key, {}, a, b, true});
                }
            }
            break;
        }
        case NiceNode::Type::Join: {
            std::unordered_map<std::uint32_t, std::vector<const std::pair<const Key, Entry>*>> by_mask;
            for (const auto& kv : tables_[static_cast<std::size_t>(n.b)]) by_mask[used_mask(kv.first)].push_back(&kv);
            for (const auto& [ka, ea] : tables_[static_cast<std::size_t>(n.a)]) {
                auto it = by_mask.find(used_mask(ka));
                if (it == by_mask.end()) continue;
                const State sa = decode(ka);
                for (const auto* kvb : it->second) {
                    State s;
                    if (!join(sa, decode(kvb->first), s)) continue;
                    offer(i, s, ea.w + kvb->second.w, Entry{Weight(0), ka, kvb->first, 0, 0, false});
                    if (early_) return;
                }
            }
            break;
        }
        }
    }

    bool add_arc(State& s, std::size_t a, std::size_t b) const {
        if (s.lab[a] < 0 || s.lab[b] < 0 || s.out[a] || s.in[b]) return false;
        const int la = s.lab[a];
        const int lb = s.lab[b];
        s.out[a] = 1;
        s.in[b] = 1;
        if (la == lb) {
            // a ends and b starts the same segment: the arc closes a cycle.
            if (q_.kind != PathQuery::Kind::Cycle || s.done || s.count != q_.k) return false;
            for (std::size_t i = 0; i < s.n; ++i)
                if (s.lab[i] >= 0 && s.lab[i] != la) return false;
            s.done = true;
        } else {
            for (std::size_t i = 0; i < s.n; ++i)
                if (s.lab[i] == lb) s.lab[i] = la;
        }
        bool la_left = false;
        for (std::size_t i = 0; i < s.n; ++i) {
            if (s.lab[i] >= 0 && s.in[i] && s.out[i]) s.lab[i] = kFull;
            la_left = la_left || s.lab[i] == la;
        }
        if (la != lb && !la_left) {
            // Both ends were already forgotten: the merged segment is the answer.
            if (s.done || has_label(s) || s.count != q_.k) return false;
            s.done = true;
        }
        return true;
    }

    bool join(const State& x, const State& y, State& s) const {
        const std::size_t n = x.n;
        int used = 0;
        s = State{};
        s.n = n;
        for (std::size_t i = 0; i < n; ++i) {
            s.lab[i] = kAbsent;
            if (x.lab[i] == kAbsent) continue;
            ++used;
            s.in[i] = static_cast<std::uint8_t>(x.in[i] + y.in[i]);
            s.out[i] = static_cast<std::uint8_t>(x.out[i] + y.out[i]);
            if (s.in[i] > 1 || s.out[i] > 1) return false;
        }
        s.count = x.count + y.count - used;
        if (s.count > q_.k) return false;
        int done = (x.done ? 1 : 0) + (y.done ? 1 : 0);
        if (done > 1) return false;

        // Link graph: bag slots 0..n-1 plus one node per forgotten end.
        constexpr int none = -1;
        std::array<int, 3 * kMaxBag + 2> next;
        std::array<int, 3 * kMaxBag + 2> prev;
        next.fill(none);
        prev.fill(none);
        int nodes = static_cast<int>(n);
        for (const State* c : {&x, &y}) {
            std::array<int, 2 * kMaxBag + kFresh + 1> first;
            std::array<int, 2 * kMaxBag + kFresh + 1> last;
            first.fill(-2);
            last.fill(-2);
            std::array<int, kMaxBag> labels{};
            int nl = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const int l = c->lab[i];
                if (l < 0) continue;
                const auto ul = static_cast<std::size_t>(l);
                if (first[ul] == -2) {
                    first[ul] = last[ul] = none;
                    labels[static_cast<std::size_t>(nl++)] = l;
                }
                if (!c->in[i]) first[ul] = static_cast<int>(i);
                if (!c->out[i]) last[ul] = static_cast<int>(i);
            }
            for (int li = 0; li < nl; ++li) {
                const auto ul = static_cast<std::size_t>(labels[static_cast<std::size_t>(li)]);
                int a = first[ul];
                int b = last[ul];
                if (a == none) a = nodes++;
                if (b == none) b = nodes++;
                if (a == b) continue;
                if (next[static_cast<std::size_t>(a)] != none || prev[static_cast<std::size_t>(b)] != none) return false;
                next[static_cast<std::size_t>(a)] = b;
                prev[static_cast<std::size_t>(b)] = a;
            }
        }
        std::array<char, 3 * kMaxBag + 2> seen{};
        int label = 0;
        bool open_chain = false;
        auto relevant = [&](int v) {
            if (v >= static_cast<int>(n)) return true;
            const auto uv = static_cast<std::size_t>(v);
            if (x.lab[uv] == kAbsent) return false;
            return next[uv] != none || prev[uv] != none || !(s.in[uv] && s.out[uv]);
        };
        for (int v = 0; v < nodes; ++v) {
            if (!relevant(v) || prev[static_cast<std::size_t>(v)] != none) continue;
            int w = v;
            seen[static_cast<std::size_t>(w)] = 1;
            while (next[static_cast<std::size_t>(w)] != none) {
                w = next[static_cast<std::size_t>(w)];
                seen[static_cast<std::size_t>(w)] = 1;
            }
            if (v >= static_cast<int>(n) && w >= static_cast<int>(n)) {
                ++done;
                continue;
            }
            open_chain = true;
            if (v < static_cast<int>(n)) s.lab[static_cast<std::size_t>(v)] = label;
            if (w < static_cast<int>(n)) s.lab[static_cast<std::size_t>(w)] = label;
            ++label;
        }
        for (int v = 0; v < nodes; ++v) {
            if (!relevant(v) || seen[static_cast<std::size_t>(v)]) continue;
            if (q_.kind != PathQuery::Kind::Cycle) return false;
            for (int w = v; !seen[static_cast<std::size_t>(w)]; w = next[static_cast<std::size_t>(w)])
                seen[static_cast<std::size_t>(w)] = 1;
            ++done;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (x.lab[i] != kAbsent && s.lab[i] == kAbsent) s.lab[i] = kFull;
        if (done > 1) return false;
        if (done == 1 && (open_chain || s.count != q_.k)) return false;
        s.done = done == 1;
        return true;
    }

    void collect(std::size_t i, const Key& key, std::vector<std::pair<Vertex, Vertex>>& arcs) const {
        const Entry& e = tables_[i].at(key);
        const NiceNode& n = nodes_[i];
        if (e.arc) arcs.emplace_back(e.arc_u, e.arc_v);
        if (n.a >= 0) collect(static_cast<std::size_t>(n.a), e.from_a, arcs);
        if (n.b >= 0) collect(static_cast<std::size_t>(n.b), e.from_b, arcs);
    }

    std::vector<Vertex> order(const std::vector<std::pair<Vertex, Vertex>>& arcs) const {
        std::map<Vertex, Vertex> succ;
        std::set<Vertex> heads;
        for (const auto& [u, v] : arcs) {
            succ[u] = v;
            heads.insert(v);
        }
        Vertex start = succ.begin()->first;
        if (q_.kind == PathQuery::Kind::Path)
            for (const auto& [u, v] : succ)
                if (!heads.count(u)) {
                    start = u;
                    break;
                }
        std::vector<Vertex> w{start};
        while (static_cast<int>(w.size()) < q_.k) w.push_back(succ.at(w.back()));
        return w;
    }

    const Graph& g_;
    const PathQuery& q_;
    std::vector<NiceNode> nodes_;
    std::vector<Table> tables_;
    std::vector<std::vector<char>> live_in_;
    std::vector<std::vector<char>> live_out_;
    bool early_ = false;
    std::size_t early_at_ = 0;
    Key early_key_;
};

}  // namespace

PathAnswer dp_longest_path(const Graph& g, const TreeDecomposition& td, const PathQuery& q, int width_budget) {
    q.check();
    if (g.num_vertices() == 0 || static_cast<std::size_t>(q.k) > g.num_vertices()) return {};
    if (auto rep = validate(g, td); !rep.ok) throw std::invalid_argument("dp_longest_path: " + rep.violation);
    if (td.width() > width_budget || td.width() + 1 > static_cast<int>(kMaxBag))
        throw WidthTooLarge("decomposition width " + std::to_string(td.width()) + " exceeds the DP budget " +
                            std::to_string(width_budget));
    Solver solver(g, q, NiceBuilder(g, td).build());
    return solver.run();
}

PathAnswer brute_force_paths(const Graph& g, const PathQuery& q, std::size_t cap) {
    q.check();
    if (g.num_vertices() > cap) throw TooLarge("brute force is capped at " + std::to_string(cap) + " vertices");
    PathAnswer best;
    const bool cycle = q.kind == PathQuery::Kind::Cycle;
    std::vector<Vertex> walk;
    std::vector<char> on(g.id_bound(), 0);
    bool stop = false;
    std::function<void(Weight)> dfs = [&](Weight w) {
        if (stop) return;
        if (static_cast<int>(walk.size()) == q.k) {
            if (cycle) {
                if (!usable_arc(g, q, walk.back(), walk.front())) return;
                w += arc_weight(g, q, walk.back(), walk.front());
            }
            if (!best.found || improves(q, w, best.weight)) {
                best.found = true;
                best.witness = walk;
                best.weight = w;
            }
            if (q.objective == PathQuery::Objective::Exists) stop = true;
            return;
        }
        const Vertex last = walk.back();
        for (Vertex v : g.neighbors(last)) {
            if (on[v] || (cycle && v < walk.front()) || !usable_arc(g, q, last, v)) continue;
            on[v] = 1;
            walk.push_back(v);
            dfs(w + arc_weight(g, q, last, v));
            walk.pop_back();
            on[v] = 0;
        }
    };
    for (Vertex s : g.vertices()) {
        walk.assign(1, s);
        on[s] = 1;
        dfs(Weight(0));
        on[s] = 0;
        if (stop) break;
    }
    return best;
}

}  // namespace lowtw
