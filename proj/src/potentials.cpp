#include <algorithm>
#include <cmath>
#include <limits>

#include "lowtw/pattern_cover.hpp"

namespace lowtw {

double Constants::sk_lgk() const { return std::sqrt(static_cast<double>(k)) * std::log2(static_cast<double>(k)); }
double Constants::margin_radius() const { return std::max(3.0, scale * 2000.0 * sk_lgk()); }
double Constants::far_threshold() const { return scale * 1000.0 * sk_lgk(); }
double Constants::terminal_cap() const { return scale * 16014.0 * c_tw * sk_lgk(); }
double Constants::separator_cap() const { return scale * 8007.0 * c_tw * sk_lgk(); }
double Constants::width_cap() const { return scale * 24022.0 * c_tw * sk_lgk(); }
double Constants::far_drop() const { return scale * 511.0 * sk_lgk(); }
int Constants::chain_p() const { return std::max(4, static_cast<int>(std::ceil(scale * 120.0 * sk_lgk() - 1e-9))); }
double Constants::credit_cap() const { return std::sqrt(static_cast<double>(k)) / 10.0; }
double Constants::pattern_slack() const { return scale * 10.0 * std::sqrt(static_cast<double>(k)); }
int Constants::alpha_max() const {
    return std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k)) / 10.0 - 1e-9)));
}

int Constants::trivial_threshold() const {
    if (recursion_threshold >= 0) return recursion_threshold;
    if (scale < 1.0) return 1;
    return c_tw >= 30 ? std::numeric_limits<int>::max() : std::max(10, 1 << c_tw);
}

void Constants::check() const {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (!(scale > 0.0 && scale <= 1.0)) throw std::invalid_argument("scale must lie in (0, 1]");
    if (c_tw < 1) throw std::invalid_argument("c_tw must be at least 1");
    if (c1 <= 0.0 || c2 <= 0.0) throw std::invalid_argument("c1, c2 must be positive");
}

std::int64_t graph_potential(const Instance& I) {
    VertexFlags out(set_union(I.light, I.ghosts), I.g.id_bound());
    std::int64_t n = 0;
    for (Vertex v : I.g.vertices())
        if (!out[v]) ++n;
    return n;
}

Potentials potentials_of(const Instance& I, const VertexSet& x, const Constants& c) {
    Potentials p;
    p.pi = static_cast<std::int64_t>(set_difference(x, I.light).size());
    p.gamma = graph_potential(I);
    auto dist = ghost_distances(I.g, VertexFlags(I.ghosts, I.g.id_bound()), I.root);
    const double far = c.far_threshold();
    for (Vertex u : x)
        if (I.g.contains(u) && static_cast<double>(dist[u]) > far) ++p.phi;
    return p;
}

bool is_pattern(const Instance& I, const VertexSet& x, const Constants& c) {
    if (!contains(x, I.root) || intersects(x, I.ghosts)) return false;
    for (Vertex u : x)
        if (!I.g.contains(u)) return false;
    if (static_cast<double>(x.size()) > c.k - c.pattern_slack() * I.credit + 1e-9) return false;
    // Reachability from r through X u R.
    VertexFlags allowed(set_union(x, I.ghosts), I.g.id_bound());
    VertexFlags blocked;
    for (Vertex v : I.g.vertices())
        if (!allowed[v]) blocked.set(v);
    return is_subset(x, reach_avoiding(I.g, I.root, blocked));
}

double log_lb_value(std::size_t n, std::int64_t pi, std::int64_t gamma, std::int64_t phi, const Constants& c) {
    if (pi <= 0) return 0.0;
    const double k = c.k;
    const double lglgn = n < 4 ? 1.0 : std::log2(std::log2(static_cast<double>(n)));
    const double P = static_cast<double>(pi);
    const double first = -c.c1 * ((std::log2(k) + lglgn) / std::sqrt(k)) * (P * std::log2(P) + static_cast<double>(phi));
    const double lg_gamma = gamma <= 1 ? 0.0 : std::log2(static_cast<double>(gamma));
    const double exponent = c.c2 * P * lg_gamma;
    if (exponent == 0.0) return first;
    if (c.k == 1) return -std::numeric_limits<double>::infinity();
    return first + exponent * std::log1p(-1.0 / k);
}

double lb_value(std::size_t n, std::int64_t pi, std::int64_t gamma, std::int64_t phi, const Constants& c) {
    return std::exp(log_lb_value(n, pi, gamma, phi, c));
}

std::optional<std::string> instance_violation(const Instance& I, const Constants& c) {
    const Graph& g = I.g;
    if (!g.contains(I.root)) return "root is not a vertex";
    for (const auto* s : {&I.light, &I.heavy, &I.ghosts}) {
        if (!std::is_sorted(s->begin(), s->end())) return "vertex set not sorted";
        for (Vertex v : *s)
            if (!g.contains(v)) return "set member " + std::to_string(v) + " is not a vertex";
    }
    if (!contains(I.light, I.root)) return "root is not a light terminal";
    if (intersects(I.light, I.heavy)) return "light and heavy terminals overlap";
    if (intersects(I.ghosts, I.light) || intersects(I.ghosts, I.heavy)) return "a terminal is a ghost";
    if (I.credit < 0) return "negative credit";
    auto dist = ghost_distances(g, VertexFlags(I.ghosts, g.id_bound()), I.root);
    for (Vertex v : I.light)
        if (dist[v] > 3) return "light terminal " + std::to_string(v) + " at distance " + std::to_string(dist[v]);
    const double t = static_cast<double>(I.light.size() + I.heavy.size());
    if (t > c.terminal_cap() + I.credit + 1e-9)
        return "terminal count " + std::to_string(I.light.size() + I.heavy.size()) + " exceeds the cap";
    return std::nullopt;
}

std::size_t DebugReport::violations() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const LawCheck& l) { return !l.ok; }));
}

}  // namespace lowtw
