#include "lowtw/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace lowtw {

namespace {

std::int64_t parse_int(const std::string& s, const char* what) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
    }
    return false;
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Weight parse_weight(const std::string& token) {
    if (token.empty()) throw ParseError("empty weight");
    auto slash = token.find('/');
    if (slash != std::string::npos) {
        auto num = parse_int(token.substr(0, slash), "weight numerator");
        auto den = parse_int(token.substr(slash + 1), "weight denominator");
        if (den == 0) throw ParseError("zero weight denominator");
        return Weight(num, den);
    }
    auto dot = token.find('.');
    if (dot == std::string::npos) return Weight(parse_int(token, "weight"));
    std::string whole = token.substr(0, dot);
    std::string frac = token.substr(dot + 1);
    if (frac.empty() || frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad decimal weight: '" + token + "'");
    bool negative = !whole.empty() && whole[0] == '-';
    if (negative || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
    std::int64_t w = whole.empty() ? 0 : parse_int(whole, "weight");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Weight out(w * scale + parse_int(frac, "weight"), scale);
    return negative ? -out : out;
}

std::string format_weight(const Weight& w) {
    if (w.denominator() == 1) return std::to_string(w.numerator());
    return std::to_string(w.numerator()) + "/" + std::to_string(w.denominator());
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw ParseError("missing header line");
    auto head = split(line);
    if (head.size() < 2) throw ParseError("header needs `n m`");
    auto n = parse_int(head[0], "vertex count");
    auto m = parse_int(head[1], "edge count");
    if (n < 0 || m < 0) throw ParseError("negative counts in header");
    bool directed = false;
    bool weighted = false;
    for (std::size_t i = 2; i < head.size(); ++i) {
        if (head[i] == "directed") directed = true;
        else if (head[i] == "weighted") weighted = true;
        else throw ParseError("unknown header flag '" + head[i] + "'");
    }
    Graph g(static_cast<std::size_t>(n));
    g.set_directed(directed);
    for (std::int64_t e = 0; e < m; ++e) {
        if (!next_content_line(in, line))
            throw ParseError("expected " + std::to_string(m) + " edges, got " + std::to_string(e));
        auto tok = split(line);
        if (tok.size() != (weighted ? 3u : 2u))
            throw ParseError("edge line " + std::to_string(e + 1) + " has wrong field count");
        auto u = parse_int(tok[0], "vertex id");
        auto v = parse_int(tok[1], "vertex id");
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("vertex id out of range on edge line " + std::to_string(e + 1));
        if (u == v) throw ParseError("self-loop on edge line " + std::to_string(e + 1));
        auto a = static_cast<Vertex>(u);
        auto b = static_cast<Vertex>(v);
        if (directed) {
            if (g.has_arc(a, b)) throw ParseError("duplicate arc on edge line " + std::to_string(e + 1));
            g.add_arc(a, b);
        } else {
            if (g.adjacent(a, b)) throw ParseError("parallel edge on edge line " + std::to_string(e + 1));
            g.add_edge(a, b);
        }
        if (weighted) g.set_weight(a, b, parse_weight(tok[2]));
    }
    if (next_content_line(in, line)) throw ParseError("trailing content after edge list");
    return g;
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    // Ids are written as-is; callers compact first when ids have gaps.
    bool weighted = g.weighted();
    if (g.directed()) {
        out << g.id_bound() << ' ' << g.arcs().size() << " directed" << (weighted ? " weighted" : "") << '\n';
        for (const auto& [u, v] : g.arcs()) {
            out << u << ' ' << v;
            if (weighted) out << ' ' << format_weight(g.weight(u, v).value_or(Weight(1)));
            out << '\n';
        }
        return;
    }
    auto edges = g.edges();
    out << g.id_bound() << ' ' << edges.size() << (weighted ? " weighted" : "") << '\n';
    for (const auto& [u, v] : edges) {
        out << u << ' ' << v;
        if (weighted) out << ' ' << format_weight(g.weight(u, v).value_or(Weight(1)));
        out << '\n';
    }
}

VertexSet read_vertex_set(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    std::vector<Vertex> ids;
    if (first != std::string::npos && text[first] == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad JSON vertex set: ") + e.what());
        }
        for (const auto& x : j) {
            if (!x.is_number_unsigned()) throw ParseError("vertex set entries must be nonnegative integers");
            ids.push_back(x.get<Vertex>());
        }
    } else {
        std::istringstream ss(text);
        std::string line;
        while (next_content_line(ss, line)) {
            for (const auto& tok : split(line)) {
                auto v = parse_int(tok, "vertex id");
                if (v < 0) throw ParseError("negative vertex id");
                ids.push_back(static_cast<Vertex>(v));
            }
        }
    }
    return make_set(std::move(ids));
}

VertexSet read_vertex_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open vertex-set file '" + path + "'");
    return read_vertex_set(in);
}

}  // namespace lowtw
