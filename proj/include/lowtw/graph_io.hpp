#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "lowtw/graph.hpp"

namespace lowtw {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Header `n m [directed] [weighted]`, then m lines `u v [w]`, ids 0-based.
// Blank lines and lines starting with '#' are skipped. Weights are integers,
// fractions p/q or finite decimals, all read exactly.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

// One id per line, or a JSON array of ids.
VertexSet read_vertex_set(std::istream& in);
VertexSet read_vertex_set_file(const std::string& path);

Weight parse_weight(const std::string& token);
std::string format_weight(const Weight& w);

}  // namespace lowtw
