#pragma once

#include <gmr/graph.hpp>
#include <gmr/text_io.hpp>

#include <string>
#include <string_view>

namespace gmr {

/// Edge-list format: `n m`, then n vertex labels, then m lines `u v`. `#` starts a comment.
inline auto parse_graph(std::string_view text) -> LabeledGraph
{
    auto lines = text::significant_lines(text);
    if (lines.empty() || lines[0].tokens.size() != 2)
        throw Error(ErrorKind::Malformed, "graph header must be `n m`");
    auto n = text::parse_count(lines[0].tokens[0], lines[0].number, "vertex count");
    auto m = text::parse_count(lines[0].tokens[1], lines[0].number, "edge count");
    if (lines.size() != 1 + n + m)
        throw Error(ErrorKind::Malformed, "expected " + std::to_string(n) + " vertex lines and " + std::to_string(m)
                + " edge lines, found " + std::to_string(lines.size() - 1) + " lines");

    LabeledGraph g;
    for (std::size_t i = 1; i <= n; ++i) {
        auto & line = lines[i];
        if (line.tokens.size() != 1)
            throw Error(ErrorKind::Malformed, "line " + std::to_string(line.number) + ": expected one vertex label");
        if (g.has_vertex(line.tokens[0]))
            throw Error(ErrorKind::InvalidGraph, "line " + std::to_string(line.number) + ": duplicate vertex '" + line.tokens[0] + "'");
        g.add_vertex(line.tokens[0]);
    }
    for (std::size_t i = 1 + n; i < lines.size(); ++i) {
        auto & line = lines[i];
        if (line.tokens.size() != 2)
            throw Error(ErrorKind::Malformed, "line " + std::to_string(line.number) + ": expected `u v`");
        if (g.has_edge(line.tokens[0], line.tokens[1]))
            throw Error(ErrorKind::InvalidGraph, "line " + std::to_string(line.number) + ": duplicate edge");
        g.add_edge(line.tokens[0], line.tokens[1]);
    }
    return g;
}

inline auto format_graph(const LabeledGraph & g) -> std::string { return g.canonical_text(); }

inline auto read_graph(const std::string & path) -> LabeledGraph { return parse_graph(text::read_file(path)); }

inline void write_graph(const std::string & path, const LabeledGraph & g) { text::write_file(path, format_graph(g)); }

} // namespace gmr
