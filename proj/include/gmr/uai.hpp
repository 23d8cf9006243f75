#pragma once

#include <gmr/csp.hpp>
#include <gmr/model.hpp>
#include <gmr/text_io.hpp>

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gmr {

/// UAI `MARKOV` text for a model. Variable i is the i-th vertex in label order; vertex factors
/// come first, then one factor per edge with scope (i, j), i < j. Entries are written as exact
/// rationals (`a/b`), an extension of the plain UAI number syntax.
inline auto format_uai(const Model & m) -> std::string
{
    IndexedGraph ig(m.graph());
    int n = ig.size(), q = m.cardinality();
    auto edges = m.graph().edges();
    std::ostringstream out;
    out << "MARKOV\n" << n << '\n';
    for (int i = 0; i < n; ++i)
        out << (i ? " " : "") << q;
    out << '\n' << (n + edges.size()) << '\n';
    std::map<Label, int, LabelLess> index;
    for (int i = 0; i < n; ++i) {
        index.emplace(ig.labels[i], i);
        out << "1 " << i << '\n';
    }
    for (auto & [u, v] : edges)
        out << "2 " << index.at(u) << ' ' << index.at(v) << '\n';
    for (int i = 0; i < n; ++i) {
        out << '\n' << q << '\n';
        for (auto & x : m.vertex_potential(ig.labels[i]))
            out << ' ' << x;
        out << '\n';
    }
    for (auto & [u, v] : edges) {
        out << '\n' << q * q << '\n';
        auto table = m.edge_potential(u, v);
        for (int a = 0; a < q; ++a) {
            for (int b = 0; b < q; ++b)
                out << ' ' << table[a * q + b];
            out << '\n';
        }
    }
    return out.str();
}

/// The sidecar ordering line: variable index -> vertex label.
inline auto format_uai_labels(const Model & m) -> std::string
{
    std::string line;
    for (auto & v : m.graph().vertices())
        line += (line.empty() ? "" : " ") + v;
    return line + "\n";
}

/// Parses a pairwise UAI `MARKOV` model. `labels` maps variable index to vertex label and defaults
/// to the decimal indices. Several factors on the same scope are merged by pointwise product.
inline auto parse_uai(std::string_view text, std::optional<std::vector<Label>> labels = std::nullopt) -> Model
{
    std::istringstream in{std::string(text)};
    auto next = [&](const char * what) {
        std::string token;
        if (! (in >> token))
            throw Error(ErrorKind::Malformed, std::string("UAI: unexpected end of input, expected ") + what);
        return token;
    };
    auto next_count = [&](const char * what) { return text::parse_count(next(what), 0, what); };

    if (next("preamble") != "MARKOV")
        throw Error(ErrorKind::Malformed, "UAI: only MARKOV networks are supported");
    auto n = next_count("variable count");
    int q = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto c = static_cast<int>(next_count("cardinality"));
        if (c < 2 || (q && c != q))
            throw Error(ErrorKind::InvalidModel, "UAI: all variables must share one cardinality >= 2");
        q = c;
    }
    if (n == 0)
        q = 2;
    if (! labels) {
        labels.emplace();
        for (std::size_t i = 0; i < n; ++i)
            labels->push_back(std::to_string(i));
    }
    if (labels->size() != n)
        throw Error(ErrorKind::Malformed, "UAI: label sidecar lists " + std::to_string(labels->size()) + " labels for "
                + std::to_string(n) + " variables");

    auto factor_count = next_count("factor count");
    std::vector<std::vector<std::size_t>> scopes;
    for (std::size_t f = 0; f < factor_count; ++f) {
        auto k = next_count("scope size");
        if (k != 1 && k != 2)
            throw Error(ErrorKind::Malformed, "UAI: factor scopes must have one or two variables");
        std::vector<std::size_t> scope;
        for (std::size_t i = 0; i < k; ++i) {
            auto v = next_count("variable index");
            if (v >= n)
                throw Error(ErrorKind::Malformed, "UAI: variable index out of range");
            scope.push_back(v);
        }
        if (k == 2 && scope[0] == scope[1])
            throw Error(ErrorKind::Malformed, "UAI: pairwise factor repeats a variable");
        scopes.push_back(scope);
    }

    LabeledGraph g;
    for (auto & l : *labels)
        g.add_vertex(l);
    for (auto & s : scopes)
        if (s.size() == 2)
            g.add_edge((*labels)[s[0]], (*labels)[s[1]]);
    Model model(g, q);

    for (auto & s : scopes) {
        std::size_t expected = s.size() == 1 ? q : q * q;
        if (next_count("table size") != expected)
            throw Error(ErrorKind::Malformed, "UAI: table size does not match its scope");
        std::vector<ExactNumber> entries;
        for (std::size_t i = 0; i < expected; ++i)
            entries.push_back(ExactNumber::parse(next("table entry")));
        if (s.size() == 1) {
            auto & label = (*labels)[s[0]];
            auto table = model.vertex_potential(label);
            for (int a = 0; a < q; ++a)
                table[a] *= entries[a];
            model.set_vertex_potential(label, std::move(table));
        }
        else {
            auto & u = (*labels)[s[0]];
            auto & v = (*labels)[s[1]];
            auto table = model.edge_potential(u, v);
            for (std::size_t i = 0; i < expected; ++i)
                table[i] *= entries[i];
            model.set_edge_potential(u, v, std::move(table));
        }
    }
    std::string extra;
    if (in >> extra)
        throw Error(ErrorKind::Malformed, "UAI: trailing content '" + extra + "'");
    return model;
}

inline auto parse_uai_labels(std::string_view text) -> std::vector<Label>
{
    std::vector<Label> labels;
    for (auto & line : text::significant_lines(text))
        for (auto & t : line.tokens)
            labels.push_back(t);
    return labels;
}

inline auto labels_sidecar_path(const std::string & uai_path) -> std::string { return uai_path + ".labels"; }
inline auto threshold_sidecar_path(const std::string & uai_path) -> std::string { return uai_path + ".threshold"; }

/// Reads `path` and, when present, its `.labels` sidecar.
inline auto read_uai(const std::string & path) -> Model
{
    std::optional<std::vector<Label>> labels;
    if (std::filesystem::exists(labels_sidecar_path(path)))
        labels = parse_uai_labels(text::read_file(labels_sidecar_path(path)));
    return parse_uai(text::read_file(path), std::move(labels));
}

/// Writes the model and its `.labels` sidecar.
inline void write_uai(const std::string & path, const Model & m)
{
    text::write_file(path, format_uai(m));
    text::write_file(labels_sidecar_path(path), format_uai_labels(m));
}

/// Threshold sidecar for an encoded CSP: `mode`, `epsilon` and the constraint count `m`.
struct ThresholdSidecar
{
    std::string mode;
    ExactNumber epsilon;
    std::size_t m = 0;
};

inline auto format_threshold(const ThresholdSidecar & t) -> std::string
{
    return "mode " + t.mode + "\nepsilon " + t.epsilon.to_string() + "\nm " + std::to_string(t.m) + "\n";
}

inline auto parse_threshold(std::string_view text) -> ThresholdSidecar
{
    ThresholdSidecar t;
    bool has_mode = false, has_eps = false, has_m = false;
    for (auto & line : text::significant_lines(text)) {
        if (line.tokens.size() != 2)
            throw Error(ErrorKind::Malformed, "threshold line " + std::to_string(line.number) + ": expected `key value`");
        const auto & key = line.tokens[0];
        const auto & value = line.tokens[1];
        if (key == "mode") {
            t.mode = value;
            has_mode = true;
        }
        else if (key == "epsilon") {
            t.epsilon = ExactNumber::parse(value);
            has_eps = true;
        }
        else if (key == "m") {
            t.m = text::parse_count(value, line.number, "constraint count");
            has_m = true;
        }
        else
            throw Error(ErrorKind::Malformed, "threshold line " + std::to_string(line.number) + ": unknown key '" + key + "'");
    }
    if (! has_mode || ! has_eps || ! has_m)
        throw Error(ErrorKind::Malformed, "threshold sidecar needs mode, epsilon and m");
    return t;
}

} // namespace gmr
