#pragma once

#include <gmr/graph.hpp>
#include <gmr/minor.hpp>
#include <gmr/text_io.hpp>

#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gmr {

using Chains = std::map<Label, LabelSet, LabelLess>;

/// Witness that `target` is a minor of `host`: every target vertex owns a connected, nonempty
/// set of host vertices, the sets are disjoint, and every target edge is realised by a host edge
/// between the two chains.
struct ChainEmbedding
{
    LabeledGraph target;
    LabeledGraph host;
    Chains chains;

    /// First violated invariant, or nothing.
    auto check() const -> std::optional<std::string>
    {
        std::map<Label, Label, LabelLess> owner;
        for (auto & [t, chain] : chains) {
            if (! target.has_vertex(t))
                return "chain for '" + t + "', which is not a target vertex";
            if (chain.empty())
                return "chain of '" + t + "' is empty";
            for (auto & h : chain) {
                if (! host.has_vertex(h))
                    return "chain of '" + t + "' uses '" + h + "', which is not a host vertex";
                if (auto [it, fresh] = owner.emplace(h, t); ! fresh)
                    return "host vertex '" + h + "' is in the chains of both '" + it->second + "' and '" + t + "'";
            }
            LabelSet seen{*chain.begin()};
            std::vector<Label> stack{*chain.begin()};
            while (! stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                for (auto & w : host.neighbors(v))
                    if (chain.count(w) && seen.insert(w).second)
                        stack.push_back(w);
            }
            if (seen.size() != chain.size())
                return "chain of '" + t + "' is not connected in the host";
        }
        for (auto & t : target.vertices())
            if (! chains.count(t))
                return "target vertex '" + t + "' has no chain";
        for (auto & [a, b] : target.edges()) {
            bool realised = false;
            for (auto & h : chains.at(a)) {
                for (auto & w : host.neighbors(h))
                    if (chains.at(b).count(w)) {
                        realised = true;
                        break;
                    }
                if (realised)
                    break;
            }
            if (! realised)
                return "no host edge joins the chains of '" + a + "' and '" + b + "'";
        }
        return std::nullopt;
    }

    void verify() const
    {
        if (auto problem = check())
            throw Error(ErrorKind::InvalidChains, *problem);
    }
};

/// Host-to-target minor sequence realising a chain embedding: delete unused host vertices,
/// contract each chain along a BFS tree into its smallest vertex, rename the survivors to target
/// labels, then delete edges the target does not have.
inline auto chains_to_minor_sequence(const ChainEmbedding & e) -> MinorSequence
{
    e.verify();
    MinorSequence seq{e.host.fingerprint(), {}};
    LabelSet used;
    for (auto & [t, chain] : e.chains)
        used.insert(chain.begin(), chain.end());
    for (auto & h : e.host.vertices())
        if (! used.count(h))
            seq.ops.push_back(VertexDelete{h});

    std::map<Label, Label, LabelLess> root_of;
    for (auto & [t, chain] : e.chains) {
        auto & root = *chain.begin();
        root_of.emplace(t, root);
        LabelSet seen{root};
        std::deque<Label> queue{root};
        while (! queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            for (auto & w : e.host.neighbors(v))
                if (chain.count(w) && seen.insert(w).second) {
                    // the BFS parent has already been merged into root, so {root, w} is an edge
                    seq.ops.push_back(Contract{root, w, root});
                    queue.push_back(w);
                }
        }
    }

    // Renaming roots to target labels is a parallel assignment; break cycles through spare labels.
    LabelSet occupied;
    for (auto & [t, root] : root_of)
        occupied.insert(root);
    std::map<Label, Label, LabelLess> pending; // current label -> wanted label
    for (auto & [t, root] : root_of)
        if (root != t)
            pending.emplace(root, t);
    std::size_t spare = 0;
    while (! pending.empty()) {
        bool progress = false;
        for (auto it = pending.begin(); it != pending.end();) {
            if (! occupied.count(it->second)) {
                seq.ops.push_back(Relabel{it->first, it->second});
                occupied.erase(it->first);
                occupied.insert(it->second);
                it = pending.erase(it);
                progress = true;
            }
            else
                ++it;
        }
        if (! progress) {
            Label temp;
            do
                temp = "~tmp" + std::to_string(spare++);
            while (occupied.count(temp) || e.target.has_vertex(temp));
            auto it = pending.begin();
            auto wanted = it->second;
            seq.ops.push_back(Relabel{it->first, temp});
            occupied.erase(it->first);
            occupied.insert(temp);
            pending.erase(it);
            pending.emplace(temp, wanted);
        }
    }

    auto quotient = apply_minor_sequence(e.host, seq);
    for (auto & [u, v] : quotient.edges())
        if (! e.target.has_edge(u, v))
            seq.ops.push_back(EdgeDelete{u, v});
    return seq;
}

/// `.chains` text: one line per target vertex, `label: h1 h2 ...`.
inline auto format_chains(const Chains & chains) -> std::string
{
    std::ostringstream out;
    for (auto & [t, chain] : chains) {
        out << t << ':';
        for (auto & h : chain)
            out << ' ' << h;
        out << '\n';
    }
    return out.str();
}

inline auto parse_chains(std::string_view text) -> Chains
{
    Chains chains;
    std::size_t number = 0;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw Error(ErrorKind::Malformed, "chains line " + std::to_string(number) + ": expected `label: h1 h2 ...`");
        std::istringstream head(line.substr(0, colon)), rest(line.substr(colon + 1));
        std::string label, extra;
        if (! (head >> label) || (head >> extra))
            throw Error(ErrorKind::Malformed, "chains line " + std::to_string(number) + ": expected one label before ':'");
        if (chains.count(label))
            throw Error(ErrorKind::Malformed, "chains line " + std::to_string(number) + ": duplicate label '" + label + "'");
        LabelSet chain;
        for (std::string h; rest >> h;)
            if (! chain.insert(h).second)
                throw Error(ErrorKind::Malformed, "chains line " + std::to_string(number) + ": repeated host vertex '" + h + "'");
        chains.emplace(label, std::move(chain));
    }
    return chains;
}

inline auto read_chains(const std::string & path) -> Chains { return parse_chains(text::read_file(path)); }
inline void write_chains(const std::string & path, const Chains & chains) { text::write_file(path, format_chains(chains)); }

} // namespace gmr
