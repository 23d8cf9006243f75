#pragma once

#include <gmr/error.hpp>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>

namespace gmr {

using Label = std::string;

/// Natural ordering: digit runs compare numerically, so `x2 < x10` and `1,9 < 1,10`.
/// Ties (e.g. `x01` vs `x1`) fall back to plain byte order, keeping the relation total.
inline auto natural_compare(std::string_view a, std::string_view b) -> int
{
    std::size_t i = 0, j = 0;
    auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < a.size() && j < b.size()) {
        if (digit(a[i]) && digit(b[j])) {
            std::size_t i_end = i, j_end = j;
            while (i_end < a.size() && digit(a[i_end]))
                ++i_end;
            while (j_end < b.size() && digit(b[j_end]))
                ++j_end;
            std::size_t i_nz = i, j_nz = j;
            while (i_nz + 1 < i_end && a[i_nz] == '0')
                ++i_nz;
            while (j_nz + 1 < j_end && b[j_nz] == '0')
                ++j_nz;
            std::size_t len_a = i_end - i_nz, len_b = j_end - j_nz;
            if (len_a != len_b)
                return len_a < len_b ? -1 : 1;
            if (int c = a.substr(i_nz, len_a).compare(b.substr(j_nz, len_b)); c != 0)
                return c < 0 ? -1 : 1;
            i = i_end;
            j = j_end;
        }
        else {
            if (a[i] != b[j])
                return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]) ? -1 : 1;
            ++i;
            ++j;
        }
    }
    if (i < a.size() || j < b.size())
        return i < a.size() ? 1 : -1;
    int c = a.compare(b);
    return c < 0 ? -1 : c > 0 ? 1 : 0;
}

struct LabelLess
{
    using is_transparent = void;
    auto operator()(std::string_view a, std::string_view b) const -> bool { return natural_compare(a, b) < 0; }
};

/// Labels travel through whitespace-separated file formats and the `label: ...` chain format.
inline auto is_valid_label(std::string_view label) -> bool
{
    if (label.empty())
        return false;
    for (char c : label)
        if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '#')
            return false;
    return true;
}

inline void require_valid_label(std::string_view label)
{
    if (! is_valid_label(label))
        throw Error(ErrorKind::InvalidGraph, "invalid vertex label '" + std::string(label) + "'");
}

/// Unordered edge stored with its endpoints in label order.
using Edge = std::pair<Label, Label>;

inline auto make_edge(Label u, Label v) -> Edge
{
    if (natural_compare(u, v) > 0)
        std::swap(u, v);
    return {std::move(u), std::move(v)};
}

struct EdgeLess
{
    auto operator()(const Edge & a, const Edge & b) const -> bool
    {
        if (int c = natural_compare(a.first, b.first); c != 0)
            return c < 0;
        return natural_compare(a.second, b.second) < 0;
    }
};

/// 64-bit FNV-1a; fingerprints are this hash of a canonical text rendering, printed as 16 hex digits.
inline auto fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL) -> std::uint64_t
{
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline auto to_hex(std::uint64_t value) -> std::string
{
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

inline auto fingerprint_of(std::string_view canonical_text) -> std::string { return to_hex(fnv1a(canonical_text)); }

} // namespace gmr
