#pragma once

#include <gmr/error.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace gmr::text {

/// Splits text into lines with `#` comments removed and blank lines dropped.
/// Each entry keeps its 1-based source line number for diagnostics.
struct Line
{
    std::size_t number;
    std::vector<std::string> tokens;
};

inline auto significant_lines(std::string_view text) -> std::vector<Line>
{
    std::vector<Line> result;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++number;
        auto line = text.substr(pos, end - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::istringstream in{std::string(line)};
        Line parsed{number, {}};
        for (std::string token; in >> token;)
            parsed.tokens.push_back(token);
        if (! parsed.tokens.empty())
            result.push_back(std::move(parsed));
        if (end == text.size())
            break;
        pos = end + 1;
    }
    return result;
}

inline auto read_file(const std::string & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string & path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (! out)
        throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << contents;
    if (! out)
        throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

inline auto parse_count(const std::string & token, std::size_t line, const char * what) -> std::size_t
{
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos || token.size() > 18)
        throw Error(ErrorKind::Malformed, "line " + std::to_string(line) + ": expected " + what + ", got '" + token + "'");
    return std::stoull(token);
}

} // namespace gmr::text
