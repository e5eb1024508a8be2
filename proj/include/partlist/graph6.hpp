#pragma once

#include "graph.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace plc {

enum class ParseErrorKind {
    BadHeader,
    ByteOutOfRange,
    Truncated,
    TrailingGarbage,
    BadPadding,
    TooLarge,
    BadToken,
    Loop,
    IndexOutOfRange,
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t offset, const std::string& what)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), kind_(kind), offset_(offset)
    {
    }

    ParseErrorKind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }

private:
    ParseErrorKind kind_;
    std::size_t offset_;
};

namespace detail {

inline std::string_view strip_line_end(std::string_view s)
{
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace detail

// Standard graph6: size field, then the upper triangle column by column
// (x01, x02, x12, x03, ...) packed big-endian into 6-bit groups, each stored as 63 + value.
inline Graph parse_graph6(std::string_view text)
{
    text = detail::strip_line_end(text);
    std::size_t pos = 0;
    constexpr std::string_view kHeader = ">>graph6<<";
    if (text.substr(0, kHeader.size()) == kHeader)
        pos = kHeader.size();
    const std::string_view body = text.substr(pos);

    auto value_at = [&](std::size_t i) -> int {
        if (i >= text.size())
            throw ParseError(ParseErrorKind::Truncated, i, "graph6 input ends early");
        auto c = static_cast<unsigned char>(text[i]);
        if (c < 63 || c > 126)
            throw ParseError(ParseErrorKind::ByteOutOfRange, i, "graph6 byte outside 63..126");
        return c - 63;
    };

    if (pos >= text.size())
        throw ParseError(ParseErrorKind::BadHeader, pos, "missing graph6 size field");
    long n = 0;
    int first = value_at(pos);
    if (first < 63) {
        n = first;
        pos += 1;
    } else {
        if (pos + 1 < text.size() && text[pos + 1] == 126)
            throw ParseError(ParseErrorKind::TooLarge, pos, "graph6 order above 64");
        for (int k = 1; k <= 3; ++k) {
            if (pos + k >= text.size())
                throw ParseError(ParseErrorKind::BadHeader, pos + k, "graph6 size field cut short");
            n = (n << 6) | value_at(pos + k);
        }
        pos += 4;
    }
    if (n > kMaxVertices)
        throw ParseError(ParseErrorKind::TooLarge, 0, "graph6 order " + std::to_string(n) + " above 64");
    if (n < 1)
        throw ParseError(ParseErrorKind::BadHeader, 0, "graph6 order must be at least 1");

    const int order = static_cast<int>(n);
    const std::size_t nbits = static_cast<std::size_t>(order) * (order - 1) / 2;
    const std::size_t nbytes = (nbits + 5) / 6;
    if (text.size() < pos + nbytes)
        throw ParseError(ParseErrorKind::Truncated, text.size(), "graph6 payload too short");
    if (text.size() > pos + nbytes)
        throw ParseError(ParseErrorKind::TrailingGarbage, pos + nbytes, "unexpected bytes after graph6 payload");

    std::vector<Bits> rows(static_cast<std::size_t>(order), 0);
    std::size_t k = 0;
    for (int j = 1; j < order; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            int byte = value_at(pos + k / 6);
            if ((byte >> (5 - k % 6)) & 1) {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
        }
    }
    if (nbits % 6 != 0) {
        int last = value_at(pos + nbytes - 1);
        if (last & static_cast<int>(low_bits(static_cast<int>(6 - nbits % 6))))
            throw ParseError(ParseErrorKind::BadPadding, pos + nbytes - 1, "nonzero graph6 padding bits");
    }
    for (std::size_t i = pos; i < text.size(); ++i)
        value_at(i);
    return Graph::from_rows(std::move(rows)).with_label(std::string(body));
}

inline std::string emit_graph6(const Graph& g)
{
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else {
        out.push_back(static_cast<char>(126));
        out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
        out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
        out.push_back(static_cast<char>(63 + (n & 63)));
    }
    int acc = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(63 + acc));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0)
        out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
    return out;
}

// "n" on the first line, then one "u v" pair per line with 0-based endpoints.
inline Graph parse_edge_list(std::string_view text)
{
    std::size_t offset = 0;
    std::vector<std::vector<std::pair<long, std::size_t>>> lines;
    while (offset <= text.size()) {
        std::size_t end = text.find('\n', offset);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(offset, end - offset);
        std::vector<std::pair<long, std::size_t>> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
                ++j;
            long value = 0;
            auto [p, ec] = std::from_chars(line.data() + i, line.data() + j, value);
            if (ec != std::errc{} || p != line.data() + j)
                throw ParseError(ParseErrorKind::BadToken, offset + i,
                                 "non-integer token '" + std::string(line.substr(i, j - i)) + "'");
            tokens.emplace_back(value, offset + i);
            i = j;
        }
        if (!tokens.empty())
            lines.push_back(std::move(tokens));
        offset = end + 1;
    }
    if (lines.empty() || lines.front().size() != 1)
        throw ParseError(ParseErrorKind::BadHeader, 0, "edge list must start with a line holding n");
    const long n = lines.front().front().first;
    if (n < 1)
        throw ParseError(ParseErrorKind::BadHeader, lines.front().front().second, "vertex count must be positive");
    if (n > kMaxVertices)
        throw ParseError(ParseErrorKind::TooLarge, lines.front().front().second, "vertex count above 64");

    std::vector<std::pair<int, int>> edges;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto& tok = lines[l];
        if (tok.size() != 2)
            throw ParseError(ParseErrorKind::BadToken, tok.front().second, "edge line needs exactly two endpoints");
        for (auto [v, at] : tok)
            if (v < 0 || v >= n)
                throw ParseError(ParseErrorKind::IndexOutOfRange, at, "endpoint " + std::to_string(v) + " out of range");
        if (tok[0].first == tok[1].first)
            throw ParseError(ParseErrorKind::Loop, tok[0].second, "loop at vertex " + std::to_string(tok[0].first));
        edges.emplace_back(static_cast<int>(tok[0].first), static_cast<int>(tok[1].first));
    }
    return Graph::from_edges(static_cast<int>(n), edges);
}

enum class GraphFormat { Graph6, EdgeList };

// graph6 files hold one graph per line; edge-list files hold blocks separated by blank lines.
inline std::vector<Graph> parse_graph_stream(std::istream& in, GraphFormat format)
{
    std::vector<Graph> out;
    std::string line;
    if (format == GraphFormat::Graph6) {
        while (std::getline(in, line)) {
            std::string_view s = detail::strip_line_end(line);
            if (s.empty())
                continue;
            out.push_back(parse_graph6(s));
        }
        return out;
    }
    std::string block;
    auto flush = [&] {
        if (!block.empty())
            out.push_back(parse_edge_list(block));
        block.clear();
    };
    while (std::getline(in, line)) {
        if (detail::strip_line_end(line).find_first_not_of(" \t") == std::string_view::npos) {
            flush();
            continue;
        }
        block += line;
        block += '\n';
    }
    flush();
    return out;
}

inline std::vector<Graph> read_graph_file(const std::string& path, GraphFormat format)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file " + path);
    return parse_graph_stream(in, format);
}

} // namespace plc
