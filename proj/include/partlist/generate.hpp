#pragma once

#include "graph.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace plc {

// Reproducible generator for gnp catalogs:
//   state = splitmix64(seed)  (state 0 is replaced by 0x9E3779B97F4A7C15)
//   next: x ^= x << 13; x ^= x >> 7; x ^= x << 17; return x
// Edge {i, j} (i < j) is drawn in graph6 order (j ascending, then i ascending)
// and kept iff next() % den < num.
class Xorshift64 {
public:
    explicit Xorshift64(std::uint64_t seed)
    {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        state_ = z ^ (z >> 31);
        if (state_ == 0)
            state_ = 0x9E3779B97F4A7C15ULL;
    }

    std::uint64_t next()
    {
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        return state_;
    }

    // Uniform-ish integer in [0, bound); modulo bias is irrelevant at these bounds.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

struct Probability {
    std::uint64_t num = 1;
    std::uint64_t den = 2;
};

namespace family {
struct Complete { int n; };
struct Cycle { int n; };
struct Path { int n; };
struct CompleteBipartite { int left; int right; };
struct Petersen {};
struct Gnp { int n; Probability p; std::uint64_t seed; };
} // namespace family

using FamilySpec = std::variant<family::Complete, family::Cycle, family::Path, family::CompleteBipartite,
                                family::Petersen, family::Gnp>;

inline Graph generate_gnp(int n, Probability p, Xorshift64& rng)
{
    std::vector<std::pair<int, int>> edges;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (rng.below(p.den) < p.num)
                edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

inline Graph generate(const FamilySpec& spec)
{
    auto check_order = [](int n) {
        if (n < 1 || n > kMaxVertices)
            throw SizeError("family order " + std::to_string(n) + " outside [1, 64]");
    };
    return std::visit(
        [&](const auto& f) -> Graph {
            using T = std::decay_t<decltype(f)>;
            std::vector<std::pair<int, int>> edges;
            if constexpr (std::is_same_v<T, family::Complete>) {
                check_order(f.n);
                for (int j = 1; j < f.n; ++j)
                    for (int i = 0; i < j; ++i)
                        edges.emplace_back(i, j);
                return Graph::from_edges(f.n, edges);
            } else if constexpr (std::is_same_v<T, family::Cycle>) {
                if (f.n < 3)
                    throw GraphError("cycle needs at least 3 vertices");
                check_order(f.n);
                for (int i = 0; i < f.n; ++i)
                    edges.emplace_back(i, (i + 1) % f.n);
                return Graph::from_edges(f.n, edges);
            } else if constexpr (std::is_same_v<T, family::Path>) {
                check_order(f.n);
                for (int i = 0; i + 1 < f.n; ++i)
                    edges.emplace_back(i, i + 1);
                return Graph::from_edges(f.n, edges);
            } else if constexpr (std::is_same_v<T, family::CompleteBipartite>) {
                if (f.left < 1 || f.right < 1)
                    throw GraphError("complete bipartite sides must be positive");
                check_order(f.left + f.right);
                for (int i = 0; i < f.left; ++i)
                    for (int j = 0; j < f.right; ++j)
                        edges.emplace_back(i, f.left + j);
                return Graph::from_edges(f.left + f.right, edges);
            } else if constexpr (std::is_same_v<T, family::Petersen>) {
                // outer 5-cycle 0..4, spokes i -> i+5, inner pentagram
                for (int i = 0; i < 5; ++i) {
                    edges.emplace_back(i, (i + 1) % 5);
                    edges.emplace_back(i, i + 5);
                    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
                }
                return Graph::from_edges(10, edges);
            } else {
                check_order(f.n);
                if (f.p.den == 0 || f.p.num > f.p.den)
                    throw GraphError("edge probability must lie in [0, 1]");
                Xorshift64 rng(f.seed);
                return generate_gnp(f.n, f.p, rng);
            }
        },
        spec);
}

namespace detail {

inline std::vector<std::uint64_t> parse_uints(std::string_view s, char sep)
{
    std::vector<std::uint64_t> out;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t j = s.find(sep, i);
        if (j == std::string_view::npos)
            j = s.size();
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data() + i, s.data() + j, v);
        if (ec != std::errc{} || p != s.data() + j || i == j)
            throw GraphError("bad number '" + std::string(s.substr(i, j - i)) + "' in family spec");
        out.push_back(v);
        i = j + 1;
    }
    return out;
}

} // namespace detail

inline Probability parse_probability(std::string_view s)
{
    auto parts = detail::parse_uints(s, '/');
    if (parts.size() == 1)
        parts.push_back(1);
    if (parts.size() != 2 || parts[1] == 0 || parts[0] > parts[1])
        throw GraphError("edge probability must be a fraction in [0, 1], got '" + std::string(s) + "'");
    return {parts[0], parts[1]};
}

// complete:N  cycle:N  path:N  bipartite:M,N  petersen  gnp:N,P/Q,SEED
inline FamilySpec parse_family(std::string_view text)
{
    auto colon = text.find(':');
    std::string_view name = text.substr(0, colon);
    std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    auto ints = [&](std::size_t count) {
        auto v = detail::parse_uints(args, ',');
        if (v.size() != count)
            throw GraphError("family '" + std::string(name) + "' expects " + std::to_string(count) + " arguments");
        for (auto x : v)
            if (x > 1000)
                throw SizeError("family argument too large");
        return v;
    };
    if (name == "complete")
        return family::Complete{static_cast<int>(ints(1)[0])};
    if (name == "cycle")
        return family::Cycle{static_cast<int>(ints(1)[0])};
    if (name == "path")
        return family::Path{static_cast<int>(ints(1)[0])};
    if (name == "bipartite") {
        auto v = ints(2);
        return family::CompleteBipartite{static_cast<int>(v[0]), static_cast<int>(v[1])};
    }
    if (name == "petersen" && args.empty())
        return family::Petersen{};
    if (name == "gnp") {
        auto first = args.find(',');
        auto last = args.rfind(',');
        if (first == std::string_view::npos || first == last)
            throw GraphError("gnp expects N,P/Q,SEED");
        auto n = detail::parse_uints(args.substr(0, first), ',');
        auto seed = detail::parse_uints(args.substr(last + 1), ',');
        if (n[0] > 1000)
            throw SizeError("family argument too large");
        return family::Gnp{static_cast<int>(n[0]), parse_probability(args.substr(first + 1, last - first - 1)), seed[0]};
    }
    throw GraphError("unknown family '" + std::string(text) + "'");
}

} // namespace plc
