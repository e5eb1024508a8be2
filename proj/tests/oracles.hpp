#pragma once

// Brute-force reference computations used by the tests. None of them share code with the
// library's solvers.

#include <partlist/graph.hpp>
#include <partlist/list_assignment.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using plc::Bits;
using plc::Graph;

// graph6 built from an explicit bit string, header for n < 63 only.
inline std::string graph6(const Graph& g)
{
    const int n = g.order();
    std::vector<int> bits;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            bits.push_back(g.adjacent(i, j) ? 1 : 0);
    while (bits.size() % 6)
        bits.push_back(0);
    std::string out(1, static_cast<char>(63 + n));
    for (std::size_t k = 0; k < bits.size(); k += 6) {
        int v = 0;
        for (int b = 0; b < 6; ++b)
            v = v * 2 + bits[k + b];
        out += static_cast<char>(63 + v);
    }
    return out;
}

inline bool independent(const Graph& g, Bits s)
{
    for (int u = 0; u < g.order(); ++u)
        if ((s >> u & 1) && (g.neighbors(u) & s))
            return false;
    return true;
}

inline int alpha(const Graph& g)
{
    int best = 0;
    for (Bits s = 0; s < (Bits{1} << g.order()); ++s)
        if (independent(g, s))
            best = std::max(best, std::popcount(s));
    return best;
}

// Smallest k admitting a proper coloring, by trying every map V -> [k].
inline int chi(const Graph& g)
{
    const int n = g.order();
    for (int k = 1;; ++k) {
        std::vector<int> c(static_cast<std::size_t>(n), 0);
        while (true) {
            bool ok = true;
            for (int u = 0; u < n && ok; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (g.adjacent(u, v) && c[u] == c[v])
                        ok = false;
            if (ok)
                return k;
            int i = 0;
            while (i < n && c[i] == k - 1)
                c[i++] = 0;
            if (i == n)
                break;
            ++c[i];
        }
    }
}

// Whether the vertices of s can be colored properly from their lists (plain backtracking).
inline bool colorable(const Graph& g, const std::vector<std::vector<int>>& lists, const std::vector<int>& vs,
                      std::size_t i, std::vector<int>& col)
{
    if (i == vs.size())
        return true;
    const int v = vs[i];
    for (int c : lists[v]) {
        bool clash = false;
        for (std::size_t j = 0; j < i; ++j)
            if (g.adjacent(v, vs[j]) && col[vs[j]] == c)
                clash = true;
        if (clash)
            continue;
        col[v] = c;
        if (colorable(g, lists, vs, i + 1, col))
            return true;
    }
    return false;
}

// Largest vertex subset that is colorable from its lists.
inline int lambda_lists(const Graph& g, const std::vector<std::vector<int>>& lists)
{
    const int n = g.order();
    int best = 0;
    std::vector<int> col(static_cast<std::size_t>(n), -1);
    for (Bits s = 0; s < (Bits{1} << n); ++s) {
        if (std::popcount(s) <= best)
            continue;
        std::vector<int> vs;
        for (int v = 0; v < n; ++v)
            if (s >> v & 1)
                vs.push_back(v);
        if (colorable(g, lists, vs, 0, col))
            best = std::popcount(s);
    }
    return best;
}

inline std::vector<std::vector<int>> t_subsets(int palette, int t)
{
    std::vector<std::vector<int>> out;
    for (Bits m = 0; m < (Bits{1} << palette); ++m)
        if (std::popcount(m) == t) {
            std::vector<int> l;
            for (int c = 0; c < palette; ++c)
                if (m >> c & 1)
                    l.push_back(c);
            out.push_back(l);
        }
    return out;
}

// min over t-assignments from [0, n t). Vertex 0 gets {0..t-1}: any assignment relabels to one
// of these without changing lambda.
inline int lambda_t(const Graph& g, int t)
{
    const int n = g.order();
    if (t == 0)
        return 0;
    const auto subsets = t_subsets(n * t, t);
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(n));
    for (int c = 0; c < t; ++c)
        lists[0].push_back(c);
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    int best = n;
    while (true) {
        for (int v = 1; v < n; ++v)
            lists[v] = subsets[pick[v]];
        best = std::min(best, lambda_lists(g, lists));
        int v = 1;
        while (v < n && pick[v] + 1 == subsets.size())
            pick[v++] = 0;
        if (v >= n)
            break;
        ++pick[v];
    }
    return best;
}

inline int choice_number(const Graph& g)
{
    for (int t = 1;; ++t)
        if (lambda_t(g, t) == g.order())
            return t;
}

} // namespace oracle
