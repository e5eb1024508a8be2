#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plc {

using Bits = std::uint64_t;

inline constexpr int kMaxVertices = 64;

class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr Bits low_bits(int k) { return k >= 64 ? ~Bits{0} : (Bits{1} << k) - 1; }
inline constexpr Bits bit(int i) { return Bits{1} << i; }
inline int popcount(Bits b) { return std::popcount(b); }
inline int lowest(Bits b) { return std::countr_zero(b); }

template <class F>
inline void for_each_bit(Bits b, F&& f)
{
    while (b) {
        f(std::countr_zero(b));
        b &= b - 1;
    }
}

class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(Bits bits) : bits_(bits) {}

    static VertexSet first(int n) { return VertexSet{low_bits(n)}; }

    static VertexSet of(std::initializer_list<int> vs)
    {
        VertexSet s;
        for (int v : vs)
            s.insert(v);
        return s;
    }

    bool contains(int v) const { return (bits_ >> v) & 1U; }
    void insert(int v) { bits_ |= bit(v); }
    void erase(int v) { bits_ &= ~bit(v); }
    int size() const { return popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    Bits bits() const { return bits_; }

    std::vector<int> members() const
    {
        std::vector<int> out;
        out.reserve(size());
        for_each_bit(bits_, [&](int v) { out.push_back(v); });
        return out;
    }

    bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
    VertexSet operator|(VertexSet o) const { return VertexSet{bits_ | o.bits_}; }
    VertexSet operator&(VertexSet o) const { return VertexSet{bits_ & o.bits_}; }
    VertexSet operator-(VertexSet o) const { return VertexSet{bits_ & ~o.bits_}; }

    friend bool operator==(VertexSet, VertexSet) = default;

private:
    Bits bits_ = 0;
};

// Simple undirected graph on 1..64 vertices, one adjacency word per vertex.
class Graph {
public:
    static Graph edgeless(int n) { return Graph(n); }

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges)
    {
        Graph g(n);
        for (auto [u, v] : edges)
            g.add_edge(u, v);
        return g;
    }

    static Graph from_rows(std::vector<Bits> rows)
    {
        Graph g(static_cast<int>(rows.size()));
        const Bits all = low_bits(g.n_);
        for (int v = 0; v < g.n_; ++v) {
            if (rows[v] & ~all)
                throw GraphError("neighbor index out of range at vertex " + std::to_string(v));
            if (rows[v] & bit(v))
                throw GraphError("loop at vertex " + std::to_string(v));
            for_each_bit(rows[v], [&](int u) {
                if (!(rows[u] & bit(v)))
                    throw GraphError("asymmetric adjacency between " + std::to_string(v) + " and " +
                                     std::to_string(u));
            });
        }
        g.adj_ = std::move(rows);
        return g;
    }

    int order() const { return n_; }
    Bits neighbors(int v) const { return adj_[v]; }
    bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
    int degree(int v) const { return popcount(adj_[v]); }
    VertexSet vertices() const { return VertexSet::first(n_); }
    const std::vector<Bits>& rows() const { return adj_; }

    int edge_count() const
    {
        int twice = 0;
        for (Bits r : adj_)
            twice += popcount(r);
        return twice / 2;
    }

    std::vector<std::pair<int, int>> edges() const
    {
        std::vector<std::pair<int, int>> out;
        for (int v = 0; v < n_; ++v)
            for_each_bit(adj_[v] & ~low_bits(v + 1), [&](int u) { out.emplace_back(v, u); });
        return out;
    }

    const std::optional<std::string>& label() const { return label_; }
    Graph with_label(std::string label) const
    {
        Graph g = *this;
        g.label_ = std::move(label);
        return g;
    }

    // FNV-1a over the order and adjacency rows; binds assignments to graphs.
    std::uint64_t fingerprint() const
    {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&](std::uint64_t w) {
            for (int i = 0; i < 8; ++i) {
                h ^= (w >> (8 * i)) & 0xFF;
                h *= 1099511628211ULL;
            }
        };
        mix(static_cast<std::uint64_t>(n_));
        for (Bits r : adj_)
            mix(r);
        return h;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

private:
    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0)
    {
        if (n < 1 || n > kMaxVertices)
            throw SizeError("graph order " + std::to_string(n) + " outside [1, 64]");
    }

    void add_edge(int u, int v)
    {
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw GraphError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v)
            throw GraphError("loop at vertex " + std::to_string(u));
        adj_[u] |= bit(v);
        adj_[v] |= bit(u);
    }

    int n_;
    std::vector<Bits> adj_;
    std::optional<std::string> label_;
};

struct InducedSubgraph {
    Graph graph;
    std::vector<int> original; // new index -> index in the parent graph
};

inline InducedSubgraph induced_subgraph(const Graph& g, VertexSet s)
{
    if (s.empty())
        throw GraphError("induced subgraph of an empty vertex set");
    if (!s.subset_of(g.vertices()))
        throw GraphError("vertex set exceeds graph order");
    std::vector<int> original = s.members();
    std::vector<Bits> rows(original.size(), 0);
    for (std::size_t i = 0; i < original.size(); ++i)
        for (std::size_t j = 0; j < original.size(); ++j)
            if (g.adjacent(original[i], original[j]))
                rows[i] |= bit(static_cast<int>(j));
    return {Graph::from_rows(std::move(rows)), std::move(original)};
}

// Vertices of the k-core: repeatedly drop vertices with fewer than k neighbours left.
inline VertexSet core(const Graph& g, int k, VertexSet within)
{
    Bits alive = within.bits();
    bool changed = true;
    while (changed) {
        changed = false;
        for_each_bit(alive, [&](int v) {
            if (popcount(g.neighbors(v) & alive) < k) {
                alive &= ~bit(v);
                changed = true;
            }
        });
    }
    return VertexSet{alive};
}

inline VertexSet core(const Graph& g, int k) { return core(g, k, g.vertices()); }

inline std::vector<VertexSet> components(const Graph& g, VertexSet within)
{
    std::vector<VertexSet> out;
    Bits left = within.bits();
    while (left) {
        Bits comp = bit(lowest(left));
        Bits frontier = comp;
        while (frontier) {
            Bits next = 0;
            for_each_bit(frontier, [&](int v) { next |= g.neighbors(v); });
            next &= within.bits() & ~comp;
            comp |= next;
            frontier = next;
        }
        out.emplace_back(comp);
        left &= ~comp;
    }
    return out;
}

inline bool is_connected(const Graph& g) { return components(g, g.vertices()).size() == 1; }

// Smallest-last elimination reversed: dense cores come first. Ties go to the lower index.
inline std::vector<int> degeneracy_order(const Graph& g, VertexSet within)
{
    std::vector<int> removed;
    Bits alive = within.bits();
    while (alive) {
        int pick = -1;
        int best = 65;
        for_each_bit(alive, [&](int v) {
            int d = popcount(g.neighbors(v) & alive);
            if (d < best) {
                best = d;
                pick = v;
            }
        });
        removed.push_back(pick);
        alive &= ~bit(pick);
    }
    std::reverse(removed.begin(), removed.end());
    return removed;
}

inline std::vector<int> degeneracy_order(const Graph& g) { return degeneracy_order(g, g.vertices()); }

inline int degeneracy(const Graph& g)
{
    int k = 0;
    while (!core(g, k + 1).empty())
        ++k;
    return k;
}

} // namespace plc
