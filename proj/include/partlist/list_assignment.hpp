#pragma once

#include "graph.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plc {

using ColorSet = Bits;

inline constexpr int kMaxPalette = 64;

class MismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::vector<int> colors_of(ColorSet s)
{
    std::vector<int> out;
    for_each_bit(s, [&](int c) { out.push_back(c); });
    return out;
}

struct GraphBinding {
    std::uint64_t fingerprint;
    int order;
};

// Per-vertex color lists over the dense palette [0, palette), bound to one graph.
class ListAssignment {
public:
    ListAssignment(const Graph& g, std::vector<ColorSet> lists, int palette)
        : ListAssignment(GraphBinding{g.fingerprint(), g.order()}, std::move(lists), palette)
    {
    }

    ListAssignment(GraphBinding binding, std::vector<ColorSet> lists, int palette)
        : lists_(std::move(lists)), palette_(palette), graph_id_(binding.fingerprint)
    {
        if (static_cast<int>(lists_.size()) != binding.order)
            throw MismatchError("assignment has " + std::to_string(lists_.size()) + " lists for a graph of order " +
                                std::to_string(binding.order));
        if (palette_ < 0 || palette_ > kMaxPalette)
            throw SizeError("palette bound " + std::to_string(palette_) + " outside [0, 64]");
        const bool all_empty = std::all_of(lists_.begin(), lists_.end(), [](ColorSet s) { return s == 0; });
        for (std::size_t v = 0; v < lists_.size(); ++v) {
            if (lists_[v] & ~low_bits(palette_))
                throw std::invalid_argument("color outside palette at vertex " + std::to_string(v));
            if (lists_[v] == 0 && !all_empty)
                throw std::invalid_argument("empty list at vertex " + std::to_string(v));
        }
    }

    // Every vertex gets {0, ..., t-1}.
    static ListAssignment constant(const Graph& g, int t)
    {
        return ListAssignment(g, std::vector<ColorSet>(static_cast<std::size_t>(g.order()), low_bits(t)), t);
    }

    // Arbitrary integer colors, relabeled densely in ascending order.
    static ListAssignment from_lists(const Graph& g, const std::vector<std::vector<long>>& lists)
    {
        std::map<long, int> dense;
        for (const auto& l : lists)
            for (long c : l)
                dense.emplace(c, 0);
        if (dense.size() > static_cast<std::size_t>(kMaxPalette))
            throw SizeError("more than 64 distinct colors");
        int next = 0;
        for (auto& [c, idx] : dense)
            idx = next++;
        std::vector<ColorSet> sets;
        sets.reserve(lists.size());
        for (const auto& l : lists) {
            ColorSet s = 0;
            for (long c : l)
                s |= bit(dense.at(c));
            sets.push_back(s);
        }
        return ListAssignment(g, std::move(sets), next);
    }

    int order() const { return static_cast<int>(lists_.size()); }
    ColorSet list(int v) const { return lists_[v]; }
    const std::vector<ColorSet>& lists() const { return lists_; }
    int palette() const { return palette_; }
    std::uint64_t graph_id() const { return graph_id_; }
    GraphBinding binding() const { return {graph_id_, order()}; }
    bool bound_to(const Graph& g) const { return graph_id_ == g.fingerprint(); }

    void require_bound(const Graph& g) const
    {
        if (!bound_to(g))
            throw MismatchError("list assignment is bound to a different graph");
    }

    // t when every list has exactly t colors.
    std::optional<int> uniform_size() const
    {
        int t = popcount(lists_.front());
        for (ColorSet s : lists_)
            if (popcount(s) != t)
                return std::nullopt;
        return t;
    }

    ColorSet color_list() const
    {
        ColorSet r = 0;
        for (ColorSet s : lists_)
            r |= s;
        return r;
    }

    int max_list_size() const
    {
        int m = 0;
        for (ColorSet s : lists_)
            m = std::max(m, popcount(s));
        return m;
    }

    std::vector<std::vector<int>> as_vectors() const
    {
        std::vector<std::vector<int>> out;
        for (ColorSet s : lists_)
            out.push_back(colors_of(s));
        return out;
    }

    friend bool operator==(const ListAssignment& a, const ListAssignment& b)
    {
        return a.graph_id_ == b.graph_id_ && a.lists_ == b.lists_;
    }

private:
    std::vector<ColorSet> lists_;
    int palette_;
    std::uint64_t graph_id_;
};

// c : V -> color or uncolored.
class PartialColoring {
public:
    static constexpr int kUncolored = -1;

    explicit PartialColoring(int n = 0) : colors_(static_cast<std::size_t>(n), kUncolored) {}
    explicit PartialColoring(std::vector<int> colors) : colors_(std::move(colors)) {}

    int order() const { return static_cast<int>(colors_.size()); }
    std::optional<int> color(int v) const
    {
        return colors_[v] == kUncolored ? std::nullopt : std::optional<int>(colors_[v]);
    }
    bool is_colored(int v) const { return colors_[v] != kUncolored; }
    void set(int v, int c) { colors_[v] = c; }
    void clear(int v) { colors_[v] = kUncolored; }
    const std::vector<int>& raw() const { return colors_; }

    VertexSet colored() const
    {
        VertexSet s;
        for (int v = 0; v < order(); ++v)
            if (is_colored(v))
                s.insert(v);
        return s;
    }

    int count() const { return colored().size(); }

    bool is_proper(const Graph& g) const
    {
        if (order() != g.order())
            return false;
        for (auto [u, v] : g.edges())
            if (is_colored(u) && colors_[u] == colors_[v])
                return false;
        return true;
    }

    bool conforms_to(const ListAssignment& lists) const
    {
        if (order() != lists.order())
            return false;
        for (int v = 0; v < order(); ++v)
            if (is_colored(v) && (colors_[v] < 0 || colors_[v] >= 64 || !(lists.list(v) & bit(colors_[v]))))
                return false;
        return true;
    }

    PartialColoring restricted_to(VertexSet s) const
    {
        PartialColoring out = *this;
        for (int v = 0; v < order(); ++v)
            if (!s.contains(v))
                out.clear(v);
        return out;
    }

    friend bool operator==(const PartialColoring&, const PartialColoring&) = default;

private:
    std::vector<int> colors_;
};

struct CombinedAssignment {
    ListAssignment lists;
    int shift; // colors of the second assignment are offset by this much
};

// Union of an r-uniform and an s-uniform assignment after moving the second one's
// palette above the first, so the two color lists are disjoint and every list has r + s colors.
inline CombinedAssignment combine_assignments(const ListAssignment& first, const ListAssignment& second)
{
    if (first.graph_id() != second.graph_id() || first.order() != second.order())
        throw MismatchError("combined assignments must belong to the same graph");
    if (!first.uniform_size() || !second.uniform_size())
        throw std::invalid_argument("combined assignments must both be uniform");
    const int shift = first.palette();
    if (shift + second.palette() > kMaxPalette)
        throw SizeError("combined palette exceeds 64 colors");
    std::vector<ColorSet> lists(first.lists().size());
    for (std::size_t v = 0; v < lists.size(); ++v)
        lists[v] = first.list(static_cast<int>(v)) | (second.list(static_cast<int>(v)) << shift);
    return {ListAssignment(first.binding(), std::move(lists), shift + second.palette()), shift};
}

struct SplitColoring {
    VertexSet first;  // colored from the first assignment's lists
    VertexSet second; // colored from the shifted second assignment's lists
};

// Partition of the colored vertices of a coloring under combine_assignments(first, second).
inline SplitColoring split_coloring(const ListAssignment& first, const ListAssignment& second,
                                    const PartialColoring& c)
{
    const CombinedAssignment combined = combine_assignments(first, second);
    if (!c.conforms_to(combined.lists))
        throw std::invalid_argument("coloring does not conform to the combined assignment");
    SplitColoring out;
    for (int v = 0; v < c.order(); ++v) {
        if (!c.is_colored(v))
            continue;
        const int color = *c.color(v);
        if (color < combined.shift && (first.list(v) & bit(color)))
            out.first.insert(v);
        else if (color >= combined.shift && (second.list(v) & bit(color - combined.shift)))
            out.second.insert(v);
    }
    return out;
}

// The coloring of the second part expressed in the second assignment's own colors.
inline PartialColoring unshift(const PartialColoring& c, VertexSet part, int shift)
{
    PartialColoring out(c.order());
    for_each_bit(part.bits(), [&](int v) { out.set(v, *c.color(v) - shift); });
    return out;
}

struct Restriction {
    InducedSubgraph sub;
    ListAssignment lists;
};

// L|_H for H = G[s]: each kept vertex keeps its original list.
inline Restriction restrict_assignment(const Graph& g, const ListAssignment& lists, VertexSet s)
{
    lists.require_bound(g);
    InducedSubgraph sub = induced_subgraph(g, s);
    std::vector<ColorSet> kept;
    kept.reserve(sub.original.size());
    for (int v : sub.original)
        kept.push_back(lists.list(v));
    ListAssignment restricted(sub.graph, std::move(kept), lists.palette());
    return {std::move(sub), std::move(restricted)};
}

inline bool is_sub_assignment(const ListAssignment& smaller, const ListAssignment& larger)
{
    if (smaller.graph_id() != larger.graph_id() || smaller.order() != larger.order())
        throw MismatchError("sub-assignment test across different graphs");
    for (int v = 0; v < smaller.order(); ++v)
        if (smaller.list(v) & ~larger.list(v))
            return false;
    return true;
}

} // namespace plc
