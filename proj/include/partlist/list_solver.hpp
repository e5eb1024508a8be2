#pragma once

#include "graph.hpp"
#include "list_assignment.hpp"

#include <climits>
#include <cstdint>
#include <span>
#include <vector>

namespace plc {

struct SolveResult {
    int value = 0;
    PartialColoring witness;
    std::uint64_t nodes = 0;
};

namespace detail {

struct KernelQuery {
    std::span<const Bits> adj;       // rows over local indices; search visits 0, 1, ... in order
    std::span<const ColorSet> lists;
    int floor = -1;                  // only colorings with more than `floor` vertices are reported
    int target = INT_MAX;            // stop once this many vertices are colored
    bool allow_uncolored = true;
    bool interchangeable_colors = false; // all lists equal {0..s-1}: break color symmetry
};

struct KernelResult {
    int value = -1;
    bool found = false;
    std::vector<int> colors; // local index -> color, -1 uncolored
    std::uint64_t nodes = 0;
};

// Depth-first search over (color from the remaining list) | (leave uncolored), colors ascending,
// uncolored last. Prunes with two admissible bounds on what the unvisited suffix can add:
// the number of suffix vertices with a nonempty remaining list, and a greedy clique partition
// where a clique contributes at most min(|Q|, |union of remaining lists on Q|).
// The first optimum in search order is kept.
class ListKernel {
public:
    explicit ListKernel(const KernelQuery& q)
        : q_(q), m_(static_cast<int>(q.lists.size())), blocked_(m_, 0), current_(m_, -1)
    {
        best_ = q.floor;
        result_.value = q.floor;
    }

    KernelResult run()
    {
        dfs(0, 0, -1);
        result_.nodes = nodes_;
        return result_;
    }

private:
    ColorSet avail(int j) const { return q_.lists[j] & ~blocked_[j]; }

    int clique_bound(int from) const
    {
        Bits cand = 0;
        for (int j = from; j < m_; ++j)
            if (avail(j))
                cand |= bit(j);
        int bound = 0;
        while (cand) {
            int v = lowest(cand);
            Bits clique = bit(v);
            ColorSet colors = avail(v);
            Bits p = cand & q_.adj[v];
            cand &= ~bit(v);
            while (p) {
                int u = lowest(p);
                clique |= bit(u);
                colors |= avail(u);
                cand &= ~bit(u);
                p &= q_.adj[u];
                p &= ~bit(u);
            }
            bound += std::min(popcount(clique), popcount(colors));
        }
        return bound;
    }

    void dfs(int i, int colored, int max_color)
    {
        ++nodes_;
        if (stop_)
            return;
        if (i == m_) {
            if (colored > best_) {
                best_ = colored;
                result_.value = colored;
                result_.found = true;
                result_.colors = current_;
                if (best_ >= q_.target)
                    stop_ = true;
            }
            return;
        }
        int open = 0;
        for (int j = i; j < m_; ++j)
            if (avail(j))
                ++open;
            else if (!q_.allow_uncolored)
                return;
        if (colored + open <= best_)
            return;
        if (colored + clique_bound(i) <= best_)
            return;

        ColorSet choices = avail(i);
        if (q_.interchangeable_colors)
            choices &= low_bits(max_color + 2);
        const Bits later = q_.adj[i] & ~low_bits(i + 1);
        while (choices && !stop_) {
            const int c = lowest(choices);
            choices &= choices - 1;
            Bits touched = 0;
            for_each_bit(later, [&](int u) {
                if (!(blocked_[u] & bit(c))) {
                    blocked_[u] |= bit(c);
                    touched |= bit(u);
                }
            });
            current_[i] = c;
            dfs(i + 1, colored + 1, std::max(max_color, c));
            current_[i] = -1;
            for_each_bit(touched, [&](int u) { blocked_[u] &= ~bit(c); });
        }
        if (q_.allow_uncolored && !stop_)
            dfs(i + 1, colored, max_color);
    }

    const KernelQuery& q_;
    int m_;
    std::vector<ColorSet> blocked_;
    std::vector<int> current_;
    int best_;
    bool stop_ = false;
    std::uint64_t nodes_ = 0;
    KernelResult result_;
};

inline KernelResult run_kernel(const KernelQuery& q) { return ListKernel(q).run(); }

// Local rows of G[order] with vertices renumbered by position in `order`.
inline std::vector<Bits> local_rows(const Graph& g, const std::vector<int>& order)
{
    std::vector<Bits> rows(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j < order.size(); ++j)
            if (g.adjacent(order[i], order[j]))
                rows[i] |= bit(static_cast<int>(j));
    return rows;
}

struct SolveSetup {
    std::vector<int> order;
    std::vector<Bits> rows;
    std::vector<ColorSet> lists;
};

inline SolveSetup setup(const Graph& g, const std::vector<ColorSet>& lists)
{
    SolveSetup s;
    s.order = degeneracy_order(g);
    s.rows = local_rows(g, s.order);
    for (int v : s.order)
        s.lists.push_back(lists[v]);
    return s;
}

inline PartialColoring to_coloring(const SolveSetup& s, const std::vector<int>& local, int n)
{
    PartialColoring c(n);
    for (std::size_t i = 0; i < local.size(); ++i)
        if (local[i] >= 0)
            c.set(s.order[i], local[i]);
    return c;
}

inline SolveResult solve_lists(const Graph& g, const std::vector<ColorSet>& lists, bool interchangeable)
{
    SolveSetup s = setup(g, lists);
    KernelQuery q{s.rows, s.lists};
    q.target = g.order();
    q.interchangeable_colors = interchangeable;
    KernelResult r = run_kernel(q);
    return {r.value, to_coloring(s, r.colors, g.order()), r.nodes};
}

} // namespace detail

// lambda_L(G): the largest number of vertices colorable properly from their own lists.
inline SolveResult lambda_of_assignment(const Graph& g, const ListAssignment& lists)
{
    lists.require_bound(g);
    if (lists.color_list() == 0)
        return {0, PartialColoring(g.order()), 0};
    return detail::solve_lists(g, lists.lists(), false);
}

// Exhaustive reference: every vertex -> (one of its colors | uncolored), no pruning.
inline int lambda_of_assignment_oracle(const Graph& g, const ListAssignment& lists)
{
    lists.require_bound(g);
    const int n = g.order();
    if (n > 8 || lists.max_list_size() > 3)
        throw SizeError("exhaustive lambda oracle limited to n <= 8 and lists of size <= 3");
    std::vector<std::vector<int>> options;
    for (int v = 0; v < n; ++v)
        options.push_back(colors_of(lists.list(v)));
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0); // 0 = uncolored, k = options[v][k-1]
    int best = 0;
    while (true) {
        bool proper = true;
        int colored = 0;
        for (int v = 0; v < n && proper; ++v) {
            if (pick[v] == 0)
                continue;
            ++colored;
            for (int u = 0; u < v; ++u)
                if (pick[u] != 0 && g.adjacent(u, v) && options[u][pick[u] - 1] == options[v][pick[v] - 1])
                    proper = false;
        }
        if (proper)
            best = std::max(best, colored);
        int v = 0;
        while (v < n && pick[v] == options[v].size()) {
            pick[v] = 0;
            ++v;
        }
        if (v == n)
            break;
        ++pick[v];
    }
    return best;
}

inline bool is_list_colorable(const Graph& g, const ListAssignment& lists)
{
    lists.require_bound(g);
    for (ColorSet s : lists.lists())
        if (s == 0)
            return false;
    detail::SolveSetup s = detail::setup(g, lists.lists());
    detail::KernelQuery q{s.rows, s.lists};
    q.floor = g.order() - 1;
    q.target = g.order();
    q.allow_uncolored = false;
    return detail::run_kernel(q).found;
}

// lambda for the constant assignment {0, ..., s-1}: the largest s-colorable induced subgraph.
inline SolveResult max_partial_constant(const Graph& g, int s)
{
    if (s <= 0)
        return {0, PartialColoring(g.order()), 0};
    if (s > kMaxPalette)
        s = kMaxPalette;
    return detail::solve_lists(g, std::vector<ColorSet>(static_cast<std::size_t>(g.order()), low_bits(s)), true);
}

inline bool is_colorable_with(const Graph& g, int k)
{
    if (k >= g.order())
        return true;
    if (k <= 0)
        return false;
    detail::SolveSetup s = detail::setup(g, std::vector<ColorSet>(static_cast<std::size_t>(g.order()), low_bits(k)));
    detail::KernelQuery q{s.rows, s.lists};
    q.floor = g.order() - 1;
    q.target = g.order();
    q.allow_uncolored = false;
    q.interchangeable_colors = true;
    return detail::run_kernel(q).found;
}

inline int greedy_clique_size(const Graph& g)
{
    int best = 1;
    for (int v = 0; v < g.order(); ++v) {
        Bits cand = g.neighbors(v);
        int size = 1;
        while (cand) {
            int pick = -1;
            int deg = -1;
            for_each_bit(cand, [&](int u) {
                int d = popcount(g.neighbors(u) & cand);
                if (d > deg) {
                    deg = d;
                    pick = u;
                }
            });
            ++size;
            cand &= g.neighbors(pick);
        }
        best = std::max(best, size);
    }
    return best;
}

inline int greedy_color_count(const Graph& g)
{
    std::vector<int> color(static_cast<std::size_t>(g.order()), -1);
    int used = 0;
    for (int v : degeneracy_order(g)) {
        ColorSet taken = 0;
        for_each_bit(g.neighbors(v), [&](int u) {
            if (color[u] >= 0)
                taken |= bit(color[u]);
        });
        color[v] = lowest(~taken);
        used = std::max(used, color[v] + 1);
    }
    return used;
}

inline int chromatic_number(const Graph& g)
{
    const int upper = greedy_color_count(g);
    for (int k = greedy_clique_size(g); k < upper; ++k)
        if (is_colorable_with(g, k))
            return k;
    return upper;
}

inline int independence_number(const Graph& g) { return max_partial_constant(g, 1).value; }

} // namespace plc
