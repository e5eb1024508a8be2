#pragma once

#include "graph.hpp"
#include "graph6.hpp"
#include "list_assignment.hpp"
#include "list_solver.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace plc {

struct AdversaryCaps {
    int max_order = 10;
    int max_t = 4;
    bool unsafe = false; // lifts both caps; searches are exponential
};

struct AdversaryOptions {
    AdversaryCaps caps;
    std::optional<int> palette; // default n * t, which every assignment relabels into
    int jobs = 1;
    bool reduce = true;         // t-core and component decomposition
    bool dominance = true;      // only lists whose colors all occur on a neighbour
    bool prefix_bound = true;   // prune with lambda of the assigned prefix
};

struct AdversaryResult {
    int value = 0;
    ListAssignment witness;
    std::uint64_t classes = 0; // complete assignments evaluated
    std::uint64_t pruned = 0;
    bool palette_limited = false;
};

inline void check_caps(int order, int t, const AdversaryCaps& caps)
{
    if (caps.unsafe)
        return;
    if (order > caps.max_order || t > caps.max_t)
        throw SizeError("adversarial search on " + std::to_string(order) + " vertices with t = " + std::to_string(t) +
                        " exceeds the caps (n <= " + std::to_string(caps.max_order) + ", t <= " +
                        std::to_string(caps.max_t) + "); the search is exponential, pass --unsafe-caps to run it anyway");
}

// Descending degree, ties to the lower index.
inline std::vector<int> adversary_vertex_order(const Graph& g)
{
    std::vector<int> order(static_cast<std::size_t>(g.order()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
    return order;
}

namespace detail {

// Colors [0, used) split into consecutive cells of still-interchangeable colors.
// `starts` marks the first color of every cell.
struct CanonicalState {
    Bits starts = 0;
    int used = 0;
};

struct CanonicalOption {
    ColorSet mask;
    CanonicalState next;
};

// All lists that keep the sequence minimal under color relabeling: within each cell only the
// lowest colors may be taken, fresh colors start at `used`. Sorted by mask value (colex order).
inline std::vector<CanonicalOption> canonical_options(const CanonicalState& s, int t, int palette,
                                                      ColorSet allowed = ~ColorSet{0}, bool allow_fresh = true)
{
    std::vector<std::pair<int, int>> cells; // [begin, end)
    for (int c = 0; c < s.used; ++c)
        if (s.starts & bit(c)) {
            int e = c + 1;
            while (e < s.used && !(s.starts & bit(e)))
                ++e;
            cells.emplace_back(c, e);
        }
    std::vector<CanonicalOption> out;
    std::vector<int> take(cells.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
        if (k == cells.size()) {
            const int fresh = left;
            if (fresh > 0 && !allow_fresh)
                return;
            if (s.used + fresh > palette)
                return;
            ColorSet mask = 0;
            Bits starts = s.starts;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                auto [b, e] = cells[i];
                mask |= low_bits(b + take[i]) & ~low_bits(b);
                if (take[i] > 0 && b + take[i] < e)
                    starts |= bit(b + take[i]);
            }
            if (fresh > 0) {
                mask |= low_bits(s.used + fresh) & ~low_bits(s.used);
                starts |= bit(s.used);
            }
            if ((mask & allowed) != mask)
                return;
            out.push_back({mask, {starts, s.used + fresh}});
            return;
        }
        auto [b, e] = cells[k];
        for (int q = 0; q <= std::min(left, e - b); ++q) {
            take[k] = q;
            rec(k + 1, left - q);
        }
        take[k] = 0;
    };
    rec(0, t);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.mask < b.mask; });
    return out;
}

} // namespace detail

// Stream of t-uniform assignments over [0, palette), exactly one per color-relabeling class.
// Vertices are filled in adversary_vertex_order; the emitted representative is the
// lexicographically smallest relabeling (lists compared as colex masks).
class CanonicalAssignments {
public:
    CanonicalAssignments(const Graph& g, int t, int palette, const AdversaryCaps& caps = {})
        : graph_(g), t_(t), palette_(palette), order_(adversary_vertex_order(g))
    {
        if (t < 1)
            throw std::invalid_argument("canonical enumeration needs t >= 1");
        if (palette < t || palette > kMaxPalette)
            throw SizeError("palette bound must lie in [t, 64]");
        check_caps(g.order(), t, caps);
        levels_.resize(order_.size());
    }

    const std::vector<int>& vertex_order() const { return order_; }

    std::optional<ListAssignment> next()
    {
        const int m = static_cast<int>(order_.size());
        int level;
        if (!started_) {
            started_ = true;
            levels_[0] = {detail::canonical_options({}, t_, palette_), 0};
            level = 0;
        } else {
            level = m - 1;
            while (level >= 0 && ++levels_[level].index >= levels_[level].options.size())
                --level;
            if (level < 0)
                return std::nullopt;
        }
        for (int i = level; i < m; ++i) {
            if (levels_[i].options.empty())
                return std::nullopt;
            if (i + 1 < m)
                levels_[i + 1] = {detail::canonical_options(levels_[i].options[levels_[i].index].next, t_, palette_), 0};
        }
        std::vector<ColorSet> lists(order_.size());
        for (int i = 0; i < m; ++i)
            lists[order_[i]] = levels_[i].options[levels_[i].index].mask;
        return ListAssignment(graph_, std::move(lists), palette_);
    }

private:
    struct Level {
        std::vector<detail::CanonicalOption> options;
        std::size_t index = 0;
    };

    Graph graph_;
    int t_;
    int palette_;
    std::vector<int> order_;
    std::vector<Level> levels_;
    bool started_ = false;
};

namespace detail {

// Minimizing search for one connected graph whose vertices all have degree >= 1.
// Vertices take canonical lists in adversary order. A branch is cut when a lower bound on
// lambda for every completion (lambda of the assigned prefix plus the unassigned vertices
// that stay greedily colorable whatever lists they get) cannot beat the best found so far.
class AssignmentSearch {
public:
    AssignmentSearch(const Graph& g, int t, int palette, const AdversaryOptions& opt, bool stop_below_full)
        : g_(g), t_(t), palette_(palette), opt_(opt), stop_below_full_(stop_below_full),
          order_(adversary_vertex_order(g)), m_(g.order())
    {
        rows_ = local_rows(g, order_);
        check_at_.resize(static_cast<std::size_t>(m_));
        later_.resize(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            later_[i] = rows_[i] & ~low_bits(i + 1);
            int last = i;
            for_each_bit(rows_[i], [&](int u) { last = std::max(last, u); });
            if (rows_[i])
                check_at_[last].push_back(i);
        }
    }

    struct Outcome {
        int value;
        std::vector<ColorSet> lists; // by local position
        std::uint64_t classes = 0;
        std::uint64_t pruned = 0;
    };

    Outcome run()
    {
        std::vector<ColorSet> constant(static_cast<std::size_t>(m_), low_bits(t_));
        const int seed = lambda_prefix(constant, m_);
        best_.store(pack(seed, -1));
        Outcome out{seed, constant};
        if (m_ == 1 || (stop_below_full_ && seed < m_))
            return out;

        auto first = canonical_options({}, t_, palette_);
        CanonicalState s0 = first.front().next;
        std::vector<CanonicalOption> roots = options_for(1, s0, std::vector<ColorSet>{first.front().mask});

        std::vector<Task> tasks(roots.size());
        std::atomic<std::size_t> next_task{0};
        auto worker = [&] {
            for (std::size_t k; (k = next_task.fetch_add(1)) < tasks.size();)
                run_task(static_cast<int>(k), first.front().mask, roots[k], tasks[k]);
        };
        const int jobs = std::max(1, std::min<int>(opt_.jobs, static_cast<int>(tasks.size())));
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (int j = 0; j < jobs; ++j)
                pool.emplace_back(worker);
        }
        for (const Task& task : tasks) {
            out.classes += task.classes;
            out.pruned += task.pruned;
            if (task.found && task.value < out.value) {
                out.value = task.value;
                out.lists = task.lists;
            }
        }
        ++out.classes;
        return out;
    }

    const std::vector<int>& order() const { return order_; }

private:
    struct Task {
        bool found = false;
        int value = 0;
        std::vector<ColorSet> lists;
        std::uint64_t classes = 0;
        std::uint64_t pruned = 0;
    };

    struct Frame {
        std::vector<ColorSet> lists;
        std::vector<int> coloring; // max coloring of the prefix, local positions
        int lambda = 0;
        int local_best;
    };

    static std::uint64_t pack(int value, int task)
    {
        return (static_cast<std::uint64_t>(value) << 32) | static_cast<std::uint32_t>(task + 1);
    }

    void offer(int value, int task)
    {
        std::uint64_t mine = pack(value, task);
        std::uint64_t cur = best_.load();
        while (mine < cur && !best_.compare_exchange_weak(cur, mine)) {
        }
        if (stop_below_full_ && value < m_)
            stop_.store(true);
    }

    // A bound `lb` on every completion is useless if it cannot produce a strictly better
    // value in this task, or a tie that would precede the current global holder.
    bool hopeless(int lb, int task, int local_best) const
    {
        if (lb >= local_best)
            return true;
        std::uint64_t cur = best_.load();
        int value = static_cast<int>(cur >> 32);
        int holder = static_cast<int>(cur & 0xFFFFFFFFU) - 1;
        return lb > value || (lb == value && holder < task);
    }

    int lambda_prefix(const std::vector<ColorSet>& lists, int len) const
    {
        const std::vector<Bits> rows = prefix_rows(len);
        KernelQuery q{rows, std::span<const ColorSet>(lists.data(), static_cast<std::size_t>(len))};
        q.target = len;
        return run_kernel(q).value;
    }

    std::vector<Bits> prefix_rows(int len) const
    {
        std::vector<Bits> rows(rows_.begin(), rows_.begin() + len);
        for (auto& r : rows)
            r &= low_bits(len);
        return rows;
    }

    std::vector<CanonicalOption> options_for(int i, const CanonicalState& s, const std::vector<ColorSet>& lists) const
    {
        if (!opt_.dominance || later_[i] != 0)
            return canonical_options(s, t_, palette_);
        ColorSet support = 0;
        for_each_bit(rows_[i] & low_bits(i), [&](int u) { support |= lists[u]; });
        return canonical_options(s, t_, palette_, support, false);
    }

    bool supported(int i, const std::vector<ColorSet>& lists) const
    {
        if (!opt_.dominance)
            return true;
        for (int v : check_at_[i]) {
            ColorSet support = 0;
            for_each_bit(rows_[v], [&](int u) { support |= lists[u]; });
            if (lists[v] & ~support)
                return false;
        }
        return true;
    }

    // Unassigned vertices that can always be colored last, whatever their lists.
    int peelable(int i, const std::vector<int>& coloring) const
    {
        Bits alive = low_bits(m_) & ~low_bits(i + 1);
        std::vector<int> room(static_cast<std::size_t>(m_), 0);
        for_each_bit(alive, [&](int v) {
            ColorSet seen = 0;
            for_each_bit(rows_[v] & low_bits(i + 1), [&](int u) {
                if (coloring[u] >= 0)
                    seen |= bit(coloring[u]);
            });
            room[v] = t_ - popcount(seen);
        });
        int peeled = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for_each_bit(alive, [&](int v) {
                if (room[v] > popcount(rows_[v] & alive)) {
                    alive &= ~bit(v);
                    ++peeled;
                    changed = true;
                }
            });
        }
        return peeled;
    }

    // Extends the prefix lambda by position i: it either stays or grows by one.
    void extend(Frame& f, int i) const
    {
        std::vector<Bits> rows = prefix_rows(i + 1);
        KernelQuery q{rows, std::span<const ColorSet>(f.lists.data(), static_cast<std::size_t>(i + 1))};
        q.floor = f.lambda;
        q.target = f.lambda + 1;
        KernelResult r = run_kernel(q);
        if (r.found) {
            f.lambda = r.value;
            for (int j = 0; j <= i; ++j)
                f.coloring[j] = r.colors[j];
        } else {
            f.coloring[i] = -1;
        }
    }

    void run_task(int task_index, ColorSet first_mask, const CanonicalOption& root, Task& task)
    {
        Frame f;
        f.lists.assign(static_cast<std::size_t>(m_), 0);
        f.coloring.assign(static_cast<std::size_t>(m_), -1);
        f.lists[0] = first_mask;
        f.coloring[0] = lowest(first_mask);
        f.lambda = 1;
        f.local_best = m_ + 1;
        f.lists[1] = root.mask;
        if (!supported(0, f.lists) || !supported(1, f.lists)) {
            ++task.pruned;
            return;
        }
        extend(f, 1);
        dfs(task_index, 2, root.next, f, task);
    }

    void dfs(int task_index, int i, const CanonicalState& s, Frame& f, Task& task)
    {
        if (stop_.load(std::memory_order_relaxed))
            return;
        if (i == m_) {
            ++task.classes;
            if (f.lambda < f.local_best) {
                f.local_best = f.lambda;
                task.found = true;
                task.value = f.lambda;
                task.lists = f.lists;
                offer(f.lambda, task_index);
            }
            return;
        }
        if (opt_.prefix_bound) {
            const int lb = f.lambda + peelable(i - 1, f.coloring);
            if (hopeless(lb, task_index, f.local_best)) {
                ++task.pruned;
                return;
            }
        }
        const int saved_lambda = f.lambda;
        const std::vector<int> saved_coloring = f.coloring;
        for (const CanonicalOption& opt : options_for(i, s, f.lists)) {
            f.lists[i] = opt.mask;
            if (supported(i, f.lists)) {
                extend(f, i);
                dfs(task_index, i + 1, opt.next, f, task);
                f.lambda = saved_lambda;
                f.coloring = saved_coloring;
            } else {
                ++task.pruned;
            }
            if (stop_.load(std::memory_order_relaxed))
                break;
        }
        f.lists[i] = 0;
    }

    const Graph& g_;
    int t_;
    int palette_;
    const AdversaryOptions& opt_;
    bool stop_below_full_;
    std::vector<int> order_;
    int m_;
    std::vector<Bits> rows_;
    std::vector<Bits> later_;
    std::vector<std::vector<int>> check_at_;
    std::atomic<std::uint64_t> best_{0};
    std::atomic<bool> stop_{false};
};

struct ComponentOutcome {
    int value = 0;
    std::vector<ColorSet> lists; // original vertex indices of the parent graph, 0 outside
    std::uint64_t classes = 0;
    std::uint64_t pruned = 0;
};

inline ComponentOutcome search_component(const Graph& g, VertexSet part, int t, int palette,
                                         const AdversaryOptions& opt, bool stop_below_full)
{
    ComponentOutcome out;
    out.lists.assign(static_cast<std::size_t>(g.order()), 0);
    InducedSubgraph sub = induced_subgraph(g, part);
    check_caps(sub.graph.order(), t, opt.caps);
    AssignmentSearch search(sub.graph, t, palette, opt, stop_below_full);
    auto r = search.run();
    out.value = r.value;
    out.classes = r.classes;
    out.pruned = r.pruned;
    for (std::size_t i = 0; i < r.lists.size(); ++i)
        out.lists[sub.original[search.order()[i]]] = r.lists[i];
    return out;
}

inline AdversaryResult lambda_t_impl(const Graph& g, int t, const AdversaryOptions& opt, bool stop_below_full)
{
    const int n = g.order();
    if (t < 0)
        throw std::invalid_argument("t must be nonnegative");
    if (t == 0)
        return {0, ListAssignment(g, std::vector<ColorSet>(static_cast<std::size_t>(n), 0), 0)};
    const bool explicit_palette = opt.palette.has_value();
    const int palette = explicit_palette ? *opt.palette : std::min(n * t, kMaxPalette);
    if (palette < t || palette > kMaxPalette)
        throw SizeError("palette bound " + std::to_string(palette) + " must lie in [t, 64]");
    AdversaryResult res{0, ListAssignment::constant(g, t)};
    res.palette_limited = explicit_palette && palette < n * t;

    std::vector<ColorSet> lists(static_cast<std::size_t>(n), low_bits(t));
    std::vector<VertexSet> parts;
    if (opt.reduce) {
        VertexSet kept = core(g, t);
        res.value = n - kept.size();
        parts = components(g, kept);
    } else {
        check_caps(n, t, opt.caps);
        for (int v = 0; v < n; ++v)
            if (g.degree(v) == 0)
                ++res.value;
        VertexSet rest = g.vertices() - VertexSet{[&] {
            Bits iso = 0;
            for (int v = 0; v < n; ++v)
                if (g.degree(v) == 0)
                    iso |= bit(v);
            return iso;
        }()};
        if (!rest.empty())
            parts.push_back(rest);
    }
    for (VertexSet part : parts) {
        // without reduction the remaining part may be disconnected; the search handles that too
        const int local_palette = explicit_palette ? palette : part.size() * t;
        if (local_palette > kMaxPalette)
            throw SizeError("palette for a " + std::to_string(part.size()) + "-vertex search exceeds 64 colors");
        auto c = search_component(g, part, t, local_palette, opt, stop_below_full);
        res.value += c.value;
        res.classes += c.classes;
        res.pruned += c.pruned;
        for_each_bit(part.bits(), [&](int v) { lists[v] = c.lists[v]; });
        if (stop_below_full && res.value < n)
            break;
    }
    res.witness = ListAssignment(g, std::move(lists), palette);
    return res;
}

} // namespace detail

// lambda_t(G): minimum of lambda_L over all t-uniform assignments, with a minimizing witness.
inline AdversaryResult lambda_t(const Graph& g, int t, const AdversaryOptions& opt = {})
{
    return detail::lambda_t_impl(g, t, opt, false);
}

// Whether every t-uniform assignment colors all of G (search stops at the first failure).
inline bool is_choosable(const Graph& g, int t, const AdversaryOptions& opt = {})
{
    if (t <= 0)
        return false;
    return detail::lambda_t_impl(g, t, opt, true).value == g.order();
}

// Raw reference: every t-subset of [0, n*t) at every vertex, no symmetry reduction, lambda by
// exhaustive enumeration.
inline int lambda_t_oracle(const Graph& g, int t)
{
    const int n = g.order();
    if (n > 5 || t > 2 || t < 0)
        throw SizeError("raw lambda_t oracle limited to n <= 5 and t <= 2");
    if (t == 0)
        return 0;
    const int palette = n * t;
    std::vector<ColorSet> subsets;
    for (ColorSet m = 0; m < bit(palette); ++m)
        if (popcount(m) == t)
            subsets.push_back(m);
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    std::vector<ColorSet> lists(static_cast<std::size_t>(n));
    int best = n;
    while (true) {
        for (int v = 0; v < n; ++v)
            lists[v] = subsets[pick[v]];
        best = std::min(best, lambda_of_assignment_oracle(g, ListAssignment(g, lists, palette)));
        int v = 0;
        while (v < n && pick[v] + 1 == subsets.size()) {
            pick[v] = 0;
            ++v;
        }
        if (v == n)
            break;
        ++pick[v];
    }
    return best;
}

// Smallest t with lambda_t = n, scanning upward from the chromatic number.
inline int list_chromatic_number(const Graph& g, const AdversaryOptions& opt = {})
{
    for (int t = std::max(1, chromatic_number(g));; ++t)
        if (is_choosable(g, t, opt))
            return t;
}

struct LambdaTable {
    std::string graph6;
    int n = 0;
    int alpha = 0;
    int chi = 0;
    int chi_l = 0;
    std::vector<int> values;                // lambda_0 .. lambda_{chi_l}
    std::vector<ListAssignment> witnesses;  // one minimizing assignment per t
    bool palette_limited = false;

    // lambda_t for any t >= 0; n from chi_l on.
    int at(int t) const { return t >= chi_l ? n : values[static_cast<std::size_t>(t)]; }
};

using LambdaProvider = std::function<AdversaryResult(const Graph&, int)>;

inline LambdaTable lambda_table(const Graph& g, const LambdaProvider& lambda)
{
    LambdaTable tab;
    tab.graph6 = emit_graph6(g);
    tab.n = g.order();
    tab.alpha = independence_number(g);
    tab.chi = chromatic_number(g);
    for (int t = 0;; ++t) {
        AdversaryResult r = lambda(g, t);
        tab.values.push_back(r.value);
        tab.witnesses.push_back(r.witness);
        tab.palette_limited = tab.palette_limited || r.palette_limited;
        if (r.value == tab.n && t > 0) {
            tab.chi_l = t;
            break;
        }
    }
    return tab;
}

inline LambdaTable lambda_table(const Graph& g, const AdversaryOptions& opt = {})
{
    return lambda_table(g, [&](const Graph& h, int t) { return lambda_t(h, t, opt); });
}

} // namespace plc
