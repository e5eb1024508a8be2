#pragma once

#include "adversary.hpp"
#include "graph.hpp"
#include "list_solver.hpp"
#include "rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace plc {

enum class StatementKind { Proved, Conjecture };

struct StatementInfo {
    std::string id;
    StatementKind kind;
    std::string claim;
};

// Every statement a report covers, in report order.
inline const std::vector<StatementInfo>& statement_checklist()
{
    static const std::vector<StatementInfo> list = {
        {"agh", StatementKind::Conjecture, "lambda_t * chi_l >= t * n for 0 <= t <= chi_l"},
        {"ratio_conjecture", StatementKind::Conjecture, "lambda_r / r >= lambda_s / s for r < s, r not dividing s"},
        {"divisor_ratio", StatementKind::Proved, "lambda_r / r >= lambda_s / s when r divides s"},
        {"geometric_bound", StatementKind::Proved, "lambda_t >= (1 - (1 - 1/chi)^t) n"},
        {"six_sevenths_bound", StatementKind::Proved, "7 lambda_t chi_l >= 6 t n"},
        {"divisor_agh", StatementKind::Proved, "lambda_t chi_l >= t n when t divides chi_l"},
        {"ceiling_bound", StatementKind::Proved, "lambda_r * ceil(chi_l / r) >= n"},
        {"triangle_inequality", StatementKind::Proved, "lambda_r + lambda_s >= lambda_(r+s)"},
        {"repeated_sum", StatementKind::Proved, "k lambda_r >= lambda_(k r)"},
        {"subadditivity", StatementKind::Proved, "sum lambda_(r_i) >= lambda_(sum r_i)"},
        {"triangle_construction", StatementKind::Proved,
         "disjoint union of minimizing r- and s-assignments splits a maximum coloring into parts of size <= lambda_r, lambda_s"},
        {"agh_complement_pair", StatementKind::Proved, "agh holds for r or for chi_l - r"},
        {"agh_remainder_pair", StatementKind::Proved, "agh holds for r or for chi_l mod r"},
        {"agh_transfer_divisor", StatementKind::Proved, "r | s and agh at s imply agh at r"},
        {"agh_transfer_remainder", StatementKind::Proved, "agh at s implies agh at r or at s mod r"},
        {"td_complement", StatementKind::Proved, "(r, s) or (s - r, s) in Td"},
        {"td_remainder", StatementKind::Proved, "(r, s) or (s mod r, s) in Td"},
        {"td_ceiling", StatementKind::Proved, "ceil(s / r) lambda_r >= lambda_s"},
        {"td_reflexive", StatementKind::Proved, "(r, r) in Td"},
        {"td_antisymmetric", StatementKind::Proved, "(r, s) and (s, r) in Td imply r = s"},
        {"td_transitive", StatementKind::Proved, "(r, s) and (s, u) in Td imply (r, u) in Td"},
        {"restriction_monotone", StatementKind::Proved, "lambda_L(G) >= lambda_(L|H)(H) for induced H"},
        {"induced_monotone", StatementKind::Proved, "lambda_t(G) >= lambda_t(H) for induced H"},
        {"constant_palette_bound", StatementKind::Proved, "lambda_r >= (1 - (1 - 1/s)^r) lambda_(L_s), L_s = {0..s-1}"},
        {"constant_palette_bound_lambda", StatementKind::Proved, "lambda_r >= (1 - (1 - 1/s)^r) lambda_s"},
        {"max_choosable_subgraph", StatementKind::Proved,
         "lambda_t >= |H| for a largest induced H with chi_l(H) = t"},
        {"colored_subgraph_choosability", StatementKind::Proved,
         "the subgraph induced by a maximum coloring under a minimizing t-assignment has chi_l >= t"},
    };
    return list;
}

inline StatementKind statement_kind(const std::string& id)
{
    for (const auto& s : statement_checklist())
        if (s.id == id)
            return s.kind;
    throw std::invalid_argument("unknown statement " + id);
}

struct Param {
    std::string name;
    std::vector<std::int64_t> values;
};

struct Verdict {
    std::string statement;
    std::vector<Param> params;
    bool holds = true;
    Rational lhs;
    Rational rhs;
    std::vector<int> witness_t; // lambda_t entries whose witnesses reproduce a failure
    std::string note;

    bool proved() const { return statement_kind(statement) == StatementKind::Proved; }
};

namespace detail {

inline Verdict at_least(std::string id, std::vector<Param> params, Rational lhs, Rational rhs,
                        std::vector<int> witness_t = {})
{
    Verdict v{std::move(id), std::move(params), lhs >= rhs, lhs, rhs, {}, {}};
    if (!v.holds)
        v.witness_t = std::move(witness_t);
    return v;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

} // namespace detail

// lambda_t * chi_l >= t * n, exact.
inline bool agh_holds(const LambdaTable& tab, int t)
{
    return checked_mul(tab.at(t), tab.chi_l) >= checked_mul(t, tab.n);
}

inline Verdict agh_verdict(const LambdaTable& tab, int t, std::string id = "agh")
{
    return detail::at_least(std::move(id), {{"t", {t}}}, Rational(tab.at(t)), Rational(checked_mul(t, tab.n), tab.chi_l),
                            {t});
}

inline std::vector<Verdict> check_agh(const LambdaTable& tab)
{
    std::vector<Verdict> out;
    for (int t = 0; t <= tab.chi_l; ++t)
        out.push_back(agh_verdict(tab, t));
    return out;
}

// Every r + s <= chi_l, repeated sums k r <= chi_l, and all multisets with at least two parts.
inline std::vector<Verdict> check_triangle(const LambdaTable& tab)
{
    std::vector<Verdict> out;
    const int top = tab.chi_l;
    for (int r = 1; r <= top; ++r)
        for (int s = 1; r + s <= top; ++s)
            out.push_back(detail::at_least("triangle_inequality", {{"r", {r}}, {"s", {s}}},
                                           Rational(tab.at(r) + tab.at(s)), Rational(tab.at(r + s)), {r, s, r + s}));
    for (int r = 1; r <= top; ++r)
        for (int k = 2; k * r <= top; ++k)
            out.push_back(detail::at_least("repeated_sum", {{"k", {k}}, {"r", {r}}},
                                           Rational(checked_mul(k, tab.at(r))), Rational(tab.at(k * r)), {r, k * r}));
    // multisets as nonincreasing part sequences
    std::vector<std::int64_t> parts;
    std::function<void(int, int)> rec = [&](int max_part, int sum) {
        if (parts.size() >= 2) {
            std::int64_t total = 0;
            std::vector<int> ts;
            for (auto p : parts) {
                total += tab.at(static_cast<int>(p));
                ts.push_back(static_cast<int>(p));
            }
            ts.push_back(sum);
            out.push_back(detail::at_least("subadditivity", {{"parts", parts}}, Rational(total), Rational(tab.at(sum)), ts));
        }
        for (int p = std::min(max_part, top - sum); p >= 1; --p) {
            parts.push_back(p);
            rec(p, sum + p);
            parts.pop_back();
        }
    };
    rec(top, 0);
    return out;
}

// lambda_r * s >= lambda_s * r for 1 <= r <= s <= chi_l. Pairs with r | s are proved
// ("divisor_ratio"); the rest are the open ratio conjecture.
inline std::vector<Verdict> check_ratio(const LambdaTable& tab)
{
    std::vector<Verdict> out;
    for (int s = 1; s <= tab.chi_l; ++s)
        for (int r = 1; r <= s; ++r) {
            const bool divides = s % r == 0;
            out.push_back(detail::at_least(divides ? "divisor_ratio" : "ratio_conjecture", {{"r", {r}}, {"s", {s}}},
                                           Rational(tab.at(r), r), Rational(tab.at(s), s), {r, s}));
        }
    return out;
}

struct TdRelation {
    int chi_l = 0;
    std::set<std::pair<int, int>> pairs;

    bool contains(int r, int s) const { return pairs.count({r, s}) > 0; }
};

inline TdRelation td_relation(const LambdaTable& tab)
{
    TdRelation td{tab.chi_l, {}};
    for (int r = 1; r <= tab.chi_l; ++r)
        for (int s = r; s <= tab.chi_l; ++s)
            if (checked_mul(tab.at(r), s) >= checked_mul(tab.at(s), r))
                td.pairs.insert({r, s});
    return td;
}

struct TdCheck {
    TdRelation td;
    std::vector<Verdict> verdicts;
};

inline TdCheck compute_td(const LambdaTable& tab)
{
    TdCheck out{td_relation(tab), {}};
    const TdRelation& td = out.td;
    const int top = tab.chi_l;
    auto either = [&](std::string id, int r, int other, int s) {
        const bool first = td.contains(r, s);
        const int shown = first || !td.contains(other, s) ? r : other;
        Verdict v{std::move(id),
                  {{"r", {r}}, {"s", {s}}, {"other", {other}}},
                  first || td.contains(other, s),
                  Rational(tab.at(shown), shown),
                  Rational(tab.at(s), s),
                  {},
                  {}};
        if (!v.holds)
            v.witness_t = {r, other, s};
        out.verdicts.push_back(std::move(v));
    };
    for (int s = 1; s <= top; ++s)
        for (int r = 1; r < s; ++r) {
            either("td_complement", r, s - r, s);
            if (s % r != 0)
                either("td_remainder", r, s % r, s);
        }
    for (int s = 1; s <= top; ++s)
        for (int r = 1; r <= s; ++r)
            out.verdicts.push_back(detail::at_least("td_ceiling", {{"r", {r}}, {"s", {s}}},
                                                    Rational(checked_mul(detail::ceil_div(s, r), tab.at(r))),
                                                    Rational(tab.at(s)), {r, s}));

    auto axiom = [&](std::string id, std::int64_t satisfied, std::int64_t required) {
        out.verdicts.push_back({std::move(id), {}, satisfied == required, Rational(satisfied), Rational(required), {}, {}});
    };
    std::int64_t reflexive = 0;
    for (int r = 1; r <= top; ++r)
        reflexive += td.contains(r, r) ? 1 : 0;
    axiom("td_reflexive", reflexive, top);

    // pairs are stored with r <= s, so both directions exist only on the diagonal
    std::int64_t anti_total = 0, anti_ok = 0;
    for (auto [r, s] : td.pairs)
        if (td.contains(s, r)) {
            ++anti_total;
            anti_ok += r == s ? 1 : 0;
        }
    axiom("td_antisymmetric", anti_ok, anti_total);

    std::int64_t trans_total = 0, trans_ok = 0;
    for (auto [r, s] : td.pairs)
        for (auto [s2, u] : td.pairs)
            if (s2 == s) {
                ++trans_total;
                trans_ok += td.contains(r, u) ? 1 : 0;
            }
    axiom("td_transitive", trans_ok, trans_total);
    return out;
}

// Bounds that hold on every graph: the geometric chi-bound, the 6/7 bound, the ceiling
// bound, and agh on divisors of chi_l.
inline std::vector<Verdict> check_lower_bounds(const LambdaTable& tab)
{
    std::vector<Verdict> out;
    const std::int64_t n = tab.n;
    for (int t = 0; t <= tab.chi_l; ++t) {
        const std::int64_t chi_t = checked_pow(tab.chi, t);
        const std::int64_t drop = checked_sub(chi_t, checked_pow(tab.chi - 1, t));
        out.push_back(detail::at_least("geometric_bound", {{"t", {t}}}, Rational(tab.at(t)),
                                       Rational(checked_mul(drop, n), chi_t), {t}));
        out.push_back(detail::at_least("six_sevenths_bound", {{"t", {t}}}, Rational(tab.at(t)),
                                       Rational(checked_mul(6 * t, n), checked_mul(7, tab.chi_l)), {t}));
        if (t >= 1 && tab.chi_l % t == 0)
            out.push_back(agh_verdict(tab, t, "divisor_agh"));
    }
    for (int r = 1; r <= tab.chi_l; ++r)
        out.push_back(detail::at_least("ceiling_bound", {{"r", {r}}},
                                       Rational(checked_mul(tab.at(r), detail::ceil_div(tab.chi_l, r))), Rational(n), {r}));
    return out;
}

// The agh dichotomies and transfer statements, each decided from the per-t agh verdicts.
inline std::vector<Verdict> check_agh_consequences(const LambdaTable& tab)
{
    std::vector<Verdict> out;
    const int top = tab.chi_l;
    auto disjunction = [&](std::string id, std::vector<Param> params, int a, int b) {
        const bool ha = agh_holds(tab, a);
        const int shown = ha || !agh_holds(tab, b) ? a : b;
        Verdict v = agh_verdict(tab, shown, std::move(id));
        v.params = std::move(params);
        v.params.push_back({"shown", {shown}});
        v.holds = ha || agh_holds(tab, b);
        v.witness_t = v.holds ? std::vector<int>{} : std::vector<int>{a, b};
        out.push_back(std::move(v));
    };
    auto implication = [&](std::string id, std::vector<Param> params, int premise, int a, int b) {
        if (!agh_holds(tab, premise)) {
            Verdict v = agh_verdict(tab, premise, std::move(id));
            v.params = std::move(params);
            v.holds = true;
            v.witness_t.clear();
            v.note = "premise fails";
            out.push_back(std::move(v));
            return;
        }
        disjunction(std::move(id), std::move(params), a, b);
    };
    for (int r = 1; r < top; ++r)
        disjunction("agh_complement_pair", {{"r", {r}}}, r, top - r);
    for (int r = 1; r <= top; ++r)
        disjunction("agh_remainder_pair", {{"r", {r}}, {"remainder", {top % r}}}, r, top % r);
    for (int s = 1; s <= top; ++s)
        for (int r = 1; r <= s; ++r) {
            if (s % r == 0)
                implication("agh_transfer_divisor", {{"r", {r}}, {"s", {s}}}, s, r, r);
            else
                implication("agh_transfer_remainder", {{"r", {r}}, {"s", {s}}, {"remainder", {s % r}}}, s, r, s % r);
        }
    return out;
}

// Disjoint-palette union of the minimizing r- and s-witnesses: a maximum coloring of the union
// splits into parts no larger than lambda_r and lambda_s.
inline std::vector<Verdict> check_triangle_construction(const Graph& g, const LambdaTable& tab)
{
    std::vector<Verdict> out;
    for (int r = 1; r < tab.chi_l; ++r)
        for (int s = 1; r + s <= tab.chi_l; ++s) {
            const ListAssignment& lr = tab.witnesses[static_cast<std::size_t>(r)];
            const ListAssignment& ls = tab.witnesses[static_cast<std::size_t>(s)];
            if (lr.palette() + ls.palette() > kMaxPalette)
                continue;
            CombinedAssignment both = combine_assignments(lr, ls);
            SolveResult best = lambda_of_assignment(g, both.lists);
            SplitColoring parts = split_coloring(lr, ls, best.witness);
            const int in_r = parts.first.size();
            const int in_s = parts.second.size();
            Verdict v{"triangle_construction",
                      {{"r", {r}}, {"s", {s}}, {"first", {in_r}}, {"second", {in_s}}},
                      in_r + in_s == best.value && in_r <= tab.at(r) && in_s <= tab.at(s) &&
                          best.value >= tab.at(r + s),
                      Rational(tab.at(r) + tab.at(s)),
                      Rational(in_r + in_s),
                      {},
                      {}};
            if (!v.holds)
                v.witness_t = {r, s};
            out.push_back(std::move(v));
        }
    return out;
}

struct RestrictionSample {
    ListAssignment lists;
    VertexSet subset;
};

inline std::vector<Verdict> check_restriction(const Graph& g, const std::vector<RestrictionSample>& samples)
{
    std::vector<Verdict> out;
    for (const auto& sample : samples) {
        Restriction res = restrict_assignment(g, sample.lists, sample.subset);
        const int whole = lambda_of_assignment(g, sample.lists).value;
        const int part = lambda_of_assignment(res.sub.graph, res.lists).value;
        out.push_back(detail::at_least("restriction_monotone",
                                       {{"subset", {static_cast<std::int64_t>(sample.subset.bits())}}},
                                       Rational(whole), Rational(part)));
    }
    return out;
}

using TableProvider = std::function<LambdaTable(const Graph&)>;
using ChoiceNumber = std::function<int(const Graph&)>;

inline std::vector<Verdict> check_induced_monotone(const Graph& g, const LambdaTable& tab, const std::vector<VertexSet>& sample,
                                            const TableProvider& table_of)
{
    std::vector<Verdict> out;
    for (VertexSet s : sample) {
        InducedSubgraph h = induced_subgraph(g, s);
        LambdaTable sub = table_of(h.graph);
        for (int t = 1; t <= sub.chi_l; ++t)
            out.push_back(detail::at_least("induced_monotone",
                                           {{"subset", {static_cast<std::int64_t>(s.bits())}}, {"t", {t}}},
                                           Rational(tab.at(t)), Rational(sub.at(t)), {t}));
    }
    return out;
}

// lambda_r * s^r >= (s^r - (s-1)^r) * lambda_(L_s), and the same with lambda_s in place of lambda_(L_s).
inline std::vector<Verdict> check_constant_palette(const Graph& g, const LambdaTable& tab, int r, int s)
{
    if (r < 1 || r > s || s > tab.chi_l)
        throw std::invalid_argument("constant-palette bound needs 1 <= r <= s <= chi_l");
    const std::int64_t sr = checked_pow(s, r);
    const std::int64_t drop = checked_sub(sr, checked_pow(s - 1, r));
    const int constant = max_partial_constant(g, s).value;
    std::vector<Param> params = {{"r", {r}}, {"s", {s}}};
    std::vector<Verdict> out;
    Verdict a = detail::at_least("constant_palette_bound", params, Rational(tab.at(r)),
                                 Rational(checked_mul(drop, constant), sr), {r});
    a.params.push_back({"constant_lambda", {constant}});
    out.push_back(std::move(a));
    out.push_back(detail::at_least("constant_palette_bound_lambda", params, Rational(tab.at(r)),
                                   Rational(checked_mul(drop, tab.at(s)), sr), {r, s}));
    return out;
}

// Part 1 reads "subgraph" as induced subgraph; part 2 uses the table's minimizing witness
// and the solver's maximum coloring under it.
inline std::vector<Verdict> check_subgraph_choosability(const Graph& g, const LambdaTable& tab, int t, const ChoiceNumber& choice_number,
                                            int max_order_part1 = 7)
{
    std::vector<Verdict> out;
    if (t < 1 || t > tab.chi_l)
        throw std::invalid_argument("t must lie in [1, chi_l]");
    if (g.order() <= max_order_part1) {
        int largest = 0;
        Bits where = 0;
        for (Bits s = 1; s <= low_bits(g.order()); ++s) {
            if (popcount(s) <= largest)
                continue;
            if (choice_number(induced_subgraph(g, VertexSet{s}).graph) == t) {
                largest = popcount(s);
                where = s;
            }
        }
        Verdict v = detail::at_least("max_choosable_subgraph", {{"t", {t}}, {"subset", {static_cast<std::int64_t>(where)}}},
                                     Rational(tab.at(t)), Rational(largest), {t});
        v.note = largest == 0 ? "no induced subgraph with this choice number" : "induced subgraphs only";
        out.push_back(std::move(v));
    }
    const ListAssignment& lists = tab.witnesses[static_cast<std::size_t>(std::min(t, tab.chi_l))];
    SolveResult best = lambda_of_assignment(g, lists);
    const VertexSet colored = best.witness.colored();
    const int h_choice = choice_number(induced_subgraph(g, colored).graph);
    Verdict v = detail::at_least("colored_subgraph_choosability",
                                 {{"t", {t}}, {"subset", {static_cast<std::int64_t>(colored.bits())}}},
                                 Rational(h_choice), Rational(t), {t});
    if (best.value != tab.at(t)) {
        v.holds = false;
        v.note = "witness assignment does not reproduce lambda_t";
    }
    out.push_back(std::move(v));
    return out;
}

struct StatementTally {
    int checked = 0;
    int failed = 0;
};

struct ConjectureReport {
    std::string graph6;
    LambdaTable table;
    std::vector<Verdict> verdicts;
    std::map<std::string, StatementTally> tally; // every checklist id, possibly 0 checked

    int failed(StatementKind kind) const
    {
        int f = 0;
        for (const auto& v : verdicts)
            if (!v.holds && statement_kind(v.statement) == kind)
                ++f;
        return f;
    }
};

struct ReportInputs {
    TableProvider table_of;
    ChoiceNumber choice_number;
    std::vector<VertexSet> induced_sample;
    std::vector<RestrictionSample> restriction_sample;
    int max_order_part1 = 7;
};

inline ConjectureReport build_report(const Graph& g, const LambdaTable& tab, const ReportInputs& in)
{
    ConjectureReport rep{tab.graph6, tab, {}, {}};
    auto add = [&](std::vector<Verdict> vs) {
        for (auto& v : vs)
            rep.verdicts.push_back(std::move(v));
    };
    add(check_agh(tab));
    add(check_ratio(tab));
    add(check_lower_bounds(tab));
    add(check_triangle(tab));
    add(check_triangle_construction(g, tab));
    add(check_agh_consequences(tab));
    add(compute_td(tab).verdicts);
    add(check_restriction(g, in.restriction_sample));
    add(check_induced_monotone(g, tab, in.induced_sample, in.table_of));
    for (int s = 1; s <= tab.chi_l; ++s)
        for (int r = 1; r <= s; ++r)
            add(check_constant_palette(g, tab, r, s));
    for (int t = 1; t <= tab.chi_l; ++t)
        add(check_subgraph_choosability(g, tab, t, in.choice_number, in.max_order_part1));

    for (const auto& s : statement_checklist())
        rep.tally[s.id] = {};
    for (const auto& v : rep.verdicts) {
        auto& tally = rep.tally[v.statement];
        ++tally.checked;
        tally.failed += v.holds ? 0 : 1;
    }
    return rep;
}

} // namespace plc
