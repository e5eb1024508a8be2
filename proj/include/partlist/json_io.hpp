#pragma once

#include "adversary.hpp"
#include "graph6.hpp"
#include "list_assignment.hpp"
#include "theory.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace plc {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Json lists_json(const ListAssignment& lists)
{
    Json out = Json::array();
    for (const auto& l : lists.as_vectors())
        out.push_back(l);
    return out;
}

inline Json assignment_json(const std::string& graph6, const ListAssignment& lists)
{
    return Json{{"graph", graph6}, {"palette", lists.palette()}, {"lists", lists_json(lists)}};
}

inline Json coloring_json(const PartialColoring& c)
{
    Json out = Json::array();
    for (int v = 0; v < c.order(); ++v) {
        if (auto col = c.color(v))
            out.push_back(*col);
        else
            out.push_back(nullptr);
    }
    return out;
}

struct ParsedAssignment {
    Graph graph;
    ListAssignment lists;
};

inline ListAssignment lists_from_json(const Graph& g, const Json& lists, int palette)
{
    if (!lists.is_array() || static_cast<int>(lists.size()) != g.order())
        throw FormatError("assignment must hold one list per vertex");
    std::vector<ColorSet> sets;
    for (const auto& l : lists) {
        if (!l.is_array())
            throw FormatError("each list must be an array of colors");
        ColorSet s = 0;
        for (const auto& c : l) {
            if (!c.is_number_integer() || c.get<int>() < 0 || c.get<int>() >= kMaxPalette)
                throw FormatError("colors must be integers in [0, 64)");
            s |= bit(c.get<int>());
        }
        sets.push_back(s);
    }
    return ListAssignment(g, std::move(sets), palette);
}

inline ParsedAssignment assignment_from_json(const Json& j)
{
    try {
        Graph g = parse_graph6(j.at("graph").get<std::string>());
        ListAssignment lists = lists_from_json(g, j.at("lists"), j.at("palette").get<int>());
        return {std::move(g), std::move(lists)};
    } catch (const Json::exception& e) {
        throw FormatError(std::string("malformed assignment: ") + e.what());
    }
}

inline PartialColoring coloring_from_json(const Json& j)
{
    if (!j.is_array())
        throw FormatError("coloring must be an array");
    PartialColoring c(static_cast<int>(j.size()));
    for (std::size_t v = 0; v < j.size(); ++v) {
        if (j[v].is_null())
            continue;
        if (!j[v].is_number_integer() || j[v].get<int>() < 0)
            throw FormatError("coloring entries must be null or nonnegative integers");
        c.set(static_cast<int>(v), j[v].get<int>());
    }
    return c;
}

inline Json rational_json(const Rational& q) { return Json{{"num", q.num()}, {"den", q.den()}}; }

inline Json params_json(const std::vector<Param>& params)
{
    Json out = Json::object();
    for (const auto& p : params) {
        if (p.values.size() == 1 && p.name != "parts")
            out[p.name] = p.values.front();
        else
            out[p.name] = p.values;
    }
    return out;
}

inline Json verdict_json(const Verdict& v, const LambdaTable& tab)
{
    Json out{{"statement", v.statement},
             {"params", params_json(v.params)},
             {"holds", v.holds},
             {"lhs", rational_json(v.lhs)},
             {"rhs", rational_json(v.rhs)}};
    if (!v.note.empty())
        out["note"] = v.note;
    if (!v.holds && !v.witness_t.empty()) {
        Json w = Json::array();
        for (int t : v.witness_t) {
            const int k = std::min(t, tab.chi_l);
            w.push_back({{"t", t}, {"value", tab.at(t)}, {"assignment", assignment_json(tab.graph6, tab.witnesses[k])}});
        }
        out["witness"] = std::move(w);
    }
    return out;
}

inline Json table_json(const LambdaTable& tab, bool with_witnesses = true)
{
    Json out{{"graph", tab.graph6},
             {"n", tab.n},
             {"alpha", tab.alpha},
             {"chi", tab.chi},
             {"chi_l", tab.chi_l},
             {"lambda", tab.values}};
    if (tab.palette_limited)
        out["palette_limited"] = true;
    if (with_witnesses) {
        Json w = Json::array();
        for (const auto& l : tab.witnesses)
            w.push_back(lists_json(l));
        out["witnesses"] = std::move(w);
    }
    return out;
}

inline Json tally_json(const ConjectureReport& rep)
{
    Json out = Json::object();
    for (const auto& s : statement_checklist()) {
        const auto& t = rep.tally.at(s.id);
        out[s.id] = {{"kind", s.kind == StatementKind::Proved ? "proved" : "conjecture"},
                     {"checked", t.checked},
                     {"failed", t.failed}};
    }
    return out;
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace plc
