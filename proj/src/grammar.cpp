#include "opindent/grammar.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace opindent {

const char* to_string(Rel rel) noexcept
{
    switch (rel) {
    case Rel::LT: return "<";
    case Rel::EQ: return "=";
    case Rel::GT: return ">";
    }
    return "?";
}

const char* to_string(Assoc assoc) noexcept
{
    switch (assoc) {
    case Assoc::Assoc: return "assoc";
    case Assoc::Left: return "left";
    case Assoc::Right: return "right";
    case Assoc::NonAssoc: return "nonassoc";
    }
    return "?";
}

std::optional<Assoc> parse_assoc(const std::string& name)
{
    if (name == "assoc")
        return Assoc::Assoc;
    if (name == "left")
        return Assoc::Left;
    if (name == "right")
        return Assoc::Right;
    if (name == "nonassoc")
        return Assoc::NonAssoc;
    return std::nullopt;
}

std::string quote_token(const std::string& token)
{
    std::string out = "\"";
    for (char c : token) {
        if (c == '"' || c == '\\')
            out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
    return out;
}

BnfSpec& BnfSpec::add(std::string nonterminal, std::vector<Rhs> alternatives)
{
    rules.emplace_back(std::move(nonterminal), std::move(alternatives));
    return *this;
}

bool BnfSpec::defines(const std::string& nonterminal) const
{
    return std::any_of(rules.begin(), rules.end(), [&](const auto& r) { return r.first == nonterminal; });
}

std::optional<Rel> Prec2Table::get(const std::string& left, const std::string& right) const
{
    if (auto it = relations.find({left, right}); it != relations.end())
        return it->second;
    return std::nullopt;
}

bool Prec2Table::is_opener(const std::string& token) const
{
    auto it = placement.find(token);
    return it != placement.end() && !it->second.seen_not_first;
}

bool Prec2Table::is_closer(const std::string& token) const
{
    auto it = placement.find(token);
    return it != placement.end() && !it->second.seen_not_last;
}

const Levels* PrecGrammar::find(const std::string& token) const
{
    auto it = levels.find(token);
    return it == levels.end() ? nullptr : &it->second;
}

namespace {

void record(Prec2Table& table, const std::string& a, const std::string& b, Rel rel)
{
    const TokenPair key{a, b};
    table.tokens.insert(a);
    table.tokens.insert(b);
    if (auto c = table.conflicts.find(key); c != table.conflicts.end()) {
        c->second.insert(rel);
        return;
    }
    auto [it, inserted] = table.relations.emplace(key, rel);
    if (!inserted && it->second != rel) {
        table.conflicts[key] = {it->second, rel};
        table.relations.erase(it);
    }
}

std::string describe_rule(const std::string& nt, const Rhs& rhs)
{
    std::string out = nt + " ->";
    for (const auto& s : rhs)
        out += " " + (s.terminal ? quote_token(s.name) : s.name);
    return out;
}

using TerminalSets = std::map<std::string, std::set<std::string>>;

// Leading (first == true) or trailing terminal sets of every non-terminal.
TerminalSets edge_terminals(const BnfSpec& bnf, bool first)
{
    TerminalSets sets;
    for (const auto& [nt, alts] : bnf.rules)
        sets[nt];
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [nt, alts] : bnf.rules) {
            auto& target = sets[nt];
            const std::size_t before = target.size();
            for (const auto& rhs : alts) {
                const Symbol& edge = first ? rhs.front() : rhs.back();
                if (edge.terminal) {
                    target.insert(edge.name);
                    continue;
                }
                const auto& inner = sets[edge.name];
                target.insert(inner.begin(), inner.end());
                if (rhs.size() > 1) {
                    const Symbol& next = first ? rhs[1] : rhs[rhs.size() - 2];
                    target.insert(next.name);
                }
            }
            changed = changed || target.size() != before;
        }
    }
    return sets;
}

} // namespace

Prec2Table bnf_to_prec2(const BnfSpec& bnf)
{
    Prec2Table table;
    table.source = "bnf";
    for (const auto& [nt, alts] : bnf.rules) {
        for (const auto& rhs : alts) {
            if (rhs.empty())
                throw GrammarError(GrammarError::Kind::EmptyRhs, "empty right-hand side in rule for " + nt, {nt});
            for (std::size_t i = 0; i < rhs.size(); ++i) {
                if (!rhs[i].terminal && !bnf.defines(rhs[i].name))
                    throw GrammarError(GrammarError::Kind::UndefinedNonTerminal,
                                       "undefined non-terminal " + rhs[i].name + " in rule " +
                                           describe_rule(nt, rhs),
                                       {rhs[i].name});
                if (i + 1 < rhs.size() && !rhs[i].terminal && !rhs[i + 1].terminal)
                    throw GrammarError(GrammarError::Kind::AdjacentNonTerminals,
                                       "adjacent non-terminals in rule " + describe_rule(nt, rhs),
                                       {describe_rule(nt, rhs)});
            }
        }
    }

    const TerminalSets firsts = edge_terminals(bnf, true);
    const TerminalSets lasts = edge_terminals(bnf, false);

    for (const auto& [nt, alts] : bnf.rules) {
        for (const auto& rhs : alts) {
            for (std::size_t i = 0; i < rhs.size(); ++i) {
                const Symbol& s = rhs[i];
                if (s.terminal) {
                    table.tokens.insert(s.name);
                    auto& p = table.placement[s.name];
                    p.seen_not_first = p.seen_not_first || i != 0;
                    p.seen_not_last = p.seen_not_last || i + 1 != rhs.size();
                }
                if (i + 1 >= rhs.size())
                    continue;
                const Symbol& next = rhs[i + 1];
                if (s.terminal && next.terminal) {
                    record(table, s.name, next.name, Rel::EQ);
                } else if (s.terminal) {
                    for (const auto& f : firsts.at(next.name))
                        record(table, s.name, f, Rel::LT);
                    if (i + 2 < rhs.size())
                        record(table, s.name, rhs[i + 2].name, Rel::EQ);
                } else {
                    for (const auto& l : lasts.at(s.name))
                        record(table, l, next.name, Rel::GT);
                }
            }
        }
    }
    return table;
}

Prec2Table levels_to_prec2(const PrecLevelList& levels)
{
    Prec2Table table;
    table.source = "precedences";
    std::set<std::string> seen;
    for (const auto& level : levels) {
        for (const auto& tok : level.tokens) {
            if (!seen.insert(tok).second)
                throw GrammarError(GrammarError::Kind::DuplicateToken,
                                   "token " + quote_token(tok) + " appears twice in one precedence list", {tok});
        }
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& weak = levels[i];
        for (const auto& a : weak.tokens) {
            table.tokens.insert(a);
            for (const auto& b : weak.tokens) {
                switch (weak.assoc) {
                case Assoc::Left: record(table, a, b, Rel::GT); break;
                case Assoc::Right: record(table, a, b, Rel::LT); break;
                case Assoc::Assoc: record(table, a, b, Rel::EQ); break;
                case Assoc::NonAssoc: break;
                }
            }
            for (std::size_t j = i + 1; j < levels.size(); ++j) {
                for (const auto& b : levels[j].tokens) {
                    record(table, a, b, Rel::LT);
                    record(table, b, a, Rel::GT);
                }
            }
        }
    }
    return table;
}

Prec2Table merge_prec2(std::span<const Prec2Table> tables)
{
    Prec2Table out;
    std::map<TokenPair, std::string> origin;
    std::map<TokenPair, std::set<Rel>> pending;
    for (const auto& t : tables) {
        if (!out.source.empty())
            out.source += "+";
        out.source += t.source;
        out.tokens.insert(t.tokens.begin(), t.tokens.end());
        for (const auto& [tok, p] : t.placement) {
            auto& dst = out.placement[tok];
            dst.seen_not_first = dst.seen_not_first || p.seen_not_first;
            dst.seen_not_last = dst.seen_not_last || p.seen_not_last;
        }
        for (const auto& [pair, rel] : t.relations) {
            auto [it, inserted] = out.relations.emplace(pair, rel);
            if (inserted) {
                origin[pair] = t.source;
            } else if (it->second != rel) {
                throw GrammarError(GrammarError::Kind::MergeConflict,
                                   "precedence conflict for " + quote_token(pair.first) + " " +
                                       quote_token(pair.second) + ": " + to_string(it->second) + " from " +
                                       origin[pair] + " vs " + to_string(rel) + " from " + t.source,
                                   {pair.first, pair.second});
            }
        }
        for (const auto& [pair, rels] : t.conflicts)
            pending[pair].insert(rels.begin(), rels.end());
    }
    for (auto& [pair, rels] : pending)
        if (!out.relations.contains(pair))
            out.conflicts[pair] = std::move(rels);
    return out;
}

namespace {

struct Solver {
    std::vector<std::string> names;
    std::vector<std::string> tokens;
    std::vector<std::size_t> parent;

    std::size_t add(const char* side, const std::string& token)
    {
        names.push_back(std::string(side) + "(" + quote_token(token) + ")");
        tokens.push_back(token);
        parent.push_back(parent.size());
        return parent.size() - 1;
    }
    std::size_t root(std::size_t v)
    {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(std::size_t a, std::size_t b) { parent[root(a)] = root(b); }
};

} // namespace

PrecGrammar prec2_to_grammar(const Prec2Table& table)
{
    if (!table.conflicts.empty()) {
        const auto& [pair, rels] = *table.conflicts.begin();
        std::string alts;
        for (Rel r : rels)
            alts += std::string(alts.empty() ? "" : "/") + to_string(r);
        throw GrammarError(GrammarError::Kind::UnresolvedConflict,
                           "unresolved precedence conflict " + quote_token(pair.first) + " " + alts + " " +
                               quote_token(pair.second),
                           {pair.first, pair.second});
    }

    Solver solver;
    std::map<std::string, std::optional<std::size_t>> left_var;
    std::map<std::string, std::optional<std::size_t>> right_var;
    for (const auto& tok : table.tokens) {
        if (table.is_opener(tok) && table.is_closer(tok))
            continue;
        left_var[tok] = table.is_opener(tok) ? std::nullopt : std::optional(solver.add("left", tok));
        right_var[tok] = table.is_closer(tok) ? std::nullopt : std::optional(solver.add("right", tok));
    }

    // Strict constraints as (smaller, larger) variable pairs.
    std::vector<std::pair<std::size_t, std::size_t>> strict;
    for (const auto& [pair, rel] : table.relations) {
        auto r = right_var.find(pair.first);
        auto l = left_var.find(pair.second);
        if (r == right_var.end() || l == left_var.end() || !r->second || !l->second)
            continue;
        const std::size_t ra = *r->second;
        const std::size_t lb = *l->second;
        switch (rel) {
        case Rel::EQ: solver.unite(ra, lb); break;
        case Rel::LT: strict.emplace_back(ra, lb); break;
        case Rel::GT: strict.emplace_back(lb, ra); break;
        }
    }

    const std::size_t n = solver.names.size();
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indegree(n, 0);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (auto [lo, hi] : strict) {
        const std::size_t a = solver.root(lo);
        const std::size_t b = solver.root(hi);
        if (a == b)
            throw GrammarError(GrammarError::Kind::Unsatisfiable,
                               "unsatisfiable precedences: " + solver.names[lo] + " < " + solver.names[hi] +
                                   " but they must be equal",
                               {solver.tokens[lo], solver.tokens[hi]});
        if (edges.emplace(a, b).second) {
            succ[a].push_back(b);
            ++indegree[b];
        }
    }

    std::vector<int> rank(n, 0);
    std::vector<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (solver.root(v) == v && indegree[v] == 0)
            queue.push_back(v);
    std::size_t processed = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const std::size_t v = queue[qi];
        ++processed;
        for (std::size_t w : succ[v]) {
            rank[w] = std::max(rank[w], rank[v] + 1);
            if (--indegree[w] == 0)
                queue.push_back(w);
        }
    }
    std::size_t roots = 0;
    for (std::size_t v = 0; v < n; ++v)
        roots += solver.root(v) == v ? 1 : 0;
    if (processed != roots) {
        // Every unprocessed node has an unprocessed predecessor, so walking
        // predecessors must revisit a node.
        std::vector<std::vector<std::size_t>> pred(n);
        for (auto [a, b] : edges)
            pred[b].push_back(a);
        std::size_t v = 0;
        while (solver.root(v) != v || indegree[v] == 0)
            ++v;
        std::vector<int> seen_at(n, -1);
        std::vector<std::size_t> path;
        while (seen_at[v] < 0) {
            seen_at[v] = static_cast<int>(path.size());
            path.push_back(v);
            for (std::size_t u : pred[v]) {
                if (indegree[u] > 0) {
                    v = u;
                    break;
                }
            }
        }
        path.erase(path.begin(), path.begin() + seen_at[v]);
        std::reverse(path.begin(), path.end());
        std::vector<std::string> involved;
        std::string text, head;
        for (std::size_t i = 0; i < path.size(); ++i) {
            std::string members;
            for (std::size_t u = 0; u < n; ++u) {
                if (solver.root(u) != path[i])
                    continue;
                members += (members.empty() ? "" : "=") + solver.names[u];
                if (std::find(involved.begin(), involved.end(), solver.tokens[u]) == involved.end())
                    involved.push_back(solver.tokens[u]);
            }
            if (i == 0)
                head = members;
            text += members + " < ";
        }
        text += head;
        throw GrammarError(GrammarError::Kind::Unsatisfiable, "unsatisfiable precedences, cycle: " + text, involved);
    }

    PrecGrammar grammar;
    for (const auto& [tok, lv] : left_var) {
        Levels levels;
        if (lv)
            levels.left = rank[solver.root(*lv)];
        if (const auto& rv = right_var.at(tok))
            levels.right = rank[solver.root(*rv)];
        grammar.levels.emplace(tok, levels);
    }
    return grammar;
}

std::vector<std::string> check_grammar_against(const Prec2Table& table, const PrecGrammar& grammar)
{
    std::vector<std::string> violations;
    for (const auto& [pair, rel] : table.relations) {
        const Levels* a = grammar.find(pair.first);
        const Levels* b = grammar.find(pair.second);
        if (!a || !b || !a->right || !b->left)
            continue;
        const int r = *a->right;
        const int l = *b->left;
        const bool ok = (rel == Rel::EQ && r == l) || (rel == Rel::LT && r < l) || (rel == Rel::GT && r > l);
        if (!ok)
            violations.push_back(quote_token(pair.first) + " " + to_string(rel) + " " + quote_token(pair.second));
    }
    return violations;
}

std::string format_grammar(const PrecGrammar& grammar)
{
    std::ostringstream out;
    for (const auto& [tok, lv] : grammar.levels) {
        out << quote_token(tok) << ' ' << (lv.left ? std::to_string(*lv.left) : "-") << ' '
            << (lv.right ? std::to_string(*lv.right) : "-") << '\n';
    }
    return out.str();
}

std::string format_prec2(const Prec2Table& table)
{
    std::ostringstream out;
    for (const auto& [pair, rel] : table.relations)
        out << quote_token(pair.first) << ' ' << to_string(rel) << ' ' << quote_token(pair.second) << '\n';
    return out.str();
}

} // namespace opindent
