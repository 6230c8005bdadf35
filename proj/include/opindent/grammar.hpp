// Operator-precedence grammar compilation: BNF and precedence-level lists
// are turned into pairwise relation tables, merged, and solved for a left
// and right integer level per keyword.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opindent {

enum class Rel { LT, EQ, GT };

const char* to_string(Rel rel) noexcept;

struct Symbol {
    std::string name;
    bool terminal = true;

    static Symbol term(std::string s) { return {std::move(s), true}; }
    static Symbol nonterm(std::string s) { return {std::move(s), false}; }
    friend bool operator==(const Symbol&, const Symbol&) = default;
};

using Rhs = std::vector<Symbol>;

/// Ordered BNF rules.  A non-terminal with no right-hand sides is legal and
/// stands for "any atom".
struct BnfSpec {
    std::vector<std::pair<std::string, std::vector<Rhs>>> rules;

    BnfSpec& add(std::string nonterminal, std::vector<Rhs> alternatives);
    bool defines(const std::string& nonterminal) const;
};

enum class Assoc { Assoc, Left, Right, NonAssoc };

const char* to_string(Assoc assoc) noexcept;
std::optional<Assoc> parse_assoc(const std::string& name);

struct PrecLevel {
    Assoc assoc = Assoc::Assoc;
    std::vector<std::string> tokens;
};

/// Weakest-binding level first.
using PrecLevelList = std::vector<PrecLevel>;

using TokenPair = std::pair<std::string, std::string>;

class GrammarError : public std::runtime_error {
public:
    enum class Kind {
        AdjacentNonTerminals,
        UndefinedNonTerminal,
        EmptyRhs,
        DuplicateToken,
        MergeConflict,
        UnresolvedConflict,
        Unsatisfiable,
    };

    GrammarError(Kind kind, const std::string& what, std::vector<std::string> detail = {})
        : std::runtime_error(what), kind(kind), detail(std::move(detail))
    {
    }

    Kind kind;
    /// The offending pair, rule or cycle, depending on `kind`.
    std::vector<std::string> detail;
};

/// Pairwise precedence relations between keywords.
///
/// Pairs the BNF derives in both directions are kept aside in `conflicts`
/// until another table (typically a precedence-level list) resolves them.
struct Prec2Table {
    struct Placement {
        bool seen_not_first = false;
        bool seen_not_last = false;
    };

    std::string source;
    std::map<TokenPair, Rel> relations;
    std::map<TokenPair, std::set<Rel>> conflicts;
    std::set<std::string> tokens;
    /// Where each BNF terminal occurs in its right-hand sides.
    std::map<std::string, Placement> placement;

    std::optional<Rel> get(const std::string& left, const std::string& right) const;
    /// Only ever the first symbol of a right-hand side.
    bool is_opener(const std::string& token) const;
    /// Only ever the last symbol of a right-hand side.
    bool is_closer(const std::string& token) const;
    bool empty() const noexcept { return tokens.empty(); }
};

struct Levels {
    std::optional<int> left;
    std::optional<int> right;
    friend bool operator==(const Levels&, const Levels&) = default;
};

/// Per-keyword precedence levels.  Tokens absent from the map are atoms.
struct PrecGrammar {
    std::map<std::string, Levels> levels;

    const Levels* find(const std::string& token) const;
    bool is_keyword(const std::string& token) const { return find(token) != nullptr; }
};

Prec2Table bnf_to_prec2(const BnfSpec& bnf);
Prec2Table levels_to_prec2(const PrecLevelList& levels);
Prec2Table merge_prec2(std::span<const Prec2Table> tables);
PrecGrammar prec2_to_grammar(const Prec2Table& table);

/// True when `grammar` satisfies every relation recorded in `table`.
/// Independent of the solver; used by tests and `grammar compile`.
std::vector<std::string> check_grammar_against(const Prec2Table& table, const PrecGrammar& grammar);

/// One row per token, tokens sorted: `"token" left right` with "-" for an
/// absent side.
std::string format_grammar(const PrecGrammar& grammar);
/// One line per relation, pairs sorted: `"a" < "b"`.
std::string format_prec2(const Prec2Table& table);
std::string quote_token(const std::string& token);

} // namespace opindent
