// Declarative indentation rules and the query handed to rule hooks.
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace opindent {

enum class QueryKind { BeforeToken, AfterToken, ElemBasic, ListIntro };

const char* to_string(QueryKind kind) noexcept;
std::optional<QueryKind> parse_query_kind(const std::string& name);

enum class DirectiveKind { Offset, Column, ParentColumn, ParentVirtual, Default };

/// What a rule asks for.  Offset and ParentVirtual add `value` columns to the
/// virtual indentation of the rule's anchor; Column is absolute.
struct IndentDirective {
    DirectiveKind kind = DirectiveKind::Default;
    int value = 0;

    static IndentDirective offset(int n) { return {DirectiveKind::Offset, n}; }
    static IndentDirective column(int c) { return {DirectiveKind::Column, c}; }
    static IndentDirective parent_column() { return {DirectiveKind::ParentColumn, 0}; }
    static IndentDirective parent_virtual(int extra = 0) { return {DirectiveKind::ParentVirtual, extra}; }
    static IndentDirective fallback() { return {}; }
    friend bool operator==(const IndentDirective&, const IndentDirective&) = default;
};

/// Read-only, lazily computed view of the surroundings of an indent query.
class QueryContext {
public:
    virtual ~QueryContext() = default;
    virtual bool is_hanging() = 0;
    /// Parent keyword found by navigation; empty at the buffer start.
    virtual std::optional<std::string> parent_token() = 0;
    virtual std::optional<std::size_t> parent_pos() = 0;
    /// The `n` tokens before the query token, nearest first.
    virtual std::vector<std::string> previous_tokens(std::size_t n) = 0;
    virtual std::size_t position() const = 0;
    /// Virtual indentation of an arbitrary token start.
    virtual std::size_t virtual_column(std::size_t pos) = 0;
};

struct IndentQuery {
    QueryKind kind = QueryKind::BeforeToken;
    std::string token;
    QueryContext* context = nullptr;
};

/// One element of a prev-tokens guard: "_" matches anything.
struct TokenMatcher {
    std::vector<std::string> alternatives;

    bool wildcard() const { return alternatives.empty(); }
    bool matches(const std::string& token) const;
};

struct RuleGuards {
    std::optional<bool> hanging;
    std::vector<TokenMatcher> prev_tokens;
    std::optional<std::string> parent_is;
};

struct IndentRule {
    QueryKind kind = QueryKind::BeforeToken;
    std::string token;
    RuleGuards guards;
    IndentDirective directive;
};

struct IndentRuleSet {
    int basic_offset = 4;
    std::vector<IndentRule> rules;
    /// Consulted when no declarative rule matches.
    std::function<std::optional<IndentDirective>(const IndentQuery&)> hook;
};

} // namespace opindent
