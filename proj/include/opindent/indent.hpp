// Indentation: the column for a position is derived from the neighboring
// tokens, navigation, virtual indentation and the language's rules.
#pragma once

#include "opindent/navigate.hpp"

#include <cstddef>
#include <set>

namespace opindent {

struct LineIndent {
    std::size_t old_column = 0;
    std::size_t new_column = 0;
    bool changed() const noexcept { return old_column != new_column; }
};

class Indenter {
public:
    static constexpr int kMaxDepth = 32;

    explicit Indenter(Engine& engine) : engine_(&engine) {}

    Engine& engine() noexcept { return *engine_; }

    /// Column for the token starting at `pos`, or for a phantom atom when
    /// `pos` is at a line end or at a comment.
    std::size_t calculate(std::size_t pos);
    /// Current column when the token at `pos` starts its line, else the
    /// column it would be indented to.
    std::size_t virtual_indent(std::size_t pos);
    /// Only whitespace or comments follow the token on its line, and it is
    /// not the first thing on its line.
    bool is_hanging(std::size_t pos);

    /// 1-based line.  Rewrites the leading whitespace when the column changes.
    LineIndent indent_line(std::size_t line);
    /// Lines [first, last], top to bottom, skipping blank lines.  Returns the
    /// number of changed lines.
    std::size_t indent_region(std::size_t first, std::size_t last);

    int basic_offset();

private:
    friend class QueryContextImpl;

    std::size_t dispatch(std::size_t pos);
    std::size_t comment_column(std::size_t pos, const ScanState& st);
    std::size_t keyword_case(const Token& tok);
    std::size_t after_keyword(const Token& k, std::size_t pos);
    std::size_t after_parent(const Token& parent, std::size_t pos);
    std::size_t sequence_case(std::size_t pos);
    std::size_t matching_open(const Token& close);
    std::optional<std::size_t> apply_rules(QueryKind kind, const std::string& token, std::size_t pos,
                                           const std::optional<Token>& query_token);

    bool at_line_start(std::size_t pos);
    std::size_t column(std::size_t pos);
    std::size_t first_token_after(std::size_t pos);
    std::size_t clamp(long column) const noexcept { return column < 0 ? 0 : static_cast<std::size_t>(column); }

    Engine* engine_;
    int depth_ = 0;
    std::set<std::size_t> visiting_;
};

} // namespace opindent
