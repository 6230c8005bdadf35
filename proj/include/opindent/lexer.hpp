// Bidirectional tokenizer working between comments and strings, plus the
// declarative per-language customizations layered on top of it.
#pragma once

#include "opindent/syntax.hpp"
#include "opindent/textbuf.hpp"

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace opindent {

struct Token {
    std::string text;      ///< grammar key; may differ from the buffer text
    std::size_t start = 0;
    std::size_t end = 0;   ///< start == end for synthesized tokens
    bool synthetic = false;
    bool string_literal = false;
    friend bool operator==(const Token&, const Token&) = default;
};

/// Emits `token` once for an inter-token gap when all given patterns match.
/// `before` must match a suffix of the text preceding the gap (from the start
/// of the previous line), `gap` must be found inside the gap text, and
/// `after` must match at the start of the text following the gap.  Empty
/// patterns always match.
struct VirtualSeparator {
    std::string token;
    std::string before;
    std::string gap;
    std::string after;
};

/// Renames a real token to another grammar key depending on its context.
struct RetagRule {
    std::string token;
    std::string before;
    std::string after;
    std::string key;
};

struct LexerSpec {
    std::vector<std::string> multi_char_punct;
    std::u32string split_punct;
    std::vector<VirtualSeparator> separators;
    std::vector<RetagRule> retag;

    bool empty() const noexcept
    {
        return multi_char_punct.empty() && split_punct.empty() && separators.empty() && retag.empty();
    }
};

class LexerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Expands the syntax-class escapes `\sw` (word), `\s_` (symbol), `\s.`
/// (punctuation) and `\s-` (whitespace) into ECMAScript character classes
/// built from the ASCII range of `table`.
std::string expand_syntax_classes(std::string_view pattern, const SyntaxTable& table);

/// Skips whitespace and comments in the direction of travel, then returns a
/// word/symbol run, a punctuation run, a single paren, or a whole string
/// literal.  Returns nullopt at the buffer edge.
std::optional<Token> default_next_token(SyntaxScanner& scanner, Cursor& cursor, Direction dir);

/// A LexerSpec with its patterns compiled for one syntax table.
class CompiledLexer {
public:
    CompiledLexer() = default;
    CompiledLexer(LexerSpec spec, const SyntaxTable& table);

    const LexerSpec& spec() const noexcept { return spec_; }
    std::optional<Token> next(SyntaxScanner& scanner, Cursor& cursor, Direction dir) const;

private:
    struct Separator {
        std::string token;
        std::optional<std::regex> before, gap, after;
    };
    struct Retag {
        std::string token;
        std::optional<std::regex> before, after;
        std::string key;
    };

    std::optional<Token> separator_for_gap(const Buffer& buf, std::size_t gap_start, std::size_t gap_end) const;
    void split_punctuation(Token& tok, Cursor& cursor, Direction dir, const Buffer& buf) const;
    void apply_retag(Token& tok, const Buffer& buf) const;

    LexerSpec spec_;
    std::vector<Separator> separators_;
    std::vector<Retag> retag_;
    std::vector<std::u32string> multi_;
};

} // namespace opindent
