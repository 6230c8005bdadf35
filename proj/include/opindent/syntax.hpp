// Character classes, comment/string/paren skipping and the cached forward
// scan state.  This is the only layer that knows about comments and strings.
#pragma once

#include "opindent/textbuf.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace opindent {

enum class CharKind { Whitespace, Word, Symbol, Punctuation, Open, Close, StringDelim, Escape };

const char* to_string(CharKind kind) noexcept;

struct CharClass {
    CharKind kind = CharKind::Punctuation;
    std::optional<char32_t> partner; ///< set for Open/Close only
    friend bool operator==(const CharClass&, const CharClass&) = default;
};

struct CommentStyle {
    std::u32string opener;
    std::u32string closer; ///< "\n" for line comments
};

class SyntaxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Maps characters to classes.  Unmapped letters and digits (and anything
/// outside ASCII) are Word, everything else is Punctuation.
class SyntaxTable {
public:
    /// Whitespace only.
    SyntaxTable();
    /// Whitespace, ()[]{} pairs, '"' strings, '\' escape and '_' as symbol.
    static SyntaxTable standard();

    void set(char32_t ch, CharKind kind);
    void add_pair(char32_t open, char32_t close);
    void add_comment(std::u32string opener, std::u32string closer);

    CharClass classify(char32_t ch) const;
    CharKind kind(char32_t ch) const { return classify(ch).kind; }
    const std::vector<CommentStyle>& comments() const noexcept { return comments_; }
    const std::map<char32_t, CharClass>& explicit_classes() const noexcept { return classes_; }

    /// True when `ch` is the final character of some comment closer.
    bool ends_comment(char32_t ch) const noexcept;

    /// Throws SyntaxError when an invariant is violated.
    void validate() const;

private:
    std::map<char32_t, CharClass> classes_;
    std::vector<CommentStyle> comments_;
};

/// Forward parse state at an offset: paren depth plus string/comment context.
struct ScanState {
    std::size_t pos = 0;
    long depth = 0;
    std::optional<char32_t> string_delim;
    std::size_t string_start = 0;
    std::optional<std::size_t> comment_style;
    std::size_t comment_start = 0;

    bool in_string() const noexcept { return string_delim.has_value(); }
    bool in_comment() const noexcept { return comment_style.has_value(); }
    friend bool operator==(const ScanState&, const ScanState&) = default;
};

/// Raised by skip_balanced; `landing` is where the scan gave up.
class UnbalancedError : public std::runtime_error {
public:
    UnbalancedError(const std::string& what, std::size_t landing)
        : std::runtime_error(what), landing(landing)
    {
    }
    std::size_t landing;
};

/// Scanning primitives over one buffer, with a checkpoint cache for
/// scan_state keyed on the buffer revision.
class SyntaxScanner {
public:
    static constexpr std::size_t kCheckpointInterval = 1024;

    SyntaxScanner(const Buffer& buffer, const SyntaxTable& table);

    const Buffer& buffer() const noexcept { return *buffer_; }
    const SyntaxTable& table() const noexcept { return *table_; }

    /// State after a forward scan of [0, pos).  Constructs straddling pos
    /// (a half-read comment delimiter) are treated as not yet consumed.
    ScanState scan_state(std::size_t pos);
    /// Same result computed from offset 0 without touching the cache.
    ScanState scan_state_uncached(std::size_t pos) const;
    std::size_t checkpoint_count() const noexcept { return checkpoints_.size(); }

    void skip_whitespace_and_comments(Cursor& cursor, Direction dir);
    std::size_t skip_balanced(Cursor& cursor, Direction dir);

    /// Offset just past the string literal opening at `start`, honoring
    /// escapes; the buffer end when unterminated.
    std::size_t string_end(std::size_t start) const;
    /// Offset just past the comment opening at `start` with `style`.
    std::size_t comment_end(std::size_t start, std::size_t style) const;
    /// Index of the comment style whose opener starts at `pos`, if any.
    std::optional<std::size_t> comment_opener_at(std::size_t pos) const;

private:
    struct Progress {
        ScanState state;
        std::size_t resume = 0;
    };

    std::size_t step_length(const Progress& p) const;
    void apply_step(Progress& p) const;
    ScanState run(Progress p, std::size_t pos, bool record);
    void sync_revision();

    const Buffer* buffer_;
    const SyntaxTable* table_;
    std::uint64_t revision_;
    std::vector<Progress> checkpoints_;
    std::optional<Progress> memo_;
};

} // namespace opindent
