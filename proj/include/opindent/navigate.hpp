// Tree-less operator-precedence navigation: jump over sub-expressions in
// either direction and report the keyword the jump stopped at.
#pragma once

#include "opindent/langdef.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace opindent {

enum class TokenRole { Atom, Keyword, OpenParen, CloseParen };

/// A buffer bound to a language: lexer, scanner and token classification.
/// The LangDef and the Buffer must outlive the engine.
class Engine {
public:
    Engine(Buffer& buffer, const LangDef& lang);

    Buffer& buffer() noexcept { return *buffer_; }
    const Buffer& buffer() const noexcept { return *buffer_; }
    const LangDef& lang() const noexcept { return *lang_; }
    SyntaxScanner& scanner() noexcept { return scanner_; }

    std::optional<Token> next_token(Cursor& cursor, Direction dir);
    /// The token starting at or after `pos`, read forward.
    std::optional<Token> token_at(std::size_t pos);
    TokenRole role(const Token& tok) const;
    const Levels* levels(const Token& tok) const;

    /// Maximum number of tokens a single navigation may read; unlimited when
    /// unset.
    void set_token_fuse(std::optional<std::size_t> limit) noexcept { fuse_ = limit; }
    std::optional<std::size_t> token_fuse() const noexcept { return fuse_; }
    /// True once any navigation hit the fuse.
    bool fuse_tripped() const noexcept { return fuse_tripped_; }
    void note_fuse_tripped() noexcept { fuse_tripped_ = true; }

private:
    Buffer* buffer_;
    const LangDef* lang_;
    SyntaxScanner scanner_;
    std::optional<std::size_t> fuse_;
    bool fuse_tripped_ = false;
};

enum class NavMode { Sexp, HalfSexp };

enum class NavOutcome { SkippedAtom, BumpedSibling, BumpedParent, MatchedOpen, BufferEdge };

const char* to_string(NavOutcome outcome) noexcept;

struct NavResult {
    NavOutcome outcome = NavOutcome::BufferEdge;
    /// Cursor position after the call.  Backward bumps land on the bumped
    /// token's start, forward bumps on its end.
    std::size_t landing = 0;
    /// Set for BumpedSibling, BumpedParent and MatchedOpen.
    std::optional<Token> token;
    /// The safety fuse stopped the scan early.
    bool truncated = false;

    bool bumped() const noexcept { return token.has_value(); }
};

/// Jumps over the next sub-expression in `dir`.  With a `target` keyword,
/// skips everything that may stand on that keyword's far side.  Throws
/// std::invalid_argument when `target` is not a keyword or has no level on
/// the far side.  Never throws on malformed text.
NavResult next_sexp(Engine& engine, Cursor& cursor, Direction dir, NavMode mode = NavMode::Sexp,
                    const std::optional<std::string>& target = std::nullopt);

/// Backward navigation from the start of `keyword`.  With `outermost`, keeps
/// following sibling bumps and returns the first parent or matched opener;
/// otherwise returns the nearest bump.
NavResult backward_to_parent_or_sibling(Engine& engine, Cursor& cursor, const std::string& keyword,
                                        bool outermost = false);

} // namespace opindent
