#include "opindent/navigate.hpp"

#include <stdexcept>
#include <vector>

namespace opindent {

Engine::Engine(Buffer& buffer, const LangDef& lang)
    : buffer_(&buffer), lang_(&lang), scanner_(buffer, lang.syntax)
{
}

std::optional<Token> Engine::next_token(Cursor& cursor, Direction dir)
{
    return lang_->next_token(scanner_, cursor, dir);
}

std::optional<Token> Engine::token_at(std::size_t pos)
{
    Cursor c(*buffer_, pos);
    return next_token(c, Direction::Forward);
}

const Levels* Engine::levels(const Token& tok) const
{
    if (tok.string_literal)
        return nullptr;
    return lang_->grammar().find(tok.text);
}

TokenRole Engine::role(const Token& tok) const
{
    if (levels(tok))
        return TokenRole::Keyword;
    if (tok.string_literal || tok.synthetic || tok.end != tok.start + 1)
        return TokenRole::Atom;
    switch (lang_->syntax.kind(buffer_->at(tok.start))) {
    case CharKind::Open: return TokenRole::OpenParen;
    case CharKind::Close: return TokenRole::CloseParen;
    default: return TokenRole::Atom;
    }
}

const char* to_string(NavOutcome outcome) noexcept
{
    switch (outcome) {
    case NavOutcome::SkippedAtom: return "SkippedAtom";
    case NavOutcome::BumpedSibling: return "BumpedSibling";
    case NavOutcome::BumpedParent: return "BumpedParent";
    case NavOutcome::MatchedOpen: return "MatchedOpen";
    case NavOutcome::BufferEdge: return "BufferEdge";
    }
    return "?";
}

namespace {

// The level facing the cursor's starting point, and the one facing away.
std::optional<int> near_level(const Levels& lv, Direction dir)
{
    return dir == Direction::Backward ? lv.right : lv.left;
}

std::optional<int> far_level(const Levels& lv, Direction dir)
{
    return dir == Direction::Backward ? lv.left : lv.right;
}

NavResult edge(Cursor& cursor, Direction dir, bool truncated = false)
{
    if (!truncated)
        cursor.set(dir == Direction::Backward ? 0 : cursor.buffer().size());
    return {NavOutcome::BufferEdge, cursor.pos(), std::nullopt, truncated};
}

NavResult bump(NavOutcome outcome, Cursor& cursor, Token tok)
{
    return {outcome, cursor.pos(), std::move(tok), false};
}

} // namespace

NavResult next_sexp(Engine& engine, Cursor& cursor, Direction dir, NavMode mode,
                    const std::optional<std::string>& target)
{
    std::vector<int> stack;
    if (target) {
        const Levels* lv = engine.lang().grammar().find(*target);
        if (!lv)
            throw std::invalid_argument("navigation target " + quote_token(*target) + " is not a keyword");
        const auto far = far_level(*lv, dir);
        if (!far)
            throw std::invalid_argument("navigation target " + quote_token(*target) +
                                        " has nothing to skip in this direction");
        stack.push_back(*far);
    }

    const TokenRole entering = dir == Direction::Backward ? TokenRole::CloseParen : TokenRole::OpenParen;
    const TokenRole leaving = dir == Direction::Backward ? TokenRole::OpenParen : TokenRole::CloseParen;
    const auto fuse = engine.token_fuse();
    bool first = true;
    std::size_t count = 0;

    for (;; first = false) {
        if (fuse && ++count > *fuse) {
            engine.note_fuse_tripped();
            return edge(cursor, dir, true);
        }
        auto tok = engine.next_token(cursor, dir);
        if (!tok)
            return edge(cursor, dir);
        const TokenRole role = engine.role(*tok);

        if (role == leaving)
            return bump(NavOutcome::BumpedParent, cursor, std::move(*tok));
        if (role == entering) {
            cursor.set(dir == Direction::Backward ? tok->end : tok->start);
            try {
                engine.scanner().skip_balanced(cursor, dir);
            } catch (const UnbalancedError& e) {
                cursor.set(e.landing);
                return edge(cursor, dir);
            }
        }
        if (role != TokenRole::Keyword) {
            if (stack.empty())
                return {NavOutcome::SkippedAtom, cursor.pos(), std::nullopt, false};
            continue;
        }

        const Levels& lv = *engine.levels(*tok);
        const auto near = near_level(lv, dir);
        const auto far = far_level(lv, dir);
        if (!near) {
            if (far)
                stack.push_back(*far);
            continue;
        }
        while (!stack.empty() && *near < stack.back())
            stack.pop_back();
        if (stack.empty()) {
            if (mode == NavMode::HalfSexp && first && far) {
                stack.push_back(*far);
                continue;
            }
            const bool sibling = mode == NavMode::HalfSexp && far;
            return bump(sibling ? NavOutcome::BumpedSibling : NavOutcome::BumpedParent, cursor, std::move(*tok));
        }
        if (*near == stack.back()) {
            stack.pop_back();
            if (!stack.empty()) {
                if (far)
                    stack.push_back(*far);
                continue;
            }
            return bump(far ? NavOutcome::BumpedSibling : NavOutcome::MatchedOpen, cursor, std::move(*tok));
        }
        if (far)
            stack.push_back(*far);
    }
}

NavResult backward_to_parent_or_sibling(Engine& engine, Cursor& cursor, const std::string& keyword, bool outermost)
{
    std::string target = keyword;
    for (;;) {
        NavResult r = next_sexp(engine, cursor, Direction::Backward, NavMode::Sexp, target);
        if (!outermost || r.outcome != NavOutcome::BumpedSibling)
            return r;
        target = r.token->text;
    }
}

} // namespace opindent
