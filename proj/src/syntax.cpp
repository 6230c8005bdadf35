#include "opindent/syntax.hpp"

#include <algorithm>

namespace opindent {

namespace {

bool matches_at(const std::u32string& text, std::size_t pos, const std::u32string& needle)
{
    return !needle.empty() && pos + needle.size() <= text.size() &&
           text.compare(pos, needle.size(), needle) == 0;
}

bool ascii_alnum(char32_t ch)
{
    return (ch >= U'a' && ch <= U'z') || (ch >= U'A' && ch <= U'Z') || (ch >= U'0' && ch <= U'9');
}

} // namespace

const char* to_string(CharKind kind) noexcept
{
    switch (kind) {
    case CharKind::Whitespace: return "whitespace";
    case CharKind::Word: return "word";
    case CharKind::Symbol: return "symbol";
    case CharKind::Punctuation: return "punctuation";
    case CharKind::Open: return "open";
    case CharKind::Close: return "close";
    case CharKind::StringDelim: return "string";
    case CharKind::Escape: return "escape";
    }
    return "?";
}

SyntaxTable::SyntaxTable()
{
    for (char32_t ch : {U' ', U'\t', U'\n', U'\r', U'\f', U'\v'})
        classes_[ch] = {CharKind::Whitespace, std::nullopt};
}

SyntaxTable SyntaxTable::standard()
{
    SyntaxTable st;
    st.add_pair(U'(', U')');
    st.add_pair(U'[', U']');
    st.add_pair(U'{', U'}');
    st.set(U'"', CharKind::StringDelim);
    st.set(U'\\', CharKind::Escape);
    st.set(U'_', CharKind::Symbol);
    return st;
}

void SyntaxTable::set(char32_t ch, CharKind kind)
{
    if (kind == CharKind::Open || kind == CharKind::Close)
        throw SyntaxError("open/close classes need a partner; use add_pair");
    auto it = classes_.find(ch);
    if (it != classes_.end() && it->second.partner) {
        // Re-classifying one half of a pair drops the pair entirely.
        classes_.erase(*it->second.partner);
    }
    classes_[ch] = {kind, std::nullopt};
}

void SyntaxTable::add_pair(char32_t open, char32_t close)
{
    if (open == close)
        throw SyntaxError("a paired character cannot be its own partner");
    classes_[open] = {CharKind::Open, close};
    classes_[close] = {CharKind::Close, open};
}

void SyntaxTable::add_comment(std::u32string opener, std::u32string closer)
{
    if (opener.empty())
        throw SyntaxError("comment opener must not be empty");
    if (closer.empty())
        throw SyntaxError("comment closer must not be empty");
    for (const auto& c : comments_) {
        const auto& a = c.opener;
        const auto& b = opener;
        if (a.compare(0, b.size(), b) == 0 || b.compare(0, a.size(), a) == 0)
            throw SyntaxError("comment openers \"" + utf8_encode(a) + "\" and \"" + utf8_encode(b) +
                              "\" overlap");
    }
    comments_.push_back({std::move(opener), std::move(closer)});
}

CharClass SyntaxTable::classify(char32_t ch) const
{
    if (auto it = classes_.find(ch); it != classes_.end())
        return it->second;
    if (ascii_alnum(ch) || ch >= 0x80)
        return {CharKind::Word, std::nullopt};
    return {CharKind::Punctuation, std::nullopt};
}

bool SyntaxTable::ends_comment(char32_t ch) const noexcept
{
    return std::any_of(comments_.begin(), comments_.end(),
                       [ch](const CommentStyle& c) { return c.closer.back() == ch; });
}

void SyntaxTable::validate() const
{
    for (const auto& [ch, cls] : classes_) {
        if (cls.kind != CharKind::Open && cls.kind != CharKind::Close)
            continue;
        if (!cls.partner)
            throw SyntaxError("paired character '" + utf8_encode(ch) + "' has no partner");
        auto other = classes_.find(*cls.partner);
        const CharKind want = cls.kind == CharKind::Open ? CharKind::Close : CharKind::Open;
        if (other == classes_.end() || other->second.kind != want || other->second.partner != ch)
            throw SyntaxError("partner of '" + utf8_encode(ch) + "' is not declared as its inverse");
    }
    for (std::size_t i = 0; i < comments_.size(); ++i) {
        if (comments_[i].opener.empty() || comments_[i].closer.empty())
            throw SyntaxError("empty comment delimiter");
        for (std::size_t j = i + 1; j < comments_.size(); ++j) {
            const auto& a = comments_[i].opener;
            const auto& b = comments_[j].opener;
            if (a.compare(0, b.size(), b) == 0 || b.compare(0, a.size(), a) == 0)
                throw SyntaxError("comment openers overlap");
        }
    }
}

SyntaxScanner::SyntaxScanner(const Buffer& buffer, const SyntaxTable& table)
    : buffer_(&buffer), table_(&table), revision_(buffer.revision())
{
}

std::optional<std::size_t> SyntaxScanner::comment_opener_at(std::size_t pos) const
{
    const auto& comments = table_->comments();
    for (std::size_t i = 0; i < comments.size(); ++i)
        if (matches_at(buffer_->text(), pos, comments[i].opener))
            return i;
    return std::nullopt;
}

std::size_t SyntaxScanner::step_length(const Progress& p) const
{
    const auto& text = buffer_->text();
    const std::size_t r = p.resume;
    if (p.state.in_comment()) {
        const auto& closer = table_->comments()[*p.state.comment_style].closer;
        return matches_at(text, r, closer) ? closer.size() : 1;
    }
    if (p.state.in_string()) {
        if (table_->kind(text[r]) == CharKind::Escape)
            return std::min<std::size_t>(2, text.size() - r);
        return 1;
    }
    if (auto style = comment_opener_at(r))
        return table_->comments()[*style].opener.size();
    return 1;
}

void SyntaxScanner::apply_step(Progress& p) const
{
    const auto& text = buffer_->text();
    const std::size_t r = p.resume;
    const std::size_t len = step_length(p);
    ScanState& st = p.state;
    if (st.in_comment()) {
        if (matches_at(text, r, table_->comments()[*st.comment_style].closer))
            st.comment_style.reset();
    } else if (st.in_string()) {
        if (len == 1 && text[r] == *st.string_delim)
            st.string_delim.reset();
    } else if (auto style = comment_opener_at(r)) {
        st.comment_style = style;
        st.comment_start = r;
    } else {
        switch (table_->kind(text[r])) {
        case CharKind::StringDelim:
            st.string_delim = text[r];
            st.string_start = r;
            break;
        case CharKind::Open: ++st.depth; break;
        case CharKind::Close: --st.depth; break;
        default: break;
        }
    }
    p.resume = r + len;
}

ScanState SyntaxScanner::run(Progress p, std::size_t pos, bool record)
{
    while (p.resume < pos) {
        const std::size_t len = step_length(p);
        if (p.resume + len > pos)
            break;
        apply_step(p);
        if (record) {
            const std::size_t boundary = (checkpoints_.size() + 1) * kCheckpointInterval;
            if (p.resume >= boundary)
                checkpoints_.push_back(p);
        }
    }
    if (record)
        memo_ = p;
    ScanState out = p.state;
    out.pos = pos;
    return out;
}

void SyntaxScanner::sync_revision()
{
    if (buffer_->revision() == revision_)
        return;
    const std::size_t low = buffer_->lowest_edit_since(revision_);
    auto keep_end = std::find_if(checkpoints_.begin(), checkpoints_.end(),
                                 [low](const Progress& p) { return p.resume >= low; });
    checkpoints_.erase(keep_end, checkpoints_.end());
    if (memo_ && memo_->resume >= low)
        memo_.reset();
    revision_ = buffer_->revision();
}

ScanState SyntaxScanner::scan_state(std::size_t pos)
{
    if (pos > buffer_->size())
        throw RangeError("scan position " + std::to_string(pos) + " outside buffer");
    sync_revision();
    Progress start;
    auto it = std::upper_bound(checkpoints_.begin(), checkpoints_.end(), pos,
                               [](std::size_t value, const Progress& p) { return value < p.resume; });
    if (it != checkpoints_.begin())
        start = *std::prev(it);
    if (memo_ && memo_->resume <= pos && memo_->resume > start.resume)
        start = *memo_;
    return run(start, pos, true);
}

ScanState SyntaxScanner::scan_state_uncached(std::size_t pos) const
{
    if (pos > buffer_->size())
        throw RangeError("scan position " + std::to_string(pos) + " outside buffer");
    Progress p;
    while (p.resume < pos) {
        if (p.resume + step_length(p) > pos)
            break;
        apply_step(p);
    }
    ScanState out = p.state;
    out.pos = pos;
    return out;
}

std::size_t SyntaxScanner::string_end(std::size_t start) const
{
    const auto& text = buffer_->text();
    const char32_t delim = text[start];
    std::size_t i = start + 1;
    while (i < text.size()) {
        if (table_->kind(text[i]) == CharKind::Escape) {
            i += 2;
            continue;
        }
        if (text[i] == delim)
            return i + 1;
        ++i;
    }
    return text.size();
}

std::size_t SyntaxScanner::comment_end(std::size_t start, std::size_t style) const
{
    const auto& text = buffer_->text();
    const auto& c = table_->comments()[style];
    const auto found = text.find(c.closer, start + c.opener.size());
    return found == std::u32string::npos ? text.size() : found + c.closer.size();
}

void SyntaxScanner::skip_whitespace_and_comments(Cursor& cursor, Direction dir)
{
    const auto& text = buffer_->text();
    std::size_t pos = cursor.pos();
    if (dir == Direction::Forward) {
        while (pos < text.size()) {
            if (auto style = comment_opener_at(pos)) {
                pos = comment_end(pos, *style);
                continue;
            }
            if (table_->kind(text[pos]) != CharKind::Whitespace)
                break;
            ++pos;
        }
    } else {
        // A comment left open at the end of the buffer has no closer to find.
        if (pos == text.size() && pos > 0) {
            const ScanState at_end = scan_state(pos);
            if (at_end.in_comment())
                pos = at_end.comment_start;
        }
        while (pos > 0) {
            const char32_t ch = text[pos - 1];
            if (table_->ends_comment(ch)) {
                const ScanState before = scan_state(pos - 1);
                if (before.in_comment() && !scan_state(pos).in_comment()) {
                    pos = before.comment_start;
                    continue;
                }
            }
            if (table_->kind(ch) != CharKind::Whitespace)
                break;
            --pos;
        }
    }
    cursor.set(pos);
}

std::size_t SyntaxScanner::skip_balanced(Cursor& cursor, Direction dir)
{
    const auto& text = buffer_->text();
    skip_whitespace_and_comments(cursor, dir);
    std::size_t pos = cursor.pos();
    long depth = 0;
    if (dir == Direction::Forward) {
        if (pos >= text.size() || table_->kind(text[pos]) != CharKind::Open)
            throw UnbalancedError("no opening delimiter to skip", pos);
        while (true) {
            Cursor c(*buffer_, pos);
            skip_whitespace_and_comments(c, dir);
            pos = c.pos();
            if (pos >= text.size())
                throw UnbalancedError("unbalanced opening delimiter", pos);
            switch (table_->kind(text[pos])) {
            case CharKind::StringDelim: pos = string_end(pos); break;
            case CharKind::Open:
                ++depth;
                ++pos;
                break;
            case CharKind::Close:
                --depth;
                ++pos;
                if (depth == 0) {
                    cursor.set(pos);
                    return pos;
                }
                break;
            default: ++pos; break;
            }
        }
    }
    if (pos == 0 || table_->kind(text[pos - 1]) != CharKind::Close)
        throw UnbalancedError("no closing delimiter to skip", pos);
    while (true) {
        Cursor c(*buffer_, pos);
        skip_whitespace_and_comments(c, dir);
        pos = c.pos();
        if (pos == 0)
            throw UnbalancedError("unbalanced closing delimiter", pos);
        const char32_t ch = text[pos - 1];
        switch (table_->kind(ch)) {
        case CharKind::StringDelim: {
            const ScanState st = scan_state(pos - 1);
            pos = st.in_string() && *st.string_delim == ch ? st.string_start : pos - 1;
            break;
        }
        case CharKind::Close:
            ++depth;
            --pos;
            break;
        case CharKind::Open:
            --depth;
            --pos;
            if (depth == 0) {
                cursor.set(pos);
                return pos;
            }
            break;
        default: --pos; break;
        }
    }
}

} // namespace opindent
