#include "opindent/lexer.hpp"

#include <algorithm>
#include <cstdio>

namespace opindent {

namespace {

bool is_wordish(CharKind k)
{
    return k == CharKind::Word || k == CharKind::Symbol;
}

bool is_punct(CharKind k)
{
    return k == CharKind::Punctuation || k == CharKind::Escape;
}

std::string class_members(const SyntaxTable& table, CharKind want)
{
    std::string out;
    for (char32_t ch = 0; ch < 0x80; ++ch) {
        const CharKind k = table.kind(ch);
        const bool hit = want == CharKind::Punctuation ? is_punct(k) : k == want;
        if (!hit)
            continue;
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\x%02X", static_cast<unsigned>(ch));
        out += buf;
    }
    return out;
}

std::regex compile(const std::string& source, const SyntaxTable& table, const char* what)
{
    try {
        return std::regex(expand_syntax_classes(source, table), std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw LexerError(std::string("invalid ") + what + " pattern \"" + source + "\": " + e.what());
    }
}

std::optional<std::regex> compile_optional(const std::string& source, const SyntaxTable& table, const char* what,
                                           const char* prefix = "", const char* suffix = "")
{
    if (source.empty())
        return std::nullopt;
    return compile(prefix + std::string("(?:") + source + ")" + suffix, table, what);
}

// Text from the start of the line before `pos`'s line up to `pos`.
std::string context_before(const Buffer& buf, std::size_t pos)
{
    std::size_t line = buf.line_of(pos);
    if (line > 1)
        --line;
    return buf.slice_utf8(buf.line_start(line), pos);
}

// Text from `pos` to the end of its line.
std::string context_after(const Buffer& buf, std::size_t pos)
{
    return buf.slice_utf8(pos, buf.line_end(buf.line_of(pos)));
}

bool matches_suffix(const std::optional<std::regex>& re, const std::string& subject)
{
    return !re || std::regex_search(subject, *re);
}

bool matches_prefix(const std::optional<std::regex>& re, const std::string& subject)
{
    return !re || std::regex_search(subject, *re, std::regex_constants::match_continuous);
}

} // namespace

std::string expand_syntax_classes(std::string_view pattern, const SyntaxTable& table)
{
    std::string out;
    bool in_brackets = false;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const char c = pattern[i];
        if (c == '\\' && i + 1 < pattern.size()) {
            if (pattern[i + 1] == 's' && i + 2 < pattern.size()) {
                std::optional<CharKind> kind;
                switch (pattern[i + 2]) {
                case 'w': kind = CharKind::Word; break;
                case '_': kind = CharKind::Symbol; break;
                case '.': kind = CharKind::Punctuation; break;
                case '-': kind = CharKind::Whitespace; break;
                default: break;
                }
                if (kind) {
                    const std::string members = class_members(table, *kind);
                    out += in_brackets ? members : "[" + members + "]";
                    i += 2;
                    continue;
                }
            }
            out += c;
            out += pattern[++i];
            continue;
        }
        if (c == '[' && !in_brackets)
            in_brackets = true;
        else if (c == ']' && in_brackets)
            in_brackets = false;
        out += c;
    }
    return out;
}

std::optional<Token> default_next_token(SyntaxScanner& scanner, Cursor& cursor, Direction dir)
{
    const Buffer& buf = scanner.buffer();
    const auto& text = buf.text();
    const SyntaxTable& table = scanner.table();
    scanner.skip_whitespace_and_comments(cursor, dir);
    std::size_t pos = cursor.pos();

    Token tok;
    if (dir == Direction::Forward) {
        if (pos >= text.size())
            return std::nullopt;
        const CharKind k = table.kind(text[pos]);
        std::size_t end = pos + 1;
        if (k == CharKind::StringDelim) {
            end = scanner.string_end(pos);
            tok.string_literal = true;
        } else if (is_wordish(k)) {
            while (end < text.size() && is_wordish(table.kind(text[end])))
                ++end;
        } else if (is_punct(k)) {
            while (end < text.size() && is_punct(table.kind(text[end])) && !scanner.comment_opener_at(end))
                ++end;
        }
        tok.start = pos;
        tok.end = end;
    } else {
        if (pos == 0)
            return std::nullopt;
        const char32_t ch = text[pos - 1];
        const CharKind k = table.kind(ch);
        std::size_t start = pos - 1;
        if (k == CharKind::StringDelim) {
            const ScanState st = scanner.scan_state(pos - 1);
            if (st.in_string() && *st.string_delim == ch) {
                start = st.string_start;
                tok.string_literal = true;
            }
        } else if (is_wordish(k)) {
            while (start > 0 && is_wordish(table.kind(text[start - 1])))
                --start;
        } else if (is_punct(k)) {
            while (start > 0 && is_punct(table.kind(text[start - 1])))
                --start;
        }
        tok.start = start;
        tok.end = pos;
    }
    tok.text = buf.slice_utf8(tok.start, tok.end);
    cursor.set(dir == Direction::Forward ? tok.end : tok.start);
    return tok;
}

CompiledLexer::CompiledLexer(LexerSpec spec, const SyntaxTable& table) : spec_(std::move(spec))
{
    for (const auto& sep : spec_.separators) {
        if (sep.token.empty())
            throw LexerError("virtual separator needs a token");
        separators_.push_back({sep.token, compile_optional(sep.before, table, "separator 'before'", "", "$"),
                               compile_optional(sep.gap, table, "separator 'gap'"),
                               compile_optional(sep.after, table, "separator 'after'")});
    }
    for (const auto& r : spec_.retag) {
        if (r.token.empty() || r.key.empty())
            throw LexerError("retag rule needs both a token and a key");
        retag_.push_back({r.token, compile_optional(r.before, table, "retag 'before'", "", "$"),
                          compile_optional(r.after, table, "retag 'after'"), r.key});
    }
    for (const auto& m : spec_.multi_char_punct)
        multi_.push_back(utf8_decode(m));
    std::sort(multi_.begin(), multi_.end(),
              [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
}

std::optional<Token> CompiledLexer::separator_for_gap(const Buffer& buf, std::size_t gap_start,
                                                      std::size_t gap_end) const
{
    if (separators_.empty() || gap_start >= gap_end)
        return std::nullopt;
    const std::string before = context_before(buf, gap_start);
    const std::string gap = buf.slice_utf8(gap_start, gap_end);
    const std::string after = context_after(buf, gap_end);
    for (const auto& sep : separators_) {
        if (matches_suffix(sep.before, before) && (!sep.gap || std::regex_search(gap, *sep.gap)) &&
            matches_prefix(sep.after, after))
            return Token{sep.token, gap_start, gap_start, true, false};
    }
    return std::nullopt;
}

void CompiledLexer::split_punctuation(Token& tok, Cursor& cursor, Direction dir, const Buffer& buf) const
{
    if (tok.string_literal || (multi_.empty() && spec_.split_punct.empty()))
        return;
    const std::u32string_view run = buf.slice(tok.start, tok.end);
    if (run.size() < 2)
        return;
    const auto is_split = [&](char32_t ch) { return spec_.split_punct.find(ch) != std::u32string::npos; };
    const auto multi_at = [&](std::size_t i) -> std::size_t {
        for (const auto& m : multi_)
            if (run.substr(i, m.size()) == m)
                return m.size();
        return 0;
    };
    // Greedy left-to-right segmentation; both directions take a piece of it.
    std::vector<std::size_t> cuts{0};
    for (std::size_t i = 0; i < run.size();) {
        std::size_t len = multi_at(i);
        if (len == 0) {
            len = 1;
            if (!is_split(run[i]))
                while (i + len < run.size() && !is_split(run[i + len]) && multi_at(i + len) == 0)
                    ++len;
        }
        i += len;
        cuts.push_back(i);
    }
    if (dir == Direction::Forward) {
        tok.end = tok.start + cuts[1];
        cursor.set(tok.end);
    } else {
        tok.start += cuts[cuts.size() - 2];
        cursor.set(tok.start);
    }
    tok.text = buf.slice_utf8(tok.start, tok.end);
}

void CompiledLexer::apply_retag(Token& tok, const Buffer& buf) const
{
    for (const auto& r : retag_) {
        if (tok.text != r.token)
            continue;
        if (matches_suffix(r.before, context_before(buf, tok.start)) &&
            matches_prefix(r.after, context_after(buf, tok.end))) {
            tok.text = r.key;
            return;
        }
    }
}

std::optional<Token> CompiledLexer::next(SyntaxScanner& scanner, Cursor& cursor, Direction dir) const
{
    const Buffer& buf = scanner.buffer();
    if (!separators_.empty()) {
        const std::size_t origin = cursor.pos();
        Cursor probe(buf, origin);
        scanner.skip_whitespace_and_comments(probe, dir);
        const std::size_t lo = std::min(origin, probe.pos());
        const std::size_t hi = std::max(origin, probe.pos());
        // A gap that reaches the buffer edge separates nothing.
        if (lo > 0 && hi < buf.size()) {
            if (auto sep = separator_for_gap(buf, lo, hi)) {
                cursor.set(probe.pos());
                return sep;
            }
        }
    }
    auto tok = default_next_token(scanner, cursor, dir);
    if (!tok)
        return tok;
    if (!tok->string_literal && is_punct(scanner.table().kind(buf.text()[tok->start])))
        split_punctuation(*tok, cursor, dir, buf);
    if (!tok->string_literal)
        apply_retag(*tok, buf);
    return tok;
}

} // namespace opindent
