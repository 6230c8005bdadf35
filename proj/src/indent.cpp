#include "opindent/indent.hpp"

#include <functional>
#include <vector>

namespace opindent {

namespace {

struct SequenceWalk {
    /// Element starts, nearest first.
    std::vector<std::size_t> elements;
    /// The token that ended the walk; unset at the buffer start.
    std::optional<Token> bump;
};

std::size_t skip_forward(Engine& engine, std::size_t pos)
{
    Cursor c(engine.buffer(), pos);
    engine.scanner().skip_whitespace_and_comments(c, Direction::Forward);
    return c.pos();
}

SequenceWalk walk_sequence(Engine& engine, std::size_t pos)
{
    SequenceWalk walk;
    Cursor c(engine.buffer(), pos);
    std::size_t limit = pos;
    for (;;) {
        NavResult r = next_sexp(engine, c, Direction::Backward, NavMode::Sexp);
        if (r.outcome == NavOutcome::SkippedAtom || r.outcome == NavOutcome::MatchedOpen) {
            if (r.landing >= limit)
                break;
            walk.elements.push_back(r.landing);
            limit = r.landing;
            continue;
        }
        const std::size_t from = r.token ? r.token->end : r.landing;
        const std::size_t start = skip_forward(engine, from);
        if (start < limit)
            walk.elements.push_back(start);
        if (r.outcome != NavOutcome::BufferEdge)
            walk.bump = r.token;
        break;
    }
    return walk;
}

class DepthGuard {
public:
    DepthGuard(int& depth, std::set<std::size_t>& visiting, std::size_t pos)
        : depth_(depth), visiting_(visiting), pos_(pos)
    {
        ++depth_;
        visiting_.insert(pos_);
    }
    ~DepthGuard()
    {
        --depth_;
        visiting_.erase(pos_);
    }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;

private:
    int& depth_;
    std::set<std::size_t>& visiting_;
    std::size_t pos_;
};

} // namespace

class QueryContextImpl : public QueryContext {
public:

    QueryContextImpl(Indenter& ind, QueryKind kind, std::size_t pos, std::optional<Token> token)
        : ind_(ind), kind_(kind), pos_(pos), token_(std::move(token))
    {
    }

    bool is_hanging() override { return token_ && !token_->synthetic && ind_.is_hanging(token_->start); }

    std::optional<std::string> parent_token() override
    {
        resolve_parent();
        return parent_ ? std::optional<std::string>(parent_->text) : std::nullopt;
    }

    std::optional<std::size_t> parent_pos() override
    {
        resolve_parent();
        return parent_ ? std::optional<std::size_t>(parent_->start) : std::nullopt;
    }

    std::vector<std::string> previous_tokens(std::size_t n) override
    {
        std::vector<std::string> out;
        for (const auto& t : previous(n))
            out.push_back(t.text);
        return out;
    }

    std::size_t position() const override { return pos_; }

    std::size_t virtual_column(std::size_t pos) override { return ind_.virtual_indent(pos); }

    const std::vector<Token>& previous(std::size_t n)
    {
        const std::size_t from = token_ ? token_->start : pos_;
        if (prev_.size() < n && !prev_exhausted_) {
            Cursor c(ind_.engine().buffer(), prev_.empty() ? from : prev_.back().start);
            while (prev_.size() < n) {
                auto t = ind_.engine().next_token(c, Direction::Backward);
                if (!t) {
                    prev_exhausted_ = true;
                    break;
                }
                prev_.push_back(*t);
            }
        }
        return prev_;
    }

    /// Position a directive is relative to when the rule itself names none.
    std::optional<std::size_t> default_anchor()
    {
        switch (kind_) {
        case QueryKind::AfterToken: return token_ ? std::optional<std::size_t>(token_->start) : std::nullopt;
        case QueryKind::BeforeToken:
            if (keyword_query())
                return parent_pos();
            [[fallthrough]];
        default: {
            const SequenceWalk& w = walk();
            if (!w.elements.empty())
                return w.elements.back();
            return w.bump ? std::optional<std::size_t>(w.bump->start) : std::nullopt;
        }
        }
    }

private:
    bool keyword_query()
    {
        if (!token_)
            return false;
        const Levels* lv = ind_.engine().levels(*token_);
        return lv && lv->left;
    }

    const SequenceWalk& walk()
    {
        if (!walk_)
            walk_ = walk_sequence(ind_.engine(), kind_ == QueryKind::ListIntro ? pos_ : (token_ ? token_->start : pos_));
        return *walk_;
    }

    void resolve_parent()
    {
        if (parent_resolved_)
            return;
        parent_resolved_ = true;
        Engine& e = ind_.engine();
        if ((kind_ == QueryKind::BeforeToken || kind_ == QueryKind::AfterToken) && keyword_query()) {
            Cursor c(e.buffer(), token_->start);
            NavResult r = backward_to_parent_or_sibling(e, c, token_->text, true);
            parent_ = r.token;
        } else if (kind_ == QueryKind::AfterToken) {
            parent_ = token_;
        } else {
            parent_ = walk().bump;
        }
    }

    Indenter& ind_;
    QueryKind kind_;
    std::size_t pos_;
    std::optional<Token> token_;
    std::vector<Token> prev_;
    bool prev_exhausted_ = false;
    std::optional<Token> parent_;
    bool parent_resolved_ = false;
    std::optional<SequenceWalk> walk_;
};

int Indenter::basic_offset()
{
    const IndentRuleSet& rs = engine_->lang().rules;
    for (const auto& rule : rs.rules)
        if (rule.kind == QueryKind::ElemBasic && rule.directive.kind == DirectiveKind::Offset)
            return rule.directive.value;
    if (rs.hook) {
        const auto d = rs.hook(IndentQuery{QueryKind::ElemBasic, "", nullptr});
        if (d && d->kind == DirectiveKind::Offset)
            return d->value;
    }
    return rs.basic_offset;
}

bool Indenter::at_line_start(std::size_t pos)
{
    const auto& text = engine_->buffer().text();
    while (pos > 0 && is_blank(text[pos - 1]))
        --pos;
    return pos == 0 || text[pos - 1] == U'\n';
}

std::size_t Indenter::column(std::size_t pos)
{
    return engine_->buffer().line_and_column(pos).column;
}

std::size_t Indenter::first_token_after(std::size_t pos)
{
    return skip_forward(*engine_, pos);
}

bool Indenter::is_hanging(std::size_t pos)
{
    if (at_line_start(pos))
        return false;
    const auto tok = engine_->token_at(pos);
    if (!tok || tok->start != pos)
        return false;
    const auto& text = engine_->buffer().text();
    SyntaxScanner& sc = engine_->scanner();
    std::size_t p = tok->end;
    while (p < text.size()) {
        if (text[p] == U'\n')
            return true;
        if (is_blank(text[p])) {
            ++p;
            continue;
        }
        const auto style = sc.comment_opener_at(p);
        if (!style)
            return false;
        const std::size_t end = sc.comment_end(p, *style);
        for (std::size_t i = p; i < end; ++i)
            if (text[i] == U'\n')
                return true;
        p = end;
    }
    return true;
}

std::size_t Indenter::virtual_indent(std::size_t pos)
{
    if (at_line_start(pos))
        return column(pos);
    return calculate(pos);
}

std::size_t Indenter::calculate(std::size_t pos)
{
    if (depth_ >= kMaxDepth || visiting_.count(pos))
        return column(pos);
    DepthGuard guard(depth_, visiting_, pos);
    return dispatch(pos);
}

std::size_t Indenter::comment_column(std::size_t, const ScanState& st)
{
    return column(st.comment_start) + 1;
}

std::size_t Indenter::dispatch(std::size_t pos)
{
    Buffer& buf = engine_->buffer();
    SyntaxScanner& sc = engine_->scanner();
    const ScanState st = sc.scan_state(pos);
    if (st.in_string())
        return buf.line_indentation(buf.line_of(pos));
    if (st.in_comment())
        return comment_column(pos, st);

    const auto comment = sc.comment_opener_at(pos);
    if (comment && engine_->lang().syntax.comments()[*comment].closer == U"\n") {
        const std::size_t line = buf.line_of(pos);
        if (line > 1) {
            const std::size_t prev = buf.line_content_start(line - 1);
            if (sc.comment_opener_at(prev) == comment)
                return column(prev);
        }
    }
    const bool phantom = pos >= buf.size() || buf.at(pos) == U'\n' || comment.has_value();

    Cursor back(buf, pos);
    const auto prev = engine_->next_token(back, Direction::Backward);
    if (!prev)
        return 0;

    if (!phantom) {
        const auto tok = engine_->token_at(pos);
        if (tok) {
            if (auto r = apply_rules(QueryKind::BeforeToken, tok->text, pos, tok))
                return *r;
            const TokenRole role = engine_->role(*tok);
            if (role == TokenRole::Keyword && engine_->levels(*tok)->left)
                return keyword_case(*tok);
            if (role == TokenRole::CloseParen)
                return matching_open(*tok);
        }
    }

    const TokenRole prev_role = engine_->role(*prev);
    if ((prev_role == TokenRole::Keyword && engine_->levels(*prev)->right) || prev_role == TokenRole::OpenParen) {
        if (auto r = apply_rules(QueryKind::AfterToken, prev->text, pos, prev))
            return *r;
        return after_keyword(*prev, pos);
    }
    return sequence_case(pos);
}

std::optional<std::size_t> Indenter::apply_rules(QueryKind kind, const std::string& token, std::size_t pos,
                                                 const std::optional<Token>& query_token)
{
    const IndentRuleSet& rs = engine_->lang().rules;
    if (rs.rules.empty() && !rs.hook)
        return std::nullopt;
    QueryContextImpl ctx(*this, kind, pos, query_token);

    const auto resolve = [&](const IndentDirective& d,
                             std::optional<std::size_t> anchor) -> std::optional<std::size_t> {
        switch (d.kind) {
        case DirectiveKind::Default: return std::nullopt;
        case DirectiveKind::Column: return clamp(d.value);
        case DirectiveKind::ParentColumn: return anchor ? column(*anchor) : 0;
        case DirectiveKind::Offset:
        case DirectiveKind::ParentVirtual:
            return clamp((anchor ? static_cast<long>(virtual_indent(*anchor)) : 0L) + d.value);
        }
        return std::nullopt;
    };

    for (const auto& rule : rs.rules) {
        if (rule.kind != kind || rule.token != token)
            continue;
        const RuleGuards& g = rule.guards;
        if (g.hanging && ctx.is_hanging() != *g.hanging)
            continue;
        std::optional<std::size_t> anchor;
        if (!g.prev_tokens.empty()) {
            const auto& prev = ctx.previous(g.prev_tokens.size());
            if (prev.size() < g.prev_tokens.size())
                continue;
            bool ok = true;
            for (std::size_t i = 0; i < g.prev_tokens.size() && ok; ++i)
                ok = g.prev_tokens[i].matches(prev[i].text);
            if (!ok)
                continue;
            const Token& last = prev[g.prev_tokens.size() - 1];
            if (!last.synthetic)
                anchor = last.start;
        }
        if (g.parent_is && ctx.parent_token() != *g.parent_is)
            continue;
        if (rule.directive.kind == DirectiveKind::Default)
            return std::nullopt;
        if (!anchor)
            anchor = ctx.default_anchor();
        return resolve(rule.directive, anchor);
    }
    if (rs.hook) {
        if (auto d = rs.hook(IndentQuery{kind, token, &ctx}))
            return resolve(*d, ctx.default_anchor());
    }
    return std::nullopt;
}

std::size_t Indenter::keyword_case(const Token& tok)
{
    Cursor c(engine_->buffer(), tok.start);
    std::string target = tok.text;
    for (;;) {
        const NavResult r = next_sexp(*engine_, c, Direction::Backward, NavMode::Sexp, target);
        switch (r.outcome) {
        case NavOutcome::BumpedSibling:
            if (!r.token->synthetic && at_line_start(r.token->start))
                return column(r.token->start);
            target = r.token->text;
            continue;
        case NavOutcome::MatchedOpen: return virtual_indent(r.token->start);
        case NavOutcome::BumpedParent: return after_parent(*r.token, tok.start);
        case NavOutcome::SkippedAtom:
        case NavOutcome::BufferEdge: break;
        }
        const std::size_t first = first_token_after(0);
        return first < tok.start ? virtual_indent(first) : 0;
    }
}

std::size_t Indenter::after_parent(const Token& parent, std::size_t pos)
{
    const Levels* lv = engine_->levels(parent);
    const std::size_t elem = first_token_after(parent.end);
    if (parent.synthetic || engine_->lang().is_associative(parent.text)) {
        if (elem < pos)
            return virtual_indent(elem);
        return after_keyword(parent, pos);
    }
    const bool opener = !lv || !lv->left;
    if (opener && !is_hanging(parent.start) && elem < pos)
        return column(elem);
    return virtual_indent(parent.start) + basic_offset();
}

std::size_t Indenter::after_keyword(const Token& k, std::size_t pos)
{
    Buffer& buf = engine_->buffer();
    const Levels* lv = engine_->levels(k);
    if (!lv || !lv->left) {
        const std::size_t elem = first_token_after(k.end);
        if (elem <= pos && buf.line_of(elem) == buf.line_of(k.start))
            return column(elem);
        return virtual_indent(k.start) + basic_offset();
    }
    if (engine_->lang().is_associative(k.text)) {
        Cursor c(buf, k.start);
        std::size_t limit = k.start;
        std::optional<std::size_t> earliest;
        for (;;) {
            const NavResult r = next_sexp(*engine_, c, Direction::Backward, NavMode::Sexp, k.text);
            const std::size_t from = r.token ? r.token->end : r.landing;
            const std::size_t elem = first_token_after(from);
            if (elem < limit) {
                if (at_line_start(elem))
                    return column(elem);
                earliest = elem;
            }
            if (r.outcome != NavOutcome::BumpedSibling)
                break;
            limit = r.token->start;
        }
        if (!k.synthetic)
            return virtual_indent(k.start);
        return earliest ? virtual_indent(*earliest) : 0;
    }
    if (engine_->lang().is_construct_keyword(k.text))
        return virtual_indent(k.start) + basic_offset();
    return virtual_indent(k.start);
}

std::size_t Indenter::matching_open(const Token& close)
{
    Cursor c(engine_->buffer(), close.end);
    try {
        engine_->scanner().skip_balanced(c, Direction::Backward);
    } catch (const UnbalancedError&) {
        return 0;
    }
    return virtual_indent(c.pos());
}

std::size_t Indenter::sequence_case(std::size_t pos)
{
    const SequenceWalk walk = walk_sequence(*engine_, pos);
    if (walk.bump) {
        if (auto r = apply_rules(QueryKind::ListIntro, walk.bump->text, pos, walk.bump))
            return *r;
    }
    const auto& el = walk.elements;
    if (el.empty())
        return walk.bump ? after_keyword(*walk.bump, pos) : 0;
    if (el.size() == 1)
        return virtual_indent(el[0]) + basic_offset();
    for (std::size_t i = 0; i + 1 < el.size(); ++i)
        if (at_line_start(el[i]))
            return column(el[i]);
    return column(el[el.size() - 2]);
}

LineIndent Indenter::indent_line(std::size_t line)
{
    Buffer& buf = engine_->buffer();
    const std::size_t start = buf.line_start(line);
    const std::size_t content = buf.line_content_start(line);
    LineIndent result;
    result.old_column = content - start;
    if (start > 0 && engine_->scanner().scan_state(start).in_string()) {
        result.new_column = result.old_column;
        return result;
    }
    result.new_column = calculate(content);
    if (result.changed())
        buf.replace(start, content, std::u32string(result.new_column, U' '));
    return result;
}

std::size_t Indenter::indent_region(std::size_t first, std::size_t last)
{
    Buffer& buf = engine_->buffer();
    if (first == 0 || first > last)
        return 0;
    last = std::min(last, buf.line_count());
    std::size_t changed = 0;
    for (std::size_t line = first; line <= last; ++line) {
        if (buf.line_is_blank(line))
            continue;
        if (indent_line(line).changed())
            ++changed;
    }
    return changed;
}

} // namespace opindent
