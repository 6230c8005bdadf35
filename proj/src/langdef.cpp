#include "opindent/langdef.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace opindent {

namespace {

using Json = nlohmann::ordered_json;

#include "bundled_langs.inc"

class Reader {
public:
    explicit Reader(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const
    {
        throw LangDefError(origin_ + ":" + (pointer.empty() ? "/" : pointer), message);
    }

    const Json& expect(const Json& j, Json::value_t type, const std::string& pointer, const char* what) const
    {
        const bool ok = type == Json::value_t::number_integer
                            ? j.is_number_integer()
                            : (type == Json::value_t::string ? j.is_string() : j.type() == type);
        if (!ok)
            fail(pointer, std::string("expected ") + what);
        return j;
    }

    std::string str(const Json& j, const std::string& pointer) const
    {
        return expect(j, Json::value_t::string, pointer, "a string").get<std::string>();
    }

    std::u32string chars(const Json& j, const std::string& pointer) const
    {
        return utf8_decode(str(j, pointer));
    }

    const Json& array(const Json& j, const std::string& pointer) const
    {
        return expect(j, Json::value_t::array, pointer, "an array");
    }

    const Json& object(const Json& j, const std::string& pointer) const
    {
        return expect(j, Json::value_t::object, pointer, "an object");
    }

    int integer(const Json& j, const std::string& pointer) const
    {
        return expect(j, Json::value_t::number_integer, pointer, "an integer").get<int>();
    }

    const std::string& origin() const { return origin_; }

private:
    std::string origin_;
};

std::string at(const std::string& base, const std::string& key)
{
    std::string escaped;
    for (char c : key) {
        if (c == '~')
            escaped += "~0";
        else if (c == '/')
            escaped += "~1";
        else
            escaped += c;
    }
    return base + "/" + escaped;
}

std::string at(const std::string& base, std::size_t index)
{
    return base + "/" + std::to_string(index);
}

void check_keys(const Reader& r, const Json& obj, const std::string& pointer, std::initializer_list<const char*> allowed)
{
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            known = known || key == a;
        if (!known)
            r.fail(at(pointer, key), "unknown key \"" + key + "\"");
    }
}

SyntaxTable read_syntax(const Reader& r, const Json& j, const std::string& p, std::string& base_name)
{
    r.object(j, p);
    check_keys(r, j, p, {"base", "pairs", "strings", "escape", "word", "symbol", "punctuation", "whitespace", "comments"});
    base_name = j.contains("base") ? r.str(j["base"], at(p, "base")) : "standard";
    SyntaxTable table;
    if (base_name == "standard")
        table = SyntaxTable::standard();
    else if (base_name != "empty")
        r.fail(at(p, "base"), "base must be \"standard\" or \"empty\"");

    const std::pair<const char*, CharKind> simple[] = {
        {"whitespace", CharKind::Whitespace}, {"word", CharKind::Word},          {"symbol", CharKind::Symbol},
        {"punctuation", CharKind::Punctuation}, {"strings", CharKind::StringDelim}, {"escape", CharKind::Escape},
    };
    for (const auto& [key, kind] : simple)
        if (j.contains(key))
            for (char32_t ch : r.chars(j[key], at(p, key)))
                table.set(ch, kind);
    if (j.contains("pairs")) {
        const auto& pairs = r.array(j["pairs"], at(p, "pairs"));
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const std::u32string pair = r.chars(pairs[i], at(at(p, "pairs"), i));
            if (pair.size() != 2)
                r.fail(at(at(p, "pairs"), i), "a pair is exactly two characters");
            table.add_pair(pair[0], pair[1]);
        }
    }
    if (j.contains("comments")) {
        const std::string cp = at(p, "comments");
        const auto& comments = r.array(j["comments"], cp);
        for (std::size_t i = 0; i < comments.size(); ++i) {
            const auto& c = r.array(comments[i], at(cp, i));
            if (c.size() != 2)
                r.fail(at(cp, i), "a comment style is [opener, closer]");
            try {
                table.add_comment(r.chars(c[0], at(at(cp, i), 0)), r.chars(c[1], at(at(cp, i), 1)));
            } catch (const SyntaxError& e) {
                r.fail(at(cp, i), e.what());
            }
        }
    }
    try {
        table.validate();
    } catch (const SyntaxError& e) {
        r.fail(p, e.what());
    }
    return table;
}

BnfSpec read_bnf(const Reader& r, const Json& j, const std::string& p)
{
    r.object(j, p);
    BnfSpec bnf;
    const auto is_nonterminal = [](const std::string& s) { return !s.empty() && s[0] >= 'A' && s[0] <= 'Z'; };
    for (const auto& [name, alts] : j.items()) {
        const std::string np = at(p, name);
        if (!is_nonterminal(name))
            r.fail(np, "non-terminal names start with an uppercase letter");
        r.array(alts, np);
        std::vector<Rhs> rhss;
        for (std::size_t i = 0; i < alts.size(); ++i) {
            const auto& rhs = r.array(alts[i], at(np, i));
            Rhs out;
            for (std::size_t k = 0; k < rhs.size(); ++k) {
                const std::string sym = r.str(rhs[k], at(at(np, i), k));
                out.push_back(is_nonterminal(sym) ? Symbol::nonterm(sym) : Symbol::term(sym));
            }
            rhss.push_back(std::move(out));
        }
        bnf.add(name, std::move(rhss));
    }
    return bnf;
}

PrecLevelList read_levels(const Reader& r, const Json& j, const std::string& p)
{
    PrecLevelList list;
    r.array(j, p);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string lp = at(p, i);
        const auto& level = r.array(j[i], lp);
        if (level.empty())
            r.fail(lp, "a level is [assoc, token...]");
        PrecLevel out;
        const auto assoc = parse_assoc(r.str(level[0], at(lp, 0)));
        if (!assoc)
            r.fail(at(lp, 0), "associativity must be assoc, left, right or nonassoc");
        out.assoc = *assoc;
        for (std::size_t k = 1; k < level.size(); ++k)
            out.tokens.push_back(r.str(level[k], at(lp, k)));
        list.push_back(std::move(out));
    }
    return list;
}

std::optional<Rel> parse_rel(const std::string& s)
{
    if (s == "<")
        return Rel::LT;
    if (s == "=")
        return Rel::EQ;
    if (s == ">")
        return Rel::GT;
    return std::nullopt;
}

LexerSpec read_lexer(const Reader& r, const Json& j, const std::string& p)
{
    r.object(j, p);
    check_keys(r, j, p, {"multi_char_punct", "split_punct", "separators", "retag"});
    LexerSpec spec;
    if (j.contains("multi_char_punct")) {
        const std::string mp = at(p, "multi_char_punct");
        const auto& list = r.array(j["multi_char_punct"], mp);
        for (std::size_t i = 0; i < list.size(); ++i)
            spec.multi_char_punct.push_back(r.str(list[i], at(mp, i)));
    }
    if (j.contains("split_punct"))
        spec.split_punct = r.chars(j["split_punct"], at(p, "split_punct"));
    if (j.contains("separators")) {
        const std::string sp = at(p, "separators");
        const auto& list = r.array(j["separators"], sp);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string ip = at(sp, i);
            r.object(list[i], ip);
            check_keys(r, list[i], ip, {"token", "before", "gap", "after"});
            VirtualSeparator sep;
            sep.token = r.str(list[i].value("token", Json()), at(ip, "token"));
            for (auto [key, field] : {std::pair{"before", &sep.before}, {"gap", &sep.gap}, {"after", &sep.after}})
                if (list[i].contains(key))
                    *field = r.str(list[i][key], at(ip, key));
            spec.separators.push_back(std::move(sep));
        }
    }
    if (j.contains("retag")) {
        const std::string rp = at(p, "retag");
        const auto& list = r.array(j["retag"], rp);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string ip = at(rp, i);
            r.object(list[i], ip);
            check_keys(r, list[i], ip, {"token", "before", "after", "key"});
            RetagRule rule;
            rule.token = r.str(list[i].value("token", Json()), at(ip, "token"));
            rule.key = r.str(list[i].value("key", Json()), at(ip, "key"));
            for (auto [key, field] : {std::pair{"before", &rule.before}, {"after", &rule.after}})
                if (list[i].contains(key))
                    *field = r.str(list[i][key], at(ip, key));
            spec.retag.push_back(std::move(rule));
        }
    }
    return spec;
}

IndentDirective read_directive(const Reader& r, const Json& j, const std::string& p)
{
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "parent-column")
            return IndentDirective::parent_column();
        if (s == "parent-virtual")
            return IndentDirective::parent_virtual(0);
        if (s == "default")
            return IndentDirective::fallback();
        r.fail(p, "unknown directive \"" + s + "\"");
    }
    r.object(j, p);
    if (j.size() != 1)
        r.fail(p, "a directive object has exactly one key");
    const auto& [key, value] = *j.items().begin();
    const int n = r.integer(value, at(p, key));
    if (key == "offset")
        return IndentDirective::offset(n);
    if (key == "parent-virtual")
        return IndentDirective::parent_virtual(n);
    if (key == "column") {
        if (n < 0)
            r.fail(at(p, key), "a column is never negative");
        return IndentDirective::column(n);
    }
    r.fail(at(p, key), "unknown directive \"" + key + "\"");
}

IndentRule read_rule(const Reader& r, const Json& j, const std::string& p)
{
    r.object(j, p);
    check_keys(r, j, p, {"kind", "token", "hanging", "prev_tokens", "parent", "directive"});
    IndentRule rule;
    const std::string kind = r.str(j.value("kind", Json()), at(p, "kind"));
    const auto parsed = parse_query_kind(kind);
    if (!parsed)
        r.fail(at(p, "kind"), "kind must be before, after, elem-basic or list-intro");
    rule.kind = *parsed;
    if (j.contains("token"))
        rule.token = r.str(j["token"], at(p, "token"));
    if (rule.kind != QueryKind::ElemBasic && rule.token.empty())
        r.fail(at(p, "token"), "this rule kind needs a token");
    if (j.contains("hanging")) {
        if (!j["hanging"].is_boolean())
            r.fail(at(p, "hanging"), "expected a boolean");
        rule.guards.hanging = j["hanging"].get<bool>();
    }
    if (j.contains("parent"))
        rule.guards.parent_is = r.str(j["parent"], at(p, "parent"));
    if (j.contains("prev_tokens")) {
        const std::string pp = at(p, "prev_tokens");
        const auto& list = r.array(j["prev_tokens"], pp);
        for (std::size_t i = 0; i < list.size(); ++i) {
            TokenMatcher m;
            if (list[i].is_array()) {
                for (std::size_t k = 0; k < list[i].size(); ++k)
                    m.alternatives.push_back(r.str(list[i][k], at(at(pp, i), k)));
                if (m.alternatives.empty())
                    r.fail(at(pp, i), "an alternative list is never empty");
            } else {
                const std::string s = r.str(list[i], at(pp, i));
                if (s != "_")
                    m.alternatives.push_back(s);
            }
            rule.guards.prev_tokens.push_back(std::move(m));
        }
    }
    if (!j.contains("directive"))
        r.fail(p, "a rule needs a directive");
    rule.directive = read_directive(r, j["directive"], at(p, "directive"));
    return rule;
}

std::string json_location(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

Json write_directive(const IndentDirective& d)
{
    switch (d.kind) {
    case DirectiveKind::Offset: return Json{{"offset", d.value}};
    case DirectiveKind::Column: return Json{{"column", d.value}};
    case DirectiveKind::ParentColumn: return "parent-column";
    case DirectiveKind::ParentVirtual: return Json{{"parent-virtual", d.value}};
    case DirectiveKind::Default: break;
    }
    return "default";
}

} // namespace

void LangDef::compile()
{
    const Reader r(origin.empty() ? name : origin);
    std::vector<Prec2Table> tables;
    const auto grammar_fail = [&](const std::string& pointer, const GrammarError& e) {
        throw LangDefError(r.origin() + ":" + pointer, e.what(), e);
    };
    try {
        if (grammar_sources.bnf)
            tables.push_back(bnf_to_prec2(*grammar_sources.bnf));
    } catch (const GrammarError& e) {
        grammar_fail("/bnf", e);
    }
    for (std::size_t i = 0; i < grammar_sources.precedences.size(); ++i) {
        try {
            tables.push_back(levels_to_prec2(grammar_sources.precedences[i]));
        } catch (const GrammarError& e) {
            grammar_fail(at("/precedences", i), e);
        }
    }
    if (!grammar_sources.prec2.empty()) {
        Prec2Table t;
        t.source = "explicit prec2";
        for (std::size_t i = 0; i < grammar_sources.prec2.size(); ++i) {
            const auto& e = grammar_sources.prec2[i];
            const TokenPair key{e.left, e.right};
            auto [it, inserted] = t.relations.emplace(key, e.rel);
            if (!inserted && it->second != e.rel) {
                const std::string message = "contradictory explicit relations for " + quote_token(e.left) + " " +
                                            quote_token(e.right);
                throw LangDefError(origin + ":" + at("/prec2", i), message,
                                   GrammarError(GrammarError::Kind::MergeConflict, message, {e.left, e.right}));
            }
            t.tokens.insert(e.left);
            t.tokens.insert(e.right);
        }
        tables.push_back(std::move(t));
    }
    try {
        prec2_ = merge_prec2(tables);
        grammar_ = prec2_to_grammar(prec2_);
    } catch (const GrammarError& e) {
        grammar_fail("/", e);
    }

    construct_keywords_.clear();
    for (const auto& [pair, rel] : prec2_.relations)
        if (rel == Rel::EQ && pair.first != pair.second) {
            construct_keywords_.insert(pair.first);
            construct_keywords_.insert(pair.second);
        }

    const auto known = [&](const std::string& token) { return grammar_.is_keyword(token) || atoms.count(token) > 0; };
    for (std::size_t i = 0; i < rules.rules.size(); ++i) {
        const auto& rule = rules.rules[i];
        if (rule.kind != QueryKind::ElemBasic && !known(rule.token))
            r.fail(at(at("/rules", i), "token"),
                   "token " + quote_token(rule.token) + " is neither a grammar keyword nor a declared atom");
    }
    for (std::size_t i = 0; i < lexer_spec.retag.size(); ++i)
        if (!known(lexer_spec.retag[i].key))
            r.fail(at(at("/lexer/retag", i), "key"), "retag key " + quote_token(lexer_spec.retag[i].key) +
                                                         " is neither a grammar keyword nor a declared atom");
    for (std::size_t i = 0; i < lexer_spec.separators.size(); ++i)
        if (!known(lexer_spec.separators[i].token))
            r.fail(at(at("/lexer/separators", i), "token"),
                   "separator " + quote_token(lexer_spec.separators[i].token) + " is not a grammar keyword");
    if (rules.basic_offset < 0)
        r.fail("/basic_offset", "basic_offset is never negative");

    try {
        lexer_ = CompiledLexer(lexer_spec, syntax);
    } catch (const LexerError& e) {
        r.fail("/lexer", e.what());
    }
    compiled_ = true;
}

std::optional<Token> LangDef::next_token(SyntaxScanner& scanner, Cursor& cursor, Direction dir) const
{
    if (coded_lexer)
        return coded_lexer(scanner, cursor, dir);
    return lexer_.next(scanner, cursor, dir);
}

LangDef parse_langdef(std::string_view json_text, const std::string& origin)
{
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw LangDefError(origin + ":" + json_location(json_text, e.byte == 0 ? 0 : e.byte - 1),
                           std::string("malformed JSON: ") + e.what());
    }
    const Reader r(origin);
    r.object(j, "");
    check_keys(r, j, "",
               {"name", "syntax", "nonterminal_convention", "bnf", "precedences", "prec2", "lexer", "rules", "atoms",
                "basic_offset"});

    LangDef def;
    def.origin = origin;
    def.name = r.str(j.value("name", Json()), "/name");
    if (j.contains("syntax"))
        def.syntax = read_syntax(r, j["syntax"], "/syntax", def.syntax_base);
    if (j.contains("nonterminal_convention") &&
        r.str(j["nonterminal_convention"], "/nonterminal_convention") != "leading-uppercase")
        r.fail("/nonterminal_convention", "only \"leading-uppercase\" is supported");
    if (j.contains("bnf"))
        def.grammar_sources.bnf = read_bnf(r, j["bnf"], "/bnf");
    if (j.contains("precedences")) {
        const auto& lists = r.array(j["precedences"], "/precedences");
        for (std::size_t i = 0; i < lists.size(); ++i)
            def.grammar_sources.precedences.push_back(read_levels(r, lists[i], at("/precedences", i)));
    }
    if (j.contains("prec2")) {
        const auto& list = r.array(j["prec2"], "/prec2");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string ip = at("/prec2", i);
            const auto& e = r.array(list[i], ip);
            if (e.size() != 3)
                r.fail(ip, "an explicit relation is [token, \"<\"|\"=\"|\">\", token]");
            const auto rel = parse_rel(r.str(e[1], at(ip, 1)));
            if (!rel)
                r.fail(at(ip, 1), "relation must be <, = or >");
            def.grammar_sources.prec2.push_back({r.str(e[0], at(ip, 0)), r.str(e[2], at(ip, 2)), *rel});
        }
    }
    if (j.contains("lexer"))
        def.lexer_spec = read_lexer(r, j["lexer"], "/lexer");
    if (j.contains("atoms")) {
        const auto& list = r.array(j["atoms"], "/atoms");
        for (std::size_t i = 0; i < list.size(); ++i)
            def.atoms.insert(r.str(list[i], at("/atoms", i)));
    }
    if (j.contains("basic_offset"))
        def.rules.basic_offset = r.integer(j["basic_offset"], "/basic_offset");
    if (j.contains("rules")) {
        const auto& list = r.array(j["rules"], "/rules");
        for (std::size_t i = 0; i < list.size(); ++i)
            def.rules.rules.push_back(read_rule(r, list[i], at("/rules", i)));
    }
    def.compile();
    return def;
}

LangDef load_langdef(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw LangDefError(file.string(), "cannot read language definition");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_langdef(ss.str(), file.string());
}

std::string serialize_langdef(const LangDef& def)
{
    Json j;
    j["name"] = def.name;

    Json syntax;
    syntax["base"] = "empty";
    std::map<std::string, std::string> by_kind;
    Json pairs = Json::array();
    for (const auto& [ch, cls] : def.syntax.explicit_classes()) {
        switch (cls.kind) {
        case CharKind::Open:
            pairs.push_back(utf8_encode(ch) + utf8_encode(*cls.partner));
            break;
        case CharKind::Close: break;
        case CharKind::Whitespace: by_kind["whitespace"] += utf8_encode(ch); break;
        case CharKind::Word: by_kind["word"] += utf8_encode(ch); break;
        case CharKind::Symbol: by_kind["symbol"] += utf8_encode(ch); break;
        case CharKind::Punctuation: by_kind["punctuation"] += utf8_encode(ch); break;
        case CharKind::StringDelim: by_kind["strings"] += utf8_encode(ch); break;
        case CharKind::Escape: by_kind["escape"] += utf8_encode(ch); break;
        }
    }
    for (const auto& [k, v] : by_kind)
        syntax[k] = v;
    if (!pairs.empty())
        syntax["pairs"] = pairs;
    if (!def.syntax.comments().empty()) {
        Json comments = Json::array();
        for (const auto& c : def.syntax.comments())
            comments.push_back(Json::array({utf8_encode(c.opener), utf8_encode(c.closer)}));
        syntax["comments"] = comments;
    }
    j["syntax"] = syntax;

    const auto& src = def.grammar_sources;
    if (src.bnf) {
        j["nonterminal_convention"] = "leading-uppercase";
        Json bnf = Json::object();
        for (const auto& [nt, alts] : src.bnf->rules) {
            Json a = Json::array();
            for (const auto& rhs : alts) {
                Json syms = Json::array();
                for (const auto& s : rhs)
                    syms.push_back(s.name);
                a.push_back(syms);
            }
            bnf[nt] = a;
        }
        j["bnf"] = bnf;
    }
    if (!src.precedences.empty()) {
        Json lists = Json::array();
        for (const auto& list : src.precedences) {
            Json levels = Json::array();
            for (const auto& level : list) {
                Json l = Json::array({to_string(level.assoc)});
                for (const auto& t : level.tokens)
                    l.push_back(t);
                levels.push_back(l);
            }
            lists.push_back(levels);
        }
        j["precedences"] = lists;
    }
    if (!src.prec2.empty()) {
        Json list = Json::array();
        for (const auto& e : src.prec2)
            list.push_back(Json::array({e.left, e.rel == Rel::LT ? "<" : e.rel == Rel::EQ ? "=" : ">", e.right}));
        j["prec2"] = list;
    }

    const auto& lx = def.lexer_spec;
    if (!lx.empty()) {
        Json lexer = Json::object();
        if (!lx.multi_char_punct.empty())
            lexer["multi_char_punct"] = lx.multi_char_punct;
        if (!lx.split_punct.empty())
            lexer["split_punct"] = utf8_encode(lx.split_punct);
        if (!lx.separators.empty()) {
            Json seps = Json::array();
            for (const auto& s : lx.separators)
                seps.push_back({{"token", s.token}, {"before", s.before}, {"gap", s.gap}, {"after", s.after}});
            lexer["separators"] = seps;
        }
        if (!lx.retag.empty()) {
            Json retag = Json::array();
            for (const auto& t : lx.retag)
                retag.push_back({{"token", t.token}, {"before", t.before}, {"after", t.after}, {"key", t.key}});
            lexer["retag"] = retag;
        }
        j["lexer"] = lexer;
    }
    if (!def.atoms.empty())
        j["atoms"] = def.atoms;
    j["basic_offset"] = def.rules.basic_offset;
    if (!def.rules.rules.empty()) {
        Json rules = Json::array();
        for (const auto& rule : def.rules.rules) {
            Json o;
            o["kind"] = to_string(rule.kind);
            if (!rule.token.empty())
                o["token"] = rule.token;
            if (rule.guards.hanging)
                o["hanging"] = *rule.guards.hanging;
            if (!rule.guards.prev_tokens.empty()) {
                Json prev = Json::array();
                for (const auto& m : rule.guards.prev_tokens) {
                    if (m.wildcard())
                        prev.push_back("_");
                    else if (m.alternatives.size() == 1)
                        prev.push_back(m.alternatives[0]);
                    else
                        prev.push_back(m.alternatives);
                }
                o["prev_tokens"] = prev;
            }
            if (rule.guards.parent_is)
                o["parent"] = *rule.guards.parent_is;
            o["directive"] = write_directive(rule.directive);
            rules.push_back(o);
        }
        j["rules"] = rules;
    }
    return j.dump(2) + "\n";
}

std::vector<std::string> bundled_language_names()
{
    std::vector<std::string> names;
    for (const auto& b : kBundledLanguages)
        names.emplace_back(b.name);
    return names;
}

std::vector<LangDef> bundled_languages()
{
    std::vector<LangDef> out;
    for (const auto& b : kBundledLanguages)
        out.push_back(parse_langdef(b.json, std::string("<bundled ") + b.name + ">"));
    return out;
}

LangDef find_language(const std::string& name)
{
    if (const char* env = std::getenv("OPINDENT_LANG_PATH")) {
        std::string_view paths(env);
        while (!paths.empty()) {
            const auto colon = paths.find(':');
            const std::string_view dir = paths.substr(0, colon);
            if (!dir.empty()) {
                const auto candidate = std::filesystem::path(dir) / (name + ".lang.json");
                std::error_code ec;
                if (std::filesystem::is_regular_file(candidate, ec))
                    return load_langdef(candidate);
            }
            if (colon == std::string_view::npos)
                break;
            paths.remove_prefix(colon + 1);
        }
    }
    for (const auto& b : kBundledLanguages)
        if (name == b.name)
            return parse_langdef(b.json, std::string("<bundled ") + b.name + ">");
    throw LangDefError(name, "unknown language");
}

} // namespace opindent
