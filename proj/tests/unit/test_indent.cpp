#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace opindent;

namespace {

LangDef fixture(const std::string& name)
{
    const std::string path = "tests/fixtures/" + name + ".lang.json";
    return parse_langdef(oracle::read_text(oracle::source_path(path)), path);
}

// Column computed for `line` after indenting every line before it.
std::size_t column_of(const LangDef& lang, const std::string& text, std::size_t line)
{
    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, lang);
    Indenter ind(engine);
    if (line > 1)
        ind.indent_region(1, line - 1);
    return ind.indent_line(line).new_column;
}

// Reindents from `first` on, keeping earlier lines as written.
std::string reindent_from(const std::string& text, const LangDef& lang, std::size_t first)
{
    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, lang);
    Indenter ind(engine);
    ind.indent_region(first, buf.line_count());
    return buf.to_utf8();
}

// Column for `line` leaving earlier lines as written.
std::size_t column_as_is(const LangDef& lang, const std::string& text, std::size_t line)
{
    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, lang);
    Indenter ind(engine);
    return ind.indent_line(line).new_column;
}

std::size_t offset_of(const std::string& text, const std::string& needle, std::size_t from = 0)
{
    const auto p = text.find(needle, from);
    REQUIRE(p != std::string::npos);
    return p;
}

} // namespace

TEST_CASE("function arguments indent like a curried call")
{
    const LangDef toy = find_language("toy");
    const std::string text = "thefunction\narg1\n(arg2 expression)\narg3\n";
    const std::string out = oracle::reindent(text, toy);
    CHECK(out == "thefunction\n    arg1\n    (arg2 expression)\n    arg3\n");

    const std::string nested = "  thefunction\narg1\narg2\n";
    CHECK(reindent_from(nested, toy, 2) == "  thefunction\n      arg1\n      arg2\n");
}

TEST_CASE("braces after a hanging opener")
{
    const LangDef c = fixture("c-mini");
    const std::string text = "int function (int arg) {\ndosomething();\n}\n";
    CHECK(column_of(c, text, 2) == 4);
    CHECK(column_of(c, text, 3) == 0);
    CHECK(oracle::reindent(text, c) == "int function (int arg) {\n    dosomething();\n}\n");

    const std::string shifted = "  int function (int arg) {\ndosomething();\nmore();\n}\n";
    CHECK(reindent_from(shifted, c, 2) == "  int function (int arg) {\n      dosomething();\n      more();\n  }\n");

    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, c);
    Indenter ind(engine);
    const std::size_t brace = offset_of(text, "{");
    CHECK(ind.is_hanging(brace));
    CHECK(ind.virtual_indent(brace) == 0);
    CHECK_FALSE(ind.is_hanging(offset_of(text, "dosomething")));
    CHECK_FALSE(ind.is_hanging(offset_of(text, "(")));

    const std::string alone = "int function (int arg)\n{\nx;\n}\n";
    Buffer buf2 = Buffer::from_utf8(alone);
    Engine engine2(buf2, c);
    Indenter ind2(engine2);
    CHECK_FALSE(ind2.is_hanging(offset_of(alone, "{")));
    // Without a grammar link to the header, the brace continues it like an argument.
    CHECK(oracle::reindent(alone, c) == "int function (int arg)\n    {\n        x;\n    }\n");
}

TEST_CASE("chained fn bodies indent once")
{
    const LangDef sml = find_language("mini-sml");
    CHECK(oracle::reindent("fn x => fn y => fn z =>\nbody\n", sml) == "fn x => fn y => fn z =>\n    body\n");
    CHECK(reindent_from("  fn x => fn y => fn z =>\nbody\n", sml, 2) == "  fn x => fn y => fn z =>\n      body\n");

    const std::string text = "  fn x => fn y => fn z =>\n      body\n";
    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, sml);
    Indenter ind(engine);
    for (std::size_t p = text.find("fn"); p != std::string::npos; p = text.find("fn", p + 1))
        CHECK(ind.virtual_indent(p) == 2);
}

TEST_CASE("arguments align with their nearest sibling")
{
    const LangDef args = fixture("args");
    const std::string text = "longfunctionname(argument1, argument2,\nargument3\n";
    CHECK(column_of(args, text, 2) == 17);

    const std::string moved = "longfunctionname(argument1, argument2,\n      argument3,\nargument4\n";
    CHECK(column_as_is(args, moved, 3) == 6);

    const std::string moved_far = "longfunctionname(argument1, argument2,\n                        argument3,\nargument4\n";
    CHECK(column_as_is(args, moved_far, 3) == 24);
}

TEST_CASE("virtual indentation of a line-initial token is its column")
{
    const LangDef rnc = find_language("rnc");
    const std::string text = oracle::read_text(oracle::source_path("tests/corpus/recettes.rnc"));
    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, rnc);
    Indenter ind(engine);
    for (std::size_t line = 1; line <= buf.line_count(); ++line) {
        if (buf.line_is_blank(line))
            continue;
        CHECK(ind.virtual_indent(buf.line_content_start(line)) == buf.line_indentation(line));
    }
}

TEST_CASE("listing lines")
{
    const LangDef rnc = find_language("rnc");
    const std::string golden = oracle::read_text(oracle::source_path("tests/corpus/recettes.rnc"));
    Buffer buf = Buffer::from_utf8(golden);
    const std::size_t start = buf.line_start(12);
    buf.replace(start, start + 4, U"");
    Engine engine(buf, rnc);
    Indenter ind(engine);
    const LineIndent li = ind.indent_line(12);
    CHECK(li.old_column == 0);
    CHECK(li.new_column == 4);
    CHECK(buf.to_utf8() == golden);

    CHECK(oracle::reindent(oracle::strip_indentation(golden), rnc) == golden);
    CHECK(oracle::reindent(golden, rnc) == golden);
}

TEST_CASE("lines inside strings keep their indentation")
{
    const LangDef rnc = find_language("rnc");
    const std::string text = "a = element x { \"first\n       second\" }\n";
    CHECK(oracle::reindent(text, rnc) == text);
    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, rnc);
    Indenter ind(engine);
    const LineIndent li = ind.indent_line(2);
    CHECK(li.old_column == 7);
    CHECK_FALSE(li.changed());
}

TEST_CASE("region indentation")
{
    const LangDef rnc = find_language("rnc");
    const std::string golden = oracle::read_text(oracle::source_path("tests/corpus/recettes.rnc"));
    Buffer buf = Buffer::from_utf8(oracle::strip_indentation(golden));
    Engine engine(buf, rnc);
    Indenter ind(engine);
    CHECK(ind.indent_region(3, 2) == 0);
    CHECK(ind.indent_region(1, buf.line_count()) > 0);
    CHECK(ind.indent_region(1, buf.line_count()) == 0);
    CHECK(buf.to_utf8() == golden);
}

TEST_CASE("idempotence on perturbed inputs")
{
    std::mt19937 rng(17);
    const std::vector<std::pair<std::string, std::string>> inputs = {
        {"rnc", oracle::read_text(oracle::source_path("tests/corpus/recettes.rnc"))},
        {"toy", "let x = a\nin let y =\nb + c *\nd\n(e\nf)\nin g\n"},
        {"mini-sml", "fn x =>\nfn y => (x\n+ y)\n(* note\nhere *)\n+ z\n"},
    };
    for (const auto& [name, text] : inputs) {
        const LangDef lang = find_language(name);
        for (int i = 0; i < 40; ++i) {
            std::string t = text;
            std::uniform_int_distribution<std::size_t> at(0, t.size());
            for (int k = 0; k < 4; ++k) {
                const std::size_t p = at(rng);
                switch (rng() % 4) {
                case 0: t.insert(p, std::string(rng() % 6, ' ')); break;
                case 1: t.insert(p, "\n"); break;
                case 2: if (p < t.size()) t.erase(p, 1); break;
                default: t.insert(p, "{"); break;
                }
            }
            const std::string once = oracle::reindent(t, lang);
            CHECK_MESSAGE(oracle::reindent(once, lang) == once, name << ":\n" << t);
        }
    }
}

TEST_CASE("a column directive is taken literally")
{
    LangDef rnc = find_language("rnc");
    IndentRule rule;
    rule.kind = QueryKind::BeforeToken;
    rule.token = "element";
    rule.directive = IndentDirective::column(13);
    rnc.rules.rules.insert(rnc.rules.rules.begin(), rule);
    rnc.compile();
    const std::string text = "a = b |\nelement c { d }\n";
    CHECK(column_of(rnc, text, 2) == 13);

    LangDef toy = find_language("toy");
    toy.rules.hook = [](const IndentQuery& q) -> std::optional<IndentDirective> {
        if (q.kind == QueryKind::AfterToken && q.token == "+")
            return IndentDirective::column(7);
        return std::nullopt;
    };
    CHECK(column_of(toy, "a +\nb\n", 2) == 7);
    CHECK(column_of(toy, "a *\nb\n", 2) == 0);
}

TEST_CASE("self-referential rules terminate")
{
    LangDef toy = find_language("toy");
    toy.rules.hook = [](const IndentQuery& q) -> std::optional<IndentDirective> {
        if (q.kind == QueryKind::BeforeToken && q.token == "+")
            return IndentDirective::column(static_cast<int>(q.context->virtual_column(q.context->position())) + 1);
        return std::nullopt;
    };
    const std::string text = "a + b\n";
    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, toy);
    Indenter ind(engine);
    const std::size_t col = ind.virtual_indent(2);
    CHECK(col >= 2);
    CHECK(col <= 2 + static_cast<std::size_t>(Indenter::kMaxDepth) + 1);
}

TEST_CASE("comments")
{
    const LangDef c = fixture("c-mini");
    CHECK(reindent_from("  /* a\nb\n*/\n", c, 2) == "  /* a\n   b\n   */\n");
    CHECK(oracle::reindent("{\nx;\n// one\n      // two\ny;\n}\n", c) ==
          "{\n    x;\n    // one\n    // two\n    y;\n}\n");
    CHECK(oracle::reindent("{\n    x; // trailing\n  // own line\n}\n", c) ==
          "{\n    x; // trailing\n    // own line\n}\n");
}

TEST_CASE("paren-only languages")
{
    const LangDef parens = fixture("parens-only");
    CHECK(oracle::reindent("(a\nb)\n", parens) == "(a\n     b)\n");
    CHECK(oracle::reindent("(a b\nc)\n", parens) == "(a b\n   c)\n");
    CHECK(oracle::reindent("(\nb\n)\n", parens) == "(\n    b\n)\n");
    CHECK(oracle::reindent("f\nx\ny\n", parens) == "f\n    x\n    y\n");
}

TEST_CASE("blank lines and the end of the buffer")
{
    const LangDef c = fixture("c-mini");
    std::string text = "{\n    x;\n\n";
    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, c);
    Indenter ind(engine);
    CHECK(ind.calculate(buf.size()) == 4);
    CHECK(ind.calculate(0) == 0);
    Buffer empty;
    Engine e2(empty, c);
    Indenter i2(e2);
    CHECK(i2.calculate(0) == 0);
}
