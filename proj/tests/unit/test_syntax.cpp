#include "oracles.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace opindent;

namespace {

SyntaxTable c_table()
{
    SyntaxTable t = SyntaxTable::standard();
    t.add_comment(U"/*", U"*/");
    t.add_comment(U"//", U"\n");
    return t;
}

} // namespace

TEST_CASE("character classes")
{
    const SyntaxTable t = SyntaxTable::standard();
    CHECK(t.kind(U'a') == CharKind::Word);
    CHECK(t.kind(U'7') == CharKind::Word);
    CHECK(t.kind(U'é') == CharKind::Word);
    CHECK(t.kind(U'+') == CharKind::Punctuation);
    CHECK(t.kind(U' ') == CharKind::Whitespace);
    CHECK(t.kind(U'"') == CharKind::StringDelim);
    CHECK(t.classify(U'(').partner == U')');
    CHECK(t.classify(U')').partner == U'(');
    CHECK(t.kind(U'_') == CharKind::Symbol);
}

TEST_CASE("table invariants")
{
    SyntaxTable t;
    t.add_comment(U"/*", U"*/");
    CHECK_THROWS_AS(t.add_comment(U"/", U"\n"), SyntaxError);
    CHECK_THROWS_AS(t.add_comment(U"", U"\n"), SyntaxError);
    SyntaxTable t2 = SyntaxTable::standard();
    t2.set(U')', CharKind::Word);
    CHECK(t2.kind(U'(') == CharKind::Punctuation);
    CHECK_NOTHROW(t2.validate());
    CHECK_THROWS_AS(t2.set(U'<', CharKind::Open), SyntaxError);
    CHECK_NOTHROW(SyntaxTable::standard().validate());
}

TEST_CASE("scan_state examples")
{
    const SyntaxTable t = c_table();
    {
        Buffer buf(U"/* a */ x");
        SyntaxScanner sc(buf, t);
        const ScanState st = sc.scan_state(4);
        REQUIRE(st.in_comment());
        CHECK(t.comments()[*st.comment_style].opener == U"/*");
        CHECK(st.comment_start == 0);
        CHECK_FALSE(sc.scan_state(9).in_comment());
    }
    {
        Buffer buf(U"mystring = \"a // b\";");
        SyntaxScanner sc(buf, t);
        const ScanState st = sc.scan_state(15);
        CHECK(st.string_delim == U'"');
        CHECK_FALSE(st.in_comment());
    }
    {
        Buffer buf(U"(()");
        SyntaxScanner sc(buf, t);
        CHECK(sc.scan_state(3).depth == 1);
        CHECK(sc.scan_state(0) == ScanState{});
    }
}

TEST_CASE("scan_state cache transparency and prefix consistency")
{
    const SyntaxTable t = c_table();
    std::mt19937 rng(3);
    const std::u32string alphabet = U"ab (){}\"\\/*\n ";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (int round = 0; round < 10; ++round) {
        std::u32string text;
        for (int i = 0; i < 5000; ++i)
            text += alphabet[pick(rng)];
        Buffer buf(text);
        SyntaxScanner sc(buf, t);
        std::uniform_int_distribution<std::size_t> pos(0, text.size());
        for (int k = 0; k < 300; ++k) {
            const std::size_t p = pos(rng);
            const ScanState warm = sc.scan_state(p);
            REQUIRE(warm == sc.scan_state_uncached(p));
            REQUIRE_FALSE((warm.in_comment() && warm.in_string()));
        }
        CHECK(sc.checkpoint_count() > 0);
        // Edits invalidate from the lowest edited offset only.
        buf.replace(2500, 2501, U"\"");
        for (int k = 0; k < 100; ++k) {
            const std::size_t p = pos(rng) % (buf.size() + 1);
            REQUIRE(sc.scan_state(p) == sc.scan_state_uncached(p));
        }
    }
}

TEST_CASE("skip_whitespace_and_comments")
{
    const SyntaxTable t = c_table();
    {
        Buffer buf(U"a  /* c */  ");
        SyntaxScanner sc(buf, t);
        Cursor c(buf, buf.size());
        sc.skip_whitespace_and_comments(c, Direction::Backward);
        CHECK(c.pos() == 1);
    }
    {
        Buffer buf(U"/* This is /* a single comment. */");
        SyntaxScanner sc(buf, t);
        Cursor c(buf, buf.size());
        sc.skip_whitespace_and_comments(c, Direction::Backward);
        CHECK(c.pos() == 0);
    }
    {
        Buffer buf(U"x");
        SyntaxScanner sc(buf, t);
        Cursor c(buf, 0);
        sc.skip_whitespace_and_comments(c, Direction::Forward);
        CHECK(c.pos() == 0);
    }
    {
        Buffer buf(U"x // note\n  y");
        SyntaxScanner sc(buf, t);
        Cursor c(buf, 1);
        sc.skip_whitespace_and_comments(c, Direction::Forward);
        CHECK(c.pos() == buf.size() - 1);
        sc.skip_whitespace_and_comments(c, Direction::Backward);
        CHECK(c.pos() == 1);
    }
}

TEST_CASE("skip_balanced")
{
    const SyntaxTable t = c_table();
    {
        Buffer buf(U"(x + b * c d");
        SyntaxScanner sc(buf, t);
        Cursor c(buf, buf.size());
        CHECK_THROWS_AS(sc.skip_balanced(c, Direction::Backward), UnbalancedError);
    }
    {
        Buffer buf(U"{ a { b } c }");
        SyntaxScanner sc(buf, t);
        Cursor c(buf, 0);
        CHECK(sc.skip_balanced(c, Direction::Forward) == 13);
    }
    {
        const std::u32string text = U"(\")\")";
        Buffer buf(text);
        SyntaxScanner sc(buf, t);
        Cursor c(buf, buf.size());
        const auto expected = oracle::matching_open_by_replay(text, text.size());
        REQUIRE(expected.has_value());
        CHECK(sc.skip_balanced(c, Direction::Backward) == *expected);
        CHECK(*expected == 0);
    }
    {
        Buffer buf(U"( a /* ) */ b )");
        SyntaxScanner sc(buf, t);
        Cursor c(buf, 0);
        CHECK(sc.skip_balanced(c, Direction::Forward) == buf.size());
        CHECK(sc.skip_balanced(c, Direction::Backward) == 0);
    }
    {
        Buffer buf(U"((a)");
        SyntaxScanner sc(buf, t);
        Cursor c(buf, 0);
        try {
            sc.skip_balanced(c, Direction::Forward);
            FAIL("expected UnbalancedError");
        } catch (const UnbalancedError& e) {
            CHECK(e.landing == buf.size());
        }
    }
}

TEST_CASE("skip_balanced round trip on balanced input")
{
    const SyntaxTable t = c_table();
    std::mt19937 rng(5);
    for (int round = 0; round < 200; ++round) {
        // Random balanced text built recursively.
        std::u32string text;
        std::function<void(int)> gen = [&](int depth) {
            std::uniform_int_distribution<int> pick(0, 6);
            const int n = 1 + pick(rng) % 4;
            for (int i = 0; i < n; ++i) {
                switch (depth < 4 ? pick(rng) : 0) {
                case 0: text += U"x "; break;
                case 1: text += U"\"s)\" "; break;
                case 2: text += U"/* ( */ "; break;
                case 3: text += U"("; gen(depth + 1); text += U")"; break;
                case 4: text += U"["; gen(depth + 1); text += U"]"; break;
                default: text += U"{"; gen(depth + 1); text += U"}"; break;
                }
            }
        };
        text += U"(";
        gen(0);
        text += U")";
        Buffer buf(text);
        SyntaxScanner sc(buf, t);
        Cursor c(buf, 0);
        REQUIRE(sc.skip_balanced(c, Direction::Forward) == text.size());
        REQUIRE(sc.skip_balanced(c, Direction::Backward) == 0);
    }
}
