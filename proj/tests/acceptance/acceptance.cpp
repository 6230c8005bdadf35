// One line per acceptance criterion; exits nonzero when any fails.
#include "oracles.hpp"

#include "opindent/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

using namespace opindent;

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failure notes for one criterion.
struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what)
    {
        if (!ok)
            failures.push_back(what);
    }
};

struct Corpus {
    std::string path;
    std::string lang;
    std::string text;
};

std::vector<Corpus> corpus()
{
    const std::map<std::string, std::string> by_ext = {{".rnc", "rnc"}, {".toy", "toy"}, {".sml", "mini-sml"}};
    std::vector<Corpus> out;
    for (const auto& entry : fs::directory_iterator(oracle::source_path("tests/corpus"))) {
        const auto it = by_ext.find(entry.path().extension().string());
        if (it != by_ext.end())
            out.push_back({entry.path().string(), it->second, oracle::read_text(entry.path().string())});
    }
    std::sort(out.begin(), out.end(), [](const Corpus& a, const Corpus& b) { return a.path < b.path; });
    return out;
}

LangDef fixture(const std::string& name)
{
    const std::string path = oracle::source_path("tests/fixtures/" + name + ".lang.json");
    return parse_langdef(oracle::read_text(path), path);
}

std::size_t indent_of_line(const LangDef& lang, const std::string& text, std::size_t line)
{
    Buffer buf = Buffer::from_utf8(text);
    Engine engine(buf, lang);
    Indenter ind(engine);
    return ind.indent_line(line).new_column;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to)
{
    for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size()))
        s.replace(p, from.size(), to);
    return s;
}

void criterion1(Check& c)
{
    const auto t0 = Clock::now();
    // Rows are left tokens; "" marks an empty cell.
    const std::vector<std::string> tok = {"id", "let", "in", "+", "*"};
    const std::vector<std::vector<std::string>> table = {
        {"", "", ">", ">", ">"},
        {"<", "<", "=", "<", "<"},
        {"<", "<", "", "<", "<"},
        {"<", "<", ">", ">", "<"},
        {"<", "<", ">", ">", ">"},
    };
    const std::string toy_json = oracle::read_text(oracle::source_path("langs/toy.lang.json"));
    const LangDef left = parse_langdef(replace_all(toy_json, "\"assoc\"", "\"left\""), "toy-left");
    const LangDef assoc = find_language("toy");

    std::size_t checked = 0;
    for (std::size_t i = 0; i < tok.size(); ++i) {
        for (std::size_t j = 0; j < tok.size(); ++j) {
            const std::string& cell = table[i][j];
            if (cell.empty())
                continue;
            const Rel rel = cell == "<" ? Rel::LT : cell == "=" ? Rel::EQ : Rel::GT;
            const auto holds = oracle::relation_holds(left.grammar(), tok[i], rel, tok[j]);
            if (!holds)
                continue;
            ++checked;
            c.expect(*holds, tok[i] + " " + cell + " " + tok[j]);
        }
    }
    // Cells outside the let column and the id row/column, minus the empty (in, in).
    c.expect(checked == 11, "constrained pairs: " + std::to_string(checked));
    c.expect(left.prec2().get("let", "in") == Rel::EQ, "EQ(let, in) in prec2");
    const Levels* lp = left.grammar().find("+");
    const Levels* ap = assoc.grammar().find("+");
    c.expect(lp && lp->left && lp->right && *lp->right > *lp->left, "left + has right > left");
    c.expect(ap && ap->left && ap->right && *ap->right == *ap->left, "assoc + has right == left");
    c.expect(oracle::violations(assoc.prec2(), assoc.grammar()).empty(), "toy prec2 holds in its grammar");
    c.expect(seconds_since(t0) < 1.0, "runtime over 1 s");
}

void criterion2(Check& c)
{
    const LangDef toy = find_language("toy");
    const std::string text = "(x + b * c d";
    struct Case {
        std::size_t pos;
        NavMode mode;
        std::optional<std::string> target;
        NavOutcome outcome;
        std::string bumped;
        std::string crossed;
    };
    const std::vector<Case> cases = {
        {12, NavMode::Sexp, std::nullopt, NavOutcome::SkippedAtom, "", "d"},
        {12, NavMode::Sexp, "*", NavOutcome::BumpedSibling, "*", "c d"},
        {12, NavMode::Sexp, "+", NavOutcome::BumpedSibling, "+", "b * c d"},
        {12, NavMode::Sexp, ")", NavOutcome::MatchedOpen, "(", "(x + b * c d"},
        {9, NavMode::HalfSexp, std::nullopt, NavOutcome::BumpedSibling, "+", "b *"},
    };
    for (const Case& k : cases) {
        Buffer buf = Buffer::from_utf8(text);
        Engine engine(buf, toy);
        Cursor cur(buf, k.pos);
        const NavResult r = next_sexp(engine, cur, Direction::Backward, k.mode, k.target);
        const std::string label = "target " + k.target.value_or("none");
        c.expect(r.outcome == k.outcome, label + ": outcome " + to_string(r.outcome));
        c.expect((r.token ? r.token->text : "") == k.bumped, label + ": bumped token");
        std::size_t from = r.landing;
        if (r.token && r.outcome != NavOutcome::MatchedOpen)
            from = r.token->end;
        std::string crossed = buf.slice_utf8(from, k.pos);
        crossed.erase(0, crossed.find_first_not_of(' '));
        crossed.erase(crossed.find_last_not_of(' ') + 1);
        c.expect(crossed == k.crossed, label + ": crossed \"" + crossed + "\"");
    }
}

void criterion3(Check& c)
{
    const std::string golden = oracle::read_text(oracle::source_path("tests/corpus/recettes.rnc"));
    c.expect(std::count(golden.begin(), golden.end(), '\n') == 16, "listing has 16 lines");
    const fs::path file = fs::temp_directory_path() / ("opindent-acceptance-" + std::to_string(::getpid()) + ".rnc");
    std::ofstream(file, std::ios::binary) << oracle::strip_indentation(golden);
    std::ostringstream out, err;
    const int code = run_cli({"opindent", "indent", file.string(), "--lang", "rnc"}, out, err);
    fs::remove(file);
    c.expect(code == 0, "exit code " + std::to_string(code) + " " + err.str());
    c.expect(out.str() == golden, "reconstruction differs");
}

void criterion4(Check& c)
{
    const LangDef cm = fixture("c-mini");
    const std::string brace = "int function (int arg) {\ndosomething();\n}\n";
    c.expect(indent_of_line(cm, brace, 2) == 4, "brace body column 4");
    c.expect(indent_of_line(cm, brace, 3) == 0, "closing brace column 0");

    const LangDef sml = find_language("mini-sml");
    for (std::size_t lead : {0, 3}) {
        const std::string chain = std::string(lead, ' ') + "fn x => fn y => fn z =>\nbody\n";
        c.expect(indent_of_line(sml, chain, 2) == lead + 4, "fn chain body at first fn + 4");
    }
}

void criterion5(Check& c)
{
    const LangDef args = fixture("args");
    const std::string base = "longfunctionname(argument1, argument2,\n";
    c.expect(indent_of_line(args, base + "argument3\n", 2) == 17, "argument3 aligns with argument1");
    for (std::size_t col : {2, 9, 30}) {
        const std::string text = base + std::string(col, ' ') + "argument3,\nargument4\n";
        c.expect(indent_of_line(args, text, 3) == col, "argument4 follows argument3 at " + std::to_string(col));
    }
}

void criterion6(Check& c)
{
    const auto t0 = Clock::now();
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<int> size(1, 12);
    int cycles = 0;
    for (int i = 0; i < 200; ++i) {
        auto r = oracle::random_satisfiable_table(rng, size(rng));
        try {
            const PrecGrammar g = prec2_to_grammar(r.table);
            const auto v = oracle::violations(r.table, g);
            c.expect(v.empty(), "table " + std::to_string(i) + ": " + (v.empty() ? "" : v.front()));
        } catch (const GrammarError& e) {
            c.expect(false, "table " + std::to_string(i) + " rejected: " + e.what());
        }
        if (oracle::inject_cycle(rng, r.table)) {
            ++cycles;
            bool rejected = false;
            try {
                prec2_to_grammar(r.table);
            } catch (const GrammarError& e) {
                rejected = e.kind == GrammarError::Kind::Unsatisfiable;
            }
            c.expect(rejected, "cycle in table " + std::to_string(i) + " accepted");
        }
    }
    c.expect(cycles > 100, "too few cycle injections: " + std::to_string(cycles));
    c.expect(seconds_since(t0) < 10.0, "runtime over 10 s");
}

std::string perturb(std::mt19937& rng, std::string text)
{
    std::uniform_int_distribution<int> edits(1, 6);
    for (int k = edits(rng); k > 0; --k) {
        std::uniform_int_distribution<std::size_t> at(0, text.size());
        const std::size_t p = at(rng);
        switch (rng() % 5) {
        case 0: text.insert(p, std::string(1 + rng() % 8, ' ')); break;
        case 1: text.insert(p, "\n"); break;
        case 2:
            if (p < text.size())
                text.erase(p, 1 + rng() % 3);
            break;
        case 3: {
            static const std::vector<std::string> bits = {"{", "}", "(", ")", ",", "|", "?", "in", "let", "+", "=>", "\t"};
            text.insert(p, bits[rng() % bits.size()]);
            break;
        }
        default: {
            // Strip the indentation of a random line.
            const std::size_t ls = text.rfind('\n', p == 0 ? 0 : p - 1);
            const std::size_t s = ls == std::string::npos ? 0 : ls + 1;
            std::size_t e = s;
            while (e < text.size() && (text[e] == ' ' || text[e] == '\t'))
                ++e;
            text.erase(s, e - s);
        }
        }
    }
    return text;
}

void criterion7(Check& c)
{
    std::mt19937 rng(7);
    for (const Corpus& f : corpus()) {
        const LangDef lang = find_language(f.lang);
        c.expect(oracle::reindent(f.text, lang) == f.text, f.path + " is not a fixpoint");
        for (int i = 0; i < 100; ++i) {
            const std::string variant = perturb(rng, f.text);
            const std::string once = oracle::reindent(variant, lang);
            c.expect(oracle::reindent(once, lang) == once, f.path + " variant " + std::to_string(i));
        }
    }
}

void criterion8(Check& c)
{
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> byte(0, 97);
    const auto random_char = [&] {
        const int b = byte(rng);
        return b < 95 ? static_cast<char>(32 + b) : "\n\t\n"[b - 95];
    };
    for (const Corpus& f : corpus()) {
        const LangDef lang = find_language(f.lang);
        Buffer buf = Buffer::from_utf8(f.text);
        Engine engine(buf, lang);
        for (std::size_t line = 1; line <= buf.line_count(); ++line) {
            if (buf.line_is_blank(line))
                continue;
            const std::size_t start = buf.line_content_start(line);
            Indenter ind(engine);
            const std::size_t expected = ind.calculate(start);
            Cursor cur(buf, start);
            const auto tok = engine.next_token(cur, Direction::Forward);
            const std::size_t cut = tok && !tok->synthetic ? tok->end : start;
            for (int trial = 0; trial < 10; ++trial) {
                // A delimiter keeps the first token intact.
                std::string suffix = " ";
                for (int n = 0; n < 200; ++n)
                    suffix += random_char();
                Buffer mutated = Buffer::from_utf8(buf.slice_utf8(0, cut) + suffix);
                Engine e2(mutated, lang);
                Indenter i2(e2);
                const std::size_t got = i2.calculate(start);
                c.expect(got == expected, f.path + ":" + std::to_string(line) + " gave " + std::to_string(got) +
                                              " instead of " + std::to_string(expected));
            }
        }
    }
}

void criterion9(Check& c)
{
    const std::string golden = oracle::read_text(oracle::source_path("tests/corpus/recettes.rnc"));
    std::string big;
    std::size_t lines = 0;
    for (int i = 0; lines < 1000; ++i) {
        std::string part = golden.substr(golden.find("\n\n") + 2);
        part = replace_all(part, "recette", "recette" + std::to_string(i) + "_");
        part = replace_all(part, "start", "start" + std::to_string(i));
        big += part + "\n";
        lines = static_cast<std::size_t>(std::count(big.begin(), big.end(), '\n'));
    }
    const LangDef rnc = find_language("rnc");
    const std::string stripped = oracle::strip_indentation(big);
    const auto t0 = Clock::now();
    const std::string out = oracle::reindent(stripped, rnc);
    const double elapsed = seconds_since(t0);
    c.expect(lines >= 1000, "only " + std::to_string(lines) + " lines");
    c.expect(out == big, "reindented text differs from the expected layout");
    c.expect(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"let/in table relations hold in the compiled toy grammar", criterion1},
        {"navigation examples on \"(x + b * c d\"", criterion2},
        {"stripped listing is reindented byte-identically", criterion3},
        {"brace body and fn chain columns", criterion4},
        {"argument4 aligns with a moved argument3", criterion5},
        {"solver soundness on 200 random tables and injected cycles", criterion6},
        {"idempotence on corpus files and perturbed variants", criterion7},
        {"indentation ignores text after the line's first token", criterion8},
        {"1000-line rnc file reindented in under 1 s", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = c.failures.empty();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << "\n";
        for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k)
            std::cout << "    " << c.failures[k] << "\n";
        if (c.failures.size() > 5)
            std::cout << "    ... " << c.failures.size() - 5 << " more\n";
    }
    return failed == 0 ? 0 : 1;
}
