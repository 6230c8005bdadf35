#include "opindent/cli.hpp"

#include "opindent/indent.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

namespace opindent {

namespace {

struct CliError {
    int code;
    std::string message;
};

struct Lines {
    std::vector<std::string> lines;
    bool final_newline = true;
};

Lines split_lines(const std::string& text)
{
    Lines out;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string::npos) {
            out.lines.push_back(text.substr(start));
            out.final_newline = false;
            break;
        }
        out.lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CliError{kExitIo, path + ": cannot read file"};
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw CliError{kExitIo, path + ": read error"};
    return ss.str();
}

void write_file_atomically(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::random_device rd;
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".opindent-" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw CliError{kExitIo, tmp.string() + ": cannot create temporary file"};
        out << content;
        out.close();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw CliError{kExitIo, tmp.string() + ": write error"};
        }
    }
    std::error_code ec;
    const auto perms = fs::status(target, ec).permissions();
    if (!ec)
        fs::permissions(tmp, perms, ec);
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw CliError{kExitIo, path + ": cannot replace file"};
    }
}

LangDef select_language(const std::string& lang, const std::string& def)
{
    if (lang.empty() == def.empty())
        throw CliError{kExitIo, "exactly one of --lang or --def is required"};
    try {
        return def.empty() ? find_language(lang) : load_langdef(def);
    } catch (const LangDefError& e) {
        throw CliError{kExitLangDef, e.what()};
    }
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& spec, std::size_t line_count)
{
    if (spec.empty())
        return {1, line_count};
    const auto colon = spec.find(':');
    std::size_t a = 0, b = 0;
    try {
        if (colon == std::string::npos)
            throw std::invalid_argument("missing ':'");
        std::size_t used = 0;
        a = std::stoul(spec.substr(0, colon), &used);
        if (used != colon)
            throw std::invalid_argument("junk");
        const std::string rest = spec.substr(colon + 1);
        b = std::stoul(rest, &used);
        if (used != rest.size())
            throw std::invalid_argument("junk");
    } catch (const std::exception&) {
        throw CliError{kExitIo, "--lines expects A:B with 1 <= A <= B"};
    }
    if (a < 1 || a > b)
        throw CliError{kExitIo, "--lines expects A:B with 1 <= A <= B"};
    if (a > line_count)
        throw CliError{kExitIo, "--lines " + spec + ": the file has " + std::to_string(line_count) + " lines"};
    return {a, std::min(b, line_count)};
}

struct Reindented {
    std::string before;
    std::string after;
    bool fuse = false;
};

Reindented reindent(const std::string& path, const LangDef& lang, const std::string& lines)
{
    Reindented r;
    r.before = read_file(path);
    Buffer buf = Buffer::from_utf8(r.before);
    const auto [first, last] = parse_range(lines, buf.line_count());
    Engine engine(buf, lang);
    engine.set_token_fuse(kCliTokenFuse);
    Indenter ind(engine);
    if (!buf.empty())
        ind.indent_region(first, last);
    r.after = buf.to_utf8();
    r.fuse = engine.fuse_tripped();
    return r;
}

void fuse_notice(std::ostream& err, const std::string& path)
{
    err << path << ": navigation stopped by the " << kCliTokenFuse << "-token safety fuse; result truncated\n";
}

int cmd_indent(const std::vector<std::string>& files, const LangDef& lang, const std::string& lines,
               const std::string& mode, std::ostream& out, std::ostream& err)
{
    int code = kExitOk;
    for (const auto& path : files) {
        const Reindented r = reindent(path, lang, lines);
        if (mode == "in-place") {
            if (r.after != r.before)
                write_file_atomically(path, r.after);
        } else if (mode == "diff") {
            out << unified_line_diff(r.before, r.after, path);
        } else {
            out << r.after;
        }
        if (r.fuse) {
            fuse_notice(err, path);
            code = kExitFuse;
        }
    }
    return code;
}

int cmd_check(const std::vector<std::string>& files, const LangDef& lang, const std::string& lines,
              std::ostream& out, std::ostream& err)
{
    int code = kExitOk;
    for (const auto& path : files) {
        const Reindented r = reindent(path, lang, lines);
        if (r.fuse) {
            fuse_notice(err, path);
            code = kExitFuse;
            continue;
        }
        if (r.after == r.before)
            continue;
        const Lines a = split_lines(r.before), b = split_lines(r.after);
        for (std::size_t i = 0; i < std::min(a.lines.size(), b.lines.size()); ++i) {
            if (a.lines[i] == b.lines[i])
                continue;
            const auto indent = [](const std::string& s) { return s.find_first_not_of(" \t\f\v\r") ; };
            out << path << ":" << (i + 1) << ": expected indentation " << indent(b.lines[i]) << ", found "
                << indent(a.lines[i]) << "\n";
            break;
        }
        if (code == kExitOk)
            code = kExitCheckFailed;
    }
    return code;
}

std::string crossed_text(const Buffer& buf, std::size_t from, std::size_t to)
{
    if (from > to)
        std::swap(from, to);
    std::string s = buf.slice_utf8(from, to);
    const auto b = s.find_first_not_of(" \t\n\r\f\v");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\n\r\f\v");
    return s.substr(b, e - b + 1);
}

int cmd_nav(const std::string& path, const LangDef& lang, long long pos, const std::string& dir_name, bool halfsexp,
            const std::optional<std::string>& target, std::ostream& out, std::ostream& err)
{
    Buffer buf = Buffer::from_utf8(read_file(path));
    if (pos < 0 || static_cast<std::size_t>(pos) > buf.size())
        throw CliError{kExitIo, "--pos " + std::to_string(pos) + " outside 0.." + std::to_string(buf.size())};
    const Direction dir = dir_name == "forward" ? Direction::Forward : Direction::Backward;
    Engine engine(buf, lang);
    engine.set_token_fuse(kCliTokenFuse);
    Cursor c(buf, static_cast<std::size_t>(pos));
    NavResult r;
    try {
        r = next_sexp(engine, c, dir, halfsexp ? NavMode::HalfSexp : NavMode::Sexp, target);
    } catch (const std::invalid_argument& e) {
        throw CliError{kExitIo, e.what()};
    }
    std::size_t stop = r.landing;
    if (r.token)
        stop = dir == Direction::Backward ? r.token->end : r.token->start;
    out << to_string(r.outcome);
    if (r.token)
        out << " " << r.token->text;
    out << " @" << r.landing << " crossed=" << nlohmann::json(crossed_text(buf, stop, pos)).dump() << "\n";
    if (r.truncated) {
        fuse_notice(err, path);
        return kExitFuse;
    }
    return kExitOk;
}

int cmd_grammar_compile(const std::string& lang_name, const std::string& def, bool dump_prec2, std::ostream& out)
{
    if (lang_name.empty() == def.empty())
        throw CliError{kExitIo, "exactly one of --lang or --def is required"};
    LangDef lang;
    try {
        lang = def.empty() ? find_language(lang_name) : load_langdef(def);
    } catch (const LangDefError& e) {
        if (e.grammar_error) {
            using K = GrammarError::Kind;
            const K k = e.grammar_error->kind;
            if (k == K::MergeConflict || k == K::UnresolvedConflict || k == K::Unsatisfiable) {
                std::string detail;
                for (const auto& d : e.grammar_error->detail)
                    detail += (detail.empty() ? "" : " ") + quote_token(d);
                throw CliError{kExitGrammar, std::string(e.what()) + (detail.empty() ? "" : "\n  involved: " + detail)};
            }
        }
        throw CliError{kExitLangDef, e.what()};
    }
    if (dump_prec2)
        out << format_prec2(lang.prec2()) << "\n";
    out << format_grammar(lang.grammar());
    return kExitOk;
}

} // namespace

std::string unified_line_diff(const std::string& before, const std::string& after, const std::string& label)
{
    if (before == after)
        return "";
    const Lines a = split_lines(before), b = split_lines(after);
    const std::size_t n = std::max(a.lines.size(), b.lines.size());
    const auto differs = [&](std::size_t i) {
        if (i >= a.lines.size() || i >= b.lines.size())
            return true;
        if (a.lines[i] != b.lines[i])
            return true;
        const bool last_a = i + 1 == a.lines.size(), last_b = i + 1 == b.lines.size();
        return (last_a && !a.final_newline) != (last_b && !b.final_newline);
    };
    constexpr std::size_t kContext = 3;

    std::ostringstream out;
    out << "--- " << label << "\n+++ " << label << "\n";
    std::size_t i = 0;
    while (i < n) {
        if (!differs(i)) {
            ++i;
            continue;
        }
        std::size_t lo = i >= kContext ? i - kContext : 0;
        std::size_t hi = i;
        std::size_t quiet = 0;
        for (std::size_t k = i; k < n; ++k) {
            if (differs(k)) {
                hi = k + 1;
                quiet = 0;
            } else if (++quiet > 2 * kContext) {
                break;
            }
        }
        hi = std::min(n, hi + kContext);
        const std::size_t a_end = std::min(hi, a.lines.size()), b_end = std::min(hi, b.lines.size());
        const std::size_t a_len = a_end > lo ? a_end - lo : 0, b_len = b_end > lo ? b_end - lo : 0;
        out << "@@ -" << (a_len ? lo + 1 : lo) << "," << a_len << " +" << (b_len ? lo + 1 : lo) << "," << b_len
            << " @@\n";
        const auto line = [&](char tag, const Lines& src, std::size_t k) {
            out << tag << src.lines[k] << "\n";
            if (k + 1 == src.lines.size() && !src.final_newline)
                out << "\\ No newline at end of file\n";
        };
        for (std::size_t k = lo; k < hi;) {
            if (!differs(k)) {
                line(' ', a, k);
                ++k;
                continue;
            }
            std::size_t run = k;
            while (run < hi && differs(run))
                ++run;
            for (std::size_t m = k; m < run && m < a.lines.size(); ++m)
                line('-', a, m);
            for (std::size_t m = k; m < run && m < b.lines.size(); ++m)
                line('+', b, m);
            k = run;
        }
        i = hi;
    }
    return out.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Operator-precedence indentation engine"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string lang_name, def_path, lines;
    bool to_stdout = false, in_place = false, diff = false;

    const auto add_lang = [&](CLI::App* sub) {
        auto* l = sub->add_option("--lang", lang_name, "bundled language or <name>.lang.json on OPINDENT_LANG_PATH");
        auto* d = sub->add_option("--def", def_path, "language definition file");
        l->excludes(d);
    };

    auto* indent = app.add_subcommand("indent", "reindent files");
    indent->add_option("files", files, "input files")->required();
    add_lang(indent);
    indent->add_option("--lines", lines, "line range A:B (1-based, inclusive)");
    auto* o_stdout = indent->add_flag("--stdout", to_stdout, "print the result (default)");
    auto* o_inplace = indent->add_flag("--in-place", in_place, "rewrite the files");
    auto* o_diff = indent->add_flag("--diff", diff, "print a unified diff");
    o_stdout->excludes(o_inplace)->excludes(o_diff);
    o_inplace->excludes(o_diff);

    auto* check = app.add_subcommand("check", "exit 1 when reindenting would change a file");
    check->add_option("files", files, "input files")->required();
    add_lang(check);
    check->add_option("--lines", lines, "line range A:B (1-based, inclusive)");

    std::string nav_file, dir_name = "backward";
    long long pos = -1;
    bool halfsexp = false;
    std::string token;
    auto* nav = app.add_subcommand("nav", "navigate over one sub-expression");
    nav->add_option("file", nav_file, "input file")->required();
    add_lang(nav);
    nav->add_option("--pos", pos, "character offset")->required();
    nav->add_option("--dir", dir_name, "backward or forward")->check(CLI::IsMember({"backward", "forward"}));
    nav->add_flag("--halfsexp", halfsexp, "skip the far operand of the first keyword");
    auto* o_token = nav->add_option("--token", token, "target keyword");

    bool dump_prec2 = false;
    auto* gc = app.add_subcommand("grammar-compile", "print the solved precedence levels");
    add_lang(gc);
    gc->add_flag("--dump-prec2", dump_prec2, "also print the merged relation table");
    auto* grammar = app.add_subcommand("grammar", "grammar tools");
    grammar->require_subcommand(1);
    auto* gc_nested = grammar->add_subcommand("compile", "same as grammar-compile");
    add_lang(gc_nested);
    gc_nested->add_flag("--dump-prec2", dump_prec2, "also print the merged relation table");

    std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_rest.begin(), argv_rest.end());
    try {
        app.parse(argv_rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "opindent: " << e.what() << "\n";
        return kExitIo;
    }

    try {
        if (gc->parsed() || gc_nested->parsed())
            return cmd_grammar_compile(lang_name, def_path, dump_prec2, out);
        const LangDef lang = select_language(lang_name, def_path);
        if (indent->parsed())
            return cmd_indent(files, lang, lines, in_place ? "in-place" : diff ? "diff" : "stdout", out, err);
        if (check->parsed())
            return cmd_check(files, lang, lines, out, err);
        if (nav->parsed())
            return cmd_nav(nav_file, lang, pos, dir_name, halfsexp,
                           o_token->count() ? std::optional<std::string>(token) : std::nullopt, out, err);
    } catch (const CliError& e) {
        err << "opindent: " << e.message << "\n";
        return e.code;
    } catch (const RangeError& e) {
        err << "opindent: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

} // namespace opindent
