// Language definitions: syntax table, grammar sources, lexer customizations
// and indentation rules, loaded from `.lang.json` files or bundled.
#pragma once

#include "opindent/grammar.hpp"
#include "opindent/lexer.hpp"
#include "opindent/rules.hpp"
#include "opindent/syntax.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace opindent {

/// Load or validation failure.  `location` is "<origin>" or
/// "<origin>:<json-pointer>" for validation errors and "<origin>:<line>:<col>"
/// for parse errors.
class LangDefError : public std::runtime_error {
public:
    LangDefError(std::string location, const std::string& message,
                 std::optional<GrammarError> grammar_error = std::nullopt)
        : std::runtime_error(location + ": " + message), location(std::move(location)),
          message(message), grammar_error(std::move(grammar_error))
    {
    }

    std::string location;
    std::string message;
    /// Set when the failure came from grammar compilation.
    std::optional<GrammarError> grammar_error;
};

struct ExplicitRelation {
    std::string left;
    std::string right;
    Rel rel = Rel::EQ;
    friend bool operator==(const ExplicitRelation&, const ExplicitRelation&) = default;
};

struct GrammarSources {
    std::optional<BnfSpec> bnf;
    std::vector<PrecLevelList> precedences;
    std::vector<ExplicitRelation> prec2;

    bool empty() const noexcept { return !bnf && precedences.empty() && prec2.empty(); }
};

using CodedLexer = std::function<std::optional<Token>(SyntaxScanner&, Cursor&, Direction)>;

class LangDef {
public:
    std::string name;
    /// Where the definition came from, used in error locations.
    std::string origin;
    SyntaxTable syntax = SyntaxTable::standard();
    /// How `syntax` was declared, kept for serialization.
    std::string syntax_base = "standard";
    GrammarSources grammar_sources;
    LexerSpec lexer_spec;
    IndentRuleSet rules;
    std::set<std::string> atoms;
    /// Replaces the declarative lexer when set.
    CodedLexer coded_lexer;

    /// Runs every load-time check and builds the compiled members below.
    /// Throws LangDefError.
    void compile();

    const Prec2Table& prec2() const noexcept { return prec2_; }
    const PrecGrammar& grammar() const noexcept { return grammar_; }
    const CompiledLexer& lexer() const noexcept { return lexer_; }
    bool compiled() const noexcept { return compiled_; }

    /// Keywords related by EQ to some other keyword (the inner keywords of
    /// multi-keyword constructs such as "then" or "in").
    bool is_construct_keyword(const std::string& token) const { return construct_keywords_.count(token) > 0; }

    /// The keyword is related to itself by EQ: chained operands are siblings.
    bool is_associative(const std::string& token) const { return prec2_.get(token, token) == Rel::EQ; }

    std::optional<Token> next_token(SyntaxScanner& scanner, Cursor& cursor, Direction dir) const;

private:
    Prec2Table prec2_;
    PrecGrammar grammar_;
    CompiledLexer lexer_;
    std::set<std::string> construct_keywords_;
    bool compiled_ = false;
};

LangDef parse_langdef(std::string_view json_text, const std::string& origin);
LangDef load_langdef(const std::filesystem::path& file);
/// JSON text that parse_langdef accepts and that compiles to the same
/// relations.  Coded hooks and lexers are not serializable and are dropped.
std::string serialize_langdef(const LangDef& def);

/// toy, rnc and mini-sml, compiled.
std::vector<LangDef> bundled_languages();
std::vector<std::string> bundled_language_names();
/// A bundled language, or `<name>.lang.json` from a directory listed in
/// OPINDENT_LANG_PATH (colon separated; searched first).
LangDef find_language(const std::string& name);

} // namespace opindent
