#include "opindent/rules.hpp"

#include <algorithm>

namespace opindent {

const char* to_string(QueryKind kind) noexcept
{
    switch (kind) {
    case QueryKind::BeforeToken: return "before";
    case QueryKind::AfterToken: return "after";
    case QueryKind::ElemBasic: return "elem-basic";
    case QueryKind::ListIntro: return "list-intro";
    }
    return "?";
}

std::optional<QueryKind> parse_query_kind(const std::string& name)
{
    for (auto k : {QueryKind::BeforeToken, QueryKind::AfterToken, QueryKind::ElemBasic, QueryKind::ListIntro})
        if (name == to_string(k))
            return k;
    return std::nullopt;
}

bool TokenMatcher::matches(const std::string& token) const
{
    return wildcard() || std::find(alternatives.begin(), alternatives.end(), token) != alternatives.end();
}

} // namespace opindent
