#include "fscheme/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "fscheme/errors.hpp"

namespace fscheme {

GenAlphabet::GenAlphabet(std::vector<std::string> symbols, std::vector<std::optional<FElement>> values)
    : symbols_(std::move(symbols)), values_(std::move(values))
{
    if (symbols_.empty()) throw PreconditionError("alphabet needs at least one symbol");
    if (values_.size() != symbols_.size()) throw PreconditionError("alphabet: one value slot per symbol");
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty() || s.find_first_of("^ ,") != std::string::npos)
            throw ParseError("bad alphabet symbol '" + s + "'");
        if (!seen.insert(s).second) throw ParseError("duplicate alphabet symbol '" + s + "'");
    }
}

GenAlphabet GenAlphabet::parse(std::string_view spec)
{
    const auto& known = standard_assignment();
    std::vector<std::string> symbols;
    std::vector<std::optional<FElement>> values;
    std::map<std::string, int> copies;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        auto comma = spec.find(',', pos);
        if (comma == std::string_view::npos) comma = spec.size();
        std::string token(spec.substr(pos, comma - pos));
        token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                    token.end());
        const auto it = known.find(token);
        if (it == known.end()) throw ParseError("unknown generator '" + token + "' (expected x0, x1, xb1, x2)");
        const int copy = ++copies[token];
        symbols.push_back(copy == 1 ? token : token + "_" + std::to_string(copy));
        values.emplace_back(it->second);
        pos = comma + 1;
    }
    return GenAlphabet(std::move(symbols), std::move(values));
}

GenAlphabet GenAlphabet::abstract(std::vector<std::string> symbols)
{
    std::vector<std::optional<FElement>> values(symbols.size());
    return GenAlphabet(std::move(symbols), std::move(values));
}

std::string GenAlphabet::base(std::size_t i) const
{
    const std::string& s = symbol(i);
    const auto underscore = s.rfind('_');
    if (underscore == std::string::npos || underscore + 1 == s.size()) return s;
    const bool numeric = std::all_of(s.begin() + static_cast<long>(underscore) + 1, s.end(),
                                     [](unsigned char c) { return std::isdigit(c); });
    return numeric ? s.substr(0, underscore) : s;
}

std::string GenAlphabet::letter_name(LetterId l) const
{
    const std::string& s = symbol(symbol_of(l));
    return is_inverse_letter(l) ? s + "^-1" : s;
}

std::optional<LetterId> GenAlphabet::find_letter(std::string_view name) const
{
    bool inverse = false;
    if (name.ends_with("^-1")) {
        inverse = true;
        name.remove_suffix(3);
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] == name) return 2 * i + (inverse ? 1 : 0);
    return std::nullopt;
}

bool GenAlphabet::has_values() const noexcept
{
    return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
}

FElement GenAlphabet::letter_value(LetterId l) const
{
    const auto& v = value(symbol_of(l));
    if (!v) throw PreconditionError("symbol '" + symbol(symbol_of(l)) + "' has no group value");
    return is_inverse_letter(l) ? invert(*v) : *v;
}

std::string GenAlphabet::spec() const
{
    std::string out;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (i) out.push_back(',');
        out += base(i);
    }
    return out;
}

}  // namespace fscheme
