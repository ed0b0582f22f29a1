#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fscheme/fgroup.hpp"

namespace fscheme {

/// Letters of A^{+-1} are numbered 2i (symbol i) and 2i+1 (its inverse).
using LetterId = std::size_t;

constexpr LetterId inverse_letter(LetterId l) noexcept { return l ^ 1U; }
constexpr std::size_t symbol_of(LetterId l) noexcept { return l / 2; }
constexpr bool is_inverse_letter(LetterId l) noexcept { return (l & 1U) != 0; }

/// Ordered list of m formal symbols, optionally bound to elements of F.
/// Distinct symbols may carry equal values (a multiset of generators).
class GenAlphabet {
public:
    GenAlphabet(std::vector<std::string> symbols, std::vector<std::optional<FElement>> values);

    /// Comma-separated generator names from {x0, x1, xb1, x2}; repeats allowed.
    /// The second and later copies of a generator get the symbols "<gen>_2",
    /// "<gen>_3", ... so "x1,xb1,x0,x0" has symbols x1, xb1, x0, x0_2.
    static GenAlphabet parse(std::string_view spec);
    /// Symbols without group values (abstract automata).
    static GenAlphabet abstract(std::vector<std::string> symbols);

    std::size_t rank() const noexcept { return symbols_.size(); }
    std::size_t letter_count() const noexcept { return 2 * symbols_.size(); }

    const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    /// Generator name of a symbol: "x0_2" -> "x0".
    std::string base(std::size_t i) const;

    /// "x0" or "x0^-1".
    std::string letter_name(LetterId l) const;
    std::optional<LetterId> find_letter(std::string_view name) const;

    bool has_values() const noexcept;
    const std::optional<FElement>& value(std::size_t i) const { return values_.at(i); }
    /// Throws PreconditionError if the symbol has no value.
    FElement letter_value(LetterId l) const;

    /// Comma-separated generator names, the inverse of parse().
    std::string spec() const;

    friend bool operator==(const GenAlphabet& a, const GenAlphabet& b)
    {
        return a.symbols_ == b.symbols_ && a.values_ == b.values_;
    }

private:
    std::vector<std::string> symbols_;
    std::vector<std::optional<FElement>> values_;
};

}  // namespace fscheme
