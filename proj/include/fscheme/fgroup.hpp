#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fscheme/tree.hpp"

namespace fscheme {

/// Element of Thompson's group F as a reduced tree pair (domain | range).
///
/// Products are read left to right as a right action: multiply(a, b) applies
/// a first and then b, so a path from g labelled by the word w ends at
/// g * eval(w). Under this convention x_j x_i = x_i x_{j+1} for i < j.
///
/// Base pairs:
///   x0 = ((..).) | (.(..))
///   x1 = (.((..).)) | (.(.(..)))
/// x_n for n >= 2 is x0^-(n-1) x1 x0^(n-1).
class FElement {
public:
    FElement() = default;  // identity: (. | .)
    /// Builds and reduces a pair; leaf counts must agree.
    FElement(TreeShape domain, TreeShape range);

    const TreeShape& domain() const noexcept { return domain_; }
    const TreeShape& range() const noexcept { return range_; }
    bool is_identity() const noexcept { return domain_.is_leaf(); }

    /// "domain|range" in canonical tree encoding; used as a vertex key.
    std::string encode() const;
    static FElement decode(std::string_view text);

    friend bool operator==(const FElement& a, const FElement& b) noexcept
    {
        return a.domain_ == b.domain_ && a.range_ == b.range_;
    }

private:
    TreeShape domain_;
    TreeShape range_;
};

FElement multiply(const FElement& a, const FElement& b);
FElement invert(const FElement& a);
FElement power(const FElement& a, int exponent);

FElement generator_x(unsigned n);
/// x1 * x0^-1.
FElement generator_xbar1();

struct Letter {
    std::string symbol;
    bool inverse = false;

    Letter inverted() const { return {symbol, !inverse}; }
    std::string name() const { return inverse ? symbol + "^-1" : symbol; }
    friend bool operator==(const Letter&, const Letter&) = default;
};

using GroupWord = std::vector<Letter>;

/// Whitespace-separated letters, each "sym" or "sym^-1"; "" is the empty word.
GroupWord parse_word(std::string_view text);
std::string format_word(const GroupWord& word);
GroupWord inverse_word(const GroupWord& word);
GroupWord concat(std::initializer_list<GroupWord> parts);
/// b^-1 a b
GroupWord conjugate_word(const GroupWord& a, const GroupWord& b);
/// a^-1 b^-1 a b
GroupWord commutator_word(const GroupWord& a, const GroupWord& b);

using Assignment = std::map<std::string, FElement, std::less<>>;

/// x0, x1, x2, xb1 bound to their tree pairs.
const Assignment& standard_assignment();

/// Product of assigned values in word order; throws PreconditionError for an
/// unassigned symbol.
FElement evaluate_word(const GroupWord& word, const Assignment& assignment);

/// Relators of the two-generator presentation with x1^(x0^2) = x1^(x0 x1)
/// and x1^(x0^3) = x1^(x0^2 x1).
std::vector<GroupWord> two_generator_relators();

/// Relators [a^b, b^a] and [a^b, b^(a^2)] with a = x1^-1, b = x0 x1^-1.
std::vector<GroupWord> symmetric_relators();

/// Letter-wise substitution x0 -> x0^-1, x1 -> x1 x0^-1.
/// Throws ParseError for letters outside {x0, x1}^{+-1}.
GroupWord apply_automorphism(const GroupWord& word);

struct AutomorphismReport {
    bool relators_preserved = false;
    bool involutive = false;
    bool commutator_image_nontrivial = false;

    bool ok() const { return relators_preserved && involutive && commutator_image_nontrivial; }
};

AutomorphismReport check_automorphism();

}  // namespace fscheme
