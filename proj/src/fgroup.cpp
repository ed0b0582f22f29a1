#include "fscheme/fgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <iterator>
#include <sstream>

#include "fscheme/errors.hpp"

namespace fscheme {

namespace {

void reduce_pair(TreeShape& domain, TreeShape& range)
{
    for (;;) {
        const auto left = exposed_carets(domain);
        const auto right = exposed_carets(range);
        std::vector<std::size_t> common;
        std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(common));
        if (common.empty()) return;
        domain = collapse_caret(domain, common.front());
        range = collapse_caret(range, common.front());
    }
}

const TreeShape kLeaf{};

TreeShape caret(const TreeShape& l, const TreeShape& r) { return TreeShape::caret(l, r); }

}  // namespace

FElement::FElement(TreeShape domain, TreeShape range) : domain_(std::move(domain)), range_(std::move(range))
{
    if (domain_.leaves() != range_.leaves()) throw PreconditionError("tree pair with unequal leaf counts");
    reduce_pair(domain_, range_);
}

std::string FElement::encode() const { return domain_.encode() + "|" + range_.encode(); }

FElement FElement::decode(std::string_view text)
{
    const auto bar = text.find('|');
    if (bar == std::string_view::npos) throw ParseError("tree pair encoding needs 'domain|range'");
    TreeShape domain = TreeShape::decode(text.substr(0, bar));
    TreeShape range = TreeShape::decode(text.substr(bar + 1));
    if (domain.leaves() != range.leaves()) throw ParseError("tree pair with unequal leaf counts");
    return FElement(std::move(domain), std::move(range));
}

FElement multiply(const FElement& a, const FElement& b)
{
    const TreeShape common = tree_union(a.range(), b.domain());
    const auto below_a = hanging_subtrees(a.range(), common);
    const auto below_b = hanging_subtrees(b.domain(), common);
    return FElement(graft(a.domain(), below_a), graft(b.range(), below_b));
}

FElement invert(const FElement& a) { return FElement(a.range(), a.domain()); }

FElement power(const FElement& a, int exponent)
{
    const FElement base = exponent < 0 ? invert(a) : a;
    FElement result;
    for (int i = 0; i < std::abs(exponent); ++i) result = multiply(result, base);
    return result;
}

FElement generator_x(unsigned n)
{
    static const FElement x0(caret(caret(kLeaf, kLeaf), kLeaf), caret(kLeaf, caret(kLeaf, kLeaf)));
    static const FElement x1(caret(kLeaf, caret(caret(kLeaf, kLeaf), kLeaf)),
                             caret(kLeaf, caret(kLeaf, caret(kLeaf, kLeaf))));
    if (n == 0) return x0;
    if (n == 1) return x1;
    const int shift = static_cast<int>(n) - 1;
    return multiply(multiply(power(x0, -shift), x1), power(x0, shift));
}

FElement generator_xbar1() { return multiply(generator_x(1), invert(generator_x(0))); }

GroupWord parse_word(std::string_view text)
{
    GroupWord word;
    std::istringstream in{std::string(text)};
    std::string token;
    while (in >> token) {
        Letter letter;
        if (token.size() > 3 && token.ends_with("^-1")) {
            letter.symbol = token.substr(0, token.size() - 3);
            letter.inverse = true;
        } else {
            letter.symbol = token;
        }
        if (letter.symbol.empty() || letter.symbol.find('^') != std::string::npos)
            throw ParseError("bad letter '" + token + "'");
        word.push_back(std::move(letter));
    }
    return word;
}

std::string format_word(const GroupWord& word)
{
    std::string out;
    for (const auto& letter : word) {
        if (!out.empty()) out.push_back(' ');
        out += letter.name();
    }
    return out;
}

GroupWord inverse_word(const GroupWord& word)
{
    GroupWord out;
    out.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(it->inverted());
    return out;
}

GroupWord concat(std::initializer_list<GroupWord> parts)
{
    GroupWord out;
    for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

GroupWord conjugate_word(const GroupWord& a, const GroupWord& b) { return concat({inverse_word(b), a, b}); }

GroupWord commutator_word(const GroupWord& a, const GroupWord& b)
{
    return concat({inverse_word(a), inverse_word(b), a, b});
}

const Assignment& standard_assignment()
{
    static const Assignment table = {
        {"x0", generator_x(0)},
        {"x1", generator_x(1)},
        {"x2", generator_x(2)},
        {"xb1", generator_xbar1()},
    };
    return table;
}

FElement evaluate_word(const GroupWord& word, const Assignment& assignment)
{
    FElement result;
    for (const auto& letter : word) {
        const auto it = assignment.find(letter.symbol);
        if (it == assignment.end()) throw PreconditionError("unassigned symbol '" + letter.symbol + "'");
        result = multiply(result, letter.inverse ? invert(it->second) : it->second);
    }
    return result;
}

std::vector<GroupWord> two_generator_relators()
{
    const GroupWord x0 = parse_word("x0");
    const GroupWord x1 = parse_word("x1");
    std::vector<GroupWord> out;
    for (int e = 2; e <= 3; ++e) {
        GroupWord pow, pow_less;
        for (int i = 0; i < e; ++i) pow.push_back({"x0", false});
        for (int i = 0; i < e - 1; ++i) pow_less.push_back({"x0", false});
        const GroupWord lhs = conjugate_word(x1, pow);
        const GroupWord rhs = conjugate_word(x1, concat({pow_less, x1}));
        out.push_back(concat({lhs, inverse_word(rhs)}));
    }
    return out;
}

std::vector<GroupWord> symmetric_relators()
{
    const GroupWord alpha = parse_word("x1^-1");
    const GroupWord beta = parse_word("x0 x1^-1");
    const GroupWord a_b = conjugate_word(alpha, beta);
    const GroupWord b_a = conjugate_word(beta, alpha);
    const GroupWord b_aa = conjugate_word(beta, concat({alpha, alpha}));
    return {commutator_word(a_b, b_a), commutator_word(a_b, b_aa)};
}

GroupWord apply_automorphism(const GroupWord& word)
{
    static const GroupWord x0_image = parse_word("x0^-1");
    static const GroupWord x1_image = parse_word("x1 x0^-1");
    GroupWord out;
    for (const auto& letter : word) {
        const GroupWord* image = nullptr;
        if (letter.symbol == "x0")
            image = &x0_image;
        else if (letter.symbol == "x1")
            image = &x1_image;
        else
            throw ParseError("automorphism is defined on x0, x1 only; got '" + letter.symbol + "'");
        const GroupWord piece = letter.inverse ? inverse_word(*image) : *image;
        out.insert(out.end(), piece.begin(), piece.end());
    }
    return out;
}

AutomorphismReport check_automorphism()
{
    const auto& values = standard_assignment();
    AutomorphismReport report;
    report.relators_preserved = true;
    for (const auto& relator : two_generator_relators())
        report.relators_preserved =
            report.relators_preserved && evaluate_word(apply_automorphism(relator), values).is_identity();

    const GroupWord x0 = parse_word("x0");
    const GroupWord x1 = parse_word("x1");
    report.involutive = evaluate_word(apply_automorphism(apply_automorphism(x0)), values) == generator_x(0) &&
                        evaluate_word(apply_automorphism(apply_automorphism(x1)), values) == generator_x(1);

    report.commutator_image_nontrivial =
        !evaluate_word(apply_automorphism(commutator_word(x0, x1)), values).is_identity();
    return report;
}

}  // namespace fscheme
