#include "fscheme/forests.hpp"

#include <map>
#include <unordered_map>

#include "fscheme/errors.hpp"

namespace fscheme {

std::size_t MarkedForest::leaves() const
{
    std::size_t total = 0;
    for (const auto& t : trees) total += t.leaves();
    return total;
}

std::string MarkedForest::encode() const
{
    std::string out;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        if (i) out.push_back(';');
        out += trees[i].encode();
        if (i == mark) out.push_back('*');
    }
    return out;
}

MarkedForest MarkedForest::decode(std::string_view text)
{
    MarkedForest forest;
    bool marked = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto semi = text.find(';', pos);
        if (semi == std::string_view::npos) semi = text.size();
        std::string_view part = text.substr(pos, semi - pos);
        if (part.ends_with('*')) {
            if (marked) throw ParseError("forest has more than one marked tree");
            marked = true;
            forest.mark = forest.trees.size();
            part.remove_suffix(1);
        }
        forest.trees.push_back(TreeShape::decode(part));
        pos = semi + 1;
    }
    if (!marked) throw ParseError("forest has no marked tree");
    return forest;
}

ForestLetter ForestLetter::parse(std::string_view name)
{
    ForestLetter letter;
    if (name.ends_with("^-1")) {
        letter.inverse = true;
        name.remove_suffix(3);
    }
    if (name == "x0")
        letter.generator = Generator::x0;
    else if (name == "x1")
        letter.generator = Generator::x1;
    else if (name == "xb1")
        letter.generator = Generator::xb1;
    else if (name == "x2")
        letter.generator = Generator::x2;
    else
        throw ParseError("no forest action for letter '" + std::string(name) + "'");
    return letter;
}

std::string ForestLetter::name() const
{
    static const char* names[] = {"x0", "x1", "xb1", "x2"};
    std::string out = names[static_cast<int>(generator)];
    return inverse ? out + "^-1" : out;
}

namespace {

std::optional<MarkedForest> merge_at(const MarkedForest& f, std::size_t left, std::size_t new_mark, int cap)
{
    if (left + 1 >= f.trees.size()) return std::nullopt;
    if (f.trees[left].height() >= cap || f.trees[left + 1].height() >= cap) return std::nullopt;
    MarkedForest out;
    out.trees.reserve(f.trees.size() - 1);
    out.trees.insert(out.trees.end(), f.trees.begin(), f.trees.begin() + static_cast<long>(left));
    out.trees.push_back(TreeShape::caret(f.trees[left], f.trees[left + 1]));
    out.trees.insert(out.trees.end(), f.trees.begin() + static_cast<long>(left) + 2, f.trees.end());
    out.mark = new_mark;
    return out;
}

std::optional<MarkedForest> split_marked(const MarkedForest& f, bool mark_right)
{
    const TreeShape& t = f.marked();
    if (t.is_leaf()) return std::nullopt;
    MarkedForest out;
    out.trees.reserve(f.trees.size() + 1);
    out.trees.insert(out.trees.end(), f.trees.begin(), f.trees.begin() + static_cast<long>(f.mark));
    out.trees.push_back(t.left());
    out.trees.push_back(t.right());
    out.trees.insert(out.trees.end(), f.trees.begin() + static_cast<long>(f.mark) + 1, f.trees.end());
    out.mark = f.mark + (mark_right ? 1 : 0);
    return out;
}

std::optional<MarkedForest> shift(const MarkedForest& f, bool left)
{
    if (left && f.mark == 0) return std::nullopt;
    if (!left && f.mark + 1 >= f.trees.size()) return std::nullopt;
    MarkedForest out = f;
    out.mark = left ? f.mark - 1 : f.mark + 1;
    return out;
}

}  // namespace

std::optional<MarkedForest> act(ForestLetter letter, const MarkedForest& forest, int height_cap)
{
    if (forest.mark >= forest.trees.size()) throw PreconditionError("marked forest with marker out of range");
    switch (letter.generator) {
        case Generator::x0:
            return shift(forest, !letter.inverse);
        case Generator::x1:
            if (!letter.inverse) return split_marked(forest, false);
            return merge_at(forest, forest.mark, forest.mark, height_cap);
        case Generator::xb1:
            if (!letter.inverse) return split_marked(forest, true);
            if (forest.mark == 0) return std::nullopt;
            return merge_at(forest, forest.mark - 1, forest.mark - 1, height_cap);
        case Generator::x2: {
            // x2 = x0^-1 x1 x0, x2^-1 = x0^-1 x1^-1 x0
            auto step = act({Generator::x0, true}, forest, height_cap);
            if (!step) return std::nullopt;
            step = act({Generator::x1, letter.inverse}, *step, height_cap);
            if (!step) return std::nullopt;
            return act({Generator::x0, false}, *step, height_cap);
        }
    }
    return std::nullopt;
}

namespace {

class TreeCatalog {
public:
    const std::vector<TreeShape>& trees(std::size_t leaves, int cap)
    {
        const auto key = std::make_pair(leaves, cap);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<TreeShape> out;
        if (leaves == 1) {
            out.emplace_back();
        } else if (cap > 0) {
            for (std::size_t i = 1; i < leaves; ++i) {
                const auto& left = trees(i, cap - 1);
                const auto& right = trees(leaves - i, cap - 1);
                for (const auto& l : left)
                    for (const auto& r : right) out.push_back(TreeShape::caret(l, r));
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    std::map<std::pair<std::size_t, int>, std::vector<TreeShape>> memo_;
};

void extend_forests(std::size_t remaining, int k, TreeCatalog& catalog, std::vector<TreeShape>& current,
                    std::vector<MarkedForest>& out, std::size_t budget)
{
    if (remaining == 0) {
        for (std::size_t mark = 0; mark < current.size(); ++mark) {
            if (out.size() >= budget)
                throw BudgetExceeded("BB enumeration exceeds budget of " + std::to_string(budget) + " forests");
            out.push_back({current, mark});
        }
        return;
    }
    for (std::size_t leaves = 1; leaves <= remaining; ++leaves) {
        const auto& trees = catalog.trees(leaves, k);
        for (const auto& t : trees) {
            current.push_back(t);
            extend_forests(remaining - leaves, k, catalog, current, out, budget);
            current.pop_back();
        }
    }
}

}  // namespace

std::vector<MarkedForest> enumerate_bb(std::size_t n, int k, std::size_t budget)
{
    if (n == 0) throw PreconditionError("BB(n, k) needs n >= 1");
    if (k < 0) throw PreconditionError("BB(n, k) needs k >= 0");
    TreeCatalog catalog;
    std::vector<TreeShape> current;
    std::vector<MarkedForest> out;
    extend_forests(n, k, catalog, current, out, budget);
    return out;
}

Automaton bb_automaton(std::size_t n, int k, const GenAlphabet& alphabet, std::size_t budget)
{
    std::vector<ForestLetter> letters;
    for (LetterId l = 0; l < alphabet.letter_count(); ++l) {
        ForestLetter letter = ForestLetter::parse(alphabet.base(symbol_of(l)));
        letter.inverse = is_inverse_letter(l);
        letters.push_back(letter);
    }
    const auto forests = enumerate_bb(n, k, budget);
    std::vector<std::string> keys;
    keys.reserve(forests.size());
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& f : forests) {
        index.emplace(f.encode(), keys.size());
        keys.push_back(f.encode());
    }
    const std::size_t width = alphabet.letter_count();
    std::vector<std::size_t> slots(forests.size() * width, kOutside);
    for (std::size_t v = 0; v < forests.size(); ++v)
        for (LetterId l = 0; l < width; ++l)
            if (auto next = act(letters[l], forests[v], k)) slots[v * width + l] = index.at(next->encode());
    return Automaton(alphabet, std::move(keys), std::move(slots));
}

bool in_y0(const MarkedForest& forest, int k)
{
    if (k < 1) return false;
    if (!forest.marked().is_leaf()) return false;
    if (forest.mark == 0 || forest.mark + 1 >= forest.trees.size()) return false;
    return forest.trees[forest.mark - 1].height() == k && forest.trees[forest.mark + 1].height() == k;
}

std::vector<MarkedForest> find_y0(std::size_t n, int k, std::size_t budget)
{
    std::vector<MarkedForest> out;
    if (k < 1) return out;
    for (auto& f : enumerate_bb(n, k, budget))
        if (in_y0(f, k)) out.push_back(std::move(f));
    return out;
}

}  // namespace fscheme
