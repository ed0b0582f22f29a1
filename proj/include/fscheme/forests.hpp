#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fscheme/automaton.hpp"
#include "fscheme/tree.hpp"

namespace fscheme {

inline constexpr std::size_t kDefaultBudget = 10'000'000;

/// Ordered forest of rooted binary trees with one marked tree.
///
/// Text form: tree encodings joined by ';' with '*' after the marked tree,
/// e.g. "(..);.*;(..)". Forests are drawn with roots on top; the mirrored
/// drawing has the same adjacency, so only this orientation is implemented.
struct MarkedForest {
    std::vector<TreeShape> trees;
    std::size_t mark = 0;

    std::size_t leaves() const;
    const TreeShape& marked() const { return trees.at(mark); }

    std::string encode() const;
    static MarkedForest decode(std::string_view text);

    friend bool operator==(const MarkedForest&, const MarkedForest&) = default;
};

enum class Generator { x0, x1, xb1, x2 };

struct ForestLetter {
    Generator generator = Generator::x0;
    bool inverse = false;

    ForestLetter inverted() const { return {generator, !inverse}; }
    /// Accepts "x0", "x1", "xb1", "x2", optionally with "^-1".
    static ForestLetter parse(std::string_view name);
    std::string name() const;
};

/// Partial right action of F on marked forests with all heights <= height_cap.
///   x0: marker one tree left;  x0^-1: one tree right.
///   x1: split the marked caret, mark its left part;  xb1: mark the right part.
///   x1^-1: merge the marked tree with its right neighbour;
///   xb1^-1: merge the left neighbour with the marked tree. Both merges need
///           both trees of height < height_cap.
///   x2 = x0^-1 x1 x0 and its inverse, applied step by step.
/// Returns nullopt where the action is undefined.
std::optional<MarkedForest> act(ForestLetter letter, const MarkedForest& forest, int height_cap);

/// All marked forests with n leaves and every tree of height <= k.
/// Throws BudgetExceeded once more than `budget` forests would be produced.
std::vector<MarkedForest> enumerate_bb(std::size_t n, int k, std::size_t budget = kDefaultBudget);

/// BB(n, k) as an automaton over an alphabet whose symbols name x0, x1, xb1
/// or x2 (repeats allowed). Vertex keys are forest encodings.
Automaton bb_automaton(std::size_t n, int k, const GenAlphabet& alphabet, std::size_t budget = kDefaultBudget);

/// Forests of BB(n, k) whose marked tree is trivial and has a left and a right
/// neighbour, both of height exactly k. Empty for k = 0.
std::vector<MarkedForest> find_y0(std::size_t n, int k, std::size_t budget = kDefaultBudget);

bool in_y0(const MarkedForest& forest, int k);

}  // namespace fscheme
