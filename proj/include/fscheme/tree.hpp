#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fscheme {

/// Immutable rooted binary tree. A default-constructed tree is the trivial
/// (one-leaf) tree; larger trees are built with caret(). Subtrees are shared.
///
/// Canonical text form: a leaf is ".", a caret is "(" left right ")".
/// So "(..)" is a single caret and "((..).)" has three leaves.
class TreeShape {
public:
    TreeShape() = default;

    static TreeShape caret(TreeShape left, TreeShape right);

    bool is_leaf() const noexcept { return node_ == nullptr; }
    const TreeShape& left() const;
    const TreeShape& right() const;

    std::size_t leaves() const noexcept;
    int height() const noexcept;

    std::string encode() const;
    static TreeShape decode(std::string_view text);

    friend bool operator==(const TreeShape& a, const TreeShape& b) noexcept;

private:
    struct Node;
    explicit TreeShape(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    void encode_into(std::string& out) const;

    std::shared_ptr<const Node> node_;
};

/// Smallest tree having both a and b as rooted subtrees (common refinement).
TreeShape tree_union(const TreeShape& a, const TreeShape& b);

/// Subtrees of `full` hanging below the leaves of `prefix`, left to right.
/// Throws PreconditionError unless `prefix` is a rooted subtree of `full`.
std::vector<TreeShape> hanging_subtrees(const TreeShape& prefix, const TreeShape& full);

/// Replaces leaf i of `tree` by parts[i]; parts.size() must equal tree.leaves().
TreeShape graft(const TreeShape& tree, std::span<const TreeShape> parts);

/// Leaf indices i such that leaves i and i+1 are the two children of one caret.
std::vector<std::size_t> exposed_carets(const TreeShape& tree);

/// Removes the exposed caret whose left leaf has index `leaf`.
TreeShape collapse_caret(const TreeShape& tree, std::size_t leaf);

}  // namespace fscheme
