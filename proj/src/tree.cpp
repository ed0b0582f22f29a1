#include "fscheme/tree.hpp"

#include <algorithm>

#include "fscheme/errors.hpp"

namespace fscheme {

struct TreeShape::Node {
    TreeShape left;
    TreeShape right;
    std::size_t leaves;
    int height;
};

TreeShape TreeShape::caret(TreeShape left, TreeShape right)
{
    const std::size_t leaves = left.leaves() + right.leaves();
    const int height = std::max(left.height(), right.height()) + 1;
    return TreeShape(std::make_shared<const Node>(Node{std::move(left), std::move(right), leaves, height}));
}

const TreeShape& TreeShape::left() const
{
    if (!node_) throw PreconditionError("left() of trivial tree");
    return node_->left;
}

const TreeShape& TreeShape::right() const
{
    if (!node_) throw PreconditionError("right() of trivial tree");
    return node_->right;
}

std::size_t TreeShape::leaves() const noexcept { return node_ ? node_->leaves : 1; }

int TreeShape::height() const noexcept { return node_ ? node_->height : 0; }

void TreeShape::encode_into(std::string& out) const
{
    if (!node_) {
        out.push_back('.');
        return;
    }
    out.push_back('(');
    node_->left.encode_into(out);
    node_->right.encode_into(out);
    out.push_back(')');
}

std::string TreeShape::encode() const
{
    std::string out;
    out.reserve(3 * leaves());
    encode_into(out);
    return out;
}

namespace {

TreeShape parse_tree(std::string_view text, std::size_t& pos)
{
    if (pos >= text.size()) throw ParseError("tree encoding truncated");
    const char c = text[pos++];
    if (c == '.') return TreeShape{};
    if (c != '(') throw ParseError(std::string("unexpected character '") + c + "' in tree encoding");
    TreeShape left = parse_tree(text, pos);
    TreeShape right = parse_tree(text, pos);
    if (pos >= text.size() || text[pos] != ')') throw ParseError("expected ')' in tree encoding");
    ++pos;
    return TreeShape::caret(std::move(left), std::move(right));
}

void collect_hanging(const TreeShape& prefix, const TreeShape& full, std::vector<TreeShape>& out)
{
    if (prefix.is_leaf()) {
        out.push_back(full);
        return;
    }
    if (full.is_leaf()) throw PreconditionError("tree is not a rooted subtree of its refinement");
    collect_hanging(prefix.left(), full.left(), out);
    collect_hanging(prefix.right(), full.right(), out);
}

TreeShape graft_from(const TreeShape& tree, std::span<const TreeShape> parts, std::size_t& next)
{
    if (tree.is_leaf()) return parts[next++];
    TreeShape left = graft_from(tree.left(), parts, next);
    TreeShape right = graft_from(tree.right(), parts, next);
    return TreeShape::caret(std::move(left), std::move(right));
}

void collect_exposed(const TreeShape& tree, std::size_t offset, std::vector<std::size_t>& out)
{
    if (tree.is_leaf()) return;
    if (tree.left().is_leaf() && tree.right().is_leaf()) {
        out.push_back(offset);
        return;
    }
    collect_exposed(tree.left(), offset, out);
    collect_exposed(tree.right(), offset + tree.left().leaves(), out);
}

}  // namespace

TreeShape TreeShape::decode(std::string_view text)
{
    std::size_t pos = 0;
    TreeShape tree = parse_tree(text, pos);
    if (pos != text.size()) throw ParseError("trailing characters after tree encoding");
    return tree;
}

bool operator==(const TreeShape& a, const TreeShape& b) noexcept
{
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.node_->leaves != b.node_->leaves || a.node_->height != b.node_->height) return false;
    return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

TreeShape tree_union(const TreeShape& a, const TreeShape& b)
{
    if (a.is_leaf()) return b;
    if (b.is_leaf()) return a;
    return TreeShape::caret(tree_union(a.left(), b.left()), tree_union(a.right(), b.right()));
}

std::vector<TreeShape> hanging_subtrees(const TreeShape& prefix, const TreeShape& full)
{
    std::vector<TreeShape> out;
    out.reserve(prefix.leaves());
    collect_hanging(prefix, full, out);
    return out;
}

TreeShape graft(const TreeShape& tree, std::span<const TreeShape> parts)
{
    if (parts.size() != tree.leaves()) throw PreconditionError("graft: one part per leaf required");
    std::size_t next = 0;
    return graft_from(tree, parts, next);
}

std::vector<std::size_t> exposed_carets(const TreeShape& tree)
{
    std::vector<std::size_t> out;
    collect_exposed(tree, 0, out);
    return out;
}

TreeShape collapse_caret(const TreeShape& tree, std::size_t leaf)
{
    if (tree.is_leaf()) throw PreconditionError("collapse_caret: no caret at leaf index");
    if (leaf == 0 && tree.left().is_leaf() && tree.right().is_leaf()) return TreeShape{};
    const std::size_t split = tree.left().leaves();
    if (leaf < split) return TreeShape::caret(collapse_caret(tree.left(), leaf), tree.right());
    return TreeShape::caret(tree.left(), collapse_caret(tree.right(), leaf - split));
}

}  // namespace fscheme
