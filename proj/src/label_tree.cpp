#include "cadmin/label_tree.hpp"

namespace cadmin {

int LabelPool::leaf(const std::vector<bool>& bits) {
    auto it = leafIds_.find(bits);
    if (it != leafIds_.end()) return it->second;
    const int id = static_cast<int>(entries_.size());
    Entry e;
    e.leaf = true;
    e.bits = bits;
    entries_.push_back(std::move(e));
    leafIds_.emplace(bits, id);
    return id;
}

int LabelPool::tuple(const std::vector<int>& children) {
    auto it = tupleIds_.find(children);
    if (it != tupleIds_.end()) return it->second;
    const int id = static_cast<int>(entries_.size());
    Entry e;
    e.leaf = false;
    e.children = children;
    entries_.push_back(std::move(e));
    tupleIds_.emplace(children, id);
    return id;
}

const LabelPool::Entry& LabelPool::entry(int id) const {
    if (id < 0 || id >= static_cast<int>(entries_.size()))
        throw Error("unknown label id");
    return entries_[static_cast<std::size_t>(id)];
}

const std::vector<bool>& LabelPool::leafBits(int id) const {
    const Entry& e = entry(id);
    if (!e.leaf) throw Error("label is not a leaf label");
    return e.bits;
}

const std::vector<int>& LabelPool::tupleChildren(int id) const {
    const Entry& e = entry(id);
    if (e.leaf) throw Error("label is not a tuple label");
    return e.children;
}

int LabelTree::label(const Index& i) const {
    auto it = labels.find(i);
    if (it == labels.end()) throw Error("no label for node " + i.str());
    return it->second;
}

int LabelTree::arity(const Index& i) const {
    auto it = stackSizes.find(i);
    if (it == stackSizes.end()) throw Error("no stack size for node " + i.str());
    return 2 * it->second + 1;
}

const std::vector<bool>& LabelTree::leafBits(const Index& leaf) const {
    if (leaf.length() != dimension) throw Error("not a leaf node: " + leaf.str());
    return pool->leafBits(label(leaf));
}

bool LabelTree::sameLabels(const LabelTree& o) const {
    if (pool != o.pool) throw Error("label trees use different pools");
    return dimension == o.dimension && setCount == o.setCount &&
           label(Index()) == o.label(Index());
}

namespace {

int buildLabel(const Index& node, int dimension,
               const std::map<Index, int>& stackSizes,
               const std::map<Index, std::vector<bool>>& leafBits, LabelPool& pool,
               std::map<Index, int>& out) {
    int id;
    if (node.length() == dimension) {
        auto it = leafBits.find(node);
        if (it == leafBits.end()) throw Error("missing leaf bits for " + node.str());
        id = pool.leaf(it->second);
    } else {
        auto it = stackSizes.find(node);
        if (it == stackSizes.end()) throw Error("missing stack size for " + node.str());
        std::vector<int> children;
        children.reserve(static_cast<std::size_t>(2 * it->second + 1));
        for (int j = 1; j <= 2 * it->second + 1; ++j)
            children.push_back(
                buildLabel(node.child(j), dimension, stackSizes, leafBits, pool, out));
        id = pool.tuple(children);
    }
    out.emplace(node, id);
    return id;
}

}  // namespace

LabelTree labelTreeFromLeaves(int dimension, int setCount,
                              const std::map<Index, int>& stackSizes,
                              const std::map<Index, std::vector<bool>>& leafBits,
                              std::shared_ptr<LabelPool> pool) {
    if (!pool) pool = std::make_shared<LabelPool>();
    LabelTree t;
    t.dimension = dimension;
    t.setCount = setCount;
    t.pool = pool;
    t.stackSizes = stackSizes;
    buildLabel(Index(), dimension, stackSizes, leafBits, *pool, t.labels);
    return t;
}

}  // namespace cadmin
