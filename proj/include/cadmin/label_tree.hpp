#pragma once

#include <map>
#include <memory>
#include <vector>

#include "cadmin/errors.hpp"
#include "cadmin/index.hpp"

namespace cadmin {

// Interning pool for membership labels.  Leaf labels are bit vectors (one
// bit per family set); internal labels are tuples of child label ids.
// Interning makes label equality an integer comparison, including equality
// of whole nested tuples.
class LabelPool {
  public:
    int leaf(const std::vector<bool>& bits);
    int tuple(const std::vector<int>& children);

    bool isLeaf(int id) const { return entry(id).leaf; }
    const std::vector<bool>& leafBits(int id) const;
    const std::vector<int>& tupleChildren(int id) const;

  private:
    struct Entry {
        bool leaf = false;
        std::vector<bool> bits;
        std::vector<int> children;
    };
    const Entry& entry(int id) const;

    std::map<std::vector<bool>, int> leafIds_;
    std::map<std::vector<int>, int> tupleIds_;
    std::vector<Entry> entries_;
};

// The prefix tree of cell indices with recursive membership labels.  Leaves
// sit at the full dimension; every internal node's label is the tuple of its
// children's labels, so two subtrees are equal iff their label ids are.
struct LabelTree {
    int dimension = 1;
    int setCount = 0;
    std::shared_ptr<LabelPool> pool;
    std::map<Index, int> labels;      // root, plus every index of length 1..dimension
    std::map<Index, int> stackSizes;  // u_I for internal nodes (length 0..dimension-1)

    bool hasNode(const Index& i) const { return labels.count(i) > 0; }
    int label(const Index& i) const;
    int arity(const Index& i) const;  // number of children of an internal node
    const std::vector<bool>& leafBits(const Index& leaf) const;

    // Whole-tree structural equality (shared pool required).
    bool sameLabels(const LabelTree& o) const;
};

// Assemble a tree bottom-up from leaf bit assignments over a given stack
// structure.
LabelTree labelTreeFromLeaves(int dimension, int setCount,
                              const std::map<Index, int>& stackSizes,
                              const std::map<Index, std::vector<bool>>& leafBits,
                              std::shared_ptr<LabelPool> pool);

}  // namespace cadmin
