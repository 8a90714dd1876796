#pragma once

#include <string>
#include <vector>

#include "knfr/errors.hpp"

namespace knfr {

// Planar binary tree stored as a flat node array; every non-terminal node
// has exactly two ordered children and carries the generation at which it
// was expanded. Ids are creation-ordered (root is 0), so children always
// have larger ids than their parent.
struct TreeNode {
    int parent = -1;
    int left = -1;
    int right = -1;
    int generation = 0;  // 0 for terminal nodes, 1..k otherwise
    bool is_terminal() const { return left < 0; }
};

struct OrderedTree {
    std::vector<TreeNode> nodes;
    int root = 0;

    int size() const { return static_cast<int>(nodes.size()); }
    int internal_count() const { return (size() - 1) / 2; }
    int leaf_count() const { return (size() + 1) / 2; }
};

// A tree together with the order its internal nodes were created: the node
// expanded at step j is expansion[j-1]. Two chronicles over the same tree
// but with different expansion orders are distinct objects (the cutoff
// chain and the accumulated modulations depend on the order).
struct Chronicle {
    OrderedTree tree;
    std::vector<int> expansion;  // node id expanded at step j = 1..K

    int generations() const { return static_cast<int>(expansion.size()); }
};

// All chronicles of k generations in a stable lexicographic order (by the
// planar position of the leaf expanded at each step). Count is k!.
std::vector<Chronicle> enumerate_chronicles(int k);

struct GenerationTriple {
    int node;
    int left;
    int right;
};

// The node expanded at step j and its ordered children.
GenerationTriple generation_nodes(const Chronicle& c, int j);

// Terminal nodes of the final tree in left-to-right planar order.
std::vector<int> leaves(const Chronicle& c);

// Nested-parentheses form with generation labels, e.g. "(1 (2 . .) .)".
std::string to_string(const Chronicle& c);

// Check that replaying the expansion sequence reproduces the stored tree
// (each step must expand a node that is terminal at that point).
bool replays_cleanly(const Chronicle& c);

}  // namespace knfr
