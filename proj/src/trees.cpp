#include "knfr/trees.hpp"

#include <algorithm>
#include <functional>

namespace knfr {

namespace {

// Ordered terminal nodes of the partial tree after the first `steps`
// expansions (ids only; planar order = in-order traversal).
std::vector<int> terminals_after(const Chronicle& c, int steps) {
    std::vector<int> out;
    std::function<void(int)> walk = [&](int id) {
        const TreeNode& node = c.tree.nodes[id];
        bool expanded = !node.is_terminal() && node.generation <= steps;
        if (!expanded) {
            out.push_back(id);
            return;
        }
        walk(node.left);
        walk(node.right);
    };
    walk(c.tree.root);
    return out;
}

void expand(Chronicle& c, int node_id, int step) {
    int l = c.tree.size();
    int r = l + 1;
    c.tree.nodes.push_back(TreeNode{node_id, -1, -1, 0});
    c.tree.nodes.push_back(TreeNode{node_id, -1, -1, 0});
    c.tree.nodes[node_id].left = l;
    c.tree.nodes[node_id].right = r;
    c.tree.nodes[node_id].generation = step;
    c.expansion.push_back(node_id);
}

}  // namespace

std::vector<Chronicle> enumerate_chronicles(int k) {
    if (k < 1 || k > 8) throw Error("enumerate_chronicles: k must be in [1, 8]");

    Chronicle seed;
    seed.tree.nodes.push_back(TreeNode{});
    expand(seed, 0, 1);

    std::vector<Chronicle> current{seed};
    for (int step = 2; step <= k; ++step) {
        std::vector<Chronicle> next;
        next.reserve(current.size() * step);
        for (const Chronicle& c : current) {
            std::vector<int> terms = terminals_after(c, step - 1);
            for (int id : terms) {
                Chronicle grown = c;
                expand(grown, id, step);
                next.push_back(std::move(grown));
            }
        }
        current.swap(next);
    }
    return current;
}

GenerationTriple generation_nodes(const Chronicle& c, int j) {
    if (j < 1 || j > c.generations()) throw Error("generation_nodes: step out of range");
    int b = c.expansion[j - 1];
    const TreeNode& node = c.tree.nodes[b];
    return GenerationTriple{b, node.left, node.right};
}

std::vector<int> leaves(const Chronicle& c) {
    return terminals_after(c, c.generations());
}

std::string to_string(const Chronicle& c) {
    std::function<std::string(int)> fmt = [&](int id) -> std::string {
        const TreeNode& node = c.tree.nodes[id];
        if (node.is_terminal()) return ".";
        return "(" + std::to_string(node.generation) + " " + fmt(node.left) + " " +
               fmt(node.right) + ")";
    };
    return fmt(c.tree.root);
}

bool replays_cleanly(const Chronicle& c) {
    int k = c.generations();
    if (c.tree.size() != 2 * k + 1) return false;
    if (c.expansion.empty() || c.expansion[0] != c.tree.root) return false;
    for (int j = 1; j <= k; ++j) {
        int b = c.expansion[j - 1];
        const TreeNode& node = c.tree.nodes[b];
        if (node.is_terminal() || node.generation != j) return false;
        // must have been terminal before step j: its parent expanded earlier
        if (b != c.tree.root) {
            const TreeNode& parent = c.tree.nodes[node.parent];
            if (parent.generation >= j) return false;
        }
    }
    // labels 1..k each used once
    std::vector<int> seen(k + 1, 0);
    for (const TreeNode& node : c.tree.nodes)
        if (!node.is_terminal()) {
            if (node.generation < 1 || node.generation > k) return false;
            seen[node.generation]++;
        }
    return std::all_of(seen.begin() + 1, seen.end(), [](int v) { return v == 1; });
}

}  // namespace knfr
