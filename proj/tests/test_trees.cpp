#include <set>

#include "doctest.h"
#include "knfr/trees.hpp"

using namespace knfr;

TEST_CASE("chronicle counts are factorials") {
    long expect = 1;
    for (int k = 1; k <= 7; ++k) {
        expect *= k;
        CHECK(static_cast<long>(enumerate_chronicles(k).size()) == expect);
    }
    CHECK_THROWS_AS(enumerate_chronicles(0), Error);
    CHECK_THROWS_AS(enumerate_chronicles(9), Error);
}

TEST_CASE("node counts and leaf bookkeeping") {
    for (int k : {1, 2, 3, 4}) {
        for (const Chronicle& c : enumerate_chronicles(k)) {
            CHECK(c.tree.size() == 2 * k + 1);
            CHECK(c.tree.internal_count() == k);
            CHECK(c.tree.leaf_count() == k + 1);
            std::vector<int> ls = leaves(c);
            CHECK(static_cast<int>(ls.size()) == k + 1);
            // leaves and internals partition the node set
            std::set<int> all(ls.begin(), ls.end());
            for (int id = 0; id < c.tree.size(); ++id)
                if (!c.tree.nodes[id].is_terminal()) all.insert(id);
            CHECK(static_cast<int>(all.size()) == 2 * k + 1);
        }
    }
}

TEST_CASE("every chronicle replays and labels increase along ancestry") {
    for (int k = 1; k <= 5; ++k) {
        for (const Chronicle& c : enumerate_chronicles(k)) {
            CHECK(replays_cleanly(c));
            for (int id = 0; id < c.tree.size(); ++id) {
                const TreeNode& node = c.tree.nodes[id];
                if (node.is_terminal() || id == c.tree.root) continue;
                // nearest non-terminal ancestor is the parent by construction
                CHECK(node.generation > c.tree.nodes[node.parent].generation);
            }
        }
    }
}

TEST_CASE("generation_nodes replay consistency") {
    for (const Chronicle& c : enumerate_chronicles(3)) {
        GenerationTriple first = generation_nodes(c, 1);
        CHECK(first.node == c.tree.root);
        for (int j = 2; j <= 3; ++j) {
            GenerationTriple tri = generation_nodes(c, j);
            // the expanded node's parent was expanded strictly earlier
            CHECK(c.tree.nodes[c.tree.nodes[tri.node].parent].generation < j);
            CHECK(c.tree.nodes[tri.node].left == tri.left);
            CHECK(c.tree.nodes[tri.node].right == tri.right);
        }
        CHECK_THROWS_AS(generation_nodes(c, 0), Error);
        CHECK_THROWS_AS(generation_nodes(c, 4), Error);
    }
}

TEST_CASE("k=1 chronicle is the root with two leaves") {
    std::vector<Chronicle> cs = enumerate_chronicles(1);
    REQUIRE(cs.size() == 1);
    const Chronicle& c = cs[0];
    GenerationTriple tri = generation_nodes(c, 1);
    std::vector<int> ls = leaves(c);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == tri.left);
    CHECK(ls[1] == tri.right);
    CHECK(to_string(c) == "(1 . .)");
}

TEST_CASE("serialization is stable and distinguishes chronicles") {
    std::vector<Chronicle> a = enumerate_chronicles(3);
    std::vector<Chronicle> b = enumerate_chronicles(3);
    REQUIRE(a.size() == b.size());
    std::set<std::string> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(to_string(a[i]) == to_string(b[i]));
        seen.insert(to_string(a[i]));
    }
    CHECK(seen.size() == 6);  // distinct as labeled trees
    // expansion order distinguishes same-shape trees: both k=2 chronicles
    std::vector<Chronicle> two = enumerate_chronicles(2);
    CHECK(to_string(two[0]) == "(1 (2 . .) .)");
    CHECK(to_string(two[1]) == "(1 . (2 . .))");
}
