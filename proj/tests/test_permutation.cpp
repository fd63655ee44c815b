#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "rtns/permutation.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace rtns;

TEST_CASE("enumerate block order matches the printed small groups") {
    GroupOrder s2(2);
    REQUIRE(s2.size() == 2);
    CHECK(s2[0].cycle_string() == "e");
    CHECK(s2[1].cycle_string() == "(1 2)");

    GroupOrder s3(3);
    REQUIRE(s3.size() == 6);
    const char* expect[] = {"e", "(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"};
    for (int i = 0; i < 6; ++i) CHECK(s3[i].cycle_string() == expect[i]);

    GroupOrder s1(1);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].is_identity());
}

TEST_CASE("enumerate rejects bad degrees") {
    CHECK_THROWS(GroupOrder(0));
    CHECK_THROWS(GroupOrder(9));
    CHECK_NOTHROW(GroupOrder(8));
}

TEST_CASE("block-order invariants") {
    for (int k : {2, 3, 4, 5}) {
        GroupOrder g(k);
        CHECK(g[0].is_identity());
        // fixed-point counts never increase along the order
        for (int i = 0; i + 1 < g.size(); ++i)
            CHECK(g[i].fixed_points() >= g[i + 1].fixed_points());
        // elements sharing a fixed-point set are contiguous
        auto fixed_set = [&](const Permutation& p) {
            std::set<int> s;
            for (int x = 0; x < k; ++x)
                if (p(x) == x) s.insert(x);
            return s;
        };
        std::set<std::set<int>> closed;
        std::set<int> current = fixed_set(g[0]);
        for (int i = 1; i < g.size(); ++i) {
            auto fs = fixed_set(g[i]);
            if (fs != current) {
                CHECK(closed.count(fs) == 0);
                closed.insert(current);
                current = fs;
            }
        }
        // within a fixed-point group, conjugacy classes are contiguous
        for (int i = 1; i + 1 < g.size(); ++i) {
            if (fixed_set(g[i]) != fixed_set(g[i + 1])) continue;
            if (cycle_type(g[i]) == cycle_type(g[i + 1])) continue;
            for (int j = i + 2; j < g.size() && fixed_set(g[j]) == fixed_set(g[i]); ++j)
                CHECK(cycle_type(g[j]) != cycle_type(g[i]));
        }
        // transposition count
        int trans = 0;
        for (int i = 0; i < g.size(); ++i)
            if (g[i].fixed_points() == k - 2) ++trans;
        CHECK(trans == k * (k - 1) / 2);
        CHECK(static_cast<int>(g.transposition_indices().size()) == k * (k - 1) / 2);
    }
}

TEST_CASE("restriction of the stabilizer of k is a bijection onto S_{k-1}") {
    for (int k : {3, 4, 5}) {
        GroupOrder g(k), sub(k - 1);
        std::set<std::vector<uint8_t>> images;
        for (int i = 0; i < g.size(); ++i) {
            if (g[i](k - 1) != k - 1) continue;
            std::vector<uint8_t> down(g[i].images.begin(), g[i].images.end() - 1);
            images.insert(down);
        }
        CHECK(static_cast<int>(images.size()) == sub.size());
        for (int i = 0; i < sub.size(); ++i) CHECK(images.count(sub[i].images) == 1);
    }
}

TEST_CASE("compose") {
    int k = 3;
    Permutation p = Permutation::from_cycles("(1 2)", k);
    Permutation q = Permutation::from_cycles("(2 3)", k);
    CHECK(compose(p, q).cycle_string() == "(1 2 3)");  // (p q)(i) = p(q(i))
    GroupOrder g(4);
    for (int i = 0; i < g.size(); ++i) {
        CHECK(compose(g[i], inverse(g[i])).is_identity());
        CHECK(compose(Permutation::identity(4), g[i]) == g[i]);
        CHECK(compose(g[i], Permutation::identity(4)) == g[i]);
    }
    CHECK_THROWS(compose(Permutation::identity(2), Permutation::identity(3)));
}

TEST_CASE("cycle counts") {
    CHECK(cycle_count(Permutation::identity(3)) == 3);
    CHECK(cycle_count(Permutation::from_cycles("(1 2 3)", 3)) == 1);
    CHECK(cycle_count(Permutation::from_cycles("(1 2)(3 4)", 4)) == 2);
    CHECK(cycle_count(Permutation::from_cycles("(1 2)", 4)) == 3);
}

TEST_CASE("conjugation") {
    CHECK(conjugate(Permutation::from_cycles("(1 2)", 3), Permutation::from_cycles("(2 3)", 3))
              .cycle_string() == "(1 3)");
    GroupOrder g(4);
    Permutation e = Permutation::identity(4);
    for (int i = 0; i < g.size(); ++i) CHECK(conjugate(e, g[i]).is_identity());
    // exhaustive over S_4: conjugation preserves cycle type and count
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) {
            CHECK(cycle_type(conjugate(g[i], g[j])) == cycle_type(g[i]));
            CHECK(cycle_count(conjugate(g[i], g[j])) == cycle_count(g[i]));
        }
}

TEST_CASE("cycle parsing round trip") {
    GroupOrder g(5);
    for (int i = 0; i < g.size(); ++i)
        CHECK(Permutation::from_cycles(g[i].cycle_string(), 5) == g[i]);
    CHECK_THROWS(Permutation::from_cycles("(1 2", 3));
    CHECK_THROWS(Permutation::from_cycles("(1 9)", 3));
    CHECK_THROWS(Permutation::from_cycles("(1 2)(2 3)", 3));  // repeated entry
}

TEST_CASE("index-level tables agree with element operations") {
    GroupOrder g(4);
    for (int a = 0; a < g.size(); ++a) {
        CHECK(g.inverse_idx(a) == g.index_of(inverse(g[a])));
        CHECK(g.cycles_idx(a) == cycle_count(g[a]));
        for (int b = 0; b < g.size(); ++b)
            CHECK(g.compose_idx(a, b) == g.index_of(compose(g[a], g[b])));
    }
}
