#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "lcbc/labels.hpp"

using namespace lcbc;

namespace {

Label isect(std::vector<int> S) { return {Kind::Intersect, std::move(S), 0}; }
Label comp(int k, std::vector<int> S) { return {Kind::Compose, std::move(S), k}; }
Label single(int k) { return {Kind::Single, {}, k}; }

}  // namespace

TEST_CASE("label counts match the closed form") {
    CHECK(enumerate_labels(1).size() == 1);
    CHECK(enumerate_labels(2).size() == 3);
    CHECK(enumerate_labels(3).size() == 10);
    CHECK(enumerate_labels(4).size() == 31);
    CHECK(enumerate_labels(5).size() == 86);
    CHECK_THROWS_AS(enumerate_labels(0), std::invalid_argument);
}

TEST_CASE("enumeration order for K = 3 is intersects, composes, singles") {
    auto ls = enumerate_labels(3);
    std::vector<std::string> want = {"U_12", "U_13", "U_23", "U_123", "U_1(23)",
                                     "U_2(13)", "U_3(12)", "U_1", "U_2", "U_3"};
    REQUIRE(ls.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i) CHECK(label_str(ls[i]) == want[i]);
}

TEST_CASE("users() collects the participants sorted") {
    CHECK(isect({1, 3}).users() == std::vector<int>{1, 3});
    CHECK(comp(2, {1, 3}).users() == std::vector<int>{1, 2, 3});
    CHECK(comp(4, {1, 2}).users() == std::vector<int>{1, 2, 4});
    CHECK(single(2).users() == std::vector<int>{2});
}

TEST_CASE("ls_of: intersect grows by one user until the full set") {
    auto ls = ls_of(isect({1, 2}), 4);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == isect({1, 2, 3}));
    CHECK(ls[1] == isect({1, 2, 4}));
    CHECK(ls_of(isect({1, 2, 3, 4}), 4).empty());
}

TEST_CASE("ls_of: wide compose drops one participant, keeps the owner") {
    auto ls = ls_of(comp(1, {2, 3, 4}), 4);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == comp(1, {2, 3}));
    CHECK(ls[1] == comp(1, {2, 4}));
    CHECK(ls[2] == comp(1, {3, 4}));
}

TEST_CASE("ls_of: two-participant compose degenerates to owner pairs") {
    auto ls = ls_of(comp(2, {1, 3}), 3);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == isect({1, 2}));
    CHECK(ls[1] == isect({2, 3}));
}

TEST_CASE("ls_of: single goes to the compose over all others") {
    auto ls = ls_of(single(2), 4);
    REQUIRE(ls.size() == 1);
    CHECK(ls[0] == comp(2, {1, 3, 4}));
    // with two users there is no compose level; the pair intersect follows
    auto two = ls_of(single(1), 2);
    REQUIRE(two.size() == 1);
    CHECK(two[0] == isect({1, 2}));
    CHECK(ls_of(single(1), 1).empty());
}

TEST_CASE("ls_of results are always valid enumerated labels") {
    for (int K = 1; K <= 5; ++K) {
        auto all = enumerate_labels(K);
        std::set<Label, LabelLess> valid(all.begin(), all.end());
        for (const Label& l : all)
            for (const Label& nxt : ls_of(l, K)) CHECK(valid.count(nxt) == 1);
    }
}

TEST_CASE("cover: transitive closure including the root, ordered") {
    auto c = cover(single(1), 3);
    std::vector<std::string> want = {"U_12", "U_13", "U_123", "U_1(23)", "U_1"};
    REQUIRE(c.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i) CHECK(label_str(c[i]) == want[i]);

    CHECK(cover(isect({1, 2}), 2).size() == 1);

    // K = 4 single: all pairs and triples through the owner, the full set,
    // the composes at both widths, and the root
    auto c4 = cover(single(1), 4);
    CHECK(c4.size() == 12);
    for (const Label& l : c4) {
        auto u = l.users();
        CHECK(std::find(u.begin(), u.end(), 1) != u.end());
    }
}

TEST_CASE("cover is idempotent and respects LabelLess order") {
    for (int K = 2; K <= 4; ++K)
        for (const Label& l : enumerate_labels(K)) {
            auto c = cover(l, K);
            CHECK(std::is_sorted(c.begin(), c.end(), LabelLess{}));
            std::set<Label, LabelLess> acc;
            for (const Label& m : c) {
                auto sub = cover(m, K);
                acc.insert(sub.begin(), sub.end());
            }
            CHECK(std::vector<Label>(acc.begin(), acc.end()) == c);
        }
}

TEST_CASE("coeff_of maps labels to their LP variable") {
    CHECK(coeff_of(isect({1, 3})) == VarKey{false, {1, 3}});
    CHECK(coeff_of(comp(2, {1, 3})) == VarKey{true, {1, 2, 3}});
    CHECK(coeff_of(single(2)) == VarKey{false, {2}});
    CHECK(var_str(coeff_of(isect({1, 3}))) == "lam_13");
    CHECK(var_str(coeff_of(comp(2, {1, 3}))) == "lam_(123)");
    CHECK(var_str(coeff_of(single(2))) == "lam_2");
}

TEST_CASE("VarKey ordering: plain before parenthesized, then size, then lex") {
    VarKey a{false, {1, 2}}, b{true, {1, 2}}, c{false, {3}}, d{false, {1, 3}};
    CHECK(a < b);
    CHECK(c < a);
    CHECK(a < d);
    CHECK(!(a < a));
}

TEST_CASE("LabelLess is a strict total order on the enumeration") {
    for (int K = 1; K <= 5; ++K) {
        auto all = enumerate_labels(K);
        LabelLess less;
        CHECK(std::is_sorted(all.begin(), all.end(), less));
        for (size_t i = 0; i + 1 < all.size(); ++i) {
            CHECK(less(all[i], all[i + 1]));
            CHECK(!less(all[i + 1], all[i]));
        }
    }
}

TEST_CASE("subsets_of orders by size then lexicographically") {
    auto s = subsets_of({1, 2, 3}, 2);
    std::vector<std::vector<int>> want = {{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
    CHECK(s == want);
    auto t = subsets_of({2, 5, 7}, 1);
    REQUIRE(t.size() == 7);
    CHECK(t[0] == std::vector<int>{2});
    CHECK(t[3] == std::vector<int>{2, 5});
    CHECK(t[6] == std::vector<int>{2, 5, 7});
    CHECK(subsets_of({1}, 2).empty());
}
