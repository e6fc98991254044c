#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcbc/matrix.hpp"
#include "test_util.hpp"

using namespace lcbc;
using lcbc::testutil::independent_columns;

namespace {

Mat from_cols(const Field& f, int d, const std::vector<std::vector<std::uint64_t>>& cols) {
    Mat m(f, d, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (int r = 0; r < d; ++r) m.at(r, static_cast<int>(j)) = cols[j][static_cast<size_t>(r)];
    return m;
}

Mat random_invertible(const Field& f, int n, Rng& rng) {
    return independent_columns(f, n, n, Mat(f, n, 0), rng);
}

bool spans_contain(const Mat& outer, const Mat& inner) {
    return conditional_rank(inner, outer) == 0;
}

}  // namespace

TEST_CASE("rank basics and zero-size matrices") {
    Field f = make_field(2, 1);
    CHECK(rank(Mat(f, 3, 0)) == 0);
    CHECK(rank(Mat(f, 0, 0)) == 0);
    CHECK(rank(mat_identity(f, 4)) == 4);
    Mat a = from_cols(f, 3, {{1, 0, 1}, {1, 0, 1}, {0, 1, 0}});
    CHECK(rank(a) == 2);
    CHECK(is_zero(Mat(f, 2, 2)));
    CHECK(!is_zero(a));
}

TEST_CASE("hcat and mat_mul shapes, including zero inner dimension") {
    Field f = make_field(3, 1);
    Mat a(f, 4, 0), b = mat_identity(f, 4);
    CHECK(hcat(a, b) == b);
    Mat prod = mat_mul(Mat(f, 4, 0), Mat(f, 0, 5));
    CHECK(prod.rows == 4);
    CHECK(prod.cols == 5);
    CHECK(is_zero(prod));
    Mat d = hcat(std::vector<Mat>{});
    CHECK(d.cols == 0);
}

TEST_CASE("conditional rank additivity, randomized") {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        Field f = make_field(t % 2 ? 2 : 3, 1);
        Mat a = random_matrix(f, 5, static_cast<int>(rng() % 4), rng);
        Mat b = random_matrix(f, 5, static_cast<int>(rng() % 4), rng);
        CHECK(rank(hcat(a, b)) == rank(b) + conditional_rank(a, b));
        CHECK(conditional_rank(a, a) == 0);
        CHECK(conditional_rank(a, Mat(f, 5, 0)) == rank(a));
    }
}

TEST_CASE("col_basis is canonical: invariant under column operations") {
    Rng rng(12);
    for (int t = 0; t < 60; ++t) {
        Field f = make_field(t % 2 ? 2 : 5, 1);
        Mat a = random_matrix(f, 4, 3, rng);
        Mat cb = col_basis(a);
        CHECK(cb.cols == rank(a));
        CHECK(col_basis(cb) == cb);
        // same span, scrambled generators
        Mat T = random_invertible(f, 3, rng);
        CHECK(col_basis(mat_mul(a, T)) == cb);
        CHECK(spans_contain(cb, a));
        CHECK(spans_contain(a, cb));
    }
}

TEST_CASE("kernel: null space, canonical, rank-nullity") {
    Rng rng(13);
    for (int t = 0; t < 60; ++t) {
        Field f = make_field(t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5), 1);
        Mat a = random_matrix(f, 3, 5, rng);
        Mat k = kernel(a);
        CHECK(k.cols == 5 - rank(a));
        CHECK(is_zero(mat_mul(a, k)));
        CHECK(rank(k) == k.cols);
        CHECK(col_basis(k) == k);
    }
    Field f = make_field(2, 1);
    CHECK(kernel(mat_identity(f, 3)).cols == 0);
    CHECK(kernel(Mat(f, 3, 4)).cols == 4);
}

TEST_CASE("span union and intersection obey the modular dimension law") {
    Rng rng(14);
    for (int t = 0; t < 80; ++t) {
        Field f = make_field(t % 2 ? 3 : 2, 1);
        Mat a = random_matrix(f, 5, static_cast<int>(1 + rng() % 3), rng);
        Mat b = random_matrix(f, 5, static_cast<int>(1 + rng() % 3), rng);
        Mat u = span_union({a, b});
        Mat i = span_intersect(a, b);
        CHECK(u.cols + i.cols == rank(a) + rank(b));
        CHECK(spans_contain(a, i));
        CHECK(spans_contain(b, i));
        CHECK(spans_contain(u, a));
        CHECK(spans_contain(u, b));
        CHECK(col_basis(u) == u);
        CHECK(col_basis(i) == i);
    }
}

TEST_CASE("span_intersect of disjoint and nested spans") {
    Field f = make_field(2, 1);
    Mat e1 = from_cols(f, 3, {{1, 0, 0}});
    Mat e2 = from_cols(f, 3, {{0, 1, 0}});
    CHECK(span_intersect(e1, e2).cols == 0);
    Mat both = hcat(e1, e2);
    CHECK(span_intersect(both, e1) == col_basis(e1));
}

TEST_CASE("solve and solve_many agree with multiplication") {
    Rng rng(15);
    for (int t = 0; t < 80; ++t) {
        Field f = make_field(t % 2 ? 2 : 3, 1);
        Mat a = random_matrix(f, 4, 3, rng);
        Mat x = random_matrix(f, 3, 2, rng);
        Mat b = mat_mul(a, x);
        auto sol = solve_many(a, b);
        REQUIRE(sol.has_value());
        CHECK(mat_mul(a, *sol) == b);
        std::vector<std::uint64_t> col(4);
        for (int r = 0; r < 4; ++r) col[static_cast<size_t>(r)] = b.at(r, 0);
        auto single = solve(a, col);
        REQUIRE(single.has_value());
    }
    // inconsistent system
    Field f = make_field(2, 1);
    Mat a = from_cols(f, 3, {{1, 0, 0}});
    CHECK(!solve(a, {0, 1, 0}).has_value());
    CHECK(!solve_many(a, from_cols(f, 3, {{0, 0, 1}})).has_value());
}

TEST_CASE("determinant: multiplicative, zero iff singular") {
    Rng rng(16);
    Field f = make_field(5, 1);
    for (int t = 0; t < 50; ++t) {
        Mat a = random_matrix(f, 3, 3, rng);
        Mat b = random_matrix(f, 3, 3, rng);
        CHECK(det(mat_mul(a, b)) == f->mul(det(a), det(b)));
        CHECK((det(a) != 0) == (rank(a) == 3));
    }
    CHECK(det(mat_identity(f, 4)) == 1);
    CHECK(det(Mat(f, 0, 0)) == 1);
}

TEST_CASE("transpose, add, neg") {
    Field f = make_field(3, 1);
    Rng rng(17);
    Mat a = random_matrix(f, 3, 4, rng);
    CHECK(transpose(transpose(a)) == a);
    CHECK(is_zero(mat_add(a, mat_neg(a))));
}

TEST_CASE("embed_matrix preserves rank") {
    Field src = make_field(2, 1);
    Field dst = make_field(2, 4);
    Embedding e(src, dst);
    Rng rng(18);
    for (int t = 0; t < 30; ++t) {
        Mat a = random_matrix(src, 4, 3, rng);
        CHECK(rank(embed_matrix(a, e)) == rank(a));
    }
}

TEST_CASE("extend_basis needs lookahead: canonical-first greedy would stick") {
    // candidate 1 spans everything, candidate 2 only e1; taking e1 for the
    // first would leave nothing fresh for the second, yet a completion exists
    Field f = make_field(2, 1);
    Mat full = mat_identity(f, 2);
    Mat e1 = from_cols(f, 2, {{1, 0}});
    ExtendResult r = extend_basis(Mat(f, 2, 0), {full, e1}, {1, 1});
    REQUIRE(r.ok);
    REQUIRE(r.picks.size() == 2);
    Mat all = hcat(r.picks[0], r.picks[1]);
    CHECK(rank(all) == 2);
    CHECK(spans_contain(full, r.picks[0]));
    CHECK(spans_contain(e1, r.picks[1]));
}

TEST_CASE("extend_basis reports the violating subset when infeasible") {
    Field f = make_field(2, 1);
    Mat e1 = from_cols(f, 3, {{1, 0, 0}});
    Mat e12 = from_cols(f, 3, {{1, 0, 0}, {0, 1, 0}});
    // candidates 0 and 2 together only span e1: joint demand 2 > 1
    ExtendResult r = extend_basis(Mat(f, 3, 0), {e1, e12, e1}, {1, 1, 1});
    CHECK(!r.ok);
    CHECK(r.violating_subset == std::vector<int>{0, 2});
}

TEST_CASE("extend_basis with anchor conditioning") {
    Field f = make_field(2, 1);
    Mat anchor = from_cols(f, 3, {{1, 0, 0}});
    Mat c = from_cols(f, 3, {{1, 0, 0}, {0, 1, 0}});
    // given the anchor, the candidate has only one fresh dimension
    ExtendResult bad = extend_basis(anchor, {c}, {2});
    CHECK(!bad.ok);
    CHECK(bad.violating_subset == std::vector<int>{0});
    ExtendResult good = extend_basis(anchor, {c}, {1});
    REQUIRE(good.ok);
    CHECK(rank(hcat(anchor, good.picks[0])) == 2);
}

TEST_CASE("extend_basis succeeds exactly when the subset bound holds, randomized") {
    Rng rng(19);
    for (int t = 0; t < 120; ++t) {
        Field f = make_field(t % 2 ? 2 : 3, 1);
        int d = 4;
        Mat anchor = random_matrix(f, d, static_cast<int>(rng() % 2), rng);
        int n = 2 + static_cast<int>(rng() % 2);
        std::vector<Mat> cands;
        std::vector<int> targets;
        for (int i = 0; i < n; ++i) {
            cands.push_back(random_matrix(f, d, static_cast<int>(1 + rng() % 3), rng));
            targets.push_back(static_cast<int>(rng() % 3));
        }
        // reference feasibility: every subset's demand fits its fresh rank
        bool feasible = true;
        std::vector<int> first_bad;
        for (int mask = 1; mask < (1 << n) && feasible; ++mask) {
            Mat joint = anchor;
            int need = 0;
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) {
                    joint = hcat(joint, cands[static_cast<size_t>(i)]);
                    need += targets[static_cast<size_t>(i)];
                    idx.push_back(i);
                }
            if (need > rank(joint) - rank(anchor)) {
                feasible = false;
                first_bad = idx;
            }
        }
        ExtendResult r = extend_basis(anchor, cands, targets);
        CAPTURE(t);
        CHECK(r.ok == feasible);
        if (!feasible) CHECK(r.violating_subset == first_bad);
        if (r.ok) {
            Mat all = anchor;
            int want = rank(anchor);
            for (int i = 0; i < n; ++i) {
                const Mat& pick = r.picks[static_cast<size_t>(i)];
                CHECK(pick.cols == targets[static_cast<size_t>(i)]);
                CHECK(spans_contain(cands[static_cast<size_t>(i)], pick));
                all = hcat(all, pick);
                want += targets[static_cast<size_t>(i)];
            }
            CHECK(rank(all) == want);
        }
    }
}
