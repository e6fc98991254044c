#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "lcbc/scheme.hpp"
#include "test_util.hpp"

using namespace lcbc;

namespace {

Atlas atlas_of(const LcbcInstance& ins) {
    std::vector<Mat> U;
    for (int k = 1; k <= ins.K(); ++k) U.push_back(ins.joint(k));
    return build_atlas(U);
}

Mat ext_col(const Field& ext, const std::vector<std::uint64_t>& v) {
    Mat m(ext, static_cast<int>(v.size()), 1);
    for (size_t r = 0; r < v.size(); ++r) m.at(static_cast<int>(r), 0) = v[r];
    return m;
}

}  // namespace

TEST_CASE("integrality scale is the denominator lcm") {
    LambdaProfile p;
    p.lam[{1}] = Rational(2);
    p.lam[{1, 2}] = Rational(1);
    CHECK(integrality_scale(p) == 1);
    p.lam[{2}] = Rational(1) / Rational(2);
    CHECK(integrality_scale(p) == 2);
    p.lam_paren[{1, 2, 3}] = Rational(1) / Rational(3);
    CHECK(integrality_scale(p) == 6);
}

TEST_CASE("block scaling stacks copies on disjoint coordinates") {
    LcbcInstance toy = make_fixture("toy_k4");
    LcbcInstance s = scale_instance(toy, 2);
    CHECK(s.d == 8);
    CHECK(s.K() == 4);
    for (int k = 1; k <= 4; ++k) {
        CHECK(s.mp(k) == 2);
        CHECK(s.m(k) == 2);
    }
    // user 1 cache e1: copy 0 in rows 0..3 col 0, copy 1 in rows 4..7 col 1
    CHECK(s.cache[0].at(0, 0) == 1);
    CHECK(s.cache[0].at(4, 1) == 1);
    CHECK(s.cache[0].at(4, 0) == 0);
    CHECK(s.cache[0].at(0, 1) == 0);
    CHECK_NOTHROW(s.validate());
    // rank doubles
    CHECK(rank(s.joint(1)) == 2 * rank(toy.joint(1)));

    CHECK(scale_instance(toy, 1).d == toy.d);
    CHECK_THROWS_AS(scale_instance(toy, 0), std::invalid_argument);
}

TEST_CASE("extension degree covers the scaled verification bound") {
    LcbcInstance toy = make_fixture("toy_k4");
    CHECK(extension_degree(toy, 1) == 8);  // 2^8 = 256 = 16*4*4
    CHECK(extension_degree(toy, 2) == 9);
    CHECK(extension_degree(make_fixture("fig1_k2"), 1) == 7);
    CHECK(extension_degree(make_fixture("mds_k3"), 1) == 7);
}

TEST_CASE("ring instance: canonical attempt reproduces the chained differences") {
    LcbcInstance ins = make_fixture("toy_k4");
    SolveResult sol = solve_instance(ins);
    SchemePlan plan = construct_messages(ins, atlas_of(ins), sol.profile, 1, 0);
    CHECK(plan.scale == 1);
    CHECK(plan.z == 8);
    CHECK(plan.total_width == 3);
    CHECK(plan.d_scaled == 4);
    CHECK(plan.ext_field->order() == 256);

    std::vector<const Message*> fam;
    for (const Message& m : plan.messages)
        if (m.kind == MsgKind::Family && m.width > 0) fam.push_back(&m);
    REQUIRE(fam.size() == 4);
    const Field& ext = plan.ext_field;
    CHECK(fam[0]->member == 1);
    CHECK(fam[0]->encode == ext_col(ext, {1, 1, 0, 0}));
    CHECK(fam[1]->encode == ext_col(ext, {0, 1, 1, 0}));
    CHECK(fam[2]->encode == ext_col(ext, {0, 0, 1, 1}));
    CHECK(fam[3]->encode == ext_col(ext, {1, 0, 0, 1}));
    for (int i = 0; i < 3; ++i) CHECK(fam[static_cast<size_t>(i)]->transmitted);
    CHECK(!fam[3]->transmitted);
    CHECK(fam[3]->member == 4);

    // everything else carries no width
    for (const Message& m : plan.messages)
        if (m.kind != MsgKind::Family || m.users.size() != 4) CHECK(m.width == 0);
}

TEST_CASE("two-user instance: one canonical multicast over the shared plane") {
    LcbcInstance ins = make_fixture("fig1_k2");
    SolveResult sol = solve_instance(ins);
    SchemePlan plan = construct_messages(ins, atlas_of(ins), sol.profile, 1, 0);
    CHECK(plan.z == 7);
    CHECK(plan.total_width == 2);
    REQUIRE(plan.messages.size() == 3);  // one multicast, two unicasts
    const Message& mc = plan.messages[0];
    CHECK(mc.kind == MsgKind::Multicast);
    CHECK(mc.users == std::vector<int>{1, 2});
    CHECK(mc.width == 2);
    // canonical mixing is the identity, so the encode is the subspace basis
    Mat e2 = ext_col(plan.ext_field, {0, 1, 0, 0});
    Mat e3 = ext_col(plan.ext_field, {0, 0, 1, 0});
    CHECK(mc.encode == hcat(e2, e3));
    CHECK(plan.messages[1].width == 0);
    CHECK(plan.messages[2].width == 0);
}

TEST_CASE("parity family: aligned bases with the last member withheld") {
    LcbcInstance ins = make_fixture("mds_k3");
    SolveResult sol = solve_instance(ins);
    SchemePlan plan = construct_messages(ins, atlas_of(ins), sol.profile, 1, 0);
    CHECK(plan.total_width == 2);
    std::vector<const Message*> fam;
    for (const Message& m : plan.messages)
        if (m.kind == MsgKind::Family) fam.push_back(&m);
    REQUIRE(fam.size() == 3);
    Mat sum = fam[0]->encode;
    sum = mat_add(sum, fam[1]->encode);
    sum = mat_add(sum, fam[2]->encode);
    CHECK(is_zero(sum));
    CHECK(fam[0]->transmitted);
    CHECK(fam[1]->transmitted);
    CHECK(!fam[2]->transmitted);
}

TEST_CASE("decoder stacks cache, relevant encodes, and a standard completion") {
    LcbcInstance ins = make_fixture("toy_k4");
    PlanOutcome out = plan_scheme(ins, 1);
    REQUIRE(out.report.ok);
    CHECK(out.report.attempt_used == 0);
    CHECK(out.report.attempts == 1);
    for (int k = 1; k <= 4; ++k) {
        UserDecoder dec = build_user_decoder(ins, out.plan, k);
        // cache column + the user's own family member column
        CHECK(dec.columns.cols == 2);
        CHECK(dec.completion.cols == 2);
        Mat square = hcat(dec.columns, dec.completion);
        CHECK(square.cols == 4);
        CHECK(det(square) != 0);
        CHECK(std::is_sorted(dec.msg_index.begin(), dec.msg_index.end()));
    }
    // the withheld member enters user 4's decoder as minus the partial sum
    UserDecoder d4 = build_user_decoder(ins, out.plan, 4);
    Mat expect = ext_col(out.plan.ext_field, {1, 0, 0, 1});
    Mat got = column(d4.columns, 1);
    CHECK(got == expect);
}

TEST_CASE("fractional optimum gets block-doubled and needs fresh mixing") {
    LcbcInstance ins = testutil::fractional_instance();
    SolveResult sol = solve_instance(ins);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.load == Rational(7) / Rational(2));
    CHECK(integrality_scale(sol.profile) == 2);

    PlanOutcome out = plan_scheme(ins, 7);
    REQUIRE(out.report.ok);
    CHECK(out.plan.scale == 2);
    CHECK(out.plan.d_scaled == 10);
    // the canonical attempt fails on this instance, independent of the seed
    CHECK(out.report.attempt_used >= 1);
    CHECK(out.plan.attempt == out.report.attempt_used);
    CHECK(Rational(out.plan.total_width) / Rational(out.plan.scale) == sol.load);
    for (int k = 1; k <= ins.K(); ++k) {
        UserDecoder dec = build_user_decoder(ins, out.plan, k);
        CHECK(det(hcat(dec.columns, dec.completion)) != 0);
    }
}

TEST_CASE("width bookkeeping matches the profile on random instances") {
    Rng rng(91);
    for (int t = 0; t < 15; ++t) {
        testutil::GenParams gp;
        gp.K = 3 + static_cast<int>(rng() % 2);
        gp.d = 4 + static_cast<int>(rng() % 2);
        gp.p = (t % 2) ? 3 : 2;
        LcbcInstance ins = testutil::random_instance(gp, rng);
        PlanOutcome out = plan_scheme(ins, 1000 + static_cast<std::uint64_t>(t));
        CAPTURE(t);
        REQUIRE(out.report.ok);
        const SchemePlan& plan = out.plan;

        // transmitted width re-derives the optimal load
        SolveResult sol = solve_instance(ins);
        CHECK(Rational(plan.total_width) / Rational(plan.scale) == sol.load);

        int total = 0;
        std::map<std::vector<int>, std::pair<int, int>> family_count;
        for (const Message& m : plan.messages) {
            if (m.transmitted) total += m.width;
            if (m.kind == MsgKind::Family && m.width > 0) {
                auto& [members, transmitted] = family_count[m.users];
                ++members;
                if (m.transmitted) ++transmitted;
            }
        }
        CHECK(total == plan.total_width);
        for (const auto& [T, counts] : family_count) {
            CHECK(counts.first == static_cast<int>(T.size()));
            CHECK(counts.second == static_cast<int>(T.size()) - 1);
        }

        // family sums vanish, message encodes have the declared shape
        std::map<std::vector<int>, Mat> sums;
        for (const Message& m : plan.messages) {
            CHECK(m.encode.rows == plan.d_scaled);
            CHECK(m.encode.cols == m.width);
            if (m.kind != MsgKind::Family || m.width == 0) continue;
            auto it = sums.find(m.users);
            if (it == sums.end()) sums.emplace(m.users, m.encode);
            else it->second = mat_add(it->second, m.encode);
        }
        for (const auto& [T, s] : sums) CHECK(is_zero(s));
    }
}

TEST_CASE("invalid construction arguments are rejected") {
    LcbcInstance ins = make_fixture("mds_k3");
    SolveResult sol = solve_instance(ins);
    Atlas a = atlas_of(ins);
    CHECK_THROWS_AS(construct_messages(ins, a, sol.profile, 1, 8), std::invalid_argument);
    CHECK_THROWS_AS(construct_messages(ins, a, sol.profile, 1, -1), std::invalid_argument);
    Atlas wrong = atlas_of(make_fixture("fig1_k2"));
    CHECK_THROWS_AS(construct_messages(ins, wrong, sol.profile, 1, 0), std::invalid_argument);
}

TEST_CASE("plan and report serialization") {
    LcbcInstance ins = make_fixture("toy_k4");
    PlanOutcome out = plan_scheme(ins, 5);
    Json j = plan_to_json(out.plan);
    CHECK(j["seed"] == 5);
    CHECK(j["attempt"] == 0);
    CHECK(j["z"] == 8);
    CHECK(j["scale"] == 1);
    CHECK(j["field"]["p"] == 2);
    CHECK(j["field"]["n"] == 1);
    CHECK(j["ext_field"]["n"] == 8);
    CHECK(j["d"] == 4);
    CHECK(j["d_scaled"] == 4);
    CHECK(j["total_width"] == 3);
    CHECK(j["profile"]["lam_paren"]["1234"] == "1/1");
    bool saw_family = false;
    for (const Json& m : j["messages"]) {
        CHECK(m.contains("kind"));
        CHECK(m.contains("encode"));
        if (m["kind"] == "family" && m["width"] == 1) saw_family = true;
    }
    CHECK(saw_family);

    Json r = verify_report_to_json(out.report);
    CHECK(r["ok"] == true);
    CHECK(r["attempts"] == 1);
    CHECK(r["attempt_used"] == 0);
    CHECK(r["seed_used"] == 5);
    CHECK(r["failed_users"].empty());
    CHECK(r["z"] == 8);
}
