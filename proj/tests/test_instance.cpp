#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "lcbc/instance.hpp"

using namespace lcbc;

namespace {

Json valid_instance_json() {
    return instance_to_json(make_fixture("mds_k3"));
}

bool equal_instances(const LcbcInstance& a, const LcbcInstance& b) {
    if (!a.f->same_as(*b.f) || a.d != b.d || a.K() != b.K()) return false;
    for (int k = 1; k <= a.K(); ++k) {
        if (!(a.cache[static_cast<size_t>(k - 1)] == b.cache[static_cast<size_t>(k - 1)]))
            return false;
        if (!(a.demand[static_cast<size_t>(k - 1)] == b.demand[static_cast<size_t>(k - 1)]))
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("fixtures exist, validate, and round-trip through JSON") {
    auto names = fixture_names();
    CHECK(names == std::vector<std::string>{"toy_k4", "fig1_k2", "mds_k3"});
    for (const auto& name : names) {
        CAPTURE(name);
        LcbcInstance ins = make_fixture(name);
        CHECK_NOTHROW(ins.validate());
        Json j = instance_to_json(ins);
        LcbcInstance back = instance_from_json(j);
        CHECK(equal_instances(ins, back));
        // serialization is stable
        CHECK(instance_to_json(back) == j);
    }
    CHECK_THROWS_AS(make_fixture("nope"), std::invalid_argument);
}

TEST_CASE("fixture shapes") {
    LcbcInstance toy = make_fixture("toy_k4");
    CHECK(toy.K() == 4);
    CHECK(toy.d == 4);
    for (int k = 1; k <= 4; ++k) {
        CHECK(toy.mp(k) == 1);
        CHECK(toy.m(k) == 1);
    }
    LcbcInstance fig = make_fixture("fig1_k2");
    CHECK(fig.K() == 2);
    CHECK(fig.mp(1) == 1);
    CHECK(fig.m(1) == 2);
    CHECK(fig.joint(1).cols == 3);
    LcbcInstance mds = make_fixture("mds_k3");
    CHECK(mds.K() == 3);
    CHECK(mds.d == 2);
    for (int k = 1; k <= 3; ++k) CHECK(mds.mp(k) == 0);
}

TEST_CASE("matrix JSON round-trip and shape errors") {
    Field f = make_field(3, 1);
    Mat m(f, 2, 3);
    m.at(0, 0) = 1;
    m.at(1, 2) = 2;
    Json j = mat_to_json(m);
    CHECK(j["rows"] == 2);
    CHECK(j["cols"] == 3);
    CHECK(mat_from_json(j, f, "ctx") == m);

    Json bad = j;
    bad.erase("data");
    CHECK_THROWS_WITH_AS(mat_from_json(bad, f, "ctx"),
                         "ctx: matrix needs rows/cols/data", std::invalid_argument);
    bad = j;
    bad["data"][0] = Json::array({1, 2});
    CHECK_THROWS_WITH_AS(mat_from_json(bad, f, "ctx"),
                         "ctx: data row 0 width mismatch", std::invalid_argument);
    bad = j;
    bad["data"][1][0] = 7;
    CHECK_THROWS_WITH_AS(mat_from_json(bad, f, "ctx"),
                         "ctx: entry (1,0) exceeds field order", std::invalid_argument);
    bad = j;
    bad["data"][1][0] = -1;
    CHECK_THROWS_WITH_AS(mat_from_json(bad, f, "ctx"),
                         "ctx: entry (1,0) must be a nonnegative integer",
                         std::invalid_argument);
    bad = j;
    bad["rows"] = 5;
    CHECK_THROWS_WITH_AS(mat_from_json(bad, f, "ctx"),
                         "ctx: data row count mismatch", std::invalid_argument);
}

TEST_CASE("instance JSON diagnostics name the offending user") {
    Json j = valid_instance_json();
    j["users"][1]["demand"]["data"][0][0] = 1;
    j["users"][1]["demand"]["data"][1][0] = 1;
    // user 2 now demands e1+e2, still independent of its empty cache
    CHECK_NOTHROW(instance_from_json(j));

    j = valid_instance_json();
    j.erase("d");
    CHECK_THROWS_WITH_AS(instance_from_json(j), "instance: missing field 'd'",
                         std::invalid_argument);

    j = valid_instance_json();
    j["users"] = Json::array();
    CHECK_THROWS_WITH_AS(instance_from_json(j), "instance: users must be a nonempty array",
                         std::invalid_argument);

    j = valid_instance_json();
    j["users"][0].erase("cache");
    CHECK_THROWS_WITH_AS(instance_from_json(j),
                         "instance: user 1: needs cache and demand matrices",
                         std::invalid_argument);

    j = valid_instance_json();
    j["users"][2]["demand"]["data"][0][0] = 9;
    CHECK_THROWS_WITH_AS(instance_from_json(j),
                         "instance: user 3 demand: entry (0,0) exceeds field order",
                         std::invalid_argument);
}

TEST_CASE("validation rejects dependent cache and demand columns") {
    Field f = make_field(2, 1);
    LcbcInstance ins;
    ins.f = f;
    ins.d = 2;
    Mat e1(f, 2, 1);
    e1.at(0, 0) = 1;
    ins.cache = {e1};
    ins.demand = {e1};
    CHECK_THROWS_WITH_AS(ins.validate(),
                         "instance: user 1 cache and demand columns are dependent",
                         std::invalid_argument);
    // mismatched row count
    LcbcInstance bad = ins;
    bad.demand = {Mat(f, 3, 1)};
    CHECK_THROWS_WITH_AS(bad.validate(), "instance: user 1 matrix row count differs from d",
                         std::invalid_argument);
    // out-of-range entry smuggled into a raw matrix
    LcbcInstance oob = ins;
    Mat e2(f, 2, 1);
    e2.at(1, 0) = 1;
    oob.demand = {e2};
    CHECK_NOTHROW(oob.validate());
    oob.demand[0].at(1, 0) = 2;
    CHECK_THROWS_WITH_AS(oob.validate(), "instance: user 1 entry out of field range",
                         std::invalid_argument);
}

TEST_CASE("load_instance reports file and parse problems") {
    CHECK_THROWS_WITH_AS(load_instance("/nonexistent/path.json"),
                         "cannot open instance file: /nonexistent/path.json",
                         std::invalid_argument);
    std::string path = "bad_parse.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(load_instance(path), std::invalid_argument);
    {
        std::ofstream out(path);
        out << instance_to_json(make_fixture("fig1_k2")).dump();
    }
    LcbcInstance ins = load_instance(path);
    CHECK(equal_instances(ins, make_fixture("fig1_k2")));
    std::remove(path.c_str());
}
