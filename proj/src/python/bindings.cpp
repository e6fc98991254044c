#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "lcbc/atlas.hpp"
#include "lcbc/caching.hpp"
#include "lcbc/instance.hpp"
#include "lcbc/model.hpp"
#include "lcbc/scheme.hpp"
#include "lcbc/simulate.hpp"

namespace py = pybind11;

namespace {

using namespace lcbc;

LcbcInstance parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("instance JSON: ") + e.what());
    }
    return instance_from_json(j);
}

Atlas atlas_of(const LcbcInstance& ins) {
    std::vector<Mat> U;
    for (int k = 1; k <= ins.K(); ++k) U.push_back(ins.joint(k));
    return build_atlas(U);
}

std::string decompose_str(const std::string& text) {
    LcbcInstance ins = parse_instance(text);
    return atlas_to_json(atlas_of(ins)).dump();
}

std::string solve_str(const std::string& text, int subset_cap) {
    LcbcInstance ins = parse_instance(text);
    return solve_result_to_json(solve_instance(ins, subset_cap)).dump();
}

std::string build_str(const std::string& text, std::uint64_t seed) {
    LcbcInstance ins = parse_instance(text);
    PlanOutcome out = plan_scheme(ins, seed);
    return Json{{"plan", plan_to_json(out.plan)}, {"verify", verify_report_to_json(out.report)}}
        .dump();
}

std::string verify_str(const std::string& text, std::uint64_t seed) {
    LcbcInstance ins = parse_instance(text);
    PlanOutcome out = plan_scheme(ins, seed);
    return verify_report_to_json(out.report).dump();
}

std::string simulate_str(const std::string& text, std::uint64_t seed, int trials, int block,
                         bool transcript) {
    LcbcInstance ins = parse_instance(text);
    PlanOutcome out = plan_scheme(ins, seed);
    if (!out.report.ok)
        return Json{{"ok", false}, {"verify", verify_report_to_json(out.report)}}.dump();
    if (trials < 1) trials = 1;
    Json rounds = Json::array();
    bool all_ok = true;
    for (int t = 0; t < trials; ++t) {
        RunResult r = run(ins, out.plan, block, derive_seed(seed, t), transcript);
        all_ok = all_ok && r.ok;
        rounds.push_back(run_result_to_json(r));
    }
    return Json{{"ok", all_ok},
                {"rate", rat_str(Rational(out.plan.total_width) / out.plan.scale)},
                {"rounds", std::move(rounds)}}
        .dump();
}

std::string caching_sweep_str(const std::string& step, int jobs) {
    return sweep_to_json(tradeoff_sweep(sweep_grid(rat_parse(step)), jobs)).dump();
}

std::string caching_csv_str(const std::string& step, int jobs) {
    return sweep_to_csv(tradeoff_sweep(sweep_grid(rat_parse(step)), jobs));
}

std::string fixture_str(const std::string& name) {
    return instance_to_json(make_fixture(name)).dump();
}

}  // namespace

PYBIND11_MODULE(_lcbc, m) {
    m.doc() = "linear computation broadcast core: subspace decomposition, exact width LP, "
              "scheme synthesis, delivery simulation, caching tradeoff";
    m.def("decompose", &decompose_str, py::arg("instance_json"),
          "Subspace atlas of an instance, as a JSON string.");
    m.def("solve", &solve_str, py::arg("instance_json"), py::arg("subset_cap") = 0,
          "Exact width LP solution, as a JSON string.");
    m.def("build", &build_str, py::arg("instance_json"), py::arg("seed") = 0,
          "Broadcast plan plus verification report, as a JSON string.");
    m.def("verify", &verify_str, py::arg("instance_json"), py::arg("seed") = 0,
          "Decodability report, as a JSON string.");
    m.def("simulate", &simulate_str, py::arg("instance_json"), py::arg("seed") = 0,
          py::arg("trials") = 1, py::arg("block") = 0, py::arg("transcript") = false,
          "End-to-end delivery rounds, as a JSON string.");
    m.def("caching_sweep", &caching_sweep_str, py::arg("step") = "1/20", py::arg("jobs") = 1,
          "Memory-load tradeoff points, as a JSON string.");
    m.def("caching_csv", &caching_csv_str, py::arg("step") = "1/20", py::arg("jobs") = 1,
          "Memory-load tradeoff sweep as CSV text.");
    m.def("fixture", &fixture_str, py::arg("name"), "Bundled example instance, as a JSON string.");
    m.def("fixture_names", &fixture_names, "Names of the bundled example instances.");
}
