#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lcbc/atlas.hpp"
#include "lcbc/caching.hpp"
#include "lcbc/instance.hpp"
#include "lcbc/model.hpp"
#include "lcbc/scheme.hpp"
#include "lcbc/simulate.hpp"

namespace {

using namespace lcbc;

// accepts "p", "p/q", and plain decimals like "0.05", all parsed exactly
Rational parse_number(const std::string& s) {
    size_t dot = s.find('.');
    if (dot == std::string::npos) return rat_parse(s);
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    if (head.empty()) head = "0";
    if (frac.empty() || head.find_first_not_of("0123456789") != std::string::npos ||
        frac.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("not a number: " + s);
    Rational den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational v = Rational(BigInt(head)) + Rational(BigInt(frac)) / den;
    return neg ? -v : v;
}

LcbcInstance load_checked(const std::string& path) {
    try {
        return load_instance(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::exit(3);
    }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// shared by build / verify / simulate; returns 0 or the process exit code 4
int make_plan(const LcbcInstance& ins, std::uint64_t seed, SchemePlan& plan, VerifyReport& rep) {
    SolveResult sol = solve_instance(ins);
    if (sol.status != LpStatus::Optimal) {
        std::cerr << "error: width program did not reach an optimum\n";
        return 4;
    }
    std::vector<Mat> U;
    for (int k = 1; k <= ins.K(); ++k) U.push_back(ins.joint(k));
    Atlas atlas = build_atlas(U);
    plan = construct_messages(ins, atlas, sol.profile, seed, 0);
    rep = verify_decodability(ins, plan);
    if (rep.ok && rep.attempt_used != plan.attempt)
        plan = construct_messages(ins, atlas, sol.profile, seed, rep.attempt_used);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear computation broadcast: decomposition, width LP, scheme synthesis"};
    app.require_subcommand(1);

    std::string path;
    std::uint64_t seed = 0;
    int jobs = 1;
    int subset_cap = 0;
    bool dump_lp = false;
    int trials = 0;
    int block = 0;
    std::string transcript_path;
    std::string grid_step = "1/20";
    std::string csv_path;

    CLI::App* c_decompose = app.add_subcommand("decompose", "print the subspace atlas as JSON");
    c_decompose->add_option("instance", path, "instance JSON file")->required();

    CLI::App* c_solve = app.add_subcommand("solve", "solve the exact width LP");
    c_solve->add_option("instance", path, "instance JSON file")->required();
    c_solve->add_flag("--dump-lp", dump_lp, "include the LP model in the output");
    c_solve->add_option("--subset-cap", subset_cap,
                        "limit neighbor-subset enumeration size (0 = all)");

    CLI::App* c_build = app.add_subcommand("build", "construct a broadcast plan");
    c_build->add_option("instance", path, "instance JSON file")->required();
    c_build->add_option("--seed", seed, "random seed")->envname("LCBC_SEED");

    CLI::App* c_verify = app.add_subcommand("verify", "check every user can decode");
    c_verify->add_option("instance", path, "instance JSON file")->required();
    c_verify->add_option("--seed", seed, "random seed")->envname("LCBC_SEED");
    c_verify->add_option("--trials", trials, "extra delivery rounds to replay");

    CLI::App* c_simulate = app.add_subcommand("simulate", "run end-to-end delivery rounds");
    c_simulate->add_option("instance", path, "instance JSON file")->required();
    c_simulate->add_option("--seed", seed, "random seed")->envname("LCBC_SEED");
    c_simulate->add_option("--trials", trials, "delivery rounds (default 1)");
    c_simulate->add_option("--block", block, "block length (multiple of the plan scale)");
    c_simulate->add_option("--transcript", transcript_path, "write round transcripts to a file");

    CLI::App* c_caching = app.add_subcommand("caching", "memory-load tradeoff sweep (CSV)");
    c_caching->add_option("--grid", grid_step, "grid step over [0, 3]");
    c_caching->add_option("--csv", csv_path, "write CSV here instead of standard output");
    c_caching->add_option("--jobs", jobs, "parallel LP solves");

    CLI::App* c_fixtures =
        app.add_subcommand("fixtures", "write the bundled example instances to the working directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*c_decompose) {
            LcbcInstance ins = load_checked(path);
            std::vector<Mat> U;
            for (int k = 1; k <= ins.K(); ++k) U.push_back(ins.joint(k));
            emit(atlas_to_json(build_atlas(U)));
            return 0;
        }

        if (*c_solve) {
            LcbcInstance ins = load_checked(path);
            SolveResult res = solve_instance(ins, subset_cap);
            Json out = solve_result_to_json(res);
            if (dump_lp) {
                std::vector<Mat> U;
                for (int k = 1; k <= ins.K(); ++k) U.push_back(ins.joint(k));
                out["model"] = lp_model_to_json(build_lp(ins, build_atlas(U), subset_cap));
            }
            emit(out);
            if (res.status != LpStatus::Optimal) {
                std::cerr << "error: width program did not reach an optimum\n";
                return 4;
            }
            return 0;
        }

        if (*c_build) {
            LcbcInstance ins = load_checked(path);
            SchemePlan plan;
            VerifyReport rep;
            if (int rc = make_plan(ins, seed, plan, rep)) return rc;
            emit(plan_to_json(plan));
            if (!rep.ok) {
                std::cerr << "error: no decodable plan within the attempt budget\n";
                return 2;
            }
            return 0;
        }

        if (*c_verify) {
            LcbcInstance ins = load_checked(path);
            SchemePlan plan;
            VerifyReport rep;
            if (int rc = make_plan(ins, seed, plan, rep)) return rc;
            Json out = verify_report_to_json(rep);
            int trials_ok = 0;
            if (rep.ok)
                for (int t = 0; t < trials; ++t)
                    if (run(ins, plan, 0, derive_seed(seed, t)).ok) ++trials_ok;
            out["trials"] = trials;
            out["trials_ok"] = trials_ok;
            emit(out);
            if (!rep.ok || trials_ok != trials) {
                std::cerr << "error: decode verification failed\n";
                return 2;
            }
            return 0;
        }

        if (*c_simulate) {
            LcbcInstance ins = load_checked(path);
            if (trials == 0) trials = 1;
            SchemePlan plan;
            VerifyReport rep;
            if (int rc = make_plan(ins, seed, plan, rep)) return rc;
            if (!rep.ok) {
                emit(Json{{"ok", false}, {"verify", verify_report_to_json(rep)}});
                std::cerr << "error: no decodable plan within the attempt budget\n";
                return 2;
            }
            bool want_transcript = !transcript_path.empty();
            std::vector<RunResult> results(static_cast<size_t>(trials));
            for (int t = 0; t < trials; ++t)
                results[static_cast<size_t>(t)] =
                    run(ins, plan, block, derive_seed(seed, t), want_transcript);
            Json rounds = Json::array();
            Json transcripts = Json::array();
            bool all_ok = true;
            for (RunResult& r : results) {
                all_ok = all_ok && r.ok;
                if (want_transcript) transcripts.push_back(std::move(r.transcript));
                r.transcript = Json();
                rounds.push_back(run_result_to_json(r));
            }
            if (want_transcript) {
                std::ofstream f(transcript_path);
                if (!f) throw std::runtime_error("cannot write " + transcript_path);
                f << transcripts.dump(2) << "\n";
            }
            emit(Json{{"ok", all_ok},
                      {"rate", rat_str(results.front().rate)},
                      {"L", results.front().L},
                      {"rounds", std::move(rounds)}});
            if (!all_ok) {
                std::cerr << "error: delivery round failed to decode\n";
                return 2;
            }
            return 0;
        }

        if (*c_caching) {
            std::vector<Rational> grid = sweep_grid(parse_number(grid_step));
            std::string csv = sweep_to_csv(tradeoff_sweep(grid, jobs));
            if (csv_path.empty()) {
                std::cout << csv;
            } else {
                std::ofstream f(csv_path);
                if (!f) throw std::runtime_error("cannot write " + csv_path);
                f << csv;
            }
            return 0;
        }

        if (*c_fixtures) {
            Json names = Json::array();
            for (const std::string& name : fixture_names()) {
                std::string file = name + ".json";
                std::ofstream f(file);
                if (!f) throw std::runtime_error("cannot write " + file);
                f << instance_to_json(make_fixture(name)).dump(2) << "\n";
                std::cerr << "wrote " << file << "\n";
                names.push_back(file);
            }
            emit(names);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
