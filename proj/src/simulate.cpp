#include "lcbc/simulate.hpp"

#include <stdexcept>

namespace lcbc {

RunResult run(const LcbcInstance& ins, const SchemePlan& plan, int L, std::uint64_t seed,
              bool want_transcript) {
    RunResult res;
    if (L == 0) L = plan.scale;
    if (L < 1 || L % plan.scale != 0)
        throw std::invalid_argument("block length must be a positive multiple of the plan scale");
    res.L = L;
    res.rate = Rational(plan.total_width) / plan.scale;
    int c = L / plan.scale;

    Rng rng(seed);
    Mat data = random_matrix(plan.ext_field, plan.d_scaled, c, rng);

    // one symbol row per encode column, only transmitted messages go on air
    std::vector<Mat> symbols(plan.messages.size());
    Json broadcast = Json::array();
    for (size_t i = 0; i < plan.messages.size(); ++i) {
        const Message& m = plan.messages[i];
        if (!m.transmitted) continue;
        symbols[i] = mat_mul(transpose(m.encode), data);
        if (want_transcript) {
            Json users = Json::array();
            for (int u : m.users) users.push_back(u);
            broadcast.push_back(Json{{"index", i},
                                     {"users", std::move(users)},
                                     {"member", m.member},
                                     {"width", m.width},
                                     {"symbols", mat_to_json(symbols[i])}});
        }
    }

    Embedding emb(ins.f, plan.ext_field);
    LcbcInstance scaled = scale_instance(ins, plan.scale);
    Json user_log = Json::array();
    res.ok = true;
    for (int k = 1; k <= ins.K(); ++k) {
        UserDecoder dec = build_user_decoder(ins, plan, k);
        Mat demand = embed_matrix(scaled.demand[static_cast<size_t>(k - 1)], emb);
        Mat expected = mat_mul(transpose(demand), data);

        std::optional<Mat> coeff = solve_many(dec.columns, demand);
        bool user_ok = coeff.has_value();
        Mat recovered(plan.ext_field, demand.cols, c);
        if (user_ok) {
            // rows the user actually holds: cache content, then one row per
            // received (or reconstructed withheld) symbol
            Mat known = mat_mul(transpose(dec.columns), data);
            recovered = mat_mul(transpose(*coeff), known);
            user_ok = (recovered.a == expected.a);
        }
        if (!user_ok) {
            res.ok = false;
            res.failed_users.push_back(k);
        }
        if (want_transcript)
            user_log.push_back(Json{{"user", k},
                                    {"ok", user_ok},
                                    {"columns", dec.msg_index},
                                    {"coefficients", coeff ? mat_to_json(*coeff) : Json()},
                                    {"recovered", mat_to_json(recovered)},
                                    {"expected", mat_to_json(expected)}});
    }

    if (want_transcript)
        res.transcript = Json{{"seed", seed},
                              {"L", L},
                              {"z", plan.z},
                              {"data", mat_to_json(data)},
                              {"broadcast", std::move(broadcast)},
                              {"users", std::move(user_log)}};
    return res;
}

std::uint64_t derive_seed(std::uint64_t seed, int index) {
    std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1));
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::vector<Rational> measure_rate_distribution(const LcbcInstance& ins, int trials,
                                                std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trial count must be positive");
    PlanOutcome out = plan_scheme(ins, seed);
    if (!out.report.ok) throw std::runtime_error("no decodable plan within the attempt budget");
    std::vector<Rational> rates;
    for (int t = 0; t < trials; ++t) {
        RunResult r = run(ins, out.plan, 0, derive_seed(seed, t));
        if (!r.ok) throw std::runtime_error("delivery round failed to decode");
        rates.push_back(r.rate);
    }
    return rates;
}

Json run_result_to_json(const RunResult& r) {
    Json failed = Json::array();
    for (int k : r.failed_users) failed.push_back(k);
    Json j{{"ok", r.ok},
           {"failed_users", std::move(failed)},
           {"L", r.L},
           {"rate", rat_str(r.rate)}};
    if (!r.transcript.is_null()) j["transcript"] = r.transcript;
    return j;
}

}  // namespace lcbc
