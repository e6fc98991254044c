#pragma once

#include <cstdint>
#include <vector>

#include "lcbc/scheme.hpp"

namespace lcbc {

/// Outcome of one end-to-end delivery round.
struct RunResult {
    bool ok = false;
    std::vector<int> failed_users;
    /// Block length used (columns of data per ambient row).
    int L = 0;
    /// Transmitted symbols per data column, total_width / scale.
    Rational rate;
    /// Full round record when requested, otherwise null.
    Json transcript;
};

/// Draws uniform data of block length L (a multiple of the plan scale,
/// which is also the default when L == 0), broadcasts every transmitted
/// message, decodes each user from cache plus received symbols, and
/// compares against the demanded computation exactly.
RunResult run(const LcbcInstance& ins, const SchemePlan& plan, int L, std::uint64_t seed,
              bool want_transcript = false);

/// Plans once, then replays `trials` deliveries with per-trial seeds
/// derived from `seed`. Every trial of a verified plan must decode, so the
/// returned rates are all equal to the plan rate; the vector exists to
/// expose the invariant to callers.
std::vector<Rational> measure_rate_distribution(const LcbcInstance& ins, int trials,
                                                std::uint64_t seed);

/// Deterministic per-trial seed derivation shared by batch runners.
std::uint64_t derive_seed(std::uint64_t seed, int index);

Json run_result_to_json(const RunResult& r);

}  // namespace lcbc
