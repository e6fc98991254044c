#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lcbc/lp.hpp"

namespace lcbc {

/// Parameters of a coded-caching sweep: N files, K users, per-user memory M
/// measured in files.
struct CachingConfig {
    int N = 3;
    int K = 3;
    Rational M;
    std::vector<Rational> grid;
};

/// Symmetric placement description. r[(i, j)] is the normalized rank of the
/// placement block for a file subset of size i and a user subset of size j;
/// q[(i, j)] is its zero-sum-family counterpart (j >= 3). beta[t] and
/// gamma[t] are the symmetrized delivery weights.
struct PlacementProfile {
    std::map<std::pair<int, int>, Rational> r;
    std::map<std::pair<int, int>, Rational> q;
    std::map<int, Rational> beta;
    std::map<int, Rational> gamma;
};

/// Variable names used by the general budget constraints.
std::string placement_r_name(int i, int j);
std::string placement_q_name(int i, int j);

/// The two placement budgets for N files and K users: total cache usage at
/// most M and total file usage at most 1. Variables are named via
/// placement_r_name / placement_q_name.
std::pair<LpConstraint, LpConstraint> budget_constraints(int N, int K, const Rational& M);

/// The explicit N = K = 3 delivery LP: minimize 3*beta1 + 3*beta2 + beta3 +
/// 2*gamma3 subject to the four delivery bounds, the delivery balance
/// equality, and the two budgets. Requires 0 <= M <= 3.
LpModel build_caching_lp_33(const Rational& M);

/// One sweep sample: the solved load R at memory M, with the two reference
/// polylines evaluated at the same M.
struct TradeoffPoint {
    Rational M;
    Rational R;
    Rational ref_envelope;
    Rational ref_exact;
};

/// Reference corner lists: the expected envelope and the exact
/// linear-placement region boundary.
std::vector<std::pair<Rational, Rational>> reference_envelope();
std::vector<std::pair<Rational, Rational>> reference_exact();

/// Evaluates a piecewise-linear corner list at M (exact arithmetic).
Rational polyline_at(const std::vector<std::pair<Rational, Rational>>& corners, const Rational& M);

/// Solves the N = K = 3 LP at every grid point. Grid values must lie in
/// [0, 3]; points come back in grid order. jobs > 1 solves points on that
/// many threads.
std::vector<TradeoffPoint> tradeoff_sweep(const std::vector<Rational>& grid, int jobs = 1);

/// Uniform grid 0, step, 2*step, ..., capped and terminated at 3.
std::vector<Rational> sweep_grid(const Rational& step);

/// CSV with columns M, R_num, R_den, R_decimal, ref_envelope, ref_exact.
std::string sweep_to_csv(const std::vector<TradeoffPoint>& points);

Json sweep_to_json(const std::vector<TradeoffPoint>& points);

}  // namespace lcbc
