#include "lcbc/caching.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace lcbc {

namespace {

Rational binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt v = 1;
    for (int i = 0; i < k; ++i) {
        v *= (n - i);
        v /= (i + 1);
    }
    return Rational(v);
}

std::string idx_name(char base, int i, int j) {
    return std::string(1, base) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

// printed N = K = 3 variable names put the user-subset size first
std::string printed_name(const std::string& general) {
    char base = general[0];
    size_t sep = general.find('_', 2);
    int i = std::stoi(general.substr(2, sep - 2));
    int j = std::stoi(general.substr(sep + 1));
    return std::string(1, base) + std::to_string(j) + std::to_string(i);
}

}  // namespace

std::string placement_r_name(int i, int j) { return idx_name('r', i, j); }
std::string placement_q_name(int i, int j) { return idx_name('q', i, j); }

std::pair<LpConstraint, LpConstraint> budget_constraints(int N, int K, const Rational& M) {
    if (N < 1 || K < 1) throw std::invalid_argument("need at least one file and one user");
    LpConstraint cache;
    cache.rel = Rel::Le;
    cache.rhs = M;
    cache.tag = "budget.cache";
    LpConstraint file;
    file.rel = Rel::Le;
    file.rhs = 1;
    file.tag = "budget.file";
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= K; ++j) {
            cache.coeff[placement_r_name(i, j)] = binom(N, i) * binom(K - 1, j - 1);
            file.coeff[placement_r_name(i, j)] = binom(N - 1, i - 1) * binom(K, j);
            if (j >= 3) {
                cache.coeff[placement_q_name(i, j)] = binom(N, i) * binom(K - 1, j - 1);
                file.coeff[placement_q_name(i, j)] = binom(N - 1, i - 1) * binom(K, j) * (j - 1);
            }
        }
    }
    return {cache, file};
}

LpModel build_caching_lp_33(const Rational& M) {
    if (M < 0 || M > 3) throw std::invalid_argument("memory must lie in [0, 3]");
    LpModel lp;
    lp.sense = Sense::Minimize;
    for (const char* v : {"beta1", "beta2", "beta3", "gamma3"}) lp.add_variable(v);
    for (int j = 1; j <= 3; ++j)
        for (int i = 1; i <= 3; ++i) lp.add_variable("r" + std::to_string(j) + std::to_string(i));
    for (int i = 1; i <= 3; ++i) lp.add_variable("q3" + std::to_string(i));
    lp.objective = {{"beta1", 3}, {"beta2", 3}, {"beta3", 1}, {"gamma3", 2}};

    auto le = [&](std::map<std::string, Rational> lhs, std::map<std::string, Rational> cover,
                  const char* tag) {
        LpConstraint c;
        c.rel = Rel::Le;
        c.rhs = 0;
        c.tag = tag;
        c.coeff = std::move(lhs);
        for (const auto& [v, w] : cover) c.coeff[v] -= w;
        lp.add_constraint(c);
    };
    le({{"beta3", 1}}, {{"r21", 1}}, "delivery.1");
    le({{"beta2", 1}, {"beta3", 1}},
       {{"q31", 1}, {"q32", 2}, {"r11", 1}, {"r12", 2}, {"r21", 1}, {"r22", 3}, {"r32", 1}},
       "delivery.2");
    le({{"beta2", 2}, {"beta3", 1}},
       {{"q31", 1}, {"q32", 4}, {"r11", 2}, {"r12", 4}, {"r21", 1}, {"r22", 6}, {"r32", 2}},
       "delivery.3");
    // the aggregated placement variable q33 enters the final delivery bound
    // with weight 2
    le({{"gamma3", 1}, {"beta2", 2}, {"beta3", 1}},
       {{"q31", 1},
        {"q32", 4},
        {"q33", 2},
        {"r11", 2},
        {"r12", 6},
        {"r13", 3},
        {"r21", 1},
        {"r22", 6},
        {"r23", 3},
        {"r32", 2},
        {"r33", 1}},
       "delivery.4");

    LpConstraint balance;
    balance.rel = Rel::Eq;
    balance.rhs = 1;
    balance.tag = "delivery.balance";
    balance.coeff = {{"beta1", 1}, {"gamma3", 1}, {"beta2", 2}, {"beta3", 1},
                     {"q31", 1},   {"r11", 1},    {"r21", 2},   {"r31", 1}};
    lp.add_constraint(balance);

    auto [cache_c, file_c] = budget_constraints(3, 3, M);
    for (LpConstraint* c : {&cache_c, &file_c}) {
        LpConstraint renamed;
        renamed.rel = c->rel;
        renamed.rhs = c->rhs;
        renamed.tag = c->tag;
        for (const auto& [name, w] : c->coeff) renamed.coeff[printed_name(name)] = w;
        lp.add_constraint(renamed);
    }
    return lp;
}

std::vector<std::pair<Rational, Rational>> reference_envelope() {
    return {{0, 3},
            {Rational(1) / 3, 2},
            {Rational(1) / 2, Rational(5) / 3},
            {1, 1},
            {2, Rational(1) / 2},
            {3, 0}};
}

std::vector<std::pair<Rational, Rational>> reference_exact() {
    return {{0, 3},
            {Rational(1) / 3, 2},
            {Rational(3) / 5, Rational(3) / 2},
            {1, 1},
            {2, Rational(1) / 2},
            {3, 0}};
}

Rational polyline_at(const std::vector<std::pair<Rational, Rational>>& corners,
                     const Rational& M) {
    if (corners.size() < 2 || M < corners.front().first || M > corners.back().first)
        throw std::invalid_argument("point outside the polyline range");
    for (size_t i = 0; i + 1 < corners.size(); ++i) {
        const auto& [x0, y0] = corners[i];
        const auto& [x1, y1] = corners[i + 1];
        if (M <= x1) return y0 + (y1 - y0) * (M - x0) / (x1 - x0);
    }
    return corners.back().second;
}

std::vector<TradeoffPoint> tradeoff_sweep(const std::vector<Rational>& grid, int jobs) {
    std::vector<TradeoffPoint> points(grid.size());
    auto env = reference_envelope();
    auto exact = reference_exact();
    auto solve_at = [&](size_t i) {
        const Rational& M = grid[i];
        LpModel lp = build_caching_lp_33(M);
        LpSolution sol = solve(lp);
        if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("tradeoff point did not reach an optimum");
        points[i] = {M, sol.objective, polyline_at(env, M), polyline_at(exact, M)};
    };
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(grid.size())));
    if (jobs <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) solve_at(i);
        return points;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            try {
                for (size_t i = next++; i < grid.size(); i = next++) solve_at(i);
            } catch (...) {
                errors[static_cast<size_t>(t)] = std::current_exception();
            }
        });
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    return points;
}

std::vector<Rational> sweep_grid(const Rational& step) {
    if (step <= 0) throw std::invalid_argument("grid step must be positive");
    std::vector<Rational> grid;
    for (Rational v = 0; v < 3; v += step) grid.push_back(v);
    grid.push_back(3);
    return grid;
}

std::string sweep_to_csv(const std::vector<TradeoffPoint>& points) {
    std::string out = "M,R_num,R_den,R_decimal,ref_envelope,ref_exact\n";
    for (const TradeoffPoint& p : points) {
        char dec[32];
        std::snprintf(dec, sizeof dec, "%.6f", p.R.convert_to<double>());
        out += rat_str(p.M) + "," + numerator(p.R).str() + "," + denominator(p.R).str() + "," +
               dec + "," + rat_str(p.ref_envelope) + "," + rat_str(p.ref_exact) + "\n";
    }
    return out;
}

Json sweep_to_json(const std::vector<TradeoffPoint>& points) {
    Json arr = Json::array();
    for (const TradeoffPoint& p : points)
        arr.push_back(Json{{"M", rat_str(p.M)},
                           {"R", rat_str(p.R)},
                           {"R_decimal", p.R.convert_to<double>()},
                           {"ref_envelope", rat_str(p.ref_envelope)},
                           {"ref_exact", rat_str(p.ref_exact)}});
    return arr;
}

}  // namespace lcbc
