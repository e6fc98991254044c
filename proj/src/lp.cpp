#include "lcbc/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcbc {

void LpModel::add_variable(const std::string& name) {
    if (std::find(variables.begin(), variables.end(), name) == variables.end())
        variables.push_back(name);
}

void LpModel::add_constraint(LpConstraint c) { constraints.push_back(std::move(c)); }

void LpModel::check() const {
    for (const LpConstraint& c : constraints) {
        if (c.tag.empty()) throw std::invalid_argument("constraint without tag");
        for (const auto& [name, coeff] : c.coeff)
            if (std::find(variables.begin(), variables.end(), name) == variables.end())
                throw std::invalid_argument("constraint " + c.tag + " references undeclared " +
                                            name);
    }
    for (const auto& [name, coeff] : objective)
        if (std::find(variables.begin(), variables.end(), name) == variables.end())
            throw std::invalid_argument("objective references undeclared " + name);
}

namespace {

// dense tableau: rows[i] has ncols entries plus rhs at index ncols
struct Tableau {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> cost;  // reduced-cost row, cost[ncols] = -objective
    std::vector<int> basis;
    int ncols = 0;

    void pivot(int r, int s) {
        std::vector<Rational>& pr = rows[static_cast<size_t>(r)];
        Rational inv = pr[static_cast<size_t>(s)];
        for (auto& v : pr) v /= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == r) continue;
            Rational factor = rows[i][static_cast<size_t>(s)];
            if (factor == 0) continue;
            for (size_t j = 0; j < pr.size(); ++j)
                if (pr[j] != 0) rows[i][j] -= factor * pr[j];
        }
        Rational cf = cost[static_cast<size_t>(s)];
        if (cf != 0)
            for (size_t j = 0; j < pr.size(); ++j)
                if (pr[j] != 0) cost[j] -= cf * pr[j];
        basis[static_cast<size_t>(r)] = s;
    }

    // Bland: entering = lowest-index column with negative reduced cost;
    // leaving = min ratio, ties by lowest basic column index.
    // Returns false when optimal, throws on unbounded.
    bool step(int usable_cols) {
        int s = -1;
        for (int j = 0; j < usable_cols; ++j)
            if (cost[static_cast<size_t>(j)] < 0) {
                s = j;
                break;
            }
        if (s < 0) return false;
        int r = -1;
        Rational best;
        for (size_t i = 0; i < rows.size(); ++i) {
            const Rational& a = rows[i][static_cast<size_t>(s)];
            if (a <= 0) continue;
            Rational ratio = rows[i][static_cast<size_t>(ncols)] / a;
            if (r < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[static_cast<size_t>(r)])) {
                r = static_cast<int>(i);
                best = ratio;
            }
        }
        if (r < 0) throw std::runtime_error("unbounded");
        pivot(r, s);
        return true;
    }
};

}  // namespace

LpSolution solve(const LpModel& model) {
    model.check();
    int n = static_cast<int>(model.variables.size());
    std::map<std::string, int> index;
    for (int j = 0; j < n; ++j) index[model.variables[static_cast<size_t>(j)]] = j;

    int m = static_cast<int>(model.constraints.size());
    // count auxiliary columns
    int nslack = 0, nart = 0;
    for (const LpConstraint& c : model.constraints) {
        Rational rhs = c.rhs;
        Rel rel = c.rel;
        bool flip = rhs < 0;
        if (flip && rel != Rel::Eq) rel = (rel == Rel::Le) ? Rel::Ge : Rel::Le;
        if (rel == Rel::Le) ++nslack;
        else if (rel == Rel::Ge) { ++nslack; ++nart; }
        else ++nart;
    }
    int ncols = n + nslack + nart;

    Tableau t;
    t.ncols = ncols;
    t.basis.assign(static_cast<size_t>(m), -1);
    t.rows.assign(static_cast<size_t>(m), std::vector<Rational>(static_cast<size_t>(ncols) + 1));
    int slack_at = n, art_at = n + nslack;
    std::vector<int> art_cols;
    for (int i = 0; i < m; ++i) {
        const LpConstraint& c = model.constraints[static_cast<size_t>(i)];
        auto& row = t.rows[static_cast<size_t>(i)];
        Rational sign = (c.rhs < 0) ? Rational(-1) : Rational(1);
        for (const auto& [name, coeff] : c.coeff) row[static_cast<size_t>(index[name])] = sign * coeff;
        row[static_cast<size_t>(ncols)] = sign * c.rhs;
        Rel rel = c.rel;
        if (sign < 0 && rel != Rel::Eq) rel = (rel == Rel::Le) ? Rel::Ge : Rel::Le;
        if (rel == Rel::Le) {
            row[static_cast<size_t>(slack_at)] = 1;
            t.basis[static_cast<size_t>(i)] = slack_at++;
        } else if (rel == Rel::Ge) {
            row[static_cast<size_t>(slack_at)] = -1;
            ++slack_at;
            row[static_cast<size_t>(art_at)] = 1;
            t.basis[static_cast<size_t>(i)] = art_at;
            art_cols.push_back(art_at++);
        } else {
            row[static_cast<size_t>(art_at)] = 1;
            t.basis[static_cast<size_t>(i)] = art_at;
            art_cols.push_back(art_at++);
        }
    }

    LpSolution sol;

    // phase 1: minimize artificial sum
    if (!art_cols.empty()) {
        t.cost.assign(static_cast<size_t>(ncols) + 1, Rational(0));
        for (int j : art_cols) t.cost[static_cast<size_t>(j)] = 1;
        for (int i = 0; i < m; ++i)
            if (std::find(art_cols.begin(), art_cols.end(), t.basis[static_cast<size_t>(i)]) !=
                art_cols.end())
                for (size_t j = 0; j <= static_cast<size_t>(ncols); ++j)
                    t.cost[j] -= t.rows[static_cast<size_t>(i)][j];
        while (t.step(ncols)) {}
        Rational art_sum = -t.cost[static_cast<size_t>(ncols)];
        if (art_sum != 0) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // drive remaining basic artificials out or drop redundant rows
        for (int i = m - 1; i >= 0; --i) {
            int b = t.basis[static_cast<size_t>(i)];
            if (std::find(art_cols.begin(), art_cols.end(), b) == art_cols.end()) continue;
            int s = -1;
            for (int j = 0; j < n + nslack; ++j)
                if (t.rows[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
                    s = j;
                    break;
                }
            if (s >= 0) {
                t.pivot(i, s);
            } else {
                t.rows.erase(t.rows.begin() + i);
                t.basis.erase(t.basis.begin() + i);
            }
        }
    }

    // phase 2: minimize the (possibly negated) objective over structural and
    // slack columns; artificial columns are frozen out of the search
    t.cost.assign(static_cast<size_t>(ncols) + 1, Rational(0));
    Rational obj_sign = (model.sense == Sense::Maximize) ? Rational(-1) : Rational(1);
    for (const auto& [name, coeff] : model.objective)
        t.cost[static_cast<size_t>(index[name])] = obj_sign * coeff;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        int b = t.basis[i];
        Rational cb = t.cost[static_cast<size_t>(b)];
        if (cb == 0) continue;
        for (size_t j = 0; j <= static_cast<size_t>(ncols); ++j)
            if (t.rows[i][j] != 0) t.cost[j] -= cb * t.rows[i][j];
        t.cost[static_cast<size_t>(b)] = 0;
    }
    try {
        while (t.step(n + nslack)) {}
    } catch (const std::runtime_error&) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    std::vector<Rational> values(static_cast<size_t>(ncols), Rational(0));
    for (size_t i = 0; i < t.rows.size(); ++i)
        values[static_cast<size_t>(t.basis[i])] = t.rows[i][static_cast<size_t>(ncols)];
    Rational obj = 0;
    for (int j = 0; j < n; ++j) {
        const std::string& name = model.variables[static_cast<size_t>(j)];
        sol.assignment[name] = values[static_cast<size_t>(j)];
        auto it = model.objective.find(name);
        if (it != model.objective.end()) obj += it->second * values[static_cast<size_t>(j)];
    }
    sol.objective = obj;
    for (const LpConstraint& c : model.constraints) {
        Rational lhs = 0;
        for (const auto& [name, coeff] : c.coeff) lhs += coeff * sol.assignment.at(name);
        if (lhs == c.rhs) sol.tight.push_back(c.tag);
    }
    return sol;
}

SlackReport evaluate(const LpModel& model, const std::map<std::string, Rational>& assignment) {
    model.check();
    for (const std::string& v : model.variables)
        if (!assignment.count(v)) throw std::invalid_argument("assignment misses variable " + v);
    SlackReport rep;
    rep.feasible = true;
    for (const std::string& v : model.variables) {
        if (assignment.at(v) < 0) {
            rep.feasible = false;
            rep.violated.push_back("nonneg:" + v);
        }
    }
    for (const auto& [name, coeff] : model.objective) rep.objective += coeff * assignment.at(name);
    for (const LpConstraint& c : model.constraints) {
        Rational lhs = 0;
        for (const auto& [name, coeff] : c.coeff) lhs += coeff * assignment.at(name);
        Rational slack = (c.rel == Rel::Ge) ? lhs - c.rhs : c.rhs - lhs;
        bool ok = (c.rel == Rel::Eq) ? (lhs == c.rhs) : (slack >= 0);
        if (!ok) {
            rep.feasible = false;
            rep.violated.push_back(c.tag);
        }
        rep.slack.emplace_back(c.tag, slack);
    }
    return rep;
}

namespace {

const char* rel_str(Rel r) {
    switch (r) {
        case Rel::Le: return "<=";
        case Rel::Eq: return "=";
        case Rel::Ge: return ">=";
    }
    return "?";
}

}  // namespace

nlohmann::json lp_model_to_json(const LpModel& model) {
    nlohmann::json vars = nlohmann::json::array();
    for (const std::string& v : model.variables) vars.push_back(v);
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [name, coeff] : model.objective) obj[name] = rat_str(coeff);
    nlohmann::json cons = nlohmann::json::array();
    for (const LpConstraint& c : model.constraints) {
        nlohmann::json coeff = nlohmann::json::object();
        for (const auto& [name, value] : c.coeff) coeff[name] = rat_str(value);
        cons.push_back({{"coeff", std::move(coeff)},
                        {"rel", rel_str(c.rel)},
                        {"rhs", rat_str(c.rhs)},
                        {"tag", c.tag}});
    }
    return {{"sense", model.sense == Sense::Minimize ? "min" : "max"},
            {"variables", std::move(vars)},
            {"objective", std::move(obj)},
            {"constraints", std::move(cons)}};
}

nlohmann::json lp_solution_to_json(const LpSolution& sol) {
    const char* status = sol.status == LpStatus::Optimal
                             ? "optimal"
                             : (sol.status == LpStatus::Infeasible ? "infeasible" : "unbounded");
    nlohmann::json assign = nlohmann::json::object();
    for (const auto& [name, value] : sol.assignment) assign[name] = rat_str(value);
    nlohmann::json tight = nlohmann::json::array();
    for (const std::string& tag : sol.tight) tight.push_back(tag);
    return {{"status", status},
            {"objective", rat_str(sol.objective)},
            {"assignment", std::move(assign)},
            {"tight", std::move(tight)}};
}

}  // namespace lcbc
