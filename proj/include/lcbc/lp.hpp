#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcbc/rational.hpp"

namespace lcbc {

using Json = nlohmann::json;

enum class Sense { Minimize, Maximize };
enum class Rel { Le, Eq, Ge };

/// One linear constraint: sum of coeff[var] (rel) rhs. `tag` names the model
/// constraint the row instantiates; it is mandatory and reported back for
/// rows tight at the optimum.
struct LpConstraint {
    std::map<std::string, Rational> coeff;
    Rel rel = Rel::Le;
    Rational rhs;
    std::string tag;
};

/// LP over named nonnegative variables with exact rational data.
struct LpModel {
    Sense sense = Sense::Minimize;
    std::vector<std::string> variables;  ///< declaration order fixes column order
    std::map<std::string, Rational> objective;
    std::vector<LpConstraint> constraints;

    /// Declares the variable if new; keeps declaration order.
    void add_variable(const std::string& name);
    void add_constraint(LpConstraint c);
    /// Throws std::invalid_argument if a constraint references an undeclared
    /// variable or a tag is empty.
    void check() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational objective;
    std::map<std::string, Rational> assignment;
    std::vector<std::string> tight;  ///< tags of constraints with zero slack
};

/// Exact two-phase dense-tableau simplex with Bland's rule (lowest-index
/// entering and leaving selection); fully deterministic.
LpSolution solve(const LpModel& model);

/// Per-constraint slack of an assignment, in constraint order. Slack is
/// rhs - lhs for <=, lhs - rhs for >=, and both interpretations must be 0
/// for =; `satisfied` reflects the relation including nonnegativity of the
/// assignment.
struct SlackReport {
    bool feasible = false;
    Rational objective;
    std::vector<std::pair<std::string, Rational>> slack;
    std::vector<std::string> violated;  ///< tags, including "nonneg:<var>"
};

/// Throws std::invalid_argument if the assignment misses a declared variable.
SlackReport evaluate(const LpModel& model, const std::map<std::string, Rational>& assignment);

nlohmann::json lp_model_to_json(const LpModel& model);
nlohmann::json lp_solution_to_json(const LpSolution& sol);

}  // namespace lcbc
