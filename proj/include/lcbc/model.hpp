#pragma once

#include <map>
#include <vector>

#include "lcbc/atlas.hpp"
#include "lcbc/instance.hpp"
#include "lcbc/lp.hpp"
#include "lcbc/rational.hpp"

namespace lcbc {

/// Solved width coefficients: lam[S] for every S with |S| >= 1 (singletons
/// are the unicast widths) and lam_paren[T] for every family T, |T| >= 3.
/// For each user k the values over cover(U_k) sum to rk(U_k | V'_k).
struct LambdaProfile {
    std::map<std::vector<int>, Rational> lam;
    std::map<std::vector<int>, Rational> lam_paren;

    Rational value_of(const VarKey& v) const;
    /// All values in deterministic key order (lam first, then lam_paren).
    std::vector<Rational> values() const;
};

/// Builds the achievability LP for the instance: minimize
/// sum_S lam_S + sum_T (|T|-1) lam_(T) subject to, for every Intersect(S)
/// and each k in S, the cover-sum bound rk(U_S | V'_k) plus one bound per
/// nonempty subset of its ls-neighbors; the same for every Compose(k,S) at
/// its owner; and per-user cover equalities. subset_cap > 0 limits the
/// neighbor-subset enumeration size (0 = all subsets).
LpModel build_lp(const LcbcInstance& ins, const Atlas& atlas, int subset_cap = 0);

struct SolveResult {
    LpStatus status = LpStatus::Infeasible;
    LambdaProfile profile;
    Rational load;
    Rational uncoded;  ///< sum of rk(U_k | V'_k): the per-user serving load
    std::vector<std::string> tight;
};

/// Builds the atlas and LP, solves exactly, and packages the profile. The
/// stagewise subset bounds each cover one neighbor list, so after every solve
/// the positive-width labels of each user are checked jointly: any set of
/// them must fit inside rk(joint span | cache). Violated bounds are appended
/// as cuts (tagged "joint:k=..:L=..") and the LP is re-solved until all joint
/// bounds hold, so the reported profile always admits a decodable message
/// assignment. Also recomputes the load through the equivalent
/// subtracted-savings form uncoded - sum (|S|-1) lam_S - sum lam_(T) and
/// asserts it matches.
SolveResult solve_instance(const LcbcInstance& ins, int subset_cap = 0);

Json profile_to_json(const LambdaProfile& p);
Json solve_result_to_json(const SolveResult& r);

/// Digit-string key for a sorted user set, e.g. {1,3} -> "13".
std::string set_key(const std::vector<int>& S);

}  // namespace lcbc
