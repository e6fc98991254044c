#include "lcbc/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lcbc {

Rational LambdaProfile::value_of(const VarKey& v) const {
    const auto& m = v.paren ? lam_paren : lam;
    auto it = m.find(v.S);
    return it == m.end() ? Rational(0) : it->second;
}

std::vector<Rational> LambdaProfile::values() const {
    std::vector<Rational> out;
    for (const auto& [S, v] : lam) out.push_back(v);
    for (const auto& [T, v] : lam_paren) out.push_back(v);
    return out;
}

std::string set_key(const std::vector<int>& S) {
    std::string s;
    for (int x : S) s += std::to_string(x);
    return s;
}

namespace {

std::string subset_str(const std::vector<Label>& ls) {
    std::string s = "{";
    for (size_t i = 0; i < ls.size(); ++i) {
        if (i) s += ",";
        s += label_str(ls[i]);
    }
    return s + "}";
}

// cover-union coefficient map: every variable reached through any cover once
std::map<std::string, Rational> cover_sum(const Atlas& atlas, const std::vector<Label>& roots) {
    std::set<VarKey> keys;
    for (const Label& r : roots)
        for (const Label& w : cover(r, atlas.K)) keys.insert(coeff_of(w));
    std::map<std::string, Rational> out;
    for (const VarKey& k : keys) out[var_str(k)] = 1;
    return out;
}

// labels whose message user k decodes, in atlas order
std::vector<Label> labels_for_user(const Atlas& atlas, int k) {
    std::vector<Label> out;
    for (const Label& l : atlas.labels) {
        bool mine = l.kind == Kind::Intersect
                        ? std::find(l.S.begin(), l.S.end(), k) != l.S.end()
                        : l.k == k;
        if (mine) out.push_back(l);
    }
    return out;
}

// The widths one user decodes must stay jointly extendable over its cache:
// for any set of its labels, total width <= rk(joint span | cache). The
// stagewise subset bounds only cover subsets of a single neighbor list, so
// the remaining joint bounds are generated lazily from violations at the
// current optimum. Each cut charges every label inside the violated span.
std::vector<LpConstraint> joint_width_cuts(const LcbcInstance& ins, const Atlas& atlas,
                                           const LpSolution& sol) {
    std::vector<LpConstraint> out;
    for (int k = 1; k <= atlas.K; ++k) {
        const Mat& cache = ins.cache[static_cast<size_t>(k - 1)];
        std::vector<Label> mine = labels_for_user(atlas, k);
        std::vector<Label> sup;
        for (const Label& l : mine)
            if (sol.assignment.at(var_str(coeff_of(l))) > Rational(0)) sup.push_back(l);
        int n = static_cast<int>(sup.size());
        if (n > 18) throw std::logic_error("joint width check: support too large");
        std::vector<Mat> cut_spans;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<Label> sel;
            std::vector<Mat> spans;
            Rational width;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) {
                    const Label& l = sup[static_cast<size_t>(i)];
                    sel.push_back(l);
                    spans.push_back(atlas.subspace.at(l));
                    width += sol.assignment.at(var_str(coeff_of(l)));
                }
            Mat joint = hcat(spans);
            if (width <= Rational(conditional_rank(joint, cache))) continue;
            Mat span = col_basis(joint);
            bool seen = false;
            for (const Mat& w : cut_spans)
                if (conditional_rank(span, w) == 0 && conditional_rank(w, span) == 0) {
                    seen = true;
                    break;
                }
            if (seen) continue;
            cut_spans.push_back(span);
            LpConstraint c;
            c.rel = Rel::Le;
            c.rhs = conditional_rank(span, cache);
            for (const Label& l : mine)
                if (conditional_rank(atlas.subspace.at(l), span) == 0)
                    c.coeff[var_str(coeff_of(l))] = 1;
            c.tag = "joint:k=" + std::to_string(k) + ":L=" + subset_str(sel);
            out.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace

LpModel build_lp(const LcbcInstance& ins, const Atlas& atlas, int subset_cap) {
    if (ins.K() != atlas.K || ins.d != atlas.d || !ins.f->same_as(*atlas.f))
        throw std::invalid_argument("atlas does not match instance");
    LpModel model;
    model.sense = Sense::Minimize;

    std::vector<int> all(static_cast<size_t>(atlas.K));
    for (int i = 0; i < atlas.K; ++i) all[static_cast<size_t>(i)] = i + 1;
    for (const auto& S : subsets_of(all, 1)) model.add_variable(var_str({false, S}));
    for (const auto& T : subsets_of(all, 3)) model.add_variable(var_str({true, T}));

    for (const auto& S : subsets_of(all, 1))
        model.objective[var_str({false, S})] = 1;
    for (const auto& T : subsets_of(all, 3))
        model.objective[var_str({true, T})] = static_cast<int>(T.size()) - 1;

    auto add_stage = [&](const Label& l, int user, const std::string& stage) {
        const Mat& cache = ins.cache[static_cast<size_t>(user - 1)];
        LpConstraint main;
        main.coeff = cover_sum(atlas, {l});
        main.rel = Rel::Le;
        main.rhs = conditional_rank(atlas.subspace.at(l), cache);
        main.tag = stage + ".main:" + label_str(l) + ":k=" + std::to_string(user);
        model.add_constraint(std::move(main));

        const std::vector<Label>& neigh = atlas.ls.at(l);
        int nn = static_cast<int>(neigh.size());
        for (unsigned mask = 1; mask < (1u << nn); ++mask) {
            std::vector<Label> sel;
            std::vector<Mat> spans;
            for (int i = 0; i < nn; ++i)
                if (mask & (1u << i)) {
                    sel.push_back(neigh[static_cast<size_t>(i)]);
                    spans.push_back(atlas.subspace.at(neigh[static_cast<size_t>(i)]));
                }
            if (subset_cap > 0 && static_cast<int>(sel.size()) > subset_cap) continue;
            LpConstraint c;
            c.coeff = cover_sum(atlas, sel);
            c.rel = Rel::Le;
            c.rhs = conditional_rank(hcat(spans), cache);
            c.tag = stage + ".subset:" + label_str(l) + ":k=" + std::to_string(user) +
                    ":L=" + subset_str(sel);
            model.add_constraint(std::move(c));
        }
    };

    for (const Label& l : atlas.labels) {
        switch (l.kind) {
            case Kind::Intersect:
                for (int k : l.S) add_stage(l, k, "stage1");
                break;
            case Kind::Compose:
                add_stage(l, l.k, "stage2");
                break;
            case Kind::Single: {
                LpConstraint c;
                c.coeff = cover_sum(atlas, {l});
                c.rel = Rel::Eq;
                c.rhs = conditional_rank(atlas.subspace.at(l),
                                         ins.cache[static_cast<size_t>(l.k - 1)]);
                c.tag = "stage3:k=" + std::to_string(l.k);
                model.add_constraint(std::move(c));
                break;
            }
        }
    }
    model.check();
    return model;
}

SolveResult solve_instance(const LcbcInstance& ins, int subset_cap) {
    ins.validate();
    std::vector<Mat> U;
    for (int k = 1; k <= ins.K(); ++k) U.push_back(ins.joint(k));
    Atlas atlas = build_atlas(U);
    LpModel model = build_lp(ins, atlas, subset_cap);
    LpSolution sol = solve(model);
    for (int round = 0; sol.status == LpStatus::Optimal; ++round) {
        std::vector<LpConstraint> cuts = joint_width_cuts(ins, atlas, sol);
        if (cuts.empty()) break;
        if (round == 64) throw std::logic_error("joint width cuts did not converge");
        for (LpConstraint& c : cuts) model.add_constraint(std::move(c));
        model.check();
        sol = solve(model);
    }

    SolveResult res;
    res.status = sol.status;
    for (int k = 1; k <= ins.K(); ++k)
        res.uncoded += conditional_rank(ins.joint(k), ins.cache[static_cast<size_t>(k - 1)]);
    if (sol.status != LpStatus::Optimal) return res;
    res.load = sol.objective;
    res.tight = sol.tight;

    std::vector<int> all(static_cast<size_t>(ins.K()));
    for (int i = 0; i < ins.K(); ++i) all[static_cast<size_t>(i)] = i + 1;
    for (const auto& S : subsets_of(all, 1)) res.profile.lam[S] = sol.assignment.at(var_str({false, S}));
    for (const auto& T : subsets_of(all, 3))
        res.profile.lam_paren[T] = sol.assignment.at(var_str({true, T}));

    // equivalent form: per-user serving load minus the multicast savings
    Rational alt = res.uncoded;
    for (const auto& [S, v] : res.profile.lam)
        if (S.size() >= 2) alt -= Rational(static_cast<int>(S.size()) - 1) * v;
    for (const auto& [T, v] : res.profile.lam_paren) alt -= v;
    if (alt != res.load) throw std::logic_error("objective identity violated at optimum");
    return res;
}

Json profile_to_json(const LambdaProfile& p) {
    Json lam = Json::object();
    for (const auto& [S, v] : p.lam) lam[set_key(S)] = rat_str(v);
    Json lam_paren = Json::object();
    for (const auto& [T, v] : p.lam_paren) lam_paren[set_key(T)] = rat_str(v);
    return Json{{"lam", std::move(lam)}, {"lam_paren", std::move(lam_paren)}};
}

Json solve_result_to_json(const SolveResult& r) {
    const char* status = r.status == LpStatus::Optimal
                             ? "optimal"
                             : (r.status == LpStatus::Infeasible ? "infeasible" : "unbounded");
    Json tight = Json::array();
    for (const std::string& t : r.tight) tight.push_back(t);
    return Json{{"status", status},
                {"load", rat_str(r.load)},
                {"uncoded", rat_str(r.uncoded)},
                {"profile", profile_to_json(r.profile)},
                {"tight", std::move(tight)}};
}

}  // namespace lcbc
