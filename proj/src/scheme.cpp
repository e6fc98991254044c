#include "lcbc/scheme.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcbc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t attempt_seed(std::uint64_t seed, int attempt) {
    return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(attempt)));
}

int to_int(const Rational& r, const char* what) {
    if (denominator(r) != 1) throw std::logic_error(std::string(what) + " is not integral");
    BigInt n = numerator(r);
    if (n < 0 || n > 1000000) throw std::logic_error(std::string(what) + " out of range");
    return static_cast<int>(n);
}

// attempt 0: cycling identity columns; attempts >= 1: uniform draws
Mat mixing(const Field& f, int rows, int cols, int attempt, Rng& rng) {
    if (attempt >= 1) return random_matrix(f, rows, cols, rng);
    Mat m(f, rows, cols);
    if (rows > 0)
        for (int j = 0; j < cols; ++j) m.at(j % rows, j) = 1;
    return m;
}

}  // namespace

int integrality_scale(const LambdaProfile& profile) {
    BigInt l = denominator_lcm(profile.values());
    if (l > 1000000) throw std::logic_error("integrality scale out of range");
    return static_cast<int>(l);
}

LcbcInstance scale_instance(const LcbcInstance& ins, int L) {
    if (L < 1) throw std::invalid_argument("block length must be positive");
    if (L == 1) return ins;
    LcbcInstance out;
    out.f = ins.f;
    out.d = ins.d * L;
    auto stack = [&](const Mat& m) {
        Mat s(ins.f, out.d, m.cols * L);
        for (int c = 0; c < L; ++c)
            for (int r = 0; r < m.rows; ++r)
                for (int j = 0; j < m.cols; ++j)
                    s.at(c * ins.d + r, c * m.cols + j) = m.at(r, j);
        return s;
    };
    for (int k = 1; k <= ins.K(); ++k) {
        out.cache.push_back(stack(ins.cache[static_cast<size_t>(k - 1)]));
        out.demand.push_back(stack(ins.demand[static_cast<size_t>(k - 1)]));
    }
    return out;
}

int extension_degree(const LcbcInstance& ins, int scale) {
    std::uint64_t q = ins.f->order();
    std::uint64_t need = 16ULL * static_cast<std::uint64_t>(ins.K()) *
                         static_cast<std::uint64_t>(ins.d) * static_cast<std::uint64_t>(scale);
    int z = 1;
    std::uint64_t pw = q;
    while (pw < need) {
        pw *= q;
        ++z;
    }
    return z;
}

SchemePlan construct_messages(const LcbcInstance& ins, const Atlas& atlas,
                              const LambdaProfile& profile, std::uint64_t seed, int attempt) {
    if (attempt < 0 || attempt > 7) throw std::invalid_argument("attempt out of budget");
    SchemePlan plan;
    plan.profile = profile;
    plan.seed = seed;
    plan.attempt = attempt;
    plan.scale = integrality_scale(profile);
    plan.d = ins.d;
    plan.d_scaled = ins.d * plan.scale;
    plan.base_field = ins.f;
    plan.z = extension_degree(ins, plan.scale);
    plan.ext_field = make_field(ins.f->p(), ins.f->n() * static_cast<unsigned>(plan.z));
    Embedding emb(ins.f, plan.ext_field);

    LcbcInstance scaled = scale_instance(ins, plan.scale);
    Atlas local;
    const Atlas* at = &atlas;
    if (plan.scale > 1) {
        std::vector<Mat> U;
        for (int k = 1; k <= scaled.K(); ++k) U.push_back(scaled.joint(k));
        local = build_atlas(U);
        at = &local;
    } else if (atlas.K != ins.K() || atlas.d != ins.d) {
        throw std::invalid_argument("atlas does not match instance");
    }

    Rng rng(attempt_seed(seed, attempt));
    std::vector<int> all(static_cast<size_t>(ins.K()));
    for (int i = 0; i < ins.K(); ++i) all[static_cast<size_t>(i)] = i + 1;

    auto width_of = [&](const VarKey& v, const char* what) {
        return to_int(profile.value_of(v) * plan.scale, what);
    };

    // stage 1: one multicast per Intersect(S), descending |S| then lex
    std::vector<std::vector<int>> v1 = subsets_of(all, 2);
    std::stable_sort(v1.begin(), v1.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                         return a.size() > b.size();
                     });
    for (const auto& S : v1) {
        int w = width_of({false, S}, "multicast width");
        Mat sub = embed_matrix(at->subspace.at({Kind::Intersect, S, 0}), emb);
        Mat mix = mixing(plan.ext_field, sub.cols, w, attempt, rng);
        plan.messages.push_back({MsgKind::Multicast, S, 0, true, w, mat_mul(sub, mix)});
    }

    // stage 2: families in (|T|, lex) order; all members assembled from
    // shared mixing, last member withheld
    for (const auto& T : subsets_of(all, 3)) {
        int w = width_of({true, T}, "family width");
        int t = static_cast<int>(T.size());

        std::map<std::pair<int, int>, Mat> pair_mix;
        for (size_t i = 0; i < T.size(); ++i)
            for (size_t j = i + 1; j < T.size(); ++j) {
                std::vector<int> S = {T[i], T[j]};
                int r = at->subspace.at({Kind::Intersect, S, 0}).cols;
                pair_mix[{T[i], T[j]}] = mixing(plan.ext_field, r, w, attempt, rng);
            }
        std::map<std::vector<int>, Mat> sub_mix;
        for (const auto& Q : subsets_of(T, 3)) {
            std::vector<int> S0;
            for (int x : Q)
                if (x != Q[0]) S0.push_back(x);
            int b = at->base.at({Kind::Compose, S0, Q[0]}).cols;
            sub_mix[Q] = mixing(plan.ext_field, b, w, attempt, rng);
        }

        std::vector<Mat> members;
        for (int k : T) {
            Mat e(plan.ext_field, plan.d_scaled, w);
            for (int j : T) {
                if (j == k) continue;
                std::pair<int, int> key = {std::min(k, j), std::max(k, j)};
                std::vector<int> S = {key.first, key.second};
                Mat term = mat_mul(embed_matrix(at->subspace.at({Kind::Intersect, S, 0}), emb),
                                   pair_mix.at(key));
                e = mat_add(e, (k < j) ? term : mat_neg(term));
            }
            for (const auto& [Q, mixm] : sub_mix) {
                if (!std::binary_search(Q.begin(), Q.end(), k)) continue;
                std::vector<int> S;
                for (int x : Q)
                    if (x != k) S.push_back(x);
                e = mat_add(e, mat_mul(embed_matrix(at->base.at({Kind::Compose, S, k}), emb), mixm));
            }
            members.push_back(std::move(e));
        }
        Mat sum(plan.ext_field, plan.d_scaled, w);
        for (const Mat& m : members) sum = mat_add(sum, m);
        if (!is_zero(sum)) throw std::logic_error("family member sum is nonzero");
        for (int i = 0; i < t; ++i)
            plan.messages.push_back(
                {MsgKind::Family, T, T[static_cast<size_t>(i)], i < t - 1, w,
                 std::move(members[static_cast<size_t>(i)])});
    }

    // stage 3: unicasts
    for (int k = 1; k <= ins.K(); ++k) {
        int w = width_of({false, {k}}, "unicast width");
        Mat sub = embed_matrix(at->subspace.at({Kind::Single, {}, k}), emb);
        Mat mix = mixing(plan.ext_field, sub.cols, w, attempt, rng);
        plan.messages.push_back({MsgKind::Unicast, {k}, k, true, w, mat_mul(sub, mix)});
    }

    for (const Message& m : plan.messages)
        if (m.transmitted) plan.total_width += m.width;
    return plan;
}

UserDecoder build_user_decoder(const LcbcInstance& ins, const SchemePlan& plan, int k) {
    UserDecoder dec;
    Embedding emb(ins.f, plan.ext_field);
    LcbcInstance scaled = scale_instance(ins, plan.scale);
    dec.columns = embed_matrix(scaled.cache[static_cast<size_t>(k - 1)], emb);

    for (size_t idx = 0; idx < plan.messages.size(); ++idx) {
        const Message& m = plan.messages[idx];
        bool relevant = false;
        switch (m.kind) {
            case MsgKind::Multicast:
                relevant = std::binary_search(m.users.begin(), m.users.end(), k);
                break;
            case MsgKind::Family:
                relevant = (m.member == k);
                break;
            case MsgKind::Unicast:
                relevant = (m.member == k);
                break;
        }
        if (!relevant) continue;
        Mat enc = m.encode;
        if (!m.transmitted) {
            // withheld family member: minus the sum of the transmitted ones
            Mat sum(plan.ext_field, plan.d_scaled, m.width);
            for (const Message& o : plan.messages) {
                if (o.kind != MsgKind::Family || o.users != m.users || o.member == m.member)
                    continue;
                sum = mat_add(sum, o.encode);
            }
            enc = mat_neg(sum);
        }
        dec.columns = hcat(dec.columns, enc);
        dec.msg_index.push_back(static_cast<int>(idx));
    }

    dec.completion = Mat(plan.ext_field, plan.d_scaled, 0);
    Mat cur = dec.columns;
    int r = rank(cur);
    for (int i = 0; i < plan.d_scaled && cur.cols < plan.d_scaled; ++i) {
        Mat e(plan.ext_field, plan.d_scaled, 1);
        e.at(i, 0) = 1;
        Mat next = hcat(cur, e);
        if (rank(next) == r + 1) {
            dec.completion = hcat(dec.completion, e);
            cur = std::move(next);
            ++r;
        }
    }
    return dec;
}

VerifyReport verify_decodability(const LcbcInstance& ins, const SchemePlan& plan) {
    VerifyReport rep;
    rep.z = plan.z;
    rep.seed = plan.seed;

    std::vector<Mat> U;
    for (int k = 1; k <= ins.K(); ++k) U.push_back(ins.joint(k));
    Atlas atlas = build_atlas(U);

    for (int a = plan.attempt; a < 8; ++a) {
        SchemePlan cand =
            (a == plan.attempt) ? plan : construct_messages(ins, atlas, plan.profile, plan.seed, a);
        rep.failed_users.clear();
        for (int k = 1; k <= ins.K(); ++k) {
            UserDecoder dec = build_user_decoder(ins, cand, k);
            Mat square = hcat(dec.columns, dec.completion);
            if (square.cols != plan.d_scaled || det(square) == 0) rep.failed_users.push_back(k);
        }
        ++rep.attempts;
        if (rep.failed_users.empty()) {
            rep.ok = true;
            rep.attempt_used = a;
            return rep;
        }
    }
    return rep;
}

PlanOutcome plan_scheme(const LcbcInstance& ins, std::uint64_t seed) {
    SolveResult sol = solve_instance(ins);
    if (sol.status != LpStatus::Optimal) throw std::runtime_error("LP did not reach an optimum");
    std::vector<Mat> U;
    for (int k = 1; k <= ins.K(); ++k) U.push_back(ins.joint(k));
    Atlas atlas = build_atlas(U);
    SchemePlan plan = construct_messages(ins, atlas, sol.profile, seed, 0);
    VerifyReport rep = verify_decodability(ins, plan);
    if (rep.ok && rep.attempt_used != plan.attempt)
        plan = construct_messages(ins, atlas, sol.profile, seed, rep.attempt_used);
    return {std::move(plan), std::move(rep)};
}

namespace {

const char* kind_str(MsgKind k) {
    switch (k) {
        case MsgKind::Multicast: return "multicast";
        case MsgKind::Family: return "family";
        case MsgKind::Unicast: return "unicast";
    }
    return "?";
}

}  // namespace

Json plan_to_json(const SchemePlan& plan) {
    Json msgs = Json::array();
    for (const Message& m : plan.messages) {
        Json users = Json::array();
        for (int u : m.users) users.push_back(u);
        msgs.push_back(Json{{"kind", kind_str(m.kind)},
                            {"users", std::move(users)},
                            {"member", m.member},
                            {"transmitted", m.transmitted},
                            {"width", m.width},
                            {"encode", mat_to_json(m.encode)}});
    }
    return Json{{"seed", plan.seed},
                {"attempt", plan.attempt},
                {"z", plan.z},
                {"scale", plan.scale},
                {"field", Json{{"p", plan.base_field->p()}, {"n", plan.base_field->n()}}},
                {"ext_field", Json{{"p", plan.ext_field->p()}, {"n", plan.ext_field->n()}}},
                {"d", plan.d},
                {"d_scaled", plan.d_scaled},
                {"total_width", plan.total_width},
                {"profile", profile_to_json(plan.profile)},
                {"messages", std::move(msgs)}};
}

Json verify_report_to_json(const VerifyReport& rep) {
    Json failed = Json::array();
    for (int k : rep.failed_users) failed.push_back(k);
    return Json{{"ok", rep.ok},          {"attempts", rep.attempts},
                {"z", rep.z},            {"failed_users", std::move(failed)},
                {"seed_used", rep.seed}, {"attempt_used", rep.attempt_used}};
}

}  // namespace lcbc
