#include "lcbc/atlas.hpp"

#include <algorithm>
#include <stdexcept>

#include "lcbc/instance.hpp"

namespace lcbc {

namespace {

Mat span_or_zero(const Atlas& atlas, const std::vector<Label>& ls) {
    if (ls.empty()) return Mat(atlas.f, atlas.d, 0);
    std::vector<Mat> parts;
    for (const Label& n : ls) parts.push_back(atlas.subspace.at(n));
    return span_union(parts);
}

// first canonical-basis columns of `space` that extend `over`, in order
Mat greedy_complement(const Mat& space, const Mat& over) {
    Mat cur = over;
    int r = rank(cur);
    Mat out(space.f, space.rows, 0);
    for (int j = 0; j < space.cols; ++j) {
        Mat c = column(space, j);
        Mat next = hcat(cur, c);
        if (rank(next) == r + 1) {
            out = hcat(out, c);
            cur = std::move(next);
            ++r;
        }
    }
    return out;
}

}  // namespace

Mat Atlas::neighbor_span(const Label& l) const { return span_or_zero(*this, ls.at(l)); }

Atlas build_atlas(const std::vector<Mat>& U) {
    if (U.empty()) throw std::invalid_argument("no users");
    Atlas atlas;
    atlas.K = static_cast<int>(U.size());
    atlas.d = U[0].rows;
    atlas.f = U[0].f;
    for (const Mat& m : U) {
        if (!m.f || !m.f->same_as(*atlas.f)) throw std::invalid_argument("field mismatch");
        if (m.rows != atlas.d) throw std::invalid_argument("ambient dimension mismatch");
    }
    atlas.labels = enumerate_labels(atlas.K);

    std::vector<Mat> full(U.size());
    for (size_t k = 0; k < U.size(); ++k) full[k] = col_basis(U[k]);
    auto span_of = [&](const std::vector<int>& users) {
        std::vector<Mat> parts;
        for (int u : users) parts.push_back(full[static_cast<size_t>(u - 1)]);
        return span_union(parts);
    };

    for (const Label& l : atlas.labels) {
        atlas.ls[l] = ls_of(l, atlas.K);
        switch (l.kind) {
            case Kind::Intersect: {
                Mat cur = full[static_cast<size_t>(l.S[0] - 1)];
                for (size_t i = 1; i < l.S.size(); ++i)
                    cur = span_intersect(cur, full[static_cast<size_t>(l.S[i] - 1)]);
                atlas.subspace[l] = std::move(cur);
                break;
            }
            case Kind::Compose:
                atlas.subspace[l] =
                    span_intersect(full[static_cast<size_t>(l.k - 1)], span_of(l.S));
                break;
            case Kind::Single:
                atlas.subspace[l] = full[static_cast<size_t>(l.k - 1)];
                break;
        }
    }

    // Intersect and Single bases: canonical complement over the neighbor span
    for (const Label& l : atlas.labels) {
        if (l.kind == Kind::Compose) continue;
        atlas.base[l] = greedy_complement(atlas.subspace[l], span_or_zero(atlas, atlas.ls[l]));
    }

    // Compose bases: built jointly per family so that aligned columns sum to
    // zero across the family
    std::vector<int> all(static_cast<size_t>(atlas.K));
    for (int i = 0; i < atlas.K; ++i) all[static_cast<size_t>(i)] = i + 1;
    for (const auto& T : subsets_of(all, 3)) {
        std::vector<Label> members;
        for (int k : T) {
            std::vector<int> S;
            for (int x : T)
                if (x != k) S.push_back(x);
            members.push_back({Kind::Compose, S, k});
        }
        std::vector<Mat> W;
        for (const Label& m : members) W.push_back(atlas.subspace.at(m));
        Mat first_neigh = span_or_zero(atlas, atlas.ls.at(members[0]));
        int b = W[0].cols - rank(first_neigh);

        if (b == 0) {
            for (const Label& m : members) atlas.base[m] = Mat(atlas.f, atlas.d, 0);
            continue;
        }

        // kernel of the summing map on the stacked member subspaces: each
        // kernel vector splits into per-member coefficient blocks whose
        // subspace images sum to zero
        Mat stacked = hcat(W);
        Mat ker = kernel(stacked);
        std::vector<int> offset(W.size() + 1, 0);
        for (size_t i = 0; i < W.size(); ++i)
            offset[i + 1] = offset[i] + W[i].cols;

        Mat cur = first_neigh;
        int r = rank(cur);
        std::vector<int> chosen;
        for (int j = 0; j < ker.cols && static_cast<int>(chosen.size()) < b; ++j) {
            Mat x0(atlas.f, W[0].cols, 1);
            for (int i = 0; i < W[0].cols; ++i) x0.at(i, 0) = ker.at(i, j);
            Mat c = mat_mul(W[0], x0);
            Mat next = hcat(cur, c);
            if (rank(next) == r + 1) {
                chosen.push_back(j);
                cur = std::move(next);
                ++r;
            }
        }
        if (static_cast<int>(chosen.size()) != b)
            throw std::logic_error("family base construction fell short for " +
                                   label_str(members[0]));

        for (size_t i = 0; i < members.size(); ++i) {
            Mat coeff(atlas.f, W[i].cols, b);
            for (int cidx = 0; cidx < b; ++cidx)
                for (int row = 0; row < W[i].cols; ++row)
                    coeff.at(row, cidx) = ker.at(offset[i] + row, chosen[static_cast<size_t>(cidx)]);
            atlas.base[members[i]] = mat_mul(W[i], coeff);
        }
    }
    return atlas;
}

FamilyReport verify_family_independence(const Atlas& atlas, const std::vector<int>& T) {
    if (T.size() < 3) throw std::invalid_argument("family needs at least 3 users");
    FamilyReport rep;
    rep.T = T;
    std::vector<Label> members;
    std::vector<Mat> bases;
    for (int k : T) {
        std::vector<int> S;
        for (int x : T)
            if (x != k) S.push_back(x);
        Label l{Kind::Compose, S, k};
        members.push_back(l);
        bases.push_back(atlas.base.at(l));
        rep.dims.push_back(atlas.base.at(l).cols);
    }
    rep.equal_dims = std::all_of(rep.dims.begin(), rep.dims.end(),
                                 [&](int v) { return v == rep.dims[0]; });
    rep.common_dim = rep.equal_dims ? rep.dims[0] : -1;

    int t = static_cast<int>(T.size());
    bool all_subsets = true;
    for (const auto& P : subsets_of(T, t - 1)) {
        if (static_cast<int>(P.size()) != t - 1) continue;
        std::vector<Mat> sel;
        int want = 0;
        for (size_t i = 0; i < T.size(); ++i)
            if (std::binary_search(P.begin(), P.end(), T[i])) {
                sel.push_back(bases[i]);
                want += bases[i].cols;
            }
        bool indep = rank(hcat(sel)) == want;
        all_subsets = all_subsets && indep;
        rep.subset_independent.emplace_back(P, indep);
    }

    bool all_spans = true;
    for (size_t i = 0; i < T.size(); ++i) {
        std::vector<Mat> others;
        for (size_t j = 0; j < T.size(); ++j)
            if (j != i) others.push_back(bases[j]);
        Mat joint = hcat(others);
        bool inside = rank(joint) == rank(hcat(joint, bases[i]));
        all_spans = all_spans && inside;
        rep.omitted_in_span.emplace_back(T[i], inside);
    }

    rep.sum_zero = rep.equal_dims;
    if (rep.equal_dims && rep.common_dim > 0) {
        Mat sum = bases[0];
        for (size_t i = 1; i < bases.size(); ++i) sum = mat_add(sum, bases[i]);
        rep.sum_zero = is_zero(sum);
    }
    rep.ok = rep.equal_dims && all_subsets && all_spans && rep.sum_zero;
    return rep;
}

std::vector<ExtremeRayRow> validate_extreme_rays_k3() {
    Field f = make_field(2, 1);
    int d = 3;
    // each column is given as the set of rows holding a 1
    auto basis_mat = [&](const std::vector<std::vector<int>>& cols) {
        Mat m(f, d, static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (int r : cols[j]) m.at(r, static_cast<int>(j)) = 1;
        return m;
    };
    struct Row {
        std::string name;
        std::vector<std::vector<int>> A, B, C;
        std::array<int, 7> expected;
    };
    const std::vector<Row> rows = {
        {"(e1,0,0)", {{0}}, {}, {}, {1, 0, 0, 1, 1, 0, 1}},
        {"(0,e1,0)", {}, {{0}}, {}, {0, 1, 0, 1, 0, 1, 1}},
        {"(0,0,e1)", {}, {}, {{0}}, {0, 0, 1, 0, 1, 1, 1}},
        {"(e1,e1,0)", {{0}}, {{0}}, {}, {1, 1, 0, 1, 1, 1, 1}},
        {"(e1,0,e1)", {{0}}, {}, {{0}}, {1, 0, 1, 1, 1, 1, 1}},
        {"(0,e1,e1)", {}, {{0}}, {{0}}, {0, 1, 1, 1, 1, 1, 1}},
        {"(e1,e1,e1)", {{0}}, {{0}}, {{0}}, {1, 1, 1, 1, 1, 1, 1}},
        {"(e1,e2,e1+e2)", {{0}}, {{1}}, {{0, 1}}, {1, 1, 1, 2, 2, 2, 2}},
    };
    std::vector<ExtremeRayRow> out;
    for (const Row& r : rows) {
        Mat A = basis_mat(r.A), B = basis_mat(r.B), C = basis_mat(r.C);
        ExtremeRayRow row;
        row.name = r.name;
        row.expected = r.expected;
        row.computed = {rank(A),          rank(B),          rank(C),
                        rank(hcat(A, B)), rank(hcat(A, C)), rank(hcat(B, C)),
                        rank(hcat(hcat(A, B), C))};
        row.ok = row.computed == row.expected;
        out.push_back(std::move(row));
    }
    return out;
}

Json family_report_to_json(const FamilyReport& rep) {
    Json subsets = Json::array();
    for (const auto& [S, ok] : rep.subset_independent)
        subsets.push_back(Json{{"subset", S}, {"independent", ok}});
    Json omitted = Json::array();
    for (const auto& [k, ok] : rep.omitted_in_span)
        omitted.push_back(Json{{"member", k}, {"in_span", ok}});
    return Json{{"T", rep.T},
                {"dims", rep.dims},
                {"equal_dims", rep.equal_dims},
                {"common_dim", rep.common_dim},
                {"subset_independent", std::move(subsets)},
                {"omitted_in_span", std::move(omitted)},
                {"sum_zero", rep.sum_zero},
                {"ok", rep.ok}};
}

Json atlas_to_json(const Atlas& atlas) {
    Json labels = Json::array();
    for (const Label& l : atlas.labels) {
        Json users = Json::array();
        for (int u : l.users()) users.push_back(u);
        Json neighbors = Json::array();
        for (const Label& n : atlas.ls.at(l)) neighbors.push_back(label_str(n));
        const char* kind = l.kind == Kind::Intersect ? "intersect"
                           : l.kind == Kind::Compose ? "compose"
                                                     : "single";
        labels.push_back(Json{{"label", label_str(l)},
                              {"kind", kind},
                              {"users", std::move(users)},
                              {"subspace_dim", atlas.subspace.at(l).cols},
                              {"base_dim", atlas.base.at(l).cols},
                              {"subspace", mat_to_json(atlas.subspace.at(l))},
                              {"base", mat_to_json(atlas.base.at(l))},
                              {"neighbors", std::move(neighbors)}});
    }
    Json families = Json::array();
    std::vector<int> all(static_cast<size_t>(atlas.K));
    for (int i = 0; i < atlas.K; ++i) all[static_cast<size_t>(i)] = i + 1;
    for (const auto& T : subsets_of(all, 3))
        families.push_back(family_report_to_json(verify_family_independence(atlas, T)));
    return Json{{"K", atlas.K}, {"d", atlas.d}, {"labels", std::move(labels)},
                {"families", std::move(families)}};
}

}  // namespace lcbc
