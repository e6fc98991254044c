#include "lcbc/labels.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace lcbc {

std::vector<int> Label::users() const {
    std::vector<int> u = S;
    if (kind != Kind::Intersect) {
        u.push_back(k);
        std::sort(u.begin(), u.end());
    }
    return u;
}

namespace {

int kind_rank(Kind k) {
    switch (k) {
        case Kind::Intersect: return 0;
        case Kind::Compose: return 1;
        case Kind::Single: return 2;
    }
    return 3;
}

}  // namespace

bool LabelLess::operator()(const Label& a, const Label& b) const {
    if (a.kind != b.kind) return kind_rank(a.kind) < kind_rank(b.kind);
    switch (a.kind) {
        case Kind::Intersect: {
            if (a.S.size() != b.S.size()) return a.S.size() < b.S.size();
            return a.S < b.S;
        }
        case Kind::Compose: {
            std::vector<int> ta = a.users(), tb = b.users();
            if (ta.size() != tb.size()) return ta.size() < tb.size();
            if (ta != tb) return ta < tb;
            return a.k < b.k;
        }
        case Kind::Single: return a.k < b.k;
    }
    return false;
}

std::string label_str(const Label& l) {
    auto digits = [](const std::vector<int>& v) {
        std::string s;
        for (int x : v) s += std::to_string(x);
        return s;
    };
    switch (l.kind) {
        case Kind::Intersect: return "U_" + digits(l.S);
        case Kind::Compose: return "U_" + std::to_string(l.k) + "(" + digits(l.S) + ")";
        case Kind::Single: return "U_" + std::to_string(l.k);
    }
    return "";
}

std::vector<std::vector<int>> subsets_of(const std::vector<int>& universe, int min_size) {
    int n = static_cast<int>(universe.size());
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(universe[static_cast<size_t>(i)]);
        if (static_cast<int>(s.size()) >= min_size) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<Label> enumerate_labels(int K) {
    if (K < 1) throw std::invalid_argument("K must be positive");
    std::vector<int> all(static_cast<size_t>(K));
    for (int i = 0; i < K; ++i) all[static_cast<size_t>(i)] = i + 1;
    std::vector<Label> out;
    for (const auto& S : subsets_of(all, 2)) out.push_back({Kind::Intersect, S, 0});
    for (const auto& T : subsets_of(all, 3)) {
        for (int k : T) {
            std::vector<int> S;
            for (int x : T)
                if (x != k) S.push_back(x);
            out.push_back({Kind::Compose, S, k});
        }
    }
    for (int k = 1; k <= K; ++k) out.push_back({Kind::Single, {}, k});
    std::sort(out.begin(), out.end(), LabelLess{});
    return out;
}

std::vector<Label> ls_of(const Label& l, int K) {
    std::vector<Label> out;
    switch (l.kind) {
        case Kind::Intersect: {
            if (static_cast<int>(l.S.size()) == K) return out;
            for (int u = 1; u <= K; ++u) {
                if (std::binary_search(l.S.begin(), l.S.end(), u)) continue;
                std::vector<int> S = l.S;
                S.push_back(u);
                std::sort(S.begin(), S.end());
                out.push_back({Kind::Intersect, S, 0});
            }
            break;
        }
        case Kind::Compose: {
            if (l.S.size() >= 3) {
                for (int drop : l.S) {
                    std::vector<int> S;
                    for (int x : l.S)
                        if (x != drop) S.push_back(x);
                    out.push_back({Kind::Compose, S, l.k});
                }
            } else {
                for (int other : l.S) {
                    std::vector<int> S = {l.k, other};
                    std::sort(S.begin(), S.end());
                    out.push_back({Kind::Intersect, S, 0});
                }
            }
            break;
        }
        case Kind::Single: {
            if (K == 1) return out;
            std::vector<int> S;
            for (int u = 1; u <= K; ++u)
                if (u != l.k) S.push_back(u);
            if (K == 2) {
                std::vector<int> pair = {l.k, S[0]};
                std::sort(pair.begin(), pair.end());
                out.push_back({Kind::Intersect, pair, 0});
            } else {
                out.push_back({Kind::Compose, S, l.k});
            }
            break;
        }
    }
    std::sort(out.begin(), out.end(), LabelLess{});
    return out;
}

std::vector<Label> cover(const Label& l, int K) {
    std::set<Label, LabelLess> seen;
    std::vector<Label> stack = {l};
    while (!stack.empty()) {
        Label cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second) continue;
        for (const Label& nxt : ls_of(cur, K)) stack.push_back(nxt);
    }
    return {seen.begin(), seen.end()};
}

bool VarKey::operator<(const VarKey& o) const {
    if (paren != o.paren) return !paren;
    if (S.size() != o.S.size()) return S.size() < o.S.size();
    return S < o.S;
}

std::string var_str(const VarKey& v) {
    std::string s;
    for (int x : v.S) s += std::to_string(x);
    return v.paren ? "lam_(" + s + ")" : "lam_" + s;
}

VarKey coeff_of(const Label& l) {
    switch (l.kind) {
        case Kind::Intersect: return {false, l.S};
        case Kind::Compose: return {true, l.users()};
        case Kind::Single: return {false, {l.k}};
    }
    return {};
}

}  // namespace lcbc
