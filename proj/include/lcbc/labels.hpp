#pragma once

#include <map>
#include <string>
#include <vector>

namespace lcbc {

/// Kind of a decomposition label.
enum class Kind {
    Intersect,  ///< common subspace of a user set S, |S| >= 2
    Compose,    ///< user k's part composed from the others in T = S + {k}, |T| >= 3
    Single,     ///< user k's remainder
};

/// Identifies one subspace in the decomposition of a K-user instance.
///
/// Users are 1-based. For Intersect, `S` is the sorted user set and `k` is
/// unused (0). For Compose, `k` is the owner and `S` the sorted set of the
/// other participants. For Single, `S` is empty.
struct Label {
    Kind kind = Kind::Single;
    std::vector<int> S;
    int k = 0;

    bool operator==(const Label& o) const { return kind == o.kind && S == o.S && k == o.k; }

    /// All users the label involves, sorted: S for Intersect, S + {k} for
    /// Compose, {k} for Single.
    std::vector<int> users() const;
};

/// Total order: Intersect before Compose before Single; Intersect by
/// (|S|, lex S); Compose by (|T|, lex T, k) where T = S + {k}; Single by k.
struct LabelLess {
    bool operator()(const Label& a, const Label& b) const;
};

std::string label_str(const Label& l);

/// Enumerates all labels for K users in LabelLess order. The count is
/// (2^K - K - 1) + sum_{t=3..K} t * C(K, t) + K.
std::vector<Label> enumerate_labels(int K);

/// Immediate successors of a label: the subspaces whose direct sum with the
/// label's own base reconstructs the label's subspace.
std::vector<Label> ls_of(const Label& l, int K);

/// Transitive closure of ls_of including the label itself, deduplicated, in
/// LabelLess order. The base dimensions of a cover sum to the subspace
/// dimension of its root.
std::vector<Label> cover(const Label& l, int K);

/// LP variable key: lam_S (paren = false) or lam_(T) (paren = true), with S/T
/// the sorted user set.
struct VarKey {
    bool paren = false;
    std::vector<int> S;

    bool operator==(const VarKey& o) const { return paren == o.paren && S == o.S; }
    bool operator<(const VarKey& o) const;
};

std::string var_str(const VarKey& v);

/// The LP variable whose coefficient the label's base contributes to:
/// Intersect S -> lam_S, Compose(k, S) -> lam_(S + {k}), Single k -> lam_{k}.
VarKey coeff_of(const Label& l);

/// All subsets of `universe` (sorted) with size >= min_size, ordered by
/// (size, lex).
std::vector<std::vector<int>> subsets_of(const std::vector<int>& universe, int min_size);

}  // namespace lcbc
