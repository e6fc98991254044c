#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcbc/labels.hpp"
#include "lcbc/matrix.hpp"

namespace lcbc {

using Json = nlohmann::json;

/// Subspace decomposition of the K joint user matrices: per label, the
/// subspace it names and a base complementing its ls-neighbor span inside it.
///
/// Invariants: subspace[] matrices are canonical column bases; base[V] has
/// zero intersection with the span of V's ls-neighbor subspaces; the bases
/// over cover(V) jointly span subspace[V]. Compose-family bases are
/// column-aligned across the family: the j-th columns sum to zero.
struct Atlas {
    int K = 0;
    int d = 0;
    Field f;
    std::vector<Label> labels;
    std::map<Label, Mat, LabelLess> subspace;
    std::map<Label, Mat, LabelLess> base;
    std::map<Label, std::vector<Label>, LabelLess> ls;

    std::vector<Label> cover_of(const Label& l) const { return cover(l, K); }
    /// Span of the ls-neighbor subspaces of l (d x r, canonical).
    Mat neighbor_span(const Label& l) const;
};

/// Builds the decomposition atlas from the joint matrices U_k (one per user,
/// equal rows and field). Throws std::invalid_argument on shape or field
/// mismatch, std::logic_error if a coherent family base cannot be completed.
Atlas build_atlas(const std::vector<Mat>& U);

/// Independence report for the Compose family of a user set T, |T| >= 3.
struct FamilyReport {
    std::vector<int> T;
    std::vector<int> dims;  ///< base dimension per member, in T order
    bool equal_dims = false;
    int common_dim = -1;  ///< dims value when equal, -1 otherwise
    /// Per (t-1)-subset of T: do the members' base columns stay jointly
    /// independent?
    std::vector<std::pair<std::vector<int>, bool>> subset_independent;
    /// Per omitted member k: is base[k] inside the span of the other bases?
    std::vector<std::pair<int, bool>> omitted_in_span;
    bool sum_zero = false;  ///< aligned columns sum to zero across members
    bool ok = false;
};

/// Checks the family dependence structure for T; failures are reported in the
/// result, never thrown.
FamilyReport verify_family_independence(const Atlas& atlas, const std::vector<int>& T);

/// One checked row of the rank-vector extreme-ray table for three subspaces
/// in GF(2)^3. The seven entries are
/// rk(A), rk(B), rk(C), rk[A B], rk[A C], rk[B C], rk[A B C].
struct ExtremeRayRow {
    std::string name;
    std::array<int, 7> expected{};
    std::array<int, 7> computed{};
    bool ok = false;
};

/// Instantiates all 8 extreme-ray rows and compares computed rank vectors to
/// the expected ones.
std::vector<ExtremeRayRow> validate_extreme_rays_k3();

Json family_report_to_json(const FamilyReport& rep);

/// Per label: kind, users, subspace and base dimensions and matrices, plus
/// the neighbor labels; family independence reports appended under
/// "families".
Json atlas_to_json(const Atlas& atlas);

}  // namespace lcbc
