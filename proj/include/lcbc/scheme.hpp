#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lcbc/atlas.hpp"
#include "lcbc/instance.hpp"
#include "lcbc/model.hpp"

namespace lcbc {

enum class MsgKind { Multicast, Family, Unicast };

/// One planned broadcast message. For Family messages, `users` is the family
/// set T and `member` the owning user; exactly the last family member (by
/// user order) is withheld from transmission and reconstructable as minus
/// the sum of the transmitted members.
struct Message {
    MsgKind kind = MsgKind::Unicast;
    std::vector<int> users;
    int member = 0;
    bool transmitted = true;
    int width = 0;
    Mat encode;  ///< d_scaled x width, over the working extension field
};

/// A complete broadcast plan for a (possibly block-scaled) instance.
///
/// Attempt 0 uses canonical mixing (cycling identity columns); attempts
/// 1..7 redraw all mixing uniformly from the extension field, seeded by
/// (seed, attempt).
struct SchemePlan {
    LambdaProfile profile;  ///< unscaled optimal widths
    int scale = 1;          ///< block length making all widths integral
    int z = 1;              ///< extension degree of the working field
    std::uint64_t seed = 0;
    int attempt = 0;
    int d = 0;
    int d_scaled = 0;
    Field base_field;
    Field ext_field;
    int total_width = 0;  ///< transmitted symbols per scaled block
    std::vector<Message> messages;
};

/// Least common multiple of the profile denominators.
int integrality_scale(const LambdaProfile& profile);

/// Block-diagonal stacking of L copies: ambient d*L, each user's cache and
/// demand repeated once per copy on disjoint coordinates.
LcbcInstance scale_instance(const LcbcInstance& ins, int L);

/// Smallest z with q^z >= 16 * K * d_scaled (the randomized-verification
/// sizing rule applied to the scaled ambient).
int extension_degree(const LcbcInstance& ins, int scale);

/// Builds the full message plan. The atlas argument is the atlas of `ins`;
/// when the profile needs scaling the scaled instance's atlas is built
/// internally. Widths come from the profile times the scale and are checked
/// integral. Family members are assembled from shared pairwise mixing (one
/// matrix per pair, opposite signs in its two members) and shared
/// subfamily-base mixing (one matrix per subfamily, plus sign everywhere,
/// relying on the aligned zero-sum family bases); the family sum is asserted
/// zero.
SchemePlan construct_messages(const LcbcInstance& ins, const Atlas& atlas,
                              const LambdaProfile& profile, std::uint64_t seed, int attempt = 0);

struct VerifyReport {
    bool ok = false;
    std::vector<int> failed_users;  ///< from the last attempt
    int z = 1;
    int attempts = 0;       ///< attempts consumed (1 = first succeeded)
    std::uint64_t seed = 0;
    int attempt_used = -1;  ///< attempt index that decoded, -1 if none
};

/// Per-user decodability certificate: the square matrix
/// [cache | relevant message encodes | completion] must have nonzero
/// determinant. On failure, rebuilds the plan with the next attempt index
/// (fresh mixing) up to 8 attempts total.
VerifyReport verify_decodability(const LcbcInstance& ins, const SchemePlan& plan);

/// The decoding columns a user stacks: scaled cache first, then the encode
/// matrices of the messages relevant to the user, in plan order (the
/// withheld family member participates via its reconstructed encode).
struct UserDecoder {
    Mat columns;                 ///< d_scaled x (m'_k + m_k) * scale
    std::vector<int> msg_index;  ///< plan message indices, in column order
    Mat completion;              ///< standard-basis columns squaring the system
};

UserDecoder build_user_decoder(const LcbcInstance& ins, const SchemePlan& plan, int k);

struct PlanOutcome {
    SchemePlan plan;  ///< the verified plan (or the last attempt on failure)
    VerifyReport report;
};

/// solve + construct + verify pipeline; the returned plan is the one the
/// verification certified when report.ok.
PlanOutcome plan_scheme(const LcbcInstance& ins, std::uint64_t seed);

Json plan_to_json(const SchemePlan& plan);
Json verify_report_to_json(const VerifyReport& rep);

}  // namespace lcbc
