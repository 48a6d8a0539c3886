#pragma once

#include <cstdint>
#include <vector>

#include "cscheme/report.hpp"
#include "cscheme/scheme.hpp"

namespace cscheme {

/// a^F_α and b^F_α for one α ∈ F.
struct SidePair {
    NodeId node = 0;
    Ordinal alpha = 0;
    FinSet a;
    FinSet b;

    friend bool operator==(const SidePair&, const SidePair&) = default;
};

/// Side sets for every (F, α ∈ F) plus the cut points N_0..N_K.
/// pairs[F][p] belongs to α = F.elements[p].
struct SideFamily {
    ConstructionScheme scheme;
    std::vector<std::uint32_t> cuts;
    std::vector<std::vector<SidePair>> pairs;

    /// Throws std::out_of_range if α ∉ F.
    const SidePair& at(NodeId node, Ordinal alpha) const;

    friend bool operator==(const SideFamily&, const SideFamily&) = default;
};

/// N_k = 2k + 2.
constexpr std::uint32_t cut_point(std::uint32_t k) noexcept { return 2 * k + 2; }

/// Bottom-up side sets. Rank 0: a = {0}, b = {1}. At rank k with
/// α̂ = φ_i⁻¹(δ) for δ in block i: root points copy (a, b) of α̂ in F_0; even
/// blocks add N_{k-1} to a and N_{k-1}+1 to b; odd blocks add N_{k-1}+1 to a
/// and N_{k-1} to b. Throws std::invalid_argument if the scheme does not verify.
SideFamily build_sides(const ConstructionScheme& s);

/// (a_α, b_α) for α in [0, universe).
struct LimitGapFamily {
    std::vector<FinSet> a;
    std::vector<FinSet> b;

    std::size_t size() const noexcept { return a.size(); }
    friend bool operator==(const LimitGapFamily&, const LimitGapFamily&) = default;
};

/// Limit sets read off the top node.
LimitGapFamily limit_family(const SideFamily& sf);

/// Clauses:
///   "cuts N_k=2k+2", "sides within N_k", "sides disjoint",
///   "new-point discipline" (a∖N_{k-1}, b∖N_{k-1} are the two fresh points by block parity),
///   "iso coherence" for same-rank siblings (other same-rank pairs flagged),
///   and for every nested pair E ⊊ F with l = ρ^E:
///   "nested restriction" (a^F_α ∩ N_l = a^E_α, same for b),
///   "nested tail growth" (α < β in E: a^F_α ∖ N_l ⊆ a^F_β, same for b),
///   "nested cross within N_l" (a^F_α ∩ b^F_β ⊆ N_l).
/// Failures on pairs related by inclusion only (not by decomposition) carry
/// "not a descendant" in their detail. Shape problems stop the check ("shape").
Report check_side_invariants(const SideFamily& sf);

/// "limit union" (top value equals the union over all members containing α),
/// "limit disjoint", "limit within N_K", and the finite forms of the pre-gap
/// conditions with l the least rank of a member containing both α and β:
/// "a_α∖a_β ⊆ N_l", "b_α∖b_β ⊆ N_l" (α < β), "a_α∩b_β ⊆ N_l" (all α ≠ β).
Report check_limit_family(const SideFamily& sf);

/// Over 3-tuples at a rank-k node: "a_a0∩b_a1∋N_{k-1}", "a_a0⊆a_a2",
/// "b_a0⊆b_a2"; over 2-tuples: "pair a_a0∩b_a1∋N_{k-1}".
ConsequenceReport capture_gap_consequences(const SideFamily& sf);

}  // namespace cscheme
