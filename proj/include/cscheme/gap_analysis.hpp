#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cscheme/fin_set.hpp"
#include "cscheme/gap.hpp"

namespace cscheme {

/// Arbitrary finite indexed family of disjoint pairs (a_α, b_α), α ∈ Γ.
class FiniteGapFamily {
public:
    struct Sides {
        FinSet a;
        FinSet b;
        friend bool operator==(const Sides&, const Sides&) = default;
    };

    FiniteGapFamily() = default;
    /// Throws std::invalid_argument if some a_α meets b_α.
    explicit FiniteGapFamily(std::map<Ordinal, Sides> sides);
    static FiniteGapFamily from_limit(const LimitGapFamily& lim);

    const std::map<Ordinal, Sides>& sides() const noexcept { return sides_; }
    FinSet indices() const;
    bool contains(Ordinal alpha) const { return sides_.count(alpha) != 0; }
    /// Throws std::out_of_range if α ∉ Γ.
    const FinSet& a(Ordinal alpha) const { return sides_.at(alpha).a; }
    const FinSet& b(Ordinal alpha) const { return sides_.at(alpha).b; }

    friend bool operator==(const FiniteGapFamily&, const FiniteGapFamily&) = default;

private:
    std::map<Ordinal, Sides> sides_;
};

using IndexPair = std::pair<Ordinal, Ordinal>;

// Pair searches scan α < β in `sub` lexicographically and return the first
// hit. Each throws std::out_of_range if `sub` is not a subset of Γ.

/// a_α ∩ b_β ≠ ∅.
std::optional<IndexPair> ramsey_pair_search(const FiniteGapFamily& fam, const FinSet& sub);
/// (a_α ∩ b_β) ∪ (a_β ∩ b_α) = ∅.
std::optional<IndexPair> s_pair_search(const FiniteGapFamily& fam, const FinSet& sub);
/// a_α ⊆ a_β and b_α ⊆ b_β.
std::optional<IndexPair> t_pair_search(const FiniteGapFamily& fam, const FinSet& sub);

struct SplitterResult {
    FinSet c;
    /// For every α ∈ Γ: a_α ∖ c and c ∩ b_α.
    std::map<Ordinal, std::pair<FinSet, FinSet>> residues;
};

/// c = ∪_{α ∈ sub} a_α. Throws std::invalid_argument if `sub` is empty and
/// std::out_of_range if it leaves Γ.
SplitterResult union_splitter(const FiniteGapFamily& fam, const FinSet& sub);

/// p ⊆ Γ with a_α ∩ b_β = ∅ for all α ≠ β in p.
bool is_s_condition(const FiniteGapFamily& fam, const FinSet& p);
/// Whether p ∪ q is a condition. Throws std::invalid_argument if p or q is not one.
bool s_poset_compatible(const FinSet& p, const FinSet& q, const FiniteGapFamily& fam);

/// A condition of the incomparability poset: a finite set of pairwise
/// ⊆-incomparable sets.
using SetFamily = std::set<FinSet>;

bool is_t_condition(const SetFamily& p);
/// Whether p ∪ q is pairwise incomparable. Throws std::invalid_argument if
/// p or q is not a condition.
bool t_poset_compatible(const SetFamily& p, const SetFamily& q);

/// Why two conditions are incompatible: two members of p ∪ q that break the
/// condition. For S-conditions (x, y) are indices with a_x ∩ b_y ≠ ∅; for
/// T-conditions they are positions into `sets` with sets[x] ⊆ sets[y].
struct IncompatibilityWitness {
    std::size_t first;   // condition index into the antichain
    std::size_t second;
    Ordinal x;
    Ordinal y;
};

template <class Condition>
struct AntichainResult {
    std::vector<Condition> antichain;
    std::vector<IncompatibilityWitness> certificate;  // one per pair i < j
    std::size_t conditions_considered = 0;
};

/// Exhaustive search for a largest pairwise-incompatible set of S-conditions
/// drawn from the nonempty conditions p ⊆ ground with |p| ≤ max_condition_size,
/// returning at most size_bound conditions. Ties go to the lexicographically
/// least list of condition indices (conditions ordered by size, then value).
AntichainResult<FinSet> max_s_antichain(const FiniteGapFamily& fam, const FinSet& ground,
                                        std::size_t max_condition_size, std::size_t size_bound);

/// Same for T-conditions built from `sets`. In the certificate x and y index
/// into `sets`.
AntichainResult<SetFamily> max_t_antichain(const std::vector<FinSet>& sets,
                                           std::size_t max_condition_size, std::size_t size_bound);

}  // namespace cscheme
