#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cscheme/fin_set.hpp"

namespace cscheme {

/// Outcome of `is_increasing_delta_system`. On failure, `violation` holds the
/// first offending pair of member indices (i < j), or (0, 0) for an empty input.
struct DeltaCheck {
    bool ok = false;
    FinSet root;
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// s_i ∩ s_j = root and root < (s_i \ root) < (s_j \ root) for all i < j.
/// With a single set the pairwise clause is vacuous; the reported root is ∅.
DeltaCheck is_increasing_delta_system(std::span<const FinSet> sets);

/// A validated increasing Δ-system.
class DeltaSystem {
public:
    /// Throws std::invalid_argument if `members` is not an increasing Δ-system.
    explicit DeltaSystem(std::vector<FinSet> members);
    /// Same, but with the root given explicitly. Only meaningful for one-member
    /// systems, where any initial segment of the member is a legal root.
    DeltaSystem(std::vector<FinSet> members, FinSet root);

    const std::vector<FinSet>& members() const noexcept { return members_; }
    const FinSet& root() const noexcept { return root_; }
    std::size_t size() const noexcept { return members_.size(); }
    /// members()[i] \ root()
    FinSet tail(std::size_t i) const { return members_[i].minus(root_); }

private:
    std::vector<FinSet> members_;
    FinSet root_;
};

}  // namespace cscheme
