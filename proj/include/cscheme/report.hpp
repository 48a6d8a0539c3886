#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cscheme/fin_set.hpp"

namespace cscheme {

using NodeId = std::uint32_t;

/// One violated clause. Optional fields carry whatever identifies the site.
struct Failure {
    std::string clause;
    std::string detail;
    std::optional<NodeId> node;
    std::optional<NodeId> other;
    std::optional<Ordinal> alpha;
    std::optional<Ordinal> beta;
    std::optional<std::uint32_t> rank;

    friend bool operator==(const Failure&, const Failure&) = default;
};

/// Result of an exhaustive check. `flags` are reported mismatches that do not
/// count as failures (e.g. coherence between members of different parents).
struct Report {
    std::string name;
    std::size_t checked = 0;
    std::vector<Failure> failures;
    std::vector<Failure> flags;

    bool ok() const noexcept { return failures.empty(); }
    bool has_clause(std::string_view clause) const;
    std::size_t count_clause(std::string_view clause) const;
    void add(Failure f) { failures.push_back(std::move(f)); }
    void flag(Failure f) { flags.push_back(std::move(f)); }

    friend bool operator==(const Report&, const Report&) = default;
};

/// Named pass/violation counter for a consequence (not an invariant) check.
struct Tally {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;

    friend bool operator==(const Tally&, const Tally&) = default;
};

/// Per-consequence tallies over harvested capture tuples. `diagnostics` are
/// informational tallies that do not affect ok().
struct ConsequenceReport {
    std::string name;
    std::vector<Tally> tallies;
    std::vector<Tally> diagnostics;
    std::vector<Failure> violations;

    bool ok() const noexcept;
    const Tally* find(std::string_view tally) const;

    friend bool operator==(const ConsequenceReport&, const ConsequenceReport&) = default;
};

}  // namespace cscheme
