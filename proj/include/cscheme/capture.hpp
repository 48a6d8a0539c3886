#pragma once

#include <cstdint>
#include <vector>

#include "cscheme/delta_system.hpp"
#include "cscheme/scheme.hpp"

namespace cscheme {

/// A node F together with a sub-Δ-system (s_{ξ_i})_{i<n} of the query that F
/// captures: s ⊆ R(F), and φ_i(s_{ξ_0} \ s) = s_{ξ_i} \ s ⊆ F_i \ R(F).
struct CaptureWitness {
    NodeId node;
    std::uint32_t block_count;
    std::vector<std::size_t> member_indices;  // ξ_0 < ξ_1 < ... into the query
    DeltaSystem captured;
};

/// Every node of rank > 0 with n_rank ≥ wanted that captures some wanted-member
/// sub-system of `d`, in node-table order, each with its lexicographically least
/// selection. An empty result says nothing about capturing in general.
/// Throws std::invalid_argument if wanted == 0 or d.size() < wanted.
/// Precondition: verify_scheme(s).ok().
std::vector<CaptureWitness> find_captures(const ConstructionScheme& s, const DeltaSystem& d,
                                          std::uint32_t wanted);

/// Checks the capture clauses of `w` against the scheme directly.
bool is_valid_capture(const ConstructionScheme& s, const CaptureWitness& w);

struct CapturedTuple {
    NodeId node;
    std::vector<Ordinal> points;  // α, φ_1(α), ..., φ_{n-1}(α)
};

/// For every node F with n_rank ≥ n and every α ∈ F_0 \ R(F), the tuple
/// (α, φ_1(α), ..., φ_{n-1}(α)); nodes in table order, α increasing.
/// Throws std::invalid_argument if n < 1.
std::vector<CapturedTuple> enumerate_captured_tuples(const ConstructionScheme& s, std::uint32_t n);

}  // namespace cscheme
