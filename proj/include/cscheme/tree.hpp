#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cscheme/report.hpp"
#include "cscheme/scheme.hpp"

namespace cscheme {

using Bits = std::vector<std::uint8_t>;

/// f_α^F and g_α^F as 0/1 vectors aligned with F's elements.
struct LabelPair {
    NodeId node = 0;
    Ordinal alpha = 0;
    Bits f;
    Bits g;

    friend bool operator==(const LabelPair&, const LabelPair&) = default;
};

/// A scheme with a label pair for every (F, α ∈ F). labels[F][p] belongs to
/// α = F.elements[p].
struct LabeledScheme {
    ConstructionScheme scheme;
    std::vector<std::vector<LabelPair>> labels;

    /// Throws std::out_of_range if α ∉ F.
    const LabelPair& at(NodeId node, Ordinal alpha) const;

    friend bool operator==(const LabeledScheme&, const LabeledScheme&) = default;
};

/// Positional bits read as a function on `domain`.
std::map<Ordinal, std::uint8_t> as_function(const FinSet& domain, const Bits& bits);

/// Bottom-up labeling. Rank 0: f = {α:0}, g = {α:1}. At rank k, with
/// α̂ = φ_i⁻¹(δ) for δ in block i:
///   δ ∈ R(F):       f = ∪_j φ_j(f_α̂), g = ∪_j φ_j(g_α̂)
///   i = 2t even:    f uses f_α̂ on blocks j ≤ i and g_α̂ on j > i; g uses f_α̂ on j < i, g_α̂ on j ≥ i
///   i = 2t+1 odd:   f uses g_α̂ on blocks j < i and f_α̂ on j ≥ i; g uses g_α̂ on j ≤ i, f_α̂ on j > i
/// Throws std::invalid_argument if the scheme does not verify.
LabeledScheme build_labels(const ConstructionScheme& s);

/// h_α on [0, α), as values indexed by γ.
struct BranchFunction {
    Ordinal alpha = 0;
    Bits values;

    friend bool operator==(const BranchFunction&, const BranchFunction&) = default;
};

/// h_α read off the top node. Throws std::out_of_range if α ≥ universe.
BranchFunction branch(const LabeledScheme& ls, Ordinal alpha);

/// True if `lower` is a proper initial segment of `upper`.
bool end_extends(const Bits& upper, const Bits& lower);

/// The set of all restrictions h_α↾δ (δ ≤ α < universe), ordered by
/// (length, lexicographic); parent[i] is the immediate predecessor.
struct TreeApprox {
    std::vector<Bits> nodes;
    std::vector<std::optional<std::size_t>> parent;

    friend bool operator==(const TreeApprox&, const TreeApprox&) = default;
};

TreeApprox build_tree(const LabeledScheme& ls);

/// Checks closure under restriction, that parent[] is an immediate predecessor,
/// and that the predecessors of every node form a chain.
Report check_tree_order(const TreeApprox& t);

/// Clauses "f=g below alpha" (f↾α = g↾α), "f(alpha)=0,g(alpha)=1",
/// "iso coherence" for same-rank siblings (other same-rank pairs are flagged,
/// not failed), "extension coherence" for every nested pair E ⊊ F, and
/// "h well-defined" for every member containing α. Shape problems are
/// reported as "shape" and stop the check.
Report check_label_invariants(const LabeledScheme& ls);

/// Over all 3-tuples: "h_a1(a0)=1", "h_a2(a0)=0", "h_a0<h_a1", "h_a0<h_a2",
/// "h_a1⊥h_a2"; over all 2-tuples: "h_a<h_phi1(a)". Diagnostics carry the same
/// chain relations restricted to the capturing node.
ConsequenceReport capture_tree_consequences(const LabeledScheme& ls);

/// DOT digraph of the tree, one edge per immediate end-extension.
std::string export_tree_dot(const TreeApprox& t);

}  // namespace cscheme
