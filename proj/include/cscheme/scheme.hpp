#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cscheme/fin_set.hpp"
#include "cscheme/order_iso.hpp"
#include "cscheme/report.hpp"
#include "cscheme/scheme_type.hpp"

namespace cscheme {

/// One member F of the family: its elements, rank ρ^F, root R(F) and the
/// canonical decomposition as indices into the scheme's node table.
struct SchemeNode {
    FinSet elements;
    std::uint32_t rank = 0;
    FinSet root;
    std::vector<NodeId> children;

    friend bool operator==(const SchemeNode&, const SchemeNode&) = default;
};

/// Finite-rank construction scheme over the universe [0, universe).
///
/// Members are stored once each in a flat table (a DAG: a member shared by
/// several decompositions is one node with several parents). Node 0 is not
/// required to be the top; `top` names it.
struct ConstructionScheme {
    SchemeType type;
    std::uint32_t universe = 0;
    NodeId top = 0;
    std::vector<SchemeNode> nodes;

    const SchemeNode& node(NodeId id) const { return nodes.at(id); }
    std::size_t size() const noexcept { return nodes.size(); }

    friend bool operator==(const ConstructionScheme&, const ConstructionScheme&) = default;
};

/// Deterministic one-top scheme: the top node has rank K and elements
/// 0..m_K-1; each rank-k node splits its elements as R(F) = first r_k, then
/// n_k consecutive blocks of m_{k-1} - r_k. Nodes are numbered in first-visit
/// preorder from the top. Throws std::invalid_argument if the type is invalid.
ConstructionScheme generate_tower_scheme(const SchemeType& t);

/// Checks size, root, decomposition, Δ-system, uniqueness and covering clauses
/// for every node. Failure clauses:
///   "node-id", "elements<universe", "|F|=m_k", "|R(F)|=r_k", "R(F)=∅ at rank 0",
///   "rank<=K", "children=n_k", "child rank=k-1", "union of children=F",
///   "Δ-system with root R(F)", "unique member", "top covers universe".
Report verify_scheme(const ConstructionScheme& s);

/// Derived structure of a verified scheme, computed once and shared by the
/// tree and gap builders and their checkers.
class SchemeIndex {
public:
    /// Precondition: verify_scheme(s).ok().
    explicit SchemeIndex(const ConstructionScheme& s);

    const ConstructionScheme& scheme() const noexcept { return *scheme_; }

    /// Node ids in increasing rank, ties in table order.
    const std::vector<NodeId>& bottom_up() const noexcept { return bottom_up_; }
    const std::vector<NodeId>& at_rank(std::uint32_t k) const { return by_rank_.at(k); }
    const std::vector<NodeId>& parents(NodeId id) const { return parents_.at(id); }

    /// Strict descendants through canonical decompositions, in table order.
    const std::vector<NodeId>& descendants(NodeId id) const { return descendants_.at(id); }
    /// Pairs (E, F) with E ⊊ F as sets, rank E < rank F.
    const std::vector<std::pair<NodeId, NodeId>>& nested_pairs() const noexcept { return nested_; }
    bool is_descendant(NodeId e, NodeId f) const;
    /// True if some node has both as children.
    bool are_siblings(NodeId e, NodeId f) const;

    /// Number of times each rank occurs along all decomposition paths from the top.
    std::vector<std::uint64_t> occurrence_counts() const;

    /// Positions in `parent` of each element of child i: map[i][p] is the
    /// index in parent.elements of child_i.elements[p].
    const std::vector<std::vector<std::uint32_t>>& child_positions(NodeId parent) const {
        return child_pos_.at(parent);
    }
    /// For each position q in F: the block i (0..n-1) whose non-root part
    /// contains F[q], or -1 if F[q] ∈ R(F); and the position of F[q] in that
    /// block (or in child_0 for root points). Rank-0 nodes have no entries.
    struct BlockSlot {
        std::int32_t block;
        std::uint32_t child_pos;
    };
    const std::vector<BlockSlot>& block_slots(NodeId id) const { return slots_.at(id); }

    /// Lookup of a member by its element set.
    std::optional<NodeId> find(const FinSet& elements) const;

private:
    const ConstructionScheme* scheme_;
    std::vector<NodeId> bottom_up_;
    std::vector<std::vector<NodeId>> by_rank_;
    std::vector<std::vector<NodeId>> parents_;
    std::vector<std::vector<NodeId>> descendants_;
    std::vector<std::pair<NodeId, NodeId>> nested_;
    std::vector<std::vector<std::vector<std::uint32_t>>> child_pos_;
    std::vector<std::vector<BlockSlot>> slots_;
    std::map<FinSet, NodeId> by_elements_;
};

}  // namespace cscheme
