#include "cscheme/scheme.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cscheme/delta_system.hpp"

namespace cscheme {

namespace {

class TowerBuilder {
public:
    explicit TowerBuilder(const SchemeType& t) : type_(t) {}

    NodeId build(std::uint32_t rank, FinSet elements) {
        if (auto it = memo_.find(elements); it != memo_.end()) return it->second;
        const auto id = static_cast<NodeId>(nodes_.size());
        memo_.emplace(elements, id);
        nodes_.push_back(SchemeNode{elements, rank, {}, {}});
        if (rank == 0) return id;

        const auto rk = static_cast<std::size_t>(type_.r_at(rank));
        const auto block = static_cast<std::size_t>(type_.m_at(rank - 1)) - rk;
        const auto& v = elements.values();
        FinSet root = FinSet::from_sorted({v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rk)});

        std::vector<NodeId> children;
        for (std::size_t i = 0; i < type_.n_at(rank); ++i) {
            std::vector<Ordinal> child(root.begin(), root.end());
            const auto first = v.begin() + static_cast<std::ptrdiff_t>(rk + i * block);
            child.insert(child.end(), first, first + static_cast<std::ptrdiff_t>(block));
            children.push_back(build(rank - 1, FinSet::from_sorted(std::move(child))));
        }
        nodes_[id].root = std::move(root);
        nodes_[id].children = std::move(children);
        return id;
    }

    std::vector<SchemeNode> take() { return std::move(nodes_); }

private:
    const SchemeType& type_;
    std::vector<SchemeNode> nodes_;
    std::map<FinSet, NodeId> memo_;
};

Failure node_failure(std::string clause, NodeId id, const SchemeNode& n, std::string detail) {
    Failure f;
    f.clause = std::move(clause);
    f.node = id;
    f.rank = n.rank;
    std::ostringstream os;
    os << "node " << id << " " << n.elements << ": " << detail;
    f.detail = os.str();
    return f;
}

}  // namespace

ConstructionScheme generate_tower_scheme(const SchemeType& t) {
    const TypeReport rep = validate_type(t);
    if (!rep.ok()) throw std::invalid_argument(rep.violations.front().message);
    if (t.m.back() > std::numeric_limits<Ordinal>::max()) {
        throw std::invalid_argument("universe does not fit in 32-bit ordinals");
    }
    ConstructionScheme s;
    s.type = t;
    s.universe = static_cast<std::uint32_t>(t.m.back());
    TowerBuilder b(t);
    s.top = b.build(t.max_rank(), FinSet::range(0, s.universe));
    s.nodes = b.take();
    return s;
}

Report verify_scheme(const ConstructionScheme& s) {
    Report rep;
    rep.name = "verify_scheme";
    const auto& t = s.type;
    const std::uint32_t K = t.max_rank();
    if (t.m.size() != K + 1 || t.r.size() != K) {
        rep.add({"type", "type sequences have inconsistent lengths", {}, {}, {}, {}, {}});
        return rep;
    }
    if (s.top >= s.nodes.size()) {
        rep.add({"node-id", "top id out of range", {}, {}, {}, {}, {}});
        return rep;
    }

    std::map<FinSet, NodeId> seen;
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const SchemeNode& n = s.nodes[id];
        ++rep.checked;
        if (!n.elements.empty() && n.elements.back() >= s.universe) {
            rep.add(node_failure("elements<universe", id, n, "element outside the universe"));
        }
        if (auto [it, fresh] = seen.emplace(n.elements, id); !fresh) {
            std::ostringstream os;
            os << "same set as node " << it->second;
            auto f = node_failure("unique member", id, n, os.str());
            f.other = it->second;
            rep.add(std::move(f));
        }
        if (n.rank > K) {
            rep.add(node_failure("rank<=K", id, n, "rank exceeds the type's K"));
            continue;
        }
        if (n.elements.size() != t.m_at(n.rank)) {
            std::ostringstream os;
            os << "|F|=" << n.elements.size() << ", expected m_" << n.rank << "=" << t.m_at(n.rank);
            rep.add(node_failure("|F|=m_k", id, n, os.str()));
        }
        if (n.rank == 0) {
            if (!n.root.empty()) rep.add(node_failure("R(F)=∅ at rank 0", id, n, "root " + n.root.to_string()));
            if (!n.children.empty()) rep.add(node_failure("children=n_k", id, n, "rank-0 node has children"));
            continue;
        }
        if (n.root.size() != t.r_at(n.rank)) {
            std::ostringstream os;
            os << "|R(F)|=" << n.root.size() << ", expected r_" << n.rank << "=" << t.r_at(n.rank);
            rep.add(node_failure("|R(F)|=r_k", id, n, os.str()));
        }
        if (n.children.size() != t.n_at(n.rank)) {
            std::ostringstream os;
            os << n.children.size() << " children, expected n_" << n.rank << "=" << t.n_at(n.rank);
            rep.add(node_failure("children=n_k", id, n, os.str()));
        }
        bool children_valid = !n.children.empty();
        std::vector<FinSet> pieces;
        for (NodeId c : n.children) {
            if (c >= s.nodes.size()) {
                rep.add(node_failure("node-id", id, n, "child id out of range"));
                children_valid = false;
                continue;
            }
            if (s.nodes[c].rank + 1 != n.rank) {
                std::ostringstream os;
                os << "child " << c << " has rank " << s.nodes[c].rank;
                rep.add(node_failure("child rank=k-1", id, n, os.str()));
            }
            pieces.push_back(s.nodes[c].elements);
        }
        if (!children_valid) continue;
        FinSet uni;
        for (const auto& p : pieces) uni = uni.unite(p);
        if (uni != n.elements) {
            rep.add(node_failure("union of children=F", id, n, "children cover " + uni.to_string()));
        }
        const DeltaCheck dc = is_increasing_delta_system(pieces);
        if (!dc.ok || (pieces.size() > 1 && dc.root != n.root) ||
            (pieces.size() == 1 && !precedes(n.root, pieces[0].minus(n.root)))) {
            std::ostringstream os;
            if (!dc.ok) {
                os << "children " << dc.violation->first << "," << dc.violation->second
                   << " break the increasing Δ-system";
            } else {
                os << "children root " << dc.root << " differs from R(F)=" << n.root;
            }
            rep.add(node_failure("Δ-system with root R(F)", id, n, os.str()));
        }
    }

    const SchemeNode& top = s.nodes[s.top];
    if (top.elements != FinSet::range(0, s.universe)) {
        rep.add(node_failure("top covers universe", s.top, top, "top is not the whole universe"));
    }

    std::vector<bool> reached(s.nodes.size(), false);
    std::vector<NodeId> stack{s.top};
    reached[s.top] = true;
    while (!stack.empty()) {
        const NodeId id = stack.back();
        stack.pop_back();
        for (NodeId c : s.nodes[id].children) {
            if (c < s.nodes.size() && !reached[c]) {
                reached[c] = true;
                stack.push_back(c);
            }
        }
    }
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        if (!reached[id]) rep.add(node_failure("reachable from top", id, s.nodes[id], "not reachable"));
    }
    return rep;
}

SchemeIndex::SchemeIndex(const ConstructionScheme& s) : scheme_(&s) {
    const auto count = s.nodes.size();
    const std::uint32_t K = s.type.max_rank();
    by_rank_.assign(K + 1, {});
    parents_.assign(count, {});
    descendants_.assign(count, {});
    child_pos_.assign(count, {});
    slots_.assign(count, {});

    for (NodeId id = 0; id < count; ++id) {
        const SchemeNode& n = s.nodes[id];
        by_rank_.at(n.rank).push_back(id);
        by_elements_.emplace(n.elements, id);
        for (NodeId c : n.children) {
            auto& ps = parents_[c];
            if (std::find(ps.begin(), ps.end(), id) == ps.end()) ps.push_back(id);
        }
    }
    for (const auto& ids : by_rank_) bottom_up_.insert(bottom_up_.end(), ids.begin(), ids.end());

    for (NodeId id : bottom_up_) {
        const SchemeNode& n = s.nodes[id];
        if (n.rank == 0) continue;
        auto& cp = child_pos_[id];
        auto& slots = slots_[id];
        slots.assign(n.elements.size(), BlockSlot{-1, 0});
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            const SchemeNode& c = s.nodes[n.children[i]];
            std::vector<std::uint32_t> pos;
            pos.reserve(c.elements.size());
            for (std::size_t p = 0; p < c.elements.size(); ++p) {
                const Ordinal x = c.elements[p];
                const auto q = static_cast<std::uint32_t>(n.elements.position(x));
                pos.push_back(q);
                if (!n.root.contains(x)) {
                    slots[q] = BlockSlot{static_cast<std::int32_t>(i), static_cast<std::uint32_t>(p)};
                } else if (i == 0) {
                    slots[q] = BlockSlot{-1, static_cast<std::uint32_t>(p)};
                }
            }
            cp.push_back(std::move(pos));
        }

        std::vector<NodeId> desc;
        for (NodeId c : n.children) {
            desc.push_back(c);
            desc.insert(desc.end(), descendants_[c].begin(), descendants_[c].end());
        }
        std::sort(desc.begin(), desc.end());
        desc.erase(std::unique(desc.begin(), desc.end()), desc.end());
        descendants_[id] = std::move(desc);
    }

    // E ⊊ F with rank E < rank F: F must contain the element of E that lies in
    // the fewest members. Root points are shared widely, so min(E) is a poor probe.
    std::map<Ordinal, std::vector<NodeId>> containing;
    for (NodeId id = 0; id < count; ++id) {
        for (Ordinal x : s.nodes[id].elements) containing[x].push_back(id);
    }
    for (NodeId e = 0; e < count; ++e) {
        const SchemeNode& en = s.nodes[e];
        if (en.elements.empty()) continue;
        const std::vector<NodeId>* probe = nullptr;
        for (Ordinal x : en.elements) {
            const auto& c = containing[x];
            if (!probe || c.size() < probe->size()) probe = &c;
        }
        for (NodeId f : *probe) {
            const SchemeNode& fn = s.nodes[f];
            if (en.rank < fn.rank && en.elements.subset_of(fn.elements)) nested_.emplace_back(e, f);
        }
    }
    std::sort(nested_.begin(), nested_.end(), [](const auto& a, const auto& b) {
        return std::pair{a.second, a.first} < std::pair{b.second, b.first};
    });
}

bool SchemeIndex::is_descendant(NodeId e, NodeId f) const {
    const auto& d = descendants_.at(f);
    return std::binary_search(d.begin(), d.end(), e);
}

bool SchemeIndex::are_siblings(NodeId e, NodeId f) const {
    for (NodeId p : parents_.at(e)) {
        const auto& ch = scheme_->nodes[p].children;
        if (std::find(ch.begin(), ch.end(), f) != ch.end()) return true;
    }
    return false;
}

std::vector<std::uint64_t> SchemeIndex::occurrence_counts() const {
    const auto& s = *scheme_;
    std::vector<std::uint64_t> mult(s.nodes.size(), 0);
    std::vector<std::uint64_t> out(s.type.max_rank() + 1, 0);
    mult[s.top] = 1;
    for (auto it = bottom_up_.rbegin(); it != bottom_up_.rend(); ++it) {
        const SchemeNode& n = s.nodes[*it];
        out[n.rank] += mult[*it];
        for (NodeId c : n.children) mult[c] += mult[*it];
    }
    return out;
}

std::optional<NodeId> SchemeIndex::find(const FinSet& elements) const {
    if (auto it = by_elements_.find(elements); it != by_elements_.end()) return it->second;
    return std::nullopt;
}

}  // namespace cscheme
