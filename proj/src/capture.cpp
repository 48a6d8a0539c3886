#include "cscheme/capture.hpp"

#include <stdexcept>

namespace cscheme {

namespace {

// Least ξ-selection for node F, or empty if none.
std::vector<std::size_t> select_members(const ConstructionScheme& s, const SchemeNode& f,
                                        const DeltaSystem& d, std::uint32_t wanted) {
    if (!d.root().subset_of(f.root)) return {};
    const FinSet& f0 = s.nodes[f.children[0]].elements;
    const FinSet f0_tail = f0.minus(f.root);
    std::vector<FinSet> block_tails;
    std::vector<OrderIso> phis;
    for (std::uint32_t i = 0; i < wanted; ++i) {
        const FinSet& fi = s.nodes[f.children[i]].elements;
        block_tails.push_back(fi.minus(f.root));
        phis.emplace_back(f0, fi);
    }
    for (std::size_t x0 = 0; x0 < d.size(); ++x0) {
        const FinSet t0 = d.tail(x0);
        if (!t0.subset_of(f0_tail)) continue;
        std::vector<std::size_t> pick{x0};
        std::size_t next = x0 + 1;
        for (std::uint32_t i = 1; i < wanted; ++i) {
            const FinSet want = phis[i].image(t0);
            if (!want.subset_of(block_tails[i])) break;
            std::size_t hit = d.size();
            for (std::size_t x = next; x < d.size(); ++x) {
                if (d.tail(x) == want) {
                    hit = x;
                    break;
                }
            }
            if (hit == d.size()) break;
            pick.push_back(hit);
            next = hit + 1;
        }
        if (pick.size() == wanted) return pick;
    }
    return {};
}

}  // namespace

std::vector<CaptureWitness> find_captures(const ConstructionScheme& s, const DeltaSystem& d,
                                          std::uint32_t wanted) {
    if (wanted == 0 || d.size() < wanted) {
        throw std::invalid_argument("capture search needs 1 <= wanted <= |d|");
    }
    std::vector<CaptureWitness> out;
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const SchemeNode& f = s.nodes[id];
        if (f.rank == 0 || f.children.size() < wanted) continue;
        auto pick = select_members(s, f, d, wanted);
        if (pick.empty()) continue;
        std::vector<FinSet> members;
        for (auto x : pick) members.push_back(d.members()[x]);
        out.push_back(CaptureWitness{id, wanted, std::move(pick),
                                     DeltaSystem(std::move(members), d.root())});
    }
    return out;
}

bool is_valid_capture(const ConstructionScheme& s, const CaptureWitness& w) {
    if (w.node >= s.nodes.size()) return false;
    const SchemeNode& f = s.nodes[w.node];
    if (f.rank == 0 || f.children.size() < w.block_count || w.captured.size() != w.block_count) {
        return false;
    }
    const FinSet& root = w.captured.root();
    if (!root.subset_of(f.root)) return false;
    const FinSet& f0 = s.nodes[f.children[0]].elements;
    const FinSet t0 = w.captured.tail(0);
    if (!t0.subset_of(f0.minus(f.root))) return false;
    for (std::uint32_t i = 1; i < w.block_count; ++i) {
        const FinSet& fi = s.nodes[f.children[i]].elements;
        const FinSet ti = w.captured.tail(i);
        if (OrderIso(f0, fi).image(t0) != ti || !ti.subset_of(fi.minus(f.root))) return false;
    }
    return true;
}

std::vector<CapturedTuple> enumerate_captured_tuples(const ConstructionScheme& s, std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("tuple length must be at least 1");
    std::vector<CapturedTuple> out;
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const SchemeNode& f = s.nodes[id];
        if (f.rank == 0 || f.children.size() < n) continue;
        const FinSet& f0 = s.nodes[f.children[0]].elements;
        for (std::size_t p = 0; p < f0.size(); ++p) {
            if (f.root.contains(f0[p])) continue;
            CapturedTuple t{id, {}};
            for (std::uint32_t i = 0; i < n; ++i) t.points.push_back(s.nodes[f.children[i]].elements[p]);
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace cscheme
