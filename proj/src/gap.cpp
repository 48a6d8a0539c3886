#include "cscheme/gap.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "cscheme/capture.hpp"

namespace cscheme {

namespace {

Failure side_failure(std::string clause, NodeId node, Ordinal alpha, std::string detail) {
    Failure f;
    f.clause = std::move(clause);
    f.node = node;
    f.alpha = alpha;
    f.detail = std::move(detail);
    return f;
}

bool shape_ok(const SideFamily& sf, Report& rep) {
    const auto& s = sf.scheme;
    if (sf.pairs.size() != s.nodes.size()) {
        rep.add({"shape", "side table does not match node table", {}, {}, {}, {}, {}});
        return false;
    }
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const FinSet& el = s.nodes[id].elements;
        if (sf.pairs[id].size() != el.size()) {
            rep.add(side_failure("shape", id, 0, "side pair count differs from |F|"));
            return false;
        }
        for (std::size_t p = 0; p < el.size(); ++p) {
            if (sf.pairs[id][p].node != id || sf.pairs[id][p].alpha != el[p]) {
                rep.add(side_failure("shape", id, el[p], "side pair mislabelled"));
                return false;
            }
        }
    }
    return true;
}

std::string nested_detail(NodeId e, NodeId f, bool descendant, const char* what) {
    std::ostringstream os;
    os << what << " for E=" << e << " inside F=" << f;
    if (!descendant) os << " (not a descendant)";
    return os.str();
}

}  // namespace

const SidePair& SideFamily::at(NodeId node, Ordinal alpha) const {
    const FinSet& el = scheme.nodes.at(node).elements;
    const auto p = el.position(alpha);
    if (p == el.size()) throw std::out_of_range("alpha is not an element of the node");
    return pairs.at(node).at(p);
}

SideFamily build_sides(const ConstructionScheme& s) {
    if (!verify_scheme(s).ok()) throw std::invalid_argument("scheme does not verify");
    const SchemeIndex idx(s);
    SideFamily sf;
    sf.scheme = s;
    for (std::uint32_t k = 0; k <= s.type.max_rank(); ++k) sf.cuts.push_back(cut_point(k));
    sf.pairs.resize(s.nodes.size());

    for (NodeId id : idx.bottom_up()) {
        const SchemeNode& node = s.nodes[id];
        auto& out = sf.pairs[id];
        if (node.rank == 0) {
            out.push_back(SidePair{id, node.elements[0], FinSet{0}, FinSet{1}});
            continue;
        }
        const std::uint32_t fresh = sf.cuts[node.rank - 1];
        const auto& base_pairs = sf.pairs[node.children[0]];
        const auto& slots = idx.block_slots(id);
        for (std::size_t q = 0; q < node.elements.size(); ++q) {
            const auto [block, child_pos] = slots[q];
            const SidePair& base = base_pairs[child_pos];
            SidePair sp{id, node.elements[q], base.a, base.b};
            if (block >= 0) {
                const bool odd = block % 2 == 1;
                sp.a = sp.a.unite(FinSet{odd ? fresh + 1 : fresh});
                sp.b = sp.b.unite(FinSet{odd ? fresh : fresh + 1});
            }
            out.push_back(std::move(sp));
        }
    }
    return sf;
}

LimitGapFamily limit_family(const SideFamily& sf) {
    LimitGapFamily lim;
    for (Ordinal a = 0; a < sf.scheme.universe; ++a) {
        const SidePair& sp = sf.at(sf.scheme.top, a);
        lim.a.push_back(sp.a);
        lim.b.push_back(sp.b);
    }
    return lim;
}

Report check_side_invariants(const SideFamily& sf) {
    Report rep;
    rep.name = "check_side_invariants";
    const auto& s = sf.scheme;
    if (!verify_scheme(s).ok()) {
        rep.add({"scheme", "underlying scheme does not verify", {}, {}, {}, {}, {}});
        return rep;
    }
    if (!shape_ok(sf, rep)) return rep;
    const std::uint32_t K = s.type.max_rank();
    if (sf.cuts.size() != K + 1) {
        rep.add({"cuts N_k=2k+2", "cut sequence has the wrong length", {}, {}, {}, {}, {}});
        return rep;
    }
    for (std::uint32_t k = 0; k <= K; ++k) {
        ++rep.checked;
        if (sf.cuts[k] != cut_point(k)) {
            Failure f{"cuts N_k=2k+2", "N_" + std::to_string(k) + "=" + std::to_string(sf.cuts[k]),
                      {}, {}, {}, {}, k};
            rep.add(std::move(f));
        }
    }
    const SchemeIndex idx(s);

    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const SchemeNode& node = s.nodes[id];
        const FinSet range = FinSet::range(0, sf.cuts[node.rank]);
        for (std::size_t p = 0; p < node.elements.size(); ++p) {
            const SidePair& sp = sf.pairs[id][p];
            rep.checked += 3;
            if (!sp.a.subset_of(range) || !sp.b.subset_of(range)) {
                rep.add(side_failure("sides within N_k", id, sp.alpha, "a=" + sp.a.to_string() + " b=" + sp.b.to_string()));
            }
            if (!sp.a.disjoint_from(sp.b)) {
                rep.add(side_failure("sides disjoint", id, sp.alpha, "a=" + sp.a.to_string() + " b=" + sp.b.to_string()));
            }
            if (node.rank == 0) continue;
            const std::uint32_t fresh = sf.cuts[node.rank - 1];
            const auto block = idx.block_slots(id)[p].block;
            FinSet want_a, want_b;
            if (block >= 0) {
                want_a = FinSet{block % 2 == 1 ? fresh + 1 : fresh};
                want_b = FinSet{block % 2 == 1 ? fresh : fresh + 1};
            }
            if (sp.a.at_or_above(fresh) != want_a || sp.b.at_or_above(fresh) != want_b) {
                rep.add(side_failure("new-point discipline", id, sp.alpha,
                                     "a=" + sp.a.to_string() + " b=" + sp.b.to_string()));
            }
        }
    }

    for (std::uint32_t k = 0; k <= K; ++k) {
        const auto& ids = idx.at_rank(k);
        for (std::size_t x = 0; x < ids.size(); ++x) {
            for (std::size_t y = x + 1; y < ids.size(); ++y) {
                const NodeId e = ids[x];
                const NodeId f = ids[y];
                const bool siblings = idx.are_siblings(e, f);
                for (std::size_t p = 0; p < s.nodes[e].elements.size(); ++p) {
                    ++rep.checked;
                    const SidePair& se = sf.pairs[e][p];
                    const SidePair& sfp = sf.pairs[f][p];
                    if (se.a == sfp.a && se.b == sfp.b) continue;
                    auto fail = side_failure("iso coherence", e, se.alpha, "sides not carried by the order isomorphism");
                    fail.other = f;
                    fail.beta = sfp.alpha;
                    fail.rank = k;
                    if (siblings) rep.add(std::move(fail)); else rep.flag(std::move(fail));
                }
            }
        }
    }

    for (const auto& [e, f] : idx.nested_pairs()) {
        const SchemeNode& en = s.nodes[e];
        const FinSet& fe = s.nodes[f].elements;
        const std::uint32_t cut = sf.cuts[en.rank];
        const bool desc = idx.is_descendant(e, f);
        std::vector<const SidePair*> big;
        for (Ordinal x : en.elements) big.push_back(&sf.pairs[f][fe.position(x)]);

        const auto fail = [&](const char* clause, Ordinal a, std::optional<Ordinal> b) {
            Failure fl = side_failure(clause, e, a, nested_detail(e, f, desc, clause));
            fl.other = f;
            fl.beta = b;
            fl.rank = en.rank;
            rep.add(std::move(fl));
        };

        for (std::size_t p = 0; p < en.elements.size(); ++p) {
            const SidePair& small = sf.pairs[e][p];
            ++rep.checked;
            if (big[p]->a.below(cut) != small.a || big[p]->b.below(cut) != small.b) {
                fail("nested restriction", small.alpha, std::nullopt);
            }
            const FinSet a_tail = big[p]->a.at_or_above(cut);
            const FinSet b_tail = big[p]->b.at_or_above(cut);
            for (std::size_t q = 0; q < en.elements.size(); ++q) {
                rep.checked += 2;
                const Ordinal beta = en.elements[q];
                if (q > p && (!a_tail.subset_of(big[q]->a) || !b_tail.subset_of(big[q]->b))) {
                    fail("nested tail growth", small.alpha, beta);
                }
                if (!big[p]->a.intersect(big[q]->b).subset_of(FinSet::range(0, cut))) {
                    fail("nested cross within N_l", small.alpha, beta);
                }
            }
        }
    }
    return rep;
}

Report check_limit_family(const SideFamily& sf) {
    Report rep;
    rep.name = "check_limit_family";
    const auto& s = sf.scheme;
    const LimitGapFamily lim = limit_family(sf);
    const std::uint32_t top_cut = sf.cuts.at(s.type.max_rank());

    std::vector<FinSet> ua(s.universe), ub(s.universe);
    // least rank of a member containing both α and β
    std::vector<std::vector<std::uint32_t>> meet(s.universe, std::vector<std::uint32_t>(s.universe, s.type.max_rank()));
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const SchemeNode& n = s.nodes[id];
        for (std::size_t p = 0; p < n.elements.size(); ++p) {
            const Ordinal a = n.elements[p];
            ua[a] = ua[a].unite(sf.pairs[id][p].a);
            ub[a] = ub[a].unite(sf.pairs[id][p].b);
            for (Ordinal b : n.elements) meet[a][b] = std::min(meet[a][b], n.rank);
        }
    }

    for (Ordinal a = 0; a < s.universe; ++a) {
        rep.checked += 3;
        if (ua[a] != lim.a[a] || ub[a] != lim.b[a]) {
            rep.add(side_failure("limit union", s.top, a, "top value differs from the union over members"));
        }
        if (!lim.a[a].disjoint_from(lim.b[a])) {
            rep.add(side_failure("limit disjoint", s.top, a, "a_alpha meets b_alpha"));
        }
        if (!lim.a[a].unite(lim.b[a]).subset_of(FinSet::range(0, top_cut))) {
            rep.add(side_failure("limit within N_K", s.top, a, "side set leaves [0, N_K)"));
        }
    }
    for (Ordinal a = 0; a < s.universe; ++a) {
        for (Ordinal b = 0; b < s.universe; ++b) {
            if (a == b) continue;
            const FinSet cut = FinSet::range(0, sf.cuts[meet[a][b]]);
            const auto add = [&](const char* clause) {
                Failure f = side_failure(clause, s.top, a, "outside N_l");
                f.beta = b;
                f.rank = meet[a][b];
                rep.add(std::move(f));
            };
            rep.checked += 1;
            if (!lim.a[a].intersect(lim.b[b]).subset_of(cut)) add("a_α∩b_β ⊆ N_l");
            if (a < b) {
                rep.checked += 2;
                if (!lim.a[a].minus(lim.a[b]).subset_of(cut)) add("a_α∖a_β ⊆ N_l");
                if (!lim.b[a].minus(lim.b[b]).subset_of(cut)) add("b_α∖b_β ⊆ N_l");
            }
        }
    }
    return rep;
}

ConsequenceReport capture_gap_consequences(const SideFamily& sf) {
    ConsequenceReport rep;
    rep.name = "capture_gap_consequences";
    const auto& s = sf.scheme;
    const LimitGapFamily lim = limit_family(sf);

    Tally meet{"a_a0∩b_a1∋N_{k-1}"}, grow_a{"a_a0⊆a_a2"}, grow_b{"b_a0⊆b_a2"},
        pair{"pair a_a0∩b_a1∋N_{k-1}"};
    const auto record = [&](Tally& t, bool ok, const CapturedTuple& tup) {
        ++t.checked;
        if (ok) return;
        ++t.violations;
        Failure f;
        f.clause = t.name;
        f.node = tup.node;
        f.alpha = tup.points[0];
        f.beta = tup.points[1];
        f.rank = s.nodes[tup.node].rank;
        rep.violations.push_back(std::move(f));
    };

    for (const auto& tup : enumerate_captured_tuples(s, 3)) {
        const Ordinal a0 = tup.points[0], a1 = tup.points[1], a2 = tup.points[2];
        const std::uint32_t witness = sf.cuts[s.nodes[tup.node].rank - 1];
        record(meet, lim.a[a0].intersect(lim.b[a1]).contains(witness), tup);
        record(grow_a, lim.a[a0].subset_of(lim.a[a2]), tup);
        record(grow_b, lim.b[a0].subset_of(lim.b[a2]), tup);
    }
    for (const auto& tup : enumerate_captured_tuples(s, 2)) {
        const std::uint32_t witness = sf.cuts[s.nodes[tup.node].rank - 1];
        record(pair, lim.a[tup.points[0]].intersect(lim.b[tup.points[1]]).contains(witness), tup);
    }
    rep.tallies = {meet, grow_a, grow_b, pair};
    return rep;
}

}  // namespace cscheme
