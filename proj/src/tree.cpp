#include "cscheme/tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cscheme/capture.hpp"
#include "cscheme/order_iso.hpp"

namespace cscheme {

namespace {

Failure label_failure(std::string clause, NodeId node, Ordinal alpha, std::string detail) {
    Failure f;
    f.clause = std::move(clause);
    f.node = node;
    f.alpha = alpha;
    f.detail = std::move(detail);
    return f;
}

bool shape_ok(const LabeledScheme& ls, Report& rep) {
    const auto& s = ls.scheme;
    if (ls.labels.size() != s.nodes.size()) {
        rep.add({"shape", "label table does not match node table", {}, {}, {}, {}, {}});
        return false;
    }
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const FinSet& el = s.nodes[id].elements;
        if (ls.labels[id].size() != el.size()) {
            rep.add(label_failure("shape", id, 0, "label count differs from |F|"));
            return false;
        }
        for (std::size_t p = 0; p < el.size(); ++p) {
            const LabelPair& lp = ls.labels[id][p];
            const auto binary = [](const Bits& b) {
                return std::all_of(b.begin(), b.end(), [](std::uint8_t v) { return v <= 1; });
            };
            if (lp.node != id || lp.alpha != el[p] || lp.f.size() != el.size() ||
                lp.g.size() != el.size() || !binary(lp.f) || !binary(lp.g)) {
                rep.add(label_failure("shape", id, el[p], "malformed label pair"));
                return false;
            }
        }
    }
    return true;
}

}  // namespace

const LabelPair& LabeledScheme::at(NodeId node, Ordinal alpha) const {
    const FinSet& el = scheme.nodes.at(node).elements;
    const auto p = el.position(alpha);
    if (p == el.size()) throw std::out_of_range("alpha is not an element of the node");
    return labels.at(node).at(p);
}

std::map<Ordinal, std::uint8_t> as_function(const FinSet& domain, const Bits& bits) {
    if (domain.size() != bits.size()) throw std::invalid_argument("bits do not match domain");
    std::map<Ordinal, std::uint8_t> out;
    for (std::size_t i = 0; i < bits.size(); ++i) out.emplace_hint(out.end(), domain[i], bits[i]);
    return out;
}

LabeledScheme build_labels(const ConstructionScheme& s) {
    if (!verify_scheme(s).ok()) throw std::invalid_argument("scheme does not verify");
    const SchemeIndex idx(s);
    LabeledScheme ls;
    ls.scheme = s;
    ls.labels.resize(s.nodes.size());

    for (NodeId id : idx.bottom_up()) {
        const SchemeNode& node = s.nodes[id];
        auto& out = ls.labels[id];
        if (node.rank == 0) {
            out.push_back(LabelPair{id, node.elements[0], {0}, {1}});
            continue;
        }
        const auto& base_labels = ls.labels[node.children[0]];
        const auto& positions = idx.child_positions(id);
        const auto& slots = idx.block_slots(id);
        const auto n = static_cast<std::int32_t>(node.children.size());
        const std::size_t size = node.elements.size();

        for (std::size_t q = 0; q < size; ++q) {
            const auto [block, child_pos] = slots[q];
            const LabelPair& base = base_labels[child_pos];
            LabelPair lp{id, node.elements[q], Bits(size), Bits(size)};
            for (std::int32_t j = 0; j < n; ++j) {
                const Bits* fs = &base.f;
                const Bits* gs = &base.g;
                if (block >= 0 && block % 2 == 0) {
                    fs = j <= block ? &base.f : &base.g;
                    gs = j < block ? &base.f : &base.g;
                } else if (block >= 0) {
                    fs = j < block ? &base.g : &base.f;
                    gs = j <= block ? &base.g : &base.f;
                }
                const auto& to = positions[static_cast<std::size_t>(j)];
                for (std::size_t p = 0; p < to.size(); ++p) {
                    lp.f[to[p]] = (*fs)[p];
                    lp.g[to[p]] = (*gs)[p];
                }
            }
            out.push_back(std::move(lp));
        }
    }
    return ls;
}

BranchFunction branch(const LabeledScheme& ls, Ordinal alpha) {
    if (alpha >= ls.scheme.universe) throw std::out_of_range("alpha outside the universe");
    const LabelPair& top = ls.at(ls.scheme.top, alpha);
    return BranchFunction{alpha, Bits(top.f.begin(), top.f.begin() + alpha)};
}

bool end_extends(const Bits& upper, const Bits& lower) {
    return lower.size() < upper.size() && std::equal(lower.begin(), lower.end(), upper.begin());
}

TreeApprox build_tree(const LabeledScheme& ls) {
    const auto by_length = [](const Bits& a, const Bits& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    };
    std::set<Bits, decltype(by_length)> all(by_length);
    for (Ordinal a = 0; a < ls.scheme.universe; ++a) {
        const Bits h = branch(ls, a).values;
        for (std::size_t d = 0; d <= h.size(); ++d) all.emplace(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(d));
    }
    TreeApprox t;
    t.nodes.assign(all.begin(), all.end());
    std::map<Bits, std::size_t> where;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) where.emplace(t.nodes[i], i);
    for (const Bits& b : t.nodes) {
        if (b.empty()) {
            t.parent.emplace_back(std::nullopt);
        } else {
            t.parent.emplace_back(where.at(Bits(b.begin(), b.end() - 1)));
        }
    }
    return t;
}

Report check_tree_order(const TreeApprox& t) {
    Report rep;
    rep.name = "check_tree_order";
    std::map<Bits, std::size_t> where;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (!where.emplace(t.nodes[i], i).second) {
            rep.add({"distinct nodes", "duplicate node", {}, {}, {}, {}, {}});
        }
    }
    if (t.parent.size() != t.nodes.size()) {
        rep.add({"parent table", "parent table size differs", {}, {}, {}, {}, {}});
        return rep;
    }
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        ++rep.checked;
        const Bits& b = t.nodes[i];
        std::vector<std::size_t> preds;
        for (std::size_t d = 0; d < b.size(); ++d) {
            auto it = where.find(Bits(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(d)));
            if (it == where.end()) {
                std::ostringstream os;
                os << "node " << i << " is missing its restriction to " << d;
                rep.add({"closed under restriction", os.str(), {}, {}, {}, {}, {}});
            } else {
                preds.push_back(it->second);
            }
        }
        std::optional<std::size_t> expected;
        if (!b.empty() && preds.size() == b.size()) expected = preds.back();
        if (t.parent[i] != expected) {
            rep.add({"immediate predecessor", "parent of node " + std::to_string(i) + " is wrong", {}, {}, {}, {}, {}});
        }
        for (std::size_t k = 1; k < preds.size(); ++k) {
            if (!end_extends(t.nodes[preds[k]], t.nodes[preds[k - 1]])) {
                rep.add({"predecessors form a chain", "node " + std::to_string(i), {}, {}, {}, {}, {}});
            }
        }
    }
    return rep;
}

Report check_label_invariants(const LabeledScheme& ls) {
    Report rep;
    rep.name = "check_label_invariants";
    const auto& s = ls.scheme;
    if (!verify_scheme(s).ok()) {
        rep.add({"scheme", "underlying scheme does not verify", {}, {}, {}, {}, {}});
        return rep;
    }
    if (!shape_ok(ls, rep)) return rep;
    const SchemeIndex idx(s);

    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const FinSet& el = s.nodes[id].elements;
        for (std::size_t p = 0; p < el.size(); ++p) {
            const LabelPair& lp = ls.labels[id][p];
            rep.checked += p + 1;
            for (std::size_t q = 0; q < p; ++q) {
                if (lp.f[q] != lp.g[q]) {
                    std::ostringstream os;
                    os << "f and g differ at " << el[q] << " < alpha";
                    rep.add(label_failure("f=g below alpha", id, el[p], os.str()));
                    break;
                }
            }
            if (lp.f[p] != 0 || lp.g[p] != 1) {
                std::ostringstream os;
                os << "f(alpha)=" << int(lp.f[p]) << ", g(alpha)=" << int(lp.g[p]);
                rep.add(label_failure("f(alpha)=0,g(alpha)=1", id, el[p], os.str()));
            }
        }
    }

    for (std::uint32_t k = 0; k <= s.type.max_rank(); ++k) {
        const auto& ids = idx.at_rank(k);
        for (std::size_t x = 0; x < ids.size(); ++x) {
            for (std::size_t y = x + 1; y < ids.size(); ++y) {
                const NodeId e = ids[x];
                const NodeId f = ids[y];
                const FinSet& ee = s.nodes[e].elements;
                const FinSet& fe = s.nodes[f].elements;
                const OrderIso iso(ee, fe);
                const bool siblings = idx.are_siblings(e, f);
                for (std::size_t p = 0; p < ee.size(); ++p) {
                    ++rep.checked;
                    const LabelPair& le = ls.labels[e][p];
                    const LabelPair& lf = ls.labels[f][p];
                    const bool same = transport(iso, as_function(ee, le.f)) == as_function(fe, lf.f) &&
                                      transport(iso, as_function(ee, le.g)) == as_function(fe, lf.g);
                    if (same) continue;
                    auto fail = label_failure("iso coherence", e, ee[p], "labels not carried by the order isomorphism");
                    fail.other = f;
                    fail.beta = fe[p];
                    fail.rank = k;
                    if (siblings) rep.add(std::move(fail)); else rep.flag(std::move(fail));
                }
            }
        }
    }

    for (const auto& [e, f] : idx.nested_pairs()) {
        const FinSet& ee = s.nodes[e].elements;
        const FinSet& fe = s.nodes[f].elements;
        std::vector<std::size_t> in_f;
        for (Ordinal x : ee) in_f.push_back(fe.position(x));
        for (std::size_t p = 0; p < ee.size(); ++p) {
            const LabelPair& small = ls.labels[e][p];
            const LabelPair& big = ls.labels[f][in_f[p]];
            rep.checked += ee.size();
            for (std::size_t q = 0; q < ee.size(); ++q) {
                if (small.f[q] != big.f[in_f[q]] || small.g[q] != big.g[in_f[q]]) {
                    std::ostringstream os;
                    os << "labels of node " << e << " not extended in node " << f << " at " << ee[q];
                    if (!idx.is_descendant(e, f)) os << " (set inclusion only, not a descendant)";
                    auto fail = label_failure("extension coherence", e, ee[p], os.str());
                    fail.other = f;
                    fail.beta = ee[q];
                    rep.add(std::move(fail));
                    break;
                }
            }
        }
    }

    const auto& top = ls.labels[s.top];
    for (NodeId id = 0; id < s.nodes.size(); ++id) {
        const FinSet& el = s.nodes[id].elements;
        for (std::size_t p = 0; p < el.size(); ++p) {
            const Bits& h = top[el[p]].f;
            for (std::size_t q = 0; q < p; ++q) {
                ++rep.checked;
                if (ls.labels[id][p].f[q] != h[el[q]]) {
                    rep.add(label_failure("h well-defined", id, el[p], "member disagrees with h_alpha"));
                    break;
                }
            }
        }
    }
    return rep;
}

ConsequenceReport capture_tree_consequences(const LabeledScheme& ls) {
    ConsequenceReport rep;
    rep.name = "capture_tree_consequences";
    const auto& s = ls.scheme;
    std::vector<Bits> h;
    for (Ordinal a = 0; a < s.universe; ++a) h.push_back(branch(ls, a).values);

    const auto restricted = [&](const Bits& v, const FinSet& within) {
        Bits out;
        for (Ordinal x : within) {
            if (x < v.size()) out.push_back(v[x]);
        }
        return out;
    };
    const auto below = [](const Bits& upper, const Bits& lower) { return end_extends(upper, lower); };

    Tally t_a1{"h_a1(a0)=1"}, t_a2{"h_a2(a0)=0"}, t_c1{"h_a0<h_a1"}, t_c2{"h_a0<h_a2"},
        t_perp{"h_a1⊥h_a2"}, t_pair{"h_a<h_phi1(a)"};
    Tally l_c1{"local h_a0<h_a1 on F"}, l_c2{"local h_a0<h_a2 on F"}, l_pair{"local h_a<h_phi1(a) on F"};

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
        std::ostringstream os;
        os << "tuple";
        for (Ordinal x : tup.points) os << ' ' << x;
        f.detail = os.str();
        rep.violations.push_back(std::move(f));
    };
    const auto note = [](Tally& t, bool ok) {
        ++t.checked;
        if (!ok) ++t.violations;
    };

    for (const auto& tup : enumerate_captured_tuples(s, 3)) {
        const Ordinal a0 = tup.points[0], a1 = tup.points[1], a2 = tup.points[2];
        const FinSet& fe = s.nodes[tup.node].elements;
        record(t_a1, h[a1][a0] == 1, tup);
        record(t_a2, h[a2][a0] == 0, tup);
        record(t_c1, below(h[a1], h[a0]), tup);
        record(t_c2, below(h[a2], h[a0]), tup);
        record(t_perp, !below(h[a2], h[a1]) && !below(h[a1], h[a2]), tup);
        note(l_c1, below(restricted(h[a1], fe), restricted(h[a0], fe)) ||
                       restricted(h[a1], fe) == restricted(h[a0], fe));
        note(l_c2, below(restricted(h[a2], fe), restricted(h[a0], fe)) ||
                       restricted(h[a2], fe) == restricted(h[a0], fe));
    }
    for (const auto& tup : enumerate_captured_tuples(s, 2)) {
        const Ordinal a = tup.points[0], b = tup.points[1];
        const FinSet& fe = s.nodes[tup.node].elements;
        record(t_pair, below(h[b], h[a]), tup);
        const Bits ra = restricted(h[a], fe), rb = restricted(h[b], fe);
        note(l_pair, ra.size() <= rb.size() && std::equal(ra.begin(), ra.end(), rb.begin()));
    }
    rep.tallies = {t_a1, t_a2, t_c1, t_c2, t_perp, t_pair};
    rep.diagnostics = {l_c1, l_c2, l_pair};
    return rep;
}

std::string export_tree_dot(const TreeApprox& t) {
    std::ostringstream os;
    os << "digraph tree {\n";
    if (!t.nodes.empty()) os << "  node [shape=box];\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        os << "  n" << i << " [label=\"";
        if (t.nodes[i].empty()) os << "()";
        for (auto v : t.nodes[i]) os << int(v);
        os << "\"];\n";
    }
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (t.parent[i]) os << "  n" << *t.parent[i] << " -> n" << i << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace cscheme
