#include <gtest/gtest.h>

#include <regex>

#include "cscheme/capture.hpp"
#include "cscheme/tree.hpp"
#include "helpers.hpp"

using namespace cscheme;
using testing_util::to_fn;
using testing_util::tower;

namespace {

struct TypeCase {
    std::vector<std::uint64_t> n, r;
};

const std::vector<TypeCase> kTypes{
    {{2}, {0}}, {{3}, {0}}, {{2, 3}, {0, 1}}, {{2, 3}, {0, 0}}, {{3, 4}, {0, 2}}, {{2, 3, 4, 5}, {0, 1, 0, 2}}};

LabeledScheme labels_for(const TypeCase& t) { return build_labels(tower(t.n, t.r)); }

// Lexicographic reading of f at the position of x.
int bit(const LabeledScheme& ls, NodeId node, Ordinal alpha, Ordinal x, bool use_g) {
    const auto& lp = ls.at(node, alpha);
    const auto& el = ls.scheme.node(node).elements;
    return (use_g ? lp.g : lp.f)[el.position(x)];
}

}  // namespace

TEST(Labels, RankZeroBase) {
    const auto ls = labels_for({{2}, {0}});
    for (NodeId id = 0; id < ls.scheme.size(); ++id) {
        if (ls.scheme.node(id).rank != 0) continue;
        const Ordinal a = ls.scheme.node(id).elements.front();
        EXPECT_EQ(to_fn(ls.scheme.node(id).elements, ls.at(id, a).f), (oracle::Fn{{a, 0}}));
        EXPECT_EQ(to_fn(ls.scheme.node(id).elements, ls.at(id, a).g), (oracle::Fn{{a, 1}}));
    }
}

TEST(Labels, HandValuesOnTwoPoints) {
    const auto ls = labels_for({{2}, {0}});
    const NodeId top = ls.scheme.top;
    const FinSet& el = ls.scheme.node(top).elements;
    EXPECT_EQ(to_fn(el, ls.at(top, 0).f), (oracle::Fn{{0, 0}, {1, 1}}));
    EXPECT_EQ(to_fn(el, ls.at(top, 0).g), (oracle::Fn{{0, 1}, {1, 1}}));
    EXPECT_EQ(to_fn(el, ls.at(top, 1).f), (oracle::Fn{{0, 1}, {1, 0}}));
    EXPECT_EQ(to_fn(el, ls.at(top, 1).g), (oracle::Fn{{0, 1}, {1, 1}}));
    EXPECT_EQ(bit(ls, top, 1, 0, false), 1);
}

TEST(Labels, MatchOracleOnEveryOccurrence) {
    for (const auto& t : kTypes) {
        const auto ls = labels_for(t);
        const SchemeIndex idx(ls.scheme);
        oracle::visit(oracle::tower(t.n, t.r), [&](const oracle::Occ& o) {
            const auto id = idx.find(FinSet(o.elems));
            ASSERT_TRUE(id.has_value());
            const FinSet& el = ls.scheme.node(*id).elements;
            for (const auto& [alpha, fg] : oracle::labels(o).at) {
                EXPECT_EQ(to_fn(el, ls.at(*id, alpha).f), fg.first) << "node " << *id << " alpha " << alpha;
                EXPECT_EQ(to_fn(el, ls.at(*id, alpha).g), fg.second) << "node " << *id << " alpha " << alpha;
            }
        });
    }
}

TEST(Labels, InvariantsHoldOnFreshLabels) {
    for (const auto& t : kTypes) {
        const auto rep = check_label_invariants(labels_for(t));
        EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front().clause);
        EXPECT_GT(rep.checked, 0u);
    }
}

TEST(Labels, DifferenceSetLiesInOwnBlock) {
    for (const auto& t : kTypes) {
        const auto ls = labels_for(t);
        for (NodeId id = 0; id < ls.scheme.size(); ++id) {
            const SchemeNode& node = ls.scheme.node(id);
            for (std::size_t p = 0; p < node.elements.size(); ++p) {
                const Ordinal alpha = node.elements[p];
                const auto& lp = ls.at(id, alpha);
                std::vector<Ordinal> diff;
                for (std::size_t q = 0; q < node.elements.size(); ++q)
                    if (lp.f[q] != lp.g[q]) diff.push_back(node.elements[q]);
                ASSERT_FALSE(diff.empty());
                EXPECT_EQ(diff.front(), alpha);
                if (node.rank == 0 || node.root.contains(alpha)) continue;
                for (NodeId c : node.children) {
                    const FinSet block = ls.scheme.node(c).elements.minus(node.root);
                    if (!block.contains(alpha)) continue;
                    for (Ordinal x : diff) EXPECT_TRUE(block.contains(x)) << "node " << id << " alpha " << alpha;
                }
            }
        }
    }
}

TEST(Labels, RefusesInvalidScheme) {
    auto s = tower({2}, {0});
    s.nodes[s.top].root = FinSet{0};
    EXPECT_THROW(build_labels(s), std::invalid_argument);
}

TEST(Labels, AsFunctionChecksLength) {
    EXPECT_THROW(as_function({1, 2}, Bits{0}), std::invalid_argument);
}

TEST(Branch, Values) {
    const auto ls = labels_for({{2}, {0}});
    EXPECT_TRUE(branch(ls, 0).values.empty());
    EXPECT_EQ(branch(ls, 1).values, (Bits{1}));
    EXPECT_THROW(branch(ls, 2), std::out_of_range);
}

TEST(Branch, AgreesWithEveryMember) {
    for (const auto& t : kTypes) {
        const auto ls = labels_for(t);
        const auto h = oracle::branches(oracle::tower(t.n, t.r));
        for (Ordinal alpha = 0; alpha < ls.scheme.universe; ++alpha) {
            const auto hb = branch(ls, alpha);
            ASSERT_EQ(hb.values.size(), alpha);
            for (Ordinal x = 0; x < alpha; ++x) EXPECT_EQ(hb.values[x], h.at(alpha).at(x));
            for (NodeId id = 0; id < ls.scheme.size(); ++id) {
                const FinSet& el = ls.scheme.node(id).elements;
                if (!el.contains(alpha)) continue;
                for (Ordinal x : el.below(alpha)) {
                    EXPECT_EQ(hb.values[x], bit(ls, id, alpha, x, false));
                    EXPECT_EQ(hb.values[x], bit(ls, id, alpha, x, true));
                }
            }
        }
    }
}

TEST(LabelFaults, SwapFG) {
    auto ls = labels_for({{2, 3}, {0, 1}});
    auto& lp = ls.labels[ls.scheme.top][1];
    std::swap(lp.f, lp.g);
    EXPECT_TRUE(check_label_invariants(ls).has_clause("f(alpha)=0,g(alpha)=1"));
}

TEST(LabelFaults, FlipBitBelowNonTopNode) {
    auto ls = labels_for({{2, 3, 4}, {0, 1, 0}});
    const auto& top = ls.scheme.node(ls.scheme.top);
    const NodeId child = top.children[1];
    auto& lp = ls.labels[child][0];
    lp.f.back() ^= 1;
    lp.g.back() ^= 1;
    const auto rep = check_label_invariants(ls);
    EXPECT_TRUE(rep.has_clause("iso coherence") || rep.has_clause("extension coherence"));
    EXPECT_FALSE(rep.has_clause("f(alpha)=0,g(alpha)=1"));
}

TEST(LabelFaults, DisagreementBelowAlpha) {
    auto ls = labels_for({{2}, {0}});
    ls.labels[ls.scheme.top][1].g[0] ^= 1;
    EXPECT_TRUE(check_label_invariants(ls).has_clause("f=g below alpha"));
}

TEST(LabelFaults, WrongShape) {
    auto ls = labels_for({{2}, {0}});
    ls.labels[ls.scheme.top][0].f.pop_back();
    const auto rep = check_label_invariants(ls);
    EXPECT_TRUE(rep.has_clause("shape"));
}

// ---- tree ----

TEST(Tree, TwoPointUniverse) {
    const auto t = build_tree(labels_for({{2}, {0}}));
    ASSERT_EQ(t.nodes.size(), 2u);
    EXPECT_TRUE(t.nodes[0].empty());
    EXPECT_EQ(t.nodes[1], (Bits{1}));
    EXPECT_FALSE(t.parent[0].has_value());
    EXPECT_EQ(t.parent[1], std::optional<std::size_t>{0});
}

TEST(Tree, OrderAndSize) {
    for (const auto& tc : kTypes) {
        const auto ls = labels_for(tc);
        const auto t = build_tree(ls);
        EXPECT_TRUE(check_tree_order(t).ok());
        const std::uint64_t u = ls.scheme.universe;
        EXPECT_LE(t.nodes.size(), u * (u + 1) / 2);
        std::set<Bits> expected;
        for (Ordinal a = 0; a < u; ++a) {
            const Bits v = branch(ls, a).values;
            for (std::size_t d = 0; d <= v.size(); ++d) expected.insert(Bits(v.begin(), v.begin() + d));
        }
        EXPECT_EQ(std::set<Bits>(t.nodes.begin(), t.nodes.end()), expected);
    }
}

TEST(Tree, RestrictionOrder) {
    const auto ls = labels_for({{2, 3}, {0, 1}});
    const Bits v = branch(ls, 3).values;
    for (std::size_t d = 0; d <= v.size(); ++d) {
        for (std::size_t e = 0; e <= v.size(); ++e) {
            const Bits x(v.begin(), v.begin() + d), y(v.begin(), v.begin() + e);
            EXPECT_EQ(end_extends(y, x) || x == y, d <= e);
        }
    }
}

TEST(Tree, OrderFaults) {
    TreeApprox t = build_tree(labels_for({{2, 3}, {0, 1}}));
    TreeApprox missing = t;
    missing.nodes.erase(missing.nodes.begin());
    missing.parent.erase(missing.parent.begin());
    EXPECT_FALSE(check_tree_order(missing).ok());
    TreeApprox dup = t;
    dup.nodes.push_back(dup.nodes.back());
    dup.parent.push_back(dup.parent.back());
    EXPECT_TRUE(check_tree_order(dup).has_clause("distinct nodes"));
}

TEST(Tree, DotExport) {
    EXPECT_EQ(export_tree_dot(TreeApprox{}), "digraph tree {\n}\n");
    const auto t = build_tree(labels_for({{2}, {0}}));
    const std::string dot = export_tree_dot(t);
    EXPECT_EQ(dot, "digraph tree {\n  node [shape=box];\n  n0 [label=\"()\"];\n  n1 [label=\"1\"];\n  n0 -> n1;\n}\n");
}

TEST(Tree, DotIsWellFormed) {
    const auto t = build_tree(labels_for({{2, 3}, {0, 1}}));
    const std::string dot = export_tree_dot(t);
    std::istringstream in(dot);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "digraph tree {");
    const std::regex stmt(R"re(  (node \[shape=box\]|n\d+ \[label="(\(\)|[01]+)"\]|n\d+ -> n\d+);)re");
    std::size_t edges = 0;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    ASSERT_FALSE(lines.empty());
    EXPECT_EQ(lines.back(), "}");
    lines.pop_back();
    for (const auto& l : lines) {
        EXPECT_TRUE(std::regex_match(l, stmt)) << l;
        if (l.find("->") != std::string::npos) ++edges;
    }
    EXPECT_EQ(edges, t.nodes.size() - 1);
}

// ---- capture consequences ----

TEST(TreeConsequences, TwoPointPair) {
    const auto rep = capture_tree_consequences(labels_for({{2}, {0}}));
    EXPECT_TRUE(rep.ok());
    ASSERT_NE(rep.find("h_a<h_phi1(a)"), nullptr);
    EXPECT_EQ(rep.find("h_a<h_phi1(a)")->checked, 1u);
    EXPECT_EQ(rep.find("h_a1(a0)=1")->checked, 0u);
}

TEST(TreeConsequences, SmallTypesHold) {
    for (const TypeCase& t : {TypeCase{{3}, {0}}, TypeCase{{2, 3}, {0, 1}}}) {
        const auto rep = capture_tree_consequences(labels_for(t));
        EXPECT_TRUE(rep.ok());
    }
}

TEST(TreeConsequences, PointValuesAndLocalChainsHold) {
    const auto rep = capture_tree_consequences(labels_for({{2, 3, 4, 5}, {0, 1, 0, 2}}));
    for (const char* name : {"h_a1(a0)=1", "h_a2(a0)=0", "h_a1⊥h_a2"}) {
        ASSERT_NE(rep.find(name), nullptr);
        EXPECT_EQ(rep.find(name)->violations, 0u) << name;
        EXPECT_EQ(rep.find(name)->checked, 54u) << name;
    }
    for (const auto& d : rep.diagnostics) EXPECT_EQ(d.violations, 0u) << d.name;
}

// The global chain tallies must agree with an independent count, whatever their value.
TEST(TreeConsequences, TalliesMatchOracle) {
    for (const auto& t : kTypes) {
        const auto rep = capture_tree_consequences(labels_for(t));
        const auto top = oracle::tower(t.n, t.r);
        const auto h = oracle::branches(top);
        const auto extends = [&](Ordinal lo, Ordinal hi) {
            for (const auto& [x, v] : h.at(lo))
                if (h.at(hi).at(x) != v) return false;
            return true;
        };
        std::size_t c1 = 0, c2 = 0, pair = 0;
        const auto triples = oracle::captured_tuples(top, 3);
        for (const auto& [member, tup] : triples) {
            c1 += !extends(tup[0], tup[1]);
            c2 += !extends(tup[0], tup[2]);
        }
        const auto pairs = oracle::captured_tuples(top, 2);
        for (const auto& [member, tup] : pairs) pair += !extends(tup[0], tup[1]);
        EXPECT_EQ(rep.find("h_a0<h_a1")->checked, triples.size());
        EXPECT_EQ(rep.find("h_a0<h_a1")->violations, c1);
        EXPECT_EQ(rep.find("h_a0<h_a2")->violations, c2);
        EXPECT_EQ(rep.find("h_a<h_phi1(a)")->checked, pairs.size());
        EXPECT_EQ(rep.find("h_a<h_phi1(a)")->violations, pair);
    }
}
