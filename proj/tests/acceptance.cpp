// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit status
// is nonzero if any selected criterion fails. Usage: acceptance [N ...]

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "cscheme/capture.hpp"
#include "cscheme/gap.hpp"
#include "cscheme/gap_analysis.hpp"
#include "cscheme/json_io.hpp"
#include "cscheme/scheme.hpp"
#include "cscheme/tree.hpp"
#include "helpers.hpp"

using namespace cscheme;
using testing_util::to_oracle;
using testing_util::to_std;

namespace {

const std::vector<std::uint64_t> kN{2, 3, 4, 5};
const std::vector<std::uint64_t> kR{0, 1, 0, 2};

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string tally_text(const ConsequenceReport& r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.tallies.size(); ++i) {
        const auto& t = r.tallies[i];
        os << (i ? "; " : "") << t.name << " " << (t.checked - t.violations) << "/" << t.checked;
    }
    return os.str();
}

Outcome type_arithmetic() {
    const auto t0 = Clock::now();
    const SchemeType t = derive_type(kN, kR);
    const bool valid = validate_type(t).ok();
    const ConstructionScheme s = generate_tower_scheme(t);
    auto counts = SchemeIndex(s).occurrence_counts();
    std::reverse(counts.begin(), counts.end());
    const double dt = seconds_since(t0);

    const std::vector<std::uint64_t> expect_m{1, 2, 4, 16, 72}, expect_counts{1, 5, 20, 60, 120};
    auto oracle_counts = oracle::occurrences_by_rank(oracle::tower(kN, kR));
    std::reverse(oracle_counts.begin(), oracle_counts.end());
    const bool pass = valid && t.m == expect_m && oracle::derive_m(kN, kR) == expect_m && s.universe == 72 &&
                      counts == expect_counts && oracle_counts == expect_counts && dt < 1.0;
    std::ostringstream os;
    os << "m=(" << join(t.m) << ") valid=" << valid << " universe=" << s.universe << " counts(4..0)=" << join(counts)
       << " time=" << dt << "s (limit 1s)";
    return {pass, os.str()};
}

Outcome scheme_verifies() {
    const ConstructionScheme s = generate_tower_scheme(derive_type(kN, kR));
    const auto t0 = Clock::now();
    const Report rep = verify_scheme(s);
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << rep.failures.size() << " failures over " << rep.checked << " checks, time=" << dt << "s (limit 1s)";
    return {rep.ok() && dt < 1.0, os.str()};
}

Outcome tree_invariants() {
    const ConstructionScheme s = generate_tower_scheme(derive_type(kN, kR));
    const auto t0 = Clock::now();
    const LabeledScheme ls = build_labels(s);
    const Report rep = check_label_invariants(ls);
    const double dt = seconds_since(t0);

    // Independent oracle recomputation of every label on every occurrence.
    std::size_t mismatches = 0;
    const SchemeIndex idx(s);
    oracle::visit(oracle::tower(kN, kR), [&](const oracle::Occ& o) {
        const auto id = idx.find(FinSet(o.elems));
        if (!id) {
            ++mismatches;
            return;
        }
        const FinSet& el = s.node(*id).elements;
        for (const auto& [alpha, fg] : oracle::labels(o).at) {
            if (testing_util::to_fn(el, ls.at(*id, alpha).f) != fg.first) ++mismatches;
            if (testing_util::to_fn(el, ls.at(*id, alpha).g) != fg.second) ++mismatches;
        }
    });
    std::ostringstream os;
    os << rep.failures.size() << " failures over " << rep.checked << " checks; oracle mismatches=" << mismatches
       << ", time=" << dt << "s (limit 5s)";
    return {rep.ok() && mismatches == 0 && dt < 5.0, os.str()};
}

Outcome tree_consequences() {
    const LabeledScheme ls = build_labels(generate_tower_scheme(derive_type(kN, kR)));
    const ConsequenceReport rep = capture_tree_consequences(ls);

    // Recount with oracle branch functions and oracle tuples.
    const auto top = oracle::tower(kN, kR);
    const auto h = oracle::branches(top);
    const auto extends = [&](std::uint32_t lo, std::uint32_t hi) {
        for (const auto& [x, v] : h.at(lo))
            if (h.at(hi).at(x) != v) return false;
        return true;
    };
    std::size_t oracle_bad = 0;
    for (const auto& [member, t] : oracle::captured_tuples(top, 3)) {
        const bool ok = h.at(t[1]).at(t[0]) == 1 && h.at(t[2]).at(t[0]) == 0 && extends(t[0], t[1]) &&
                        extends(t[0], t[2]) && h.at(t[1]).at(t[0]) != h.at(t[2]).at(t[0]);
        oracle_bad += !ok;
    }
    for (const auto& [member, t] : oracle::captured_tuples(top, 2)) oracle_bad += !extends(t[0], t[1]);

    std::ostringstream os;
    os << tally_text(rep) << "; oracle tuples failing=" << oracle_bad << " (zero tolerance)";
    return {rep.ok() && oracle_bad == 0, os.str()};
}

Outcome gap_hand_check() {
    const SideFamily sf = build_sides(generate_tower_scheme(derive_type({2}, {0})));
    const auto lim = limit_family(sf);
    const bool pass = lim.size() == 2 && lim.a[0] == FinSet{0, 2} && lim.b[0] == FinSet{1, 3} &&
                      lim.a[1] == FinSet{0, 3} && lim.b[1] == FinSet{1, 2} && sf.cuts.size() == 2 &&
                      sf.cuts[1] == 4;
    std::ostringstream os;
    os << "a_0=" << lim.a[0] << " b_0=" << lim.b[0] << " a_1=" << lim.a[1] << " b_1=" << lim.b[1]
       << " N_1=" << (sf.cuts.size() > 1 ? sf.cuts[1] : 0);
    return {pass, os.str()};
}

Outcome gap_invariants() {
    const ConstructionScheme s = generate_tower_scheme(derive_type(kN, kR));
    const auto t0 = Clock::now();
    const SideFamily sf = build_sides(s);
    const Report rep = check_side_invariants(sf);
    const double dt = seconds_since(t0);
    bool cuts = sf.cuts.size() == kN.size() + 1;
    for (std::uint32_t k = 0; cuts && k < sf.cuts.size(); ++k) cuts = sf.cuts[k] == 2 * k + 2;

    std::size_t mismatches = 0;
    const SchemeIndex idx(s);
    oracle::visit(oracle::tower(kN, kR), [&](const oracle::Occ& o) {
        const auto id = idx.find(FinSet(o.elems));
        if (!id) {
            ++mismatches;
            return;
        }
        for (const auto& [alpha, ab] : oracle::sides(o).at) {
            if (to_std(sf.at(*id, alpha).a) != ab.first || to_std(sf.at(*id, alpha).b) != ab.second) ++mismatches;
        }
    });
    std::ostringstream os;
    os << rep.failures.size() << " failures over " << rep.checked << " checks (" << idx.nested_pairs().size()
       << " nested pairs); N=(" << join(sf.cuts) << "); oracle mismatches=" << mismatches << ", time=" << dt
       << "s (limit 5s)";
    return {rep.ok() && cuts && mismatches == 0 && dt < 5.0, os.str()};
}

Outcome gap_consequences() {
    const SideFamily sf = build_sides(generate_tower_scheme(derive_type(kN, kR)));
    const ConsequenceReport rep = capture_gap_consequences(sf);
    const auto lim = limit_family(sf);
    std::size_t bad = 0, triples = 0;
    for (const auto& t : enumerate_captured_tuples(sf.scheme, 3)) {
        ++triples;
        const auto k = sf.scheme.node(t.node).rank;
        const auto &a0 = lim.a[t.points[0]], &b0 = lim.b[t.points[0]];
        const bool ok = a0.intersect(lim.b[t.points[1]]).contains(2 * (k - 1) + 2) &&
                        a0.subset_of(lim.a[t.points[2]]) && b0.subset_of(lim.b[t.points[2]]);
        bad += !ok;
    }
    std::ostringstream os;
    os << tally_text(rep) << "; recount " << (triples - bad) << "/" << triples << " (zero tolerance)";
    return {rep.ok() && bad == 0 && triples > 0, os.str()};
}

Outcome oracle_equivalence() {
    std::mt19937 rng(20240601);
    std::size_t mismatches = 0, compared = 0;
    const auto subset_of = [&](const FinSet& from) {
        std::vector<Ordinal> v;
        for (Ordinal x : from)
            if (rng() % 2) v.push_back(x);
        return FinSet(v);
    };
    for (int trial = 0; trial < 200; ++trial) {
        std::map<Ordinal, FiniteGapFamily::Sides> m;
        const std::size_t size = rng() % 9;
        while (m.size() < size) {
            std::vector<Ordinal> a, b;
            for (Ordinal v = 0; v < 16; ++v) {
                const auto roll = rng() % 5;
                if (roll == 0) a.push_back(v);
                if (roll == 1) b.push_back(v);
            }
            m[rng() % 16] = {FinSet(a), FinSet(b)};
        }
        const FiniteGapFamily fam(m);
        const auto o = to_oracle(fam);
        const FinSet all = fam.indices();
        const auto cast = [](const std::optional<IndexPair>& p) -> std::optional<std::pair<std::uint32_t, std::uint32_t>> {
            if (!p) return std::nullopt;
            return std::make_pair(p->first, p->second);
        };
        for (const FinSet& sub : {all, subset_of(all)}) {
            compared += 2;
            mismatches += cast(s_pair_search(fam, sub)) != oracle::s_pair(o, to_std(sub));
            mismatches += cast(t_pair_search(fam, sub)) != oracle::t_pair(o, to_std(sub));
        }
        for (int k = 0; k < 5; ++k) {
            const FinSet p = subset_of(all), q = subset_of(all);
            ++compared;
            const bool cp = is_s_condition(fam, p), cq = is_s_condition(fam, q);
            if (cp != oracle::s_condition(o, to_std(p)) || cq != oracle::s_condition(o, to_std(q))) {
                ++mismatches;
                continue;
            }
            if (cp && cq) {
                mismatches += s_poset_compatible(p, q, fam) != oracle::s_compatible(o, to_std(p), to_std(q));
            } else {
                bool threw = false;
                try {
                    s_poset_compatible(p, q, fam);
                } catch (const std::invalid_argument&) {
                    threw = true;
                }
                mismatches += !threw;
            }
        }
        // T-poset conditions built from the family's a-sides.
        std::vector<FinSet> pool;
        for (const auto& [alpha, sides] : fam.sides()) pool.push_back(sides.a);
        for (int k = 0; k < 5; ++k) {
            SetFamily p, q;
            std::set<std::set<std::uint32_t>> po, qo;
            for (const auto& x : pool) {
                if (rng() % 3 == 0) {
                    p.insert(x);
                    po.insert(to_std(x));
                }
                if (rng() % 3 == 0) {
                    q.insert(x);
                    qo.insert(to_std(x));
                }
            }
            ++compared;
            const bool cp = is_t_condition(p), cq = is_t_condition(q);
            if (cp != oracle::t_condition(po) || cq != oracle::t_condition(qo)) {
                ++mismatches;
                continue;
            }
            if (cp && cq) {
                mismatches += t_poset_compatible(p, q) != oracle::t_compatible(po, qo);
            } else {
                bool threw = false;
                try {
                    t_poset_compatible(p, q);
                } catch (const std::invalid_argument&) {
                    threw = true;
                }
                mismatches += !threw;
            }
        }
    }
    std::ostringstream os;
    os << mismatches << " mismatches over " << compared << " comparisons on 200 families (|Γ|<=8, values<16)";
    return {mismatches == 0, os.str()};
}

Outcome fault_injection() {
    const ConstructionScheme base = generate_tower_scheme(derive_type(kN, kR));
    const SchemeIndex idx(base);
    std::vector<std::pair<std::string, bool>> cases;

    {  // altered root of a node with r_k = 1
        ConstructionScheme s = base;
        for (auto& node : s.nodes) {
            if (node.rank == 2) {
                node.root = FinSet{node.elements[1]};
                break;
            }
        }
        cases.emplace_back("scheme root altered -> Δ-system with root R(F)",
                           verify_scheme(s).has_clause("Δ-system with root R(F)"));
    }
    {  // rank-0 node with two elements
        ConstructionScheme s = base;
        for (auto& node : s.nodes) {
            if (node.rank == 0) {
                node.elements = node.elements.unite(FinSet{node.elements.front() == 0 ? 1u : 0u});
                break;
            }
        }
        const Report rep = verify_scheme(s);
        bool named = false;
        for (const auto& f : rep.failures)
            if (f.clause == "|F|=m_k" && f.detail.find("m_0=1") != std::string::npos) named = true;
        cases.emplace_back("rank-0 node with 2 elements -> |F|=m_k (m_0=1)", named);
    }
    const LabeledScheme labels = build_labels(base);
    {  // swap f and g at one (F, α)
        LabeledScheme ls = labels;
        auto& lp = ls.labels[base.top][3];
        std::swap(lp.f, lp.g);
        cases.emplace_back("f/g swapped -> f(alpha)=0,g(alpha)=1",
                           check_label_invariants(ls).has_clause("f(alpha)=0,g(alpha)=1"));
    }
    {  // flip one bit above α at a non-top node
        LabeledScheme ls = labels;
        const NodeId f = base.node(base.top).children[1];
        ls.labels[f][0].f.back() ^= 1;
        const Report rep = check_label_invariants(ls);
        cases.emplace_back("one label bit flipped -> iso/extension coherence",
                           rep.has_clause("iso coherence") || rep.has_clause("extension coherence"));
    }
    const SideFamily sides = build_sides(base);
    {  // stray point at or above N_k
        SideFamily sf = sides;
        auto& p = sf.pairs[base.top][5];
        p.a = p.a.unite(FinSet{cut_point(base.node(base.top).rank)});
        cases.emplace_back("stray gap point >= N_k -> sides within N_k",
                           check_side_invariants(sf).has_clause("sides within N_k"));
    }
    {  // swap the new points in an odd block of a node that has same-rank siblings
        SideFamily sf = sides;
        bool done = false;
        for (NodeId parent = 0; parent < base.size() && !done; ++parent) {
            const auto& pn = base.node(parent);
            if (pn.rank < 2 || pn.children.size() < 2) continue;
            const NodeId f = pn.children[0];
            const auto& fn = base.node(f);
            if (fn.children.size() < 2) continue;
            const FinSet block = base.node(fn.children[1]).elements.minus(fn.root);
            auto& p = sf.pairs[f][fn.elements.position(block.front())];
            const Ordinal lo = cut_point(fn.rank - 1), hi = lo + 1;
            p.a = p.a.minus(FinSet{hi}).unite(FinSet{lo});
            p.b = p.b.minus(FinSet{lo}).unite(FinSet{hi});
            done = true;
        }
        cases.emplace_back("odd-block new points swapped -> iso coherence",
                           done && check_side_invariants(sf).has_clause("iso coherence"));
    }
    std::size_t detected = 0;
    std::ostringstream os;
    for (const auto& [name, ok] : cases) {
        detected += ok;
        os << "\n    " << (ok ? "detected " : "MISSED   ") << name;
    }
    return {detected == 6 && cases.size() == 6, std::to_string(detected) + "/6 detected" + os.str()};
}

Outcome determinism() {
    const auto run = [](std::vector<std::string> args) {
        args.insert(args.begin(), "cscheme");
        std::ostringstream out, err;
        const int code = cscheme::cli::run(args, out, err);
        return std::make_pair(code, out.str());
    };
    const auto dir = std::filesystem::temp_directory_path() / "cscheme_acceptance";
    std::filesystem::create_directories(dir);
    const std::string scheme = (dir / "scheme.json").string();
    const auto g1 = run({"gen", "--n", join(kN), "--r", join(kR)});
    const auto g2 = run({"gen", "--n", join(kN), "--r", join(kR)});
    std::ofstream(scheme) << g1.second;
    const auto t1 = run({"tree", scheme}), t2 = run({"tree", scheme});
    const auto p1 = run({"gap", scheme}), p2 = run({"gap", scheme});
    std::filesystem::remove_all(dir);
    const bool same_gen = g1 == g2, same_tree = t1 == t2, same_gap = p1 == p2;
    std::ostringstream os;
    os << "gen " << (same_gen ? "identical" : "DIFFERS") << " (" << g1.second.size() << " bytes), tree "
       << (same_tree ? "identical" : "DIFFERS") << " (" << t1.second.size() << " bytes), gap "
       << (same_gap ? "identical" : "DIFFERS") << " (" << p1.second.size() << " bytes)";
    return {same_gen && same_tree && same_gap && g1.first == 0 && !g1.second.empty() && !t1.second.empty() &&
                !p1.second.empty(),
            os.str()};
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "type arithmetic and occurrence counts", type_arithmetic},
        {2, "verify_scheme on the 72-point tower", scheme_verifies},
        {3, "tree label invariants", tree_invariants},
        {4, "tree capture consequences", tree_consequences},
        {5, "gap hand-check on m=(1,2)", gap_hand_check},
        {6, "gap side invariants", gap_invariants},
        {7, "gap capture consequences", gap_consequences},
        {8, "pair searches and posets vs naive scans", oracle_equivalence},
        {9, "fault injection", fault_injection},
        {10, "determinism of gen/tree/gap", determinism},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));
    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
