#include "cscheme/gap_analysis.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace cscheme {

namespace {

void require_subset(const FiniteGapFamily& fam, const FinSet& sub) {
    for (Ordinal x : sub) {
        if (!fam.contains(x)) throw std::out_of_range("index " + std::to_string(x) + " is not in the family");
    }
}

std::optional<IndexPair> first_pair(const FiniteGapFamily& fam, const FinSet& sub,
                                    const std::function<bool(Ordinal, Ordinal)>& pred) {
    require_subset(fam, sub);
    for (std::size_t i = 0; i < sub.size(); ++i) {
        for (std::size_t j = i + 1; j < sub.size(); ++j) {
            if (pred(sub[i], sub[j])) return IndexPair{sub[i], sub[j]};
        }
    }
    return std::nullopt;
}

// Nonempty subsets of {0..count-1} of size ≤ max_size, by size then lexicographically.
std::vector<std::vector<std::size_t>> small_subsets(std::size_t count, std::size_t max_size) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    for (std::size_t size = 1; size <= std::min(count, max_size); ++size) {
        std::function<void(std::size_t)> rec = [&](std::size_t from) {
            if (cur.size() == size) {
                out.push_back(cur);
                return;
            }
            for (std::size_t i = from; i < count; ++i) {
                cur.push_back(i);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
    }
    return out;
}

// Largest clique (≤ bound) in the graph given by `adjacent`, lexicographically least on ties.
std::vector<std::size_t> max_clique(const std::vector<std::vector<bool>>& adjacent, std::size_t bound) {
    const std::size_t count = adjacent.size();
    std::vector<std::size_t> best, cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (cur.size() > best.size()) best = cur;
        if (best.size() >= bound) return;
        for (std::size_t v = from; v < count; ++v) {
            if (cur.size() + (count - v) <= best.size()) return;
            const bool fits = std::all_of(cur.begin(), cur.end(), [&](std::size_t u) { return adjacent[u][v]; });
            if (!fits) continue;
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
            if (best.size() >= bound) return;
        }
    };
    if (bound > 0) rec(0);
    return best;
}

std::optional<std::pair<Ordinal, Ordinal>> s_violation(const FiniteGapFamily& fam, const FinSet& p) {
    for (Ordinal x : p) {
        for (Ordinal y : p) {
            if (x != y && !fam.a(x).disjoint_from(fam.b(y))) return std::pair{x, y};
        }
    }
    return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> t_violation(const std::vector<FinSet>& sets,
                                                               const std::vector<std::size_t>& members) {
    for (std::size_t x : members) {
        for (std::size_t y : members) {
            if (x != y && sets[x].subset_of(sets[y])) return std::pair{x, y};
        }
    }
    return std::nullopt;
}

}  // namespace

FiniteGapFamily::FiniteGapFamily(std::map<Ordinal, Sides> sides) : sides_(std::move(sides)) {
    for (const auto& [alpha, s] : sides_) {
        if (!s.a.disjoint_from(s.b)) {
            throw std::invalid_argument("a and b meet at index " + std::to_string(alpha));
        }
    }
}

FiniteGapFamily FiniteGapFamily::from_limit(const LimitGapFamily& lim) {
    std::map<Ordinal, Sides> sides;
    for (std::size_t i = 0; i < lim.size(); ++i) sides.emplace(static_cast<Ordinal>(i), Sides{lim.a[i], lim.b[i]});
    return FiniteGapFamily(std::move(sides));
}

FinSet FiniteGapFamily::indices() const {
    std::vector<Ordinal> out;
    for (const auto& kv : sides_) out.push_back(kv.first);
    return FinSet::from_sorted(std::move(out));
}

std::optional<IndexPair> ramsey_pair_search(const FiniteGapFamily& fam, const FinSet& sub) {
    return first_pair(fam, sub, [&](Ordinal x, Ordinal y) { return !fam.a(x).disjoint_from(fam.b(y)); });
}

std::optional<IndexPair> s_pair_search(const FiniteGapFamily& fam, const FinSet& sub) {
    return first_pair(fam, sub, [&](Ordinal x, Ordinal y) {
        return fam.a(x).disjoint_from(fam.b(y)) && fam.a(y).disjoint_from(fam.b(x));
    });
}

std::optional<IndexPair> t_pair_search(const FiniteGapFamily& fam, const FinSet& sub) {
    return first_pair(fam, sub, [&](Ordinal x, Ordinal y) {
        return fam.a(x).subset_of(fam.a(y)) && fam.b(x).subset_of(fam.b(y));
    });
}

SplitterResult union_splitter(const FiniteGapFamily& fam, const FinSet& sub) {
    if (sub.empty()) throw std::invalid_argument("splitter needs a nonempty subfamily");
    require_subset(fam, sub);
    SplitterResult out;
    for (Ordinal x : sub) out.c = out.c.unite(fam.a(x));
    for (const auto& [alpha, s] : fam.sides()) {
        out.residues.emplace(alpha, std::pair{s.a.minus(out.c), out.c.intersect(s.b)});
    }
    return out;
}

bool is_s_condition(const FiniteGapFamily& fam, const FinSet& p) {
    require_subset(fam, p);
    return !s_violation(fam, p).has_value();
}

bool s_poset_compatible(const FinSet& p, const FinSet& q, const FiniteGapFamily& fam) {
    if (!is_s_condition(fam, p) || !is_s_condition(fam, q)) {
        throw std::invalid_argument("argument is not a condition of the orthogonality poset");
    }
    return is_s_condition(fam, p.unite(q));
}

bool is_t_condition(const SetFamily& p) {
    for (auto x = p.begin(); x != p.end(); ++x) {
        for (auto y = std::next(x); y != p.end(); ++y) {
            if (x->subset_of(*y) || y->subset_of(*x)) return false;
        }
    }
    return true;
}

bool t_poset_compatible(const SetFamily& p, const SetFamily& q) {
    if (!is_t_condition(p) || !is_t_condition(q)) {
        throw std::invalid_argument("argument is not a condition of the incomparability poset");
    }
    SetFamily both = p;
    both.insert(q.begin(), q.end());
    return is_t_condition(both);
}

AntichainResult<FinSet> max_s_antichain(const FiniteGapFamily& fam, const FinSet& ground,
                                        std::size_t max_condition_size, std::size_t size_bound) {
    require_subset(fam, ground);
    std::vector<FinSet> conds;
    for (const auto& pick : small_subsets(ground.size(), max_condition_size)) {
        std::vector<Ordinal> v;
        for (auto i : pick) v.push_back(ground[i]);
        FinSet p = FinSet::from_sorted(std::move(v));
        if (is_s_condition(fam, p)) conds.push_back(std::move(p));
    }
    std::vector<std::vector<bool>> incompatible(conds.size(), std::vector<bool>(conds.size(), false));
    for (std::size_t i = 0; i < conds.size(); ++i) {
        for (std::size_t j = i + 1; j < conds.size(); ++j) {
            incompatible[i][j] = incompatible[j][i] = !is_s_condition(fam, conds[i].unite(conds[j]));
        }
    }
    const auto clique = max_clique(incompatible, size_bound);
    AntichainResult<FinSet> out;
    out.conditions_considered = conds.size();
    for (auto i : clique) out.antichain.push_back(conds[i]);
    for (std::size_t i = 0; i < clique.size(); ++i) {
        for (std::size_t j = i + 1; j < clique.size(); ++j) {
            const auto v = s_violation(fam, out.antichain[i].unite(out.antichain[j]));
            out.certificate.push_back({i, j, v->first, v->second});
        }
    }
    return out;
}

AntichainResult<SetFamily> max_t_antichain(const std::vector<FinSet>& sets,
                                           std::size_t max_condition_size, std::size_t size_bound) {
    std::vector<std::size_t> distinct;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (std::find(sets.begin(), sets.begin() + static_cast<std::ptrdiff_t>(i), sets[i]) ==
            sets.begin() + static_cast<std::ptrdiff_t>(i)) {
            distinct.push_back(i);
        }
    }
    std::vector<std::vector<std::size_t>> conds;
    for (const auto& pick : small_subsets(distinct.size(), max_condition_size)) {
        std::vector<std::size_t> members;
        for (auto i : pick) members.push_back(distinct[i]);
        if (!t_violation(sets, members)) conds.push_back(std::move(members));
    }
    const auto merged = [](const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
        std::vector<std::size_t> out;
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
        return out;
    };
    std::vector<std::vector<bool>> incompatible(conds.size(), std::vector<bool>(conds.size(), false));
    for (std::size_t i = 0; i < conds.size(); ++i) {
        for (std::size_t j = i + 1; j < conds.size(); ++j) {
            incompatible[i][j] = incompatible[j][i] = t_violation(sets, merged(conds[i], conds[j])).has_value();
        }
    }
    const auto clique = max_clique(incompatible, size_bound);
    AntichainResult<SetFamily> out;
    out.conditions_considered = conds.size();
    for (auto i : clique) {
        SetFamily p;
        for (auto m : conds[i]) p.insert(sets[m]);
        out.antichain.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < clique.size(); ++i) {
        for (std::size_t j = i + 1; j < clique.size(); ++j) {
            const auto v = t_violation(sets, merged(conds[clique[i]], conds[clique[j]]));
            out.certificate.push_back({i, j, static_cast<Ordinal>(v->first), static_cast<Ordinal>(v->second)});
        }
    }
    return out;
}

}  // namespace cscheme
