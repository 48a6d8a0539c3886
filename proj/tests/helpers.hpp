#pragma once

#include <map>
#include <set>
#include <vector>

#include "cscheme/gap_analysis.hpp"
#include "cscheme/scheme.hpp"
#include "cscheme/tree.hpp"
#include "oracles.hpp"

namespace testing_util {

using namespace cscheme;

inline ConstructionScheme tower(std::vector<std::uint64_t> n, std::vector<std::uint64_t> r) {
    return generate_tower_scheme(derive_type(std::move(n), std::move(r)));
}

inline std::set<std::uint32_t> to_std(const FinSet& s) { return {s.begin(), s.end()}; }

inline oracle::Fn to_fn(const FinSet& domain, const Bits& bits) {
    oracle::Fn out;
    for (const auto& [k, v] : as_function(domain, bits)) out[k] = v;
    return out;
}

inline oracle::Elems to_elems(const FinSet& s) { return {s.begin(), s.end()}; }

inline oracle::Family to_oracle(const FiniteGapFamily& fam) {
    oracle::Family out;
    for (const auto& [alpha, s] : fam.sides()) out.sides[alpha] = {to_std(s.a), to_std(s.b)};
    return out;
}

}  // namespace testing_util
