#include "cscheme/report.hpp"

#include <algorithm>

namespace cscheme {

bool Report::has_clause(std::string_view clause) const {
    return count_clause(clause) > 0;
}

std::size_t Report::count_clause(std::string_view clause) const {
    return static_cast<std::size_t>(std::count_if(
        failures.begin(), failures.end(), [&](const Failure& f) { return f.clause == clause; }));
}

bool ConsequenceReport::ok() const noexcept {
    return std::all_of(tallies.begin(), tallies.end(), [](const Tally& t) { return t.violations == 0; });
}

const Tally* ConsequenceReport::find(std::string_view tally) const {
    for (const auto* list : {&tallies, &diagnostics}) {
        for (const auto& t : *list) {
            if (t.name == tally) return &t;
        }
    }
    return nullptr;
}

}  // namespace cscheme
