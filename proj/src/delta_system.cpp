#include "cscheme/delta_system.hpp"

#include <stdexcept>

namespace cscheme {

DeltaCheck is_increasing_delta_system(std::span<const FinSet> sets) {
    DeltaCheck out;
    if (sets.empty()) {
        out.violation = std::pair<std::size_t, std::size_t>{0, 0};
        return out;
    }
    if (sets.size() == 1) {
        out.ok = true;
        return out;
    }
    const FinSet root = sets[0].intersect(sets[1]);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const bool root_ok = sets[i].intersect(sets[j]) == root;
            const FinSet ti = sets[i].minus(root);
            const FinSet tj = sets[j].minus(root);
            if (!root_ok || !precedes(root, ti) || !precedes(ti, tj)) {
                out.violation = std::pair{i, j};
                return out;
            }
        }
    }
    out.ok = true;
    out.root = root;
    return out;
}

DeltaSystem::DeltaSystem(std::vector<FinSet> members) : members_(std::move(members)) {
    const DeltaCheck check = is_increasing_delta_system(members_);
    if (!check.ok) throw std::invalid_argument("not an increasing delta-system");
    root_ = check.root;
}

DeltaSystem::DeltaSystem(std::vector<FinSet> members, FinSet root)
    : members_(std::move(members)), root_(std::move(root)) {
    if (members_.empty()) throw std::invalid_argument("empty delta-system");
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (!root_.subset_of(members_[i]) || !precedes(root_, members_[i].minus(root_))) {
            throw std::invalid_argument("root is not an initial segment of every member");
        }
        for (std::size_t j = i + 1; j < members_.size(); ++j) {
            if (members_[i].intersect(members_[j]) != root_ ||
                !precedes(members_[i].minus(root_), members_[j].minus(root_))) {
                throw std::invalid_argument("not an increasing delta-system with the given root");
            }
        }
    }
}

}  // namespace cscheme
