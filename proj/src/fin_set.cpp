#include "cscheme/fin_set.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cscheme {

FinSet::FinSet(std::initializer_list<Ordinal> values) : FinSet(std::vector<Ordinal>(values)) {}

FinSet::FinSet(std::vector<Ordinal> values) : elems_(std::move(values)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FinSet FinSet::from_sorted(std::vector<Ordinal> values) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i - 1] >= values[i]) {
            throw std::invalid_argument("set elements must be strictly increasing");
        }
    }
    FinSet s;
    s.elems_ = std::move(values);
    return s;
}

FinSet FinSet::range(Ordinal lo, Ordinal hi) {
    FinSet s;
    for (Ordinal x = lo; x < hi; ++x) s.elems_.push_back(x);
    return s;
}

bool FinSet::contains(Ordinal x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

std::size_t FinSet::position(Ordinal x) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
    if (it == elems_.end() || *it != x) return elems_.size();
    return static_cast<std::size_t>(it - elems_.begin());
}

bool FinSet::subset_of(const FinSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

bool FinSet::disjoint_from(const FinSet& other) const {
    auto a = elems_.begin();
    auto b = other.elems_.begin();
    while (a != elems_.end() && b != other.elems_.end()) {
        if (*a == *b) return false;
        if (*a < *b) ++a; else ++b;
    }
    return true;
}

FinSet FinSet::unite(const FinSet& other) const {
    FinSet out;
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                   std::back_inserter(out.elems_));
    return out;
}

FinSet FinSet::intersect(const FinSet& other) const {
    FinSet out;
    std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                          std::back_inserter(out.elems_));
    return out;
}

FinSet FinSet::minus(const FinSet& other) const {
    FinSet out;
    std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                        std::back_inserter(out.elems_));
    return out;
}

FinSet FinSet::below(Ordinal bound) const {
    FinSet out;
    out.elems_.assign(elems_.begin(), std::lower_bound(elems_.begin(), elems_.end(), bound));
    return out;
}

FinSet FinSet::at_or_above(Ordinal bound) const {
    FinSet out;
    out.elems_.assign(std::lower_bound(elems_.begin(), elems_.end(), bound), elems_.end());
    return out;
}

std::string FinSet::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

bool precedes(const FinSet& a, const FinSet& b) {
    if (a.empty() || b.empty()) return true;
    return a.back() < b.front();
}

std::ostream& operator<<(std::ostream& os, const FinSet& s) {
    os << '{';
    bool first = true;
    for (Ordinal x : s) {
        if (!first) os << ',';
        os << x;
        first = false;
    }
    return os << '}';
}

}  // namespace cscheme
