#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cscheme {

/// Desk-scale stand-in for a countable ordinal.
using Ordinal = std::uint32_t;

/// A finite set of ordinals (or naturals), stored strictly increasing.
///
/// Construction from arbitrary input sorts and deduplicates; `from_sorted`
/// rejects anything that is not already strictly increasing.
class FinSet {
public:
    using value_type = Ordinal;
    using const_iterator = std::vector<Ordinal>::const_iterator;

    FinSet() = default;
    FinSet(std::initializer_list<Ordinal> values);
    explicit FinSet(std::vector<Ordinal> values);

    /// Throws std::invalid_argument unless `values` is strictly increasing.
    static FinSet from_sorted(std::vector<Ordinal> values);
    /// The interval [lo, hi).
    static FinSet range(Ordinal lo, Ordinal hi);

    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    const_iterator begin() const noexcept { return elems_.begin(); }
    const_iterator end() const noexcept { return elems_.end(); }
    Ordinal operator[](std::size_t i) const { return elems_[i]; }
    Ordinal front() const { return elems_.front(); }
    Ordinal back() const { return elems_.back(); }
    std::span<const Ordinal> view() const noexcept { return elems_; }
    const std::vector<Ordinal>& values() const noexcept { return elems_; }

    bool contains(Ordinal x) const;
    /// Position of `x` in increasing order, or size() if absent.
    std::size_t position(Ordinal x) const;

    bool subset_of(const FinSet& other) const;
    bool disjoint_from(const FinSet& other) const;

    FinSet unite(const FinSet& other) const;
    FinSet intersect(const FinSet& other) const;
    FinSet minus(const FinSet& other) const;
    /// Elements strictly below `bound`.
    FinSet below(Ordinal bound) const;
    /// Elements at or above `bound`.
    FinSet at_or_above(Ordinal bound) const;

    std::string to_string() const;

    friend bool operator==(const FinSet&, const FinSet&) = default;
    friend auto operator<=>(const FinSet&, const FinSet&) = default;

private:
    std::vector<Ordinal> elems_;
};

/// A < B: every element of A is below every element of B. Vacuous if either is empty.
bool precedes(const FinSet& a, const FinSet& b);

std::ostream& operator<<(std::ostream& os, const FinSet& s);

}  // namespace cscheme
