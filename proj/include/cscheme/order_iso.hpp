#pragma once

#include <map>
#include <stdexcept>

#include "cscheme/fin_set.hpp"

namespace cscheme {

/// The unique order-preserving bijection between two finite sets of equal size.
class OrderIso {
public:
    /// Throws std::invalid_argument if |source| != |target|.
    OrderIso(FinSet source, FinSet target);

    static OrderIso identity(const FinSet& s) { return OrderIso(s, s); }

    const FinSet& source() const noexcept { return source_; }
    const FinSet& target() const noexcept { return target_; }

    /// Throws std::out_of_range if x is not in source().
    Ordinal operator()(Ordinal x) const;
    /// Throws std::out_of_range if y is not in target().
    Ordinal inverse_at(Ordinal y) const;
    /// Image of a subset of source(). Throws std::out_of_range otherwise.
    FinSet image(const FinSet& subset) const;

    OrderIso inverse() const { return OrderIso(target_, source_); }
    bool is_identity() const { return source_ == target_; }

    friend bool operator==(const OrderIso&, const OrderIso&) = default;

private:
    FinSet source_;
    FinSet target_;
};

/// `first`, then `next`. Throws std::invalid_argument unless next.source() == first.target().
OrderIso compose(const OrderIso& first, const OrderIso& next);

/// order_iso(E, F): same as the OrderIso constructor.
inline OrderIso order_iso(const FinSet& e, const FinSet& f) { return OrderIso(e, f); }

/// The function γ ↦ f(iso⁻¹(γ)) on iso.target().
/// Throws std::invalid_argument unless f's domain is exactly iso.source().
template <class V>
std::map<Ordinal, V> transport(const OrderIso& iso, const std::map<Ordinal, V>& f) {
    if (f.size() != iso.source().size()) {
        throw std::invalid_argument("transported function must be total on the iso source");
    }
    std::map<Ordinal, V> out;
    std::size_t i = 0;
    for (const auto& [x, v] : f) {
        if (x != iso.source()[i]) {
            throw std::invalid_argument("transported function must be total on the iso source");
        }
        out.emplace_hint(out.end(), iso.target()[i], v);
        ++i;
    }
    return out;
}

}  // namespace cscheme
