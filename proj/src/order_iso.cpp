#include "cscheme/order_iso.hpp"

namespace cscheme {

OrderIso::OrderIso(FinSet source, FinSet target)
    : source_(std::move(source)), target_(std::move(target)) {
    if (source_.size() != target_.size()) {
        throw std::invalid_argument("order isomorphism needs sets of equal size");
    }
}

Ordinal OrderIso::operator()(Ordinal x) const {
    const auto p = source_.position(x);
    if (p == source_.size()) throw std::out_of_range("point outside iso source");
    return target_[p];
}

Ordinal OrderIso::inverse_at(Ordinal y) const {
    const auto p = target_.position(y);
    if (p == target_.size()) throw std::out_of_range("point outside iso target");
    return source_[p];
}

FinSet OrderIso::image(const FinSet& subset) const {
    std::vector<Ordinal> out;
    out.reserve(subset.size());
    for (Ordinal x : subset) out.push_back((*this)(x));
    return FinSet::from_sorted(std::move(out));
}

OrderIso compose(const OrderIso& first, const OrderIso& next) {
    if (first.target() != next.source()) {
        throw std::invalid_argument("iso composition needs matching target/source");
    }
    return OrderIso(first.source(), next.target());
}

}  // namespace cscheme
