#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cscheme {

/// Arithmetic skeleton (m_k, n_k, r_k) of a construction scheme, truncated at
/// rank K. `m` has K+1 entries; `n` and `r` have K entries, with n[k-1] and
/// r[k-1] holding n_k and r_k.
struct SchemeType {
    std::vector<std::uint64_t> m;
    std::vector<std::uint64_t> n;
    std::vector<std::uint64_t> r;

    std::uint32_t max_rank() const noexcept { return static_cast<std::uint32_t>(n.size()); }
    std::uint64_t m_at(std::uint32_t k) const { return m.at(k); }
    std::uint64_t n_at(std::uint32_t k) const { return n.at(k - 1); }
    std::uint64_t r_at(std::uint32_t k) const { return r.at(k - 1); }

    friend bool operator==(const SchemeType&, const SchemeType&) = default;
};

/// Thrown when input does not even have the shape of the requested object.
class MalformedInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct TypeViolation {
    std::string clause;   // "m[0]=1", "r[k]<m[k-1]", "n[k]>k", "m[k]=n[k](m[k-1]-r[k])+r[k]"
    std::uint32_t rank;
    std::string message;

    friend bool operator==(const TypeViolation&, const TypeViolation&) = default;
};

struct TypeReport {
    std::vector<TypeViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Checks every finite-prefix clause of a type. The clause asking each r to
/// recur infinitely often has no finite content and is not checked.
/// Throws MalformedInput if |m| != |n|+1 or |n| != |r|.
TypeReport validate_type(const SchemeType& t);

/// m derived from n, r via m_0 = 1, m_k = n_k (m_{k-1} - r_k) + r_k. When
/// r_k >= m_{k-1} the recursion is undefined and m_k is recorded as 0, which
/// validate_type then reports. Throws MalformedInput if |n| != |r|.
SchemeType derive_type(std::vector<std::uint64_t> n, std::vector<std::uint64_t> r);

}  // namespace cscheme
