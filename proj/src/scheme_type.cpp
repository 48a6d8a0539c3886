#include "cscheme/scheme_type.hpp"

#include <limits>
#include <sstream>

namespace cscheme {

namespace {

std::string with_rank(std::string base, std::uint32_t k) {
    std::ostringstream os;
    os << base << " at k=" << k;
    return os.str();
}

}  // namespace

TypeReport validate_type(const SchemeType& t) {
    if (t.n.size() != t.r.size() || t.m.size() != t.n.size() + 1) {
        throw MalformedInput("type sequences must satisfy |m| = |n| + 1 = |r| + 1");
    }
    TypeReport rep;
    if (t.m[0] != 1) {
        std::ostringstream os;
        os << "m[0]=1 violated: m[0]=" << t.m[0];
        rep.violations.push_back({"m[0]=1", 0, os.str()});
    }
    for (std::uint32_t k = 1; k <= t.max_rank(); ++k) {
        const auto m_prev = t.m_at(k - 1);
        const auto nk = t.n_at(k);
        const auto rk = t.r_at(k);
        if (!(rk < m_prev)) {
            std::ostringstream os;
            os << with_rank("r[k]<m[k-1] violated", k) << ": r[" << k << "]=" << rk << ", m["
               << k - 1 << "]=" << m_prev;
            rep.violations.push_back({"r[k]<m[k-1]", k, os.str()});
        }
        if (!(nk > k)) {
            std::ostringstream os;
            os << with_rank("n[k]>k violated", k) << ": n[" << k << "]=" << nk << " (n[" << k
               << "]>" << k << " required)";
            rep.violations.push_back({"n[k]>k", k, os.str()});
        }
        if (rk < m_prev) {
            const auto expected = nk * (m_prev - rk) + rk;
            if (t.m_at(k) != expected) {
                std::ostringstream os;
                os << with_rank("m[k]=n[k](m[k-1]-r[k])+r[k] violated", k) << ": m[" << k
                   << "]=" << t.m_at(k) << ", expected " << expected;
                rep.violations.push_back({"m[k]=n[k](m[k-1]-r[k])+r[k]", k, os.str()});
            }
        }
    }
    return rep;
}

SchemeType derive_type(std::vector<std::uint64_t> n, std::vector<std::uint64_t> r) {
    if (n.size() != r.size()) throw MalformedInput("n and r must have the same length");
    SchemeType t;
    t.m.push_back(1);
    for (std::size_t i = 0; i < n.size(); ++i) {
        const auto m_prev = t.m.back();
        if (r[i] >= m_prev) {
            t.m.push_back(0);
            continue;
        }
        const auto block = m_prev - r[i];
        if (n[i] != 0 && block > (std::numeric_limits<std::uint64_t>::max() - r[i]) / n[i]) {
            throw MalformedInput("type arithmetic overflows 64 bits");
        }
        t.m.push_back(n[i] * block + r[i]);
    }
    t.n = std::move(n);
    t.r = std::move(r);
    return t;
}

}  // namespace cscheme
