#ifndef MODDIQ_MONOMIAL_HPP
#define MODDIQ_MONOMIAL_HPP

#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <moddiq/errors.hpp>

namespace moddiq {

// Exponent vector, one entry per ring variable.
struct Monomial {
    std::vector<std::uint32_t> e;

    Monomial() = default;
    explicit Monomial(std::size_t arity) : e(arity, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}

    std::size_t arity() const { return e.size(); }

    std::uint64_t degree() const
    {
        return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
    }

    bool is_one() const
    {
        for (auto x : e)
            if (x) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
    // Plain lexicographic tie-break helper (not a monomial order).
    bool operator<(const Monomial& o) const { return e < o.e; }
};

inline void check_arity(const Monomial& a, const Monomial& b)
{
    if (a.arity() != b.arity())
        throw ArityMismatch("monomial arity mismatch");
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b)
{
    check_arity(a, b);
    Monomial r(a.arity());
    for (std::size_t i = 0; i < a.arity(); ++i) {
        std::uint64_t s = std::uint64_t{a.e[i]} + b.e[i];
        if (s > std::numeric_limits<std::uint32_t>::max())
            throw ExponentOverflow("monomial exponent overflow");
        r.e[i] = static_cast<std::uint32_t>(s);
    }
    return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b)
{
    // a | b
    check_arity(a, b);
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline Monomial mono_div(const Monomial& b, const Monomial& a)
{
    // b / a, caller guarantees divisibility
    check_arity(a, b);
    Monomial r(a.arity());
    for (std::size_t i = 0; i < a.arity(); ++i)
        r.e[i] = b.e[i] - a.e[i];
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b)
{
    check_arity(a, b);
    Monomial r(a.arity());
    for (std::size_t i = 0; i < a.arity(); ++i)
        r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
    return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b)
{
    check_arity(a, b);
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

// true iff every variable occurring in m lies in the subset mask
inline bool mono_supported_on(const Monomial& m, const std::vector<bool>& subset)
{
    for (std::size_t i = 0; i < m.arity(); ++i)
        if (m.e[i] && !subset[i]) return false;
    return true;
}

}  // namespace moddiq

#endif
