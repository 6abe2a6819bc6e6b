#ifndef MODDIQ_RING_HPP
#define MODDIQ_RING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <moddiq/fp.hpp>
#include <moddiq/order.hpp>

namespace moddiq {

// Coefficient field QQ.  mpq_class keeps values canonical (gcd = 1,
// positive denominator) through all arithmetic.
struct RatField {
    using Elem = mpq_class;

    static Elem zero() { return Elem(0); }
    static Elem one() { return Elem(1); }
    static Elem from_int(long v) { return Elem(v); }
    static bool is_zero(const Elem& a) { return sgn(a) == 0; }
    static bool is_one(const Elem& a) { return a == 1; }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem neg(const Elem& a) { return -a; }
    static Elem inv(const Elem& a) { return Elem(1) / a; }
    static Elem div(const Elem& a, const Elem& b) { return a / b; }
    static bool eq(const Elem& a, const Elem& b) { return a == b; }

    bool operator==(const RatField&) const { return true; }
};

// Coefficient field F_p, residues in [0, p).
struct FpField {
    std::uint64_t p = 0;

    using Elem = std::uint64_t;

    FpField() = default;
    explicit FpField(std::uint64_t prime) : p(prime) {}

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem from_int(long v) const
    {
        long r = v % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return static_cast<Elem>(r);
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }
    Elem add(Elem a, Elem b) const { return fp::add(a, b, p); }
    Elem sub(Elem a, Elem b) const { return fp::sub(a, b, p); }
    Elem mul(Elem a, Elem b) const { return fp::mul(a, b, p); }
    Elem neg(Elem a) const { return fp::neg(a, p); }
    Elem inv(Elem a) const { return fp::inv(a, p); }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    static bool eq(Elem a, Elem b) { return a == b; }

    bool operator==(const FpField& o) const { return p == o.p; }
};

// Polynomial ring context: variable names, active monomial order, field.
template <class F>
struct Ring {
    std::vector<std::string> vars;
    MonomialOrder order;
    F field;

    int nvars() const { return static_cast<int>(vars.size()); }

    bool same_vars(const Ring& o) const { return vars == o.vars; }

    Ring with_order(MonomialOrder ord) const
    {
        Ring r = *this;
        r.order = std::move(ord);
        return r;
    }

    // Append a fresh auxiliary variable that dominates everything
    // (block order [new var | current order]).
    Ring extended(const std::string& name) const
    {
        Ring r = *this;
        r.vars.push_back(name);
        auto bs = order.to_blocks(nvars());
        std::vector<MonomialOrder::Block> nb;
        nb.push_back({{nvars()}, MonomialOrder::Kind::lex});
        for (auto& b : bs) nb.push_back(b);
        r.order = MonomialOrder::block(std::move(nb));
        return r;
    }
};

using QRing = Ring<RatField>;
using PRing = Ring<FpField>;

}  // namespace moddiq

#endif
