#ifndef MODDIQ_IDEALOPS_HPP
#define MODDIQ_IDEALOPS_HPP

#include <moddiq/groebner.hpp>

namespace moddiq {

template <class F>
Ideal<F> make_ideal(const Ring<F>& R, std::vector<Poly<F>> gens)
{
    return Ideal<F>(R, std::move(gens));
}

template <class F>
Ideal<F> unit_ideal(const Ring<F>& R)
{
    return Ideal<F>(R, {poly_one(R)});
}

// Replace generators by the reduced GB (canonical generating set).
template <class F>
Ideal<F> canonicalize(const Ideal<F>& I)
{
    return Ideal<F>(I.ring, groebner_basis(I));
}

// I ∩ J via t·I + (1-t)·J and elimination of t.
template <class F>
Ideal<F> intersect(const Ideal<F>& I, const Ideal<F>& J)
{
    if (!I.ring.same_vars(J.ring)) throw DomainMismatch("intersect: different rings");
    Ring<F> Re = I.ring.extended("@t");
    int tv = Re.nvars() - 1;
    Poly<F> t = poly_var(Re, tv);
    Poly<F> one_minus_t = poly_sub(Re, poly_one(Re), t);
    std::vector<Poly<F>> gens;
    for (const auto& f : I.gens)
        gens.push_back(poly_mul(Re, t, poly_widen(Re, f)));
    for (const auto& g : J.gens)
        gens.push_back(poly_mul(Re, one_minus_t, poly_widen(Re, g)));
    Ideal<F> E(Re, std::move(gens));
    Ideal<F> El = eliminate(E, {tv});
    std::vector<Poly<F>> back;
    for (const auto& g : El.gens) back.push_back(poly_narrow(I.ring, g));
    return canonicalize(Ideal<F>(I.ring, std::move(back)));
}

// (I : g) for a single nonzero g, via (I ∩ ⟨g⟩) / g.
template <class F>
Ideal<F> quotient_by_poly(const Ideal<F>& I, const Poly<F>& g)
{
    if (g.is_zero()) return unit_ideal(I.ring);
    if (g.lm().is_one()) return canonicalize(I);  // unit element
    Ideal<F> L = intersect(I, Ideal<F>(I.ring, {g}));
    std::vector<Poly<F>> gens;
    for (const auto& f : L.gens)
        gens.push_back(poly_exact_div(I.ring, f, g));
    return canonicalize(Ideal<F>(I.ring, std::move(gens)));
}

// (I : J) = ⋂_g (I : g); (I : ⟨0⟩) = ⟨1⟩ by convention.
template <class F>
Ideal<F> quotient(const Ideal<F>& I, const Ideal<F>& J)
{
    if (!I.ring.same_vars(J.ring)) throw DomainMismatch("quotient: different rings");
    bool any = false;
    Ideal<F> acc;
    for (const auto& g : J.gens) {
        if (g.is_zero()) continue;
        Ideal<F> Q = quotient_by_poly(I, g);
        acc = any ? intersect(acc, Q) : Q;
        any = true;
    }
    if (!any) return unit_ideal(I.ring);
    return acc;
}

// (I : J^∞) by iterated quotient; also returns the stabilization index,
// the smallest m with (I : J^m) = (I : J^∞).
template <class F>
std::pair<Ideal<F>, int> saturate(const Ideal<F>& I, const Ideal<F>& J)
{
    Ideal<F> Q = canonicalize(I);
    int m = 0;
    while (true) {
        budget::check();
        Ideal<F> Q2 = quotient(Q, J);
        if (ideal_equal(Q, Q2)) return {Q, m};
        Q = Q2;
        ++m;
    }
}

// elementwise m-th powers {f^m | f in G}
template <class F>
std::vector<Poly<F>> power_bracket(const Ring<F>& R,
                                   const std::vector<Poly<F>>& G, int m)
{
    if (m < 1) throw std::invalid_argument("power_bracket: m must be >= 1");
    std::vector<Poly<F>> out;
    for (const auto& f : G) out.push_back(poly_pow(R, f, m));
    return out;
}

template <class F>
bool contains(const Ideal<F>& I, const Ideal<F>& J)
{
    const auto& G = groebner_basis(I);
    for (const auto& g : J.gens)
        if (!normal_form(I.ring, poly_reorder(I.ring, g), G).is_zero())
            return false;
    return true;
}

template <class F>
bool contains_poly(const Ideal<F>& I, const Poly<F>& f)
{
    return normal_form(I.ring, f, groebner_basis(I)).is_zero();
}

template <class F>
Ideal<F> product(const Ideal<F>& I, const Ideal<F>& J)
{
    if (!I.ring.same_vars(J.ring)) throw DomainMismatch("product: different rings");
    std::vector<Poly<F>> gens;
    for (const auto& f : I.gens)
        for (const auto& g : J.gens) {
            Poly<F> p = poly_mul(I.ring, f, g);
            if (!p.is_zero()) gens.push_back(std::move(p));
        }
    return Ideal<F>(I.ring, std::move(gens));
}

template <class F>
Ideal<F> ideal_sum(const Ideal<F>& I, const Ideal<F>& J)
{
    std::vector<Poly<F>> gens = I.gens;
    gens.insert(gens.end(), J.gens.begin(), J.gens.end());
    return Ideal<F>(I.ring, std::move(gens));
}

// J^m as a true ideal power; generators interreduced after each step.
template <class F>
Ideal<F> ideal_pow(const Ideal<F>& J, int m)
{
    Ideal<F> R = Ideal<F>(J.ring, {poly_one(J.ring)});
    for (int i = 0; i < m; ++i) R = canonicalize(product(R, J));
    return R;
}

// f ∈ √I via Rabinowitsch: 1 ∈ I + ⟨1 - y·f⟩ in the extended ring.
template <class F>
bool radical_membership(const Poly<F>& f, const Ideal<F>& I)
{
    if (f.is_zero()) return true;
    Ring<F> Re = I.ring.extended("@y");
    int yv = Re.nvars() - 1;
    std::vector<Poly<F>> gens;
    for (const auto& g : I.gens) gens.push_back(poly_widen(Re, g));
    Poly<F> yf = poly_mul(Re, poly_var(Re, yv), poly_widen(Re, f));
    gens.push_back(poly_sub(Re, poly_one(Re), yf));
    return is_unit_ideal(Ideal<F>(Re, std::move(gens)));
}

// Leading coefficient of g as a polynomial in the K[U]-variables, where the
// outer variables X\U dominate under the active (block) order of R.
template <class F>
Poly<F> leading_coeff_in(const Ring<F>& R, const Poly<F>& g,
                         const std::vector<bool>& in_U)
{
    auto outer_part = [&](const Monomial& m) {
        Monomial o(m.arity());
        for (std::size_t i = 0; i < m.arity(); ++i)
            if (!in_U[i]) o.e[i] = m.e[i];
        return o;
    };
    Monomial top = outer_part(g.lm());
    std::vector<typename Poly<F>::Term> terms;
    for (const auto& tm : g.t) {
        if (outer_part(tm.m) == top) {
            Monomial inner(tm.m.arity());
            for (std::size_t i = 0; i < tm.m.arity(); ++i)
                if (in_U[i]) inner.e[i] = tm.m.e[i];
            terms.push_back({std::move(inner), tm.c});
        }
    }
    return poly_normalize(R, std::move(terms));
}

// Contraction I·K(U)[X\U] ∩ K[X]: GB under the (X\U)-first block order,
// saturate at the product of the K[U]-leading coefficients.  Returns the
// contraction, the product h and the saturation exponent.
template <class F>
struct Contraction {
    Ideal<F> ideal;
    Poly<F> h;
    int sat_exponent = 0;
};

template <class F>
Contraction<F> contract_to_mis(const Ideal<F>& I, const std::vector<int>& U)
{
    int n = I.ring.nvars();
    std::vector<bool> in_U(n, false);
    for (int v : U) in_U[v] = true;
    std::vector<int> outer;
    for (int v = 0; v < n; ++v)
        if (!in_U[v]) outer.push_back(v);

    MonomialOrder ord = I.ring.order.eliminating(outer, n);
    const auto& G = groebner_basis(I, ord);
    Ring<F> Rb = I.ring.with_order(ord);

    Poly<F> h = poly_one(I.ring);
    std::vector<Poly<F>> seen;
    for (const auto& g : G) {
        Poly<F> lc = poly_monic(Rb, leading_coeff_in(Rb, g, in_U));
        if (lc.lm().is_one()) continue;
        Poly<F> lc0 = poly_reorder(I.ring, lc);
        bool dup = false;
        for (const auto& s : seen)
            if (s == lc0) { dup = true; break; }
        if (!dup) {
            seen.push_back(lc0);
            h = poly_mul(I.ring, h, lc0);
        }
    }
    if (h.lm().is_one())
        return {canonicalize(I), h, 0};
    auto [S, m] = saturate(I, Ideal<F>(I.ring, {h}));
    return {std::move(S), std::move(h), m};
}

// Equidimensional hull for the unmixed, common-MIS case: contraction of I to
// K(U)[X\U], which drops every component whose prime meets K[U]\{0}.
template <class F>
Ideal<F> hull_unmixed(const Ideal<F>& I, const std::vector<int>& U)
{
    int n = I.ring.nvars();
    std::vector<bool> in_U(n, false);
    for (int v : U) in_U[v] = true;
    for (const auto& g : groebner_basis(I))
        if (mono_supported_on(g.lm(), in_U))
            throw InvalidMIS("hull_unmixed: U is not independent for I");
    return contract_to_mis(I, U).ideal;
}

}  // namespace moddiq

#endif
