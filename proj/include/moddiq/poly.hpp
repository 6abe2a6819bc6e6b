#ifndef MODDIQ_POLY_HPP
#define MODDIQ_POLY_HPP

#include <algorithm>
#include <map>
#include <vector>

#include <moddiq/errors.hpp>
#include <moddiq/ring.hpp>

namespace moddiq {

// Sparse distributed polynomial: terms sorted strictly descending under the
// ring's active order, no zero coefficients.  Zero = empty term list.
template <class F>
struct Poly {
    struct Term {
        Monomial m;
        typename F::Elem c;
    };
    std::vector<Term> t;

    bool is_zero() const { return t.empty(); }
    const Term& lt() const { return t.front(); }
    const Monomial& lm() const { return t.front().m; }
    const typename F::Elem& lc() const { return t.front().c; }

    bool operator==(const Poly& o) const
    {
        if (t.size() != o.t.size()) return false;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (!(t[i].m == o.t[i].m) || !F::eq(t[i].c, o.t[i].c)) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }
};

template <class F>
Poly<F> poly_zero(const Ring<F>&)
{
    return {};
}

template <class F>
Poly<F> poly_const(const Ring<F>& R, typename F::Elem c)
{
    Poly<F> f;
    if (!R.field.is_zero(c)) f.t.push_back({Monomial(R.vars.size()), c});
    return f;
}

template <class F>
Poly<F> poly_one(const Ring<F>& R)
{
    return poly_const(R, R.field.one());
}

template <class F>
Poly<F> poly_var(const Ring<F>& R, int v, std::uint32_t exp = 1)
{
    Monomial m(R.vars.size());
    m.e[v] = exp;
    Poly<F> f;
    f.t.push_back({std::move(m), R.field.one()});
    return f;
}

// Sort + merge an arbitrary term list into canonical form.
template <class F>
Poly<F> poly_normalize(const Ring<F>& R, std::vector<typename Poly<F>::Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [&R](const auto& a, const auto& b) {
                  int c = R.order.cmp(a.m, b.m);
                  if (c) return c > 0;
                  return a.m.e < b.m.e;  // stable merge key
              });
    Poly<F> f;
    for (auto& tm : terms) {
        if (!f.t.empty() && f.t.back().m == tm.m)
            f.t.back().c = R.field.add(f.t.back().c, tm.c);
        else
            f.t.push_back(std::move(tm));
        if (!f.t.empty() && R.field.is_zero(f.t.back().c)) f.t.pop_back();
    }
    return f;
}

template <class F>
Poly<F> poly_add(const Ring<F>& R, const Poly<F>& a, const Poly<F>& b)
{
    Poly<F> r;
    r.t.reserve(a.t.size() + b.t.size());
    std::size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        int c = R.order.cmp(a.t[i].m, b.t[j].m);
        if (c > 0) {
            r.t.push_back(a.t[i++]);
        } else if (c < 0) {
            r.t.push_back(b.t[j++]);
        } else {
            auto s = R.field.add(a.t[i].c, b.t[j].c);
            if (!R.field.is_zero(s)) r.t.push_back({a.t[i].m, s});
            ++i, ++j;
        }
    }
    for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j) r.t.push_back(b.t[j]);
    return r;
}

template <class F>
Poly<F> poly_neg(const Ring<F>& R, const Poly<F>& a)
{
    Poly<F> r = a;
    for (auto& tm : r.t) tm.c = R.field.neg(tm.c);
    return r;
}

template <class F>
Poly<F> poly_sub(const Ring<F>& R, const Poly<F>& a, const Poly<F>& b)
{
    return poly_add(R, a, poly_neg(R, b));
}

template <class F>
Poly<F> poly_mul_term(const Ring<F>& R, const Poly<F>& a, const Monomial& m,
                      const typename F::Elem& c)
{
    Poly<F> r;
    if (R.field.is_zero(c)) return r;
    r.t.reserve(a.t.size());
    for (auto& tm : a.t) {
        auto p = R.field.mul(tm.c, c);
        if (!R.field.is_zero(p)) r.t.push_back({mono_mul(tm.m, m), p});
    }
    return r;
}

template <class F>
Poly<F> poly_mul(const Ring<F>& R, const Poly<F>& a, const Poly<F>& b)
{
    std::vector<typename Poly<F>::Term> terms;
    terms.reserve(a.t.size() * b.t.size());
    for (auto& ta : a.t)
        for (auto& tb : b.t)
            terms.push_back({mono_mul(ta.m, tb.m), R.field.mul(ta.c, tb.c)});
    return poly_normalize(R, std::move(terms));
}

template <class F>
Poly<F> poly_scale(const Ring<F>& R, const Poly<F>& a, const typename F::Elem& c)
{
    Poly<F> r;
    if (R.field.is_zero(c)) return r;
    r = a;
    for (auto& tm : r.t) tm.c = R.field.mul(tm.c, c);
    return r;
}

template <class F>
Poly<F> poly_monic(const Ring<F>& R, const Poly<F>& a)
{
    if (a.is_zero() || R.field.is_one(a.lc())) return a;
    return poly_scale(R, a, R.field.inv(a.lc()));
}

template <class F>
Poly<F> poly_pow(const Ring<F>& R, const Poly<F>& a, unsigned n)
{
    Poly<F> r = poly_one(R);
    for (unsigned i = 0; i < n; ++i) r = poly_mul(R, r, a);
    return r;
}

// Single-divisor division: f = q*g + r, no term of r divisible by lm(g).
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const Ring<F>& R, const Poly<F>& f,
                                        const Poly<F>& g)
{
    Poly<F> q, r, h = f;
    while (!h.is_zero()) {
        if (mono_divides(g.lm(), h.lm())) {
            Monomial m = mono_div(h.lm(), g.lm());
            auto c = R.field.div(h.lc(), g.lc());
            q = poly_add(R, q, poly_mul_term(R, poly_one(R), m, c));
            h = poly_sub(R, h, poly_mul_term(R, g, m, c));
        } else {
            r.t.push_back(h.lt());
            h.t.erase(h.t.begin());
        }
    }
    return {std::move(q), std::move(r)};
}

// Exact division; throws if g does not divide f.
template <class F>
Poly<F> poly_exact_div(const Ring<F>& R, const Poly<F>& f, const Poly<F>& g)
{
    auto [q, r] = poly_divmod(R, f, g);
    if (!r.is_zero()) throw std::runtime_error("poly_exact_div: not divisible");
    return q;
}

// Re-sort a polynomial whose terms are canonical under a different order.
template <class F>
Poly<F> poly_reorder(const Ring<F>& dst, const Poly<F>& f)
{
    return poly_normalize(dst, f.t);
}

// Map into a ring with extra trailing variables (exponent 0 on the new ones).
template <class F, class G>
Poly<G> poly_widen(const Ring<G>& dst, const Poly<F>& f)
{
    std::vector<typename Poly<G>::Term> terms;
    for (auto& tm : f.t) {
        Monomial m(dst.vars.size());
        std::copy(tm.m.e.begin(), tm.m.e.end(), m.e.begin());
        terms.push_back({std::move(m), tm.c});
    }
    return poly_normalize(dst, std::move(terms));
}

// Drop trailing variables; caller guarantees they do not occur in f.
template <class F>
Poly<F> poly_narrow(const Ring<F>& dst, const Poly<F>& f)
{
    std::vector<typename Poly<F>::Term> terms;
    for (auto& tm : f.t) {
        Monomial m(dst.vars.size());
        for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = tm.m.e[i];
        terms.push_back({std::move(m), tm.c});
    }
    return poly_normalize(dst, std::move(terms));
}

// true iff f uses only variables from the subset mask
template <class F>
bool poly_supported_on(const Poly<F>& f, const std::vector<bool>& subset)
{
    for (auto& tm : f.t)
        if (!mono_supported_on(tm.m, subset)) return false;
    return true;
}

// Substitute variable v by polynomial g (used for linear coordinate changes).
template <class F>
Poly<F> poly_substitute(const Ring<F>& R, const Poly<F>& f, int v,
                        const Poly<F>& g)
{
    std::map<std::uint32_t, Poly<F>> pow_cache;
    pow_cache[0] = poly_one(R);
    Poly<F> r;
    for (auto& tm : f.t) {
        std::uint32_t e = tm.m.e[v];
        auto it = pow_cache.find(e);
        if (it == pow_cache.end()) {
            Poly<F> p = poly_pow(R, g, e);
            it = pow_cache.emplace(e, std::move(p)).first;
        }
        Monomial rest = tm.m;
        rest.e[v] = 0;
        r = poly_add(R, r, poly_mul_term(R, it->second, rest, tm.c));
    }
    return r;
}

template <class F>
std::uint64_t poly_total_degree(const Poly<F>& f)
{
    std::uint64_t d = 0;
    for (auto& tm : f.t) d = std::max(d, tm.m.degree());
    return d;
}

template <class F>
std::uint32_t poly_degree_in(const Poly<F>& f, int v)
{
    std::uint32_t d = 0;
    for (auto& tm : f.t) d = std::max(d, tm.m.e[v]);
    return d;
}

using QPoly = Poly<RatField>;
using PPoly = Poly<FpField>;

// --- coefficient maps between QQ and F_p -----------------------------------

// Canonical projection of a rational coefficient; requires p to not divide
// the denominator.
inline std::uint64_t rat_mod_p(const mpq_class& a, std::uint64_t p)
{
    mpz_class den = a.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), p))
        throw NotWeakPermissible(p, "prime divides a denominator");
    mpz_class num = a.get_num();
    std::uint64_t n = mpz_fdiv_ui(num.get_mpz_t(), p);
    std::uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
    return fp::mul(n, fp::inv(d, p), p);
}

inline PPoly reduce_mod_p(const PRing& Rp, const QPoly& f)
{
    std::vector<PPoly::Term> terms;
    for (auto& tm : f.t) {
        std::uint64_t c = rat_mod_p(tm.c, Rp.field.p);
        if (c) terms.push_back({tm.m, c});
    }
    return poly_normalize(Rp, std::move(terms));
}

// max of a^2 + b^2 over all coefficients a/b
inline mpz_class coeff_norm(const std::vector<QPoly>& G)
{
    mpz_class best = 0;
    for (auto& f : G)
        for (auto& tm : f.t) {
            mpz_class a = tm.c.get_num(), b = tm.c.get_den();
            mpz_class v = a * a + b * b;
            if (v > best) best = v;
        }
    return best;
}

}  // namespace moddiq

#endif
