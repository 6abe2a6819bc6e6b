#ifndef MODDIQ_GROEBNER_HPP
#define MODDIQ_GROEBNER_HPP

#include <cassert>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

#include <moddiq/budget.hpp>
#include <moddiq/poly.hpp>

namespace moddiq {

// When set, every basis computed by buchberger() is re-checked with
// is_groebner() before being returned (used by the test suites).
inline bool gb_certify = false;

// Full division remainder: no term of the result is divisible by any lm of G.
// Deterministic: always reduce by the first divisor in list order.
template <class F>
Poly<F> normal_form(const Ring<F>& R, const Poly<F>& f,
                    const std::vector<Poly<F>>& G)
{
    Poly<F> r, h = f;
    while (!h.is_zero()) {
        budget::check();
        bool reduced = false;
        for (const auto& g : G) {
            if (g.is_zero()) continue;
            if (mono_divides(g.lm(), h.lm())) {
                Monomial m = mono_div(h.lm(), g.lm());
                auto c = R.field.div(h.lc(), g.lc());
                h = poly_sub(R, h, poly_mul_term(R, g, m, c));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            r.t.push_back(h.lt());
            h.t.erase(h.t.begin());
        }
    }
    return r;
}

template <class F>
Poly<F> s_poly(const Ring<F>& R, const Poly<F>& f, const Poly<F>& g)
{
    Monomial L = mono_lcm(f.lm(), g.lm());
    Poly<F> a = poly_mul_term(R, f, mono_div(L, f.lm()), R.field.inv(f.lc()));
    Poly<F> b = poly_mul_term(R, g, mono_div(L, g.lm()), R.field.inv(g.lc()));
    return poly_sub(R, a, b);
}

// Reduced Groebner basis via Buchberger with the coprime-lt and chain
// criteria; normal degree selection strategy, deterministic tie-breaks.
template <class F>
std::vector<Poly<F>> buchberger(const Ring<F>& R, const std::vector<Poly<F>>& gens)
{
    std::vector<Poly<F>> G;
    for (const auto& f : gens)
        if (!f.is_zero()) G.push_back(poly_monic(R, f));
    if (G.empty()) return G;

    struct Pair {
        Monomial lcm;
        std::uint64_t deg;
        int i, j;
    };
    std::vector<Pair> pending;
    std::set<std::pair<int, int>> handled;
    auto push_pairs = [&](int j) {
        for (int i = 0; i < j; ++i)
            if (!G[i].is_zero()) {
                Monomial L = mono_lcm(G[i].lm(), G[j].lm());
                pending.push_back({L, L.degree(), i, j});
            }
    };
    for (int j = 1; j < static_cast<int>(G.size()); ++j) push_pairs(j);

    while (!pending.empty()) {
        budget::check();
        // normal strategy: smallest lcm degree, then order, then indices
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k) {
            const Pair &a = pending[k], &b = pending[best];
            if (a.deg != b.deg) {
                if (a.deg < b.deg) best = k;
                continue;
            }
            int c = R.order.cmp(a.lcm, b.lcm);
            if (c < 0 || (c == 0 && std::tie(a.i, a.j) < std::tie(b.i, b.j)))
                best = k;
        }
        Pair pr = pending[best];
        pending.erase(pending.begin() + best);
        handled.insert({pr.i, pr.j});

        if (mono_coprime(G[pr.i].lm(), G[pr.j].lm())) continue;
        // chain criterion
        bool skip = false;
        for (int k = 0; k < static_cast<int>(G.size()) && !skip; ++k) {
            if (k == pr.i || k == pr.j || G[k].is_zero()) continue;
            if (!mono_divides(G[k].lm(), pr.lcm)) continue;
            auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (handled.count(key(pr.i, k)) && handled.count(key(pr.j, k)))
                skip = true;
        }
        if (skip) continue;

        Poly<F> r = normal_form(R, s_poly(R, G[pr.i], G[pr.j]), G);
        if (!r.is_zero()) {
            G.push_back(poly_monic(R, r));
            push_pairs(static_cast<int>(G.size()) - 1);
        }
    }

    // minimalize: drop g whose lm is divisible by another kept lm
    std::vector<bool> keep(G.size(), true);
    for (std::size_t i = 0; i < G.size(); ++i) {
        for (std::size_t j = 0; j < G.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            if (mono_divides(G[j].lm(), G[i].lm()) &&
                (G[j].lm() != G[i].lm() || j < i))
                keep[i] = false;
        }
    }
    std::vector<Poly<F>> M;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (keep[i]) M.push_back(G[i]);

    // tail-reduce each element against the others
    for (std::size_t i = 0; i < M.size(); ++i) {
        std::vector<Poly<F>> others;
        for (std::size_t j = 0; j < M.size(); ++j)
            if (j != i) others.push_back(M[j]);
        M[i] = poly_monic(R, normal_form(R, M[i], others));
    }

    std::sort(M.begin(), M.end(), [&R](const Poly<F>& a, const Poly<F>& b) {
        return R.order.cmp(a.lm(), b.lm()) > 0;
    });

    if (gb_certify) assert(is_groebner(R, M));
    return M;
}

// All S-polynomials reduce to zero (coprime criterion applied, which is sound).
template <class F>
bool is_groebner(const Ring<F>& R, const std::vector<Poly<F>>& G)
{
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j) {
            if (G[i].is_zero() || G[j].is_zero()) return false;
            if (mono_coprime(G[i].lm(), G[j].lm())) continue;
            if (!normal_form(R, s_poly(R, G[i], G[j]), G).is_zero())
                return false;
        }
    return true;
}

// Structural reducedness plus the S-polynomial check.
template <class F>
bool is_reduced_gb(const Ring<F>& R, const std::vector<Poly<F>>& G)
{
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (G[i].is_zero() || !R.field.is_one(G[i].lc())) return false;
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j) continue;
            if (G[i].lm() == G[j].lm()) return false;
            for (const auto& tm : G[i].t)
                if (mono_divides(G[j].lm(), tm.m)) return false;
        }
    }
    return is_groebner(R, G);
}

// --- Ideal with per-order GB cache -----------------------------------------

template <class F>
struct Ideal {
    Ring<F> ring;
    std::vector<Poly<F>> gens;

    struct Cache {
        std::mutex mtx;
        std::map<std::string, std::vector<Poly<F>>> by_order;
    };
    std::shared_ptr<Cache> cache = std::make_shared<Cache>();

    Ideal() = default;
    Ideal(Ring<F> r, std::vector<Poly<F>> g)
        : ring(std::move(r)), gens(std::move(g)) {}
};

using QIdeal = Ideal<RatField>;
using PIdeal = Ideal<FpField>;

template <class F>
const std::vector<Poly<F>>& groebner_basis(const Ideal<F>& I,
                                           const MonomialOrder& ord)
{
    std::string key = ord.signature();
    {
        std::lock_guard<std::mutex> lk(I.cache->mtx);
        auto it = I.cache->by_order.find(key);
        if (it != I.cache->by_order.end()) return it->second;
    }
    Ring<F> R = I.ring.with_order(ord);
    std::vector<Poly<F>> gens;
    for (const auto& g : I.gens) gens.push_back(poly_reorder(R, g));
    std::vector<Poly<F>> gb = buchberger(R, gens);
    std::lock_guard<std::mutex> lk(I.cache->mtx);
    auto [it, inserted] = I.cache->by_order.emplace(key, std::move(gb));
    (void)inserted;
    return it->second;
}

template <class F>
const std::vector<Poly<F>>& groebner_basis(const Ideal<F>& I)
{
    return groebner_basis(I, I.ring.order);
}

template <class F>
bool is_unit_ideal(const Ideal<F>& I)
{
    const auto& G = groebner_basis(I);
    return G.size() == 1 && G[0].lm().is_one();
}

template <class F>
bool is_zero_ideal(const Ideal<F>& I)
{
    return groebner_basis(I).empty();
}

// Equality as ideals: identical reduced GBs under the active order.
template <class F>
bool ideal_equal(const Ideal<F>& I, const Ideal<F>& J)
{
    return groebner_basis(I) == groebner_basis(J);
}

// Elimination: generators of I intersected with K[X \ drop].
template <class F>
Ideal<F> eliminate(const Ideal<F>& I, const std::vector<int>& drop)
{
    if (drop.empty()) return I;
    Ring<F> Re = I.ring.with_order(I.ring.order.eliminating(drop, I.ring.nvars()));
    std::vector<Poly<F>> gens;
    for (const auto& g : I.gens) gens.push_back(poly_reorder(Re, g));
    std::vector<Poly<F>> gb = buchberger(Re, gens);
    std::vector<bool> dropped(I.ring.nvars(), false);
    for (int v : drop) dropped[v] = true;
    std::vector<Poly<F>> kept;
    for (const auto& g : gb) {
        bool free_of_drop = true;
        for (const auto& tm : g.t)
            for (int v : drop)
                if (tm.m.e[v]) { free_of_drop = false; break; }
        if (free_of_drop) kept.push_back(poly_reorder(I.ring, g));
    }
    return Ideal<F>(I.ring, std::move(kept));
}

// Krull dimension and all maximal independent sets, combinatorially from the
// leading-term ideal of the GB under the active order.  Arity capped at 16.
template <class F>
std::pair<int, std::vector<std::vector<int>>> dimension_and_mis(const Ideal<F>& I)
{
    int n = I.ring.nvars();
    if (n > 16) throw std::runtime_error("dimension_and_mis: arity cap (16) exceeded");
    if (is_unit_ideal(I)) throw UnitIdeal("dimension of the unit ideal is undefined");
    const auto& G = groebner_basis(I);
    std::vector<Monomial> lts;
    for (const auto& g : G) lts.push_back(g.lm());

    auto independent = [&](unsigned mask) {
        std::vector<bool> sub(n, false);
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) sub[v] = true;
        for (const auto& m : lts)
            if (mono_supported_on(m, sub)) return false;
        return true;
    };

    std::vector<bool> indep(1u << n);
    int dim = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        indep[mask] = independent(mask);
        if (indep[mask]) dim = std::max(dim, __builtin_popcount(mask));
    }
    std::vector<std::vector<int>> mis;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (!indep[mask]) continue;
        bool maximal = true;
        for (int v = 0; v < n && maximal; ++v)
            if (!(mask & (1u << v)) && indep[mask | (1u << v)]) maximal = false;
        if (maximal) {
            std::vector<int> U;
            for (int v = 0; v < n; ++v)
                if (mask & (1u << v)) U.push_back(v);
            mis.push_back(std::move(U));
        }
    }
    std::sort(mis.begin(), mis.end());
    return {dim, mis};
}

}  // namespace moddiq

#endif
