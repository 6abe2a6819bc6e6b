#include <moddiq/factor_fp.hpp>

#include <algorithm>
#include <random>
#include <stdexcept>

#include <gmpxx.h>

#include <moddiq/errors.hpp>
#include <moddiq/fp.hpp>

namespace moddiq {

FpUni uni_trim(FpUni a)
{
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
    return a;
}

FpUni uni_mul(const FpUni& a, const FpUni& b, std::uint64_t p)
{
    if (a.is_zero() || b.is_zero()) return {};
    FpUni r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = fp::add(r.c[i + j], fp::mul(a.c[i], b.c[j], p), p);
    }
    return uni_trim(std::move(r));
}

std::pair<FpUni, FpUni> uni_divmod(const FpUni& a, const FpUni& b, std::uint64_t p)
{
    if (b.is_zero()) throw std::invalid_argument("uni_divmod: division by zero");
    FpUni q, r = a;
    if (a.deg() < b.deg()) return {q, r};
    q.c.assign(a.deg() - b.deg() + 1, 0);
    std::uint64_t inv_lc = fp::inv(b.c.back(), p);
    for (int i = r.deg(); i >= b.deg(); --i) {
        if (r.c[i] == 0) continue;
        std::uint64_t f = fp::mul(r.c[i], inv_lc, p);
        q.c[i - b.deg()] = f;
        for (int j = 0; j <= b.deg(); ++j)
            r.c[i - b.deg() + j] =
                fp::sub(r.c[i - b.deg() + j], fp::mul(f, b.c[j], p), p);
    }
    return {uni_trim(std::move(q)), uni_trim(std::move(r))};
}

FpUni uni_monic(FpUni a, std::uint64_t p)
{
    if (a.is_zero() || a.c.back() == 1) return a;
    std::uint64_t s = fp::inv(a.c.back(), p);
    for (auto& c : a.c) c = fp::mul(c, s, p);
    return a;
}

FpUni uni_gcd(FpUni a, FpUni b, std::uint64_t p)
{
    while (!b.is_zero()) {
        FpUni r = uni_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return uni_monic(std::move(a), p);
}

FpUni uni_derivative(const FpUni& a, std::uint64_t p)
{
    FpUni d;
    for (std::size_t i = 1; i < a.c.size(); ++i)
        d.c.push_back(fp::mul(a.c[i], i % p, p));
    return uni_trim(std::move(d));
}

namespace {

FpUni uni_sub(const FpUni& a, const FpUni& b, std::uint64_t p)
{
    FpUni r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
        std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = fp::sub(x, y, p);
    }
    return uni_trim(std::move(r));
}

FpUni uni_powmod(const FpUni& base, const mpz_class& e, const FpUni& mod,
                 std::uint64_t p)
{
    FpUni result;
    result.c = {1};
    FpUni b = uni_divmod(base, mod, p).second;
    for (long i = mpz_sizeinbase(e.get_mpz_t(), 2) - 1; i >= 0; --i) {
        result = uni_divmod(uni_mul(result, result, p), mod, p).second;
        if (mpz_tstbit(e.get_mpz_t(), i))
            result = uni_divmod(uni_mul(result, b, p), mod, p).second;
    }
    return result;
}

// squarefree decomposition, including p-th power parts
void squarefree_parts(const FpUni& f, std::uint64_t p, int outer_mult,
                      std::vector<std::pair<FpUni, int>>& out)
{
    if (f.deg() < 1) return;
    FpUni d = uni_derivative(f, p);
    if (d.is_zero()) {
        // f = g(x^p); p-th roots of coefficients are themselves in F_p
        FpUni g;
        for (std::size_t i = 0; i * p < f.c.size(); ++i)
            g.c.push_back(f.c[i * p]);
        squarefree_parts(uni_trim(std::move(g)), p,
                         outer_mult * static_cast<int>(p), out);
        return;
    }
    FpUni c = uni_gcd(f, d, p);
    FpUni w = uni_divmod(f, c, p).first;
    int i = 1;
    while (w.deg() >= 1) {
        FpUni y = uni_gcd(w, c, p);
        FpUni z = uni_divmod(w, y, p).first;
        if (z.deg() >= 1) out.push_back({uni_monic(std::move(z), p), i * outer_mult});
        w = std::move(y);
        c = uni_divmod(c, w, p).first;
        ++i;
    }
    if (c.deg() >= 1) squarefree_parts(c, p, outer_mult, out);
}

void equal_degree_split(const FpUni& f, int d, std::uint64_t p,
                        std::mt19937_64& rng, std::vector<FpUni>& out)
{
    if (f.deg() == d) {
        out.push_back(uni_monic(f, p));
        return;
    }
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), p, d);
    mpz_class e = (pd - 1) / 2;
    while (true) {
        FpUni b;
        b.c.resize(f.deg());
        for (auto& c : b.c) c = rng() % p;
        b = uni_trim(std::move(b));
        if (b.deg() < 1) continue;
        FpUni g = uni_gcd(b, f, p);
        if (g.deg() == 0) {
            FpUni c = uni_powmod(b, e, f, p);
            FpUni cm1 = c;
            if (cm1.c.empty()) cm1.c = {p - 1};
            else cm1.c[0] = fp::sub(cm1.c[0], 1, p);
            g = uni_gcd(uni_trim(std::move(cm1)), f, p);
        }
        if (g.deg() > 0 && g.deg() < f.deg()) {
            equal_degree_split(g, d, p, rng, out);
            equal_degree_split(uni_divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FpUni, int>> factor_univariate_fp(const FpUni& f,
                                                        std::uint64_t p,
                                                        std::uint64_t seed)
{
    if (f.is_zero())
        throw std::invalid_argument("factor_univariate_fp: zero polynomial");
    std::vector<std::pair<FpUni, int>> sqf;
    squarefree_parts(uni_monic(f, p), p, 1, sqf);

    std::mt19937_64 rng(seed);
    std::vector<std::pair<FpUni, int>> out;
    for (auto& [part, mult] : sqf) {
        // distinct-degree stage
        FpUni rest = part;
        FpUni h;
        h.c = {0, 1};  // x
        h = uni_divmod(h, rest, p).second;
        int d = 1;
        std::vector<std::pair<FpUni, int>> stages;
        while (rest.deg() >= 2 * d) {
            h = uni_powmod(h, mpz_class(static_cast<unsigned long>(p)), rest, p);
            FpUni x;
            x.c = {0, 1};
            FpUni g = uni_gcd(uni_sub(h, x, p), rest, p);
            if (g.deg() > 0) {
                stages.push_back({g, d});
                rest = uni_divmod(rest, g, p).first;
                h = uni_divmod(h, rest, p).second;
            }
            ++d;
        }
        if (rest.deg() > 0) stages.push_back({rest, rest.deg()});
        for (auto& [prod, dd] : stages) {
            std::vector<FpUni> irr;
            equal_degree_split(prod, dd, p, rng, irr);
            for (auto& g : irr) out.push_back({std::move(g), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
        if (a.first.c != b.first.c) return a.first.c < b.first.c;
        return a.second < b.second;
    });
    return out;
}

FpUni to_uni(const PRing& R, const PPoly& f, int var)
{
    FpUni u;
    for (const auto& tm : f.t) {
        for (int v = 0; v < R.nvars(); ++v)
            if (v != var && tm.m.e[v] != 0)
                throw DomainMismatch("to_uni: polynomial is not univariate");
        std::size_t e = tm.m.e[var];
        if (u.c.size() <= e) u.c.resize(e + 1, 0);
        u.c[e] = tm.c;
    }
    return uni_trim(std::move(u));
}

PPoly from_uni(const PRing& R, const FpUni& u, int var)
{
    std::vector<PPoly::Term> terms;
    for (std::size_t i = 0; i < u.c.size(); ++i) {
        if (!u.c[i]) continue;
        Monomial m(R.nvars());
        m.e[var] = static_cast<std::uint32_t>(i);
        terms.push_back({std::move(m), u.c[i]});
    }
    return poly_normalize(R, std::move(terms));
}

namespace {

// Kronecker packing of the present variables with per-variable radices
struct Packing {
    std::vector<int> vars;
    std::vector<std::uint64_t> radix;
    std::vector<std::uint64_t> weight;
};

FpUni pack(const PRing& R, const PPoly& f, const Packing& pk)
{
    FpUni u;
    for (const auto& tm : f.t) {
        std::uint64_t idx = 0;
        for (std::size_t k = 0; k < pk.vars.size(); ++k)
            idx += tm.m.e[pk.vars[k]] * pk.weight[k];
        if (u.c.size() <= idx) u.c.resize(idx + 1, 0);
        u.c[idx] = fp::add(u.c[idx], tm.c, R.field.p);
    }
    return uni_trim(std::move(u));
}

PPoly unpack(const PRing& R, const FpUni& u, const Packing& pk)
{
    std::vector<PPoly::Term> terms;
    for (std::size_t i = 0; i < u.c.size(); ++i) {
        if (!u.c[i]) continue;
        Monomial m(R.nvars());
        std::uint64_t rest = i;
        for (std::size_t k = 0; k < pk.vars.size(); ++k) {
            m.e[pk.vars[k]] = static_cast<std::uint32_t>(rest % pk.radix[k]);
            rest /= pk.radix[k];
        }
        terms.push_back({std::move(m), u.c[i]});
    }
    return poly_normalize(R, std::move(terms));
}

bool exact_divide(const PRing& R, const PPoly& f, const PPoly& g, PPoly& q)
{
    auto [qq, r] = poly_divmod(R, f, g);
    if (!r.is_zero()) return false;
    q = std::move(qq);
    return true;
}

}  // namespace

std::vector<std::pair<PPoly, int>> factor_fp(const PRing& R, const PPoly& f_in,
                                             std::uint64_t seed)
{
    if (f_in.is_zero())
        throw std::invalid_argument("factor_fp: zero polynomial");
    std::uint64_t p = R.field.p;
    std::vector<std::pair<PPoly, int>> out;

    // monomial content
    PPoly f = f_in;
    Monomial content = f.t[0].m;
    for (const auto& tm : f.t)
        for (int v = 0; v < R.nvars(); ++v)
            content.e[v] = std::min(content.e[v], tm.m.e[v]);
    if (content.degree() > 0) {
        for (auto& tm : f.t) tm.m = mono_div(tm.m, content);
        f = poly_normalize(R, std::vector<PPoly::Term>(f.t));
        for (int v = 0; v < R.nvars(); ++v)
            if (content.e[v]) out.push_back({poly_var(R, v), (int)content.e[v]});
    }

    std::vector<int> present;
    for (int v = 0; v < R.nvars(); ++v)
        if (poly_degree_in(f, v) > 0) present.push_back(v);
    if (present.empty()) return out;

    if (present.size() == 1) {
        int v = present[0];
        for (auto& [u, m] : factor_univariate_fp(to_uni(R, f, v), p, seed))
            out.push_back({from_uni(R, u, v), m});
        return out;
    }

    Packing pk;
    pk.vars = present;
    std::uint64_t total = 1;
    for (int v : present) {
        std::uint64_t r = static_cast<std::uint64_t>(poly_degree_in(f, v)) + 1;
        pk.radix.push_back(r);
        pk.weight.push_back(total);
        total *= r;
        if (total > (1ull << 26))
            throw std::runtime_error("factor_fp: degree product too large");
    }

    FpUni u = pack(R, f, pk);
    // scale f so its top packed coefficient is 1; factor images then
    // recombine without constant mismatches
    std::uint64_t top = u.c.back();
    if (top != 1) {
        std::uint64_t s = fp::inv(top, p);
        f = poly_scale(R, f, s);
        for (auto& c : u.c) c = fp::mul(c, s, p);
    }

    std::vector<FpUni> parts;
    for (auto& [g, m] : factor_univariate_fp(u, p, seed))
        for (int i = 0; i < m; ++i) parts.push_back(g);

    std::vector<std::pair<PPoly, int>> found;
    while (!parts.empty() && poly_total_degree(f) > 0) {
        bool progress = false;
        int m = static_cast<int>(parts.size());
        for (int k = 1; k <= m && !progress; ++k) {
            // all k-subsets of parts, lexicographic over indices
            std::vector<int> idx(k);
            for (int i = 0; i < k; ++i) idx[i] = i;
            while (true) {
                FpUni prod;
                prod.c = {1};
                for (int i : idx) prod = uni_mul(prod, parts[i], p);
                PPoly cand = unpack(R, prod, pk);
                PPoly q;
                if (!cand.is_zero() && poly_total_degree(cand) > 0 &&
                    exact_divide(R, f, cand, q)) {
                    bool merged = false;
                    for (auto& [g, mult] : found)
                        if (g == cand) { ++mult; merged = true; break; }
                    if (!merged) found.push_back({cand, 1});
                    f = std::move(q);
                    for (int i = k - 1; i >= 0; --i)
                        parts.erase(parts.begin() + idx[i]);
                    progress = true;
                    break;
                }
                int i = k - 1;
                while (i >= 0 && idx[i] == m - k + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        if (!progress) break;
    }
    if (poly_total_degree(f) > 0) {
        // enumeration exhausted: the remainder is irreducible
        found.push_back({f, 1});
    }
    for (auto& [g, m] : found) out.push_back({poly_monic(R, g), m});
    std::sort(out.begin(), out.end(), [&R](const auto& a, const auto& b) {
        if (a.first.t.size() != b.first.t.size())
            return a.first.t.size() < b.first.t.size();
        int c = R.order.cmp(a.first.lm(), b.first.lm());
        if (c != 0) return c < 0;
        return a.second < b.second;
    });
    return out;
}

}  // namespace moddiq
