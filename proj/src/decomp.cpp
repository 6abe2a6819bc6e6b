#include <moddiq/decomp.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

namespace moddiq {

namespace {

// ---- associated primes over F_p (contraction + eliminant splitting) ----

struct AssCtx {
    const PRing* R = nullptr;
    std::uint64_t p = 0;
    std::mt19937_64 rng;
    int depth_cap = 8;
    bool complete = true;
    std::vector<PIdeal> out;
};

void emit_prime(AssCtx& ctx, const PIdeal& P)
{
    PIdeal C = canonicalize(P);
    for (const auto& Q : ctx.out)
        if (ideal_equal(Q, C)) return;
    ctx.out.push_back(std::move(C));
}

std::vector<int> outer_vars(int n, const std::vector<int>& U)
{
    std::vector<bool> in_U(n, false);
    for (int v : U) in_U[v] = true;
    std::vector<int> outer;
    for (int v = 0; v < n; ++v)
        if (!in_U[v]) outer.push_back(v);
    return outer;
}

// number of standard monomials of B over K(U), from the outer parts of the
// leading monomials under the (X\U)-first block order; -1 when not finite
long staircase_dim(AssCtx& ctx, const PIdeal& B, const std::vector<int>& U)
{
    const PRing& R = *ctx.R;
    int n = R.nvars();
    std::vector<int> outer = outer_vars(n, U);
    MonomialOrder ord = R.order.eliminating(outer, n);
    const auto& G = groebner_basis(B, ord);

    std::vector<Monomial> olms;
    for (const auto& g : G) {
        Monomial o(n);
        for (int v : outer) o.e[v] = g.lm().e[v];
        if (o.degree() == 0) return -1;  // B meets K[U]: not a contraction
        olms.push_back(std::move(o));
    }

    std::vector<long> bound(outer.size(), -1);
    for (const auto& o : olms) {
        int nz = -1;
        bool pure = true;
        for (std::size_t k = 0; k < outer.size(); ++k) {
            if (!o.e[outer[k]]) continue;
            if (nz >= 0) { pure = false; break; }
            nz = static_cast<int>(k);
        }
        if (pure && nz >= 0) {
            long e = o.e[outer[nz]];
            if (bound[nz] < 0 || e < bound[nz]) bound[nz] = e;
        }
    }
    long total = 1;
    for (long b : bound) {
        if (b < 0) return -1;  // no pure power: infinite over K(U)
        total *= b;
        if (total > 200000) return -1;
    }

    long count = 0;
    std::vector<long> e(outer.size(), 0);
    for (long idx = 0; idx < total; ++idx) {
        long t = idx;
        for (std::size_t k = 0; k < outer.size(); ++k) {
            e[k] = t % bound[k];
            t /= bound[k];
        }
        bool standard = true;
        for (const auto& o : olms) {
            bool div = true;
            for (std::size_t k = 0; k < outer.size(); ++k)
                if (static_cast<long>(o.e[outer[k]]) > e[k]) { div = false; break; }
            if (div) { standard = false; break; }
        }
        if (standard) ++count;
    }
    return count;
}

void ass_rec(AssCtx& ctx, const PIdeal& I, int depth);

// B is a contraction w.r.t. U (no component meets K[U] \ {0})
void decompose_contracted(AssCtx& ctx, const PIdeal& B, const std::vector<int>& U,
                          int depth)
{
    budget::check();
    if (depth > ctx.depth_cap) { ctx.complete = false; return; }
    if (is_unit_ideal(B)) return;
    if (is_zero_ideal(B)) { emit_prime(ctx, B); return; }

    const PRing& R = *ctx.R;
    int n = R.nvars();
    std::vector<int> outer = outer_vars(n, U);
    if (outer.empty()) { ctx.complete = false; return; }

    // per outer direction: a minimal-degree eliminant and its factorization
    std::vector<PPoly> eliminant(outer.size());
    for (std::size_t k = 0; k < outer.size(); ++k) {
        int j = outer[k];
        std::vector<int> drop;
        for (int v : outer)
            if (v != j) drop.push_back(v);
        PIdeal E = eliminate(B, drop);
        const PPoly* best = nullptr;
        for (const auto& g : E.gens) {
            if (!poly_degree_in(g, j)) continue;
            if (!best || poly_degree_in(g, j) < poly_degree_in(*best, j)) best = &g;
        }
        if (!best) { ctx.complete = false; return; }
        PPoly g = *best;

        auto facs = factor_fp(R, g, ctx.rng());
        std::vector<PPoly> split;
        for (const auto& [f, mult] : facs) {
            (void)mult;
            if (poly_degree_in(f, j)) split.push_back(f);
        }
        if (split.size() >= 2) {
            for (const auto& f : split) {
                PIdeal Bi = contract_to_mis(ideal_sum(B, PIdeal(R, {f})), U).ideal;
                if (!is_unit_ideal(Bi)) decompose_contracted(ctx, Bi, U, depth + 1);
            }
            return;
        }
        const PPoly& f = split.front();
        if (!contains_poly(B, f)) {
            // radicalize this direction and retry
            PIdeal Bi = contract_to_mis(ideal_sum(B, PIdeal(R, {f})), U).ideal;
            decompose_contracted(ctx, Bi, U, depth + 1);
            return;
        }
        eliminant[k] = f;
    }

    // every direction has an irreducible minimal polynomial lying in B;
    // B is prime when some K(U)[x_j]/(f_j) already fills the whole quotient
    long sdim = staircase_dim(ctx, B, U);
    if (sdim >= 0) {
        for (std::size_t k = 0; k < outer.size(); ++k)
            if (sdim == static_cast<long>(poly_degree_in(eliminant[k], outer[k]))) {
                emit_prime(ctx, B);
                return;
            }
    }

    // not provably prime in these coordinates: try linear coordinate changes
    if (outer.size() >= 2) {
        for (int attempt = 0; attempt < 5; ++attempt) {
            std::uniform_int_distribution<std::size_t> pick(0, outer.size() - 1);
            std::size_t ka = pick(ctx.rng), kb = pick(ctx.rng);
            if (ka == kb) continue;
            int a = outer[ka], b = outer[kb];
            std::uniform_int_distribution<std::uint64_t> coef(1, ctx.p - 1);
            std::uint64_t c = coef(ctx.rng);

            PPoly fwd = poly_add(R, poly_var(R, a),
                                 poly_scale(R, poly_var(R, b), c));
            PPoly bwd = poly_sub(R, poly_var(R, a),
                                 poly_scale(R, poly_var(R, b), c));

            std::vector<PPoly> gens;
            for (const auto& g : B.gens) gens.push_back(poly_substitute(R, g, a, fwd));
            PIdeal Bt = contract_to_mis(PIdeal(R, std::move(gens)), U).ideal;

            AssCtx sub;
            sub.R = ctx.R;
            sub.p = ctx.p;
            sub.rng.seed(ctx.rng());
            sub.depth_cap = ctx.depth_cap;
            decompose_contracted(sub, Bt, U, depth + 1);
            if (!sub.complete) continue;
            for (const auto& P : sub.out) {
                std::vector<PPoly> back;
                for (const auto& g : P.gens)
                    back.push_back(poly_substitute(R, g, a, bwd));
                emit_prime(ctx, PIdeal(R, std::move(back)));
            }
            return;
        }
    }
    ctx.complete = false;
}

void ass_rec(AssCtx& ctx, const PIdeal& I, int depth)
{
    budget::check();
    if (depth > ctx.depth_cap) { ctx.complete = false; return; }
    if (is_unit_ideal(I)) return;
    if (is_zero_ideal(I)) { emit_prime(ctx, I); return; }

    auto [dim, mis] = dimension_and_mis(I);
    (void)dim;
    const std::vector<int>& U = mis.front();
    auto C = contract_to_mis(I, U);
    decompose_contracted(ctx, C.ideal, U, depth);
    if (C.sat_exponent >= 1) {
        PPoly hs = poly_pow(*ctx.R, C.h,
                            static_cast<unsigned>(C.sat_exponent));
        ass_rec(ctx, ideal_sum(I, PIdeal(*ctx.R, {hs})), depth + 1);
    }
}

}  // namespace

FpAssResult associated_primes_fp(const PIdeal& I, std::uint64_t seed, int depth_cap)
{
    AssCtx ctx;
    ctx.R = &I.ring;
    ctx.p = I.ring.field.p;
    ctx.rng.seed(seed);
    ctx.depth_cap = depth_cap;
    ass_rec(ctx, canonicalize(I), 0);

    FpAssResult res;
    res.complete = ctx.complete;
    for (const auto& P : ctx.out) {
        // keep only genuine prime divisors: P must absorb (I : (I : P))
        if (!contains(P, quotient(I, quotient(I, P)))) continue;
        res.primes.push_back(P);
        if (is_zero_ideal(P)) {
            std::vector<int> all(I.ring.nvars());
            for (int v = 0; v < I.ring.nvars(); ++v) all[v] = v;
            res.mis.push_back(std::move(all));
        } else {
            res.mis.push_back(dimension_and_mis(P).second.front());
        }
    }
    return res;
}

PIdeal radical_fp(const PIdeal& I, std::uint64_t seed)
{
    FpAssResult ass = associated_primes_fp(I, seed);
    if (!ass.complete)
        throw RadicalUnavailable("radical_fp: associated prime search incomplete");
    if (ass.primes.empty()) return unit_ideal(I.ring);
    PIdeal acc = ass.primes.front();
    for (std::size_t i = 1; i < ass.primes.size(); ++i)
        acc = intersect(acc, ass.primes[i]);
    return canonicalize(acc);
}

std::map<std::vector<int>, std::vector<PIdeal>> group_by_mis(const FpAssResult& res)
{
    std::map<std::vector<int>, std::vector<PIdeal>> groups;
    for (std::size_t i = 0; i < res.primes.size(); ++i)
        groups[res.mis[i]].push_back(res.primes[i]);
    return groups;
}

RadicalLift lift_radical_group(const QIdeal& I, const std::vector<int>& U,
                               const std::vector<PrimeRecord>& records,
                               bool group_is_single_prime)
{
    const QRing& R = I.ring;
    RadicalLift lift;
    lift.single_prime = group_is_single_prime;

    auto survivors = delete_unlucky(records);
    for (const auto& r : survivors) lift.primes.push_back(r.p);
    LiftCandidate cand = crt_lift(R, survivors);
    if (!reconstruct_basis(R, cand)) return lift;
    lift.reconstructed = true;
    lift.lifted = QIdeal(R, cand.rational_basis);

    // anchor: the candidate must map back onto a surviving prime's basis
    bool anchored = false;
    for (const auto& r : survivors) {
        try {
            PRing Rp{R.vars, R.order, FpField(r.p)};
            std::vector<PPoly> Hp;
            for (const auto& h : cand.rational_basis)
                Hp.push_back(reduce_mod_p(Rp, h));
            if (Hp == r.result) { anchored = true; break; }
        } catch (const NotWeakPermissible&) {
        }
    }
    if (!anchored) return lift;

    // group certificate: H contains I (every prime of a group lies over I),
    // U stays independent for H, and the modular images are radical by
    // construction; H = (I:(I:H)) is checked separately below
    std::vector<bool> in_U(R.nvars(), false);
    for (int v : U) in_U[v] = true;
    bool rad = contains(lift.lifted, I);
    if (rad)
        for (const auto& g : groebner_basis(lift.lifted))
            if (mono_supported_on(g.lm(), in_U)) { rad = false; break; }
    lift.radical_certified = rad;
    if (!rad) return lift;

    lift.ass_certified = ass_subset_check(I, lift.lifted);
    lift.prime_certified = group_is_single_prime && lift.ass_certified &&
                           is_reduced_gb(R, cand.rational_basis);
    return lift;
}

namespace {

struct PerPrime {
    std::uint64_t p = 0;
    std::map<std::vector<int>, std::vector<PPoly>> groups;  // U -> reduced GB
    std::map<std::vector<int>, int> sizes;                  // U -> #primes
    std::string sig;
};

std::string partition_signature(const PerPrime& pp)
{
    std::string s;
    for (const auto& [U, gb] : pp.groups) {
        s += '[';
        for (std::size_t i = 0; i < U.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(U[i]);
        }
        s += "]:";
        s += lm_signature(gb);
        s += '|';
    }
    return s;
}

std::string hash_hex(const std::string& s)
{
    char buf[2 * sizeof(std::size_t) + 1];
    std::snprintf(buf, sizeof buf, "%0*zx", (int)(2 * sizeof(std::size_t)),
                  std::hash<std::string>{}(s));
    return buf;
}

}  // namespace

IntermediateDecomposition intermediate_decomposition(const QIdeal& I,
                                                     const ModularRunConfig& cfg)
{
    const QRing& R = I.ring;
    if (is_unit_ideal(I))
        throw UnitIdeal("intermediate_decomposition: unit ideal");
    const std::vector<QPoly>& F = groebner_basis(I);
    int dim = is_zero_ideal(I) ? R.nvars() : dimension_and_mis(I).first;

    std::string joined;
    for (const auto& f : F) joined += to_string(R, f) + ";";

    PrimeSource src(cfg);
    std::vector<PerPrime> pool;
    IntermediateDecomposition best;
    int want = std::max(1, cfg.initial_primes);

    for (int round = 1; round <= cfg.max_rounds; ++round) {
        for (int i = 0; i < want; ++i) {
            std::uint64_t p = src.next({&F}, {&F});
            if (!classify_prime(p, R, F).effectively_lucky) continue;
            PRing Rp{R.vars, R.order, FpField(p)};
            std::vector<PPoly> Fp;
            for (const auto& f : F) Fp.push_back(reduce_mod_p(Rp, f));
            FpAssResult ass = associated_primes_fp(PIdeal(Rp, Fp), cfg.seed ^ p);
            if (!ass.complete || ass.primes.empty()) continue;

            PerPrime pp;
            pp.p = p;
            for (auto& [U, primes] : group_by_mis(ass)) {
                PIdeal acc = primes.front();
                for (std::size_t k = 1; k < primes.size(); ++k)
                    acc = intersect(acc, primes[k]);
                pp.groups[U] = groebner_basis(acc);
                pp.sizes[U] = static_cast<int>(primes.size());
            }
            pp.sig = partition_signature(pp);
            pool.push_back(std::move(pp));
        }
        want *= 2;
        if (pool.empty()) continue;

        // vote on the whole partition (set of MIS groups plus their shapes)
        std::map<std::string, int> votes;
        for (const auto& pp : pool) ++votes[pp.sig];
        std::string winner;
        int most = 0;
        for (const auto& [sig, n] : votes)
            if (n > most) { most = n; winner = sig; }
        std::vector<const PerPrime*> kept;
        for (const auto& pp : pool)
            if (pp.sig == winner) kept.push_back(&pp);

        IntermediateDecomposition cur;
        for (const auto* pp : kept) cur.primes_used.push_back(pp->p);

        bool lifts_ok = true;
        for (const auto& [U, gb] : kept.front()->groups) {
            std::vector<PrimeRecord> records;
            bool single = true;
            for (const auto* pp : kept) {
                PrimeRecord rec;
                rec.p = pp->p;
                rec.weak_permissible = rec.permissible = rec.effectively_lucky = true;
                rec.result = pp->groups.at(U);
                rec.has_result = true;
                records.push_back(std::move(rec));
                if (pp->sizes.at(U) != 1) single = false;
            }
            RadicalLift lift = lift_radical_group(I, U, records, single);
            if (!lift.reconstructed || !lift.radical_certified || !lift.ass_certified) {
                lifts_ok = false;
                break;
            }
            cur.lifts.emplace(U, std::move(lift));
        }
        if (!lifts_ok) continue;

        bool comp_ok = true;
        for (const auto& [U, lift] : cur.lifts) {
            try {
                ComponentResult c =
                    static_cast<int>(U.size()) == dim
                        ? isolated_component(I, lift.lifted)
                        : component_from_power(I, lift.lifted);
                if (!c.certified) { comp_ok = false; break; }
                cur.components.emplace(U, std::move(c));
            } catch (const std::exception&) {
                comp_ok = false;
                break;
            }
        }
        if (!comp_ok || cur.components.empty()) {
            best = std::move(cur);
            continue;
        }

        QIdeal cover = cur.components.begin()->second.component;
        for (auto it = std::next(cur.components.begin());
             it != cur.components.end(); ++it)
            cover = intersect(cover, it->second.component);
        cur.certified_cover = ideal_equal(cover, I);

        nlohmann::json rep;
        rep["input_hash"] = hash_hex(joined);
        rep["primes_used"] = cur.primes_used;
        rep["cover_verified"] = cur.certified_cover;
        rep["groups"] = nlohmann::json::array();
        for (const auto& [U, lift] : cur.lifts) {
            nlohmann::json g;
            g["U"] = U;
            g["modular_primes"] = lift.primes;
            nlohmann::json basis = nlohmann::json::array();
            for (const auto& h : groebner_basis(lift.lifted))
                basis.push_back(to_string(R, h));
            g["lifted_basis"] = std::move(basis);
            const auto& c = cur.components.at(U);
            g["certification"] = {{"radical", lift.radical_certified},
                                  {"ass_subset", lift.ass_certified},
                                  {"primary", c.certified}};
            g["component_exponent"] = c.exponent_used;
            rep["groups"].push_back(std::move(g));
        }
        cur.report_json = rep.dump(2);

        if (cur.certified_cover) return cur;
        best = std::move(cur);
    }
    return best;
}

}  // namespace moddiq
