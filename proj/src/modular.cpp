#include <moddiq/modular.hpp>

#include <chrono>
#include <exception>
#include <mutex>
#include <ostream>

#include <json.hpp>

#ifdef MODDIQ_HAVE_OPENMP
#include <omp.h>
#endif

namespace moddiq {

namespace {

bool divides_any_denominator(std::uint64_t p, const std::vector<QPoly>& set)
{
    for (const auto& f : set)
        for (const auto& tm : f.t)
            if (mpz_fdiv_ui(tm.c.get_den().get_mpz_t(), p) == 0) return true;
    return false;
}

bool kills_a_leading_coeff(std::uint64_t p, const std::vector<QPoly>& set)
{
    for (const auto& f : set) {
        if (f.is_zero()) continue;
        if (mpz_fdiv_ui(f.lc().get_num().get_mpz_t(), p) == 0) return true;
    }
    return false;
}

PRing fp_ring(const QRing& R, std::uint64_t p)
{
    return PRing{R.vars, R.order, FpField(p)};
}

std::optional<std::vector<PPoly>> try_reduce_set(const PRing& Rp,
                                                 const std::vector<QPoly>& set)
{
    std::vector<PPoly> out;
    try {
        for (const auto& f : set) {
            PPoly g = reduce_mod_p(Rp, f);
            if (!g.is_zero()) out.push_back(std::move(g));
        }
    } catch (const NotWeakPermissible&) {
        return std::nullopt;
    }
    return out;
}

// Full monomial-support signature; the re-vote key when leading monomials
// agree but supports do not.
std::string support_signature(const std::vector<PPoly>& G)
{
    std::string s;
    for (const auto& g : G) {
        if (!s.empty()) s += '|';
        for (std::size_t t = 0; t < g.t.size(); ++t) {
            if (t) s += ';';
            for (std::size_t i = 0; i < g.t[t].m.arity(); ++i) {
                if (i) s += ',';
                s += std::to_string(g.t[t].m.e[i]);
            }
        }
    }
    return s;
}

template <class Key>
std::vector<PrimeRecord> majority_by(std::vector<PrimeRecord> records, Key key)
{
    std::map<std::string, int> votes;
    for (const auto& r : records)
        if (r.has_result) ++votes[key(r)];
    if (votes.empty()) return {};
    std::string winner;
    int best = -1;
    for (const auto& [sig, n] : votes)
        if (n > best) { winner = sig; best = n; }  // map order breaks ties
    std::vector<PrimeRecord> kept;
    for (auto& r : records)
        if (r.has_result && key(r) == winner) kept.push_back(std::move(r));
    return kept;
}

}  // namespace

PrimeSource::PrimeSource(const ModularRunConfig& cfg) : rng_(cfg.seed)
{
    int bits = cfg.prime_bits;
    if (bits < 2 || bits > 62) bits = 31;
    lo_ = 1ull << (bits - 1);
    hi_ = 1ull << bits;
}

std::uint64_t PrimeSource::next(const std::vector<const std::vector<QPoly>*>& inputs,
                                const std::vector<const std::vector<QPoly>*>& gb_inputs)
{
    for (int tries = 0; tries < 200000; ++tries) {
        std::uint64_t cand = lo_ + rng_() % (hi_ - lo_);
        cand |= 1;
        if (!fp::is_prime(cand) || used_.count(cand)) continue;
        bool ok = true;
        for (const auto* set : inputs)
            if (divides_any_denominator(cand, *set)) { ok = false; break; }
        for (const auto* set : gb_inputs) {
            if (!ok) break;
            if (divides_any_denominator(cand, *set) ||
                kills_a_leading_coeff(cand, *set))
                ok = false;
        }
        if (!ok) continue;
        used_.insert(cand);
        return cand;
    }
    throw ModularFailure("choose_primes", 0, "prime source exhausted");
}

std::vector<PrimeRecord> choose_primes(const ModularRunConfig& cfg, int count,
                                       const std::vector<const std::vector<QPoly>*>& inputs,
                                       const std::vector<const std::vector<QPoly>*>& gb_inputs)
{
    PrimeSource src(cfg);
    std::vector<PrimeRecord> out;
    for (int i = 0; i < count; ++i) {
        PrimeRecord rec;
        rec.p = src.next(inputs, gb_inputs);
        rec.weak_permissible = true;
        rec.permissible = true;
        out.push_back(std::move(rec));
    }
    return out;
}

PrimeRecord classify_prime(std::uint64_t p, const QRing& R,
                           const std::vector<QPoly>& F)
{
    PrimeRecord rec;
    rec.p = p;
    PRing Rp = fp_ring(R, p);
    auto images = try_reduce_set(Rp, F);
    if (!images) return rec;
    rec.weak_permissible = true;
    if (kills_a_leading_coeff(p, F)) return rec;
    rec.permissible = true;
    rec.effectively_lucky = is_reduced_gb(Rp, *images);
    return rec;
}

std::vector<PrimeRecord> delete_unlucky(std::vector<PrimeRecord> records)
{
    return majority_by(std::move(records),
                       [](const PrimeRecord& r) { return lm_signature(r.result); });
}

LiftCandidate crt_lift(const QRing& R, const std::vector<PrimeRecord>& records)
{
    if (records.empty())
        throw std::logic_error("crt_lift: no records");
    for (const auto& r : records)
        if (!r.has_result || lm_signature(r.result) != lm_signature(records[0].result))
            throw std::logic_error("crt_lift: signature mismatch");

    LiftCandidate cand;
    std::size_t nel = records[0].result.size();
    cand.residue_basis.resize(nel);

    for (std::size_t i = 0; i < nel; ++i) {
        auto& acc = cand.residue_basis[i];
        mpz_class M = 1;
        for (const auto& rec : records) {
            std::uint64_t p = rec.p;
            const PPoly& cur = rec.result[i];
            std::uint64_t Mp = mpz_fdiv_ui(M.get_mpz_t(), p);
            std::uint64_t Minv = fp::inv(Mp, p);
            auto lookup = [&](const Monomial& m) -> std::uint64_t {
                for (const auto& tm : cur.t)
                    if (tm.m == m) return tm.c;
                return 0;
            };
            // lift existing entries, then admit monomials new at this prime
            for (auto& [m, x] : acc) {
                std::uint64_t r = lookup(m);
                std::uint64_t xp = mpz_fdiv_ui(x.get_mpz_t(), p);
                std::uint64_t t = fp::mul(fp::sub(r, xp, p), Minv, p);
                x += M * mpz_class(t);
            }
            for (const auto& tm : cur.t) {
                bool known = false;
                for (const auto& [m, x] : acc)
                    if (m == tm.m) { known = true; break; }
                if (known) continue;
                std::uint64_t t = fp::mul(tm.c, Minv, p);
                acc.push_back({tm.m, M * mpz_class(t)});
            }
            M *= mpz_class(p);
        }
        std::sort(acc.begin(), acc.end(),
                  [&R](const auto& a, const auto& b) {
                      return R.order.cmp(a.first, b.first) > 0;
                  });
        cand.modulus = M;
    }
    if (nel == 0) {
        cand.modulus = 1;
        for (const auto& rec : records) cand.modulus *= mpz_class(rec.p);
    }
    return cand;
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& c, const mpz_class& m)
{
    if (m < 2) return std::nullopt;
    mpz_class r0 = m, r1 = ((c % m) + m) % m;
    mpz_class t0 = 0, t1 = 1;
    while (2 * r1 * r1 > m) {
        if (r1 == 0) return std::nullopt;
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        mpz_class t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0 || 2 * t1 * t1 > m) return std::nullopt;
    mpz_class a = r1, b = t1;
    if (b < 0) { a = -a; b = -b; }
    if (gcd(a, b) != 1) return std::nullopt;
    if (gcd(b, m) != 1) return std::nullopt;
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

bool reconstruct_basis(const QRing& R, LiftCandidate& cand)
{
    std::vector<QPoly> out;
    for (const auto& zp : cand.residue_basis) {
        std::vector<QPoly::Term> terms;
        for (const auto& [m, c] : zp) {
            auto q = rational_reconstruct(c, cand.modulus);
            if (!q) return false;
            if (*q != 0) terms.push_back({m, *q});
        }
        out.push_back(poly_normalize(R, std::move(terms)));
    }
    cand.rational_basis = std::move(out);
    cand.status = LiftStatus::reconstructed;
    return true;
}

std::vector<PrimeRecord> per_prime_run(const QRing& R, const std::vector<QPoly>& F,
                                       const std::vector<QPoly>& G, ModOp op,
                                       const std::vector<std::uint64_t>& primes,
                                       int jobs)
{
    int n = static_cast<int>(primes.size());
    std::vector<PrimeRecord> out(n);
    std::exception_ptr first_error;
    std::mutex err_mtx;
    auto parent_deadline = budget::deadline;

    auto body = [&](int i) {
        budget::Scope scope(parent_deadline);
        auto t0 = std::chrono::steady_clock::now();
        try {
            PrimeRecord rec = classify_prime(primes[i], R, F);
            // permissible primes all compute; the majority vote and the final
            // test sort out the unlucky ones (F need not be a GB over Q)
            if (rec.permissible) {
                PRing Rp = fp_ring(R, rec.p);
                auto Fi = try_reduce_set(Rp, F);
                auto Gi = try_reduce_set(Rp, G);
                if (Fi && Gi) {
                    PIdeal Ip(Rp, std::move(*Fi));
                    PIdeal Jp(Rp, std::move(*Gi));
                    if (op == ModOp::quotient) {
                        rec.result = groebner_basis(quotient(Ip, Jp));
                    } else if (op == ModOp::diq) {
                        rec.result = groebner_basis(quotient(Ip, quotient(Ip, Jp)));
                    } else {
                        auto [S, m] = saturate(Ip, Jp);
                        rec.result = groebner_basis(S);
                        rec.exponent = m;
                    }
                    rec.has_result = true;
                }
            }
            rec.micros = std::chrono::duration_cast<std::chrono::microseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
            out[i] = std::move(rec);
        } catch (...) {
            std::lock_guard<std::mutex> lk(err_mtx);
            if (!first_error) first_error = std::current_exception();
        }
    };

#ifdef MODDIQ_HAVE_OPENMP
    if (jobs != 1) {
        int nt = jobs > 1 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
        for (int i = 0; i < n; ++i) body(i);
    } else {
        for (int i = 0; i < n; ++i) body(i);
    }
#else
    (void)jobs;
    for (int i = 0; i < n; ++i) body(i);
#endif

    if (first_error) std::rethrow_exception(first_error);
    return out;
}

namespace {

const char* op_name(ModOp op)
{
    return op == ModOp::quotient ? "mod_quotient" : "mod_saturate";
}

void log_records(RunLog& log, const std::vector<PrimeRecord>& recs)
{
    for (const auto& r : recs)
        log.push_back({r.p, r.class_name(),
                       r.has_result ? lm_signature(r.result) : std::string(),
                       r.micros});
}

bool product_inside(const QIdeal& I, const std::vector<QPoly>& H,
                    const std::vector<QPoly>& G)
{
    const QRing& R = I.ring;
    for (const auto& h : H)
        for (const auto& g : G)
            if (!contains_poly(I, poly_mul(R, h, g))) return false;
    return true;
}

ModularResult run_modular(const QIdeal& I, const QIdeal& J, ModOp op,
                          const ModularRunConfig& cfg,
                          const std::vector<QPoly>* extra_lucky = nullptr)
{
    if (!I.ring.same_vars(J.ring))
        throw DomainMismatch(std::string(op_name(op)) + ": different rings");
    const QRing& R = I.ring;
    // classify against the raw generators: computing the reduced GB of I
    // over Q up front would cost exactly what the modular route avoids
    std::vector<QPoly> F;
    for (const auto& f : I.gens)
        if (!f.is_zero()) F.push_back(poly_reorder(R, f));
    std::vector<QPoly> G;
    for (const auto& g : J.gens)
        if (!g.is_zero()) G.push_back(poly_reorder(R, g));

    ModularResult res;
    if (G.empty()) {
        // (I : <0>) = <1>; the saturation chain then stabilizes at <1> too
        if (op == ModOp::quotient) {
            res.basis = {poly_one(R)};
        } else {
            auto [S, m] = saturate(I, QIdeal(R, {}));
            res.basis = groebner_basis(S);
            res.exponent = m;
        }
        res.certified = true;
        return res;
    }

    PrimeSource src(cfg);
    std::vector<PrimeRecord> pool;
    int want = std::max(1, cfg.initial_primes);

    for (int round = 1; round <= cfg.max_rounds; ++round) {
        res.rounds = round;
        int need = want - static_cast<int>(pool.size());
        std::vector<const std::vector<QPoly>*> in_sets = {&F, &G};
        std::vector<const std::vector<QPoly>*> gb_sets = {&F};
        if (extra_lucky) {
            in_sets.push_back(extra_lucky);
            gb_sets.push_back(extra_lucky);
        }
        std::vector<std::uint64_t> fresh;
        for (int i = 0; i < std::max(need, 1); ++i)
            fresh.push_back(src.next(in_sets, gb_sets));
        auto recs = per_prime_run(R, F, G, op, fresh, cfg.jobs);
        if (extra_lucky)
            for (auto& r : recs)
                if (r.has_result &&
                    !classify_prime(r.p, R, *extra_lucky).effectively_lucky) {
                    r.has_result = false;
                    r.result.clear();
                }
        log_records(res.log, recs);
        for (auto& r : recs)
            if (r.has_result) pool.push_back(std::move(r));
        want *= 2;
        if (pool.empty()) continue;

        auto survivors = delete_unlucky(pool);
        survivors = majority_by(std::move(survivors), [](const PrimeRecord& r) {
            return support_signature(r.result);
        });
        if (survivors.empty()) continue;

        int trial_m = -1;
        if (op == ModOp::saturate) {
            std::map<int, int> mv;
            for (const auto& r : survivors) ++mv[r.exponent];
            int best = -1;
            for (const auto& [m, cnt] : mv)
                if (cnt > best) { trial_m = m; best = cnt; }
        }

        LiftCandidate cand = crt_lift(R, survivors);
        if (!reconstruct_basis(R, cand)) continue;
        const std::vector<QPoly>& H = cand.rational_basis;

        // probabilistic screen at a fresh prime
        bool screened = false;
        std::uint64_t screen_p = 0;
        for (int attempt = 0; attempt < 5 && !screened; ++attempt) {
            auto in2 = in_sets;
            auto gb2 = gb_sets;
            in2.push_back(&H);
            gb2.push_back(&H);
            std::uint64_t p = src.next(in2, gb2);
            auto check = per_prime_run(R, F, G, op, {p}, 1);
            log_records(res.log, check);
            if (!check[0].has_result) continue;
            if (extra_lucky &&
                !classify_prime(p, R, *extra_lucky).effectively_lucky)
                continue;
            PRing Rp = fp_ring(R, p);
            auto Hi = try_reduce_set(Rp, H);
            if (Hi && *Hi == check[0].result) {
                screened = true;
                screen_p = p;
                pool.push_back(std::move(check[0]));
            }
        }
        if (!screened) continue;
        cand.status = LiftStatus::ptest_passed;

        res.primes_used.clear();
        for (const auto& r : survivors) res.primes_used.push_back(r.p);
        res.primes_used.push_back(screen_p);
        res.exponent = trial_m;

        if (cfg.verify == ModularRunConfig::Verify::ptest_only) {
            res.basis = H;
            res.certified = false;
            return res;
        }

        // final verification against the rational input
        const PrimeRecord* anchor = nullptr;
        for (const auto& r : survivors) {
            if (divides_any_denominator(r.p, H) || kills_a_leading_coeff(r.p, H))
                continue;
            PRing Rp = fp_ring(R, r.p);
            auto Hi = try_reduce_set(Rp, H);
            if (Hi && *Hi == r.result) { anchor = &r; break; }
        }
        if (!anchor) continue;

        bool inside = false;
        if (op == ModOp::quotient) {
            inside = product_inside(I, H, G);
        } else {
            int m0 = std::max(1, trial_m);
            for (int k = 1; k <= 64 && !inside; k *= 2)
                inside = product_inside(I, H, power_bracket(R, G, m0 * k));
        }
        if (!inside) continue;

        bool contains_input = true;
        for (const auto& f : F)
            if (!normal_form(R, f, H).is_zero()) { contains_input = false; break; }
        if (!contains_input) continue;

        cand.status = LiftStatus::certified;
        res.basis = H;
        res.certified = true;
        return res;
    }
    throw ModularFailure(op_name(op), res.rounds,
                         std::string(op_name(op)) + ": round budget exhausted");
}

}  // namespace

ModularResult mod_quotient(const QIdeal& I, const QIdeal& J,
                           const ModularRunConfig& cfg)
{
    return run_modular(I, J, ModOp::quotient, cfg);
}

ModularResult mod_saturate(const QIdeal& I, const QIdeal& J,
                           const ModularRunConfig& cfg)
{
    return run_modular(I, J, ModOp::saturate, cfg);
}

ModularResult mod_quotient_restricted(const QIdeal& I, const QIdeal& J,
                                      const std::vector<QPoly>& lucky_for,
                                      const ModularRunConfig& cfg)
{
    return run_modular(I, J, ModOp::quotient, cfg, &lucky_for);
}

void write_runlog(std::ostream& os, const RunLog& log)
{
    for (const auto& e : log) {
        nlohmann::json j;
        j["prime"] = e.prime;
        j["class"] = e.cls;
        j["sig"] = e.sig;
        j["micros"] = e.micros;
        if (!e.stage.empty()) j["stage"] = e.stage;
        os << j.dump() << "\n";
    }
}

}  // namespace moddiq
