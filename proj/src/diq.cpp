#include <moddiq/diq.hpp>

namespace moddiq {

namespace {

void tag_log(RunLog& log, std::size_t from, const char* stage)
{
    for (std::size_t i = from; i < log.size(); ++i) log[i].stage = stage;
}

void append_log(RunLog& dst, const RunLog& src, const char* stage)
{
    std::size_t at = dst.size();
    dst.insert(dst.end(), src.begin(), src.end());
    tag_log(dst, at, stage);
}

bool product_inside(const QIdeal& I, const std::vector<QPoly>& A,
                    const std::vector<QPoly>& B)
{
    for (const auto& a : A)
        for (const auto& b : B)
            if (!contains_poly(I, poly_mul(I.ring, a, b))) return false;
    return true;
}

}  // namespace

QIdeal diq(const QIdeal& I, const QIdeal& J)
{
    return quotient(I, quotient(I, J));
}

QIdeal diq_sat_variant(const QIdeal& I, const QIdeal& J, DiqVariant v)
{
    switch (v) {
    case DiqVariant::plain:
        return diq(I, J);
    case DiqVariant::inner_sat:
        return quotient(I, saturate(I, J).first);
    case DiqVariant::outer_sat:
        return saturate(I, quotient(I, J)).first;
    case DiqVariant::both_sat:
        return saturate(I, saturate(I, J).first).first;
    }
    throw std::logic_error("diq_sat_variant: bad variant");
}

ModularResult mod_diq(const QIdeal& I, const QIdeal& J,
                      const ModularRunConfig& cfg)
{
    ModularResult out;
    ModularResult stage1;
    try {
        stage1 = mod_quotient(I, J, cfg);
    } catch (ModularFailure& e) {
        throw ModularFailure("diq.stage1", e.rounds_used, e.what());
    }
    append_log(out.log, stage1.log, "diq.stage1");

    QIdeal H(I.ring, stage1.basis);
    ModularResult stage2;
    try {
        stage2 = mod_quotient_restricted(I, H, stage1.basis, cfg);
    } catch (ModularFailure& e) {
        throw ModularFailure("diq.stage2", e.rounds_used, e.what());
    }
    append_log(out.log, stage2.log, "diq.stage2");

    // the stage-2 final test already verified product(K_can, H) inside I
    out.basis = std::move(stage2.basis);
    out.certified = stage1.certified && stage2.certified;
    out.primes_used = stage1.primes_used;
    out.primes_used.insert(out.primes_used.end(), stage2.primes_used.begin(),
                           stage2.primes_used.end());
    out.rounds = std::max(stage1.rounds, stage2.rounds);
    return out;
}

bool is_prime_divisor_direct(const QIdeal& I, const QIdeal& P)
{
    return contains(P, diq(I, P));
}

bool ass_subset_check(const QIdeal& I, const QIdeal& J)
{
    return contains(J, diq(I, J));
}

DivisorVerdict associated_test_modular(const QIdeal& I, const QIdeal& P,
                                       const ModularRunConfig& cfg)
{
    const QRing& R = I.ring;
    std::vector<QPoly> F = groebner_basis(I);
    std::vector<QPoly> G = groebner_basis(P);
    DivisorVerdict v;

    mpz_class bound = 2 * coeff_norm(G);
    PrimeSource src(cfg);
    std::vector<std::uint64_t> survivors;
    mpz_class prod = 1;
    int want = std::max(1, cfg.initial_primes);

    for (int round = 1; round <= cfg.max_rounds; ++round) {
        std::vector<std::uint64_t> fresh;
        for (int i = 0; i < want; ++i)
            fresh.push_back(src.next({&F, &G}, {&F, &G}));
        auto recs = per_prime_run(R, F, G, ModOp::diq, fresh, cfg.jobs);
        std::size_t log_at = v.log.size();
        for (auto& rec : recs) {
            v.log.push_back({rec.p, rec.class_name(),
                             rec.has_result ? lm_signature(rec.result)
                                            : std::string(),
                             rec.micros});
            if (!rec.has_result) continue;
            if (!classify_prime(rec.p, R, G).effectively_lucky) continue;
            PRing Rp{R.vars, R.order, FpField(rec.p)};
            std::vector<PPoly> Gp;
            for (const auto& g : G) Gp.push_back(reduce_mod_p(Rp, g));
            if (rec.result == Gp) {
                survivors.push_back(rec.p);
                prod *= mpz_class(rec.p);
            }
        }
        tag_log(v.log, log_at, "asstest");
        want *= 2;
        if (prod <= bound) continue;

        ModularResult H;
        try {
            H = mod_quotient(I, P, cfg);
        } catch (const ModularFailure&) {
            v.reason = "mod_quotient_failed";
            return v;
        }
        append_log(v.log, H.log, "asstest");
        for (std::uint64_t p : survivors) {
            if (classify_prime(p, R, H.basis).effectively_lucky) {
                v.verdict = DivisorVerdict::Kind::associated;
                v.witness = G;
                v.witness_primes = survivors;
                v.reason = "verified";
                return v;
            }
        }
    }
    v.reason = "round_budget";
    return v;
}

DivisorVerdict non_associated_test(const QIdeal& I, const QIdeal& P,
                                   const ModularRunConfig& cfg)
{
    const QRing& R = I.ring;
    std::vector<QPoly> F = groebner_basis(I);
    std::vector<QPoly> G = groebner_basis(P);
    DivisorVerdict v;

    PrimeSource src(cfg);
    std::vector<PrimeRecord> pool;
    bool saw_any_usable = false;
    int want = std::max(1, cfg.initial_primes);

    for (int round = 1; round <= cfg.max_rounds; ++round) {
        std::vector<std::uint64_t> fresh;
        for (int i = 0; i < want; ++i)
            fresh.push_back(src.next({&F, &G}, {&F, &G}));
        auto recs = per_prime_run(R, F, G, ModOp::diq, fresh, cfg.jobs);
        std::size_t log_at = v.log.size();
        for (auto& rec : recs) {
            v.log.push_back({rec.p, rec.class_name(),
                             rec.has_result ? lm_signature(rec.result)
                                            : std::string(),
                             rec.micros});
            if (!rec.has_result) continue;
            if (!classify_prime(rec.p, R, G).effectively_lucky) continue;
            saw_any_usable = true;
            PRing Rp{R.vars, R.order, FpField(rec.p)};
            std::vector<PPoly> Gp;
            for (const auto& g : G) Gp.push_back(reduce_mod_p(Rp, g));
            if (rec.result != Gp) pool.push_back(std::move(rec));
        }
        tag_log(v.log, log_at, "nonasstest");
        want *= 2;
        if (pool.empty()) continue;

        auto survivors = delete_unlucky(pool);
        LiftCandidate cand = crt_lift(R, survivors);
        if (!reconstruct_basis(R, cand)) continue;
        const std::vector<QPoly>& K = cand.rational_basis;

        // K must leave P; otherwise the disagreement was an artifact
        if (contains(P, QIdeal(R, K))) continue;

        ModularResult H;
        try {
            H = mod_quotient(I, P, cfg);
        } catch (const ModularFailure&) {
            v.reason = "mod_quotient_failed";
            return v;
        }
        append_log(v.log, H.log, "nonasstest");
        // K inside (I:(I:P)) but outside P forces (I:(I:P)) outside P
        if (product_inside(I, K, H.basis)) {
            v.verdict = DivisorVerdict::Kind::not_associated;
            v.witness = K;
            for (const auto& r : survivors) v.witness_primes.push_back(r.p);
            v.reason = "verified";
            return v;
        }
    }
    v.reason = pool.empty() && saw_any_usable ? "all_primes_agree" : "round_budget";
    return v;
}

bool is_primary_component(const QIdeal& I, const QIdeal& J, const QIdeal& L)
{
    // radical of L must be exactly J
    for (const auto& g : L.gens)
        if (!radical_membership(g, J)) return false;
    for (const auto& g : J.gens)
        if (!radical_membership(g, L)) return false;

    QIdeal satIJ = saturate(I, J).first;
    if (contains(L, satIJ))
        throw HypothesisViolated(
            "is_primary_component: L contains (I:J^inf)");
    QIdeal Z = intersect(satIJ, L);
    QIdeal back = saturate(I, quotient(I, Z)).first;
    return ideal_equal(back, Z);
}

ComponentResult isolated_component(const QIdeal& I, const QIdeal& J)
{
    auto [dim, mis] = dimension_and_mis(J);
    (void)dim;
    const std::vector<int>& U = mis.front();
    QIdeal Q = hull_unmixed(diq_sat_variant(I, J, DiqVariant::both_sat), U);
    ComponentResult res;
    res.component = std::move(Q);
    res.kind = ComponentResult::Kind::isolated;
    try {
        res.certified = is_primary_component(I, J, res.component);
    } catch (const HypothesisViolated&) {
        res.certified = false;
    }
    return res;
}

ComponentResult component_from_power(const QIdeal& I, const QIdeal& J,
                                     bool certify, int m_cap)
{
    auto [dim, mis] = dimension_and_mis(J);
    (void)dim;
    const std::vector<int>& U = mis.front();
    for (int m = 1; m <= m_cap; m *= 2) {
        budget::check();
        QIdeal L = hull_unmixed(canonicalize(ideal_sum(I, ideal_pow(J, m))), U);
        ComponentResult res;
        res.component = std::move(L);
        res.kind = ComponentResult::Kind::hull_power;
        res.exponent_used = m;
        if (!certify) return res;
        try {
            if (is_primary_component(I, J, res.component)) {
                res.certified = true;
                return res;
            }
        } catch (const HypothesisViolated&) {
            // m too small: hull(I + J^m) still contains a foreign component
        }
    }
    throw std::runtime_error("component_from_power: exponent cap exceeded");
}

}  // namespace moddiq
