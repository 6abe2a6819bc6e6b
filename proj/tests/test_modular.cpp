#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include <json.hpp>
#include <moddiq/modular.hpp>

using namespace moddiq;

namespace {

QRing ring_xy()
{
    return QRing{{"x", "y"}, MonomialOrder::grevlex(), {}};
}

QIdeal ideal(const QRing& R, std::initializer_list<const char*> src)
{
    std::vector<QPoly> g;
    for (auto s : src) g.push_back(parse_poly(R, s));
    return QIdeal(R, std::move(g));
}

PPoly fp_poly(const PRing& Rp, std::initializer_list<std::pair<std::vector<std::uint32_t>, std::uint64_t>> terms)
{
    std::vector<PPoly::Term> t;
    for (auto& [e, c] : terms) t.push_back({Monomial(std::vector<std::uint32_t>(e)), c});
    return poly_normalize(Rp, std::move(t));
}

PrimeRecord record_with(std::uint64_t p, std::vector<PPoly> basis, int m = -1)
{
    PrimeRecord r;
    r.p = p;
    r.weak_permissible = r.permissible = r.effectively_lucky = true;
    r.result = std::move(basis);
    r.has_result = true;
    r.exponent = m;
    return r;
}

QIdeal random_ideal(std::mt19937& rng, const QRing& R, int ngens, int maxdeg = 3)
{
    std::uniform_int_distribution<int> c(-9, 9), e(0, maxdeg), nt(1, 4);
    std::vector<QPoly> gens;
    for (int g = 0; g < ngens; ++g) {
        std::vector<QPoly::Term> terms;
        int k = nt(rng);
        for (int t = 0; t < k; ++t) {
            int cc = c(rng);
            if (!cc) continue;
            Monomial m(R.vars.size());
            int budget_deg = maxdeg;
            for (int v = 0; v < R.nvars(); ++v) {
                int ev = e(rng) % (budget_deg + 1);
                m.e[v] = ev;
                budget_deg -= ev;
            }
            terms.push_back({std::move(m), mpq_class(cc)});
        }
        QPoly f = poly_normalize(R, std::move(terms));
        if (!f.is_zero()) gens.push_back(std::move(f));
    }
    if (gens.empty()) gens.push_back(parse_poly(R, "x"));
    return QIdeal(R, std::move(gens));
}

}  // namespace

TEST_CASE("prime source: range, distinctness, determinism, denominator filter")
{
    QRing R = ring_xy();
    std::vector<QPoly> F = {parse_poly(R, "x + 1/6")};

    ModularRunConfig cfg;
    cfg.seed = 123;
    auto recs = choose_primes(cfg, 8, {&F});
    std::set<std::uint64_t> seen;
    for (const auto& r : recs) {
        CHECK(r.p >= (1ull << 30));
        CHECK(r.p < (1ull << 31));
        CHECK(r.p % 2 == 1);
        CHECK(r.p % 3 != 0);
        seen.insert(r.p);
    }
    CHECK(seen.size() == 8);

    auto recs2 = choose_primes(cfg, 8, {&F});
    for (int i = 0; i < 8; ++i) CHECK(recs[i].p == recs2[i].p);

    // tiny range: denominator 5 leaves only 7 among [4, 8)
    ModularRunConfig tiny;
    tiny.prime_bits = 3;
    std::vector<QPoly> F5 = {parse_poly(R, "x + 1/5")};
    auto one = choose_primes(tiny, 1, {&F5});
    CHECK(one[0].p == 7);
    CHECK_THROWS_AS(choose_primes(tiny, 2, {&F5}), ModularFailure);
}

TEST_CASE("classify_prime examples")
{
    QRing R = ring_xy();
    std::vector<QPoly> F = {parse_poly(R, "x - 3/2")};
    CHECK_FALSE(classify_prime(2, R, F).weak_permissible);
    auto r5 = classify_prime(5, R, F);
    CHECK(r5.weak_permissible);
    CHECK(r5.permissible);
    CHECK(r5.effectively_lucky);

    QRing R3{{"x", "y", "z"}, MonomialOrder::lex(), {}};
    std::vector<QPoly> G;
    for (auto s : {"x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"})
        G.push_back(parse_poly(R3, s));
    for (std::uint64_t p : {5ull, 7ull, 1073741827ull})
        CHECK(classify_prime(p, R3, G).effectively_lucky);

    std::vector<QPoly> F3 = {parse_poly(R, "x + 1/3")};
    CHECK_FALSE(classify_prime(3, R, F3).weak_permissible);
    CHECK(classify_prime(3, R, F3).class_name() == "rejected");
}

TEST_CASE("delete_unlucky: majority and tie-break")
{
    QRing R = ring_xy();
    PRing R7 = PRing{R.vars, R.order, FpField(7)};
    PPoly a = fp_poly(R7, {{{1, 0}, 1}});          // x
    PPoly b = fp_poly(R7, {{{0, 1}, 1}});          // y
    auto majority = delete_unlucky({record_with(3, {a}), record_with(5, {a}),
                                    record_with(7, {a}), record_with(11, {b})});
    CHECK(majority.size() == 3);
    for (const auto& r : majority) CHECK(lm_signature(r.result) == "1,0");

    auto all = delete_unlucky({record_with(3, {a}), record_with(5, {a})});
    CHECK(all.size() == 2);

    // 2-2 tie: keep the lexicographically smaller signature ("0,1" < "1,0")
    auto tied = delete_unlucky({record_with(3, {a}), record_with(5, {a}),
                                record_with(7, {b}), record_with(11, {b})});
    CHECK(tied.size() == 2);
    for (const auto& r : tied) CHECK(lm_signature(r.result) == "0,1");
}

TEST_CASE("crt_lift examples")
{
    QRing R = ring_xy();
    PRing R3p{R.vars, R.order, FpField(3)}, R5p{R.vars, R.order, FpField(5)};
    // x + 1 mod 3 and x + 2 mod 5 -> x + 7 mod 15
    auto cand = crt_lift(R, {record_with(3, {fp_poly(R3p, {{{1, 0}, 1}, {{0, 0}, 1}})}),
                             record_with(5, {fp_poly(R5p, {{{1, 0}, 1}, {{0, 0}, 2}})})});
    CHECK(cand.modulus == 15);
    REQUIRE(cand.residue_basis.size() == 1);
    REQUIRE(cand.residue_basis[0].size() == 2);
    CHECK(cand.residue_basis[0][1].second == 7);

    // single prime: identity embedding
    auto single = crt_lift(R, {record_with(5, {fp_poly(R5p, {{{1, 0}, 1}, {{0, 0}, 4}})})});
    CHECK(single.modulus == 5);
    CHECK(single.residue_basis[0][1].second == 4);

    // x + 33 mod 97 and x + 68 mod 101 combine to x + 2/3 mod 9797
    // (2*inv(3) is 33 mod 97 and 68 mod 101)
    PRing R97{R.vars, R.order, FpField(97)}, R101{R.vars, R.order, FpField(101)};
    CHECK(fp::mul(2, fp::inv(3, 97), 97) == 33);
    CHECK(fp::mul(2, fp::inv(3, 101), 101) == 68);
    auto c2 = crt_lift(R, {record_with(97, {fp_poly(R97, {{{1, 0}, 1}, {{0, 0}, 33}})}),
                           record_with(101, {fp_poly(R101, {{{1, 0}, 1}, {{0, 0}, 68}})})});
    CHECK(c2.modulus == 9797);
    auto q = rational_reconstruct(c2.residue_basis[0][1].second, c2.modulus);
    REQUIRE(q.has_value());
    CHECK(*q == mpq_class(2, 3));

    // signature mismatch is an internal error
    CHECK_THROWS_AS(crt_lift(R, {record_with(3, {fp_poly(R3p, {{{1, 0}, 1}})}),
                                 record_with(5, {fp_poly(R5p, {{{0, 1}, 1}})})}),
                    std::logic_error);
}

TEST_CASE("rational reconstruction examples")
{
    CHECK(*rational_reconstruct(33, 97) == mpq_class(2, 3));
    CHECK(*rational_reconstruct(1, 97) == 1);
    CHECK(*rational_reconstruct(1, 1000003) == 1);
    // 2*48 = 96 = -1 mod 97, so 48 represents -1/2
    CHECK(*rational_reconstruct(48, 97) == mpq_class(-1, 2));
    CHECK(*rational_reconstruct(0, 97) == 0);
}

TEST_CASE("reconstruction inverts reduction for in-bound rationals")
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 1000000);
    ModularRunConfig cfg;
    cfg.seed = 99;
    QRing R = ring_xy();
    std::vector<QPoly> none;
    auto primes = choose_primes(cfg, 6, {&none});
    for (int i = 0; i < 1000; ++i) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        mpz_class m = 1;
        mpz_class resid = 0;
        // CRT of q over enough primes that m > 2*(a^2 + b^2)
        mpz_class bound = 2 * (q.get_num() * q.get_num() + q.get_den() * q.get_den());
        for (const auto& pr : primes) {
            if (m > bound) break;
            std::uint64_t p = pr.p;
            std::uint64_t r = rat_mod_p(q, p);
            std::uint64_t mp = mpz_fdiv_ui(m.get_mpz_t(), p);
            std::uint64_t t = fp::mul(fp::sub(r, mpz_fdiv_ui(resid.get_mpz_t(), p), p),
                                      fp::inv(mp, p), p);
            resid += m * mpz_class(t);
            m *= mpz_class(p);
        }
        auto back = rational_reconstruct(resid, m);
        REQUIRE(back.has_value());
        CHECK(*back == q);
    }
}

TEST_CASE("screen test rejects a perturbed candidate at a fresh prime")
{
    QRing R = ring_xy();
    QIdeal I = ideal(R, {"x^2 - y", "x*y - 2"});
    QIdeal J = ideal(R, {"x + 1"});
    std::vector<QPoly> H = groebner_basis(quotient(I, J));
    REQUIRE(!H.empty());
    std::vector<QPoly> bad = H;
    bad[0] = poly_add(R, bad[0], poly_one(R));  // off-by-one fault

    std::uint64_t p = 1073741827ull;
    auto truth = per_prime_run(R, groebner_basis(I), J.gens, ModOp::quotient, {p}, 1);
    REQUIRE(truth[0].has_result);
    PRing Rp{R.vars, R.order, FpField(p)};
    std::vector<PPoly> good_img, bad_img;
    for (const auto& h : H) good_img.push_back(reduce_mod_p(Rp, h));
    for (const auto& h : bad) bad_img.push_back(reduce_mod_p(Rp, h));
    CHECK(good_img == truth[0].result);
    CHECK(bad_img != truth[0].result);
}

TEST_CASE("mod_quotient examples")
{
    QRing R = ring_xy();
    auto r1 = mod_quotient(ideal(R, {"x^2"}), ideal(R, {"x"}));
    CHECK(r1.certified);
    CHECK(r1.basis == groebner_basis(ideal(R, {"x"})));

    QIdeal I = ideal(R, {"x^2*y - x", "y^2"});
    auto r2 = mod_quotient(I, ideal(R, {"1"}));
    CHECK(r2.certified);
    CHECK(r2.basis == groebner_basis(I));

    auto r3 = mod_quotient(I, QIdeal(R, {}));
    CHECK(r3.certified);
    CHECK(r3.basis == std::vector<QPoly>{poly_one(R)});
}

TEST_CASE("mod_saturate examples")
{
    QRing R = ring_xy();
    auto r1 = mod_saturate(ideal(R, {"x^2*y"}), ideal(R, {"x"}));
    CHECK(r1.certified);
    CHECK(r1.basis == groebner_basis(ideal(R, {"y"})));
    CHECK(r1.exponent == 2);

    QIdeal I = ideal(R, {"x^2", "x*y"});
    auto r2 = mod_saturate(I, ideal(R, {"1"}));
    CHECK(r2.certified);
    CHECK(r2.basis == groebner_basis(I));
    CHECK(r2.exponent == 0);
}

TEST_CASE("modular results match the direct path on random fixtures")
{
    QRing R{{"x", "y", "z"}, MonomialOrder::grevlex(), {}};
    std::mt19937 rng(41);
    ModularRunConfig cfg;
    cfg.seed = 7;
    for (int trial = 0; trial < 8; ++trial) {
        QIdeal I = random_ideal(rng, R, 3, 2);
        QIdeal J = random_ideal(rng, R, 2, 2);
        auto mq = mod_quotient(I, J, cfg);
        CHECK(mq.certified);
        CHECK(mq.basis == groebner_basis(quotient(I, J)));
        auto ms = mod_saturate(I, J, cfg);
        auto [S, m] = saturate(I, J);
        CHECK(ms.certified);
        CHECK(ms.basis == groebner_basis(S));
        CHECK(ms.exponent == m);
    }
}

TEST_CASE("certified quotient invariants")
{
    QRing R = ring_xy();
    QIdeal I = ideal(R, {"x^3 - y", "x*y^2 + 2"});
    QIdeal J = ideal(R, {"x + y", "x - 3"});
    auto res = mod_quotient(I, J);
    CHECK(res.certified);
    QIdeal H(R, res.basis);
    CHECK(contains(I, product(H, J)));
    CHECK(contains(H, I));
    CHECK(is_reduced_gb(R, res.basis));
}

TEST_CASE("fixed seed gives identical runs; serial and parallel agree")
{
    QRing R = ring_xy();
    QIdeal I = ideal(R, {"x^2*y - 1/2", "y^3 - x"});
    QIdeal J = ideal(R, {"x - y"});
    ModularRunConfig cfg;
    cfg.seed = 2024;
    auto a = mod_quotient(I, J, cfg);
    auto b = mod_quotient(I, J, cfg);
    CHECK(a.basis == b.basis);
    CHECK(a.primes_used == b.primes_used);
    CHECK(a.rounds == b.rounds);

    ModularRunConfig serial = cfg, par = cfg;
    serial.jobs = 1;
    par.jobs = 4;
    auto s = mod_quotient(I, J, serial);
    auto p = mod_quotient(I, J, par);
    CHECK(s.basis == p.basis);
    CHECK(s.primes_used == p.primes_used);
}

TEST_CASE("run log records every prime with class, signature and timing")
{
    QRing R = ring_xy();
    auto res = mod_quotient(ideal(R, {"x^2"}), ideal(R, {"x"}));
    CHECK(!res.log.empty());
    for (const auto& e : res.log) {
        CHECK(e.prime >= (1ull << 30));
        CHECK(!e.cls.empty());
        if (e.cls == "effectively_lucky") CHECK(!e.sig.empty());
    }
    std::ostringstream os;
    write_runlog(os, res.log);
    std::istringstream is(os.str());
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j.contains("prime"));
        CHECK(j.contains("class"));
        CHECK(j.contains("sig"));
        CHECK(j.contains("micros"));
        ++n;
    }
    CHECK(n == (int)res.log.size());
}
