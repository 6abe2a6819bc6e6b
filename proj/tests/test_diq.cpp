#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <moddiq/diq.hpp>

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

// I = (x) cap (x^3,y) cap (x+1), J = (x,y) cap (x+1)
struct Fixture {
    QRing R = ring_xy();
    QIdeal I, J;
    Fixture()
    {
        I = intersect(intersect(ideal(R, {"x"}), ideal(R, {"x^3", "y"})),
                      ideal(R, {"x + 1"}));
        J = intersect(ideal(R, {"x", "y"}), ideal(R, {"x + 1"}));
    }
};

}  // namespace

TEST_CASE("double ideal quotient examples")
{
    Fixture fx;
    CHECK(ideal_equal(diq(fx.I, fx.J), fx.J));
    CHECK(ideal_equal(diq_sat_variant(fx.I, fx.J, DiqVariant::inner_sat),
                      intersect(ideal(fx.R, {"x^2", "y"}), ideal(fx.R, {"x + 1"}))));
    CHECK(is_unit_ideal(diq(fx.I, unit_ideal(fx.R))));
    CHECK(ideal_equal(diq_sat_variant(fx.I, fx.J, DiqVariant::plain),
                      diq(fx.I, fx.J)));
}

TEST_CASE("mod_diq matches the direct double quotient")
{
    Fixture fx;
    auto res = mod_diq(fx.I, fx.J);
    CHECK(res.certified);
    CHECK(res.basis == groebner_basis(fx.J));

    auto unit = mod_diq(fx.I, unit_ideal(fx.R));
    CHECK(unit.certified);
    CHECK(unit.basis == std::vector<QPoly>{poly_one(fx.R)});

    bool saw1 = false, saw2 = false;
    for (const auto& e : res.log) {
        if (e.stage == "diq.stage1") saw1 = true;
        if (e.stage == "diq.stage2") saw2 = true;
    }
    CHECK(saw1);
    CHECK(saw2);
}

TEST_CASE("mod_diq equals diq on seeded random pairs")
{
    QRing R = ring_xy();
    std::mt19937 rng(61);
    std::uniform_int_distribution<int> c(-4, 4), e(0, 2);
    ModularRunConfig cfg;
    cfg.seed = 17;
    for (int trial = 0; trial < 6; ++trial) {
        auto rand_ideal = [&](int ngens) {
            std::vector<QPoly> gens;
            for (int g = 0; g < ngens; ++g) {
                std::vector<QPoly::Term> terms;
                for (int t = 0; t < 3; ++t) {
                    int cc = c(rng);
                    if (!cc) continue;
                    terms.push_back({Monomial({(std::uint32_t)e(rng),
                                               (std::uint32_t)e(rng)}),
                                     mpq_class(cc)});
                }
                QPoly f = poly_normalize(R, std::move(terms));
                if (!f.is_zero()) gens.push_back(std::move(f));
            }
            if (gens.empty()) gens.push_back(parse_poly(R, "x"));
            return QIdeal(R, std::move(gens));
        };
        QIdeal I = rand_ideal(3), J = rand_ideal(2);
        auto res = mod_diq(I, J, cfg);
        CHECK(res.certified);
        CHECK(res.basis == groebner_basis(diq(I, J)));
    }
}

TEST_CASE("prime divisor membership via the double quotient")
{
    Fixture fx;
    CHECK(is_prime_divisor_direct(fx.I, ideal(fx.R, {"x + 1"})));
    CHECK(is_prime_divisor_direct(fx.I, ideal(fx.R, {"x", "y"})));
    CHECK(is_prime_divisor_direct(fx.I, ideal(fx.R, {"x"})));
    CHECK_FALSE(is_prime_divisor_direct(fx.I, ideal(fx.R, {"y"})));
    CHECK_FALSE(is_prime_divisor_direct(fx.I, ideal(fx.R, {"x - 2"})));
}

TEST_CASE("radical divisor-set check")
{
    Fixture fx;
    CHECK(ass_subset_check(fx.I, fx.J));
    CHECK_FALSE(ass_subset_check(fx.I, ideal(fx.R, {"y"})));
    // the radical: intersection of all three primes, = (x^2+x)
    QIdeal rad = intersect(ideal(fx.R, {"x"}), ideal(fx.R, {"x + 1"}));
    CHECK(ass_subset_check(fx.I, rad));
    // every sub-intersection of associated primes passes
    CHECK(ass_subset_check(fx.I, ideal(fx.R, {"x"})));
    CHECK(ass_subset_check(fx.I, intersect(ideal(fx.R, {"x", "y"}),
                                           ideal(fx.R, {"x"}))));
}

TEST_CASE("modular associated test")
{
    Fixture fx;
    auto a1 = associated_test_modular(fx.I, ideal(fx.R, {"x + 1"}));
    CHECK(a1.verdict == DivisorVerdict::Kind::associated);
    CHECK(!a1.witness_primes.empty());
    auto a2 = associated_test_modular(fx.I, ideal(fx.R, {"x"}));
    CHECK(a2.verdict == DivisorVerdict::Kind::associated);
    auto a3 = associated_test_modular(fx.I, ideal(fx.R, {"x", "y"}));
    CHECK(a3.verdict == DivisorVerdict::Kind::associated);
}

TEST_CASE("modular non-associated test")
{
    Fixture fx;
    auto n1 = non_associated_test(fx.I, ideal(fx.R, {"y"}));
    CHECK(n1.verdict == DivisorVerdict::Kind::not_associated);
    CHECK(!n1.witness.empty());

    auto n2 = non_associated_test(fx.I, ideal(fx.R, {"x + 1"}));
    CHECK(n2.verdict == DivisorVerdict::Kind::inconclusive);
    CHECK(n2.reason == "all_primes_agree");

    for (const char* s : {"x - 2", "x - 7", "x + 13"}) {
        auto n = non_associated_test(fx.I, ideal(fx.R, {s}));
        CHECK(n.verdict == DivisorVerdict::Kind::not_associated);
    }
}

TEST_CASE("the two one-sided tests never contradict, and match the direct check")
{
    Fixture fx;
    for (const char* s : {"x", "x + 1", "y", "x - 3"}) {
        QIdeal P = ideal(fx.R, {s});
        auto a = associated_test_modular(fx.I, P);
        auto n = non_associated_test(fx.I, P);
        bool assoc = a.verdict == DivisorVerdict::Kind::associated;
        bool nonassoc = n.verdict == DivisorVerdict::Kind::not_associated;
        CHECK_FALSE((assoc && nonassoc));
        if (assoc) CHECK(is_prime_divisor_direct(fx.I, P));
        if (nonassoc) CHECK_FALSE(is_prime_divisor_direct(fx.I, P));
    }
    QIdeal Pxy = ideal(fx.R, {"x", "y"});
    auto a = associated_test_modular(fx.I, Pxy);
    auto n = non_associated_test(fx.I, Pxy);
    CHECK_FALSE((a.verdict == DivisorVerdict::Kind::associated &&
                 n.verdict == DivisorVerdict::Kind::not_associated));
}

TEST_CASE("primary component criterion")
{
    Fixture fx;
    QIdeal Jxy = ideal(fx.R, {"x", "y"});
    CHECK(is_primary_component(fx.I, Jxy, ideal(fx.R, {"x^3", "y"})));
    // not a component: x^3+x^2 lies in (x^2+x) cap (x^2,y) but not in I
    CHECK_FALSE(is_primary_component(fx.I, Jxy, ideal(fx.R, {"x^2", "y"})));
    // not a component either: x^4+x^3 is in I but not in (x^99,y)
    CHECK_FALSE(is_primary_component(fx.I, Jxy, ideal(fx.R, {"x^99", "y"})));
    // L containing (I:J^inf) = (x^2+x) violates the criterion's hypothesis
    CHECK_THROWS_AS(is_primary_component(fx.I, Jxy, Jxy), HypothesisViolated);
    // radical of L must be J
    CHECK_FALSE(is_primary_component(fx.I, Jxy, ideal(fx.R, {"x^2"})));
}

TEST_CASE("isolated components")
{
    Fixture fx;
    auto c1 = isolated_component(fx.I, ideal(fx.R, {"x"}));
    CHECK(ideal_equal(c1.component, ideal(fx.R, {"x"})));
    CHECK(c1.kind == ComponentResult::Kind::isolated);
    CHECK(c1.certified);

    auto c2 = isolated_component(fx.I, ideal(fx.R, {"x^2 + x"}));
    CHECK(ideal_equal(c2.component, ideal(fx.R, {"x^2 + x"})));
    CHECK(c2.certified);

    QIdeal prim = ideal(fx.R, {"x^2"});
    auto c3 = isolated_component(prim, ideal(fx.R, {"x"}));
    CHECK(ideal_equal(c3.component, prim));

    // invariants: component contains I and its radical is J
    for (auto* c : {&c1, &c2}) {
        CHECK(contains(c->component, fx.I));
    }
}

TEST_CASE("components from escalated powers")
{
    Fixture fx;
    QIdeal Jxy = ideal(fx.R, {"x", "y"});
    auto c = component_from_power(fx.I, Jxy);
    CHECK(c.kind == ComponentResult::Kind::hull_power);
    CHECK(c.certified);
    CHECK(c.exponent_used == 4);
    // a certified component cuts I together with the isolated part
    QIdeal rest = ideal(fx.R, {"x^2 + x"});
    CHECK(ideal_equal(intersect(c.component, rest), fx.I));
    CHECK(is_primary_component(fx.I, Jxy, c.component));

    QIdeal P = ideal(fx.R, {"x + 1"});
    auto self = component_from_power(P, P);
    CHECK(self.exponent_used == 1);
    CHECK(ideal_equal(self.component, P));

    auto sq = component_from_power(ideal(fx.R, {"x^2"}), ideal(fx.R, {"x"}));
    CHECK(sq.exponent_used == 2);
    CHECK(ideal_equal(sq.component, ideal(fx.R, {"x^2"})));
}
