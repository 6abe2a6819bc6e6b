#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <moddiq/io.hpp>
#include <moddiq/poly.hpp>

using namespace moddiq;

namespace {

QRing ring_xyz(MonomialOrder ord = MonomialOrder::grevlex())
{
    return QRing{{"x", "y", "z"}, ord, {}};
}

QRing ring_xy(MonomialOrder ord = MonomialOrder::grevlex())
{
    return QRing{{"x", "y"}, ord, {}};
}

Monomial mono(std::initializer_list<std::uint32_t> e)
{
    return Monomial(std::vector<std::uint32_t>(e));
}

// Independent oracle: grevlex straight from its definition.
int grevlex_oracle(const Monomial& a, const Monomial& b)
{
    long da = 0, db = 0;
    for (auto x : a.e) da += x;
    for (auto x : b.e) db += x;
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.e.size(); i-- > 0;) {
        long d = static_cast<long>(a.e[i]) - static_cast<long>(b.e[i]);
        if (d != 0) return d < 0 ? 1 : -1;
    }
    return 0;
}

Monomial random_mono(std::mt19937& rng, int nvars, int maxe = 4)
{
    Monomial m(nvars);
    std::uniform_int_distribution<int> d(0, maxe);
    for (int i = 0; i < nvars; ++i) m.e[i] = d(rng);
    return m;
}

QPoly random_poly(std::mt19937& rng, const QRing& R, int nterms = 4)
{
    std::uniform_int_distribution<int> coef(-5, 5);
    std::vector<QPoly::Term> terms;
    for (int i = 0; i < nterms; ++i) {
        int c = coef(rng);
        if (c == 0) continue;
        terms.push_back({random_mono(rng, R.nvars(), 3), mpq_class(c)});
    }
    return poly_normalize(R, std::move(terms));
}

}  // namespace

TEST_CASE("monomial order examples")
{
    auto lex = MonomialOrder::lex();
    // lex, x>y: x*y^2 vs x^2
    CHECK(lex.cmp(mono({1, 2}), mono({2, 0})) < 0);
    // reflexivity
    CHECK(lex.cmp(mono({1, 2}), mono({1, 2})) == 0);

    auto grev = MonomialOrder::grevlex();
    // grevlex x>y>z: x*z vs y^2 (degree tie)
    Monomial xz = mono({1, 0, 1}), y2 = mono({0, 2, 0});
    CHECK(grev.cmp(xz, y2) == grevlex_oracle(xz, y2));
    CHECK(grev.cmp(xz, y2) < 0);
}

TEST_CASE("grevlex agrees with its definition oracle")
{
    auto grev = MonomialOrder::grevlex();
    std::mt19937 rng(7);
    for (int i = 0; i < 500; ++i) {
        Monomial a = random_mono(rng, 3), b = random_mono(rng, 3);
        CHECK(grev.cmp(a, b) == grevlex_oracle(a, b));
    }
}

TEST_CASE("order properties: antisymmetry, transitivity, multiplicativity, 1 minimal")
{
    std::mt19937 rng(11);
    for (auto ord : {MonomialOrder::lex(), MonomialOrder::grevlex(),
                     MonomialOrder::block({{{0}, MonomialOrder::Kind::grevlex},
                                           {{1, 2}, MonomialOrder::Kind::grevlex}})}) {
        for (int i = 0; i < 300; ++i) {
            Monomial a = random_mono(rng, 3), b = random_mono(rng, 3),
                     c = random_mono(rng, 3);
            CHECK(ord.cmp(a, b) == -ord.cmp(b, a));
            if (ord.cmp(a, b) > 0 && ord.cmp(b, c) > 0) CHECK(ord.cmp(a, c) > 0);
            // multiplicative
            Monomial t = random_mono(rng, 3, 2);
            CHECK(ord.cmp(mono_mul(a, t), mono_mul(b, t)) == ord.cmp(a, b));
            // 1 is minimal
            Monomial one(3);
            if (!(a == one)) CHECK(ord.cmp(a, one) > 0);
        }
    }
}

TEST_CASE("order arity mismatch is an error")
{
    CHECK_THROWS_AS(MonomialOrder::lex().cmp(mono({1}), mono({1, 2})),
                    ArityMismatch);
}

TEST_CASE("poly arithmetic examples")
{
    QRing R = ring_xy();
    QPoly x1 = parse_poly(R, "x + 1");
    QPoly mx1 = parse_poly(R, "0 - x - 1");
    CHECK(poly_add(R, x1, mx1).is_zero());
    CHECK(poly_mul(R, x1, parse_poly(R, "x - 1")) == parse_poly(R, "x^2 - 1"));
    CHECK(poly_mul(R, parse_poly(R, "x^2 + 1"), x1) ==
          parse_poly(R, "x^3 + x^2 + x + 1"));
}

TEST_CASE("ring axioms on random polynomials")
{
    QRing R = ring_xyz();
    std::mt19937 rng(23);
    for (int i = 0; i < 60; ++i) {
        QPoly a = random_poly(rng, R), b = random_poly(rng, R),
              c = random_poly(rng, R);
        CHECK(poly_add(R, a, b) == poly_add(R, b, a));
        CHECK(poly_mul(R, a, b) == poly_mul(R, b, a));
        CHECK(poly_mul(R, poly_mul(R, a, b), c) ==
              poly_mul(R, a, poly_mul(R, b, c)));
        CHECK(poly_mul(R, a, poly_add(R, b, c)) ==
              poly_add(R, poly_mul(R, a, b), poly_mul(R, a, c)));
    }
}

TEST_CASE("reduce_mod_p examples")
{
    QRing R = ring_xy();
    PRing R5{{"x", "y"}, R.order, FpField(5)};
    // x - 3/2 -> x + 1 mod 5  (2^-1 = 3, -3*3 = -9 = 1)
    CHECK(reduce_mod_p(R5, parse_poly(R, "x - 3/2")) ==
          poly_add(R5, poly_var(R5, 0), poly_one(R5)));
    // 5x + 1 -> 1
    CHECK(reduce_mod_p(R5, parse_poly(R, "5x + 1")) == poly_one(R5));
    // x/2 mod 2 -> NotWeakPermissible
    PRing R2{{"x", "y"}, R.order, FpField(2)};
    CHECK_THROWS_AS(reduce_mod_p(R2, parse_poly(R, "1/2*x")), NotWeakPermissible);
}

TEST_CASE("reduce_mod_p is a ring homomorphism")
{
    QRing R = ring_xyz();
    PRing Rp{{"x", "y", "z"}, R.order, FpField(1073741827ull)};  // prime
    std::mt19937 rng(31);
    for (int i = 0; i < 40; ++i) {
        QPoly a = random_poly(rng, R), b = random_poly(rng, R);
        CHECK(reduce_mod_p(Rp, poly_add(R, a, b)) ==
              poly_add(Rp, reduce_mod_p(Rp, a), reduce_mod_p(Rp, b)));
        CHECK(reduce_mod_p(Rp, poly_mul(R, a, b)) ==
              poly_mul(Rp, reduce_mod_p(Rp, a), reduce_mod_p(Rp, b)));
    }
}

TEST_CASE("coeff_norm examples")
{
    QRing R = ring_xy();
    CHECK(coeff_norm({parse_poly(R, "x - 3/2")}) == 13);
    CHECK(coeff_norm({QPoly{}}) == 0);
    CHECK(coeff_norm({}) == 0);
    CHECK(coeff_norm({parse_poly(R, "7x + 1/3")}) == 50);
}

TEST_CASE("exponent overflow is a hard error")
{
    Monomial big(1);
    big.e[0] = 0xffffffffu;
    CHECK_THROWS_AS(mono_mul(big, mono({1})), ExponentOverflow);
}
