#ifndef MODDIQ_FACTOR_FP_HPP
#define MODDIQ_FACTOR_FP_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <moddiq/poly.hpp>

namespace moddiq {

// Dense univariate polynomial over F_p: u.c[i] is the coefficient of x^i,
// trailing zeros trimmed (zero polynomial = empty vector).
struct FpUni {
    std::vector<std::uint64_t> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
};

FpUni uni_trim(FpUni a);
FpUni uni_mul(const FpUni& a, const FpUni& b, std::uint64_t p);
// returns (quotient, remainder)
std::pair<FpUni, FpUni> uni_divmod(const FpUni& a, const FpUni& b, std::uint64_t p);
FpUni uni_gcd(FpUni a, FpUni b, std::uint64_t p);  // monic
FpUni uni_monic(FpUni a, std::uint64_t p);
FpUni uni_derivative(const FpUni& a, std::uint64_t p);

// complete factorization into monic irreducibles with multiplicities,
// deterministic for a fixed seed
std::vector<std::pair<FpUni, int>> factor_univariate_fp(const FpUni& f,
                                                        std::uint64_t p,
                                                        std::uint64_t seed = 1);

// extraction/injection between sparse polynomials and the dense form
FpUni to_uni(const PRing& R, const PPoly& f, int var);
PPoly from_uni(const PRing& R, const FpUni& u, int var);

// multivariate factorization over F_p via Kronecker substitution; factors
// returned monic under R's order, with multiplicities
std::vector<std::pair<PPoly, int>> factor_fp(const PRing& R, const PPoly& f,
                                             std::uint64_t seed = 1);

}  // namespace moddiq

#endif
