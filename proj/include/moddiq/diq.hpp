#ifndef MODDIQ_DIQ_HPP
#define MODDIQ_DIQ_HPP

#include <moddiq/modular.hpp>

namespace moddiq {

// (I : (I : J)) and the three saturation variants.
enum class DiqVariant { plain, inner_sat, outer_sat, both_sat };

QIdeal diq(const QIdeal& I, const QIdeal& J);
QIdeal diq_sat_variant(const QIdeal& I, const QIdeal& J, DiqVariant v);

// Two-stage modular double ideal quotient: a certified H = (I:J) first,
// then a certified (I:H) restricted to primes effectively lucky for H.
ModularResult mod_diq(const QIdeal& I, const QIdeal& J,
                      const ModularRunConfig& cfg = {});

// P prime: P is an associated prime of I iff P contains (I:(I:P)).
bool is_prime_divisor_direct(const QIdeal& I, const QIdeal& P);

// J radical: Ass(J) subset of Ass(I) iff J contains (I:(I:J)).
bool ass_subset_check(const QIdeal& I, const QIdeal& J);

struct DivisorVerdict {
    enum class Kind { associated, not_associated, inconclusive };
    Kind verdict = Kind::inconclusive;
    std::vector<QPoly> witness;
    std::vector<std::uint64_t> witness_primes;
    std::string reason;
    RunLog log;
};

// One-sided modular tests; both receive a prime P (caller-asserted).
DivisorVerdict associated_test_modular(const QIdeal& I, const QIdeal& P,
                                       const ModularRunConfig& cfg = {});
DivisorVerdict non_associated_test(const QIdeal& I, const QIdeal& P,
                                   const ModularRunConfig& cfg = {});

// L is an intersection of J-primary components of I, for radical unmixed J:
// with Z = (I:J^inf) cap L, tests (I:(I:Z)^inf) = Z.  Throws
// HypothesisViolated when L contains (I:J^inf).
bool is_primary_component(const QIdeal& I, const QIdeal& J, const QIdeal& L);

struct ComponentResult {
    QIdeal component;
    enum class Kind { isolated, hull_power } kind = Kind::isolated;
    int exponent_used = -1;
    bool certified = false;
};

// J an intersection of isolated prime divisors of I: the intersection of the
// corresponding isolated primary components.
ComponentResult isolated_component(const QIdeal& I, const QIdeal& J);

// J an unmixed intersection of (possibly embedded) prime divisors: escalate
// hull(I + J^m) over m = 1,2,4,... until the component criterion certifies it.
ComponentResult component_from_power(const QIdeal& I, const QIdeal& J,
                                     bool certify = true, int m_cap = 64);

}  // namespace moddiq

#endif
