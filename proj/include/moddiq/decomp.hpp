#ifndef MODDIQ_DECOMP_HPP
#define MODDIQ_DECOMP_HPP

#include <map>

#include <moddiq/diq.hpp>
#include <moddiq/factor_fp.hpp>

namespace moddiq {

struct RadicalUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Associated primes of an ideal over F_p; primes[i] comes with its canonical
// (lexicographically smallest) maximal independent set mis[i].
struct FpAssResult {
    std::vector<PIdeal> primes;
    std::vector<std::vector<int>> mis;
    bool complete = true;
};

FpAssResult associated_primes_fp(const PIdeal& I, std::uint64_t seed = 1,
                                 int depth_cap = 8);

// intersection of all associated primes; requires a complete prime list
PIdeal radical_fp(const PIdeal& I, std::uint64_t seed = 1);

std::map<std::vector<int>, std::vector<PIdeal>> group_by_mis(const FpAssResult& res);

// CRT/reconstruction lift of per-prime radical group intersections, with the
// certificates the rational-side theory licenses.
struct RadicalLift {
    QIdeal lifted;
    bool reconstructed = false;
    bool radical_certified = false;
    bool ass_certified = false;
    bool single_prime = false;
    bool prime_certified = false;
    std::vector<std::uint64_t> primes;
};

RadicalLift lift_radical_group(const QIdeal& I, const std::vector<int>& U,
                               const std::vector<PrimeRecord>& records,
                               bool group_is_single_prime);

struct IntermediateDecomposition {
    std::map<std::vector<int>, ComponentResult> components;
    std::map<std::vector<int>, RadicalLift> lifts;
    bool certified_cover = false;
    std::vector<std::uint64_t> primes_used;
    std::string report_json;
};

IntermediateDecomposition intermediate_decomposition(const QIdeal& I,
                                                     const ModularRunConfig& cfg = {});

}  // namespace moddiq

#endif
