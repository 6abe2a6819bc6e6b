#ifndef MODDIQ_MODULAR_HPP
#define MODDIQ_MODULAR_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <set>

#include <moddiq/idealops.hpp>
#include <moddiq/io.hpp>

namespace moddiq {

// One prime's view of the computation: how it classified against the input
// and, when it survived classification, the reduced GB it produced over F_p.
struct PrimeRecord {
    std::uint64_t p = 0;
    bool weak_permissible = false;
    bool permissible = false;
    bool effectively_lucky = false;
    std::vector<PPoly> result;
    bool has_result = false;
    int exponent = -1;  // saturation stabilization exponent, when applicable
    long micros = 0;

    std::string class_name() const
    {
        if (effectively_lucky) return "effectively_lucky";
        if (permissible) return "permissible";
        if (weak_permissible) return "weak_permissible";
        return "rejected";
    }
};

enum class LiftStatus { unreconstructed, reconstructed, ptest_passed, certified };

// CRT-combined residue basis over Z/modulus, plus (after reconstruction)
// its rational preimage.
struct LiftCandidate {
    mpz_class modulus = 1;
    std::vector<std::vector<std::pair<Monomial, mpz_class>>> residue_basis;
    std::vector<QPoly> rational_basis;
    LiftStatus status = LiftStatus::unreconstructed;
};

struct ModularRunConfig {
    int initial_primes = 4;
    int prime_bits = 31;
    std::uint64_t seed = 42;
    int max_rounds = 6;
    enum class Verify { ptest_only, full } verify = Verify::full;
    int jobs = 0;  // 0 = library default; 1 = serial reference path
};

struct RunLogEntry {
    std::uint64_t prime = 0;
    std::string cls;
    std::string sig;
    long micros = 0;
    std::string stage;
};
using RunLog = std::vector<RunLogEntry>;

struct ModularResult {
    std::vector<QPoly> basis;
    bool certified = false;
    std::vector<std::uint64_t> primes_used;
    int rounds = 0;
    int exponent = -1;  // saturation only
    RunLog log;
};

// Leading-monomial signature of a basis; the vote key for delete_unlucky.
template <class F>
std::string lm_signature(const std::vector<Poly<F>>& G)
{
    std::string s;
    for (const auto& g : G) {
        if (!s.empty()) s += ';';
        for (std::size_t i = 0; i < g.lm().arity(); ++i) {
            if (i) s += ',';
            s += std::to_string(g.lm().e[i]);
        }
    }
    return s;
}

// Deterministic prime source: draws cfg.prime_bits-sized primes from a
// seeded stream, never repeating within one run.
class PrimeSource {
public:
    PrimeSource(const ModularRunConfig& cfg);

    // Next prime that is weakly permissible for every set in `inputs` and
    // whose leading coefficients stay nonzero for every set in `gb_inputs`.
    std::uint64_t next(const std::vector<const std::vector<QPoly>*>& inputs,
                       const std::vector<const std::vector<QPoly>*>& gb_inputs = {});

private:
    std::mt19937_64 rng_;
    std::uint64_t lo_, hi_;
    std::set<std::uint64_t> used_;
};

std::vector<PrimeRecord> choose_primes(const ModularRunConfig& cfg, int count,
                                       const std::vector<const std::vector<QPoly>*>& inputs,
                                       const std::vector<const std::vector<QPoly>*>& gb_inputs = {});

PrimeRecord classify_prime(std::uint64_t p, const QRing& R,
                           const std::vector<QPoly>& F);

std::vector<PrimeRecord> delete_unlucky(std::vector<PrimeRecord> records);

LiftCandidate crt_lift(const QRing& R, const std::vector<PrimeRecord>& records);

std::optional<mpq_class> rational_reconstruct(const mpz_class& c, const mpz_class& m);

// Reconstruct every coefficient of the candidate; true on full success.
bool reconstruct_basis(const QRing& R, LiftCandidate& cand);

enum class ModOp { quotient, saturate, diq };

// Serial or OpenMP per-prime kernel: classify each prime against F and, for
// the effectively lucky ones, run the requested operation over F_p.
// Results are gathered by index, so output order is independent of scheduling.
std::vector<PrimeRecord> per_prime_run(const QRing& R, const std::vector<QPoly>& F,
                                       const std::vector<QPoly>& G, ModOp op,
                                       const std::vector<std::uint64_t>& primes,
                                       int jobs);

ModularResult mod_quotient(const QIdeal& I, const QIdeal& J,
                           const ModularRunConfig& cfg = {});

ModularResult mod_saturate(const QIdeal& I, const QIdeal& J,
                           const ModularRunConfig& cfg = {});

// mod_quotient that additionally requires every contributing prime to be
// effectively lucky for `lucky_for` (a reduced GB over Q).
ModularResult mod_quotient_restricted(const QIdeal& I, const QIdeal& J,
                                      const std::vector<QPoly>& lucky_for,
                                      const ModularRunConfig& cfg = {});

void write_runlog(std::ostream& os, const RunLog& log);

}  // namespace moddiq

#endif
