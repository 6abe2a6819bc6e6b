#ifndef MODDIQ_ERRORS_HPP
#define MODDIQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace moddiq {

struct ArityMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ExponentOverflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// p divides a denominator of the input (Def. of weak permissibility fails).
struct NotWeakPermissible : std::runtime_error {
    unsigned long long prime;
    explicit NotWeakPermissible(unsigned long long p, const std::string& what)
        : std::runtime_error(what), prime(p) {}
};

struct UnitIdeal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMIS : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HypothesisViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The modular engine ran out of its round budget.  Carries diagnostics so
// callers can decide whether to fall back to the direct path.
struct ModularFailure : std::runtime_error {
    std::string stage;
    int rounds_used = 0;
    ModularFailure(std::string stage_, int rounds, const std::string& what)
        : std::runtime_error(what), stage(std::move(stage_)), rounds_used(rounds) {}
};

struct TimeoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    int line = 0;
    int col = 0;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

}  // namespace moddiq

#endif
