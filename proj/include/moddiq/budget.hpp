#ifndef MODDIQ_BUDGET_HPP
#define MODDIQ_BUDGET_HPP

#include <chrono>
#include <optional>

#include <moddiq/errors.hpp>

namespace moddiq {

// Cooperative deadline, checked inside the long-running loops (Buchberger
// pair loop, saturation loop).  Thread-local so parallel per-prime workers
// carry their own copy.
namespace budget {

using Clock = std::chrono::steady_clock;

inline thread_local std::optional<Clock::time_point> deadline;

inline void check()
{
    if (deadline && Clock::now() > *deadline)
        throw TimeoutError("computation deadline exceeded");
}

// RAII scope installing a deadline; restores the previous one on exit.
class Scope {
public:
    explicit Scope(std::optional<Clock::time_point> d) : prev_(deadline)
    {
        deadline = d;
    }
    explicit Scope(std::chrono::milliseconds from_now) : prev_(deadline)
    {
        deadline = Clock::now() + from_now;
    }
    ~Scope() { deadline = prev_; }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

private:
    std::optional<Clock::time_point> prev_;
};

}  // namespace budget

}  // namespace moddiq

#endif
