#ifndef MODDIQ_CLI_HPP
#define MODDIQ_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <moddiq/decomp.hpp>

namespace moddiq {

// Exit codes: 0 success, 2 parse/usage error, 3 modular failure or
// inconclusive verdict, 4 timeout.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

// Built-in stress family injected into suites on matching rings: I1, I2, I3
// in Q[x,y,z]; cyclic2..cyclic6 and the cyclic(6) prime divisor P1 in
// Q[x1..x6].
std::vector<QPoly> builtin_ideal(const QRing& R, const std::string& name);
QRing builtin_ring_xyz();
QRing builtin_ring_c6();

}  // namespace moddiq

#endif
