// Compares the serial reference path (jobs=1) of the per-prime kernel with
// the OpenMP pool, on the stress-family quotient inputs.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include <moddiq/cli.hpp>

using namespace moddiq;

int main(int argc, char** argv)
{
    int nprimes = argc > 1 ? std::atoi(argv[1]) : 16;
    int jobs = argc > 2 ? std::atoi(argv[2]) : 0;  // 0 = all cores

    QRing R = builtin_ring_xyz();
    QIdeal I3(R, builtin_ideal(R, "I3"));
    QIdeal M(R, {parse_poly(R, "x^2"), parse_poly(R, "x*y")});
    QIdeal I = product(I3, M);
    QIdeal J(R, {parse_poly(R, "x"), parse_poly(R, "y")});

    const auto& F = groebner_basis(I);
    const auto& G = groebner_basis(J);

    ModularRunConfig cfg;
    PrimeSource src(cfg);
    std::vector<std::uint64_t> primes;
    for (int i = 0; i < nprimes; ++i) primes.push_back(src.next({&F, &G}, {&F}));

    auto timed = [&](int njobs) {
        auto t0 = std::chrono::steady_clock::now();
        auto recs = per_prime_run(R, F, G, ModOp::quotient, primes, njobs);
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        return std::make_pair(secs, std::move(recs));
    };

    auto [serial_secs, serial] = timed(1);
    auto [parallel_secs, parallel] = timed(jobs);

    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; same && i < serial.size(); ++i)
        same = serial[i].p == parallel[i].p &&
               serial[i].result == parallel[i].result;

    std::cout << "primes:   " << nprimes << "\n"
              << "serial:   " << serial_secs << " s\n"
              << "parallel: " << parallel_secs << " s (jobs="
              << (jobs ? std::to_string(jobs) : "auto") << ")\n"
              << "speedup:  " << serial_secs / parallel_secs << "x\n"
              << "results identical: " << (same ? "yes" : "NO") << "\n";
    return same ? 0 : 1;
}
