#include <moddiq/cli.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <moddiq/io.hpp>

namespace moddiq {

namespace {

using nlohmann::json;

std::vector<QPoly> parse_all(const QRing& R, std::initializer_list<const char*> src)
{
    std::vector<QPoly> out;
    for (auto s : src) out.push_back(parse_poly(R, s));
    return out;
}

std::vector<QPoly> cyclic_ideal(const QRing& R, int n)
{
    std::vector<QPoly> gens;
    for (int k = 1; k < n; ++k) {
        QPoly g;
        for (int i = 0; i < n; ++i) {
            Monomial m(R.nvars());
            for (int j = i; j < i + k; ++j) m.e[j % n] += 1;
            g = poly_add(R, g, poly_normalize(R, {{std::move(m), mpq_class(1)}}));
        }
        gens.push_back(std::move(g));
    }
    Monomial all(R.nvars());
    for (int v = 0; v < n; ++v) all.e[v] = 1;
    gens.push_back(poly_normalize(R, {{std::move(all), mpq_class(1)},
                                      {Monomial(R.nvars()), mpq_class(-1)}}));
    return gens;
}

}  // namespace

QRing builtin_ring_xyz()
{
    return QRing{{"x", "y", "z"}, MonomialOrder::grevlex(), {}};
}

QRing builtin_ring_c6()
{
    return QRing{{"x1", "x2", "x3", "x4", "x5", "x6"}, MonomialOrder::grevlex(), {}};
}

std::vector<QPoly> builtin_ideal(const QRing& R, const std::string& name)
{
    if (R.vars == std::vector<std::string>{"x", "y", "z"}) {
        if (name == "I1")
            return parse_all(R, {"8*x^2*y^2 + 5*x*y^3 + 3*x^3*z + x^2*y*z",
                                 "x^5 + 2*y^3*z^2 + 13*y^2*z^3 + 5*y*z^4",
                                 "8*x^3 + 12*y^3 + x*z^2 + 3",
                                 "7*x^2*y^4 + 18*x*y^3*z^2 + y^3*z^3"});
        if (name == "I2")
            return parse_all(
                R, {"2*x*y^4*z^2 + x^3*y^2*z - x^2*y^3*z + 2*x*y*z^2 + 7*y^3 + 7",
                    "2*x^2*y^4*z + x^2*y*z^2 - x*y^2*z^2 + 2*x^2*y*z - 12*x + 12*y",
                    "2*y^5*z + x^2*y^2*z - x*y^3*z - x*y^3 + y^4 + 2*y^2*z",
                    "3*x*y^4*z^3 + x^2*y^2*z - x*y^3*z + 4*y^3*z^2 + 3*x*y*z^3 + "
                    "4*z^2 - x + y"});
        if (name == "I3")
            return parse_all(R, {"5*x^3*y^2*z + 3*y^3*x^2*z + 7*x*y^2*z^2",
                                 "3*x*y^2*z^2 + x^5 + 11*y^2*z^2",
                                 "4*x*y*z + 7*x^3 + 12*y^3 + 1",
                                 "3*x^3 - 4*y^3 + y*z^2"});
    }
    if (R.nvars() >= 2 && R.vars[0] == "x1" && name.rfind("cyclic", 0) == 0) {
        int n = std::atoi(name.c_str() + 6);
        if (n >= 2 && n <= R.nvars()) return cyclic_ideal(R, n);
    }
    if (R.vars == builtin_ring_c6().vars && name == "P1")
        return parse_all(R, {"-15*x5 + 16*x6^3 - 60*x6^2 + 225*x6 - 4",
                             "2*x5^2 - 7*x5 + 2*x6^2 - 7*x6 + 28",
                             "4*x6*x5 - x5 - x6 + 4",
                             "4*x1 + x5 + x6",
                             "4*x2 + x5 + x6",
                             "4*x3 + x5 + x6",
                             "4*x4 + x5 + x6"});
    return {};
}

namespace {

struct Opts {
    std::string input, ideal = "I", by, order, runlog, verify = "full";
    int primes = 4, prime_bits = 31, jobs = 0;
    std::uint64_t seed = 42;
    bool seed_given = false;
    bool json = false;
    double timeout = 0.0;
    bool slow = false;
};

void add_common(CLI::App* sub, Opts& o, bool needs_by)
{
    sub->add_option("--input", o.input, "ideal file (or builtin:xyz, builtin:cyclic6)");
    sub->add_option("--ideal", o.ideal, "ideal name (default I)");
    auto* by = sub->add_option("--by", o.by, "second ideal name");
    if (needs_by) by->required();
    sub->add_option("--order", o.order, "override order: lex | grevlex");
    sub->add_option("--primes", o.primes, "initial primes per round");
    sub->add_option("--prime-bits", o.prime_bits, "prime size in bits");
    sub->add_option("--seed", o.seed, "prime-stream seed")
        ->each([&o](const std::string&) { o.seed_given = true; });
    sub->add_option("--verify", o.verify, "ptest | full")
        ->check(CLI::IsMember({"ptest", "full"}));
    sub->add_flag("--json", o.json, "JSON output");
    sub->add_option("--timeout", o.timeout, "wall-clock budget in seconds");
    sub->add_option("--jobs", o.jobs, "worker cap (1 = serial)");
    sub->add_option("--runlog", o.runlog, "write per-prime log (JSON lines)");
    sub->add_flag("--slow", o.slow, "include the slow cases");
}

ModularRunConfig to_config(const Opts& o)
{
    ModularRunConfig cfg;
    cfg.initial_primes = o.primes;
    cfg.prime_bits = o.prime_bits;
    cfg.seed = o.seed;
    cfg.verify = o.verify == "ptest" ? ModularRunConfig::Verify::ptest_only
                                     : ModularRunConfig::Verify::full;
    cfg.jobs = o.jobs;
    return cfg;
}

IdealFile load_input(const Opts& o)
{
    if (o.input.empty())
        throw ParseError(0, 0, "--input is required");
    if (o.input.rfind("builtin:", 0) == 0) {
        std::string which = o.input.substr(8);
        IdealFile file;
        if (which == "xyz") {
            file.ring = builtin_ring_xyz();
            for (const char* n : {"I1", "I2", "I3"})
                file.ideals.emplace_back(n, builtin_ideal(file.ring, n));
        } else if (which == "cyclic6") {
            file.ring = builtin_ring_c6();
            for (const char* n : {"cyclic6", "P1"})
                file.ideals.emplace_back(n, builtin_ideal(file.ring, n));
        } else {
            throw ParseError(0, 0, "unknown builtin input '" + which + "'");
        }
        return file;
    }
    std::ifstream in(o.input);
    if (!in) throw ParseError(0, 0, "cannot open '" + o.input + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    IdealFile file = parse_ideal_file(ss.str());
    if (!o.order.empty()) {
        MonomialOrder ord;
        if (o.order == "lex") ord = MonomialOrder::lex();
        else if (o.order == "grevlex") ord = MonomialOrder::grevlex();
        else throw ParseError(0, 0, "unknown order '" + o.order + "'");
        file.ring = file.ring.with_order(ord);
        for (auto& [name, gens] : file.ideals)
            for (auto& g : gens) g = poly_reorder(file.ring, g);
    }
    return file;
}

QIdeal pick(const IdealFile& file, const std::string& name)
{
    if (!file.has_ideal(name))
        throw ParseError(0, 0, "unknown ideal '" + name + "'");
    return QIdeal(file.ring, file.generators(name));
}

void maybe_runlog(const Opts& o, const RunLog& log)
{
    if (o.runlog.empty()) return;
    std::ofstream f(o.runlog);
    write_runlog(f, log);
}

void emit_basis(std::ostream& out, const Opts& o, const QRing& R,
                const std::vector<QPoly>& basis, bool certified,
                const std::vector<std::uint64_t>& primes, int rounds,
                long wall_micros, int exponent = -1)
{
    std::vector<std::string> strs = basis_strings(R, basis);
    if (o.json) {
        json j;
        j["result_basis"] = strs;
        j["certified"] = certified;
        j["primes_used"] = primes;
        j["rounds"] = rounds;
        j["wall_micros"] = wall_micros;
        if (exponent >= 0) j["exponent"] = exponent;
        out << j.dump(2) << "\n";
        return;
    }
    std::sort(strs.begin(), strs.end());
    for (const auto& s : strs) out << s << "\n";
    if (!primes.empty()) {
        out << "certified: " << (certified ? "yes" : "no") << "\n";
        out << "primes:";
        for (auto p : primes) out << " " << p;
        out << "\nrounds: " << rounds << "\n";
    }
    if (exponent >= 0) out << "exponent: " << exponent << "\n";
}

long elapsed_micros(std::chrono::steady_clock::time_point t0)
{
    return static_cast<long>(std::chrono::duration_cast<std::chrono::microseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count());
}

// ---- bench ----

struct BenchRow {
    std::string name;
    long direct_micros = -1;   // -1 = timeout/failure
    long modular_micros = -1;
    std::string equal = "n/a";
};

std::vector<QPoly> run_direct_op(const std::string& op, const QIdeal& I,
                                 const QIdeal& J)
{
    if (op == "gb") return groebner_basis(I);
    if (op == "quotient") return groebner_basis(quotient(I, J));
    if (op == "sat") return groebner_basis(saturate(I, J).first);
    if (op == "diq") return groebner_basis(diq(I, J));
    throw ParseError(0, 0, "unknown bench op '" + op + "'");
}

std::vector<QPoly> run_modular_op(const std::string& op, const QIdeal& I,
                                  const QIdeal& J, const ModularRunConfig& cfg)
{
    if (op == "quotient") return mod_quotient(I, J, cfg).basis;
    if (op == "sat") return mod_saturate(I, J, cfg).basis;
    if (op == "diq") return mod_diq(I, J, cfg).basis;
    throw ParseError(0, 0, "op '" + op + "' has no modular path");
}

BenchRow run_bench_case(const QRing& R, const BenchCase& bc,
                        const std::vector<QPoly>& igens,
                        const std::vector<QPoly>& jgens,
                        const ModularRunConfig& cfg)
{
    BenchRow row;
    row.name = bc.name;
    auto ms = std::chrono::milliseconds(
        static_cast<long>(bc.timeout_secs * 1000.0));

    std::vector<QPoly> direct, modular;
    bool direct_ok = false, modular_ok = false;
    {
        // fresh ideal objects so cached GBs do not distort the timing
        QIdeal I(R, igens), J(R, jgens);
        auto t0 = std::chrono::steady_clock::now();
        try {
            budget::Scope scope(ms);
            direct = run_direct_op(bc.op, I, J);
            direct_ok = true;
            row.direct_micros = elapsed_micros(t0);
        } catch (const TimeoutError&) {
        }
    }
    if (bc.op != "gb") {
        QIdeal I(R, igens), J(R, jgens);
        auto t0 = std::chrono::steady_clock::now();
        try {
            budget::Scope scope(ms);
            modular = run_modular_op(bc.op, I, J, cfg);
            modular_ok = true;
            row.modular_micros = elapsed_micros(t0);
        } catch (const TimeoutError&) {
        } catch (const ModularFailure&) {
        }
    }
    if (direct_ok && modular_ok)
        row.equal = direct == modular ? "yes" : "no";
    return row;
}

int cmd_bench(const Opts& o, std::ostream& out, std::ostream& err)
{
    (void)err;
    struct Suite {
        QRing ring;
        std::vector<std::pair<std::string, std::vector<QPoly>>> ideals;
        std::vector<BenchCase> benches;
    };
    std::vector<Suite> suites;

    if (o.input.empty()) {
        // built-in desk-scale suite over the stress family
        Suite s{builtin_ring_xyz(), {}, {}};
        const QRing& R = s.ring;
        QIdeal I3(R, builtin_ideal(R, "I3"));
        QIdeal I1(R, builtin_ideal(R, "I1"));
        QIdeal M2(R, parse_all(R, {"x^2", "x*y"}));
        QIdeal M3(R, parse_all(R, {"x^3", "x*y"}));
        s.ideals.emplace_back("I3m", product(I3, M2).gens);
        s.ideals.emplace_back("I3s", product(I3, M3).gens);
        // raw product generators: canonicalizing here would hide exactly the
        // coefficient growth the case is meant to exercise
        s.ideals.emplace_back("I1sq", product(I1, I1).gens);
        s.ideals.emplace_back("I1m", product(I1, M2).gens);
        s.ideals.emplace_back("I1", I1.gens);
        s.ideals.emplace_back("XY", parse_all(R, {"x", "y"}));
        s.benches.push_back({"I3m_quot", "quotient", "I3m", "XY", 120});
        s.benches.push_back({"I3s_sat", "sat", "I3s", "XY", 120});
        s.benches.push_back({"I3m_diq", "diq", "I3m", "XY", 120});
        s.benches.push_back({"I1m_quot", "quotient", "I1m", "XY", 120});
        if (o.slow)
            s.benches.push_back({"I1sq_quot", "quotient", "I1sq", "I1", 1800});
        suites.push_back(std::move(s));
        if (o.slow) {
            Suite c{builtin_ring_c6(), {}, {}};
            c.ideals.emplace_back("cyclic6", builtin_ideal(c.ring, "cyclic6"));
            c.ideals.emplace_back("P1", builtin_ideal(c.ring, "P1"));
            c.benches.push_back({"cyc6_quot", "quotient", "cyclic6", "P1", 1800});
            suites.push_back(std::move(c));
        }
    } else {
        IdealFile file = load_input(o);
        suites.push_back({file.ring, file.ideals, file.benches});
    }

    ModularRunConfig cfg = to_config(o);
    // benchmark the candidate pipeline (per-prime + CRT + reconstruction +
    // probabilistic screen); equality against the direct path is checked by
    // the harness itself, so the full membership certification would only
    // re-measure the direct path's GB work
    cfg.verify = ModularRunConfig::Verify::ptest_only;
    std::vector<BenchRow> rows;
    for (const auto& s : suites) {
        IdealFile file;
        file.ring = s.ring;
        file.ideals = s.ideals;
        for (const auto& bc : s.benches) {
            const auto& ig = file.generators(bc.ideal);
            static const std::vector<QPoly> none;
            const auto& jg = bc.by.empty() ? none : file.generators(bc.by);
            rows.push_back(run_bench_case(s.ring, bc, ig, jg, cfg));
        }
    }

    auto cell = [](long us) {
        return us < 0 ? std::string("TIMEOUT")
                      : std::to_string(us / 1000000.0).substr(0, 6) + "s";
    };
    if (o.json) {
        json j = json::array();
        for (const auto& r : rows) {
            json e;
            e["case"] = r.name;
            e["direct_micros"] = r.direct_micros;
            e["modular_micros"] = r.modular_micros;
            e["equal_results"] = r.equal;
            j.push_back(std::move(e));
        }
        out << j.dump(2) << "\n";
    } else {
        out << "case            direct      modular     equal\n";
        for (const auto& r : rows) {
            out << r.name;
            for (std::size_t i = r.name.size(); i < 16; ++i) out << ' ';
            std::string d = cell(r.direct_micros), m = cell(r.modular_micros);
            out << d;
            for (std::size_t i = d.size(); i < 12; ++i) out << ' ';
            out << m;
            for (std::size_t i = m.size(); i < 12; ++i) out << ' ';
            out << r.equal << "\n";
        }
    }
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err)
{
    CLI::App app{"Groebner-basis ideal operations with modular lifting"};
    app.require_subcommand(1);

    Opts o;
    if (const char* env = std::getenv("MODDIQ_SEED"))
        o.seed = std::strtoull(env, nullptr, 10);

    struct Sub {
        const char* name;
        const char* help;
        bool needs_by;
    };
    static const Sub subs[] = {
        {"gb", "reduced Groebner basis", false},
        {"quotient", "ideal quotient (I : J)", true},
        {"modquotient", "modular ideal quotient", true},
        {"sat", "saturation (I : J^inf)", true},
        {"modsat", "modular saturation", true},
        {"diq", "double ideal quotient (I : (I : J))", true},
        {"moddiq", "modular double ideal quotient", true},
        {"asstest", "modular associated-prime test", true},
        {"nonasstest", "modular non-associated test", true},
        {"idecomp", "intermediate primary decomposition", false},
        {"bench", "direct vs modular benchmark", false},
    };
    for (const auto& s : subs)
        add_common(app.add_subcommand(s.name, s.help), o, s.needs_by);

    try {
        std::vector<std::string> argv = args;
        argv.insert(argv.begin(), "moddiq");
        std::vector<const char*> cargv;
        for (auto& a : argv) cargv.push_back(a.c_str());
        app.parse(static_cast<int>(cargv.size()),
                  const_cast<char**>(cargv.data()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    std::optional<budget::Scope> scope;
    if (o.timeout > 0)
        scope.emplace(std::chrono::milliseconds(
            static_cast<long>(o.timeout * 1000.0)));

    try {
        if (cmd == "bench") return cmd_bench(o, out, err);

        IdealFile file = load_input(o);
        const QRing& R = file.ring;
        QIdeal I = pick(file, o.ideal);
        auto t0 = std::chrono::steady_clock::now();

        if (cmd == "gb") {
            emit_basis(out, o, R, groebner_basis(I), true, {}, 0,
                       elapsed_micros(t0));
            return 0;
        }
        if (cmd == "idecomp") {
            auto dec = intermediate_decomposition(I, to_config(o));
            if (o.json) {
                out << dec.report_json << "\n";
            } else {
                for (const auto& [U, c] : dec.components) {
                    out << "U = {";
                    for (std::size_t i = 0; i < U.size(); ++i)
                        out << (i ? "," : "") << R.vars[U[i]];
                    out << "}: ";
                    auto strs = basis_strings(R, groebner_basis(c.component));
                    for (std::size_t i = 0; i < strs.size(); ++i)
                        out << (i ? ", " : "") << strs[i];
                    out << (c.certified ? "  [certified]" : "  [uncertified]")
                        << "\n";
                }
                out << "cover verified: "
                    << (dec.certified_cover ? "yes" : "no") << "\n";
            }
            return dec.certified_cover ? 0 : 3;
        }

        QIdeal J = pick(file, o.by);
        if (cmd == "quotient") {
            emit_basis(out, o, R, groebner_basis(quotient(I, J)), true, {}, 0,
                       elapsed_micros(t0));
            return 0;
        }
        if (cmd == "sat") {
            auto [S, m] = saturate(I, J);
            emit_basis(out, o, R, groebner_basis(S), true, {}, 0,
                       elapsed_micros(t0), m);
            return 0;
        }
        if (cmd == "diq") {
            emit_basis(out, o, R, groebner_basis(diq(I, J)), true, {}, 0,
                       elapsed_micros(t0));
            return 0;
        }
        if (cmd == "modquotient" || cmd == "modsat" || cmd == "moddiq") {
            ModularResult res;
            try {
                if (cmd == "modquotient") res = mod_quotient(I, J, to_config(o));
                else if (cmd == "modsat") res = mod_saturate(I, J, to_config(o));
                else res = mod_diq(I, J, to_config(o));
            } catch (const ModularFailure& e) {
                err << "modular failure in " << e.stage << " after "
                    << e.rounds_used << " rounds: " << e.what() << "\n";
                return 3;
            }
            maybe_runlog(o, res.log);
            emit_basis(out, o, R, res.basis, res.certified, res.primes_used,
                       res.rounds, elapsed_micros(t0), res.exponent);
            return 0;
        }
        if (cmd == "asstest" || cmd == "nonasstest") {
            DivisorVerdict v = cmd == "asstest"
                                   ? associated_test_modular(I, J, to_config(o))
                                   : non_associated_test(I, J, to_config(o));
            maybe_runlog(o, v.log);
            const char* verdict =
                v.verdict == DivisorVerdict::Kind::associated ? "associated"
                : v.verdict == DivisorVerdict::Kind::not_associated
                    ? "not_associated"
                    : "inconclusive";
            if (o.json) {
                json j;
                j["verdict"] = verdict;
                j["reason"] = v.reason;
                j["witness"] = basis_strings(R, v.witness);
                j["witness_primes"] = v.witness_primes;
                j["wall_micros"] = elapsed_micros(t0);
                out << j.dump(2) << "\n";
            } else {
                out << verdict << " (" << v.reason << ")\n";
            }
            return v.verdict == DivisorVerdict::Kind::inconclusive ? 3 : 0;
        }
        err << "unknown subcommand '" << cmd << "'\n";
        return 2;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const TimeoutError&) {
        err << "timeout\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace moddiq
