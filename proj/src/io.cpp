#include <moddiq/io.hpp>

#include <cctype>
#include <sstream>

namespace moddiq {

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;
    int line;

    Lexer(const std::string& str, int line_no) : s(str), line(line_no) {}

    void skip_ws()
    {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool eof()
    {
        skip_ws();
        return pos >= s.size();
    }
    char peek()
    {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c)
    {
        if (peek() == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg)
    {
        throw ParseError(line, static_cast<int>(pos) + 1, msg);
    }
    mpz_class integer()
    {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return mpz_class(s.substr(start, pos - start));
    }
    std::string ident()
    {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        else
            fail("expected identifier");
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }
};

int var_index(const QRing& R, const std::string& name, Lexer& lx)
{
    for (int v = 0; v < R.nvars(); ++v)
        if (R.vars[v] == name) return v;
    lx.fail("unknown variable '" + name + "'");
}

}  // namespace

QPoly parse_poly(const QRing& R, const std::string& text, int line_no)
{
    Lexer lx(text, line_no);
    std::vector<QPoly::Term> terms;
    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        if (lx.accept('-')) sign = -1;
        else if (lx.accept('+')) sign = 1;
        else if (!first) lx.fail("expected '+' or '-' between terms");
        first = false;

        mpq_class coef(1);
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            mpz_class num = lx.integer();
            mpz_class den(1);
            if (lx.accept('/')) {
                den = lx.integer();
                if (den == 0) lx.fail("zero denominator");
            }
            coef = mpq_class(num, den);
            coef.canonicalize();
            have_coef = true;
            lx.accept('*');
        }
        Monomial m(R.vars.size());
        bool have_power = false;
        while (!lx.eof()) {
            char c = lx.peek();
            if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) {
                if (c == '*') { ++lx.pos; continue; }
                break;
            }
            int v = var_index(R, lx.ident(), lx);
            std::uint64_t e = 1;
            if (lx.accept('^')) {
                if (lx.peek() == '-') lx.fail("negative exponent");
                mpz_class ez = lx.integer();
                if (!ez.fits_uint_p()) lx.fail("exponent too large");
                e = ez.get_ui();
            }
            std::uint64_t tot = std::uint64_t{m.e[v]} + e;
            if (tot > 0xffffffffull) lx.fail("exponent overflow");
            m.e[v] = static_cast<std::uint32_t>(tot);
            have_power = true;
        }
        if (!have_coef && !have_power) lx.fail("expected term");
        if (sign < 0) coef = -coef;
        terms.push_back({std::move(m), std::move(coef)});
    }
    if (terms.empty()) return {};
    return poly_normalize(R, std::move(terms));
}

bool IdealFile::has_ideal(const std::string& name) const
{
    for (auto& [n, g] : ideals)
        if (n == name) return true;
    return false;
}

const std::vector<QPoly>& IdealFile::generators(const std::string& name) const
{
    for (auto& [n, g] : ideals)
        if (n == name) return g;
    throw std::runtime_error("unknown ideal '" + name + "'");
}

namespace {

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

MonomialOrder parse_order_spec(const QRing& R, const std::string& spec, int line)
{
    std::string s = trim(spec);
    if (s == "lex") return MonomialOrder::lex();
    if (s == "grevlex") return MonomialOrder::grevlex();
    if (s.rfind("block(", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(6, s.size() - 7);
        std::vector<MonomialOrder::Block> blocks;
        std::stringstream bs(inner);
        std::string blk;
        while (std::getline(bs, blk, ';')) {
            MonomialOrder::Block b;
            std::string names = blk;
            auto colon = blk.rfind(':');
            if (colon != std::string::npos) {
                std::string sub = trim(blk.substr(colon + 1));
                if (sub == "lex") b.sub = MonomialOrder::Kind::lex;
                else if (sub == "grevlex") b.sub = MonomialOrder::Kind::grevlex;
                else throw ParseError(line, 1, "unknown block sub-order '" + sub + "'");
                names = blk.substr(0, colon);
            }
            std::stringstream vs(names);
            std::string v;
            while (std::getline(vs, v, ',')) {
                v = trim(v);
                if (v.empty()) continue;
                int idx = -1;
                for (int i = 0; i < R.nvars(); ++i)
                    if (R.vars[i] == v) idx = i;
                if (idx < 0) throw ParseError(line, 1, "unknown variable '" + v + "' in order");
                b.vars.push_back(idx);
            }
            if (!b.vars.empty()) blocks.push_back(std::move(b));
        }
        std::vector<bool> covered(R.nvars(), false);
        for (auto& b : blocks)
            for (int v : b.vars) {
                if (covered[v]) throw ParseError(line, 1, "variable repeated in block order");
                covered[v] = true;
            }
        for (int v = 0; v < R.nvars(); ++v)
            if (!covered[v]) throw ParseError(line, 1, "block order must cover all variables");
        return MonomialOrder::block(std::move(blocks));
    }
    throw ParseError(line, 1, "unknown order '" + s + "'");
}

}  // namespace

IdealFile parse_ideal_file(const std::string& text)
{
    IdealFile file;
    file.ring.order = MonomialOrder::grevlex();
    bool have_ring = false;
    std::string pending_order;
    int pending_order_line = 0;

    std::vector<std::pair<std::string, std::vector<QPoly>>>& ideals = file.ideals;
    std::string current;  // name of the ideal collecting generator lines
    std::vector<std::pair<std::string, std::pair<int, std::string>>> poly_lines;
    // (ideal name, (line, text)), parsed after the ring is known

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::vector<std::tuple<std::string, std::string, int>> computed;  // name, expr, line

    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string s = trim(raw);
        if (s.empty()) continue;

        if (s.rfind("ring:", 0) == 0) {
            std::stringstream vs(s.substr(5));
            std::string v;
            file.ring.vars.clear();
            while (std::getline(vs, v, ',')) {
                v = trim(v);
                if (v.empty()) throw ParseError(line_no, 1, "empty variable name");
                for (auto& existing : file.ring.vars)
                    if (existing == v)
                        throw ParseError(line_no, 1, "duplicate variable '" + v + "'");
                file.ring.vars.push_back(v);
            }
            if (file.ring.vars.empty()) throw ParseError(line_no, 1, "ring needs at least one variable");
            have_ring = true;
            current.clear();
        } else if (s.rfind("order:", 0) == 0) {
            pending_order = s.substr(6);
            pending_order_line = line_no;
            current.clear();
        } else if (s.rfind("ideal", 0) == 0 &&
                   (s.size() == 5 || s[5] == ' ' || s[5] == '\t')) {
            std::string rest = trim(s.substr(5));
            auto colon = rest.find(':');
            auto eq = rest.find('=');
            if (eq != std::string::npos && (colon == std::string::npos || eq < colon)) {
                std::string name = trim(rest.substr(0, eq));
                if (name.empty()) throw ParseError(line_no, 1, "ideal needs a name");
                computed.push_back({name, trim(rest.substr(eq + 1)), line_no});
                current.clear();
            } else {
                if (colon == std::string::npos)
                    throw ParseError(line_no, 1, "expected ':' after ideal name");
                std::string name = trim(rest.substr(0, colon));
                if (name.empty()) throw ParseError(line_no, 1, "ideal needs a name");
                for (auto& [n, g] : ideals)
                    if (n == name) throw ParseError(line_no, 1, "duplicate ideal '" + name + "'");
                ideals.push_back({name, {}});
                current = name;
                std::string tail = trim(rest.substr(colon + 1));
                if (!tail.empty()) poly_lines.push_back({name, {line_no, tail}});
            }
        } else if (s.rfind("bench", 0) == 0 &&
                   (s.size() == 5 || s[5] == ' ' || s[5] == '\t')) {
            std::string rest = trim(s.substr(5));
            auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw ParseError(line_no, 1, "expected ':' after bench name");
            BenchCase bc;
            bc.name = trim(rest.substr(0, colon));
            std::stringstream ws(rest.substr(colon + 1));
            std::vector<std::string> words;
            std::string w;
            while (ws >> w) words.push_back(w);
            std::size_t i = 0;
            if (i < words.size()) bc.op = words[i++];
            if (i < words.size()) bc.ideal = words[i++];
            while (i < words.size()) {
                if (words[i] == "by" && i + 1 < words.size()) {
                    bc.by = words[i + 1];
                    i += 2;
                } else if (words[i].rfind("timeout=", 0) == 0) {
                    bc.timeout_secs = std::stod(words[i].substr(8));
                    ++i;
                } else {
                    throw ParseError(line_no, 1, "bad bench argument '" + words[i] + "'");
                }
            }
            if (bc.op.empty() || bc.ideal.empty())
                throw ParseError(line_no, 1, "bench needs an operation and an ideal");
            file.benches.push_back(std::move(bc));
            current.clear();
        } else {
            if (current.empty())
                throw ParseError(line_no, 1, "polynomial outside an ideal declaration");
            poly_lines.push_back({current, {line_no, s}});
        }
    }

    if (!have_ring) throw ParseError(1, 1, "missing ring declaration");
    if (!pending_order.empty())
        file.ring.order = parse_order_spec(file.ring, pending_order, pending_order_line);

    for (auto& [name, ln] : poly_lines) {
        QPoly f = parse_poly(file.ring, ln.second, ln.first);
        for (auto& [n, g] : ideals)
            if (n == name) g.push_back(std::move(f));
    }

    // computed ideals: product(A,B), power(A,n), intersect(A,B)
    for (auto& [name, expr, line] : computed) {
        auto paren = expr.find('(');
        if (paren == std::string::npos || expr.back() != ')')
            throw ParseError(line, 1, "bad ideal expression");
        std::string fn = trim(expr.substr(0, paren));
        std::string args = expr.substr(paren + 1, expr.size() - paren - 2);
        auto comma = args.find(',');
        auto lookup = [&](const std::string& nm) -> std::vector<QPoly>& {
            std::string key = trim(nm);
            for (auto& [n, g] : ideals)
                if (n == key) return g;
            throw ParseError(line, 1, "unknown ideal '" + key + "'");
        };
        std::vector<QPoly> result;
        if (fn == "power") {
            if (comma == std::string::npos) throw ParseError(line, 1, "power needs two arguments");
            auto& base = lookup(args.substr(0, comma));
            int n = std::stoi(trim(args.substr(comma + 1)));
            if (n < 1) throw ParseError(line, 1, "power exponent must be >= 1");
            result = groebner_basis(ideal_pow(QIdeal(file.ring, base), n));
        } else if (fn == "product" || fn == "intersect") {
            if (comma == std::string::npos) throw ParseError(line, 1, fn + " needs two arguments");
            QIdeal A(file.ring, lookup(args.substr(0, comma)));
            QIdeal B(file.ring, lookup(args.substr(comma + 1)));
            QIdeal C = fn == "product" ? product(A, B) : intersect(A, B);
            result = groebner_basis(C);
        } else {
            throw ParseError(line, 1, "unknown ideal expression '" + fn + "'");
        }
        for (auto& [n, g] : ideals)
            if (n == name) throw ParseError(line, 1, "duplicate ideal '" + name + "'");
        ideals.push_back({name, std::move(result)});
    }

    for (auto& bc : file.benches) {
        if (!file.has_ideal(bc.ideal))
            throw ParseError(1, 1, "bench '" + bc.name + "' references unknown ideal '" + bc.ideal + "'");
        if (!bc.by.empty() && !file.has_ideal(bc.by))
            throw ParseError(1, 1, "bench '" + bc.name + "' references unknown ideal '" + bc.by + "'");
    }
    return file;
}

}  // namespace moddiq
