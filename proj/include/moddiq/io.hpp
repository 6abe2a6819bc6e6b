#ifndef MODDIQ_IO_HPP
#define MODDIQ_IO_HPP

#include <string>
#include <vector>

#include <moddiq/idealops.hpp>

namespace moddiq {

inline std::string coeff_to_string(const mpq_class& c)
{
    return c.get_str();
}

inline std::string coeff_to_string(std::uint64_t c)
{
    return std::to_string(c);
}

template <class F>
std::string to_string(const Ring<F>& R, const Poly<F>& f)
{
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.t.size(); ++i) {
        const auto& tm = f.t[i];
        std::string c = coeff_to_string(tm.c);
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c = c.substr(1);
        if (i == 0) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        std::string mono;
        for (int v = 0; v < R.nvars(); ++v) {
            if (!tm.m.e[v]) continue;
            if (!mono.empty()) mono += "*";
            mono += R.vars[v];
            if (tm.m.e[v] > 1) mono += "^" + std::to_string(tm.m.e[v]);
        }
        if (mono.empty()) {
            s += c;
        } else if (c == "1") {
            s += mono;
        } else {
            s += c + "*" + mono;
        }
    }
    return s;
}

template <class F>
std::vector<std::string> basis_strings(const Ring<F>& R,
                                       const std::vector<Poly<F>>& G)
{
    std::vector<std::string> out;
    for (const auto& g : G) out.push_back(to_string(R, g));
    return out;
}

// Parse one polynomial in the given ring.  Grammar:
//   poly  := ["+"|"-"] term (("+"|"-") term)*
//   term  := coef ["*"]? power ("*"? power)* | coef | power ("*"? power)*
//   power := ident ["^" nat] ; coef := int ["/" int]
QPoly parse_poly(const QRing& R, const std::string& text, int line_no = 0);

struct BenchCase {
    std::string name;
    std::string op;       // quotient|sat|diq|gb
    std::string ideal;
    std::string by;
    double timeout_secs = 120.0;
};

struct IdealFile {
    QRing ring;
    std::vector<std::pair<std::string, std::vector<QPoly>>> ideals;
    std::vector<BenchCase> benches;

    bool has_ideal(const std::string& name) const;
    const std::vector<QPoly>& generators(const std::string& name) const;
};

// Text format:
//   ring: x,y,z
//   order: lex | grevlex | block(x,y;z)
//   ideal NAME:
//     <one generator per line>
//   ideal NAME = product(A,B) | power(A,n) | intersect(A,B)
//   bench NAME: OP IDEAL [by IDEAL] [timeout=SECS]
//   # comment
IdealFile parse_ideal_file(const std::string& text);

}  // namespace moddiq

#endif
