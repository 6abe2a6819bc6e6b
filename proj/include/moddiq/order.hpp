#ifndef MODDIQ_ORDER_HPP
#define MODDIQ_ORDER_HPP

#include <string>
#include <vector>

#include <moddiq/monomial.hpp>

namespace moddiq {

// Total, multiplicative well-order on exponent vectors: lex, grevlex, or a
// block (product) order whose blocks each carry a lex/grevlex sub-order.
class MonomialOrder {
public:
    enum class Kind { lex, grevlex, block };

    struct Block {
        std::vector<int> vars;  // variable indices, significance order
        Kind sub = Kind::grevlex;
    };

    Kind kind = Kind::grevlex;
    std::vector<Block> blocks;  // only for Kind::block

    static MonomialOrder lex() { return MonomialOrder{Kind::lex, {}}; }
    static MonomialOrder grevlex() { return MonomialOrder{Kind::grevlex, {}}; }
    static MonomialOrder block(std::vector<Block> bs)
    {
        return MonomialOrder{Kind::block, std::move(bs)};
    }

    // -1 / 0 / +1 for a < b / a == b / a > b
    int cmp(const Monomial& a, const Monomial& b) const
    {
        check_arity(a, b);
        switch (kind) {
            case Kind::lex: return cmp_lex_all(a, b);
            case Kind::grevlex: return cmp_grevlex_all(a, b);
            case Kind::block: break;
        }
        for (const Block& blk : blocks) {
            int c = blk.sub == Kind::lex ? cmp_lex(a, b, blk.vars)
                                         : cmp_grevlex(a, b, blk.vars);
            if (c) return c;
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }

    // Normalize to a block list over variables 0..n-1 (used to embed this
    // order as the tail of an elimination order).
    std::vector<Block> to_blocks(int nvars) const
    {
        if (kind == Kind::block) return blocks;
        std::vector<int> all(nvars);
        for (int i = 0; i < nvars; ++i) all[i] = i;
        return {Block{all, kind}};
    }

    // Elimination order: `front` variables dominate (grevlex among them),
    // then this order restricted to the remaining variables.
    MonomialOrder eliminating(const std::vector<int>& front, int nvars) const
    {
        std::vector<bool> in_front(nvars, false);
        for (int v : front) in_front[v] = true;
        std::vector<Block> bs;
        if (!front.empty()) bs.push_back(Block{front, Kind::grevlex});
        for (const Block& blk : to_blocks(nvars)) {
            Block rest;
            rest.sub = blk.sub;
            for (int v : blk.vars)
                if (!in_front[v]) rest.vars.push_back(v);
            if (!rest.vars.empty()) bs.push_back(std::move(rest));
        }
        return block(std::move(bs));
    }

    // Stable textual key for GB caches and reproducible output.
    std::string signature() const
    {
        switch (kind) {
            case Kind::lex: return "lex";
            case Kind::grevlex: return "grevlex";
            case Kind::block: break;
        }
        std::string s = "block(";
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i) s += ';';
            for (std::size_t j = 0; j < blocks[i].vars.size(); ++j) {
                if (j) s += ',';
                s += std::to_string(blocks[i].vars[j]);
            }
            s += blocks[i].sub == Kind::lex ? ":lex" : ":grevlex";
        }
        s += ')';
        return s;
    }

    bool operator==(const MonomialOrder& o) const
    {
        return signature() == o.signature();
    }

private:
    static int cmp_lex_all(const Monomial& a, const Monomial& b)
    {
        for (std::size_t i = 0; i < a.arity(); ++i) {
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        }
        return 0;
    }

    static int cmp_grevlex_all(const Monomial& a, const Monomial& b)
    {
        std::uint64_t da = a.degree(), db = b.degree();
        if (da != db) return da > db ? 1 : -1;
        // equal degree: last variable with differing exponent; smaller wins
        for (std::size_t i = a.arity(); i-- > 0;) {
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        }
        return 0;
    }

    static int cmp_lex(const Monomial& a, const Monomial& b,
                       const std::vector<int>& vars)
    {
        for (int v : vars) {
            if (a.e[v] != b.e[v]) return a.e[v] > b.e[v] ? 1 : -1;
        }
        return 0;
    }

    static int cmp_grevlex(const Monomial& a, const Monomial& b,
                           const std::vector<int>& vars)
    {
        std::uint64_t da = 0, db = 0;
        for (int v : vars) { da += a.e[v]; db += b.e[v]; }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = vars.size(); i-- > 0;) {
            int v = vars[i];
            if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? 1 : -1;
        }
        return 0;
    }
};

}  // namespace moddiq

#endif
