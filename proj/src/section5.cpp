#include <unordered_set>

#include "qtor/torep.hpp"
#include "torep_internal.hpp"

namespace qtor {

std::pair<RationalQ, RationalQ> tp_coeffs(std::int64_t a, std::int64_t b) {
    if (a == b || a == b + 2 || a + 2 == b) throw TemplateError("tensor block needs a != b, b +- 2");
    LaurentPoly den = LaurentPoly::qpow(b) - LaurentPoly::qpow(a);
    RationalQ c1(LaurentPoly::qpow(b - 1) - LaurentPoly::qpow(a + 1), den);
    RationalQ c2(LaurentPoly::qpow(b + 1) - LaurentPoly::qpow(a - 1), den);
    return {c1, c2};
}

namespace {

struct Target {
    YPart y;
    RationalQ c;
    std::int64_t base;
};

struct Template {
    std::string name;
    std::vector<Target> plus, minus;
};

// A_{i,l}^{e} applied to y
YPart mulA(const RootSystem& rs, const YPart& y, int i, std::int64_t l, int e) {
    YPart a = a_ypart(rs, i, l);
    return ypart_mul(y, e > 0 ? a : ypart_inv(a));
}

Template match(const RootSystem& rs, const YPart& y, int i) {
    Sl2Monomial row = sl2_row(y, i);
    Template t;
    RationalQ one(1), two(qint(2));
    auto fail = [&]() -> Template {
        throw TemplateError("no sl2 template for row " + std::to_string(i) + " " + sl2_str(row) + " of " +
                            ypart_str(y));
    };
    std::vector<std::int64_t> pos, neg;
    for (auto [l, u] : row) {
        if (u == 1) pos.push_back(l);
        else if (u == -1) neg.push_back(l);
        else return fail();
    }
    if (pos.empty() && neg.empty()) {
        t.name = "zero";
    } else if (pos.size() == 1 && neg.empty()) {
        std::int64_t x = pos[0];
        t.name = "single";
        t.minus.push_back({mulA(rs, y, i, x + 1, -1), one, x + 1});
    } else if (pos.empty() && neg.size() == 1) {
        std::int64_t v = neg[0];
        t.name = "single";
        t.plus.push_back({mulA(rs, y, i, v - 1, 1), one, v - 1});
    } else if (pos.size() == 1 && neg.size() == 1) {
        std::int64_t x = pos[0], v = neg[0];
        if (v == x + 2) return fail();
        if (v == x + 4) {
            t.name = "kr_mid";
            t.plus.push_back({mulA(rs, y, i, x + 3, 1), two, x + 3});
            t.minus.push_back({mulA(rs, y, i, x + 1, -1), two, x + 1});
        } else {
            t.name = "pair";
            t.plus.push_back({mulA(rs, y, i, v - 1, 1), one, v - 1});
            t.minus.push_back({mulA(rs, y, i, x + 1, -1), one, x + 1});
        }
    } else if (pos.size() == 2 && neg.empty()) {
        std::int64_t a = pos[0], b = pos[1];
        if (b == a + 2) {
            t.name = "kr_top";
            t.minus.push_back({mulA(rs, y, i, a + 3, -1), one, a + 3});
        } else {
            auto [c1, c2] = tp_coeffs(a, b);
            t.name = "tp_top";
            t.minus.push_back({mulA(rs, y, i, a + 1, -1), c1, a + 1});
            t.minus.push_back({mulA(rs, y, i, b + 1, -1), c2, b + 1});
        }
    } else if (neg.size() == 2 && pos.empty()) {
        std::int64_t a = neg[0] - 2, b = neg[1] - 2;
        if (b == a + 2) {
            t.name = "kr_bot";
            t.plus.push_back({mulA(rs, y, i, a + 1, 1), one, a + 1});
        } else {
            auto [c1, c2] = tp_coeffs(a, b);
            t.name = "tp_bot";
            // to Y_{a+2}^{-1} Y_b and to Y_a Y_{b+2}^{-1}
            t.plus.push_back({mulA(rs, y, i, b + 1, 1), c1, b + 1});
            t.plus.push_back({mulA(rs, y, i, a + 1, 1), c2, a + 1});
        }
    } else {
        return fail();
    }
    return t;
}

Monomial shifted_anchor(const RootSystem& rs, int s, const Window& win) {
    Monomial m = level2_anchor(rs, s);
    std::int64_t lo = -1 - 4 * static_cast<std::int64_t>(s);
    std::int64_t t = 0;
    while (lo + 4 * t < win.lmin) ++t;
    return tau(m, 4 * t, Delta(-2 * t));
}

}  // namespace

LoopModule build_section5(int smax, Window win) {
    if (smax < 0) throw TorepError("smax must be >= 0");
    RootSystem rs(3, 0);
    std::vector<Monomial> anchors;
    for (int s = 0; s <= smax; ++s) {
        Monomial a = level2_anchor(rs, s);
        if (!win.contains(a.y))
            throw TorepError("window does not contain the anchor of s=" + std::to_string(s) + ": " + a.str());
        anchors.push_back(a);
    }
    LoopModule M;
    M.flavor = Flavor::section5;
    M.smax = smax;
    M.graph = generate(rs, anchors, win);
    detail::init_tables(M);

    M.level.assign(M.dim(), -1);
    for (int s = 0; s <= smax; ++s) {
        CrystalGraph g = generate(rs, {anchors[static_cast<std::size_t>(s)]}, win);
        for (auto& m : g.nodes) {
            std::size_t k = M.graph.index_of(m.y);
            if (M.level[k] >= 0) throw TorepError("crystals of two levels meet at " + m.str());
            M.level[k] = s;
        }
    }
    std::unordered_set<YPart, YPartHash> halo;
    {
        CrystalGraph h = generate(rs, {shifted_anchor(rs, smax + 1, win)}, win);
        for (auto& m : h.nodes) halo.insert(m.y);
    }

    M.templ.assign(M.dim(), std::vector<std::string>(4));
    for (std::size_t k = 0; k < M.dim(); ++k) {
        const Monomial& m = M.graph.nodes[k];
        for (int i = 0; i < 4; ++i) {
            auto ui = static_cast<std::size_t>(i);
            Template t = match(rs, m.y, i);
            M.templ[k][ui] = t.name;
            for (Sign s : {Sign::plus, Sign::minus}) {
                auto us = static_cast<std::size_t>(slot(s));
                for (auto& tg : s == Sign::plus ? t.plus : t.minus) {
                    auto dst = M.graph.find(tg.y);
                    if (!dst) {
                        if (win.contains(tg.y) && !halo.count(tg.y))
                            throw TemplateError("template " + t.name + " at " + m.str() + " needs " +
                                                ypart_str(tg.y) + ", which is in no crystal");
                        M.xok[k][ui][us] = false;
                        continue;
                    }
                    Weight want = s == Sign::plus ? m.wt + rs.alpha(i) : m.wt - rs.alpha(i);
                    if (!(M.graph.nodes[*dst].wt == want))
                        throw TemplateError("weight mismatch on " + m.str() + " -> " + ypart_str(tg.y));
                    M.x[k][ui][us].push_back({*dst, tg.c, tg.base, tg.c.is_one()});
                }
            }
        }
    }

    // phi^+_s = (q - q^-1)[x^+_s, x^-_0]: collect the diagonal per base
    for (std::size_t k = 0; k < M.dim(); ++k)
        for (std::size_t i = 0; i < 4; ++i) {
            bool ok = M.xok[k][i][0] && M.xok[k][i][1];
            for (auto& t : M.x[k][i][1]) ok = ok && M.xok[t.dst][i][0];
            for (auto& t : M.x[k][i][0]) ok = ok && M.xok[t.dst][i][1];
            if (!ok) {
                M.phiok[k][i] = false;
                continue;
            }
            std::map<std::int64_t, RationalQ> diag;
            for (auto& t : M.x[k][i][1])
                for (auto& u : M.x[t.dst][i][0])
                    if (u.dst == k) diag[u.base] += t.c * u.c;
            for (auto& u : M.x[k][i][0])
                for (auto& t : M.x[u.dst][i][1])
                    if (t.dst == k) diag[u.base] -= u.c * t.c;
            for (auto& [b, w] : diag)
                if (!w.is_zero()) M.phi[k][i].push_back({w, b});
        }
    detail::finish_interior(M);
    return M;
}

RationalQ s5_crystal_scale(const LoopModule& M, std::size_t k) {
    if (M.flavor != Flavor::section5) return RationalQ(1);
    int s = M.level.at(k);
    if (s < 1) return RationalQ(1);
    YPart y = level2_anchor(M.rs(), s).y;
    const YPart& me = M.graph.nodes[k].y;
    for (int j = 0; j < 4; ++j) {
        if (!y.empty() && !me.empty() && y.size() == me.size()) {
            std::int64_t d = me.front().l - y.front().l;
            if (d % 4 == 0 && ypart_shift(y, d) == me) return RationalQ::qpow(-1);
        }
        y = phi_ypart(3, y);
    }
    return RationalQ(1);
}

}  // namespace qtor
