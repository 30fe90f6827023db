#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "qtor/unity.hpp"

using namespace qtor;

static YPart Y(const std::string& s) { return parse_ypart(s); }

static const SpecializedModule& thin311() {
    static SpecializedModule S = specialize_thin(RootSystem::for_anchor(3, 1), 1, 1);
    return S;
}

static const SpecializedModule& s5L1() {
    static SpecializedModule S = specialize_section5(1);
    return S;
}

static std::size_t at(const SpecializedModule& S, const std::string& s) {
    auto y = Y(s);
    for (std::size_t k = 0; k < S.dim(); ++k)
        if (S.basis[k] == y) return k;
    FAIL("no basis vector " << s);
    return 0;
}

TEST_CASE("periods and exclusions") {
    CHECK(root_period(3, 1) == 4);
    CHECK(root_period(3, 3) == 4);
    CHECK(root_period(3, 2) == 2);
    CHECK(root_period(5, 3) == 2);
    CHECK_THROWS_AS(root_period(5, 2), UnityError);
    CHECK_THROWS_AS(specialize_thin(RootSystem::for_anchor(3, 2), 2, 1), UnityError);
    CHECK_THROWS_AS(specialize_thin(RootSystem::for_anchor(3, 1), 1, 0), UnityError);
}

TEST_CASE("dimensions L C(n+1,l)") {
    struct C {
        int n, ell, L;
        std::size_t dim;
    };
    for (C c : {C{3, 1, 1, 4}, C{3, 1, 2, 8}, C{3, 2, 2, 12}, C{3, 3, 1, 4}, C{5, 3, 2, 40}, C{5, 1, 1, 6}}) {
        auto S = specialize_thin(RootSystem::for_anchor(c.n, c.ell), c.ell, c.L);
        INFO(c.n << " " << c.ell << " " << c.L);
        CHECK(S.dim() == c.dim);
        CHECK(S.N == root_period(c.n, c.ell) * c.L);
        for (auto& y : S.basis)
            for (auto& f : y) CHECK((f.l >= 0 && f.l < S.N));
        for (auto& [m, mult] : qcharacter(S)) CHECK(mult == 1);
    }
}

TEST_CASE("section 5 dimensions 16 L^2") {
    CHECK(s5L1().dim() == 16);
    auto S = specialize_section5(2);
    CHECK(S.dim() == 64);
    std::size_t lvl1 = 0;
    for (int s : S.level) lvl1 += s == 1;
    CHECK(lvl1 == 32);
    CHECK_THROWS_AS(specialize_section5(0), UnityError);
}

TEST_CASE("Gamma image of the generic crystal") {
    for (int ell : {1, 2}) {
        int L = 2;
        auto rs = RootSystem::for_anchor(3, ell);
        auto S = specialize_thin(rs, ell, L);
        LoopModule G = build_thin(rs, ell, {-20, 20});
        std::set<YPart> img;
        for (auto& m : G.graph.nodes) img.insert(gamma_N(m, S.N).y);
        std::set<YPart> basis(S.basis.begin(), S.basis.end());
        CHECK(img == basis);
        // one fundamental domain already gives everything: L periods of C(4, l) monomials
        std::set<YPart> dom;
        for (auto& m : G.graph.nodes) {
            std::int64_t lo = m.y.front().l;
            for (auto& f : m.y) lo = std::min(lo, f.l);
            if (lo >= 0 && lo < S.N) dom.insert(gamma_N(m, S.N).y);
        }
        CHECK(dom == basis);
    }
}

TEST_CASE("action example at eps = i") {
    const auto& S = thin311();
    std::size_t m0 = at(S, "Y_{1,0}Y_{0,1}^{-1}"), m1 = at(S, "Y_{2,1}Y_{1,2}^{-1}");
    CycloElem one(4, 1);
    CHECK(act_x(S, Sign::plus, 1, 1, {{m1, one}}) == CycloVector{{m0, S.eps(1)}});
    CHECK(act_x(S, Sign::minus, 1, 0, {{m0, one}}) == CycloVector{{m1, one}});
    // periodic in r with period N
    CHECK(act_x(S, Sign::plus, 1, 5, {{m1, one}}) == act_x(S, Sign::plus, 1, 1, {{m1, one}}));
    CHECK(act_x(S, Sign::plus, 1, 0, {{m0, one}}).empty());
}

TEST_CASE("oracle: specialized action is the generic action at eps") {
    std::mt19937_64 rng(5);
    struct C {
        int n, ell, L;
    };
    int cases = 0;
    for (C c : {C{3, 1, 2}, C{3, 2, 2}, C{3, 3, 1}}) {
        auto rs = RootSystem::for_anchor(c.n, c.ell);
        auto S = specialize_thin(rs, c.ell, c.L);
        LoopModule G = build_thin(rs, c.ell, {-24, 24});
        for (int t = 0; t < 200; ++t) {
            std::size_t k = rng() % S.dim();
            int i = static_cast<int>(rng() % 4);
            Sign s = rng() % 2 ? Sign::plus : Sign::minus;
            std::int64_t r = static_cast<std::int64_t>(rng() % 21) - 10;
            std::size_t g = G.graph.index_of(S.generic[k]);
            REQUIRE(G.interior[g]);
            CycloVector want;
            for (auto& [d, c2] : act_x(G, s, i, r, basis_vector(g))) {
                std::size_t dd = 0;
                YPart res = gamma_N(G.graph.nodes[d], S.N).y;
                while (!(S.basis[dd] == res)) ++dd;
                want.emplace(dd, eval_cyclotomic(c2, S.N));
            }
            CHECK(act_x(S, s, i, r, {{k, CycloElem(S.N, 1)}}) == want);
            ++cases;
        }
    }
    CHECK(cases >= 500);
}

TEST_CASE("oracle: h at eps against the closed form") {
    std::mt19937_64 rng(9);
    std::vector<SpecializedModule> mods{thin311(), specialize_thin(RootSystem::for_anchor(3, 2), 2, 2), s5L1()};
    int cases = 0;
    for (int t = 0; t < 540; ++t) {
        const auto& S = mods[static_cast<std::size_t>(t) % mods.size()];
        std::size_t k = rng() % S.dim();
        int i = static_cast<int>(rng() % 4);
        int m = static_cast<int>(rng() % 3) + 1;
        if (rng() % 2) m = -m;
        int am = m > 0 ? m : -m;
        // sum of u eps^{ml} [m]_eps / m over the row-i factors
        CycloElem qd = S.eps(1) - S.eps(-1);
        CycloElem qm = (S.eps(am) - S.eps(-am)) / qd;
        CycloElem want(S.N);
        for (auto& f : S.basis[k])
            if (f.i == i) want += CycloElem(S.N, f.u) * S.eps(m * f.l) * qm / CycloElem(S.N, am);
        CHECK(h_eigen(S, i, m, k) == want);
        ++cases;
    }
    CHECK(cases >= 500);
}

TEST_CASE("relations at eps: thin n=3 l=1 L=1") {
    auto rep = relation_check_eps(thin311(), all_relations(), RelRanges{});
    CHECK(rep.ok());
    CHECK(rep.total().checked == rep.total().zero);
    CHECK(rep.by_rel.at("kx").zero == rep.by_rel.at("kx").checked);
    auto j = to_json(thin311(), rep);
    CHECK(j["ok"] == true);
    CHECK(j["module"]["dimension"] == 4);
}

TEST_CASE("relations at eps: section 5 L=1") {
    auto rep = relation_check_eps(s5L1(), all_relations(), RelRanges{2, {1, -1, 2}});
    CHECK(rep.ok());
    CHECK(rep.total().zero > 10000);
}

TEST_CASE("relations at eps catch a perturbed coefficient") {
    SpecializedModule S = thin311();
    std::size_t k = 0;
    while (S.x[k][1][0].empty()) ++k;
    S.x[k][1][0][0].c = CycloElem(S.N, 2);
    auto rep = relation_check_eps(S, {Rel::xpxm}, RelRanges{1, {1}});
    CHECK(!rep.ok());
    CHECK(!rep.outcomes.empty());
}

TEST_CASE("cyclic generation") {
    CHECK(cyclic_generation_check(thin311()).ok);
    CHECK(cyclic_generation_check(specialize_thin(RootSystem::for_anchor(3, 2), 2, 2)).ok);
    auto sum = direct_sum(thin311(), thin311());
    CHECK(sum.dim() == 8);
    auto rep = cyclic_generation_check(sum);
    CHECK(!rep.ok);
    CHECK(rep.rank == 4);
}

TEST_CASE("section 5 at eps: vanishing coefficients give a proper submodule") {
    const auto& S = s5L1();
    // [2]_eps = 0 at eps = i, which kills the middle edges of the KR-type strings
    CycloElem two = (S.eps(2) - S.eps(-2)) / (S.eps(1) - S.eps(-1));
    CHECK(two.is_zero());
    std::size_t zeros = 0;
    for (auto& row : S.x)
        for (auto& pr : row)
            for (auto& side : pr)
                for (auto& t : side) zeros += t.c.is_zero();
    CHECK(zeros == 8);
    auto rep = cyclic_generation_check(S);
    CHECK(!rep.ok);
    REQUIRE(rep.failing);
    CHECK(S.basis[*rep.failing] == Y("Y_{0,0}^{-1}Y_{0,2}^{-1}Y_{1,1}Y_{1,3}"));
    CHECK(rep.rank == 13);
}

TEST_CASE("denominators at eps") {
    for (int L = 1; L <= 4; ++L) {
        int N = 4 * L;
        // the printed level-2 pair has denominator q^{-1-4s} - q^3, zero at s = L - 1
        RationalQ d(LaurentPoly::qpow(1), LaurentPoly::qpow(-1 - 4 * (L - 1)) - LaurentPoly::qpow(3));
        CHECK_THROWS_AS(eval_cyclotomic(d, N), SpecializationError);
        // the block coefficients stay defined for every s < L
        for (int s = 1; s < L; ++s) {
            auto [c1, c2] = tp_coeffs(1, -1 - 4 * s);
            CHECK_NOTHROW(eval_cyclotomic(c1, N));
            CHECK_NOTHROW(eval_cyclotomic(c2, N));
        }
    }
}

TEST_CASE("summary JSON") {
    auto j = unity_summary(thin311());
    CHECK(j["kind"] == "thin");
    CHECK(j["root_order"] == 4);
    CHECK(j["basis"].size() == 4);
    CHECK(unity_summary(s5L1())["kind"] == "section5");
}
