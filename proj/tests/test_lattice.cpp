#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qtor/lattice.hpp"

using namespace qtor;

using H = std::vector<std::int64_t>;

TEST_CASE("root coordinates for n=3") {
    RootSystem rs(3);
    CHECK(rs.alpha(0).h == H{2, -1, 0, -1});
    CHECK(rs.alpha(0).delta == Delta(1));
    CHECK(rs.alpha(1).h == H{-1, 2, -1, 0});
    CHECK(rs.alpha(1).delta == Delta(0));
    Weight s = rs.zero();
    for (int i = 0; i <= 3; ++i) s += rs.alpha(i);
    CHECK(s == rs.delta());
}

TEST_CASE("cartan matrix is cyclic") {
    for (int n : {3, 5, 7}) {
        RootSystem rs(n);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                int d = ((i - j) % (n + 1) + n + 1) % (n + 1);
                int expect = i == j ? 2 : (d == 1 || d == n) ? -1 : 0;
                CHECK(rs.cartan(i, j) == expect);
                CHECK(rs.alpha(i)(j) == rs.cartan(j, i));
            }
    }
}

TEST_CASE("fundamental weights") {
    RootSystem rs(3);
    CHECK(rs.varpi(1).h == H{-1, 1, 0, 0});
    for (int l = 1; l <= 3; ++l) CHECK(rs.varpi(l).level() == 0);
    CHECK(rs.Lambda(2).h == H{0, 0, 1, 0});
    CHECK(rs.Lambda(2).delta == Delta(0));
}

TEST_CASE("reflections") {
    RootSystem rs(3);
    CHECK(rs.reflect(rs.varpi(1), 1) == rs.varpi(1) - rs.alpha(1));
    for (int i = 0; i <= 3; ++i) CHECK(rs.reflect(rs.delta(), i) == rs.delta());
}

TEST_CASE("rank checks") {
    CHECK_THROWS_AS(RootSystem(4), EvenRankError);
    CHECK_THROWS_AS(RootSystem(1), LatticeError);
    CHECK_NOTHROW(RootSystem(5));
}

TEST_CASE("distance between 0 and l") {
    RootSystem rs(7);
    int expect[] = {0, 1, 2, 3, 4, 3, 2, 1};
    for (int l = 1; l <= 7; ++l) {
        // shortest path on the cycle of n+1 nodes
        CHECK(rs.dist(l) == expect[l]);
    }
}

TEST_CASE("parity separates adjacent nodes") {
    for (int n : {3, 5, 7, 9})
        for (int off : {0, 1}) {
            RootSystem rs(n, off);
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j)
                    if (rs.cartan(i, j) == -1) CHECK(rs.parity(i) + rs.parity(j) == 1);
        }
}

TEST_CASE("delta string round trip") {
    for (Delta d : {Delta(0), Delta(-3), Delta(5, 2), Delta(-1, 4)}) CHECK(parse_delta(delta_str(d)) == d);
    CHECK(parse_delta("7") == Delta(7));
    CHECK_THROWS_AS(parse_delta("1/0"), LatticeError);
    CHECK_THROWS_AS(parse_delta("x"), LatticeError);
}

TEST_CASE("property: reflections are involutions that fix exactly the h_i-orthogonal weights") {
    std::mt19937_64 g(21);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int it = 0; it < 600; ++it) {
        int n = 3 + 2 * (it % 3);
        RootSystem rs(n);
        Weight w = rs.zero();
        for (auto& x : w.h) x = c(g);
        w.delta = Delta(c(g), 1 + (c(g) + 4) % 3);
        int i = it % (n + 1);
        CHECK(rs.reflect(rs.reflect(w, i), i) == w);
        CHECK((rs.reflect(w, i) == w) == (w(i) == 0));
        CHECK(rs.reflect(w, i).level() == w.level());
    }
}
