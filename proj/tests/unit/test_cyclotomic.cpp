#include "doctest.h"
#include "fermat/cyclotomic.hpp"
#include <random>

using namespace fermat;

static CycInt random_cyc(std::mt19937_64& g, int r, int B = 20) {
    std::uniform_int_distribution<i64> d(-B, B);
    std::vector<i64> c(euler_phi(r));
    for (auto& v : c) v = d(g);
    return CycInt(r, c);
}

TEST_CASE("cyc_arith examples") {
    auto w = CycInt::eis(0, 1);
    auto one = CycInt::from_int(3, 1);
    CHECK((one + w) * (one + w * w) == one);
    CHECK(norm(CycInt::eis(3, 1)) == 7);
    CHECK(conj(w) == w * w);
    CHECK(norm(lambda_elem()) == 3);
    CHECK(std::get<i64>(cyc_arith(CycInt::eis(3, 1), one, CycOp::norm)) == 7);
    CHECK_THROWS_AS(CycInt::eis(1, 0) + CycInt::from_int(5, 1), Error);
}

TEST_CASE("norm is multiplicative and matches embeddings") {
    std::mt19937_64 g(7);
    for (int r : {3, 4, 5, 7}) {
        for (int i = 0; i < 200; ++i) {
            auto a = random_cyc(g, r, r == 7 ? 6 : 20), b = random_cyc(g, r, r == 7 ? 6 : 20);
            CHECK(norm(a * b) == norm(a) * norm(b));
        }
        auto a = random_cyc(g, r, 5);
        double prod = 1;
        for (int j = 1; j < r; ++j)
            if (gcd(j, r) == 1) prod *= std::norm(embed(a, j));
        CHECK(std::sqrt(prod) == doctest::Approx((double)std::llabs(norm(a))).epsilon(1e-9));
    }
}

TEST_CASE("galois action") {
    std::mt19937_64 g(11);
    for (int i = 0; i < 50; ++i) {
        auto a = random_cyc(g, 5);
        CHECK(galois_apply(a, 1) == a);
        CHECK(galois_apply(galois_apply(a, 2), 3) == galois_apply(a, 6 % 5));
        auto b = random_cyc(g, 5);
        CHECK(galois_apply(a * b, 3) == galois_apply(a, 3) * galois_apply(b, 3));
    }
    CHECK(galois_apply(CycInt::eis(0, 1), 2) == CycInt::eis(-1, -1));
    CHECK_THROWS_AS(galois_apply(CycInt::zeta(5, 1), 5), Error);
}

TEST_CASE("primary associates") {
    auto p = primary_associate(CycInt::eis(3, 1));
    CHECK(is_primary(p));
    CHECK(norm(p) == 7);
    int hits = 0;
    for (auto& u : eis_units()) hits += is_primary(u * CycInt::eis(3, 1));
    CHECK(hits == 1);
    CHECK(primary_associate(CycInt::eis(2, 0)) == CycInt::eis(2, 0));
    CHECK(primary_associate(p) == p);
    try {
        primary_associate(CycInt::eis(0, 1));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind == "UnitInput");
    }
    CHECK_THROWS_AS(primary_associate(lambda_elem()), Error);
}

TEST_CASE("prime_above: trichotomy and agreement with bounded search") {
    auto p7 = prime_above(7);
    CHECK(norm(p7.gen) == 7);
    CHECK(is_primary(p7.gen));
    CHECK(p7.split());
    auto p5 = prime_above(5);
    CHECK(p5.inert());
    CHECK(p5.norm() == 25);
    auto p3 = prime_above(3);
    CHECK(p3.ramified);
    CHECK(norm(p3.gen) == 3);
    for (i64 ell : primes_upto(2000)) {
        if (ell % 3 != 1) continue;
        auto ps = primes_above(ell);
        REQUIRE(ps.size() == 2);
        auto s = split_generator_search(ell);
        CHECK((s == ps[0].gen || s == ps[1].gen));
        CHECK(ps[1].gen == primary_associate(conj(ps[0].gen)));
        i64 t = omega_root(ps[0]);
        CHECK(mod(t * t + t + 1, ell) == 0);
    }
}

TEST_CASE("euclidean division and residues") {
    std::mt19937_64 g(3);
    for (int i = 0; i < 200; ++i) {
        auto x = random_cyc(g, 3, 1000), m = random_cyc(g, 3, 30);
        if (m.is_zero()) continue;
        auto r = eis_rem(x, m);
        CHECK(norm(r) < norm(m));
        CHECK(divides(m, x - r));
    }
    for (auto G : {CycInt::eis(9, 0), CycInt::eis(3, 1), CycInt::eis(4, 0), CycInt::eis(2, -1) * CycInt::eis(5, 0)}) {
        EisResidues R(G);
        std::vector<int> seen(R.size(), 0);
        for (i64 a = -12; a <= 12; ++a)
            for (i64 b = -12; b <= 12; ++b) {
                auto x = CycInt::eis(a, b);
                i64 id = R.index(x);
                REQUIRE(id >= 0);
                REQUIRE(id < R.size());
                CHECK(divides(G, x - R.elem(id)));
                seen[id] = 1;
            }
        for (int s : seen) CHECK(s == 1);
    }
}
