#include "doctest.h"
#include "fermat/local_zeta.hpp"
#include <random>

using namespace fermat;

TEST_CASE("point counts") {
    auto F7 = make_field(7, 1);
    CHECK(count_points(Curve::W, 3, 1, F7).affine == 6);
    CHECK(count_points(Curve::C, 3, 1, F7).affine == 8);
    CHECK(count_points(Curve::W, 3, 1, F7).projective() == 9);
    CHECK(count_points(Curve::C, 3, 1, F7).projective() == 9);
    for (i64 ell : {5, 11, 17})
        for (i64 d : {1, 2, 7}) CHECK(count_points(Curve::W, 3, d, make_field(ell, 1)).affine == ell);
    CHECK_THROWS_AS(count_points(Curve::C, 3, 7, F7), Error);
    CHECK_THROWS_AS(count_points(Curve::C, 3, 1, make_field(3, 1)), Error);
    // serial and parallel agree
    auto F = make_field(13, 2);
    CHECK(count_points(Curve::W, 3, 5, F, Exec::Serial).affine == count_points(Curve::W, 3, 5, F, Exec::Parallel).affine);
}

TEST_CASE("local L polynomial") {
    auto P = local_L_polynomial(make_twist(3, 1), 7);
    CHECK(P.coeffs == std::vector<i64>{1, 1, 7});
    CHECK(P.at(1) == 9);
    for (i64 ell : {2, 5, 11, 17})
        for (i64 d : {1, 7, 13}) {
            if (d % ell == 0) continue;
            CHECK(local_L_polynomial(make_twist(3, d), ell).coeffs == std::vector<i64>{1, 0, ell});
        }
    for (auto r : P.root_abs()) CHECK(r == doctest::Approx(std::sqrt(7.0)).epsilon(1e-9));
    CHECK_THROWS_AS(local_L_polynomial(make_twist(3, 7), 7), Error);
}

TEST_CASE("zeta verification") {
    CHECK(verify_zeta(make_twist(3, 2), 7).ok);
    CHECK(verify_zeta(make_twist(3, 5), 13).ok);
    auto r = verify_zeta(make_twist(5, 1), 11);
    CHECK(r.ok);
    CHECK(r.checks.size() == 4);
    auto P5 = local_L_polynomial(make_twist(5, 1), 11);
    CHECK(P5.coeffs.size() == 5);
    for (auto a : P5.root_abs()) CHECK(a == doctest::Approx(std::sqrt(11.0)).epsilon(1e-9));
    // p = 5 with ell of order 2 and 4 mod 5
    CHECK(verify_zeta(make_twist(5, 2), 19, 2).ok);
    CHECK(verify_zeta(make_twist(5, 3), 7, 2).ok);
    CHECK(verify_zeta(make_twist(7, 2), 29, 2).ok);
}

TEST_CASE("class invariance") {
    std::mt19937_64 g(3);
    for (i64 d : {2, 5, 7}) {
        for (i64 c : {2, 5}) {
            auto a = make_twist(3, d), b = make_twist(3, d * c * c * c);
            for (i64 ell : primes_upto(50)) {
                if (ell == 3 || (d * c) % ell == 0) continue;
                CHECK(local_L_polynomial(a, ell).coeffs == local_L_polynomial(b, ell).coeffs);
            }
        }
    }
    auto tc = make_twist(3, 40);
    CHECK(tc.delta_free == 5);
    CHECK(tc.supp == std::vector<i64>{5});
}

TEST_CASE("torsion") {
    auto tc = make_twist(3, 5);
    std::vector<std::pair<i64, i64>> expect{{5, 11}, {7, 29}};
    for (auto [q, ell] : expect) {
        auto w = torsion_exclude(tc, q);
        CHECK(w.ell == ell);
        CHECK(w.Pv1 == ell + 1);
        CHECK(w.counted == ell + 1);
    }
    CHECK_THROWS_AS(torsion_exclude(tc, 2), Error);
    auto M = torsion_bound_M(tc);
    CHECK(M.M == 72);
    CHECK(M.certs[0].c == 3);
    CHECK(M.certs[0].c_order == 2);
    CHECK(M.certs[1].c == 2);
    CHECK(M.certs[1].c_order == 1);
}
