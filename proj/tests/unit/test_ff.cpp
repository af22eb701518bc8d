#include "doctest.h"
#include "fermat/ff.hpp"
#include <random>

using namespace fermat;

TEST_CASE("make_field") {
    CHECK(make_field(7, 1).modulus == Poly{0, 1});
    CHECK(make_field(2, 2).modulus == Poly{1, 1, 1});
    auto F = make_field(5, 2);
    for (i64 x = 0; x < 5; ++x) CHECK(mod(F.modulus[0] + F.modulus[1] * x + x * x, 5) != 0);
    CHECK(make_field(5, 2).modulus == F.modulus);
    CHECK_THROWS_AS(make_field(9, 1), Error);
    auto G = make_field(3, 3);
    CHECK(poly_irreducible(G.modulus, 3));
    CHECK(!poly_irreducible({5, 0, 1}, 7));   // x^2 - 2, and 3^2 = 2 mod 7
    CHECK(poly_irreducible({2, 0, 1}, 7));
}

TEST_CASE("characters") {
    auto F = make_field(7, 1);
    auto chi = char_of_order(F, 3);
    CHECK(ff_encode(F, chi.generator) == 3);
    CHECK(chi.eval(chi.generator) == 1);
    CHECK(chi.eval(ff_one(F)) == 0);
    // 2^((7-1)/3) = 4 = 3^4 = (3^2)^2, and zeta -> 3^2 = 2
    CHECK(chi.eval({2}) == 2);
    CHECK(chi.eval(ff_zero(F)) == -1);
    CHECK_THROWS_AS(char_of_order(make_field(5, 1), 3), Error);

    auto F4 = make_field(2, 2);
    auto c4 = char_of_order(F4, 3);
    std::vector<int> vals;
    for (i64 i = 1; i < 4; ++i) vals.push_back(c4.eval(ff_decode(F4, i)));
    std::sort(vals.begin(), vals.end());
    CHECK(vals == std::vector<int>{0, 1, 2});

    std::mt19937_64 g(5);
    for (i64 ell : {13, 31, 97}) {
        for (int f : {1, 2}) {
            auto K = make_field(ell, f);
            auto c = char_of_order(K, 3);
            std::uniform_int_distribution<i64> d(1, K.q() - 1);
            for (int i = 0; i < 100; ++i) {
                auto x = ff_decode(K, d(g)), y = ff_decode(K, d(g));
                CHECK(c.eval(ff_mul(K, x, y)) == (c.eval(x) + c.eval(y)) % 3);
            }
        }
    }
}

TEST_CASE("discrete log and tables") {
    auto F = make_field(11, 2);
    auto g = least_generator(F);
    for (i64 k : {0, 1, 17, 100, 119}) CHECK(discrete_log(F, g, ff_pow(F, g, (u64)k)) == k);
    auto T = field_tables(F);
    std::mt19937_64 r(1);
    std::uniform_int_distribution<int> d(0, (int)F.q() - 1);
    for (int i = 0; i < 200; ++i) {
        int a = d(r), b = d(r);
        CHECK(T->mul(a, b) == ff_encode(F, ff_mul(F, ff_decode(F, a), ff_decode(F, b))));
        CHECK(T->add(a, b) == ff_encode(F, ff_add(F, ff_decode(F, a), ff_decode(F, b))));
        CHECK(T->sub(a, b) == ff_encode(F, ff_sub(F, ff_decode(F, a), ff_decode(F, b))));
    }
}

TEST_CASE("jacobi sums") {
    auto F = make_field(7, 1);
    auto chi = char_of_order(F, 3);
    auto j = jacobi_sum(chi, chi);
    CHECK(norm(j) == 7);
    CHECK(divides(CycInt::eis(3, 0), j - CycInt::eis(1, 0)));
    auto F4 = make_field(2, 2);
    auto c4 = char_of_order(F4, 3);
    CHECK(jacobi_sum(c4, c4) == CycInt::eis(-2, 0));
    CHECK_THROWS_AS(jacobi_sum(chi, char_of_order(make_field(13, 1), 3)), Error);
    CHECK_THROWS_AS(char_of_order(F, 1), Error);
    for (i64 ell : primes_upto(200)) {
        if (ell % 3 != 1) continue;
        auto c = char_of_order(make_field(ell, 1), 3);
        CHECK(norm(jacobi_sum(c, c)) == ell);
        CHECK(std::norm(embed(jacobi_sum(c, c))) == doctest::Approx((double)ell));
    }
    auto F11 = make_field(11, 1);
    auto c5 = char_of_order(F11, 5);
    CHECK(norm(jacobi_sum(c5, c5)) == 11 * 11);
}

TEST_CASE("gauss sums") {
    auto chi = char_of_order(make_field(7, 1), 3);
    auto g = gauss_sum(chi);
    CHECK(std::abs(g) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));
    auto chi2 = char_power(chi, 2);
    auto g2 = gauss_sum(chi2);
    auto j = embed(jacobi_sum(chi, chi));
    // g(chi)^2 = g(chi^2) * J(chi,chi) with J = -j
    CHECK(std::abs(g * g - g2 * (-j)) < 1e-9);
    auto c13 = char_of_order(make_field(13, 1), 3);
    auto p = gauss_sum(c13) * gauss_sum(char_power(c13, 2));
    CHECK(std::abs(p - 13.0) < 1e-9);   // chi(-1) = 1
    CHECK_THROWS_AS(gauss_sum(char_of_order(make_field(2, 2), 3)), Error);
}
