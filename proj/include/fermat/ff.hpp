#pragma once
#include "fermat/cyclotomic.hpp"
#include <complex>
#include <memory>
#include <vector>

namespace fermat {

using Poly = std::vector<i64>;   // low degree first, coefficients in [0, ell)

struct FieldSpec {
    i64 ell = 0;
    int f = 1;
    Poly modulus;                // monic, length f+1
    i64 q() const { return ipow(ell, (unsigned)f); }
    bool operator==(const FieldSpec& o) const { return ell == o.ell && modulus == o.modulus; }
};

using FFElem = Poly;             // length f

FieldSpec make_field(i64 ell, int f);
FieldSpec make_field_with_modulus(i64 ell, Poly modulus);   // validated
bool poly_irreducible(const Poly& m, i64 ell);

FFElem ff_zero(const FieldSpec& F);
FFElem ff_one(const FieldSpec& F);
FFElem ff_from_int(const FieldSpec& F, i64 v);
FFElem ff_add(const FieldSpec& F, const FFElem& a, const FFElem& b);
FFElem ff_sub(const FieldSpec& F, const FFElem& a, const FFElem& b);
FFElem ff_mul(const FieldSpec& F, const FFElem& a, const FFElem& b);
FFElem ff_pow(const FieldSpec& F, FFElem a, u64 e);
FFElem ff_inv(const FieldSpec& F, const FFElem& a);
bool ff_is_zero(const FFElem& a);
i64 ff_encode(const FieldSpec& F, const FFElem& a);          // sum c_i ell^i
FFElem ff_decode(const FieldSpec& F, i64 idx);

FFElem least_generator(const FieldSpec& F);
// baby-step giant-step; -1 if x is not in <g>
i64 discrete_log(const FieldSpec& F, const FFElem& g, const FFElem& x);

// Order-r character: chi(x) = e where x^((q-1)/r) = zeta_image^e.
struct MultCharacter {
    FieldSpec field;
    FFElem generator;
    int order = 0;
    FFElem zeta_image;
    int eval(const FFElem& x) const;          // exponent in Z/r, -1 for x = 0
    std::complex<double> value(const FFElem& x) const;
};

MultCharacter char_of_order(const FieldSpec& F, int r);
// character pinned by the image of zeta_r in the field
MultCharacter char_with_zeta(const FieldSpec& F, int r, const FFElem& zeta_image);
MultCharacter char_power(const MultCharacter& chi, int k);

CycInt jacobi_sum(const MultCharacter& a, const MultCharacter& b);
std::complex<double> gauss_sum(const MultCharacter& chi);

// Dense log/antilog tables for small fields (q <= 2^24), shared read-only.
struct FieldTables {
    FieldSpec F;
    i64 q = 0;
    std::vector<int> log;     // log[idx], log[0] = -1
    std::vector<int> exp;     // exp[k] = idx of g^k, k < q-1
    std::vector<int> add1;    // idx of (element + 1)
    std::vector<int> neg;
    int mul(int a, int b) const;
    int add(int a, int b) const;
    int sub(int a, int b) const { return add(a, neg[b]); }
    int pow(int a, i64 e) const;
};
std::shared_ptr<const FieldTables> field_tables(const FieldSpec& F);

} // namespace fermat
