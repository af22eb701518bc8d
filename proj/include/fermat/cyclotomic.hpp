#pragma once
#include "fermat/arith.hpp"
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fermat {

int euler_phi(int r);

// Element of Z[zeta_r] in the power basis, reduced mod Phi_r.  r in {3,4,5,7}.
struct CycInt {
    int r = 3;
    std::vector<i64> c;

    CycInt() : c(2, 0) {}
    CycInt(int r_, std::vector<i64> c_);
    static CycInt zero(int r);
    static CycInt from_int(int r, i64 v);
    static CycInt zeta(int r, int k = 1);
    static CycInt eis(i64 a, i64 b) { return CycInt(3, {a, b}); }   // a + b*omega

    i64 a() const { return c[0]; }
    i64 b() const { return c[1]; }
    bool is_rational() const;
    bool is_zero() const;
    std::string str() const;

    bool operator==(const CycInt& o) const { return r == o.r && c == o.c; }
    bool operator!=(const CycInt& o) const { return !(*this == o); }
    bool operator<(const CycInt& o) const { return c < o.c; }
};

CycInt operator+(const CycInt& x, const CycInt& y);
CycInt operator-(const CycInt& x, const CycInt& y);
CycInt operator-(const CycInt& x);
CycInt operator*(const CycInt& x, const CycInt& y);
CycInt operator*(i64 k, const CycInt& x);
CycInt cpow(CycInt x, unsigned e);

CycInt conj(const CycInt& x);
CycInt galois_apply(const CycInt& x, int i);
i64 norm(const CycInt& x);
std::complex<double> embed(const CycInt& x, int j = 1);   // zeta_r -> exp(2 pi i j / r)

enum class CycOp { add, mul, conj, norm };
std::variant<CycInt, i64> cyc_arith(const CycInt& x, const CycInt& y, CycOp op);

// ---- Eisenstein integers (r = 3) ----
const std::array<CycInt, 6>& eis_units();
std::optional<CycInt> exact_div(const CycInt& num, const CycInt& den);
bool divides(const CycInt& d, const CycInt& x);
CycInt eis_rem(const CycInt& x, const CycInt& m);          // Euclidean remainder, N(rem) < N(m)
CycInt eis_gcd(CycInt x, CycInt y);
bool is_primary(const CycInt& x);                          // x = 2 mod 3
CycInt primary_associate(const CycInt& x);
CycInt lambda_elem();                                      // 1 - omega
int lambda_valuation(const CycInt& x);                     // x != 0

struct PrimeIdeal {
    i64 ell = 0;
    int f = 1;
    CycInt gen;
    bool ramified = false;
    int idx = 0;        // 0/1 for the two primes above a split ell (lexicographic on gen)

    i64 norm() const { return f == 1 ? ell : ell * ell; }
    bool split() const { return !ramified && f == 1; }
    bool inert() const { return f == 2; }
    bool operator==(const PrimeIdeal& o) const { return ell == o.ell && idx == o.idx; }
    bool operator<(const PrimeIdeal& o) const { return ell != o.ell ? ell < o.ell : idx < o.idx; }
};

PrimeIdeal prime_above(i64 ell, int r = 3);
std::vector<PrimeIdeal> primes_above(i64 ell);
CycInt split_generator_search(i64 ell);     // bounded search, used as an oracle
PrimeIdeal conj_prime(const PrimeIdeal& p);
i64 omega_root(const PrimeIdeal& p);        // image of omega in O/p = F_ell, split p only

// O/(G) with canonical representatives x + y*omega, 0 <= x < A, 0 <= y < D.
struct EisResidues {
    CycInt G;
    i64 N = 0, A = 0, D = 0, e = 0;
    explicit EisResidues(const CycInt& g);
    i64 size() const { return N; }
    i64 index(const CycInt& x) const;
    CycInt elem(i64 idx) const;
    CycInt reduce(const CycInt& x) const { return elem(index(x)); }
};

} // namespace fermat
