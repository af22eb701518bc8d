#pragma once
#include "fermat/exec.hpp"
#include "fermat/ff.hpp"
#include <string>
#include <vector>

namespace fermat {

struct TwistClass {
    int p = 3;
    i64 delta = 1;
    i64 delta_free = 1;          // p-th power free part, positive
    std::vector<i64> supp;       // primes q with p not dividing v_q(delta)
};
TwistClass make_twist(int p, i64 delta);

enum class Curve { W, C };       // W: X^p + Y^p = delta,  C: V^p = U (delta - U)

struct PointCount {
    i64 affine = 0;
    i64 at_infinity = 0;
    i64 projective() const { return affine + at_infinity; }
};
PointCount count_points(Curve curve, int p, i64 delta, const FieldSpec& F, Exec exec = Exec::Parallel);

struct LocalLPolynomial {
    i64 ell = 0;
    int f = 1;
    std::vector<i64> coeffs;     // constant term 1, degree p-1
    std::string provenance;      // "JacobiSum" or "PointCount"
    i64 at(i64 T) const;
    std::vector<double> root_abs() const;   // |reciprocal roots|
};
LocalLPolynomial local_L_polynomial(const TwistClass& tc, i64 ell);
// a_l cache text: one record per line "ell f c0 c1 ... cK"
std::string L_cache_text(const std::vector<LocalLPolynomial>& v);
std::vector<LocalLPolynomial> parse_L_cache(const std::string& text);
// P_v for every good ell <= ell_max; reuses and atomically refreshes the FERMAT_CACHE_DIR file
std::vector<LocalLPolynomial> local_L_table(const TwistClass& tc, i64 ell_max);

// reciprocal-root power sums s_1..s_n from the coefficients (Newton identities, exact)
std::vector<i64> power_sums(const std::vector<i64>& coeffs, int n);

struct ZetaCheck {
    int k = 0;
    i64 predicted = 0, counted = 0;
};
struct ZetaReport {
    i64 ell = 0;
    std::vector<ZetaCheck> checks;
    bool ok = true;
};
// compares #C(F_{ell^k}) for k = 1..kmax (default 2g) with the prediction from P_v
ZetaReport verify_zeta(const TwistClass& tc, i64 ell, int kmax = 0);

struct TorsionWitness {
    i64 q = 0, ell = 0, Pv1 = 0, counted = 0;
};
TorsionWitness torsion_exclude(const TwistClass& tc, i64 q, i64 bound = 100000);

struct CqCertificate {
    i64 q = 0;
    int c = 0;           // least level with 1 + a^f != 0 mod q^c
    int c_order = 0;     // least level by the order condition alone
    i64 witness = 0;     // residue a mod q^c
};
struct TorsionBound {
    i64 M = 1;
    std::vector<CqCertificate> certs;
};
TorsionBound torsion_bound_M(const TwistClass& tc, int max_level = 6);

// order-3 character on O/w pinned by omega -> its residue (split: F_ell, inert: F_ell[x]/(x^2+x+1))
MultCharacter pinned_cubic_character(i64 ell);

} // namespace fermat
