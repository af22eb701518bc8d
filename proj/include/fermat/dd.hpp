#pragma once
#include "fermat/exec.hpp"
#include "fermat/hecke.hpp"
#include "fermat/symbols.hpp"
#include <map>
#include <string>
#include <vector>

namespace fermat {

// G_0(p^k, p^l) for a place of norm qv
double g0(int k, int l, double qv, int r = 3);
// product over places of the single-place table
double g0_ideal(const Ideal& n, const Ideal& m, int r = 3);

// normalized Gauss sum of x -> (x / m1)_3 at its conductor rad(m1); m1 coprime to 3
cplx gauss_normalized(const Ideal& m1);
// G(n, m) = conj(chi*_{m1}(n*)) G(chi*_{m1}) G_0(n, m)
cplx correction_G(const SymbolContext& ctx, const Ideal& n, const Ideal& m);

// Dirichlet polynomial in the s variable: sum of c * k^{-s}
using DirPoly = std::map<i64, cplx>;
cplx dirpoly_eval(const DirPoly& p, double s);
DirPoly dirpoly_mul(const DirPoly& a, const DirPoly& b, i64 K = 0);   // K > 0 truncates keys

// L_S(3s + 3w - 2, psi^3) as a double series: key (N^3, N^3), value sum over N(d) = N of psi(d)^3 N^2
std::vector<std::pair<i64, cplx>> normalizer_terms(i64 bound);

DirPoly p_poly_terms(i64 n);                  // P_n(s, psi), n coprime to 3
cplx p_poly(i64 n, double s);
DirPoly q_poly_terms(i64 n);                  // Q_n: normalizer folded into P
cplx q_poly(i64 n, double s);

// m = m' (h): m' imaginary, h a rational integer
struct ImaginaryDecomposition {
    Ideal imaginary;
    i64 h = 1;
};
bool is_imaginary(const Ideal& m);
ImaginaryDecomposition imaginary_decompose(const Ideal& m);
Ideal recompose(const ImaginaryDecomposition& d);

enum class DDKind { Z, Z0, Z1, Z_tilde, Z_aux };
const char* dd_kind_name(DDKind k);

// coefficient of n^{-w} for n <= X, each a finite sum over the s variable keys k <= K
struct DDTruncation {
    DDKind kind = DDKind::Z;
    double s = 0;
    i64 X = 0, K = 0;
    std::vector<cplx> coeff;        // coeff[n], n <= X
    std::string normalization;
};

// rho must be trivial in v1: a non-empty table with an entry != 1 throws UnsupportedRho
DDTruncation truncated_series(DDKind kind, double s, i64 X, i64 K = 0, const std::vector<cplx>& rho = {});

// dense double-series arrays a[n][k], n <= X, k <= K
struct DoubleSeries {
    i64 X = 0, K = 0;
    std::vector<cplx> a;
    DoubleSeries(i64 X_, i64 K_) : X(X_), K(K_), a((X_ + 1) * (K_ + 1)) {}
    cplx& at(i64 n, i64 k) { return a[n * (K + 1) + k]; }
    const cplx& at(i64 n, i64 k) const { return a[n * (K + 1) + k]; }
    cplx collapse(i64 n, double s) const;     // sum over k of a[n][k] k^{-s}
};
DoubleSeries z_series(i64 X, i64 K, bool use_q = false, Exec exec = Exec::Parallel);
DoubleSeries z_tilde_series(i64 X, i64 K, Exec exec = Exec::Parallel);   // includes the normalizer
DoubleSeries times_L2s(const DoubleSeries& t);                             // L_S(2s, psi) * series

struct InterchangeReport {
    double s = 0;
    i64 X = 0, K = 0;
    double coeff_defect = 0;       // max over (n, k) of |Z - L Z~|
    double defect = 0;             // max over n of the k^{-s} collapsed difference
    i64 worst_n = 0;
    double scale = 0;              // max |Z(n)| for context
    bool ok = false;
};
InterchangeReport verify_interchange(double s, i64 X, i64 K = 0, Exec exec = Exec::Parallel);

struct EpsilonCheck {
    i64 n = 1, n1 = 1;
    cplx ratio;           // eps(1/2, chi_{n1} psi) / eps(1/2, psi)
    int psi_n = 1;        // psi((n))
    double defect = 0;
};
// n cube-free, n = +-1 mod 9; ratio from local Gauss sums
EpsilonCheck epsilon_relation_check(i64 n);
int psi_rational(i64 n);     // psi((n)) = prod over inert ell of (-1)^e

struct MeanValueRow {
    i64 n = 0, n1 = 0;
    i64 N = 0;
    int eps = 0;
    double L = 0, error = 0, P = 0, term = 0, running = 0, prediction = 0;
    double fe_defect = 0;
};
struct MeanValueReport {
    i64 x = 0;
    double lhs = 0, C = 0, rhs = 0, ratio = 0;
    double L1_psi = 0, L3_ratio = 0, local_factor = 0;
    double kappa = 1, h_F = 1, kappa_c = 0, ray_order = 0;
    int violations = 0;             // rows with term < -error
    double max_fe_defect = 0;
    std::vector<MeanValueRow> rows;
};
// L_S(sigma, psi^3) by Euler product over ell <= P (unitary normalization)
double l_psi3(double sigma, i64 P = 2000000);
double mean_value_constant(const SymbolContext& ctx, double* L1 = nullptr, double* L3 = nullptr, double* loc = nullptr);
MeanValueReport mean_value_check(i64 x_max, Exec exec = Exec::Parallel);
std::string mean_value_csv(const MeanValueReport& r);

} // namespace fermat
