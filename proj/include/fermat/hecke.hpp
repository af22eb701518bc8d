#pragma once
#include "fermat/exec.hpp"
#include "fermat/symbols.hpp"
#include <complex>
#include <vector>

namespace fermat {

using cplx = std::complex<double>;

// Weil's character psi(w) = j(chi_w, chi_w) / sqrt(Nw) twisted by chi_t(w) = (t / w)_3, t a rational integer.
struct HeckeCharSpec {
    i64 twist = 1;                            // cube-free |t|
    cplx psi(const PrimeIdeal& P) const;      // 0 at the prime above 3
    cplx chi(const PrimeIdeal& P) const;      // 0 where P divides t
    cplx value(const PrimeIdeal& P) const { return psi(P) * chi(P); }
    std::vector<i64> bad_primes() const;      // 3 and the primes of t
};
HeckeCharSpec hecke_for_delta(i64 delta);     // twist by [delta^2]
HeckeCharSpec hecke_for_twist(i64 n);         // twist by chi_n, n rational

struct NormedIdeal {
    Ideal ideal;
    i64 norm = 1;
    CycInt gen;
};
std::vector<NormedIdeal> ideal_enumerate(i64 X);

struct LSeriesTruncation {
    i64 twist = 1;
    i64 X = 0;
    std::vector<cplx> c;            // c[n] = sum of unitary coefficients over ideals of norm n
    i64 conductor = 0;
    int eps = 0;
    double smoothing = 0;           // sqrt(N): W(n / sqrt N) = exp(-2 pi n / sqrt N)
};
LSeriesTruncation hecke_coeffs(const HeckeCharSpec& spec, i64 X, Exec exec = Exec::Parallel);
LSeriesTruncation hecke_coeffs_by_ideals(const HeckeCharSpec& spec, i64 X);   // slow oracle

// theta relation defect: theta(1/u) vs eps u^2 theta(u), u in {1.1, 1.25, 1.5}
double fe_defect(const std::vector<cplx>& c, i64 N, int eps);
i64 fe_terms_needed(i64 N);

struct ConductorCandidate {
    i64 N = 0;
    int eps = 0;
    double defect = 0;
};
struct ConductorFit {
    i64 N = 0;
    int eps = 0;
    double defect = 0;
    bool ambiguous = false;
    std::vector<ConductorCandidate> candidates;
};
ConductorFit conductor_estimate(const HeckeCharSpec& spec, double tol = 1e-6);

struct LValue {
    cplx value;
    double error = 0;
    i64 N = 0;
    int eps = 0;
    i64 X = 0;
};
i64 min_truncation(i64 N);
LValue l_value(const LSeriesTruncation& trunc, double s = 0.5);
LValue central_value(const HeckeCharSpec& spec, i64 X = 0);   // conductor fit + evaluation

enum class Verdict { NonZero, ZeroConsistent, Indeterminate };
const char* verdict_name(Verdict v);
Verdict nonvanishing_decide(double value, double error, double margin = 10.0);

// Product over primes P | t of psi(P) * eps_P(chi_t), local root numbers from Gauss sums.
// Requires chi_t unramified at the prime above 3 (t = +-1 mod 9).
cplx root_number_ratio(i64 t);

} // namespace fermat
