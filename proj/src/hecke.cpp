#include "fermat/hecke.hpp"
#include <algorithm>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cfloat>
#include <cmath>
#include <mutex>
#include <omp.h>

namespace fermat {

namespace {

// psi and the image of omega at the first prime above each split ell, grown on demand
struct SplitTable {
    std::mutex mu;
    i64 bound = 0;
    std::vector<cplx> psi0;
    std::vector<i64> root0;
};
SplitTable& split_table() {
    static SplitTable t;
    return t;
}

void ensure_split(i64 X) {
    auto& T = split_table();
    std::lock_guard<std::mutex> lk(T.mu);
    if (X <= T.bound) return;
    i64 nb = std::max(X, 2 * T.bound);
    std::vector<cplx> psi(nb + 1);
    std::vector<i64> root(nb + 1, 0);
    std::copy(T.psi0.begin(), T.psi0.end(), psi.begin());
    std::copy(T.root0.begin(), T.root0.end(), root.begin());
    auto spf = spf_sieve((int)nb);
    i64 lo = T.bound + 1;
#pragma omp parallel for schedule(dynamic, 512)
    for (i64 l = lo; l <= nb; ++l) {
        if (l < 7 || spf[l] != l || l % 3 != 1) continue;
        PrimeIdeal P = primes_above(l)[0];
        psi[l] = -embed(P.gen) / std::sqrt((double)l);
        root[l] = omega_root(P);
    }
    T.psi0 = std::move(psi);
    T.root0 = std::move(root);
    T.bound = nb;
}

inline cplx omega_pow(int e) {
    static const cplx w[3] = {cplx(1, 0), std::polar(1.0, 2 * M_PI / 3), std::polar(1.0, 4 * M_PI / 3)};
    return w[((e % 3) + 3) % 3];
}

// (t / P)_3 at the split prime with omega -> r
inline int split_symbol(i64 t, i64 l, i64 r) {
    i64 v = mod(t, l);
    if (v == 0) return -1;
    i64 y = powmod(v, (u64)(l - 1) / 3, l);
    if (y == 1) return 0;
    return y == r ? 1 : 2;
}

// Gamma(a, x) for any real a, x > 0
double upper_gamma(double a, double x) {
    if (a > 0) return boost::math::tgamma(a, x);
    if (a == 0) return boost::math::expint(1, x);
    return (upper_gamma(a + 1, x) - std::pow(x, a) * std::exp(-x)) / a;
}

} // namespace

cplx HeckeCharSpec::psi(const PrimeIdeal& P) const {
    if (P.ramified) return 0.0;
    if (P.inert()) return -1.0;
    return -embed(P.gen) / std::sqrt((double)P.ell);
}

cplx HeckeCharSpec::chi(const PrimeIdeal& P) const {
    if (P.ramified) return 0.0;
    int e = rational_symbol(twist, P);
    return e < 0 ? cplx(0.0) : omega_pow(e);
}

std::vector<i64> HeckeCharSpec::bad_primes() const {
    std::vector<i64> b{3};
    for (auto [q, e] : factor(twist)) {
        (void)e;
        if (q != 3) b.push_back(q);
    }
    std::sort(b.begin(), b.end());
    return b;
}

HeckeCharSpec hecke_for_delta(i64 delta) {
    if (delta == 0) throw Error("BadInput", "delta must be nonzero");
    i64 d = power_free(delta, 3);
    HeckeCharSpec s;
    s.twist = power_free(checked_mul(d, d), 3);
    return s;
}

HeckeCharSpec hecke_for_twist(i64 n) {
    if (n == 0) throw Error("BadInput", "twist must be nonzero");
    HeckeCharSpec s;
    s.twist = power_free(n, 3);
    return s;
}

std::vector<NormedIdeal> ideal_enumerate(i64 X) {
    std::vector<PrimeIdeal> ps;
    for (i64 l : primes_upto(X))
        for (auto& P : primes_above(l))
            if (P.norm() <= X) ps.push_back(P);
    std::stable_sort(ps.begin(), ps.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.norm() < b.norm(); });
    std::vector<NormedIdeal> out;
    NormedIdeal one;
    one.gen = CycInt::eis(1, 0);
    out.push_back(one);
    // depth-first products over primes in increasing order
    struct Frame {
        size_t start;
        NormedIdeal cur;
    };
    std::vector<Frame> st{{0, one}};
    while (!st.empty()) {
        Frame fr = st.back();
        st.pop_back();
        for (size_t i = fr.start; i < ps.size(); ++i) {
            i64 q = ps[i].norm();
            if (fr.cur.norm > X / q) break;
            NormedIdeal nx = fr.cur;
            for (int k = 1; nx.norm <= X / q; ++k) {
                nx.norm *= q;
                nx.ideal[ps[i]] = k;
                nx.gen = nx.gen * ps[i].gen;
                out.push_back(nx);
                st.push_back({i + 1, nx});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const NormedIdeal& a, const NormedIdeal& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.gen < b.gen;
    });
    return out;
}

LSeriesTruncation hecke_coeffs(const HeckeCharSpec& spec, i64 X, Exec exec) {
    if (X < 1) throw Error("BadInput", "X must be >= 1");
    if (X > 50000000) throw Error("BudgetExceeded", "X too large");
    ensure_split(X);
    const auto& T = split_table();
    const i64 t = spec.twist;
    // per-prime data: a = value at the first prime, b = value at its conjugate
    std::vector<cplx> A(X + 1, 0.0), B(X + 1, 0.0);
    std::vector<signed char> kind(X + 1, 0);   // 1 split, 2 inert, 3 bad
    auto spf = spf_sieve((int)X);
    auto prime_data = [&](i64 l) {
        if (l == 3 || t % l == 0) { kind[l] = 3; return; }
        if (l % 3 == 2) { kind[l] = 2; return; }
        kind[l] = 1;
        i64 r = T.root0[l], r1 = mulmod(r, r, l);
        int e0 = split_symbol(t, l, r), e1 = split_symbol(t, l, r1);
        A[l] = T.psi0[l] * omega_pow(e0);
        B[l] = std::conj(T.psi0[l]) * omega_pow(e1);
    };
    auto local = [&](i64 l, int e) -> cplx {
        switch (kind[l]) {
        case 3: return 0.0;
        case 2: return (e % 2) ? 0.0 : ((e / 2) % 2 ? -1.0 : 1.0);
        default: {
            // sum_{i=0}^{e} a^i b^(e-i) by the two-term recursion
            cplx a = A[l], b = B[l], s = a + b, p = a * b, c0 = 1.0, c1 = s;
            if (e == 0) return c0;
            for (int k = 2; k <= e; ++k) {
                cplx c2 = s * c1 - p * c0;
                c0 = c1;
                c1 = c2;
            }
            return c1;
        }
        }
    };
    LSeriesTruncation tr;
    tr.twist = t;
    tr.X = X;
    tr.c.assign(X + 1, 0.0);
    if (X >= 1) tr.c[1] = 1.0;
    if (exec == Exec::Serial) {
        for (i64 l = 2; l <= X; ++l)
            if (spf[l] == l) prime_data(l);
        for (i64 n = 2; n <= X; ++n) {
            i64 l = spf[n], m = n;
            int e = 0;
            while (m % l == 0) { m /= l; ++e; }
            tr.c[n] = tr.c[m] * local(l, e);
        }
        return tr;
    }
#pragma omp parallel for schedule(dynamic, 1024)
    for (i64 l = 2; l <= X; ++l)
        if (spf[l] == l) prime_data(l);
#pragma omp parallel for schedule(static)
    for (i64 n = 2; n <= X; ++n) {
        i64 m = n;
        cplx v = 1.0;
        while (m > 1) {
            i64 l = spf[m];
            int e = 0;
            while (m % l == 0) { m /= l; ++e; }
            v *= local(l, e);
            if (v == 0.0) break;
        }
        tr.c[n] = v;
    }
    return tr;
}

LSeriesTruncation hecke_coeffs_by_ideals(const HeckeCharSpec& spec, i64 X) {
    LSeriesTruncation tr;
    tr.twist = spec.twist;
    tr.X = X;
    tr.c.assign(X + 1, 0.0);
    for (const auto& I : ideal_enumerate(X)) {
        cplx v = 1.0;
        for (const auto& [P, k] : I.ideal) v *= std::pow(spec.value(P), k);
        tr.c[I.norm] += v;
    }
    return tr;
}

i64 fe_terms_needed(i64 N) { return (i64)std::ceil(9.6 * std::sqrt((double)N)) + 10; }

double fe_defect(const std::vector<cplx>& c, i64 N, int eps) {
    const double sq = std::sqrt((double)N);
    i64 M = std::min<i64>((i64)c.size() - 1, fe_terms_needed(N));
    auto theta = [&](double x) {
        cplx s = 0;
        for (i64 n = 1; n <= M; ++n)
            if (c[n] != 0.0) s += c[n] * std::sqrt((double)n) * std::exp(-2 * M_PI * n * x / sq);
        return s;
    };
    double d = 0;
    for (double u : {1.1, 1.25, 1.5}) {
        cplx a = theta(1 / u), b = (double)eps * u * u * theta(u);
        d = std::max(d, std::abs(a - b) / (std::abs(a) + std::abs(b) + 1e-300));
    }
    return d;
}

ConductorFit conductor_estimate(const HeckeCharSpec& spec, double tol) {
    i64 r = 1;
    for (i64 q : spec.bad_primes())
        if (q != 3) r = checked_mul(r, q);
    std::vector<i64> Ns;
    for (int e = 2; e <= 5; ++e) Ns.push_back(checked_mul(ipow(3, (unsigned)e), checked_mul(r, r)));
    auto tr = hecke_coeffs(spec, fe_terms_needed(Ns.back()));
    ConductorFit fit;
    fit.defect = 1e300;
    for (i64 N : Ns)
        for (int eps : {1, -1}) {
            ConductorCandidate c{N, eps, fe_defect(tr.c, N, eps)};
            fit.candidates.push_back(c);
            if (c.defect < fit.defect) {
                fit.defect = c.defect;
                fit.N = N;
                fit.eps = eps;
            }
        }
    for (const auto& c : fit.candidates)
        if (c.N != fit.N && c.defect < tol && fit.defect < tol) {
            fit.ambiguous = true;
            if (c.N > fit.N) {
                fit.N = c.N;
                fit.eps = c.eps;
                fit.defect = c.defect;
            }
        }
    return fit;
}

i64 min_truncation(i64 N) { return (i64)std::ceil(8 * std::sqrt((double)N)) + 20; }

LValue l_value(const LSeriesTruncation& tr, double s) {
    if (tr.conductor <= 0 || (tr.eps != 1 && tr.eps != -1)) throw Error("MissingConductor", "truncation has no conductor/sign");
    const i64 N = tr.conductor;
    if (tr.X < min_truncation(N)) throw Error("TruncationTooSmall", "X=" + std::to_string(tr.X) + " < " + std::to_string(min_truncation(N)));
    const double sq = std::sqrt((double)N);
    const double A = sq / (2 * M_PI);
    LValue out;
    out.N = N;
    out.eps = tr.eps;
    out.X = tr.X;
    cplx sum = 0;
    double abs_sum = 0;
    if (s == 0.5) {
        if (tr.eps == -1) {
            out.value = 0.0;
        } else {
            for (i64 n = 1; n <= tr.X; ++n) {
                if (tr.c[n] == 0.0) continue;
                cplx term = tr.c[n] / std::sqrt((double)n) * std::exp(-2 * M_PI * n / sq);
                sum += term;
                abs_sum += std::abs(term);
            }
            out.value = 2.0 * sum;
            abs_sum *= 2;
        }
    } else {
        const double z = s + 0.5;
        if (!(z > 0)) throw Error("UnsupportedPoint", "real s > -1/2 only");
        const double gz = std::tgamma(z);
        for (i64 n = 1; n <= tr.X; ++n) {
            if (tr.c[n] == 0.0) continue;
            double x = n / A;
            double w = std::pow((double)n, -z) * upper_gamma(z, x) / gz +
                       tr.eps * std::pow(A, 2 - 2 * z) * std::pow((double)n, z - 2) * upper_gamma(2 - z, x) / gz;
            cplx term = tr.c[n] * std::sqrt((double)n) * w;
            sum += term;
            abs_sum += std::abs(term);
        }
        out.value = sum;
    }
    // |c(n)| <= d(n) <= 2 sqrt(n): geometric tail of the smoothing weight, plus rounding
    double q = std::exp(-2 * M_PI / sq);
    double tail = 2.0 * 2.0 * std::exp(-2 * M_PI * (double)(tr.X + 1) / sq) / (1 - q);
    out.error = tail + 64 * DBL_EPSILON * (abs_sum + 1.0);
    return out;
}

LValue central_value(const HeckeCharSpec& spec, i64 X) {
    ConductorFit fit = conductor_estimate(spec);
    LSeriesTruncation tr = hecke_coeffs(spec, std::max(X, min_truncation(fit.N)));
    tr.conductor = fit.N;
    tr.eps = fit.eps;
    tr.smoothing = std::sqrt((double)fit.N);
    LValue v = l_value(tr);
    // an imperfect functional-equation fit widens the error proportionally
    double scale = 0;
    for (i64 n = 1; n <= tr.X; ++n) scale += std::abs(tr.c[n]) / std::sqrt((double)n) * std::exp(-2 * M_PI * n / tr.smoothing);
    v.error += fit.defect * 2 * scale;
    return v;
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::NonZero: return "NonZero";
    case Verdict::ZeroConsistent: return "ZeroConsistent";
    default: return "Indeterminate";
    }
}

Verdict nonvanishing_decide(double value, double error, double margin) {
    double a = std::abs(value);
    if (a > margin * error) return Verdict::NonZero;
    if (a < error) return Verdict::ZeroConsistent;
    return Verdict::Indeterminate;
}

cplx root_number_ratio(i64 t) {
    if (t == 0) throw Error("BadInput", "t must be nonzero");
    i64 ta = t < 0 ? -t : t;
    if (ta % 3 == 0 || (ta % 9 != 1 && ta % 9 != 8)) throw Error("RamifiedOverlap", "chi_t is ramified above 3");
    std::vector<std::pair<PrimeIdeal, int>> Q;   // primes of t with exponent mod 3
    for (auto [l, e] : factor(ta)) {
        if (e % 3 == 0) continue;
        for (auto& P : primes_above(l)) Q.push_back({P, e % 3});
    }
    cplx ratio = 1.0;
    for (const auto& [P, k] : Q) {
        const CycInt& g = P.gen;
        int cg = 0;   // chi_P(g) = prod over the other primes of (g / Q)^k_Q
        for (const auto& [R, kr] : Q)
            if (!(R == P)) cg += kr * classical_symbol(R, g);
        // chi_P(u) = (u / P)^(-k) on units; the Gauss sum uses chi_P^{-1}
        cplx G = 0;
        double Np = (double)P.norm();
        if (P.split()) {
            i64 l = P.ell, T = mod(2 * g.a() - g.b(), l);   // Tr(conj g) mod l
            i64 r = 2;
            auto fac = factor(l - 1);
            for (;; ++r) {
                bool ok = true;
                for (auto [pp, ee] : fac) {
                    (void)ee;
                    if (powmod(r, (u64)(l - 1) / pp, l) == 1) { ok = false; break; }
                }
                if (ok) break;
            }
            int cr = classical_symbol(P, CycInt::eis(r, 0));
            i64 u = 1;
            for (i64 i = 0; i < l - 1; ++i) {
                G += omega_pow((int)(k * cr * (i % 3))) * std::polar(1.0, 2 * M_PI * (double)mulmod(u, T, l) / (double)l);
                u = mulmod(u, r, l);
            }
        } else {
            // chi_P is trivial on F_ell^x: the sum collapses to ell * chi_P^{-1}(sqrt(-3))
            G = (double)P.ell * omega_pow(k * classical_symbol(P, CycInt::eis(1, 2)));
        }
        cplx W = omega_pow(cg) * G / std::sqrt(Np);
        ratio *= HeckeCharSpec{}.psi(P) * W;
    }
    return ratio;
}

} // namespace fermat
