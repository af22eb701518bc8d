#include "fermat/dd.hpp"
#include <algorithm>
#include <cmath>
#include <mutex>
#include <omp.h>
#include <sstream>

namespace fermat {

namespace {

inline cplx omega_pow(int e) {
    static const cplx w[3] = {cplx(1, 0), std::polar(1.0, 2 * M_PI / 3), std::polar(1.0, 4 * M_PI / 3)};
    return w[((e % 3) + 3) % 3];
}

cplx psi_of(const Ideal& a) {
    static const HeckeCharSpec plain{};
    cplx v = 1.0;
    for (const auto& [P, e] : a) v *= std::pow(plain.psi(P), e);
    return v;
}

// chi_n(m) = (n / m)_3 for rational n, 0 unless coprime
cplx chi_rational_at(i64 n, const Ideal& m) {
    int e = 0;
    for (const auto& [P, k] : m) {
        int s = rational_symbol(n, P);
        if (s < 0) return 0.0;
        e += s * k;
    }
    return omega_pow(e);
}

int sign_F(i64 h) { return psi_rational(h); }

bool coprime_to_3(const Ideal& a) {
    for (const auto& [P, e] : a) {
        (void)e;
        if (P.ramified) return false;
    }
    return true;
}

void check_rho(const std::vector<cplx>& rho) {
    for (const auto& v : rho)
        if (std::abs(v - cplx(1.0)) > 1e-15) throw Error("UnsupportedRho", "only the trivial rho is supported");
}

enum class ZMode { Inner, Normalized, Q };

// sum over k of L_S(s, chi_{n1} psi) times the correction polynomial, as dense (n, k) arrays
DoubleSeries z_build(i64 X, i64 K, ZMode mode, Exec exec) {
    DoubleSeries inner(X, K);
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::Parallel)
    for (i64 n = 1; n <= X; ++n) {
        if (n % 3 == 0) continue;
        auto c = hecke_coeffs(hecke_for_twist(n), K, Exec::Serial).c;
        DirPoly P = mode == ZMode::Q ? q_poly_terms(n) : p_poly_terms(n);
        for (const auto& [k2, v2] : P) {
            if (k2 > K) continue;
            for (i64 k1 = 1; k1 * k2 <= K; ++k1)
                if (c[k1] != 0.0) inner.at(n, k1 * k2) += c[k1] * v2;
        }
    }
    if (mode != ZMode::Normalized) return inner;
    DoubleSeries out(X, K);
    for (auto [N3, a] : normalizer_terms(std::min(X, K)))
        for (i64 n = 1; n * N3 <= X; ++n)
            for (i64 k = 1; k * N3 <= K; ++k) out.at(n * N3, k * N3) += a * inner.at(n, k);
    return out;
}

} // namespace

double g0(int k, int l, double qv, int r) {
    if (k < 0 || l < 0) throw Error("BadInput", "exponents must be >= 0");
    if (l == 0) return 1.0;
    if (k + 1 == l && l % r != 0) return std::pow(qv, k / 2.0);
    if (k + 1 == l && l % r == 0) return -std::pow(qv, (k - 1) / 2.0);
    if (k >= l && l % r == 0) return std::pow(qv, l / 2.0 - 1) * (qv - 1);
    return 0.0;
}

double g0_ideal(const Ideal& n, const Ideal& m, int r) {
    double v = 1.0;
    for (const auto& [P, l] : m) {
        auto it = n.find(P);
        int k = it == n.end() ? 0 : it->second;
        v *= g0(k, l, (double)P.norm(), r);
        if (v == 0.0) break;
    }
    return v;
}

cplx gauss_normalized(const Ideal& m1) {
    Ideal f;
    for (const auto& [P, e] : m1) {
        if (P.ramified) throw Error("BadInput", "modulus must be coprime to 3");
        if (e % 3) f[P] = e % 3;
    }
    if (f.empty()) return 1.0;
    Ideal rad;
    for (const auto& [P, e] : f) rad[P] = 1;
    i64 Nf = ideal_norm(rad);
    if (Nf > 4000000) throw Error("BudgetExceeded", "Gauss sum modulus too large");
    CycInt g = ideal_generator(rad);
    EisResidues R(g);
    cplx G = 0;
    for (i64 i = 0; i < R.size(); ++i) {
        CycInt x = R.elem(i);
        int e = 0;
        bool unit = true;
        for (const auto& [P, k] : f) {
            if (divides(P.gen, x)) { unit = false; break; }
            e += k * classical_symbol(P, x);
        }
        if (!unit) continue;
        CycInt y = x * conj(g);   // Tr(x / g) = Tr(x conj g) / N g
        i64 tr = mod(2 * y.a() - y.b(), Nf);
        G += omega_pow(e) * std::polar(1.0, 2 * M_PI * (double)tr / (double)Nf);
    }
    return G / std::sqrt((double)Nf);
}

cplx correction_G(const SymbolContext& ctx, const Ideal& n, const Ideal& m) {
    double g = g0_ideal(n, m, ctx.r);
    if (g == 0.0) return 0.0;
    Ideal m1, nstar;
    for (const auto& [P, e] : m)
        if (e % ctx.r) m1[P] = e % ctx.r;
    for (const auto& [P, e] : n)
        if (!m1.count(P)) nstar[P] = e;
    if (m1.empty()) return g;
    int e = extended_symbol(ctx, nstar, m1);
    if (e < 0) throw Error("NotCoprime", "n* meets m1");
    return std::conj(omega_pow(e)) * gauss_normalized(m1) * g;
}

cplx dirpoly_eval(const DirPoly& p, double s) {
    cplx v = 0;
    for (const auto& [k, c] : p) v += c * std::pow((double)k, -s);
    return v;
}

DirPoly dirpoly_mul(const DirPoly& a, const DirPoly& b, i64 K) {
    DirPoly out;
    for (const auto& [k1, v1] : a)
        for (const auto& [k2, v2] : b) {
            i64 k = checked_mul(k1, k2);
            if (K > 0 && k > K) continue;
            out[k] += v1 * v2;
        }
    return out;
}

std::vector<std::pair<i64, cplx>> normalizer_terms(i64 bound) {
    i64 M = std::max<i64>(1, icbrt(bound));
    std::map<i64, cplx> acc;
    for (const auto& d : ideal_enumerate(M)) {
        if (!coprime_to_3(d.ideal)) continue;
        i64 N3 = d.norm * d.norm * d.norm;
        if (N3 > bound) continue;
        acc[N3] += std::pow(psi_of(d.ideal), 3) * (double)(d.norm * d.norm);
    }
    return {acc.begin(), acc.end()};
}

int psi_rational(i64 n) {
    if (n == 0) throw Error("BadInput", "n must be nonzero");
    int v = 1;
    for (auto [l, e] : factor(n < 0 ? -n : n))
        if (l % 3 == 2 && (e & 1)) v = -v;
    return v;
}

DirPoly p_poly_terms(i64 n) {
    if (n <= 0 || n % 3 == 0) throw Error("BadInput", "n must be positive and coprime to 3");
    const HeckeCharSpec spec = hecke_for_twist(n);
    DirPoly res{{1, 1.0}};
    for (auto [l, e] : factor(n)) {
        const double ps = l % 3 == 1 ? 1.0 : -1.0;
        auto geo = [&](int m) {
            DirPoly g;
            i64 k = 1;
            double c = 1;
            for (int i = 0; i < m; ++i, k *= l * l, c *= ps * (double)l) g[k] += c;
            return g;
        };
        DirPoly fac;
        const i64 top = ipow(l, 2 * e);
        const double tail = std::pow(ps, e) * std::pow((double)l, e);
        if (e % 3) {
            fac = geo(e);
        } else if (l % 3 == 2) {
            fac = dirpoly_mul(DirPoly{{1, 1.0}, {l * l, -ps}}, geo(e));
            fac[top] += tail * (1 + 1.0 / l);
        } else {
            auto Ps = primes_above(l);
            cplx a = spec.value(Ps[0]), b = spec.value(Ps[1]);
            fac = dirpoly_mul(DirPoly{{1, 1.0}, {l, -(a + b)}, {l * l, a * b}}, geo(e));
            fac[top] += tail * (1 - 1.0 / l);
        }
        res = dirpoly_mul(res, fac);
    }
    return res;
}

cplx p_poly(i64 n, double s) { return dirpoly_eval(p_poly_terms(n), s); }

DirPoly q_poly_terms(i64 n) {
    DirPoly out;
    for (auto [N3, a] : normalizer_terms(n)) {
        if (n % N3) continue;
        for (const auto& [k, v] : p_poly_terms(n / N3)) out[k * N3] += a * v;
    }
    return out;
}

cplx q_poly(i64 n, double s) { return dirpoly_eval(q_poly_terms(n), s); }

bool is_imaginary(const Ideal& m) {
    for (const auto& [P, e] : m) {
        if (e <= 0) continue;
        if (P.inert()) return false;
        if (P.ramified && e > 1) return false;
        if (P.split()) {
            auto it = m.find(conj_prime(P));
            if (it != m.end() && it->second > 0) return false;
        }
    }
    return true;
}

ImaginaryDecomposition imaginary_decompose(const Ideal& m) {
    ImaginaryDecomposition d;
    for (const auto& [P, e] : m) {
        if (e <= 0) continue;
        if (P.inert()) {
            d.h = checked_mul(d.h, ipow(P.ell, e));
        } else if (P.ramified) {
            d.h = checked_mul(d.h, ipow(3, e / 2));
            if (e & 1) d.imaginary[P] = 1;
        } else {
            auto it = m.find(conj_prime(P));
            int f = it == m.end() ? 0 : it->second;
            if (P.idx == 0) d.h = checked_mul(d.h, ipow(P.ell, std::min(e, f)));
            if (e > f) d.imaginary[P] = e - f;
        }
    }
    return d;
}

Ideal recompose(const ImaginaryDecomposition& d) { return ideal_mul(d.imaginary, rational_ideal(d.h)); }

const char* dd_kind_name(DDKind k) {
    switch (k) {
    case DDKind::Z: return "Z";
    case DDKind::Z0: return "Z0";
    case DDKind::Z1: return "Z1";
    case DDKind::Z_tilde: return "Z_tilde";
    default: return "Z_aux";
    }
}

cplx DoubleSeries::collapse(i64 n, double s) const {
    cplx v = 0;
    for (i64 k = 1; k <= K; ++k)
        if (at(n, k) != 0.0) v += at(n, k) * std::pow((double)k, -s);
    return v;
}

DoubleSeries z_series(i64 X, i64 K, bool use_q, Exec exec) {
    return z_build(X, K, use_q ? ZMode::Q : ZMode::Normalized, exec);
}

DoubleSeries z_tilde_series(i64 X, i64 K, Exec exec) {
    struct Contribution {
        i64 n, k;
        cplx v;
    };
    std::vector<NormedIdeal> ms;
    for (auto& d : ideal_enumerate(K))
        if (coprime_to_3(d.ideal) && is_imaginary(d.ideal)) ms.push_back(d);
    std::vector<std::vector<Contribution>> parts(ms.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
    for (size_t idx = 0; idx < ms.size(); ++idx) {
        const auto& m = ms[idx];
        const cplx pm = psi_of(m.ideal);
        std::vector<cplx> Lw(X + 1, 0.0);   // chi*_m(n) = (n / m)_3
        for (i64 n = 1; n <= X; ++n)
            if (n % 3) Lw[n] = chi_rational_at(n, m.ideal);
        auto& out = parts[idx];
        for (i64 h = 1; h <= X && h * h <= K / m.norm; ++h) {
            if (h % 3 == 0) continue;
            auto fh = factor(h);
            i64 h1 = power_free(h, 3);
            cplx c = Lw[h1];
            if (c == 0.0) continue;
            std::map<i64, cplx> base{{h, pm * (double)sign_F(h) * c * (double)h}};
            for (auto [l, e] : fh) {
                cplx chil = Lw[l];
                double q = (double)l;
                std::map<i64, cplx> br;
                if (e % 3) br = {{l, chil}, {1, -1 / q}};
                else if (m.norm % l == 0) br = {{1, 1 - 1 / q}};
                else if (l % 3 == 1) br = {{l, chil / q}, {1, 1 - 2 / q}};
                else br = {{1, 1.0}, {l, -chil / q}};
                std::map<i64, cplx> nb;
                for (auto& [n1, v1] : base)
                    for (auto& [n2, v2] : br)
                        if (n1 * n2 <= X) nb[n1 * n2] += v1 * v2;
                base = std::move(nb);
            }
            i64 k0 = m.norm * h * h;
            for (auto& [n1, v1] : base)
                for (i64 j = 1; n1 * j <= X; ++j)
                    if (Lw[j] != 0.0) out.push_back({n1 * j, k0, v1 * Lw[j]});
        }
    }
    DoubleSeries tilde(X, K);
    for (const auto& part : parts)
        for (const auto& c : part) tilde.at(c.n, c.k) += c.v;
    DoubleSeries out(X, K);
    for (auto [N3, a] : normalizer_terms(std::min(X, K)))
        for (i64 n = 1; n * N3 <= X; ++n)
            for (i64 k = 1; k * N3 <= K; ++k)
                if (tilde.at(n, k) != 0.0) out.at(n * N3, k * N3) += a * tilde.at(n, k);
    return out;
}

DoubleSeries times_L2s(const DoubleSeries& t) {
    DoubleSeries out(t.X, t.K);
    for (i64 h = 1; h * h <= t.K; ++h) {
        if (h % 3 == 0) continue;
        double p = sign_F(h);
        i64 h2 = h * h;
        for (i64 n = 1; n <= t.X; ++n)
            for (i64 k = 1; k * h2 <= t.K; ++k)
                if (t.at(n, k) != 0.0) out.at(n, k * h2) += p * t.at(n, k);
    }
    return out;
}

DDTruncation truncated_series(DDKind kind, double s, i64 X, i64 K, const std::vector<cplx>& rho) {
    check_rho(rho);
    if (X < 1 || X > 100000) throw Error("BadInput", "X must be in [1, 1e5]");
    if (K <= 0) K = X;
    DDTruncation tr;
    tr.kind = kind;
    tr.s = s;
    tr.X = X;
    tr.K = K;
    tr.coeff.assign(X + 1, 0.0);
    if (kind == DDKind::Z_aux) {
        // Psi_S(s, n) = L_S(3s - 1/2, psi^3) sum_m psi(m) G(n, m) N(m)^{-s}
        const auto& ctx = default_context();
        std::vector<NormedIdeal> ms;
        for (auto& d : ideal_enumerate(K))
            if (coprime_to_3(d.ideal)) ms.push_back(d);
        std::vector<std::pair<i64, cplx>> A;   // key N^3, value sum psi(d)^3 sqrt(N)
        for (auto [N3, a] : normalizer_terms(K)) {
            double N = (double)icbrt(N3);
            A.push_back({N3, a / (N * N) * std::sqrt(N)});
        }
        std::vector<cplx> wm(ms.size());
        for (size_t i = 0; i < ms.size(); ++i) wm[i] = psi_of(ms[i].ideal);
#pragma omp parallel for schedule(dynamic, 8)
        for (i64 n = 1; n <= X; ++n) {
            if (n % 3 == 0) continue;
            Ideal ni = rational_ideal(n);
            std::vector<cplx> B(K + 1, 0.0);
            for (size_t i = 0; i < ms.size(); ++i) {
                cplx G = correction_G(ctx, ni, ms[i].ideal);
                if (G != 0.0) B[ms[i].norm] += wm[i] * G;
            }
            cplx v = 0;
            for (auto [N3, a] : A)
                for (i64 k = 1; k * N3 <= K; ++k)
                    if (B[k] != 0.0) v += a * B[k] * std::pow((double)(k * N3), -s);
            tr.coeff[n] = v;
        }
        tr.normalization = "L_S(3s-1/2,psi^3) * sum_m psi(m) G(n,m) N(m)^-s, m and normalizer truncated at K";
        return tr;
    }
    DoubleSeries D(0, 0);
    switch (kind) {
    case DDKind::Z: D = z_build(X, K, ZMode::Normalized, Exec::Parallel); tr.normalization = "L_S(3s+3w-2,psi^3) * sum L_S(s,chi_n1 psi) P_n"; break;
    case DDKind::Z0: D = z_build(X, K, ZMode::Inner, Exec::Parallel); tr.normalization = "sum L_S(s,chi_n1 psi) P_n, no normalizer"; break;
    case DDKind::Z1: D = z_build(X, K, ZMode::Q, Exec::Parallel); tr.normalization = "sum over [n]=1 of L_S(s,chi_n1 psi) Q_n"; break;
    default: D = z_tilde_series(X, K); tr.normalization = "L_S(3s+3w-2,psi^3) * sum over imaginary m"; break;
    }
    const auto& ctx = default_context();
    for (i64 n = 1; n <= X; ++n) {
        if (kind == DDKind::Z1 && (n % 3 == 0 || !class_trivial(ctx, n))) continue;
        tr.coeff[n] = D.collapse(n, s);
    }
    return tr;
}

InterchangeReport verify_interchange(double s, i64 X, i64 K, Exec exec) {
    if (X < 1 || X > 10000) throw Error("BadInput", "X must be in [1, 1e4]");
    if (K <= 0) K = X;
    InterchangeReport r;
    r.s = s;
    r.X = X;
    r.K = K;
    DoubleSeries Z = z_series(X, K, false, exec);
    DoubleSeries T = times_L2s(z_tilde_series(X, K, exec));
    for (size_t i = 0; i < Z.a.size(); ++i) r.coeff_defect = std::max(r.coeff_defect, std::abs(Z.a[i] - T.a[i]));
    for (i64 n = 1; n <= X; ++n) {
        cplx a = Z.collapse(n, s), b = T.collapse(n, s);
        r.scale = std::max(r.scale, std::abs(a));
        double d = std::abs(a - b);
        if (d > r.defect) {
            r.defect = d;
            r.worst_n = n;
        }
    }
    r.ok = r.defect < 1e-9 && r.coeff_defect < 1e-9;
    return r;
}

EpsilonCheck epsilon_relation_check(i64 n) {
    if (n <= 0) throw Error("BadInput", "n must be positive");
    if (power_free(n, 3) != n) throw Error("BadInput", "n must be cube-free");
    EpsilonCheck c;
    c.n = n;
    c.n1 = n;
    c.ratio = root_number_ratio(n);
    c.psi_n = psi_rational(n);
    c.defect = std::abs(c.ratio - cplx((double)c.psi_n));
    return c;
}

double l_psi3(double sigma, i64 P) {
    static std::mutex mu;
    static std::map<std::pair<double, i64>, double> memo;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find({sigma, P});
        if (it != memo.end()) return it->second;
    }
    auto ps = primes_upto(P);
    std::vector<double> logs(ps.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 256)
    for (size_t i = 0; i < ps.size(); ++i) {
        i64 l = ps[i];
        if (l == 3) continue;
        if (l % 3 == 2) {
            logs[i] = -std::log1p(std::pow((double)l, -2 * sigma));
        } else {
            cplx a = std::pow(-embed(primes_above(l)[0].gen) / std::sqrt((double)l), 3);
            logs[i] = -2 * std::log(std::abs(1.0 - a * std::pow((double)l, -sigma)));
        }
    }
    double s = 0;
    for (double v : logs) s += v;
    double out = std::exp(s);
    std::lock_guard<std::mutex> lk(mu);
    memo[{sigma, P}] = out;
    return out;
}

double mean_value_constant(const SymbolContext& ctx, double* L1, double* L3, double* loc) {
    HeckeCharSpec plain = hecke_for_twist(1);
    ConductorFit fit = conductor_estimate(plain);
    LSeriesTruncation tr = hecke_coeffs(plain, std::max(fe_terms_needed(fit.N), min_truncation(fit.N)));
    tr.conductor = fit.N;
    tr.eps = fit.eps;
    double l1 = l_value(tr, 1.0).value.real();
    double l3 = l_psi3(1.5) / l_psi3(2.5);
    double lf = 1.0;
    std::vector<i64> seen;
    for (const auto& P : ctx.S_prime) {
        if (std::find(seen.begin(), seen.end(), P.ell) != seen.end()) continue;
        seen.push_back(P.ell);
        lf *= 1.0 - 1.0 / (double)P.ell;
    }
    if (L1) *L1 = l1;
    if (L3) *L3 = l3;
    if (loc) *loc = lf;
    const double kappa = 1, h_F = 1;
    return kappa * (double)ctx.kappa_c / (h_F * (double)ctx.ray_order) * l1 * l3 * lf;
}

MeanValueReport mean_value_check(i64 x_max, Exec exec) {
    if (x_max > 5000) throw Error("BudgetExceeded", "x_max must be <= 5000");
    const auto& ctx = default_context();
    MeanValueReport r;
    r.x = x_max;
    r.kappa_c = (double)ctx.kappa_c;
    r.ray_order = (double)ctx.ray_order;
    r.C = mean_value_constant(ctx, &r.L1_psi, &r.L3_ratio, &r.local_factor);
    const int eps_psi = conductor_estimate(hecke_for_twist(1)).eps;
    std::vector<i64> ns;
    for (i64 n = 1; n < x_max; ++n)
        if (n % 3 && class_trivial(ctx, n)) ns.push_back(n);
    r.rows.resize(ns.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
    for (size_t i = 0; i < ns.size(); ++i) {
        MeanValueRow& row = r.rows[i];
        row.n = ns[i];
        row.n1 = power_free(row.n, 3);
        row.N = 27 * rad(row.n1) * rad(row.n1);
        cplx w = root_number_ratio(row.n1);
        row.eps = eps_psi * (w.real() > 0 ? 1 : -1);
        HeckeCharSpec spec = hecke_for_twist(row.n1);
        LSeriesTruncation tr = hecke_coeffs(spec, std::max(fe_terms_needed(row.N), min_truncation(row.N)), Exec::Serial);
        tr.conductor = row.N;
        tr.eps = row.eps;
        tr.smoothing = std::sqrt((double)row.N);
        row.fe_defect = std::max(fe_defect(tr.c, row.N, row.eps), std::abs(w - cplx(w.real() > 0 ? 1.0 : -1.0)));
        LValue v = l_value(tr);
        double scale = 0;
        for (i64 k = 1; k <= tr.X; ++k)
            if (tr.c[k] != 0.0) scale += std::abs(tr.c[k]) / std::sqrt((double)k) * std::exp(-2 * M_PI * k / tr.smoothing);
        row.L = v.value.real();
        row.error = v.error + row.fe_defect * 2 * scale;
        row.P = p_poly(row.n, 0.5).real();
        row.term = row.L * row.P;
    }
    double run = 0;
    for (auto& row : r.rows) {
        run += row.term;
        row.running = run;
        row.prediction = r.C * (double)row.n;
        r.max_fe_defect = std::max(r.max_fe_defect, row.fe_defect);
        if (row.L < -row.error || row.P < -1e-12) ++r.violations;
    }
    r.lhs = run;
    r.rhs = r.C * (double)x_max;
    r.ratio = r.lhs / r.rhs;
    return r;
}

std::string mean_value_csv(const MeanValueReport& r) {
    std::ostringstream os;
    os.precision(12);
    os << "n,Lvalue,running_lhs,prediction\n";
    for (const auto& row : r.rows) os << row.n << ',' << row.L << ',' << row.running << ',' << row.prediction << '\n';
    return os.str();
}

} // namespace fermat
