#include "fermat/local_zeta.hpp"
#include "fermat/io.hpp"
#include "fermat/symbols.hpp"
#include <filesystem>
#include <map>
#include <sstream>
#include <algorithm>
#include <cmath>
#include <complex>
#include <omp.h>

namespace fermat {

TwistClass make_twist(int p, i64 delta) {
    if (delta == 0) throw Error("BadInput", "delta must be nonzero");
    if (p < 3 || !is_prime(p)) throw Error("BadInput", "p must be an odd prime");
    TwistClass tc;
    tc.p = p;
    tc.delta = delta;
    tc.delta_free = power_free(delta, p);
    for (auto [q, e] : factor(tc.delta_free)) {
        (void)e;
        tc.supp.push_back(q);
    }
    return tc;
}

PointCount count_points(Curve curve, int p, i64 delta, const FieldSpec& F, Exec exec) {
    if (F.ell == p || mod(delta, F.ell) == 0) throw Error("BadReduction", "characteristic divides p*delta");
    auto T = field_tables(F);
    const i64 q = T->q;
    // p-th roots: CSR lists of v with v^p = x
    std::vector<int> cnt(q + 1, 0), roots(q);
    for (i64 v = 0; v < q; ++v) ++cnt[T->pow((int)v, p) + 1];
    for (i64 x = 0; x < q; ++x) cnt[x + 1] += cnt[x];
    {
        std::vector<int> pos(cnt.begin(), cnt.end() - 1);
        for (i64 v = 0; v < q; ++v) roots[pos[T->pow((int)v, p)]++] = (int)v;
    }
    auto nroots = [&](int x) { return (i64)(cnt[x + 1] - cnt[x]); };
    const int d = (int)mod(delta, F.ell);   // encoding of a prime-field element
    PointCount pc;
    if (curve == Curve::C) {
        i64 total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static) if (exec == Exec::Parallel)
        for (i64 u = 0; u < q; ++u) total += nroots(T->mul((int)u, T->sub(d, (int)u)));
        pc.affine = total;
        pc.at_infinity = 1;
        return pc;
    }
    i64 total = 0, bad = 0;
#pragma omp parallel for reduction(+ : total, bad) schedule(static) if (exec == Exec::Parallel)
    for (i64 x = 0; x < q; ++x) {
        int u = T->pow((int)x, p);
        int s = T->sub(d, u);
        for (int k = cnt[s]; k < cnt[s + 1]; ++k) {
            int y = roots[k];
            // the morphism (x, y) -> (x^p, xy) must land on C
            int v = T->mul((int)x, y);
            if (T->pow(v, p) != T->mul(u, T->sub(d, u))) ++bad;
            ++total;
        }
    }
    if (bad) throw Error("Internal", "morphism check failed");
    pc.affine = total;
    pc.at_infinity = nroots(T->neg[T->exp[0]]);
    return pc;
}

i64 LocalLPolynomial::at(i64 T) const {
    i64 v = 0;
    for (size_t i = coeffs.size(); i-- > 0;) v = checked_add(checked_mul(v, T), coeffs[i]);
    return v;
}

std::vector<double> LocalLPolynomial::root_abs() const {
    // reciprocal roots are the roots of T^d + c1 T^(d-1) + ... + cd; Durand-Kerner
    int dgr = (int)coeffs.size() - 1;
    std::vector<std::complex<double>> z(dgr);
    for (int i = 0; i < dgr; ++i) z[i] = std::pow(std::complex<double>(0.4, 0.9), i) * std::sqrt((double)std::abs(coeffs.back()) + 1.0);
    auto evalp = [&](std::complex<double> x) {
        std::complex<double> v = 1;
        for (int i = 1; i <= dgr; ++i) v = v * x + (double)coeffs[i];
        return v;
    };
    for (int it = 0; it < 2000; ++it) {
        double delta = 0;
        for (int i = 0; i < dgr; ++i) {
            std::complex<double> den = 1;
            for (int j = 0; j < dgr; ++j)
                if (j != i) den *= z[i] - z[j];
            auto step = evalp(z[i]) / den;
            z[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-15) break;
    }
    std::vector<double> out;
    for (auto& x : z) out.push_back(std::abs(x));
    return out;
}

std::vector<i64> power_sums(const std::vector<i64>& c, int n) {
    std::vector<i64> s(n + 1, 0);
    auto coef = [&](int i) { return i < (int)c.size() ? c[i] : 0; };
    for (int k = 1; k <= n; ++k) {
        i64 v = checked_mul(-k, coef(k));
        for (int i = 1; i < k; ++i) v = checked_add(v, -checked_mul(coef(i), s[k - i]));
        s[k] = v;
    }
    return s;
}

MultCharacter pinned_cubic_character(i64 ell) {
    if (ell % 3 == 1) {
        FieldSpec F = make_field(ell, 1);
        return char_with_zeta(F, 3, {omega_root(primes_above(ell)[0])});
    }
    if (ell == 3) throw Error("RamifiedPlace", "no cubic character mod lambda");
    FieldSpec F = make_field_with_modulus(ell, {1, 1, 1});   // O/(ell) with omega = x
    return char_with_zeta(F, 3, {0, 1});
}

// Character with the normalization pinned by the residue symbol for p = 3.
static MultCharacter pinned_character(int p, i64 ell, int f) {
    if (p == 3) return pinned_cubic_character(ell);
    return char_of_order(make_field(ell, f), p);
}

LocalLPolynomial local_L_polynomial(const TwistClass& tc, i64 ell) {
    const int p = tc.p;
    if (!is_prime(ell)) throw Error("NotPrime", std::to_string(ell));
    if (ell == p || tc.delta % ell == 0) throw Error("BadReduction", "ell divides p*delta");
    const int f = mult_order(ell % p, p);
    MultCharacter chi = pinned_character(p, ell, f);
    CycInt J = jacobi_sum(chi, chi);
    int e = chi.eval(ff_from_int(chi.field, mulmod(mod(tc.delta, ell), mod(tc.delta, ell), ell)));
    CycInt rho = CycInt::zeta(p, e) * J;
    std::vector<CycInt> poly{CycInt::from_int(p, 1)};
    std::vector<char> seen(p, 0);
    for (int k = 1; k < p; ++k) {
        if (seen[k]) continue;
        for (i64 x = k; !seen[x]; x = x * ell % p) seen[x] = 1;
        CycInt a = galois_apply(rho, k);
        std::vector<CycInt> next(poly.size() + f, CycInt::zero(p));
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i] = next[i] + poly[i];
            next[i + f] = next[i + f] - poly[i] * a;
        }
        poly = next;
    }
    LocalLPolynomial L;
    L.ell = ell;
    L.f = f;
    L.provenance = "JacobiSum";
    for (auto& c : poly) {
        if (!c.is_rational()) throw Error("Internal", "P_v has a non-rational coefficient");
        L.coeffs.push_back(c.a());
    }
    return L;
}

std::string L_cache_text(const std::vector<LocalLPolynomial>& v) {
    std::ostringstream os;
    for (const auto& L : v) {
        os << L.ell << ' ' << L.f;
        for (i64 c : L.coeffs) os << ' ' << c;
        os << '\n';
    }
    return os.str();
}

std::vector<LocalLPolynomial> parse_L_cache(const std::string& text) {
    std::vector<LocalLPolynomial> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        LocalLPolynomial L;
        if (!(ls >> L.ell >> L.f)) throw Error("BadCache", "malformed record: " + line);
        for (i64 c; ls >> c;) L.coeffs.push_back(c);
        if (L.coeffs.empty()) throw Error("BadCache", "record without coefficients: " + line);
        L.provenance = "Cache";
        out.push_back(L);
    }
    return out;
}

std::vector<LocalLPolynomial> local_L_table(const TwistClass& tc, i64 ell_max) {
    std::string dir = cache_dir(tc.p);
    std::string path = dir.empty() ? "" : dir + "/zeta_" + std::to_string(tc.delta) + ".txt";
    std::map<i64, LocalLPolynomial> have;
    if (!path.empty() && std::filesystem::exists(path))
        for (auto& L : parse_L_cache(read_file(path))) have[L.ell] = L;
    bool grew = false;
    std::vector<LocalLPolynomial> out;
    for (i64 l : primes_upto(ell_max)) {
        if (l == tc.p || tc.delta % l == 0) continue;
        auto it = have.find(l);
        if (it == have.end()) {
            it = have.emplace(l, local_L_polynomial(tc, l)).first;
            grew = true;
        }
        out.push_back(it->second);
    }
    if (grew && !path.empty()) {
        std::vector<LocalLPolynomial> all;
        for (auto& [l, L] : have) all.push_back(L);
        write_file_atomic(path, L_cache_text(all));
    }
    return out;
}

ZetaReport verify_zeta(const TwistClass& tc, i64 ell, int kmax) {
    if (kmax <= 0) kmax = tc.p - 1;
    LocalLPolynomial P = local_L_polynomial(tc, ell);
    auto s = power_sums(P.coeffs, kmax);
    ZetaReport rep;
    rep.ell = ell;
    for (int k = 1; k <= kmax; ++k) {
        FieldSpec F = make_field(ell, k);
        ZetaCheck c;
        c.k = k;
        c.predicted = F.q() + 1 - s[k];
        c.counted = count_points(Curve::C, tc.p, tc.delta, F).projective();
        rep.ok = rep.ok && c.predicted == c.counted;
        rep.checks.push_back(c);
    }
    return rep;
}

TorsionWitness torsion_exclude(const TwistClass& tc, i64 q, i64 bound) {
    if (tc.p != 3) throw Error("UnsupportedOrder", "torsion exclusion is pinned to p=3");
    if (!is_prime(q)) throw Error("NotPrime", std::to_string(q));
    if (q == 2 || q == 3) throw Error("UseTorsionBoundM", "q divides 2*D_L");
    for (i64 ell : primes_upto(bound)) {
        if (ell % 3 != 2 || ell % q != 1 || tc.delta % ell == 0) continue;
        LocalLPolynomial P = local_L_polynomial(tc, ell);
        TorsionWitness w;
        w.q = q;
        w.ell = ell;
        w.Pv1 = P.at(1);
        if (mod(w.Pv1, q) != 2 % q) throw Error("Internal", "P_v(1) is not 2 mod q");
        if (ell * ell <= (1 << 24)) {
            w.counted = count_points(Curve::C, 3, tc.delta, make_field(ell, 1)).projective();
            if (w.counted != w.Pv1) throw Error("Mismatch", "point count disagrees with P_v(1)");
        }
        return w;
    }
    throw Error("NoWitnessBelow", std::to_string(bound));
}

TorsionBound torsion_bound_M(const TwistClass& tc, int max_level) {
    if (tc.p != 3) throw Error("UnsupportedOrder", "torsion bound is pinned to p=3, F=Q");
    // L' = Q(omega), D = -3, so q in {2, 3}; f = (p-1)/(2[F0:Q]) = 1.
    const int f = 1;
    TorsionBound tb;
    for (i64 q : {2, 3}) {
        CqCertificate cert;
        cert.q = q;
        for (int c = 1; c <= max_level && !cert.c; ++c) {
            i64 Q = ipow(q, (unsigned)c);
            for (i64 a = 1; a < std::max<i64>(Q, 2); ++a) {
                if (gcd(a, Q) != 1 && Q > 1) continue;
                // sigma restricted to Q(omega) must be the nontrivial element
                if (q == 3 && a % 3 != 2) continue;
                int ord = Q == 2 ? 1 : mult_order(a, Q);
                if (ord > f && !cert.c_order) cert.c_order = c;
                if (ord > f && mod(1 + powmod(a, f, Q), Q) != 0) {
                    cert.c = c;
                    cert.witness = a;
                    break;
                }
            }
        }
        if (!cert.c) throw Error("SearchExhausted", "no level up to q^" + std::to_string(max_level));
        tb.M *= ipow(q, (unsigned)cert.c);
        tb.certs.push_back(cert);
    }
    return tb;
}

} // namespace fermat
