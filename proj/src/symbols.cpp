#include "fermat/symbols.hpp"
#include <algorithm>
#include <set>
#include <sstream>

namespace fermat {

Ideal ideal_of(const CycInt& x) {
    if (x.r != 3) throw Error("UnsupportedOrder", "ideals need r=3");
    if (x.is_zero()) throw Error("BadInput", "ideal of zero");
    Ideal out;
    i64 N = norm(x);
    CycInt y = x;
    for (auto [ell, e] : factor(N)) {
        (void)e;
        for (const auto& P : primes_above(ell)) {
            int k = 0;
            while (auto q = exact_div(y, P.gen)) { y = *q; ++k; }
            if (k) out[P] = k;
        }
    }
    if (norm(y) != 1) throw Error("Internal", "incomplete factorization of " + x.str());
    return out;
}

Ideal rational_ideal(i64 n) {
    if (n == 0) throw Error("BadInput", "ideal of zero");
    Ideal out;
    for (auto [ell, e] : factor(n < 0 ? -n : n)) {
        auto ps = primes_above(ell);
        for (const auto& P : ps) out[P] += P.ramified ? 2 * e : e;
    }
    return out;
}

Ideal ideal_mul(const Ideal& a, const Ideal& b) {
    Ideal c = a;
    for (const auto& [P, k] : b) {
        c[P] += k;
        if (c[P] == 0) c.erase(P);
    }
    return c;
}

Ideal ideal_pow(const Ideal& a, int k) {
    Ideal c;
    if (k == 0) return c;
    for (const auto& [P, e] : a) c[P] = e * k;
    return c;
}

CycInt ideal_generator(const Ideal& a) {
    CycInt g = CycInt::eis(1, 0);
    for (const auto& [P, k] : a) {
        if (k < 0) throw Error("BadInput", "fractional ideal has no integral generator");
        g = g * cpow(P.gen, (unsigned)k);
    }
    return g;
}

i64 ideal_norm(const Ideal& a) {
    i64 n = 1;
    for (const auto& [P, k] : a) n = checked_mul(n, ipow(P.norm(), (unsigned)k));
    return n;
}

bool coprime(const Ideal& a, const Ideal& b) {
    for (const auto& [P, k] : a)
        if (k && b.count(P)) return false;
    return true;
}

std::string ideal_str(const Ideal& a) {
    if (a.empty()) return "(1)";
    std::ostringstream os;
    bool first = true;
    for (const auto& [P, k] : a) {
        os << (first ? "" : "*") << "(" << P.gen.a() << (P.gen.b() < 0 ? "" : "+") << P.gen.b() << "w)";
        if (k != 1) os << "^" << k;
        first = false;
    }
    return os.str();
}

namespace {

// arithmetic in F_ell[omega] = O/(ell) for inert ell
struct Quad {
    i64 a, b;
};
Quad qmul(Quad x, Quad y, i64 l) {
    i64 bd = mulmod(x.b, y.b, l);
    return {mod(mulmod(x.a, y.a, l) - bd, l), mod(mulmod(x.a, y.b, l) + mulmod(x.b, y.a, l) - bd, l)};
}
Quad qpow(Quad x, i64 e, i64 l) {
    Quad r{1, 0};
    while (e) {
        if (e & 1) r = qmul(r, x, l);
        x = qmul(x, x, l);
        e >>= 1;
    }
    return r;
}

} // namespace

int classical_symbol(const PrimeIdeal& w, const CycInt& a) {
    if (w.ramified) throw Error("RamifiedPlace", "symbol at the prime above 3");
    i64 l = w.ell;
    if (w.split()) {
        i64 t = omega_root(w);
        i64 v = mod(mod(a.a(), l) + mulmod(mod(a.b(), l), t, l), l);
        if (v == 0) throw Error("NotCoprime", a.str() + " at " + std::to_string(l));
        i64 y = powmod(v, (u64)(l - 1) / 3, l);
        if (y == 1) return 0;
        if (y == t) return 1;
        if (y == mulmod(t, t, l)) return 2;
        throw Error("Internal", "symbol value outside mu_3");
    }
    Quad x{mod(a.a(), l), mod(a.b(), l)};
    if (x.a == 0 && x.b == 0) throw Error("NotCoprime", a.str() + " at " + std::to_string(l));
    Quad y = qpow(x, (l * l - 1) / 3, l);
    if (y.a == 1 && y.b == 0) return 0;
    if (y.a == 0 && y.b == 1) return 1;
    if (y.a == l - 1 && y.b == l - 1) return 2;
    throw Error("Internal", "symbol value outside mu_3");
}

int rational_symbol(i64 t, const PrimeIdeal& w) {
    if (w.ramified) throw Error("RamifiedPlace", "symbol at the prime above 3");
    i64 l = w.ell;
    i64 v = mod(t, l);
    if (v == 0) return -1;
    if (w.inert()) return 0;   // F_ell^x lies in the cubes of F_{ell^2}
    i64 y = powmod(v, (u64)(l - 1) / 3, l);
    if (y == 1) return 0;
    i64 tw = omega_root(w);
    return y == tw ? 1 : 2;
}

int element_symbol(const CycInt& x, const Ideal& n) {
    int e = 0;
    for (const auto& [P, k] : n) {
        if (divides(P.gen, x)) return -1;
        e += k * classical_symbol(P, x);
    }
    return mod(e, 3);
}

int verify_lambda_exponent(int max_k) {
    const CycInt lam = lambda_elem();
    for (int k = 1; k <= max_k; ++k) {
        int N = k + 6;
        EisResidues R(cpow(lam, (unsigned)N));
        std::vector<char> cube(R.size(), 0);
        for (i64 i = 0; i < R.size(); ++i) {
            CycInt x = R.elem(i);
            if (mod(x.a() + x.b(), 3) == 0) continue;
            cube[R.index(x * x * x)] = 1;
        }
        EisResidues Q(cpow(lam, (unsigned)(N - k)));
        CycInt lk = cpow(lam, (unsigned)k), one = CycInt::eis(1, 0);
        bool ok = true;
        for (i64 i = 0; i < Q.size() && ok; ++i) ok = cube[R.index(one + lk * Q.elem(i))];
        if (ok) return k;
    }
    throw Error("SearchExhausted", "no lambda exponent up to " + std::to_string(max_k));
}

static bool is_unit_mod(const CycInt& x, const CycInt& c) {
    return norm(eis_gcd(x, c)) == 1;
}

SymbolContext build_context(const std::vector<PrimeIdeal>& S_prime, unsigned seed) {
    (void)seed;   // the construction is deterministic; the seed is recorded only
    SymbolContext ctx;
    ctx.r = 3;
    bool has_lambda = false;
    for (const auto& P : S_prime) {
        if (P.ramified) has_lambda = true;
        if (P.split() && std::find(S_prime.begin(), S_prime.end(), conj_prime(P)) == S_prime.end())
            throw Error("NotConjugationClosed", "S' must be closed under conjugation");
    }
    if (!has_lambda) throw Error("MissingRamifiedPrime", "S' must contain the prime above 3");
    ctx.S_prime = S_prime;
    std::sort(ctx.S_prime.begin(), ctx.S_prime.end());
    ctx.r_lambda = verify_lambda_exponent();
    ctx.c_elem = cpow(lambda_elem(), (unsigned)ctx.r_lambda);
    for (const auto& P : ctx.S_prime)
        if (!P.ramified) ctx.c_elem = ctx.c_elem * P.gen;

    EisResidues R(ctx.c_elem);
    if (R.size() > 2000000) throw Error("ContextTooLarge", "modulus norm " + std::to_string(R.size()));
    std::vector<i64> units;
    for (i64 i = 0; i < R.size(); ++i)
        if (is_unit_mod(R.elem(i), ctx.c_elem)) units.push_back(i);

    ctx.is_cube_mod_c.assign(R.size(), 0);
    std::set<i64> K;
    for (i64 i : units) {
        CycInt x = R.elem(i);
        i64 cu = R.index(x * x * x);
        ctx.is_cube_mod_c[cu] = 1;
        for (const auto& u : eis_units()) K.insert(R.index(u * x * x * x));
    }
    ctx.class_of_residue.assign(R.size(), -1);
    for (i64 i : units) {
        if (ctx.class_of_residue[i] >= 0) continue;
        int id = (int)ctx.class_rep.size();
        ctx.class_rep.push_back(i);
        CycInt x = R.elem(i);
        for (i64 k : K) ctx.class_of_residue[R.index(x * R.elem(k))] = id;
    }
    int H = (int)ctx.class_rep.size();
    ctx.ray_order = H;
    ctx.class_table.assign(H, std::vector<int>(H));
    for (int a = 0; a < H; ++a)
        for (int b = 0; b < H; ++b)
            ctx.class_table[a][b] = ctx.class_of_residue[R.index(R.elem(ctx.class_rep[a]) * R.elem(ctx.class_rep[b]))];

    const int id0 = ctx.class_of_residue[R.index(CycInt::eis(1, 0))];
    std::vector<char> span(H, 0);
    span[id0] = 1;
    auto extend = [&](int g) {
        std::vector<char> ns = span;
        for (int s = 0; s < H; ++s) {
            if (!span[s]) continue;
            int x = s;
            for (int j = 0; j < ctx.r; ++j) {
                ns[x] = 1;
                x = ctx.class_table[x][g];
            }
        }
        span = ns;
    };
    auto span_size = [&] { return (i64)std::count(span.begin(), span.end(), 1); };
    auto coprime_to_S = [&](i64 ell) {
        for (const auto& P : ctx.S_prime)
            if (P.ell == ell) return false;
        return true;
    };
    const i64 bound = 2000;
    auto primes = primes_upto(bound);
    // rational ideals first, so that I_F(S) decomposes with rational m
    for (i64 ell : primes) {
        if (!coprime_to_S(ell)) continue;
        int cl = ctx.class_of_residue[R.index(CycInt::eis(ell, 0))];
        if (!span[cl]) {
            E0Entry e;
            e.ideal = rational_ideal(ell);
            e.m = CycInt::eis(ell, 0);
            e.rational = true;
            ctx.E0.push_back(e);
            extend(cl);
        }
    }
    ctx.kappa_c = span_size();
    std::vector<PrimeIdeal> cand;
    for (i64 ell : primes)
        if (coprime_to_S(ell))
            for (const auto& P : primes_above(ell)) cand.push_back(P);
    std::stable_sort(cand.begin(), cand.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.norm() != b.norm() ? a.norm() < b.norm() : a.gen < b.gen;
    });
    for (const auto& P : cand) {
        if (span_size() == H) break;
        int cl = ctx.class_of_residue[R.index(P.gen)];
        if (!span[cl]) {
            E0Entry e;
            e.ideal = Ideal{{P, 1}};
            e.m = P.gen;
            ctx.E0.push_back(e);
            extend(cl);
        }
    }
    if (span_size() != H) throw Error("ContextTooLarge", "prime bound too small to span R_c");
    ctx.rayclass_factors.assign(ctx.E0.size(), ctx.r);

    ctx.class_coords.assign(H, {});
    size_t k = ctx.E0.size();
    i64 combos = ipow(ctx.r, (unsigned)k);
    for (i64 code = 0; code < combos; ++code) {
        std::vector<int> a(k);
        i64 c = code;
        int cl = id0;
        for (size_t i = 0; i < k; ++i) {
            a[i] = (int)(c % ctx.r);
            c /= ctx.r;
            int g = ctx.class_of_residue[R.index(ctx.E0[i].m)];
            for (int j = 0; j < a[i]; ++j) cl = ctx.class_table[cl][g];
        }
        ctx.class_coords[cl] = a;
    }
    return ctx;
}

const SymbolContext& default_context() {
    static const SymbolContext ctx = build_context({prime_above(3)});
    return ctx;
}

int class_of(const SymbolContext& ctx, const CycInt& x) {
    EisResidues R(ctx.c_elem);
    int cl = ctx.class_of_residue[R.index(x)];
    if (cl < 0) throw Error("NotInIS", x.str() + " not coprime to c");
    return cl;
}

int class_of(const SymbolContext& ctx, const Ideal& a) { return class_of(ctx, ideal_generator(a)); }

bool class_trivial(const SymbolContext& ctx, i64 n) {
    return class_of(ctx, CycInt::eis(n, 0)) == class_of(ctx, CycInt::eis(1, 0));
}

static CycInt e_generator(const SymbolContext& ctx, int cl) {
    CycInt m = CycInt::eis(1, 0);
    const auto& a = ctx.class_coords[cl];
    for (size_t i = 0; i < a.size(); ++i) m = m * cpow(ctx.E0[i].m, (unsigned)a[i]);
    return m;
}

Decomposition decompose(const SymbolContext& ctx, const CycInt& g) {
    EisResidues R(ctx.c_elem);
    Decomposition d;
    d.generator = g;
    d.e_class = class_of(ctx, g);
    d.m_e = e_generator(ctx, d.e_class);
    // find a unit v and a unit cube x^3 with g*v = m_e * x^3 mod c
    const auto& U = eis_units();
    for (int v = 0; v < 6; ++v) {
        i64 target = R.index(g * U[v]);
        for (i64 i = 0; i < R.size(); ++i) {
            if (!ctx.is_cube_mod_c[i]) continue;
            if (R.index(d.m_e * R.elem(i)) == target) {
                d.unit = v;
                return d;
            }
        }
    }
    throw Error("Internal", "no decomposition for " + g.str());
}

static void check_IS(const SymbolContext& ctx, const Ideal& a) {
    for (const auto& P : ctx.S_prime)
        if (a.count(P)) throw Error("NotInIS", "support meets S'");
}

int extended_symbol_from(const SymbolContext& ctx, const CycInt& g, const Ideal& n) {
    Ideal m = ideal_of(g);
    check_IS(ctx, m);
    check_IS(ctx, n);
    if (!coprime(m, n)) throw Error("NotCoprime", ideal_str(m) + " and " + ideal_str(n));
    Decomposition d = decompose(ctx, g);
    return element_symbol(g * eis_units()[d.unit], n);
}

int extended_symbol(const SymbolContext& ctx, const Ideal& m, const Ideal& n) {
    check_IS(ctx, m);
    return extended_symbol_from(ctx, ideal_generator(m), n);
}

int reciprocity_alpha(const SymbolContext& ctx, const Ideal& m, const Ideal& n) {
    return mod(extended_symbol(ctx, m, n) - extended_symbol(ctx, n, m), ctx.r);
}

int cubic_kernel_check(const SymbolContext& ctx, i64 bound) {
    // I_F(S)/P_F(c) for F = Q: n mod (c cap Z) up to sign
    i64 m = ipow(3, (unsigned)((ctx.r_lambda + 1) / 2));
    std::set<i64> ells;
    for (const auto& P : ctx.S_prime)
        if (!P.ramified) ells.insert(P.ell);
    for (i64 l : ells) m *= l;
    std::set<i64> ker;
    for (i64 n = 1; n <= bound; ++n) {
        if (gcd(n, m) != 1) continue;
        bool skip = false;
        for (const auto& P : ctx.S_prime)
            if (n % P.ell == 0) skip = true;
        if (skip) continue;
        if (class_trivial(ctx, n)) ker.insert(std::min(n % m, m - n % m));
    }
    return (int)ker.size();
}

std::string serialize_context(const SymbolContext& ctx) {
    std::ostringstream os;
    os << "fermat-symbol-context 1\n";
    os << "r " << ctx.r << " lambda_exponent " << ctx.r_lambda << " ray_order " << ctx.ray_order
       << " kappa_c " << ctx.kappa_c << "\n";
    for (const auto& e : ctx.E0) {
        CycInt g = ideal_generator(e.ideal);
        os << "e " << g.a() << " " << g.b() << " m " << e.m.a() << " " << e.m.b() << (e.rational ? " rational" : "")
           << "\n";
    }
    return os.str();
}

} // namespace fermat
