#include "fermat/cyclotomic.hpp"
#include <algorithm>
#include <cmath>
#include <sstream>

namespace fermat {

int euler_phi(int r) {
    switch (r) {
    case 3: case 4: return 2;
    case 5: return 4;
    case 7: return 6;
    }
    throw Error("UnsupportedOrder", "r=" + std::to_string(r));
}

static const std::vector<i64>& cyclo_poly(int r) {
    static const std::vector<i64> p3{1, 1, 1}, p4{1, 0, 1}, p5(5, 1), p7(7, 1);
    switch (r) {
    case 3: return p3;
    case 4: return p4;
    case 5: return p5;
    case 7: return p7;
    }
    throw Error("UnsupportedOrder", "r=" + std::to_string(r));
}

// reduce an arbitrary-length coefficient list mod Phi_r
static std::vector<i64> reduce_poly(int r, std::vector<i64> p) {
    const auto& phi = cyclo_poly(r);
    int d = euler_phi(r);
    for (int k = (int)p.size() - 1; k >= d; --k) {
        i64 top = p[k];
        if (!top) continue;
        for (int j = 0; j <= d; ++j)
            p[k - d + j] = checked_add(p[k - d + j], -checked_mul(top, phi[j]));
    }
    p.resize(d, 0);
    return p;
}

CycInt::CycInt(int r_, std::vector<i64> c_) : r(r_) {
    int d = euler_phi(r);
    c = (int)c_.size() > d ? reduce_poly(r, std::move(c_)) : std::move(c_);
    c.resize(d, 0);
}

CycInt CycInt::zero(int r) { return CycInt(r, std::vector<i64>(euler_phi(r), 0)); }
CycInt CycInt::from_int(int r, i64 v) {
    CycInt x = zero(r);
    x.c[0] = v;
    return x;
}
CycInt CycInt::zeta(int r, int k) {
    std::vector<i64> p(r, 0);
    p[mod(k, r)] = 1;
    return CycInt(r, p);
}

bool CycInt::is_rational() const {
    return std::all_of(c.begin() + 1, c.end(), [](i64 v) { return v == 0; });
}
bool CycInt::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](i64 v) { return v == 0; });
}

std::string CycInt::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]";
    return os.str();
}

static void same_order(const CycInt& x, const CycInt& y) {
    if (x.r != y.r) throw Error("OrderMismatch", std::to_string(x.r) + " vs " + std::to_string(y.r));
}

CycInt operator+(const CycInt& x, const CycInt& y) {
    same_order(x, y);
    CycInt z = x;
    for (size_t i = 0; i < z.c.size(); ++i) z.c[i] = checked_add(z.c[i], y.c[i]);
    return z;
}
CycInt operator-(const CycInt& x) {
    CycInt z = x;
    for (auto& v : z.c) v = -v;
    return z;
}
CycInt operator-(const CycInt& x, const CycInt& y) { return x + (-y); }

CycInt operator*(const CycInt& x, const CycInt& y) {
    same_order(x, y);
    if (x.r == 3) {
        // (a+bw)(c+dw) = ac - bd + (ad + bc - bd) w
        i64 a = x.c[0], b = x.c[1], c = y.c[0], d = y.c[1];
        i64 bd = checked_mul(b, d);
        return CycInt::eis(checked_add(checked_mul(a, c), -bd),
                           checked_add(checked_add(checked_mul(a, d), checked_mul(b, c)), -bd));
    }
    std::vector<i64> p(x.c.size() + y.c.size() - 1, 0);
    for (size_t i = 0; i < x.c.size(); ++i)
        for (size_t j = 0; j < y.c.size(); ++j)
            p[i + j] = checked_add(p[i + j], checked_mul(x.c[i], y.c[j]));
    return CycInt(x.r, p);
}

CycInt operator*(i64 k, const CycInt& x) {
    CycInt z = x;
    for (auto& v : z.c) v = checked_mul(v, k);
    return z;
}

CycInt cpow(CycInt x, unsigned e) {
    CycInt r = CycInt::from_int(x.r, 1);
    while (e) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

CycInt galois_apply(const CycInt& x, int i) {
    if (gcd(i, x.r) != 1) throw Error("NotAUnit", std::to_string(i) + " mod " + std::to_string(x.r));
    std::vector<i64> p(x.r, 0);
    for (size_t k = 0; k < x.c.size(); ++k) {
        int t = (int)mod((i64)i * (i64)k, x.r);
        p[t] = checked_add(p[t], x.c[k]);
    }
    return CycInt(x.r, p);
}

CycInt conj(const CycInt& x) { return galois_apply(x, x.r - 1); }

i64 norm(const CycInt& x) {
    if (x.r == 3) {
        i64 a = x.c[0], b = x.c[1];
        return checked_add(checked_add(checked_mul(a, a), -checked_mul(a, b)), checked_mul(b, b));
    }
    CycInt p = CycInt::from_int(x.r, 1);
    for (int i = 1; i < x.r; ++i)
        if (gcd(i, x.r) == 1) p = p * galois_apply(x, i);
    if (!p.is_rational()) throw Error("Internal", "norm not rational");
    return p.c[0];
}

std::complex<double> embed(const CycInt& x, int j) {
    std::complex<double> s = 0;
    for (size_t k = 0; k < x.c.size(); ++k)
        s += (double)x.c[k] * std::polar(1.0, 2 * M_PI * (double)(j * (int)k) / x.r);
    return s;
}

std::variant<CycInt, i64> cyc_arith(const CycInt& x, const CycInt& y, CycOp op) {
    switch (op) {
    case CycOp::add: return x + y;
    case CycOp::mul: return x * y;
    case CycOp::conj: return conj(x);
    case CycOp::norm: return norm(x);
    }
    return x;
}

// ---- Eisenstein integers ----

const std::array<CycInt, 6>& eis_units() {
    static const std::array<CycInt, 6> u{CycInt::eis(1, 0), CycInt::eis(0, 1), CycInt::eis(-1, -1),
                                         CycInt::eis(-1, 0), CycInt::eis(0, -1), CycInt::eis(1, 1)};
    return u;
}

static void need3(const CycInt& x) {
    if (x.r != 3) throw Error("UnsupportedOrder", "r=" + std::to_string(x.r) + " (Eisenstein only)");
}

std::optional<CycInt> exact_div(const CycInt& num, const CycInt& den) {
    need3(num);
    need3(den);
    i64 n = norm(den);
    if (n == 0) throw Error("DivisionByZero", "exact_div");
    CycInt t = num * conj(den);
    if (t.c[0] % n || t.c[1] % n) return std::nullopt;
    return CycInt::eis(t.c[0] / n, t.c[1] / n);
}

bool divides(const CycInt& d, const CycInt& x) { return exact_div(x, d).has_value(); }

static i64 round_div(i64 a, i64 n) {
    // nearest integer to a/n, n > 0
    i64 q = a / n, r = a % n;
    if (r < 0) { r += n; --q; }
    if (2 * r > n) ++q;
    return q;
}

CycInt eis_rem(const CycInt& x, const CycInt& m) {
    need3(x);
    i64 n = norm(m);
    CycInt t = x * conj(m);
    CycInt q = CycInt::eis(round_div(t.c[0], n), round_div(t.c[1], n));
    return x - q * m;
}

CycInt eis_gcd(CycInt x, CycInt y) {
    while (!y.is_zero()) {
        CycInt r = eis_rem(x, y);
        x = y;
        y = r;
    }
    return x;
}

bool is_primary(const CycInt& x) {
    need3(x);
    return mod(x.c[0], 3) == 2 && mod(x.c[1], 3) == 0;
}

CycInt primary_associate(const CycInt& x) {
    need3(x);
    i64 n = norm(x);
    if (n == 1) throw Error("UnitInput", "units have no primary associate");
    if (n % 3 == 0) throw Error("NotCoprimeToLambda", x.str());
    for (const auto& u : eis_units()) {
        CycInt y = u * x;
        if (is_primary(y)) return y;
    }
    throw Error("Internal", "no primary associate for " + x.str());
}

CycInt lambda_elem() { return CycInt::eis(1, -1); }

int lambda_valuation(const CycInt& x) {
    if (x.is_zero()) throw Error("BadInput", "valuation of zero");
    int v = 0;
    CycInt y = x;
    while (auto q = exact_div(y, lambda_elem())) { y = *q; ++v; }
    return v;
}

CycInt split_generator_search(i64 ell) {
    i64 B = (i64)std::ceil(2 * std::sqrt((double)ell));
    for (i64 a = -B; a <= B; ++a)
        for (i64 b = -B; b <= B; ++b)
            if (a * a - a * b + b * b == ell) return primary_associate(CycInt::eis(a, b));
    throw Error("SearchExhausted", "ell=" + std::to_string(ell));
}

std::vector<PrimeIdeal> primes_above(i64 ell) {
    if (!is_prime(ell)) throw Error("NotPrime", std::to_string(ell));
    if (ell == 3) {
        PrimeIdeal p;
        p.ell = 3; p.f = 1; p.gen = lambda_elem(); p.ramified = true;
        return {p};
    }
    if (ell % 3 == 2) {
        PrimeIdeal p;
        p.ell = ell; p.f = 2; p.gen = CycInt::eis(ell, 0);
        if (!is_primary(p.gen)) p.gen = primary_associate(p.gen);
        return {p};
    }
    // omega is a root of x^2+x+1; gcd(ell, omega - t) is a prime above ell
    i64 s = sqrt_mod(ell - 3, ell);
    i64 t = mulmod(mod(s - 1, ell), invmod(2, ell), ell);
    CycInt g = eis_gcd(CycInt::eis(ell, 0), CycInt::eis(-t, 1));
    if (norm(g) != ell) throw Error("Internal", "split prime gcd failed for " + std::to_string(ell));
    CycInt p1 = primary_associate(g), p2 = primary_associate(conj(g));
    if (p2 < p1) std::swap(p1, p2);
    PrimeIdeal a, b;
    a.ell = b.ell = ell;
    a.gen = p1; b.gen = p2;
    a.idx = 0; b.idx = 1;
    return {a, b};
}

PrimeIdeal prime_above(i64 ell, int r) {
    if (r != 3) throw Error("UnsupportedOrder", "prime_above supports r=3 only");
    return primes_above(ell).front();
}

PrimeIdeal conj_prime(const PrimeIdeal& p) {
    if (!p.split()) return p;
    return primes_above(p.ell)[1 - p.idx];
}

i64 omega_root(const PrimeIdeal& p) {
    if (!p.split()) throw Error("BadInput", "omega_root needs a split prime");
    i64 a = p.gen.c[0], b = p.gen.c[1];
    return mod(-mulmod(mod(a, p.ell), invmod(b, p.ell), p.ell), p.ell);
}

// ---- residues mod G ----

EisResidues::EisResidues(const CycInt& g) : G(g) {
    need3(g);
    N = norm(g);
    if (N <= 0) throw Error("BadInput", "zero modulus");
    i64 a = g.c[0], b = g.c[1];
    // lattice spanned by (a,b) and (-b, a-b); find s,t with s*b + t*(a-b) = D
    i64 x0 = b, x1 = a - b;
    i64 old_r = x0, r = x1, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    D = old_r;
    e = old_s * a - old_t * b;
    A = N / D;
    e = mod(e, A);
}

i64 EisResidues::index(const CycInt& v) const {
    i64 x = v.c[0], y = v.c[1];
    i64 k = y >= 0 ? y / D : -((-y + D - 1) / D);
    y -= k * D;
    x = mod(x - mulmod(mod(k, A), e, A), A);
    return y * A + x;
}

CycInt EisResidues::elem(i64 idx) const { return CycInt::eis(idx % A, idx / A); }

} // namespace fermat
