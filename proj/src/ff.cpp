#include "fermat/ff.hpp"
#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>

namespace fermat {

namespace {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(c);
    return c;
}

// remainder of a modulo m (m nonzero)
Poly poly_rem(Poly a, const Poly& m, i64 p) {
    trim(a);
    size_t dm = m.size() - 1;
    i64 lc_inv = invmod(m.back(), p);
    while (a.size() > dm && !a.empty()) {
        i64 c = mulmod(a.back(), lc_inv, p);
        size_t sh = a.size() - 1 - dm;
        for (size_t j = 0; j <= dm; ++j) a[sh + j] = mod(a[sh + j] - mulmod(c, m[j], p), p);
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^(p^k) mod m by repeated p-th powering
Poly x_frobenius(const Poly& m, i64 p, int k) {
    Poly x = poly_rem(Poly{0, 1}, m, p);
    for (int i = 0; i < k; ++i) {
        Poly r{1}, b = x;
        i64 e = p;
        while (e) {
            if (e & 1) r = poly_rem(poly_mul(r, b, p), m, p);
            b = poly_rem(poly_mul(b, b, p), m, p);
            e >>= 1;
        }
        x = r;
    }
    return x;
}

} // namespace

bool poly_irreducible(const Poly& m0, i64 ell) {
    Poly m = m0;
    trim(m);
    if (m.size() < 2) return false;
    int f = (int)m.size() - 1;
    if (f == 1) return true;
    if (m[0] == 0) return false;
    for (int k = 1; k < f; ++k) {
        Poly t = x_frobenius(m, ell, k);
        t.resize(std::max<size_t>(t.size(), 2), 0);
        t[1] = mod(t[1] - 1, ell);
        trim(t);
        if (t.empty()) return false;
        if (poly_gcd(m, t, ell).size() > 1) return false;
    }
    return true;
}

FieldSpec make_field(i64 ell, int f) {
    if (!is_prime(ell)) throw Error("NotPrime", std::to_string(ell));
    if (f < 1) throw Error("BadInput", "f must be >= 1");
    FieldSpec F;
    F.ell = ell;
    F.f = f;
    (void)F.q();   // overflow check
    if (f == 1) {
        F.modulus = {0, 1};
        return F;
    }
    // lexicographic on (c_{f-1}, ..., c_0) read as a base-ell integer
    i64 count = ipow(ell, (unsigned)f);
    for (i64 code = 0; code < count; ++code) {
        Poly m(f + 1, 0);
        i64 c = code;
        for (int i = 0; i < f; ++i) { m[i] = c % ell; c /= ell; }
        m[f] = 1;
        if (poly_irreducible(m, ell)) {
            F.modulus = m;
            return F;
        }
    }
    throw Error("NoIrreducibleFound", std::to_string(ell) + "^" + std::to_string(f));
}

FieldSpec make_field_with_modulus(i64 ell, Poly modulus) {
    if (!is_prime(ell)) throw Error("NotPrime", std::to_string(ell));
    for (auto& c : modulus) c = mod(c, ell);
    trim(modulus);
    if (modulus.size() < 2 || modulus.back() != 1) throw Error("BadInput", "modulus must be monic of degree >= 1");
    if (!poly_irreducible(modulus, ell)) throw Error("Reducible", "modulus not irreducible");
    FieldSpec F;
    F.ell = ell;
    F.f = (int)modulus.size() - 1;
    F.modulus = modulus;
    (void)F.q();
    return F;
}

FFElem ff_zero(const FieldSpec& F) { return FFElem(F.f, 0); }
FFElem ff_one(const FieldSpec& F) { return ff_from_int(F, 1); }
FFElem ff_from_int(const FieldSpec& F, i64 v) {
    FFElem a(F.f, 0);
    a[0] = mod(v, F.ell);
    return a;
}

FFElem ff_add(const FieldSpec& F, const FFElem& a, const FFElem& b) {
    FFElem c(F.f);
    for (int i = 0; i < F.f; ++i) c[i] = (a[i] + b[i]) % F.ell;
    return c;
}

FFElem ff_sub(const FieldSpec& F, const FFElem& a, const FFElem& b) {
    FFElem c(F.f);
    for (int i = 0; i < F.f; ++i) c[i] = mod(a[i] - b[i], F.ell);
    return c;
}

FFElem ff_mul(const FieldSpec& F, const FFElem& a, const FFElem& b) {
    if (F.f == 1) return {mulmod(a[0], b[0], F.ell)};
    Poly r = poly_rem(poly_mul(a, b, F.ell), F.modulus, F.ell);
    r.resize(F.f, 0);
    return r;
}

FFElem ff_pow(const FieldSpec& F, FFElem a, u64 e) {
    FFElem r = ff_one(F);
    while (e) {
        if (e & 1) r = ff_mul(F, r, a);
        a = ff_mul(F, a, a);
        e >>= 1;
    }
    return r;
}

bool ff_is_zero(const FFElem& a) {
    for (i64 c : a)
        if (c) return false;
    return true;
}

FFElem ff_inv(const FieldSpec& F, const FFElem& a) {
    if (ff_is_zero(a)) throw Error("DivisionByZero", "ff_inv");
    return ff_pow(F, a, (u64)(F.q() - 2));
}

i64 ff_encode(const FieldSpec& F, const FFElem& a) {
    i64 v = 0;
    for (int i = F.f - 1; i >= 0; --i) v = v * F.ell + a[i];
    return v;
}

FFElem ff_decode(const FieldSpec& F, i64 idx) {
    FFElem a(F.f);
    for (int i = 0; i < F.f; ++i) { a[i] = idx % F.ell; idx /= F.ell; }
    return a;
}

static bool has_full_order(const FieldSpec& F, const FFElem& x, i64 n, const std::vector<std::pair<i64, int>>& fac) {
    if (ff_is_zero(x)) return false;
    for (auto [p, e] : fac)
        if (ff_pow(F, x, (u64)(n / p)) == ff_one(F)) return false;
    return true;
}

FFElem least_generator(const FieldSpec& F) {
    i64 q = F.q(), n = q - 1;
    auto fac = factor(n);
    for (i64 idx = 1; idx < q; ++idx) {
        FFElem x = ff_decode(F, idx);
        if (has_full_order(F, x, n, fac)) return x;
    }
    throw Error("Internal", "no generator");
}

namespace {
struct BsgsTable {
    i64 m;
    std::unordered_map<i64, i64> baby;
    FFElem giant;
};
std::mutex bsgs_mu;
std::map<std::pair<Poly, std::pair<i64, i64>>, std::shared_ptr<BsgsTable>> bsgs_cache;
} // namespace

i64 discrete_log(const FieldSpec& F, const FFElem& g, const FFElem& x) {
    i64 q = F.q();
    if (q > (i64(1) << 40)) throw Error("FieldTooLarge", "q > 2^40");
    if (ff_is_zero(x)) return -1;
    i64 n = q - 1;
    std::shared_ptr<BsgsTable> T;
    {
        std::lock_guard<std::mutex> lk(bsgs_mu);
        auto key = std::make_pair(F.modulus, std::make_pair(F.ell, ff_encode(F, g)));
        auto it = bsgs_cache.find(key);
        if (it != bsgs_cache.end()) {
            T = it->second;
        } else {
            T = std::make_shared<BsgsTable>();
            T->m = (i64)std::ceil(std::sqrt((double)n));
            FFElem cur = ff_one(F);
            for (i64 j = 0; j < T->m; ++j) {
                T->baby.emplace(ff_encode(F, cur), j);
                cur = ff_mul(F, cur, g);
            }
            T->giant = ff_inv(F, ff_pow(F, g, (u64)T->m));
            bsgs_cache.emplace(key, T);
        }
    }
    FFElem y = x;
    for (i64 i = 0; i <= n / T->m + 1; ++i) {
        auto it = T->baby.find(ff_encode(F, y));
        if (it != T->baby.end()) return mod(i * T->m + it->second, n);
        y = ff_mul(F, y, T->giant);
    }
    return -1;
}

int MultCharacter::eval(const FFElem& x) const {
    if (ff_is_zero(x)) return -1;
    i64 q = field.q();
    FFElem y = ff_pow(field, x, (u64)((q - 1) / order));
    FFElem z = ff_one(field);
    for (int e = 0; e < order; ++e) {
        if (y == z) return e;
        z = ff_mul(field, z, zeta_image);
    }
    throw Error("Internal", "character value outside mu_r");
}

std::complex<double> MultCharacter::value(const FFElem& x) const {
    int e = eval(x);
    if (e < 0) return 0.0;
    return std::polar(1.0, 2 * M_PI * e / order);
}

MultCharacter char_with_zeta(const FieldSpec& F, int r, const FFElem& zeta_image) {
    if (r < 2) throw Error("DegenerateOrder", "r must be >= 2");
    i64 q = F.q();
    if ((q - 1) % r) throw Error("OrderDoesNotDivide", std::to_string(r) + " does not divide " + std::to_string(q - 1));
    for (int d = 1; d < r; ++d)
        if (r % d == 0 && ff_pow(F, zeta_image, (u64)d) == ff_one(F))
            throw Error("BadInput", "zeta image is not a primitive root of unity");
    if (ff_pow(F, zeta_image, (u64)r) != ff_one(F)) throw Error("BadInput", "zeta image is not an r-th root of unity");
    MultCharacter chi;
    chi.field = F;
    chi.generator = least_generator(F);
    chi.order = r;
    chi.zeta_image = zeta_image;
    return chi;
}

MultCharacter char_of_order(const FieldSpec& F, int r) {
    if (r < 2) throw Error("DegenerateOrder", "r must be >= 2");
    i64 q = F.q();
    if ((q - 1) % r) throw Error("OrderDoesNotDivide", std::to_string(r) + " does not divide " + std::to_string(q - 1));
    FFElem g = least_generator(F);
    MultCharacter chi;
    chi.field = F;
    chi.generator = g;
    chi.order = r;
    chi.zeta_image = ff_pow(F, g, (u64)((q - 1) / r));
    return chi;
}

MultCharacter char_power(const MultCharacter& chi, int k) {
    // chi^k(x) = k * chi(x): pick zeta' with zeta'^(k) ... realized by zeta' = zeta^(k^-1)
    if (gcd(k, chi.order) != 1) throw Error("BadInput", "power must be a unit mod r");
    MultCharacter c = chi;
    c.zeta_image = ff_pow(chi.field, chi.zeta_image, (u64)invmod(mod(k, chi.order), chi.order));
    return c;
}

// exponent table chi(g^L) = L * mult mod r
static int char_multiplier(const MultCharacter& chi, const FieldTables& T) {
    return chi.eval(ff_decode(T.F, T.exp[1]));
}

CycInt jacobi_sum(const MultCharacter& a, const MultCharacter& b) {
    if (!(a.field == b.field)) throw Error("FieldMismatch", "jacobi_sum");
    if (a.order != b.order) throw Error("OrderMismatch", "jacobi_sum");
    int r = a.order;
    if (r != 3 && r != 4 && r != 5 && r != 7) throw Error("UnsupportedOrder", "r=" + std::to_string(r));
    std::vector<i64> cnt(r, 0);
    i64 q = a.field.q();
    if (q <= (1 << 24)) {
        auto T = field_tables(a.field);
        int ma = char_multiplier(a, *T), mb = char_multiplier(b, *T);
        int one = T->exp[0];
        for (i64 x = 0; x < q; ++x) {
            if (x == 0 || x == one) continue;
            int y = T->sub(one, (int)x);
            i64 e = (i64)T->log[x] * ma + (i64)T->log[y] * mb;
            ++cnt[e % r];
        }
    } else {
        FFElem one = ff_one(a.field);
        for (i64 x = 2; x < q; ++x) {
            FFElem u = ff_decode(a.field, x);
            if (u == one) continue;
            ++cnt[(a.eval(u) + b.eval(ff_sub(a.field, one, u))) % r];
        }
    }
    std::vector<i64> c(r);
    for (int k = 0; k < r; ++k) c[k] = -cnt[k];
    return CycInt(r, c);
}

std::complex<double> gauss_sum(const MultCharacter& chi) {
    if (chi.field.f != 1) throw Error("ExtensionFieldUnsupported", "gauss_sum needs a prime field");
    if (chi.eval(chi.generator) == 0) throw Error("TrivialCharacter", "gauss_sum");
    i64 ell = chi.field.ell;
    std::vector<std::complex<double>> zv(chi.order);
    for (int e = 0; e < chi.order; ++e) zv[e] = std::polar(1.0, 2 * M_PI * e / chi.order);
    std::complex<double> s = 0;
    for (i64 t = 1; t < ell; ++t) s += zv[chi.eval({t})] * std::polar(1.0, 2 * M_PI * (double)t / (double)ell);
    return s;
}

int FieldTables::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    i64 k = (i64)log[a] + log[b];
    if (k >= q - 1) k -= q - 1;
    return exp[k];
}

int FieldTables::add(int a, int b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    // a + b = a (1 + b/a)
    i64 k = (i64)log[b] - log[a];
    if (k < 0) k += q - 1;
    return mul(a, add1[exp[k]]);
}

int FieldTables::pow(int a, i64 e) const {
    if (a == 0) return e == 0 ? exp[0] : 0;
    i64 k = mod((i64)log[a] * (e % (q - 1)), q - 1);
    return exp[k];
}

std::shared_ptr<const FieldTables> field_tables(const FieldSpec& F) {
    static std::mutex mu;
    static std::map<std::pair<i64, Poly>, std::shared_ptr<const FieldTables>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({F.ell, F.modulus});
        if (it != cache.end()) return it->second;
    }
    i64 q = F.q();
    if (q > (1 << 24)) throw Error("FieldTooLarge", "dense tables need q <= 2^24");
    auto T = std::make_shared<FieldTables>();
    T->F = F;
    T->q = q;
    T->log.assign(q, -1);
    T->exp.assign(q - 1, 0);
    FFElem g = least_generator(F), x = ff_one(F);
    for (i64 k = 0; k < q - 1; ++k) {
        i64 id = ff_encode(F, x);
        T->exp[k] = (int)id;
        T->log[id] = (int)k;
        x = ff_mul(F, x, g);
    }
    T->add1.resize(q);
    T->neg.resize(q);
    for (i64 id = 0; id < q; ++id) {
        i64 c0 = id % F.ell;
        T->add1[id] = (int)(id - c0 + (c0 + 1) % F.ell);
        T->neg[id] = (int)ff_encode(F, ff_sub(F, ff_zero(F), ff_decode(F, id)));
    }
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(std::make_pair(F.ell, F.modulus), T).first->second;
}

} // namespace fermat
