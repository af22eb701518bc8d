#include "fermat/arith.hpp"
#include <cmath>
#include <tuple>

namespace fermat {

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("Overflow", "int64 addition");
    return r;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("Overflow", "int64 multiplication");
    return r;
}

i64 powmod(i64 a, u64 e, i64 m) {
    i64 r = 1 % m;
    a = mod(a, m);
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) { i64 t = a % b; a = b; b = t; }
    return a;
}

i64 invmod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        i64 q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw Error("NotInvertible", std::to_string(a) + " mod " + std::to_string(m));
    return mod(x, m);
}

i64 ipow(i64 b, unsigned e) {
    i64 r = 1;
    while (e--) r = checked_mul(r, b);
    return r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic for n < 3.3e24
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
    if (n < 1) throw Error("BadInput", "factor expects n >= 1");
    std::vector<std::pair<i64, int>> f;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

std::vector<i64> primes_upto(i64 n) {
    std::vector<i64> out;
    if (n < 2) return out;
    std::vector<char> comp(n + 1, 0);
    for (i64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (i64 j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return out;
}

std::vector<int> spf_sieve(int n) {
    std::vector<int> spf(n + 1, 0);
    for (int i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (i64 j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = i;
    }
    return spf;
}

i64 icbrt(i64 n) {
    if (n < 0) {
        i64 r = -icbrt(-n);
        if ((i128)r * r * r > n) --r;
        return r;
    }
    i64 r = (i64)std::cbrt((double)n);
    while ((i128)r * r * r > n) --r;
    while ((i128)(r + 1) * (r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_cube(i64 n) {
    i64 r = icbrt(n);
    return (i128)r * r * r == n;
}

i64 rad(i64 n) {
    i64 r = 1;
    for (auto [p, e] : factor(n < 0 ? -n : n)) r *= p;
    return r;
}

i64 power_free(i64 n, int p) {
    if (n == 0) throw Error("BadInput", "zero has no p-th power free part");
    i64 r = 1;
    for (auto [q, e] : factor(n < 0 ? -n : n)) r *= ipow(q, e % p);
    return r;
}

i64 sqrt_mod(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0) return 0;
    if (powmod(a, (p - 1) / 2, p) != 1) throw Error("NotASquare", std::to_string(a));
    // Tonelli-Shanks
    i64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    i64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    i64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        i64 i = 0, tt = t;
        while (tt != 1) { tt = mulmod(tt, tt, p); ++i; }
        i64 b = c;
        for (i64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

int mult_order(i64 a, i64 m) {
    a = mod(a, m);
    if (gcd(a, m) != 1) throw Error("NotAUnit", std::to_string(a));
    i64 x = a;
    int k = 1;
    while (x != 1 % m) { x = mulmod(x, a, m); ++k; }
    return k;
}

} // namespace fermat
