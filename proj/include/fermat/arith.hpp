#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>
#include <utility>

namespace fermat {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Every failure carries a short machine-readable kind ("NotPrime", ...).
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

i64 checked_add(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);

inline i64 mod(i64 a, i64 m) { i64 r = a % m; return r < 0 ? r + m : r; }
inline i64 mulmod(i64 a, i64 b, i64 m) { return (i64)((i128)a * b % m); }
i64 powmod(i64 a, u64 e, i64 m);
i64 invmod(i64 a, i64 m);       // throws if not invertible
i64 gcd(i64 a, i64 b);
i64 ipow(i64 b, unsigned e);    // checked

bool is_prime(i64 n);
std::vector<std::pair<i64, int>> factor(i64 n);   // n >= 1
std::vector<i64> primes_upto(i64 n);
std::vector<int> spf_sieve(int n);                // smallest prime factor, spf[0]=spf[1]=0

i64 icbrt(i64 n);               // floor cube root, works for negatives
bool is_cube(i64 n);
i64 rad(i64 n);
// p-th power free part of |n| (sign dropped: -1 is a p-th power for odd p)
i64 power_free(i64 n, int p);
i64 sqrt_mod(i64 a, i64 p);     // p odd prime, a a square mod p
int mult_order(i64 a, i64 m);   // order of a in (Z/m)^x, small m

} // namespace fermat
