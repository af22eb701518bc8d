#pragma once
#include "fermat/exec.hpp"
#include "fermat/hecke.hpp"
#include <optional>
#include <string>
#include <vector>

namespace fermat {

extern const char* const kVersion;

struct RationalPoint {
    i64 a = 0, b = 0, c = 1;    // (a / c, b / c) with a^3 + b^3 = delta c^3, gcd(a, b, c) = 1
    bool operator==(const RationalPoint&) const = default;
};
// c-major enumeration, 0 < c <= H, |a|, |b| <= H * ceil(|delta|^(1/3) + 1)
std::vector<RationalPoint> point_search(i64 delta, i64 H, Exec exec = Exec::Parallel);
bool point_on_curve(i64 delta, const RationalPoint& P);      // exact in 128-bit

std::vector<i64> bad_places(int p = 3);                      // primes above 2 * disc(Q(zeta_p))
std::vector<i64> cube_support(i64 delta, int p = 3);         // primes with v_q(delta) != 0 mod p

struct CertifyOptions {
    i64 height = 10000;
    double margin = 10.0;
    i64 X = 0;                  // 0: smallest admissible truncation
};

struct Certificate {
    int p = 3;
    i64 delta = 0;
    i64 delta_free = 0;
    std::vector<i64> supp;
    std::vector<i64> S;
    bool precondition_pass = false;
    std::optional<cplx> l_value;
    double error_estimate = 0;
    std::string verdict;        // "Certified" or "NotCertified(<reason>)"
    i64 height_bound = 0;
    std::vector<RationalPoint> points_found;
    std::string version;
    std::string fingerprint;
    std::string timestamp;
    double margin = 0;
    i64 truncation_x = 0;
    bool certified() const { return verdict == "Certified"; }
};

std::string normalization_fingerprint();                    // FNV-1a over the normalization text
Certificate certify(i64 delta, const CertifyOptions& opt = {});
std::string certificate_json(const Certificate& c);
Certificate certificate_from_json(const std::string& s);
std::string certificate_csv(const Certificate& c);

struct ScanEntry {
    i64 delta = 0, delta_free = 0;
    std::string verdict;
    double l_value = 0, error_estimate = 0;
    bool has_l_value = false;
    i64 points = 0;
    std::string first_point;
};
struct ScanReport {
    i64 lo = 0, hi = -1;
    std::vector<ScanEntry> entries;
    i64 certified = 0, not_certified = 0, precondition_fails = 0, with_points = 0;
    bool partial = false;
};
// certifies each cube-free delta in [lo, hi]; uses FERMAT_CACHE_DIR when set
ScanReport scan(i64 lo, i64 hi, const CertifyOptions& opt = {}, Exec exec = Exec::Parallel);
std::string scan_csv(const ScanReport& r);
std::string scan_json(const ScanReport& r);
void request_stop();                                         // scan stops early, report marked partial

} // namespace fermat
