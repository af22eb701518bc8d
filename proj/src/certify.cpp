#include "fermat/certify.hpp"
#include "fermat/io.hpp"
#include "fermat/symbols.hpp"
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <omp.h>
#include <sstream>

namespace fermat {

const char* const kVersion = "fermat 0.1.0";

namespace {

using i128 = __int128;

i128 cube128(i128 x) { return x * x * x; }

// floor cube root for |x| < 2^120
i128 icbrt128(i128 x) {
    long double r = std::cbrt((long double)x);
    i128 y = (i128)std::llround(r);
    while (cube128(y) > x) --y;
    while (cube128(y + 1) <= x) ++y;
    return y;
}

std::atomic<bool> g_stop{false};

const int kSieveMod = 7 * 9 * 13;

std::vector<char> cube_table(int m) {
    std::vector<char> t(m, 0);
    for (int x = 0; x < m; ++x) t[(i64)x * x % m * x % m] = 1;
    return t;
}

// all points with this c, a >= b, mirrored afterwards
void search_c(i64 delta, i64 c, i64 B, const std::vector<char>& cubes, std::vector<RationalPoint>& out) {
    const i128 T = (i128)delta * cube128(c);
    std::vector<char> ok(kSieveMod);
    const i64 tm = (i64)(T % kSieveMod + kSieveMod) % kSieveMod;
    for (int r = 0; r < kSieveMod; ++r) {
        i64 a3 = (i64)r * r % kSieveMod * r % kSieveMod;
        ok[r] = cubes[(tm - a3 + kSieveMod) % kSieveMod];
    }
    // a >= b forces 2 a^3 >= T
    i64 a0 = (i64)icbrt128(T / 2) - 1;
    a0 = std::max(a0, -B);
    int r = (int)(((a0 % kSieveMod) + kSieveMod) % kSieveMod);
    for (i64 a = a0; a <= B; ++a, r = r + 1 == kSieveMod ? 0 : r + 1) {
        if (!ok[r]) continue;
        i128 rest = T - cube128(a);
        i128 b = icbrt128(rest);
        if (cube128(b) != rest || b > a || b < -B) continue;
        i64 bb = (i64)b;
        if (std::gcd(std::gcd(std::abs(a), std::abs(bb)), c) != 1) continue;
        out.push_back({a, bb, c});
        if (a != bb) out.push_back({bb, a, c});
    }
}

std::string iso_timestamp() {
    std::time_t t;
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) t = (std::time_t)std::atoll(e);
    else t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string cache_path(i64 delta, const CertifyOptions& opt) {
    std::string dir = cache_dir(3);
    if (dir.empty()) return {};
    std::ostringstream os;
    os << dir << "/cert_" << delta << "_H" << opt.height << "_M" << fmt_double(opt.margin) << "_X" << opt.X << ".json";
    return os.str();
}

} // namespace

bool point_on_curve(i64 delta, const RationalPoint& P) {
    return P.c != 0 && cube128(P.a) + cube128(P.b) == (i128)delta * cube128(P.c);
}

std::vector<RationalPoint> point_search(i64 delta, i64 H, Exec exec) {
    if (delta == 0) throw Error("BadInput", "delta must be nonzero");
    if (H < 1 || H > 1000000) throw Error("BadInput", "height must be in [1, 1e6]");
    const i64 K = (i64)std::ceil(std::cbrt((double)std::abs(delta)) + 1);
    const i64 B = checked_mul(H, K);
    const auto cubes = cube_table(kSieveMod);
    std::vector<std::vector<RationalPoint>> per(H + 1);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::Parallel)
    for (i64 c = 1; c <= H; ++c) search_c(delta, c, B, cubes, per[c]);
    std::vector<RationalPoint> out;
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<i64> bad_places(int p) {
    // disc(Q(zeta_p)) = +-p^(p-2): only its prime support matters
    std::vector<i64> S{2};
    if (p != 2) S.push_back(p);
    return S;
}

std::vector<i64> cube_support(i64 delta, int p) {
    std::vector<i64> s;
    for (auto [q, e] : factor(std::abs(delta)))
        if (e % p) s.push_back(q);
    return s;
}

std::string normalization_fingerprint() {
    static const std::string fp = [] {
        std::string text = std::string(kVersion) + "\n" + serialize_context(default_context()) +
                           "psi(P) = -pi/sqrt(N P), pi primary; chi = [delta^2]_3; central value s = 1/2 unitary\n";
        u64 h = 1469598103934665603ull;
        for (unsigned char ch : text) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
        return std::string(buf);
    }();
    return fp;
}

Certificate certify(i64 delta, const CertifyOptions& opt) {
    if (delta == 0) throw Error("BadInput", "delta must be nonzero");
    const std::string cpath = cache_path(delta, opt);
    if (!cpath.empty() && std::filesystem::exists(cpath)) return certificate_from_json(read_file(cpath));

    Certificate c;
    c.p = 3;
    c.delta = delta;
    c.delta_free = power_free(delta, 3);
    c.supp = cube_support(delta);
    c.S = bad_places(3);
    c.precondition_pass = std::any_of(c.supp.begin(), c.supp.end(), [&](i64 q) { return std::find(c.S.begin(), c.S.end(), q) == c.S.end(); });
    c.height_bound = opt.height;
    c.margin = opt.margin;
    c.version = kVersion;
    c.fingerprint = normalization_fingerprint();
    c.timestamp = iso_timestamp();

    Verdict lv = Verdict::Indeterminate;
    bool computed = false;
    {
        try {
            LValue v = central_value(hecke_for_delta(delta), opt.X);
            c.l_value = v.value;
            c.error_estimate = v.error;
            c.truncation_x = v.X;
            lv = nonvanishing_decide(v.value.real(), v.error, opt.margin);
            computed = true;
        } catch (const Error&) {
            if (c.precondition_pass) throw;
        }
    }
    c.points_found = point_search(delta, opt.height);

    if (!c.precondition_pass) c.verdict = "NotCertified(PreconditionFails)";
    else if (!computed || lv == Verdict::Indeterminate) c.verdict = "NotCertified(LValueIndeterminate)";
    else if (lv == Verdict::ZeroConsistent) c.verdict = "NotCertified(LValueZeroConsistent)";
    else if (!c.points_found.empty()) c.verdict = "NotCertified(SoundnessViolation)";
    else c.verdict = "Certified";

    if (!cpath.empty()) write_file_atomic(cpath, certificate_json(c));
    return c;
}

std::string certificate_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["status"] = "heuristic-analytic";
    j["p"] = c.p;
    j["delta"] = c.delta;
    j["delta_free"] = c.delta_free;
    j["supp"] = c.supp;
    j["S"] = c.S;
    j["precondition_pass"] = c.precondition_pass;
    if (c.l_value) j["l_value"] = {{"re", c.l_value->real()}, {"im", c.l_value->imag()}};
    else j["l_value"] = nullptr;
    j["error_estimate"] = c.error_estimate;
    j["margin"] = c.margin;
    j["truncation_x"] = c.truncation_x;
    j["verdict"] = c.verdict;
    auto pts = nlohmann::ordered_json::array();
    for (const auto& P : c.points_found) pts.push_back({P.a, P.b, P.c});
    j["search_crosscheck"] = {{"height_bound", c.height_bound}, {"points_found", pts}};
    j["toolchain"] = {{"version", c.version}, {"normalization_fingerprint", c.fingerprint}};
    j["timestamp"] = c.timestamp;
    return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& s) {
    auto j = nlohmann::json::parse(s);
    if (j.value("schema", 0) != 1) throw Error("BadInput", "unsupported certificate schema");
    Certificate c;
    c.p = j["p"];
    c.delta = j["delta"];
    c.delta_free = j["delta_free"];
    c.supp = j["supp"].get<std::vector<i64>>();
    c.S = j["S"].get<std::vector<i64>>();
    c.precondition_pass = j["precondition_pass"];
    if (!j["l_value"].is_null()) c.l_value = cplx(j["l_value"]["re"].get<double>(), j["l_value"]["im"].get<double>());
    c.error_estimate = j["error_estimate"];
    c.margin = j["margin"];
    c.truncation_x = j["truncation_x"];
    c.verdict = j["verdict"];
    c.height_bound = j["search_crosscheck"]["height_bound"];
    for (auto& p : j["search_crosscheck"]["points_found"]) c.points_found.push_back({p[0], p[1], p[2]});
    c.version = j["toolchain"]["version"];
    c.fingerprint = j["toolchain"]["normalization_fingerprint"];
    c.timestamp = j["timestamp"];
    return c;
}

std::string certificate_csv(const Certificate& c) {
    std::ostringstream os;
    os << "delta,delta_free,precondition_pass,l_value_re,l_value_im,error_estimate,verdict,height_bound,points_found\n";
    os << c.delta << ',' << c.delta_free << ',' << (c.precondition_pass ? 1 : 0) << ',';
    if (c.l_value) os << fmt_double(c.l_value->real()) << ',' << fmt_double(c.l_value->imag());
    else os << ',';
    os << ',' << fmt_double(c.error_estimate) << ',' << c.verdict << ',' << c.height_bound << ',' << c.points_found.size() << '\n';
    return os.str();
}

void request_stop() { g_stop = true; }

ScanReport scan(i64 lo, i64 hi, const CertifyOptions& opt, Exec exec) {
    ScanReport r;
    r.lo = lo;
    r.hi = hi;
    if (hi - lo >= 10000) throw Error("BadInput", "scan range must be at most 1e4 wide");
    std::vector<i64> ds;
    for (i64 d = lo; d <= hi; ++d)
        if (d != 0 && power_free(d, 3) == d) ds.push_back(d);
    std::vector<std::optional<ScanEntry>> out(ds.size());
    g_stop = false;
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
    for (size_t i = 0; i < ds.size(); ++i) {
        if (g_stop) continue;
        Certificate c = certify(ds[i], opt);
        ScanEntry e;
        e.delta = c.delta;
        e.delta_free = c.delta_free;
        e.verdict = c.verdict;
        e.has_l_value = c.l_value.has_value();
        if (c.l_value) e.l_value = c.l_value->real();
        e.error_estimate = c.error_estimate;
        e.points = (i64)c.points_found.size();
        if (!c.points_found.empty()) {
            const auto& P = c.points_found.front();
            e.first_point = std::to_string(P.a) + "/" + std::to_string(P.c) + " " + std::to_string(P.b) + "/" + std::to_string(P.c);
        }
        out[i] = e;
    }
    for (auto& e : out) {
        if (!e) {
            r.partial = true;
            continue;
        }
        if (e->verdict == "Certified") ++r.certified;
        else ++r.not_certified;
        if (e->verdict == "NotCertified(PreconditionFails)") ++r.precondition_fails;
        if (e->points > 0) ++r.with_points;
        r.entries.push_back(*e);
    }
    return r;
}

std::string scan_csv(const ScanReport& r) {
    std::ostringstream os;
    os << "delta,delta_free,verdict,l_value,error_estimate,points_found,first_point\n";
    for (const auto& e : r.entries) {
        os << e.delta << ',' << e.delta_free << ',' << e.verdict << ',';
        if (e.has_l_value) os << fmt_double(e.l_value);
        os << ',' << fmt_double(e.error_estimate) << ',' << e.points << ',' << e.first_point << '\n';
    }
    return os.str();
}

std::string scan_json(const ScanReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["range"] = {r.lo, r.hi};
    j["partial"] = r.partial;
    auto es = nlohmann::ordered_json::array();
    for (const auto& e : r.entries) {
        nlohmann::ordered_json x;
        x["delta"] = e.delta;
        x["delta_free"] = e.delta_free;
        x["verdict"] = e.verdict;
        if (e.has_l_value) x["l_value"] = e.l_value;
        else x["l_value"] = nullptr;
        x["error_estimate"] = e.error_estimate;
        x["points_found"] = e.points;
        es.push_back(x);
    }
    j["entries"] = es;
    j["summary"] = {{"certified", r.certified}, {"not_certified", r.not_certified}, {"precondition_fails", r.precondition_fails}, {"with_points", r.with_points}};
    return j.dump(2) + "\n";
}

} // namespace fermat
