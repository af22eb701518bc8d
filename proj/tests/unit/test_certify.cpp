#include "doctest.h"
#include "fermat/certify.hpp"
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <set>
#include <tuple>

using namespace fermat;

namespace {
std::vector<std::tuple<i64, i64, i64>> brute(i64 delta, i64 H) {
    i64 K = (i64)std::ceil(std::cbrt((double)std::abs(delta)) + 1), B = H * K;
    std::vector<std::tuple<i64, i64, i64>> out;
    for (i64 c = 1; c <= H; ++c)
        for (i64 a = -B; a <= B; ++a)
            for (i64 b = -B; b <= B; ++b)
                if (a * a * a + b * b * b == delta * c * c * c && std::gcd(std::gcd(std::abs(a), std::abs(b)), c) == 1) out.push_back({a, b, c});
    std::sort(out.begin(), out.end());
    return out;
}
}

TEST_CASE("point search") {
    auto p1 = point_search(1, 10);
    CHECK(p1 == std::vector<RationalPoint>{{1, 0, 1}, {0, 1, 1}});
    auto p2 = point_search(2, 10);
    CHECK(p2 == std::vector<RationalPoint>{{1, 1, 1}});
    auto p7 = point_search(7, 10);
    CHECK(std::find(p7.begin(), p7.end(), RationalPoint{2, -1, 1}) != p7.end());
    for (i64 d : {1, 2, 6, 7, 9, -7, 19, 20}) {
        auto got = point_search(d, 12);
        std::vector<std::tuple<i64, i64, i64>> g;
        for (auto& P : got) {
            CHECK(point_on_curve(d, P));
            g.push_back({P.a, P.b, P.c});
        }
        std::sort(g.begin(), g.end());
        CHECK(g == brute(d, 12));
    }
    CHECK(point_search(6, 30, Exec::Serial) == point_search(6, 30, Exec::Parallel));
    CHECK(point_on_curve(6, {17, 37, 21}));
}

TEST_CASE("certificate verdicts") {
    CertifyOptions o;
    o.height = 300;
    CHECK(bad_places(3) == std::vector<i64>{2, 3});
    CHECK(cube_support(6) == std::vector<i64>{2, 3});
    CHECK(cube_support(40) == std::vector<i64>{5});
    auto c3 = certify(3, o);
    CHECK(c3.verdict == "NotCertified(PreconditionFails)");
    CHECK(!c3.precondition_pass);
    auto c5 = certify(5, o);
    CHECK(c5.certified());
    CHECK(c5.points_found.empty());
    CHECK(c5.l_value);
    CHECK(std::abs(c5.l_value->real()) > o.margin * c5.error_estimate);
    auto c7 = certify(7, o);
    CHECK(c7.verdict == "NotCertified(LValueZeroConsistent)");
    CHECK(!c7.points_found.empty());
    // invariant: Certified implies precondition, NonZero and an empty search
    for (i64 d : {2, 4, 5, 6, 10, 11, 12, 13}) {
        auto c = certify(d, o);
        if (c.certified()) {
            CHECK(c.precondition_pass);
            CHECK(c.points_found.empty());
            CHECK(nonvanishing_decide(c.l_value->real(), c.error_estimate, c.margin) == Verdict::NonZero);
        }
    }
}

TEST_CASE("cube class invariance") {
    CertifyOptions o;
    o.height = 200;
    for (i64 d : {5, 7})
        for (i64 k : {2, 3, 5}) CHECK(certify(d, o).certified() == certify(d * k * k * k, o).certified());
}

TEST_CASE("certificate json round trip") {
    CertifyOptions o;
    o.height = 100;
    for (i64 d : {5, 6, 7}) {
        auto c = certify(d, o);
        auto s = certificate_json(c);
        CHECK(s.find("\"schema\": 1") != std::string::npos);
        CHECK(s.find("heuristic-analytic") != std::string::npos);
        CHECK(certificate_json(certificate_from_json(s)) == s);
        CHECK(certificate_csv(c).find(c.verdict) != std::string::npos);
    }
}

TEST_CASE("scan and cache replay") {
    namespace fs = std::filesystem;
    CHECK(scan(5, 4).entries.empty());
    fs::path dir = fs::temp_directory_path() / "fermat_scan_test";
    fs::remove_all(dir);
    setenv("FERMAT_CACHE_DIR", dir.c_str(), 1);
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    CertifyOptions o;
    o.height = 100;
    auto a = scan(1, 20, o);
    auto b = scan(1, 20, o);
    unsetenv("FERMAT_CACHE_DIR");
    CHECK(scan_csv(a) == scan_csv(b));
    CHECK(scan_json(a) == scan_json(b));
    CHECK(!fs::is_empty(dir));
    std::set<i64> certified;
    for (auto& e : a.entries)
        if (e.verdict == "Certified") certified.insert(e.delta);
    CHECK(certified.count(5));
    CHECK(certified.count(11));
    for (i64 d : {6, 7, 9}) CHECK(!certified.count(d));
    for (size_t i = 1; i < a.entries.size(); ++i) CHECK(a.entries[i - 1].delta < a.entries[i].delta);
    CHECK(a.certified + a.not_certified == (i64)a.entries.size());
    fs::remove_all(dir);
}
