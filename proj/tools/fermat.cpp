#include "fermat/certify.hpp"
#include "fermat/dd.hpp"
#include "fermat/io.hpp"
#include "fermat/local_zeta.hpp"
#include <CLI11.hpp>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <sstream>

using namespace fermat;
using nlohmann::ordered_json;

namespace {

// "a,b" -> a + b omega, "n" -> n
CycInt parse_eis(const std::string& s) {
    auto k = s.find(',');
    if (k == std::string::npos) return CycInt::eis(std::stoll(s), 0);
    return CycInt::eis(std::stoll(s.substr(0, k)), std::stoll(s.substr(k + 1)));
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") std::cout << text;
    else write_file_atomic(path, text);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted Fermat cubics: local zeta, Hecke L-values, double Dirichlet checks, certificates"};
    app.require_subcommand(1);

    i64 ell = 0, delta = 1, twist = 0, ell_max = 100, X = 0, xmax = 1000, kmax = 0, height = 10000, lo = 1, hi = 0;
    int f = 1, order = 3, p = 3;
    double s = 1.5, margin = 10.0;
    bool json = false, verify = false;
    std::string m_str, n_str, csv_out, json_out, out, ctx_out;

    auto* jac = app.add_subcommand("jacobi", "Jacobi sum j(chi, chi) over F_{ell^f}");
    jac->add_option("--ell", ell, "characteristic")->required();
    jac->add_option("--f", f, "extension degree");
    jac->add_option("--order", order, "character order");
    jac->add_flag("--json", json);

    auto* sym = app.add_subcommand("symbol", "extended cubic residue symbol chi_m(n)");
    sym->add_option("--m", m_str, "top: a,b for a + b omega, or an integer")->required();
    sym->add_option("--n", n_str, "bottom: a,b or an integer")->required();
    sym->add_option("--context-out", ctx_out, "write the serialized symbol context");
    sym->add_flag("--json", json);

    auto* zeta = app.add_subcommand("zeta", "local factors P_v(T) of C_delta");
    zeta->add_option("--p", p, "exponent");
    zeta->add_option("--delta", delta, "twist")->required();
    zeta->add_option("--ell-max", ell_max, "largest ell");
    zeta->add_flag("--verify", verify, "compare with brute-force point counts");

    auto* lv = app.add_subcommand("lvalue", "central value L(1/2, psi chi)");
    lv->add_option("--delta", delta, "twist class [delta^2]");
    lv->add_option("--twist", twist, "use chi_n instead");
    lv->add_option("--X", X, "truncation, 0 = auto");
    lv->add_flag("--json", json);

    auto* dd = app.add_subcommand("dd", "double Dirichlet series checks");
    dd->require_subcommand(1);
    auto* vi = dd->add_subcommand("verify-interchange", "Z = L_S(2s, psi) Z~ coefficientwise");
    vi->add_option("--s", s, "real s > 1");
    vi->add_option("--xmax", xmax, "outer bound");
    vi->add_option("--kmax", kmax, "inner bound, 0 = xmax");
    auto* mv = dd->add_subcommand("mean-value", "sum of L(1/2, chi_n psi) P_n against C x");
    mv->add_option("--xmax", xmax, "x");
    mv->add_option("--csv", csv_out, "per-n CSV");

    auto* cert = app.add_subcommand("certify", "certificate that W_delta has no rational points");
    cert->add_option("--delta", delta, "delta")->required();
    cert->add_option("--height", height, "search height");
    cert->add_option("--margin", margin, "nonvanishing margin");
    cert->add_option("--X", X, "truncation, 0 = auto");
    cert->add_option("--json", json_out, "certificate path, - for stdout");

    auto* sc = app.add_subcommand("scan", "certify every cube-free delta in a range");
    sc->add_option("--min", lo, "first delta")->required();
    sc->add_option("--max", hi, "last delta")->required();
    sc->add_option("--height", height, "search height");
    sc->add_option("--margin", margin, "nonvanishing margin");
    sc->add_option("--out", out, "CSV report path");
    sc->add_option("--json", json_out, "JSON report path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*jac) {
            FieldSpec F = make_field(ell, f);
            auto chi = char_of_order(F, order);
            CycInt j = jacobi_sum(chi, chi);
            std::vector<i64> coeffs(j.c.begin(), j.c.end());
            if (json) {
                ordered_json o{{"ell", ell}, {"f", f}, {"order", order}, {"jacobi_coeffs", coeffs}, {"norm", norm(j)}};
                std::cout << o.dump() << "\n";
            } else {
                std::cout << "j = " << j.str() << "  N(j) = " << norm(j) << "\n";
            }
        } else if (*sym) {
            const auto& ctx = default_context();
            CycInt m = parse_eis(m_str), n = parse_eis(n_str);
            int e = extended_symbol(ctx, ideal_of(m), ideal_of(n));
            if (!ctx_out.empty()) write_file_atomic(ctx_out, serialize_context(ctx));
            if (json) {
                ordered_json o{{"m", ideal_str(ideal_of(m))}, {"n", ideal_str(ideal_of(n))}, {"exponent", e}};
                std::cout << o.dump() << "\n";
            } else {
                std::cout << (e < 0 ? std::string("0 (not coprime)") : "omega^" + std::to_string(e)) << "\n";
            }
        } else if (*zeta) {
            TwistClass tc = make_twist(p, delta);
            auto table = local_L_table(tc, ell_max);
            std::cout << "ell,f";
            for (int i = 0; i < p; ++i) std::cout << ",c" << i;
            std::cout << ",Pv1" << (verify ? ",verified" : "") << "\n";
            int bad = 0;
            for (const auto& L : table) {
                std::cout << L.ell << ',' << L.f;
                for (i64 c : L.coeffs) std::cout << ',' << c;
                std::cout << ',' << L.at(1);
                if (verify) {
                    bool ok = verify_zeta(tc, L.ell).ok;
                    bad += !ok;
                    std::cout << ',' << (ok ? "ok" : "MISMATCH");
                }
                std::cout << "\n";
            }
            if (bad) return 2;
        } else if (*lv) {
            HeckeCharSpec spec = twist ? hecke_for_twist(twist) : hecke_for_delta(delta);
            LValue v = central_value(spec, X);
            Verdict vd = nonvanishing_decide(v.value.real(), v.error);
            if (json) {
                ordered_json o{{"delta", delta}, {"conductor", v.N}, {"value_re", v.value.real()}, {"value_im", v.value.imag()}, {"error", v.error}, {"verdict", verdict_name(vd)}};
                if (twist) o["twist"] = twist;
                std::cout << o.dump() << "\n";
            } else {
                std::printf("N = %lld  eps = %+d  L(1/2) = %.15g  error = %.3g  %s\n", (long long)v.N, v.eps, v.value.real(), v.error, verdict_name(vd));
            }
        } else if (*vi) {
            auto r = verify_interchange(s, xmax, kmax);
            std::printf("s = %g  X = %lld  K = %lld  coeff_defect = %.3e  defect = %.3e (n = %lld)  %s\n", r.s, (long long)r.X, (long long)r.K, r.coeff_defect, r.defect, (long long)r.worst_n, r.ok ? "OK" : "FAIL");
            return r.ok ? 0 : 1;
        } else if (*mv) {
            auto r = mean_value_check(xmax);
            std::printf("x = %lld  terms = %zu  lhs = %.6f  C = %.6f  C x = %.6f  ratio = %.4f  violations = %d\n", (long long)r.x, r.rows.size(), r.lhs, r.C, r.rhs, r.ratio, r.violations);
            std::printf("L(1,psi) = %.8f  L(3/2,psi^3)/L(5/2,psi^3) = %.8f  local = %.6f  kappa_c = %g  |R_c| = %g\n", r.L1_psi, r.L3_ratio, r.local_factor, r.kappa_c, r.ray_order);
            if (!csv_out.empty()) emit(csv_out, mean_value_csv(r));
        } else if (*cert) {
            CertifyOptions o{height, margin, X};
            Certificate c = certify(delta, o);
            if (!json_out.empty()) emit(json_out, certificate_json(c));
            if (json_out != "-") std::printf("delta = %lld  %s\n", (long long)delta, c.verdict.c_str());
            return c.certified() ? 0 : 3;
        } else if (*sc) {
            std::signal(SIGINT, [](int) { request_stop(); });
            CertifyOptions o{height, margin, 0};
            ScanReport r = scan(lo, hi, o);
            emit(out, scan_csv(r));
            if (!json_out.empty()) emit(json_out, scan_json(r));
            std::fprintf(stderr, "certified %lld  not certified %lld  (precondition %lld, with points %lld)%s\n", (long long)r.certified, (long long)r.not_certified,
                         (long long)r.precondition_fails, (long long)r.with_points, r.partial ? "  PARTIAL" : "");
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
