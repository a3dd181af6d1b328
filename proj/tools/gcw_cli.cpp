// Command-line driver: every library computation as a subcommand with
// machine-readable CSV/JSON output.
//
// Exit codes: 0 ok, 2 validation failure, 3 numerical failure, 4 bad arguments.

#include <cxxabi.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gcw/dispersion.hpp"
#include "gcw/jsonio.hpp"
#include "gcw/kernel.hpp"
#include "gcw/normalform.hpp"
#include "gcw/parallel.hpp"
#include "gcw/reduction.hpp"
#include "gcw/spectral.hpp"
#include "gcw/verify.hpp"
#include "gcw/waves.hpp"

namespace {

using namespace gcw;

// ranges are written start:stop:step (inclusive ends up to rounding)
std::vector<double> parse_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
    if (parts.size() == 1) return {parts[0]};
    if (parts.size() != 3) throw CLI::ValidationError("range must be start:stop:step");
    std::vector<double> out;
    double a = parts[0], b = parts[1], h = parts[2];
    if (!(h > 0.0)) throw CLI::ValidationError("range step must be positive");
    for (int i = 0;; ++i) {
        double x = a + i * h;
        if (x > b + 1e-12 * std::max(1.0, std::abs(b))) break;
        out.push_back(x);
    }
    return out;
}

// config files are key=value (INI) or a flat JSON object
class IniOrJsonConfig : public CLI::ConfigBase {
  public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::stringstream buf;
        buf << input.rdbuf();
        std::string text = buf.str();
        size_t first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            nlohmann::json j = nlohmann::json::parse(text);
            std::vector<CLI::ConfigItem> items;
            for (auto it = j.begin(); it != j.end(); ++it) {
                CLI::ConfigItem item;
                // dotted keys scope into subcommands, as in the ini format
                std::string key = it.key();
                size_t dot;
                while ((dot = key.find('.')) != std::string::npos) {
                    item.parents.push_back(key.substr(0, dot));
                    key = key.substr(dot + 1);
                }
                item.name = key;
                if (it.value().is_string())
                    item.inputs = {it.value().get<std::string>()};
                else
                    item.inputs = {it.value().dump()};
                items.push_back(item);
            }
            return items;
        }
        std::stringstream again(text);
        return CLI::ConfigBase::from_config(again);
    }
};

std::string error_name(const std::exception& e) {
    int status = 0;
    std::unique_ptr<char, void (*)(void*)> demangled(
        abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status), std::free);
    std::string name = status == 0 && demangled ? demangled.get() : typeid(e).name();
    size_t pos = name.rfind("::");
    return pos == std::string::npos ? name : name.substr(pos + 2);
}

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

JsonPtr meta_json(const WaveProfile& w) {
    JsonPtr m = JsonValue::object();
    m->set("branch", w.meta.branch == Branch::C2 ? "c2" : "c3");
    m->set("tau", w.tau);
    m->set("speed", w.speed);
    m->set("period", w.period);
    m->set("mu", w.meta.mu);
    m->set("k", w.meta.k);
    m->set("kprime", w.meta.kprime);
    m->set("kappa", w.meta.kappa);
    m->set("s", w.meta.s);
    m->set("rho", w.meta.rho);
    m->set("theta_star", w.meta.Theta_star);
    m->set("galilean_v", w.meta.galilean_v);
    m->set("amplitude_scale", w.meta.amplitude_scale);
    m->set("n", static_cast<long long>(w.x.size()));
    return m;
}

JsonPtr coeffs_json(const CmCoeffs& c) {
    JsonPtr o = JsonValue::object();
    o->set("branch", c.branch == Branch::C2 ? "c2" : "c3");
    o->set("source", c.source == CoeffSource::ClosedForm ? "closed_form" : "ansatz_solve");
    o->set("tau", c.params.tau);
    o->set("c0", c.params.c0);
    if (c.branch == Branch::C2) o->set("s", c.params.s);
    JsonPtr tab = JsonValue::object();
    for (const auto& [idx, val] : c.psi) {
        std::ostringstream key;
        key << "psi_" << idx.p << idx.q << idx.l << idx.m << idx.n;
        tab->set(key.str(), val);
    }
    o->set("psi", tab);
    return o;
}

int run_curves(const std::string& which, const std::string& range, const std::string& outdir) {
    std::vector<double> grid = parse_range(range);
    if (which == "c2") {
        std::vector<std::vector<double>> cols(5);
        std::vector<BifurcationPoint> pts(grid.size());
        parallel_for(static_cast<int>(grid.size()),
                     [&](int i) { pts[i] = c2_point(grid[i]); });
        for (size_t i = 0; i < grid.size(); ++i) {
            cols[0].push_back(grid[i]);
            cols[1].push_back(pts[i].beta);
            cols[2].push_back(pts[i].alpha);
            cols[3].push_back(pts[i].tau());
            cols[4].push_back(pts[i].c0());
        }
        write_csv(out_path(outdir, "c2_curve.csv"), {"s", "beta", "alpha", "tau0", "c0"}, cols);
    } else {
        std::vector<std::vector<double>> cols(2);
        for (double b : grid) {
            if (which == "c3" && b > 1.0 / 3.0 + 1e-12) continue;
            if (which == "c4" && b < 1.0 / 3.0 - 1e-12) continue;
            cols[0].push_back(b);
            cols[1].push_back(1.0);
        }
        write_csv(out_path(outdir, which + "_curve.csv"), {"beta", "alpha"}, cols);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady gravity-capillary Whitham wave toolkit"};
    app.set_config("--config")->configurable(false);
    app.config_formatter(std::make_shared<IniOrJsonConfig>());
    app.require_subcommand(1);
    app.fallthrough();

    std::string outdir = ".";
    app.add_option("--out", outdir, "output directory")->capture_default_str();

    // curves
    auto* curves = app.add_subcommand("curves", "bifurcation-curve tables");
    curves->fallthrough();
    bool c2 = false, c3 = false, c4 = false;
    std::string s_range = "0.1:4:0.1", beta_range = "0:0.3333:0.01";
    curves->add_flag("--c2", c2, "parametrized curve of double roots");
    curves->add_flag("--c3", c3, "near-critical line alpha = 1, beta <= 1/3");
    curves->add_flag("--c4", c4, "subcritical line alpha = 1, beta >= 1/3");
    curves->add_option("--s", s_range, "s range start:stop:step");
    curves->add_option("--beta", beta_range, "beta range start:stop:step");

    // verify
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->fallthrough();
    std::string suite = "all";
    std::string report_path;
    verify->add_option("--suite", suite, "all|kernel|fredholm|coeffs|nf|waves")
        ->capture_default_str();
    verify->add_option("--report", report_path, "also write the JSON report to this file");
    double v_tau = 0.0, v_s = 0.0;
    verify->add_option("--tau", v_tau, "restrict fredholm/coeffs checks to this Bond number");
    verify->add_option("--s", v_s, "restrict fredholm/coeffs checks to this carrier frequency");

    // wave
    auto* wave = app.add_subcommand("wave", "construct asymptotic wave profiles");
    wave->fallthrough();
    std::string kind;
    wave->add_option("kind", kind, "msw|gsw")->required();
    double w_s = 1.0, w_mu = -1e-3, w_theta = 0.0, w_tau = 0.2, w_kprime = 1.0, w_kappa = 0.0;
    int w_N = 4096;
    double w_L = 400.0;
    bool w_override = false;
    wave->add_option("--s", w_s, "carrier frequency (msw)");
    wave->add_option("--mu", w_mu, "speed offset");
    wave->add_option("--theta", w_theta, "phase Theta*");
    wave->add_option("--tau", w_tau, "Bond number (gsw)");
    wave->add_option("--kprime", w_kprime, "ripple parameter k' (gsw)");
    wave->add_option("--kappa", w_kappa, "ripple exponent kappa (gsw)");
    wave->add_option("--N", w_N, "grid points (power of two)");
    wave->add_option("--L", w_L, "box length (gsw: target, made ripple-commensurate)");
    wave->add_flag("--force", w_override, "override the |mu| ceiling with a warning");

    // residual
    auto* resid = app.add_subcommand("residual", "spectral residual of a profile");
    resid->fallthrough();
    std::string r_input;
    double r_c = 1.0, r_tau = 0.2;
    resid->add_option("--input", r_input, "profile CSV (x,phi)")->required();
    resid->add_option("--c", r_c, "wave speed")->required();
    resid->add_option("--tau", r_tau, "Bond number")->required();

    // refine
    auto* refine = app.add_subcommand("refine", "Newton-refine a profile");
    refine->fallthrough();
    std::string f_input;
    double f_c = 1.0, f_tau = 0.2, f_tol = 1e-11;
    int f_maxit = 25;
    refine->add_option("--input", f_input, "profile CSV (x,phi)")->required();
    refine->add_option("--c", f_c, "wave speed")->required();
    refine->add_option("--tau", f_tau, "Bond number")->required();
    refine->add_option("--tol", f_tol, "residual target")->capture_default_str();
    refine->add_option("--maxit", f_maxit, "iteration cap")->capture_default_str();

    // coeffs
    auto* coeffs = app.add_subcommand("coeffs", "center-manifold coefficient tables");
    coeffs->fallthrough();
    std::string branch = "c3";
    double k_tau = 0.2, k_s = 1.0;
    coeffs->add_option("--branch", branch, "c3|c2")->capture_default_str();
    coeffs->add_option("--tau", k_tau, "Bond number (c3)");
    coeffs->add_option("--s", k_s, "carrier frequency (c2)");

    // winding
    auto* winding = app.add_subcommand("winding", "argument-principle root count in a strip");
    winding->fallthrough();
    double wd_tau = 0.2, wd_c0 = 1.0, wd_R = 0.0;
    std::string wd_eta = "auto", wd_s;
    winding->add_option("--tau", wd_tau, "Bond number")->required();
    winding->add_option("--c0", wd_c0, "base speed")->capture_default_str();
    winding->add_option("--eta", wd_eta, "strip half-width or 'auto'");
    winding->add_option("--R", wd_R, "contour half-length (default: roots + 5)");
    winding->add_option("--s", wd_s, "treat as a C2 point with this s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        if (*curves) {
            if (c2) run_curves("c2", s_range, outdir);
            if (c3) run_curves("c3", beta_range, outdir);
            if (c4) run_curves("c4", beta_range, outdir);
            if (!c2 && !c3 && !c4) {
                std::cerr << "curves: pick at least one of --c2 --c3 --c4\n";
                return 4;
            }
            return 0;
        }

        if (*verify) {
            std::vector<VerifyReport> reports;
            if (suite == "all")
                reports = verify_all();
            else if (suite == "kernel")
                reports = {verify_kernel()};
            else if (suite == "fredholm")
                reports = {verify_fredholm(v_tau, v_s)};
            else if (suite == "coeffs")
                reports = {verify_coeffs(v_tau, v_s)};
            else if (suite == "nf")
                reports = {verify_nf()};
            else if (suite == "waves")
                reports = {verify_waves()};
            else {
                std::cerr << "verify: unknown suite " << suite << "\n";
                return 4;
            }
            std::string json = report_to_json(reports);
            std::cout << json;
            if (!report_path.empty()) write_text_file(report_path, json);
            for (const VerifyReport& r : reports)
                if (!r.all_pass()) return 2;
            return 0;
        }

        if (*wave) {
            WaveProfile w;
            if (kind == "msw") {
                w = msw_profile(w_s, w_mu, w_theta, uniform_grid(w_L, w_N), 0.05, w_override);
            } else if (kind == "gsw") {
                GswParams p;
                p.mu = w_mu;
                p.kprime = w_kprime;
                p.kappa = w_kappa;
                p.Theta_star = w_theta;
                p.override_ceiling = w_override;
                if (w_override) std::cerr << "warning: |mu| ceiling overridden\n";
                double L = gsw_commensurate_length(w_tau, p, w_L);
                w = gsw_profile(w_tau, p, uniform_grid(L, w_N));
            } else {
                std::cerr << "wave: kind must be msw or gsw\n";
                return 4;
            }
            write_csv(out_path(outdir, kind + ".csv"), {"x", "phi"}, {w.x, w.values});
            write_text_file(out_path(outdir, kind + ".meta.json"), meta_json(w)->dump(2));
            return 0;
        }

        if (*resid) {
            std::vector<std::vector<double>> cols = read_csv(r_input);
            if (cols.size() < 2) throw DomainError("residual: need columns x,phi");
            int N = static_cast<int>(cols[1].size());
            double L = N > 1 ? (cols[0][1] - cols[0][0]) * N : 0.0;
            PeriodicGrid g(N, L);
            ResidualReport rr = residual(cols[1], g, r_c, r_tau);
            JsonPtr o = JsonValue::object();
            o->set("sup_norm", rr.sup_norm);
            o->set("l2_norm", rr.l2_norm);
            o->set("aliasing", rr.aliasing);
            o->set("sup_phi", rr.sup_phi);
            std::cout << o->dump(2);
            return 0;
        }

        if (*refine) {
            std::vector<std::vector<double>> cols = read_csv(f_input);
            if (cols.size() < 2) throw DomainError("refine: need columns x,phi");
            int N = static_cast<int>(cols[1].size());
            double L = N > 1 ? (cols[0][1] - cols[0][0]) * N : 0.0;
            PeriodicGrid g(N, L);
            NewtonOptions opts;
            opts.tol = f_tol;
            opts.max_iter = f_maxit;
            NewtonResult nr = newton_refine(cols[1], g, f_c, f_tau, opts);
            write_csv(out_path(outdir, "refined.csv"), {"x", "phi"}, {cols[0], nr.values});
            JsonPtr log = JsonValue::object();
            log->set("converged", nr.converged);
            log->set("iterations", nr.iterations);
            JsonPtr hist = JsonValue::array();
            for (double r : nr.residual_history) hist->push(JsonValue::number(r));
            log->set("sup_residual_history", hist);
            log->set("first_step_norm", nr.first_step_norm);
            write_text_file(out_path(outdir, "refine_log.json"), log->dump(2));
            std::cout << log->dump(2);
            return nr.converged ? 0 : 3;
        }

        if (*coeffs) {
            JsonPtr o = JsonValue::object();
            if (branch == "c3") {
                SymbolParams p = c3_point(k_tau).params();
                CmCoeffs ans = cm_coeffs_ansatz(Branch::C3, p);
                o->set("closed_form", coeffs_json(cm_coeffs_closed_C3(k_tau, {6.0})));
                o->set("ansatz_solve", coeffs_json(ans));
                NfCoeffsC3 nfc = nf_coeffs_C3(k_tau, ans);
                JsonPtr nfo = JsonValue::object();
                nfo->set("p0", nfc.p0);
                nfo->set("p1", nfc.p1);
                nfo->set("p2", nfc.p2);
                nfo->set("p3", nfc.p3);
                nfo->set("q0", nfc.q0);
                nfo->set("q1", nfc.q1);
                nfo->set("k0", nfc.k0);
                o->set("normal_form", nfo);
            } else if (branch == "c2") {
                SymbolParams p = c2_point(k_s).params();
                CmCoeffs ans = cm_coeffs_ansatz(Branch::C2, p);
                o->set("closed_form", coeffs_json(cm_coeffs_closed_C2(k_s, {false})));
                o->set("ansatz_solve", coeffs_json(ans));
                NfCoeffsC2 nfc = nf_coeffs_C2(k_s, ans);
                JsonPtr nfo = JsonValue::object();
                nfo->set("q0", nfc.q0);
                nfo->set("q1", nfc.q1);
                o->set("normal_form", nfo);
            } else {
                std::cerr << "coeffs: branch must be c3 or c2\n";
                return 4;
            }
            std::string json = o->dump(2);
            std::cout << json;
            write_text_file(out_path(outdir, "coeffs_" + branch + ".json"), json);
            return 0;
        }

        if (*winding) {
            SymbolParams p;
            p.tau = wd_tau;
            p.c0 = wd_c0;
            p.branch = Branch::Generic;
            if (!wd_s.empty()) {
                p = c2_point(std::stod(wd_s)).params();
            } else if (std::abs(wd_c0 - 1.0) < 1e-12 && wd_tau < 1.0 / 3.0) {
                p.branch = Branch::C3;
            }
            double eta;
            if (wd_eta == "auto") {
                eta = p.branch == Branch::Generic ? 0.5 * strip_halfwidth(p.tau)
                                                  : 0.5 * certify_eta(p);
            } else {
                eta = std::stod(wd_eta);
            }
            double R = wd_R > 0.0 ? wd_R : default_contour_R(p);
            RootReport rr = roots_in_strip(p, eta, R);
            std::cout << rr.winding << "\n";
            return 0;
        }
    } catch (const DomainError& e) {
        std::cerr << error_name(e) << ": " << e.what() << "\n";
        return 2;
    } catch (const CeilingViolation& e) {
        std::cerr << error_name(e) << ": " << e.what() << "\n";
        return 2;
    } catch (const PersistenceViolation& e) {
        std::cerr << error_name(e) << ": " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << error_name(e) << ": " << e.what() << "\n";
        return 3;
    }
    return 4;
}
