#include "gcw/waves.hpp"

#include <cmath>

#include "gcw/dispersion.hpp"

namespace gcw {

namespace {

void check_gsw_pre(double tau, const GswParams& p) {
    if (!(tau > 0.0 && tau < 1.0 / 3.0)) throw DomainError("gsw_profile: need 0 < tau < 1/3");
    if (!(p.kappa >= 0.0 && p.kappa < 0.5)) throw DomainError("gsw_profile: kappa in [0, 1/2)");
    if (p.mu == 0.0) throw DomainError("gsw_profile: mu must be nonzero");
    double amu = std::abs(p.mu);
    if (amu > p.mu_ceiling && !p.override_ceiling)
        throw CeilingViolation("gsw_profile: |mu| above the asymptotic-validity ceiling");
    // ripple persistence: |mu| sqrt(k) >= guard * |mu|^{1/2}
    double ripple = amu * std::sqrt(p.k());
    if (ripple < p.guard_constant * std::sqrt(amu) * (1.0 - 1e-12))
        throw PersistenceViolation("gsw_profile: ripple amplitude below the persistence guard");
}

} // namespace

double GswParams::k() const { return kprime * std::pow(std::abs(mu), -1.0 - 2.0 * kappa); }

std::vector<double> uniform_grid(double L, int n) {
    if (n < 2 || !(L > 0.0)) throw DomainError("uniform_grid: bad arguments");
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = -0.5 * L + L * i / n;
    return x;
}

GswComponents gsw_components(double tau, const GswParams& p, const std::vector<double>& grid) {
    check_gsw_pre(tau, p);
    const double amu = std::abs(p.mu), sgn = p.mu > 0.0 ? 1.0 : -1.0;
    const double k = p.k(), rho = p.rho(), r = std::sqrt(rho);
    const double sigma = 1.0 / (1.0 / 3.0 - tau);
    const double k0 = solve_k0(tau);
    const double lp = l_deriv(tau, k0, 1);
    const double lam = std::pow(rho, 0.25) * std::sqrt(sigma) * std::sqrt(amu) / std::sqrt(2.0);

    GswComponents out;
    out.pedestal = 0.5 * p.mu * (1.0 - sgn * r);
    const double core_amp = 1.5 * amu * r;
    const double ripple_amp = amu * std::sqrt(k);
    // Theta(x) = Theta* + (k0 - mu/l'(k0) + (2 mu/l'(k0))(1 - sgn rho^{1/2})) x
    //            + (3 sqrt(2) rho^{1/4} |mu|^{1/2} / (sigma^{1/2} l'(k0))) tanh(lam x)
    const double lin = k0 - p.mu / lp + (2.0 * p.mu / lp) * (1.0 - sgn * r);
    const double tanh_amp =
        3.0 * std::sqrt(2.0) * std::pow(rho, 0.25) * std::sqrt(amu) / (std::sqrt(sigma) * lp);
    out.core.reserve(grid.size());
    out.ripple.reserve(grid.size());
    for (double x : grid) {
        double sech = 1.0 / std::cosh(lam * x);
        out.core.push_back(core_amp * sech * sech);
        double Theta = p.Theta_star + lin * x + tanh_amp * std::tanh(lam * x);
        out.ripple.push_back(ripple_amp * std::cos(Theta));
    }
    return out;
}

GswPhase gsw_phase(double tau, const GswParams& p) {
    check_gsw_pre(tau, p);
    const double amu = std::abs(p.mu), sgn = p.mu > 0.0 ? 1.0 : -1.0;
    const double rho = p.rho(), r = std::sqrt(rho);
    const double sigma = 1.0 / (1.0 / 3.0 - tau);
    const double k0 = solve_k0(tau);
    const double lp = l_deriv(tau, k0, 1);
    GswPhase ph;
    ph.core_rate = std::pow(rho, 0.25) * std::sqrt(sigma) * std::sqrt(amu) / std::sqrt(2.0);
    ph.wavenumber = k0 - p.mu / lp + (2.0 * p.mu / lp) * (1.0 - sgn * r);
    ph.shift = 2.0 * 3.0 * std::sqrt(2.0) * std::pow(rho, 0.25) * std::sqrt(amu) /
               (std::sqrt(sigma) * lp);
    return ph;
}

double gsw_commensurate_length(double tau, const GswParams& p, double L_target) {
    GswPhase ph = gsw_phase(tau, p);
    const double two_pi = 6.28318530717958647692;
    // lin * L + shift = 2 pi n  (tanh saturated at the box ends)
    double n = std::floor((ph.wavenumber * L_target + ph.shift) / two_pi);
    if (n < 1.0) n = 1.0;
    double L = (two_pi * n - ph.shift) / ph.wavenumber;
    if (!(L > 0.0)) throw DomainError("gsw_commensurate_length: no commensurate box below target");
    return L;
}

WaveProfile gsw_profile(double tau, const GswParams& p, const std::vector<double>& grid) {
    GswComponents c = gsw_components(tau, p, grid);
    WaveProfile w;
    w.x = grid;
    w.tau = tau;
    w.speed = 1.0 + p.mu;
    w.period = grid.size() > 1 ? (grid[1] - grid[0]) * grid.size() : 0.0;
    w.values.resize(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) w.values[i] = c.core[i] + c.pedestal + c.ripple[i];
    w.meta.branch = Branch::C3;
    w.meta.mu = p.mu;
    w.meta.k = p.k();
    w.meta.kprime = p.kprime;
    w.meta.kappa = p.kappa;
    w.meta.rho = p.rho();
    w.meta.Theta_star = p.Theta_star;
    w.meta.amplitude_scale =
        1.5 * std::abs(p.mu) * std::sqrt(p.rho()) + std::abs(c.pedestal) +
        std::abs(p.mu) * std::sqrt(p.k());
    return w;
}

WaveProfile msw_profile(double s, double mu, double Theta_star, const std::vector<double>& grid,
                        double mu_ceiling, bool override_ceiling) {
    if (!(mu < 0.0)) throw DomainError("msw_profile: needs mu < 0");
    if (std::abs(mu) > mu_ceiling && !override_ceiling)
        throw CeilingViolation("msw_profile: |mu| above the asymptotic-validity ceiling");
    double pi = 3.14159265358979323846;
    if (std::abs(Theta_star) > 1e-12 && std::abs(Theta_star - pi) > 1e-12)
        throw DomainError("msw_profile: Theta_star must be 0 or pi");

    BifurcationPoint bp = c2_point(s);
    SymbolParams params = bp.params(mu);
    CmCoeffs closed = cm_coeffs_closed_C2(s);
    NfCoeffsC2 nf = nf_coeffs_C2(s, closed);
    double lam = std::sqrt(nf.q0 * mu); // q0 < 0, mu < 0
    double amp = std::sqrt(-8.0 * nf.q0 * mu / nf.q1);

    WaveProfile w;
    w.x = grid;
    w.tau = params.tau;
    w.speed = bp.c0() + mu;
    w.period = grid.size() > 1 ? (grid[1] - grid[0]) * grid.size() : 0.0;
    w.values.reserve(grid.size());
    for (double x : grid)
        w.values.push_back(amp / std::cosh(lam * x) * std::cos(s * x + Theta_star));
    w.meta.branch = Branch::C2;
    w.meta.mu = mu;
    w.meta.s = s;
    w.meta.Theta_star = Theta_star;
    w.meta.amplitude_scale = amp;
    return w;
}

WaveProfile galilean_shift(const WaveProfile& w, double v) {
    WaveProfile out = w;
    for (double& y : out.values) y -= v;
    out.speed = w.speed - 2.0 * v;
    out.meta.galilean_v = w.meta.galilean_v + v;
    return out;
}

} // namespace gcw
