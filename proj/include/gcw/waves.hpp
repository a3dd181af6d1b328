#ifndef GCW_WAVES_HPP
#define GCW_WAVES_HPP

// Small-amplitude asymptotic wave profiles: generalized solitary waves
// (solitary core + pedestal + non-decaying ripple) on the near-critical
// branch, and modulated solitary waves (sech envelope times a carrier) on
// the subcritical branch, plus the Galilean shift between speed frames.

#include <string>
#include <vector>

#include "gcw/normalform.hpp"

namespace gcw {

struct WaveMeta {
    Branch branch = Branch::Generic;
    double mu = 0.0;
    double k = 0.0;       // ripple parameter (generalized waves)
    double kprime = 0.0;
    double kappa = 0.0;
    double s = 0.0;       // carrier frequency (modulated waves)
    double rho = 0.0;
    double Theta_star = 0.0;
    double galilean_v = 0.0; // accumulated Galilean shift
    double amplitude_scale = 0.0;
};

struct WaveProfile {
    std::vector<double> x; // uniform grid over one period
    std::vector<double> values;
    double speed = 0.0;
    double tau = 0.0;
    double period = 0.0;
    WaveMeta meta;
};

struct GswParams {
    double mu = 0.0;
    double kprime = 1.0;          // k = kprime |mu|^{-1-2 kappa}
    double kappa = 0.0;           // in [0, 1/2)
    double Theta_star = 0.0;
    double guard_constant = 1.0;  // ripple persistence guard
    double mu_ceiling = 0.05;
    bool override_ceiling = false;
    double k() const;
    double rho() const { return 1.0 + 24.0 * k(); }
};

// Uniform grid of n points covering [-L/2, L/2).
std::vector<double> uniform_grid(double L, int n);

// Generalized solitary wave of speed 1 + mu:
//   phi = (3/2)|mu| rho^{1/2} sech^2(rho^{1/4} sigma^{1/2} |mu|^{1/2} x / sqrt(2))
//         + (mu/2)(1 - sgn(mu) rho^{1/2}) + |mu| k^{1/2} cos(Theta(x)),
// Theta carrying the tanh asymptotic phase shift.
WaveProfile gsw_profile(double tau, const GswParams& p, const std::vector<double>& grid);

// The three components (core, pedestal, ripple) evaluated separately.
struct GswComponents {
    std::vector<double> core, ripple;
    double pedestal;
};
GswComponents gsw_components(double tau, const GswParams& p, const std::vector<double>& grid);

// Ripple phase data: Theta(x) = Theta* + wavenumber * x + (shift/2) tanh(lam x).
struct GswPhase {
    double wavenumber;  // k0 + O(mu) linear coefficient
    double shift;       // asymptotic phase shift Theta(+inf)-Theta(-inf) minus linear part
    double core_rate;   // lam of the sech^2 core
};
GswPhase gsw_phase(double tau, const GswParams& p);

// Largest box length <= L_target for which the ripple phase is periodic
// (linear part plus saturated tanh shift equal to a multiple of 2 pi).
double gsw_commensurate_length(double tau, const GswParams& p, double L_target);

// Modulated solitary wave of speed c0(s) + mu, mu < 0:
//   phi = sqrt(-8 q0 mu / q1) sech(sqrt(q0 mu) x) cos(s x + Theta_star),
// Theta_star in {0, pi} (elevation / depression).
WaveProfile msw_profile(double s, double mu, double Theta_star, const std::vector<double>& grid,
                        double mu_ceiling = 0.05, bool override_ceiling = false);

// Galilean change of frame phi -> phi - v, c -> c - 2v, which maps solutions
// of the profile equation to solutions (with a constant shift absorbed in
// the integration constant).  v = (mu/2)(1 + rho^{1/2}) removes the pedestal
// of a mu < 0 generalized wave and yields the supercritical representative
// of speed 1 + |mu| rho^{1/2}.
WaveProfile galilean_shift(const WaveProfile& w, double v);

} // namespace gcw

#endif
