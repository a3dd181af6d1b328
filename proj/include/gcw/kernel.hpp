#ifndef GCW_KERNEL_HPP
#define GCW_KERNEL_HPP

// Convolution kernel K_tau = F^{-1} l_tau:
//   K(x) = (1/pi) \int_0^inf l_tau(xi) cos(x xi) d xi,
// with the |xi|^{-1/2} symbol tail handled analytically.  K has a
// 1/sqrt(2 pi tau |x|) singularity at the origin and decays like
// exp(-eta |x|) for every eta < eta* = min{1/sqrt(tau), pi/2}.

#include <vector>

#include "gcw/errors.hpp"

namespace gcw {

enum class KernelMethod { SplitAsymptotic, WindowedQuadrature };

struct KernelSamples {
    std::vector<double> x; // positive abscissae (K is even)
    std::vector<double> K;
    double tau = 0.0;
    KernelMethod method = KernelMethod::SplitAsymptotic;
};

// K_tau(x) for x > 0.  SplitAsymptotic subtracts the exact transform of
// tau^{-1/2}(1+xi^2)^{-1/4} (a Bessel-K closed form) and switches to a
// shifted-contour representation for large x; WindowedQuadrature integrates
// the symbol directly with an asymptotic-series tail and is accurate on
// roughly [0.01, 10].  Relative accuracy target 1e-6 on [1e-4, 20].
double kernel_eval(double tau, double x, KernelMethod method = KernelMethod::SplitAsymptotic);

KernelSamples kernel_sample(double tau, const std::vector<double>& x,
                            KernelMethod method = KernelMethod::SplitAsymptotic);

struct KernelDiagnostics {
    double singularity_constant; // fitted lim sqrt(x) K(x), window [1e-4, 1e-3]
    double singularity_target;   // 1/sqrt(2 pi tau)
    double decay_rate;           // fitted -d log K / dx on [5, 15]
    double eta_star;
    double mass; // quadrature of K over the line
};
KernelDiagnostics kernel_diagnostics(double tau);

} // namespace gcw

#endif
