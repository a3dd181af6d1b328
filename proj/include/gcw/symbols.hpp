#ifndef GCW_SYMBOLS_HPP
#define GCW_SYMBOLS_HPP

// Fourier multipliers of the steady gravity-capillary Whitham equation:
//   m_tau(xi) = ((1 + tau xi^2) tanh(xi)/xi)^{1/2},   l_tau = 1/m_tau,
// evaluated on the real line and in the complex analyticity strip
// |Im z| < eta* = min{1/sqrt(tau), pi/2}, together with derivative data.

#include <complex>

#include "gcw/errors.hpp"

namespace gcw {

using cplx = std::complex<double>;

enum class Branch { Generic, C2, C3, C4 };

// Physical/bifurcation parameter bundle.  alpha = 1/c0^2 and beta = tau/c0^2
// are always derived from (tau, c0), never stored.
struct SymbolParams {
    double tau = 0.0;
    double c0 = 1.0;
    double mu = 0.0;
    Branch branch = Branch::Generic;
    double s = 0.0; // carrier frequency, C2 only

    double alpha() const { return 1.0 / (c0 * c0); }
    double beta() const { return tau / (c0 * c0); }
    // Throws DomainError when the stored values violate the branch invariants.
    void validate() const;
};

// Half-width of the strip where l_tau is analytic.
double strip_halfwidth(double tau);

// Small-xi Taylor data of l_tau.
struct TaylorData {
    double sigma;    // = 1/l''(0) = 1/(1/3 - tau)
    double ell4_0;   // = l''''(0)
    double eta_star; // strip half-width
};
TaylorData taylor_data(double tau);

// Exact closed form of l''''(0), used as the oracle for the contour route.
double ell4_zero_closed(double tau);

// m_tau at a point of the strip.  Principal square root; the removable
// singularity at z=0 is filled by an even series of the radicand.
cplx m_eval(double tau, cplx z);

// l_tau = 1/m_tau on the same strip.
cplx l_eval(double tau, cplx z);

// n-th derivative (n in 1..4) of l_tau at a real point, via a Cauchy circle
// of radius min(0.5 eta*, 0.5).  Odd derivatives at x=0 return exactly 0.
double l_deriv(double tau, double x, int n);

// Derivative of l_tau in the strip from the closed form of the radicand
// (used by contour integrands where speed matters).
cplx l_deriv_analytic(double tau, cplx z);

// Helper constants of the C2 (modulated-wave) branch computations.
struct C2Helpers {
    double a, b, c, d, e;
};
// params must carry branch C2 with its s; all five constants returned.
C2Helpers c2_helpers(double s, const SymbolParams& params);

// Curve parametrizations in the (beta, alpha) plane.  The C2 curve is the
// locus where 1 - c0 l has a double root at xi = s.
void c2_beta_alpha(double s, double& beta, double& alpha);

} // namespace gcw

#endif
