#ifndef GCW_NORMALFORM_HPP
#define GCW_NORMALFORM_HPP

// Normal-form coefficients of the reduced four-dimensional systems, the
// truncated vector fields, and their explicit homoclinic solutions.

#include <array>
#include <complex>

#include "gcw/reduction.hpp"

namespace gcw {

// 0^{2+}(i k0) branch.  Structure: p0 = 0, p1 = -p2, p3 = 2 p2, q1 = -2 q0.
struct NfCoeffsC3 {
    double p0, p1, p2, p3, q0, q1;
    double k0, sigma, lp_k0; // convenience data used by wave construction
};

// (i s)^2 branch, only q0 and q1 are determined by the reduction.  Both
// routes are always computed and compared; `route` records which values are
// carried in q0/q1.
struct NfCoeffsC2 {
    double q0, q1;
    CoeffSource route = CoeffSource::ClosedForm;
};

// Eigenstructure of the linear parts; all identities hold to 1e-14.
struct NfBasisC3 {
    std::array<std::array<double, 4>, 4> L;
    std::array<cplx, 4> xi0, xi1, zeta;
    double max_identity_error() const;
};
struct NfBasisC2 {
    std::array<std::array<double, 4>, 4> L;
    std::array<cplx, 4> zeta0, zeta1, zeta1_star;
    double max_identity_error() const;
};
NfBasisC3 nf_basis_C3(double k0);
NfBasisC2 nf_basis_C2(double s);

// Both routes (closed forms vs solvability conditions on the psi table) are
// computed and compared; RouteMismatch beyond 1e-10.
NfCoeffsC3 nf_coeffs_C3(double tau, const CmCoeffs& psis);

// Both routes (inner-product formulas on the psi table vs the closed forms
// in terms of l at s, 2s); RouteMismatch beyond 1e-8 relative.
NfCoeffsC2 nf_coeffs_C2(double s, const CmCoeffs& psis);

// Truncated normal form of the 0^{2+}(i k0) bifurcation:
//   A' = B,  B' = p0 mu + p1 mu A + p2 A^2 + p3 |C|^2,
//   C' = i k0 C + i C (q0 mu + q1 A).
struct StateC3 {
    double A, B;
    cplx C;
};
StateC3 truncated_field_C3(const StateC3& u, double mu, const NfCoeffsC3& c);

// Truncated normal form of the (i s)^2 bifurcation (cubic truncation); the
// coefficients p0, p1, p2, q2 are not determined by the reduction and enter
// as explicit inputs (default 0).
struct StateC2 {
    cplx A, B;
};
struct NfAuxC2 {
    double p0 = 0.0, p1 = 0.0, p2 = 0.0, q2 = 0.0;
};
StateC2 truncated_field_C2(const StateC2& u, double mu, double s, const NfCoeffsC2& c,
                           const NfAuxC2& aux = {});

// Explicit homoclinic family of the truncated C3 system.  The ripple
// parameter k enters through rho = 1 + (4 p3 / p1) k, the value for which
// the pedestal equilibrium exists; the family solves the truncated system
// exactly (pointwise residual at rounding level).
struct GswNfSolution {
    double mu, k, rho, Theta_star;
    NfCoeffsC3 coeffs;
    StateC3 state(double t) const;     // (A, B, C) at time t
    StateC3 derivative(double t) const; // exact d/dt of the solution
};
GswNfSolution nf_gsw_solution(double mu, double k, double Theta_star, const NfCoeffsC3& c);

// Envelope homoclinic of the truncated C2 system with p0 = p1 = 0:
//   r0(t) = sqrt(-2 q0 mu / q1) sech(sqrt(q0 mu) t),  r0'' = q0 mu r0 + q1 r0^3.
struct MswNfSolution {
    double mu, s, Theta_star;
    NfCoeffsC2 coeffs;
    double r0(double t) const;
    double r0_dot(double t) const;
    double r0_ddot(double t) const;
    StateC2 state(double t) const;
    StateC2 derivative(double t) const;
};
MswNfSolution nf_msw_solution(double mu, double s, double Theta_star, const NfCoeffsC2& c);

} // namespace gcw

#endif
