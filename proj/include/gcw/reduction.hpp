#ifndef GCW_REDUCTION_HPP
#define GCW_REDUCTION_HPP

// Center-manifold reduction data: the jet-to-coordinates transition matrices,
// the projections onto Ker T, and the table of reduced-equation coefficients
// psi_pqlmn = Psi_pqlmn''''(0), computed both from closed forms and by
// independently solving the defining equations T Psi = g, Q Psi = 0.

#include <array>
#include <map>

#include "gcw/trigpoly.hpp"

namespace gcw {

using Jet = std::array<double, 4>;   // (phi(0), phi'(0), phi''(0), phi'''(0))
using Coords = std::array<double, 4>; // (A, B, C, D)

struct ProjectionSpec {
    Projection kind;
    std::array<std::array<double, 4>, 4> T; // transition matrix
};

// Inverse of the kernel-basis Wronskian at 0 for Ker T = {1, x, cos, sin}.
ProjectionSpec projection_spec_Q1(double k0);
// Same for Ker T = {cos, x cos, sin, x sin}.
ProjectionSpec projection_spec_Q2(double s);

Coords projection_apply(const ProjectionSpec& spec, const Jet& jet);

// Jet of the projected function Q phi; projector property (QP)^2 = QP.
Jet projection_jet(const ProjectionSpec& spec, const Jet& jet);

struct CmIndex {
    int p, q, l, m, n; // exponents of A, B, C, D, mu
    auto operator<=>(const CmIndex&) const = default;
};

enum class CoeffSource { ClosedForm, AnsatzSolve };

struct CmCoeffs {
    Branch branch = Branch::C3;
    SymbolParams params;
    CoeffSource source = CoeffSource::ClosedForm;
    std::map<CmIndex, double> psi;
    double at(CmIndex i) const;
    bool has(CmIndex i) const { return psi.count(i) != 0; }
};

// Two entries of the C3 closed-form table and one entry of the C2 table admit
// two readings; the solver route adjudicates between them.
struct ClosedC3Options {
    // factor of l(2k0) k0^4/(l(2k0)-1) in psi_00200/psi_00020: 8 or 6
    double resonant_pair_factor = 8.0;
};
struct ClosedC2Options {
    // doubtful term of psi_10200: -256*b*s (true) or -256*b*d (false)
    bool psi10200_term_bs = false;
};

CmCoeffs cm_coeffs_closed_C3(double tau, const ClosedC3Options& opt = {});
CmCoeffs cm_coeffs_closed_C2(double s, const ClosedC2Options& opt = {});

// Independent route: assemble each right-hand side in the trig-polynomial
// algebra and solve T Psi = g under Q Psi = 0.  Second order is computed
// before third order (the C2 cubics consume the quadratic solutions).
CmCoeffs cm_coeffs_ansatz(Branch branch, const SymbolParams& params);

// Kernel basis elements of the branch as trig polynomials (order A, B, C, D).
std::array<TrigPoly, 4> kernel_basis(const SymbolParams& params);

} // namespace gcw

#endif
