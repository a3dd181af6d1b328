#ifndef GCW_DISPERSION_HPP
#define GCW_DISPERSION_HPP

// Linear dispersion relation 1 - c0 l_tau(xi) = 0, bifurcation-curve
// parametrization, and argument-principle root counting in complex strips.

#include <vector>

#include "gcw/symbols.hpp"

namespace gcw {

enum class Curve { C2, C3, C4 };

struct BifurcationPoint {
    double beta = 0.0;
    double alpha = 1.0;
    Curve curve = Curve::C3;
    double s = 0.0;  // C2 parameter
    double k0 = 0.0; // C3 nonzero root
    double tau() const { return beta / alpha; }
    double c0() const; // = alpha^{-1/2}
    SymbolParams params(double mu = 0.0) const;
};

struct Root {
    cplx z;
    int multiplicity;
};

struct RootReport {
    std::vector<Root> roots; // closed under z -> -z
    double strip_eta = 0.0;
    int winding = 0;
    double contour_R = 0.0;
    int multiplicity_sum() const;
};

// Per-arc pieces of (1/2 pi i) \oint w'/w along the rectangle, w = 1 - c0 l.
struct ArcDecomposition {
    cplx top, bottom, left, right;
    cplx total() const { return top + bottom + left + right; }
};

// Unique positive root of m_tau(xi) = 1 for 0 < tau < 1/3, residual < 1e-13.
// Throws NoRoot at or beyond tau = 1/3.
double solve_k0(double tau);

// Point of the C2 curve at parameter s, with the double-root certificate
// l(s) = 1/c0, l'(s) = 0 checked to 1e-10.
BifurcationPoint c2_point(double s);

// Point of the C3 curve at Bond number tau (alpha = 1, beta = tau).
BifurcationPoint c3_point(double tau);

// Winding number of 1 - c0 l along the rectangle with vertices (+-R, +-i eta),
// with roots localized by recursive contour subdivision.
RootReport roots_in_strip(const SymbolParams& params, double eta, double R);

// The four arc contributions reported separately (same contour).
ArcDecomposition residue_index_decomposition(const SymbolParams& params, double eta, double R);

// Empirical determination of the widest strip half-width (<= eta*) in which
// the root set is exactly the expected one for this parameter point; eta is
// lowered from eta* in steps of 0.05 eta* until the count stabilizes at the
// expected multiplicity sum.
double certify_eta(const SymbolParams& params, int expected_sum = 4);

// Default contour half-length: max expected root modulus + 5.
double default_contour_R(const SymbolParams& params);

} // namespace gcw

#endif
