#ifndef GCW_ERRORS_HPP
#define GCW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gcw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the validity region of an operation.
struct DomainError : Error { using Error::Error; };
// Symbol evaluation requested outside the analyticity strip |Im z| < eta*.
struct StripViolation : Error { using Error::Error; };
// Radicand of the symbol crossed the principal branch cut.
struct BranchAmbiguity : Error { using Error::Error; };
// Derivative order beyond the supported range.
struct OrderTooHigh : Error { using Error::Error; };
// Dispersion relation has no positive root for the given parameters.
struct NoRoot : Error { using Error::Error; };
// |1 - c0 l| fell below tolerance somewhere on the integration contour.
struct ContourThroughZero : Error { using Error::Error; };
// Winding quadrature failed to settle on an integer.
struct NonIntegerWinding : Error { using Error::Error; };
// Kernel tail extrapolation exceeded its residual budget.
struct AccuracyLoss : Error { using Error::Error; };
// Trig-polynomial power outside the supported range.
struct PowerOverflow : Error { using Error::Error; };
// Right-hand side violates the range conditions of the T-equation.
struct NotSolvable : Error { using Error::Error; };
// Ansatz space too small even after enlargement.
struct RankDeficient : Error { using Error::Error; };
// Two computation routes for the same coefficient disagree.
struct RouteMismatch : Error { using Error::Error; };
// Ripple amplitude below the persistence threshold.
struct PersistenceViolation : Error { using Error::Error; };
// |mu| above the configured asymptotic-validity ceiling.
struct CeilingViolation : Error { using Error::Error; };
// Too much spectral energy in the top third of the grid spectrum.
struct AliasingError : Error { using Error::Error; };
// Newton linearization numerically singular.
struct SingularJacobian : Error { using Error::Error; };
// Newton failed to reach the residual target.
struct NoConvergence : Error { using Error::Error; };

} // namespace gcw

#endif
