#ifndef GCW_SPECTRAL_HPP
#define GCW_SPECTRAL_HPP

// Periodic pseudo-spectral machinery for the steady profile equation
//   M_tau phi - c phi + phi^2 = 0
// on a uniform grid: multiplier application, residual reports, and Newton
// refinement restricted to the even-cosine subspace (which removes the
// translation degeneracy of the reflection-symmetric problem).

#include <vector>

#include "gcw/waves.hpp"

namespace gcw {

struct PeriodicGrid {
    int N = 0;      // power of two
    double L = 0.0; // period; nodes x_j = -L/2 + j L / N
    PeriodicGrid() = default;
    PeriodicGrid(int n, double period);
    std::vector<double> nodes() const;
    double dx() const { return L / N; }
    double freq(int j) const; // signed frequency of mode j
};

// Relative spectral energy in the top third of the spectrum.
double aliasing_fraction(const std::vector<double>& values);

// Apply the multiplier m_tau spectrally; throws AliasingError when the top
// third of the spectrum carries more than alias_tol of the energy.
std::vector<double> apply_M(const std::vector<double>& values, const PeriodicGrid& g, double tau,
                            double alias_tol = 1e-8);

// Apply an arbitrary even real symbol xi -> symbol(xi).
std::vector<double> apply_symbol(const std::vector<double>& values, const PeriodicGrid& g,
                                 const std::function<double(double)>& symbol);

struct ResidualReport {
    double sup_norm = 0.0;
    double l2_norm = 0.0;
    double aliasing = 0.0;
    double sup_phi = 0.0;
};
ResidualReport residual(const std::vector<double>& values, const PeriodicGrid& g, double c,
                        double tau);
std::vector<double> residual_values(const std::vector<double>& values, const PeriodicGrid& g,
                                    double c, double tau);

struct NewtonOptions {
    double tol = 1e-11;
    int max_iter = 25;
    double alias_tol = 1e-6;
};

struct NewtonResult {
    std::vector<double> values;
    std::vector<double> residual_history; // sup norms, initial first
    int iterations = 0;
    bool converged = false;
    double first_step_norm = 0.0; // sup norm of the first Newton correction
};

// Newton iteration on even profiles in cosine coefficients; the Jacobian
// v -> M v - c v + 2 phi v is assembled densely.  Throws SingularJacobian
// when the linearization degenerates; NoConvergence carries the best iterate.
NewtonResult newton_refine(const std::vector<double>& initial, const PeriodicGrid& g, double c,
                           double tau, const NewtonOptions& opts = {});

// Even-function check on the symmetric grid (x_j = -L/2 + j L / N).
bool is_even_on_grid(const std::vector<double>& values, double tol = 1e-10);

} // namespace gcw

#endif
