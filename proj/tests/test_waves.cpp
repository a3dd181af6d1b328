#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcw/dispersion.hpp"
#include "gcw/waves.hpp"

using namespace gcw;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("generalized wave bookkeeping") {
    GswParams p;
    p.mu = 5e-3;
    std::vector<double> grid = uniform_grid(80.0, 1024);
    WaveProfile w = gsw_profile(0.2, p, grid);
    GswComponents c = gsw_components(0.2, p, grid);
    CHECK(w.speed == 1.0 + p.mu);
    CHECK(c.pedestal == 0.5 * p.mu * (1.0 - std::sqrt(p.rho())));
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(w.values[i] == c.core[i] + c.pedestal + c.ripple[i]);
    // even profile for Theta* = 0
    for (size_t i = 1; i < grid.size(); ++i) {
        size_t j = grid.size() - i;
        CHECK(w.values[i] == doctest::Approx(w.values[j]).epsilon(1e-10));
    }
    // bounded by four times the predicted scale
    for (double v : w.values) CHECK(std::abs(v) <= 4.0 * w.meta.amplitude_scale);
}

TEST_CASE("amplitude scaling in mu") {
    // sup |phi| = O(|mu|^{1/2 - kappa}) at fixed k'
    double prev = 1e300;
    for (double mu : {2e-2, 1e-2, 5e-3, 2.5e-3}) {
        GswParams p;
        p.mu = mu;
        std::vector<double> grid = uniform_grid(60.0, 512);
        WaveProfile w = gsw_profile(0.2, p, grid);
        double sup = 0.0;
        for (double v : w.values) sup = std::max(sup, std::abs(v));
        double scaled = sup / std::sqrt(mu);
        CHECK(scaled < prev * 1.25); // ratio stabilizes rather than growing
        prev = scaled;
    }
}

TEST_CASE("ripple phase shift identity") {
    double tau = 0.2;
    GswParams p;
    p.mu = 1e-2;
    GswPhase ph = gsw_phase(tau, p);
    double sigma = 1.0 / (1.0 / 3.0 - tau);
    double lp = l_deriv(tau, solve_k0(tau), 1);
    double expect = 2.0 * 3.0 * std::sqrt(2.0) * std::pow(p.rho(), 0.25) *
                    std::sqrt(p.mu) / (std::sqrt(sigma) * lp);
    CHECK(ph.shift == doctest::Approx(expect).epsilon(1e-14));
    // commensurate box closes the phase to a multiple of 2 pi
    double L = gsw_commensurate_length(tau, p, 120.0);
    double phase = ph.wavenumber * L + ph.shift;
    CHECK(std::abs(phase / (2.0 * kPi) - std::round(phase / (2.0 * kPi))) < 1e-12);
}

TEST_CASE("generalized wave guards") {
    std::vector<double> grid = uniform_grid(40.0, 256);
    GswParams p;
    p.mu = 1e-2;
    p.kprime = 1e-6; // ripple far below the persistence threshold
    CHECK_THROWS_AS(gsw_profile(0.2, p, grid), PersistenceViolation);
    GswParams q;
    q.mu = 0.2; // above the ceiling
    CHECK_THROWS_AS(gsw_profile(0.2, q, grid), CeilingViolation);
    q.override_ceiling = true;
    CHECK_NOTHROW(gsw_profile(0.2, q, grid));
    GswParams r;
    r.mu = 1e-2;
    CHECK_THROWS_AS(gsw_profile(0.4, r, grid), DomainError);
    r.kappa = 0.7;
    CHECK_THROWS_AS(gsw_profile(0.2, r, grid), DomainError);
}

TEST_CASE("modulated wave structure") {
    std::vector<double> grid = uniform_grid(400.0, 4096);
    WaveProfile up = msw_profile(1.0, -1e-3, 0.0, grid);
    WaveProfile dn = msw_profile(1.0, -1e-3, kPi, grid);
    BifurcationPoint bp = c2_point(1.0);
    CHECK(up.speed == doctest::Approx(bp.c0() - 1e-3));
    CHECK(up.tau == doctest::Approx(bp.tau()));
    double sup = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(up.values[i] + dn.values[i]) < 1e-12);
        sup = std::max(sup, std::abs(up.values[i]));
    }
    CHECK(sup == doctest::Approx(up.meta.amplitude_scale).epsilon(1e-6));

    // amplitude = O(|mu|^{1/2}); width grows like (q0 mu)^{-1/2}
    WaveProfile w4 = msw_profile(1.0, -4e-3, 0.0, grid);
    CHECK(w4.meta.amplitude_scale ==
          doctest::Approx(2.0 * up.meta.amplitude_scale).epsilon(1e-12));
}

TEST_CASE("modulated wave guards") {
    std::vector<double> grid = uniform_grid(100.0, 256);
    CHECK_THROWS_AS(msw_profile(1.0, 1e-3, 0.0, grid), DomainError);
    CHECK_THROWS_AS(msw_profile(1.0, -0.2, 0.0, grid), CeilingViolation);
    CHECK_THROWS_AS(msw_profile(1.0, -1e-3, 0.4, grid), DomainError);
}

TEST_CASE("galilean shift group structure") {
    std::vector<double> grid = uniform_grid(80.0, 512);
    GswParams p;
    p.mu = -5e-3;
    WaveProfile w = gsw_profile(0.2, p, grid);
    WaveProfile same = galilean_shift(w, 0.0);
    CHECK(same.speed == w.speed);
    CHECK(same.values == w.values);
    WaveProfile twice = galilean_shift(galilean_shift(w, 0.1), 0.15);
    WaveProfile once = galilean_shift(w, 0.25);
    CHECK(twice.speed == doctest::Approx(once.speed).epsilon(1e-15));
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(twice.values[i] == doctest::Approx(once.values[i]).epsilon(1e-13));
    // background removal of the subcritical family member
    double v = 0.5 * p.mu * (1.0 + std::sqrt(p.rho()));
    WaveProfile boosted = galilean_shift(w, v);
    CHECK(boosted.speed ==
          doctest::Approx(1.0 + std::abs(p.mu) * std::sqrt(p.rho())).epsilon(1e-14));
    CHECK(boosted.speed > 1.0);
    CHECK(boosted.meta.galilean_v == v);
}
