#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcw/kernel.hpp"
#include "gcw/symbols.hpp"

using namespace gcw;

TEST_CASE("singularity constant near the origin") {
    // sqrt(x) K(x) = limit + finite_part * sqrt(x) + ...; at x = 1e-4 the
    // genuine finite-part correction is about 2 percent, so the point value
    // carries that band while the fitted intercept recovers the limit
    for (double tau : {0.1, 0.2}) {
        double target = 1.0 / std::sqrt(2.0 * 3.14159265358979323846 * tau);
        double got = std::sqrt(1e-4) * kernel_eval(tau, 1e-4);
        CHECK(std::abs(got - target) / target < 0.03);
        KernelDiagnostics d = kernel_diagnostics(tau);
        CHECK(std::abs(d.singularity_constant - target) / target < 0.01);
    }
}

TEST_CASE("kernel sign structure") {
    // positive near the origin where the singularity dominates; the kernel
    // genuinely changes sign further out (the symbol hump above 1 forces
    // oscillation), so positivity is only asserted on the inner region
    for (double tau : {0.05, 0.1, 0.2, 0.3})
        for (double x : {1e-3, 0.01, 0.05, 0.1, 0.15})
            CHECK(kernel_eval(tau, x) > 0.0);
    // frozen independent oracle values (40-digit quadrature of the transform)
    CHECK(kernel_eval(0.1, 0.5) == doctest::Approx(-0.117275433906).epsilon(1e-9));
    CHECK(kernel_eval(0.1, 10.0) == doctest::Approx(-2.12507248338e-9).epsilon(1e-7));
    CHECK(kernel_eval(0.1, 15.0) == doctest::Approx(-4.34382556811e-13).epsilon(1e-7));
    CHECK(kernel_eval(0.2, 0.5) == doctest::Approx(0.0267730834517).epsilon(1e-9));
    CHECK(kernel_eval(0.2, 20.0) == doctest::Approx(-1.36728032043e-16).epsilon(1e-7));
    CHECK(kernel_eval(0.3, 7.0) == doctest::Approx(-8.03677610321e-7).epsilon(1e-9));
}

TEST_CASE("log-slope bound on the decay window") {
    // slope of log K on [5, 15] must be at most -0.85 eta*
    double tau = 0.1;
    double eta_star = strip_halfwidth(tau);
    double k5 = kernel_eval(tau, 5.0), k15 = kernel_eval(tau, 15.0);
    double slope = (std::log(std::abs(k15)) - std::log(std::abs(k5))) / 10.0;
    CHECK(slope <= -0.85 * eta_star);
}

TEST_CASE("diagnostics bundle") {
    KernelDiagnostics d = kernel_diagnostics(0.3);
    CHECK(std::abs(d.singularity_constant - d.singularity_target) / d.singularity_target < 0.01);
    CHECK(d.decay_rate > 0.85 * d.eta_star);
    CHECK(d.decay_rate < 1.15 * d.eta_star);
    CHECK(std::abs(d.mass - 1.0) < 1e-5);
    KernelDiagnostics d05 = kernel_diagnostics(0.05);
    CHECK(std::abs(d05.mass - 1.0) < 1e-5);
}

TEST_CASE("two methods agree away from the origin") {
    for (double tau : {0.1, 0.2, 0.3})
        for (double x : {0.01, 0.1, 1.0, 4.0, 10.0}) {
            double a = kernel_eval(tau, x, KernelMethod::SplitAsymptotic);
            double b = kernel_eval(tau, x, KernelMethod::WindowedQuadrature);
            CHECK(std::abs(a - b) / std::abs(a) < 1e-5);
        }
}

TEST_CASE("continuity across the large-x method switch") {
    // SplitAsymptotic switches representation at x = 6
    for (double tau : {0.1, 0.2}) {
        double lo = kernel_eval(tau, 6.0 - 1e-7);
        double hi = kernel_eval(tau, 6.0 + 1e-7);
        CHECK(std::abs(lo - hi) / std::abs(lo) < 1e-5);
    }
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(kernel_eval(0.2, -1.0), DomainError);
    CHECK_THROWS_AS(kernel_eval(0.2, 0.0), DomainError);
    CHECK_THROWS_AS(kernel_eval(-0.1, 1.0), DomainError);
}

TEST_CASE("sample batch matches single evaluations") {
    std::vector<double> xs{0.5, 1.0, 2.0};
    KernelSamples s = kernel_sample(0.2, xs);
    for (size_t i = 0; i < xs.size(); ++i) CHECK(s.K[i] == kernel_eval(0.2, xs[i]));
}
