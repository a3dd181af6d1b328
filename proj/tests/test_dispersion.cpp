#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcw/dispersion.hpp"

using namespace gcw;

namespace {
// independent oracle: bisection on m(xi) - 1 with a bracket from a sign scan
double k0_oracle(double tau) {
    auto f = [&](double x) { return m_eval(tau, cplx(x, 0.0)).real() - 1.0; };
    double lo = 1e-6, hi = 0.0;
    for (double x = 0.25; x < 50.0; x += 0.25)
        if (f(x) > 0.0) {
            hi = x;
            break;
        } else
            lo = x;
    REQUIRE(hi > 0.0);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}
} // namespace

TEST_CASE("solve_k0 against the bisection oracle") {
    for (double tau : {0.05, 0.1, 0.2, 0.3}) {
        double k0 = solve_k0(tau);
        CHECK(k0 == doctest::Approx(k0_oracle(tau)).epsilon(1e-10));
        // root of the polynomial form of the dispersion relation
        CHECK(std::abs((1.0 + tau * k0 * k0) * std::tanh(k0) - k0) < 1e-12);
    }
}

TEST_CASE("no root at and beyond tau = 1/3") {
    CHECK_THROWS_AS(solve_k0(1.0 / 3.0), NoRoot);
    CHECK_THROWS_AS(solve_k0(0.4), NoRoot);
}

TEST_CASE("k0 decreases toward zero as tau approaches 1/3") {
    double prev = 1e300;
    for (double tau = 0.20; tau < 0.331; tau += 0.01) {
        double k0 = solve_k0(tau);
        CHECK(k0 < prev);
        prev = k0;
    }
    CHECK(prev < 0.5); // k0(0.33) already small
}

TEST_CASE("c2 point satisfies the double-root certificate") {
    for (double s : {0.5, 1.0, 2.0}) {
        BifurcationPoint b = c2_point(s);
        CHECK(b.alpha > 1.0);
        CHECK(b.c0() < 1.0);
        double tau = b.tau(), c0 = b.c0();
        // dispersion relation and its xi-derivative at xi = s
        auto F = [&](double xi) {
            return (b.alpha + b.beta * xi * xi) * std::sinh(xi) - xi * std::cosh(xi);
        };
        CHECK(std::abs(F(s)) < 1e-10);
        double h = 1e-5;
        CHECK(std::abs((F(s + h) - F(s - h)) / (2 * h)) < 1e-8);
        CHECK(std::abs(l_eval(tau, cplx(s, 0.0)).real() - 1.0 / c0) < 1e-10);
        CHECK(std::abs(l_deriv(tau, s, 1)) < 1e-10);
    }
}

TEST_CASE("c2 curve limits to the corner") {
    double beta, alpha;
    c2_beta_alpha(1e-4, beta, alpha);
    CHECK(beta == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(alpha == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("root report on the near-critical branch") {
    SymbolParams p = c3_point(0.2).params();
    double k0 = solve_k0(0.2);
    double eta = 0.5 * certify_eta(p);
    RootReport r = roots_in_strip(p, eta, default_contour_R(p));
    CHECK(r.winding == 4);
    CHECK(r.multiplicity_sum() == 4);
    REQUIRE(r.roots.size() == 3);
    bool zero2 = false, plus = false, minus = false;
    for (const Root& rt : r.roots) {
        if (std::abs(rt.z) < 1e-7 && rt.multiplicity == 2) zero2 = true;
        if (std::abs(rt.z - cplx(k0, 0.0)) < 1e-7 && rt.multiplicity == 1) plus = true;
        if (std::abs(rt.z + cplx(k0, 0.0)) < 1e-7 && rt.multiplicity == 1) minus = true;
    }
    CHECK(zero2);
    CHECK(plus);
    CHECK(minus);
}

TEST_CASE("root report on the double-root branch") {
    SymbolParams p = c2_point(1.0).params();
    double eta = 0.5 * certify_eta(p);
    RootReport r = roots_in_strip(p, eta, default_contour_R(p));
    CHECK(r.winding == 4);
    REQUIRE(r.roots.size() == 2);
    for (const Root& rt : r.roots) {
        CHECK(rt.multiplicity == 2);
        CHECK(std::abs(std::abs(rt.z.real()) - 1.0) < 1e-7);
        CHECK(std::abs(rt.z.imag()) < 1e-7);
    }
}

TEST_CASE("generic subcritical point encloses nothing") {
    SymbolParams p;
    p.tau = 0.2;
    p.c0 = 0.5;
    p.branch = Branch::Generic;
    // 1 - 0.5 l >= 0.5 on the real line
    for (double x = 0.0; x < 20.0; x += 0.5)
        CHECK(1.0 - 0.5 * l_eval(0.2, cplx(x, 0.0)).real() > 0.4);
    RootReport r = roots_in_strip(p, 0.5 * strip_halfwidth(0.2), 10.0);
    CHECK(r.winding == 0);
    CHECK(r.roots.empty());
}

TEST_CASE("vertical arc contributions vanish with growing R") {
    SymbolParams p = c3_point(0.2).params();
    double k0 = solve_k0(0.2);
    double eta = 0.4 * strip_halfwidth(0.2);
    double prev = 1e300;
    for (double R : {k0 + 2.0, k0 + 6.0, k0 + 10.0}) {
        ArcDecomposition a = residue_index_decomposition(p, eta, R);
        double vert = std::abs(a.left) + std::abs(a.right);
        CHECK(vert < prev);
        prev = vert;
        CHECK(std::abs(a.total().real() - 4.0) < 2e-3);
        CHECK(std::abs(a.total().imag()) < 2e-3);
    }
}

TEST_CASE("bad strip arguments") {
    SymbolParams p = c3_point(0.2).params();
    CHECK_THROWS_AS(roots_in_strip(p, 2.0 * strip_halfwidth(0.2), 8.0), DomainError);
}
