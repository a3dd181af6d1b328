#include "gcw/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "gcw/parallel.hpp"
#include "gcw/symbols.hpp"

namespace gcw {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Gamma(1/4)
constexpr double kGammaQuarter = 3.62560990822190831193;

using boost::math::quadrature::gauss_kronrod;

double gk(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
    return gauss_kronrod<double, 61>::integrate(f, a, b, 8, tol);
}

// Composite quadrature over [0, X] with panels resolving the oscillation.
// Few panels: adaptive 61-point rule; many panels (high frequency): fixed
// 15-point rule per single-period panel, whose error is far below the
// e^{-eta x} scale that matters there.
template <typename F>
cplx oscillatory_finite(F f, double x, double X, double first_panel) {
    double panel = std::min(4.0, 0.6 * 2.0 * kPi / std::max(x, 1e-30));
    bool fixed_rule = X / panel > 48.0;
    if (fixed_rule) panel = 2.0 * kPi / x;
    cplx acc = 0.0;
    double a = 0.0;
    bool first = true;
    while (a < X) {
        double w = first ? std::min(first_panel, panel) : panel;
        double b = std::min(a + w, X);
        if (fixed_rule && !first)
            acc += cplx(gauss_kronrod<double, 15>::integrate(
                            [&](double t) { return f(t).real(); }, a, b, 0),
                        gauss_kronrod<double, 15>::integrate(
                            [&](double t) { return f(t).imag(); }, a, b, 0));
        else
            acc += cplx(gk([&](double t) { return f(t).real(); }, a, b),
                        gk([&](double t) { return f(t).imag(); }, a, b));
        a = b;
        first = false;
    }
    return acc;
}

// Same for a real integrand against cos(x xi).
template <typename F>
double oscillatory_finite_cos(F f, double x, double X, double first_panel) {
    double panel = std::min(4.0, 0.6 * 2.0 * kPi / std::max(x, 1e-30));
    bool fixed_rule = X / panel > 48.0;
    if (fixed_rule) panel = 2.0 * kPi / x;
    double acc = 0.0, a = 0.0;
    bool first = true;
    while (a < X) {
        double w = first ? std::min(first_panel, panel) : panel;
        double b = std::min(a + w, X);
        auto g = [&](double t) { return f(t) * std::cos(x * t); };
        if (fixed_rule && !first)
            acc += gauss_kronrod<double, 15>::integrate(g, a, b, 0);
        else
            acc += gk(g, a, b);
        a = b;
        first = false;
    }
    return acc;
}

// T_a(w) = \int_w^inf u^{-a} e^{iu} du for Re w > 0, via the rotated contour
// u = w + it (a Fresnel-type integral for a = 1/2).  Computed directly for
// every order: an upward recursion in a cancels catastrophically for |w|
// large, while the rotated integrand is sign-definite in modulus.
cplx tail_T(double a, cplx w) {
    const cplx i(0.0, 1.0);
    auto f = [&](double t) { return std::pow(w + i * t, -a) * std::exp(-t); };
    auto fre = [&](double t) { return f(t).real(); };
    auto fim = [&](double t) { return f(t).imag(); };
    // geometric panels resolve the |w|-scale boundary layer of (w+it)^{-a}
    double s = std::clamp(std::abs(w), 1e-8, 40.0);
    double edges[] = {0.0,
                      0.25 * s,
                      s,
                      std::min(4.0 * s, 45.0),
                      std::min(16.0 * s, 50.0),
                      60.0};
    cplx I = 0.0;
    for (size_t k = 0; k + 1 < sizeof(edges) / sizeof(edges[0]); ++k)
        if (edges[k + 1] > edges[k])
            I += cplx(gk(fre, edges[k], edges[k + 1]), gk(fim, edges[k], edges[k + 1]));
    return i * std::exp(i * w) * I;
}

// \int_X^inf xi^{-a} cos(x xi) d xi = x^{a-1} Re T_a(x X)
double cos_tail(double a, double x, double X) {
    return std::pow(x, a - 1.0) * tail_T(a, cplx(x * X, 0.0)).real();
}

// Large-xi series l = tau^{-1/2} xi^{-1/2} sum_k b_k (tau xi^2)^{-k}, with
// b_k the (1+u)^{-1/2} binomial weights; eight terms reach machine accuracy
// for tau xi^2 >= 300.
constexpr int kTailTerms = 8;
struct TailSeries {
    double s[kTailTerms];
};
TailSeries l_series(double tau) {
    constexpr double b[kTailTerms] = {1.0,         -1.0 / 2.0,   3.0 / 8.0,    -5.0 / 16.0,
                                      35.0 / 128.0, -63.0 / 256.0, 231.0 / 1024.0,
                                      -429.0 / 2048.0};
    TailSeries t;
    double u = 1.0;
    for (int k = 0; k < kTailTerms; ++k) {
        t.s[k] = b[k] * u;
        u /= tau;
    }
    return t;
}
constexpr double kLeadSeries[kTailTerms] = {
    1.0, -1.0 / 4.0, 5.0 / 32.0, -15.0 / 128.0, 195.0 / 2048.0, -663.0 / 8192.0,
    4641.0 / 65536.0, -16575.0 / 262144.0};
double tail_power(int k) { return 0.5 + 2.0 * k; }

// Transform of the leading part: (1/pi) tau^{-1/2} \int_0^inf (1+xi^2)^{-1/4} cos(x xi) d xi.
double lead_transform(double tau, double x) {
    double F = std::sqrt(kPi) / kGammaQuarter * std::pow(0.5 * x, -0.25) *
               boost::math::cyl_bessel_k(0.25, x);
    return F / (std::sqrt(tau) * kPi);
}

// Bessel-subtracted representation, accurate for small and moderate x.
double eval_split(double tau, double x) {
    auto r = [tau](double xi) {
        double l = xi == 0.0 ? 1.0 : l_eval(tau, cplx(xi, 0.0)).real();
        return l - std::pow(tau, -0.5) * std::pow(1.0 + xi * xi, -0.25);
    };
    const double X = 64.0;
    double I = oscillatory_finite_cos(r, x, X, 1.0);
    TailSeries ls = l_series(tau);
    double it = 0.0, scale = std::pow(tau, -0.5);
    for (int k = 1; k < kTailTerms; ++k)
        it += scale * (ls.s[k] - kLeadSeries[k]) * cos_tail(tail_power(k), x, X);
    double tail_resid = scale * std::abs(ls.s[kTailTerms - 1] - kLeadSeries[kTailTerms - 1]) *
                        std::pow(X, -2.0 * kTailTerms + 1.5) / (2.0 * kTailTerms - 1.5);
    if (tail_resid > 1e-5) throw AccuracyLoss("kernel tail extrapolation residual too large");
    return lead_transform(tau, x) + (I + it) / kPi;
}

// Shifted-contour representation, uniform relative accuracy for large x:
// K(x) = (1/pi) Re[ e^{-eta x} \int_0^inf l(xi + i eta) e^{i x xi} d xi ]
// (the vertical leg is purely imaginary since l is real on the imaginary axis).
double eval_contour(double tau, double x) {
    const double eta = 0.90 * strip_halfwidth(tau);
    const cplx i(0.0, 1.0);
    const double X = 60.0;
    cplx I = oscillatory_finite(
        [&](double xi) { return l_eval(tau, cplx(xi, eta)) * std::exp(i * x * xi); }, x, X, 0.1);
    TailSeries ls = l_series(tau);
    cplx tail = 0.0;
    const cplx w0 = x * cplx(X, eta);
    for (int k = 0; k < kTailTerms; ++k)
        tail += ls.s[k] * std::pow(x, tail_power(k) - 1.0) * tail_T(tail_power(k), w0);
    tail *= std::pow(tau, -0.5);
    // tail_T(w0) carries e^{i w0} = e^{i x X} e^{-eta x}
    return (std::exp(-eta * x) * I + tail).real() / kPi;
}

double eval_windowed(double tau, double x) {
    const double X = 64.0;
    auto l = [tau](double xi) { return xi == 0.0 ? 1.0 : l_eval(tau, cplx(xi, 0.0)).real(); };
    double I = oscillatory_finite_cos(l, x, X, 1.0);
    TailSeries ls = l_series(tau);
    double it = 0.0, scale = std::pow(tau, -0.5);
    for (int k = 0; k < kTailTerms; ++k) it += scale * ls.s[k] * cos_tail(tail_power(k), x, X);
    return (I + it) / kPi;
}

} // namespace

double kernel_eval(double tau, double x, KernelMethod method) {
    if (!(tau > 0.0)) throw DomainError("kernel_eval: tau must be positive");
    if (!(x > 0.0)) throw DomainError("kernel_eval: x must be positive (K is even)");
    if (method == KernelMethod::WindowedQuadrature) return eval_windowed(tau, x);
    return x <= 6.0 ? eval_split(tau, x) : eval_contour(tau, x);
}

KernelSamples kernel_sample(double tau, const std::vector<double>& x, KernelMethod method) {
    KernelSamples s;
    s.tau = tau;
    s.method = method;
    s.x = x;
    s.K.resize(x.size());
    parallel_for(static_cast<int>(x.size()),
                 [&](int i) { s.K[i] = kernel_eval(tau, x[i], method); });
    return s;
}

KernelDiagnostics kernel_diagnostics(double tau) {
    KernelDiagnostics d;
    d.eta_star = strip_halfwidth(tau);
    d.singularity_target = 1.0 / std::sqrt(2.0 * kPi * tau);

    // singularity constant: intercept of sqrt(x) K(x) = A + B sqrt(x) fitted
    // over the window [1e-4, 1e-3]; the slope B is the genuine finite part
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (double x = 1e-4; x <= 1.0001e-3; x *= std::pow(10.0, 1.0 / 3.0)) {
            double u = std::sqrt(x), y = u * kernel_eval(tau, x);
            sx += u;
            sy += y;
            sxx += u * u;
            sxy += u * y;
            ++n;
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        d.singularity_constant = (sy - slope * sx) / n;
    }

    // decay rate: least-squares slope of log|K| on [5, 15]
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (double x = 5.0; x <= 15.0001; x += 1.0) {
            double y = std::log(std::abs(kernel_eval(tau, x)));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++m;
        }
        d.decay_rate = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
    }

    // mass: 2 \int_0^inf K dx with x = u^2 absorbing the singularity; the
    // remaining tail beyond x = 16 is below the e^{-eta x} envelope
    auto f = [tau](double u) { return 2.0 * u * kernel_eval(tau, u * u); };
    double mass = 0.0;
    const double edges[] = {1e-4, 0.03, 0.1, 0.3, 0.7, 1.2, 1.7, 2.2, 2.7, 3.1, 3.5, 4.0};
    for (size_t i = 0; i + 1 < sizeof(edges) / sizeof(edges[0]); ++i)
        mass += gauss_kronrod<double, 31>::integrate(f, edges[i], edges[i + 1], 2, 1e-9);
    mass += 2.0 * edges[0] / std::sqrt(2.0 * kPi * tau); // sliver x in [0, edges[0]^2]
    d.mass = 2.0 * mass;
    return d;
}

} // namespace gcw
