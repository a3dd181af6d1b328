#include "gcw/symbols.hpp"

#include <cmath>

namespace gcw {

namespace {

constexpr double kPi = 3.14159265358979323846;

// tanh(z)/z = sum c_k z^{2k}; ten terms, ample for |z| < 1e-2.
constexpr double kTanhcSeries[10] = {
    1.0,
    -1.0 / 3.0,
    2.0 / 15.0,
    -17.0 / 315.0,
    62.0 / 2835.0,
    -1382.0 / 155925.0,
    21844.0 / 6081075.0,
    -929569.0 / 638512875.0,
    6404582.0 / 10854718875.0,
    -443861162.0 / 1856156927625.0,
};

cplx tanhc(cplx z) {
    if (std::abs(z) < 1e-2) {
        cplx z2 = z * z, acc = 0.0, p = 1.0;
        for (double c : kTanhcSeries) {
            acc += c * p;
            p *= z2;
        }
        return acc;
    }
    return std::tanh(z) / z;
}

// Radicand (1 + tau z^2) tanh(z)/z and its derivative.
cplx radicand(double tau, cplx z) { return (1.0 + tau * z * z) * tanhc(z); }

cplx radicand_deriv(double tau, cplx z) {
    if (std::abs(z) < 1e-2) {
        // derivative of the even series of (1+tau z^2) tanhc(z)
        cplx z2 = z * z, acc = 0.0, p = 1.0;
        double prev = 0.0;
        for (int k = 0; k < 10; ++k) {
            double ck = kTanhcSeries[k] + tau * prev; // coefficient of z^{2k}
            if (k >= 1) acc += 2.0 * k * ck * p;
            prev = kTanhcSeries[k];
            if (k >= 1) p *= z2;
        }
        return acc * z;
    }
    cplx t = std::tanh(z), s2 = 1.0 - t * t;
    return 2.0 * tau * t + (1.0 + tau * z * z) * (s2 / z - t / (z * z));
}

void require_strip(double tau, cplx z) {
    if (std::abs(z.imag()) >= strip_halfwidth(tau))
        throw StripViolation("evaluation outside |Im z| < eta*");
}

} // namespace

double strip_halfwidth(double tau) {
    if (!(tau > 0.0)) throw DomainError("tau must be positive");
    return std::min(1.0 / std::sqrt(tau), kPi / 2.0);
}

void SymbolParams::validate() const {
    if (!(tau > 0.0) || !(c0 > 0.0)) throw DomainError("tau and c0 must be positive");
    if (branch == Branch::C3) {
        if (std::abs(c0 - 1.0) > 1e-12) throw DomainError("C3 requires c0 = 1");
        if (!(tau < 1.0 / 3.0)) throw DomainError("C3 requires tau < 1/3");
    } else if (branch == Branch::C2) {
        if (!(s > 0.0)) throw DomainError("C2 requires s > 0");
        double beta, alpha;
        c2_beta_alpha(s, beta, alpha);
        double c0_ref = 1.0 / std::sqrt(alpha);
        double tau_ref = beta * c0_ref * c0_ref;
        if (std::abs(c0 - c0_ref) > 1e-12 * c0_ref || std::abs(tau - tau_ref) > 1e-12 * tau_ref)
            throw DomainError("C2 params do not match the curve at this s");
    } else if (branch == Branch::C4) {
        if (std::abs(c0 - 1.0) > 1e-12 || !(tau >= 1.0 / 3.0))
            throw DomainError("C4 requires c0 = 1 and tau >= 1/3");
    }
}

double ell4_zero_closed(double tau) {
    double sigma = 1.0 / (1.0 / 3.0 - tau);
    return 9.0 / (sigma * sigma) - 4.0 / sigma - 4.0 / 15.0;
}

TaylorData taylor_data(double tau) {
    if (!(tau < 1.0 / 3.0)) throw DomainError("taylor_data: tau must be < 1/3");
    TaylorData t;
    t.sigma = 1.0 / (1.0 / 3.0 - tau);
    t.ell4_0 = l_deriv(tau, 0.0, 4);
    t.eta_star = strip_halfwidth(tau);
    return t;
}

cplx m_eval(double tau, cplx z) {
    require_strip(tau, z);
    cplx r = radicand(tau, z);
    if (r.real() <= 0.0 && std::abs(r.imag()) <= 1e-14 * (1.0 + std::abs(r.real())))
        throw BranchAmbiguity("radicand on the negative real axis");
    return std::sqrt(r);
}

cplx l_eval(double tau, cplx z) { return 1.0 / m_eval(tau, z); }

cplx l_deriv_analytic(double tau, cplx z) {
    require_strip(tau, z);
    cplx r = radicand(tau, z);
    // l = r^{-1/2}  =>  l' = -(1/2) r' r^{-3/2}
    cplx sr = std::sqrt(r);
    return -0.5 * radicand_deriv(tau, z) / (r * sr);
}

double l_deriv(double tau, double x, int n) {
    if (n < 1 || n > 4) throw OrderTooHigh("l_deriv supports orders 1..4");
    if (x == 0.0 && (n % 2 == 1)) return 0.0; // l even
    const double r = std::min(0.5 * strip_halfwidth(tau), 0.5);
    const int N = 128;
    double nfac = 1.0;
    for (int k = 2; k <= n; ++k) nfac *= k;
    cplx acc = 0.0;
    for (int j = 0; j < N; ++j) {
        double th = 2.0 * kPi * j / N;
        cplx e(std::cos(th), std::sin(th));
        acc += l_eval(tau, x + r * e) * std::pow(e, -n);
    }
    return nfac * (acc / static_cast<double>(N)).real() / std::pow(r, n);
}

void c2_beta_alpha(double s, double& beta, double& alpha) {
    if (!(s > 0.0)) throw DomainError("c2 curve needs s > 0");
    double sh = std::sinh(s), th = std::tanh(s);
    beta = -1.0 / (2.0 * sh * sh) + 1.0 / (2.0 * s * th);
    alpha = s * s / (2.0 * sh * sh) + s / (2.0 * th);
}

C2Helpers c2_helpers(double s, const SymbolParams& params) {
    if (params.branch != Branch::C2 || !(s > 0.0))
        throw DomainError("c2_helpers requires a C2 parameter point with s > 0");
    params.validate();
    const double tau = params.tau, c0 = params.c0;
    double l2s = l_eval(tau, cplx(2.0 * s, 0.0)).real();
    double l3s = l_eval(tau, cplx(3.0 * s, 0.0)).real();
    double d2 = 1.0 - c0 * l2s, d3 = 1.0 - c0 * l3s, d1 = 1.0 - c0;
    if (std::abs(d1) < 1e-14 || std::abs(d2) < 1e-14 || std::abs(d3) < 1e-14)
        throw DomainError("c2_helpers: division by 1 - c0 l vanishes");
    C2Helpers h;
    h.a = (1.0 - 1.0 / d1) / (2.0 * c0);
    h.b = (1.0 - 1.0 / d2) / (2.0 * c0);
    h.c = l_deriv(tau, 2.0 * s, 1) / (d2 * d2);
    h.d = (1.0 - 1.0 / d3) / (2.0 * c0);
    h.e = 1.0 / (c0 * c0 * l_deriv(tau, s, 2));
    return h;
}

} // namespace gcw
