#include "gcw/normalform.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "gcw/dispersion.hpp"

namespace gcw {

namespace {

using Vec4c = Eigen::Vector4cd;
using Mat4c = Eigen::Matrix4cd;

Vec4c to_eigen(const std::array<cplx, 4>& v) {
    Vec4c out;
    for (int i = 0; i < 4; ++i) out(i) = v[i];
    return out;
}

// coefficient lookup that tolerates absent entries when their slot product
// vanishes (closed-form tables only carry the contributing tuples)
cplx weighted(const CmCoeffs& c, CmIndex idx, cplx w) {
    if (w == cplx(0.0, 0.0)) return 0.0;
    return c.at(idx) * w;
}

// quadratic form of the C3 reduced equation (coefficients of Psi''''(0))
cplx H_C3(const CmCoeffs& c, const Vec4c& u, const Vec4c& v) {
    return weighted(c, {2, 0, 0, 0, 0}, u(0) * v(0)) +
           weighted(c, {1, 0, 1, 0, 0}, 0.5 * (u(0) * v(2) + u(2) * v(0))) +
           weighted(c, {0, 2, 0, 0, 0}, u(1) * v(1)) +
           weighted(c, {0, 1, 0, 1, 0}, 0.5 * (u(1) * v(3) + u(3) * v(1))) +
           weighted(c, {0, 0, 2, 0, 0}, u(2) * v(2)) +
           weighted(c, {0, 0, 0, 2, 0}, u(3) * v(3));
}

// bilinear and trilinear forms of the C2 reduced equation
cplx H2_C2(const CmCoeffs& c, const Vec4c& u, const Vec4c& v) {
    return weighted(c, {2, 0, 0, 0, 0}, u(0) * v(0)) +
           weighted(c, {0, 2, 0, 0, 0}, u(1) * v(1)) +
           weighted(c, {0, 0, 2, 0, 0}, u(2) * v(2)) +
           weighted(c, {0, 0, 0, 2, 0}, u(3) * v(3)) +
           weighted(c, {1, 0, 0, 1, 0}, 0.5 * (u(0) * v(3) + u(3) * v(0))) +
           weighted(c, {0, 1, 1, 0, 0}, 0.5 * (u(1) * v(2) + u(2) * v(1)));
}

double psi3(const CmCoeffs& c, int p, int q, int l, int m, cplx weight) {
    if (weight == cplx(0.0, 0.0)) return 0.0;
    return c.at({p, q, l, m, 0});
}

cplx H3_C2(const CmCoeffs& c, const Vec4c& u, const Vec4c& v, const Vec4c& w) {
    auto sym3 = [&](int a, int b, int d) { // symmetrized x_a x_b x_d / 3 terms
        return (u(a) * v(b) * w(d) + u(a) * w(b) * v(d) + v(a) * u(b) * w(d) +
                v(a) * w(b) * u(d) + w(a) * u(b) * v(d) + w(a) * v(b) * u(d)) / 6.0;
    };
    cplx acc = 0.0;
    struct Slot { int p, q, l, m, a, b, d; };
    const Slot slots[] = {{3, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 3, 3, 3, 3}, {2, 0, 0, 1, 0, 0, 3},
                          {1, 2, 0, 0, 0, 1, 1}, {1, 0, 2, 0, 0, 2, 2}, {1, 0, 0, 2, 0, 3, 3},
                          {1, 1, 1, 0, 0, 1, 2}, {0, 1, 1, 1, 1, 2, 3}, {0, 2, 0, 1, 1, 1, 3},
                          {0, 0, 2, 1, 2, 2, 3}};
    for (const Slot& t : slots) {
        cplx w = sym3(t.a, t.b, t.d);
        acc += psi3(c, t.p, t.q, t.l, t.m, w) * w;
    }
    return acc;
}

// R-vectors of the C2 reduced system: (1/2s^3) (0, -s H, H, 0)
Vec4c r_vec_C2(double s, cplx H) {
    Vec4c v;
    v << 0.0, -s * H / (2.0 * s * s * s), H / (2.0 * s * s * s), 0.0;
    return v;
}

// <v, zeta1*> with zeta1* = (0, 1, 0, -i)/2
cplx pair_zeta1_star(const Vec4c& v) { return 0.5 * v(1) + cplx(0.0, 0.5) * v(3); }

void check_close(double x, double y, double tol, const char* what) {
    double scale = std::max({1.0, std::abs(x), std::abs(y)});
    if (std::abs(x - y) > tol * scale) throw RouteMismatch(what);
}

} // namespace

NfBasisC3 nf_basis_C3(double k0) {
    NfBasisC3 b;
    b.L = {{{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, k0}, {0, 0, -k0, 0}}};
    b.xi0 = {1.0, 0.0, 0.0, 0.0};
    b.xi1 = {0.0, 1.0, 0.0, 0.0};
    b.zeta = {0.0, 0.0, 1.0, cplx(0.0, 1.0)};
    return b;
}

double NfBasisC3::max_identity_error() const {
    Mat4c M = Mat4c::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M(i, j) = L[i][j];
    double k0 = L[2][3];
    double e = (M * to_eigen(xi0)).norm();
    e = std::max(e, (M * to_eigen(xi1) - to_eigen(xi0)).norm());
    e = std::max(e, (M * to_eigen(zeta) - cplx(0.0, k0) * to_eigen(zeta)).norm());
    return e;
}

NfBasisC2 nf_basis_C2(double s) {
    NfBasisC2 b;
    b.L = {{{0, 1, s, 0}, {0, 0, 0, s}, {-s, 0, 0, 1}, {0, -s, 0, 0}}};
    b.zeta0 = {1.0, 0.0, cplx(0.0, 1.0), 0.0};
    b.zeta1 = {0.0, 1.0, 0.0, cplx(0.0, 1.0)};
    b.zeta1_star = {0.0, 0.5, 0.0, cplx(0.0, -0.5)};
    return b;
}

double NfBasisC2::max_identity_error() const {
    Mat4c M = Mat4c::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M(i, j) = L[i][j];
    double s = L[0][2];
    const cplx is(0.0, s);
    double e = ((M - is * Mat4c::Identity()) * to_eigen(zeta0)).norm();
    e = std::max(e, ((M - is * Mat4c::Identity()) * to_eigen(zeta1) - to_eigen(zeta0)).norm());
    // zeta1* annihilates the range of (L - is) under the bilinear pairing
    Mat4c R = M - is * Mat4c::Identity();
    e = std::max(e, (R.transpose() * to_eigen(zeta1_star)).norm());
    return e;
}

NfCoeffsC3 nf_coeffs_C3(double tau, const CmCoeffs& psis) {
    if (psis.branch != Branch::C3) throw DomainError("nf_coeffs_C3: wrong branch");
    double k0 = solve_k0(tau);
    double sigma = 1.0 / (1.0 / 3.0 - tau);
    double lp = l_deriv(tau, k0, 1);
    double k2 = k0 * k0, k3 = k2 * k0;

    // route (i): closed forms
    NfCoeffsC3 closed{0.0, 2.0 * sigma, -2.0 * sigma, -4.0 * sigma, -1.0 / lp, 2.0 / lp,
                      k0,  sigma,       lp};

    // route (ii): solvability conditions on the psi table
    NfBasisC3 b = nf_basis_C3(k0);
    Vec4c zeta = to_eigen(b.zeta), zeta_c = zeta.conjugate();
    double p1 = psis.at({1, 0, 0, 0, 1}) / k2;
    double p2 = psis.at({2, 0, 0, 0, 0}) / k2;
    double p3 = (2.0 / k2) * H_C3(psis, zeta, zeta_c).real();
    double q0 = psis.at({0, 0, 1, 0, 1}) / (2.0 * k3);
    double q1 = psis.at({1, 0, 1, 0, 0}) / (2.0 * k3);

    check_close(p1, closed.p1, 1e-10, "nf_coeffs_C3: p1 routes disagree");
    check_close(p2, closed.p2, 1e-10, "nf_coeffs_C3: p2 routes disagree");
    check_close(p3, closed.p3, 1e-10, "nf_coeffs_C3: p3 routes disagree");
    check_close(q0, closed.q0, 1e-10, "nf_coeffs_C3: q0 routes disagree");
    check_close(q1, closed.q1, 1e-10, "nf_coeffs_C3: q1 routes disagree");
    return closed;
}

NfCoeffsC2 nf_coeffs_C2(double s, const CmCoeffs& psis) {
    if (psis.branch != Branch::C2) throw DomainError("nf_coeffs_C2: wrong branch");
    BifurcationPoint bp = c2_point(s);
    SymbolParams p = bp.params();
    double tau = p.tau, c0 = p.c0;

    // closed forms in terms of l at s and 2s
    double lpp = l_deriv(tau, s, 2);
    double l2s = l_eval(tau, cplx(2.0 * s, 0.0)).real();
    double q0_closed = 2.0 / (c0 * c0 * lpp);
    double q1_closed = (4.0 / (-c0 + 1.0 / l2s) + 8.0 / (1.0 - c0)) / (c0 * c0 * lpp);

    // inner-product route on the psi table
    NfBasisC2 b = nf_basis_C2(s);
    Vec4c z0 = to_eigen(b.zeta0), z0c = z0.conjugate();
    Mat4c L = Mat4c::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) L(i, j) = b.L[i][j];
    const cplx is(0.0, s);

    // phi_00001 = 0 since R_01 = 0 (the mu-only coefficient vanishes)
    double q0_psi = -psis.at({1, 0, 0, 0, 1}) / (4.0 * s * s);

    auto snap = [](Vec4c v) { // clear solver noise in exactly-zero slots
        double scale = v.norm();
        for (int i = 0; i < 4; ++i)
            if (std::abs(v(i)) < 1e-12 * scale) v(i) = 0.0;
        return v;
    };
    Vec4c phi_10100 = snap(L.partialPivLu().solve(
        (-2.0 * H2_C2(psis, z0, z0c)) * r_vec_C2(s, 1.0))); // L phi = -2 R20(z0, z0c)
    Vec4c phi_20000 = snap((L - 2.0 * is * Mat4c::Identity())
                               .partialPivLu()
                               .solve(-H2_C2(psis, z0, z0) * r_vec_C2(s, 1.0)));
    cplx sum = 2.0 * H2_C2(psis, z0, phi_10100) + 2.0 * H2_C2(psis, z0c, phi_20000) +
               3.0 * H3_C2(psis, z0, z0, z0c);
    cplx q1_pair = pair_zeta1_star(r_vec_C2(s, sum));
    if (std::abs(q1_pair.imag()) > 1e-9 * (1.0 + std::abs(q1_pair)))
        throw RouteMismatch("nf_coeffs_C2: q1 inner product not real");
    double q1_psi = q1_pair.real();

    check_close(q0_psi, q0_closed, 1e-8, "nf_coeffs_C2: q0 routes disagree");
    check_close(q1_psi, q1_closed, 1e-8, "nf_coeffs_C2: q1 routes disagree");
    return NfCoeffsC2{q0_closed, q1_closed, CoeffSource::ClosedForm};
}

StateC3 truncated_field_C3(const StateC3& u, double mu, const NfCoeffsC3& c) {
    StateC3 d;
    d.A = u.B;
    d.B = c.p0 * mu + c.p1 * mu * u.A + c.p2 * u.A * u.A + c.p3 * std::norm(u.C);
    d.C = cplx(0.0, 1.0) * (c.k0 + c.q0 * mu + c.q1 * u.A) * u.C;
    return d;
}

StateC2 truncated_field_C2(const StateC2& u, double mu, double s, const NfCoeffsC2& c,
                           const NfAuxC2& aux) {
    const cplx i(0.0, 1.0);
    cplx K = 0.5 * i * (u.A * std::conj(u.B) - std::conj(u.A) * u.B);
    cplx P = aux.p0 * mu + aux.p1 * std::norm(u.A) + aux.p2 * K;
    cplx Q = c.q0 * mu + c.q1 * std::norm(u.A) + aux.q2 * K;
    StateC2 d;
    d.A = i * s * u.A + u.B + i * u.A * P;
    d.B = i * s * u.B + i * u.B * P + u.A * Q;
    return d;
}

GswNfSolution nf_gsw_solution(double mu, double k, double Theta_star, const NfCoeffsC3& c) {
    if (mu == 0.0 || k < 0.0) throw DomainError("nf_gsw_solution: need mu != 0 and k >= 0");
    GswNfSolution s;
    s.mu = mu;
    s.k = k;
    s.Theta_star = Theta_star;
    s.coeffs = c;
    s.rho = 1.0 + 4.0 * c.p3 * k / c.p1;
    if (!(s.rho > 0.0))
        throw DomainError("nf_gsw_solution: no pedestal equilibrium for this k (rho <= 0)");
    return s;
}

namespace {
struct GswPieces {
    double P, M, lam, lin, tanh_amp;
};
GswPieces gsw_pieces(const GswNfSolution& s) {
    const NfCoeffsC3& c = s.coeffs;
    double sgn = s.mu > 0.0 ? 1.0 : -1.0;
    double amu = std::abs(s.mu), r = std::sqrt(s.rho);
    GswPieces g;
    g.P = 0.5 * s.mu * (1.0 - sgn * r);
    // pedestal/bump balance: 4 lam^2 = p1 |mu| sqrt(rho), M = 6 lam^2 / p1
    g.lam = 0.5 * std::sqrt(c.p1 * amu * r);
    g.M = 6.0 * g.lam * g.lam / c.p1; // = (3/2)|mu| sqrt(rho)
    g.lin = c.k0 + c.q0 * s.mu + c.q1 * g.P;
    g.tanh_amp = c.q1 * g.M / g.lam;
    return g;
}
} // namespace

StateC3 GswNfSolution::state(double t) const {
    GswPieces g = gsw_pieces(*this);
    double sech = 1.0 / std::cosh(g.lam * t);
    double A = g.P + g.M * sech * sech;
    double B = -2.0 * g.lam * g.M * sech * sech * std::tanh(g.lam * t);
    double Theta = Theta_star + g.lin * t + g.tanh_amp * std::tanh(g.lam * t);
    double r = std::abs(mu) * std::sqrt(k);
    return {A, B, r * cplx(std::cos(Theta), std::sin(Theta))};
}

StateC3 GswNfSolution::derivative(double t) const {
    GswPieces g = gsw_pieces(*this);
    double sech = 1.0 / std::cosh(g.lam * t), th = std::tanh(g.lam * t);
    double S = sech * sech;
    StateC3 d;
    d.A = -2.0 * g.lam * g.M * S * th;
    d.B = g.M * (4.0 * g.lam * g.lam * S - 6.0 * g.lam * g.lam * S * S);
    double Theta = Theta_star + g.lin * t + g.tanh_amp * th;
    double Theta_dot = g.lin + g.tanh_amp * g.lam * S;
    double r = std::abs(mu) * std::sqrt(k);
    d.C = r * Theta_dot * cplx(-std::sin(Theta), std::cos(Theta));
    return d;
}

MswNfSolution nf_msw_solution(double mu, double s, double Theta_star, const NfCoeffsC2& c) {
    if (!(mu < 0.0)) throw DomainError("nf_msw_solution: needs mu < 0");
    if (!(c.q0 * mu > 0.0)) throw DomainError("nf_msw_solution: q0 mu must be positive");
    return MswNfSolution{mu, s, Theta_star, c};
}

double MswNfSolution::r0(double t) const {
    double lam = std::sqrt(coeffs.q0 * mu);
    return std::sqrt(-2.0 * coeffs.q0 * mu / coeffs.q1) / std::cosh(lam * t);
}
double MswNfSolution::r0_dot(double t) const {
    double lam = std::sqrt(coeffs.q0 * mu);
    double a = std::sqrt(-2.0 * coeffs.q0 * mu / coeffs.q1);
    return -a * lam * std::tanh(lam * t) / std::cosh(lam * t);
}
double MswNfSolution::r0_ddot(double t) const {
    double lam = std::sqrt(coeffs.q0 * mu);
    double a = std::sqrt(-2.0 * coeffs.q0 * mu / coeffs.q1);
    double sech = 1.0 / std::cosh(lam * t), th = std::tanh(lam * t);
    return a * lam * lam * sech * (th * th - sech * sech);
}

StateC2 MswNfSolution::state(double t) const {
    cplx ph = std::exp(cplx(0.0, s * t + Theta_star));
    return {r0(t) * ph, r0_dot(t) * ph};
}

StateC2 MswNfSolution::derivative(double t) const {
    const cplx i(0.0, 1.0);
    cplx ph = std::exp(cplx(0.0, s * t + Theta_star));
    return {(r0_dot(t) + i * s * r0(t)) * ph, (r0_ddot(t) + i * s * r0_dot(t)) * ph};
}

} // namespace gcw
