#include "gcw/spectral.hpp"

#include <cmath>
#include <mutex>

#include <Eigen/Dense>
#include <fftw3.h>

#include "gcw/symbols.hpp"

namespace gcw {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::mutex fftw_plan_mutex; // FFTW planning is not thread-safe

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// forward r2c transform of the sample vector
std::vector<cplx> fft_forward(const std::vector<double>& v) {
    int n = static_cast<int>(v.size());
    std::vector<double> in = v;
    std::vector<cplx> out(n / 2 + 1);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_plan plan =
            fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                 FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<double> fft_backward(std::vector<cplx> spec, int n) {
    std::vector<double> out(n);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_plan plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(spec.data()),
                                              out.data(), FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    for (double& y : out) y /= n;
    return out;
}

// cosine coefficients a_m of an even grid function, phi(x) = sum a_m cos(2 pi m x / L)
std::vector<double> cosine_coeffs(const std::vector<double>& v) {
    std::vector<cplx> spec = fft_forward(v);
    int n = static_cast<int>(v.size());
    std::vector<double> a(spec.size());
    // grid starts at -L/2, so mode m carries phase (-1)^m relative to x=0
    for (size_t m = 0; m < spec.size(); ++m) {
        double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        double w = (m == 0 || static_cast<int>(m) == n / 2) ? 1.0 : 2.0;
        a[m] = sgn * w * spec[m].real() / n;
    }
    return a;
}

std::vector<double> from_cosine_coeffs(const std::vector<double>& a, int n) {
    std::vector<cplx> spec(n / 2 + 1, 0.0);
    for (size_t m = 0; m < a.size(); ++m) {
        double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        double w = (m == 0 || static_cast<int>(m) == n / 2) ? 1.0 : 2.0;
        spec[m] = sgn * a[m] * static_cast<double>(n) / w;
    }
    return fft_backward(std::move(spec), n);
}

} // namespace

PeriodicGrid::PeriodicGrid(int n, double period) : N(n), L(period) {
    if (!power_of_two(n)) throw DomainError("PeriodicGrid: N must be a power of two");
    if (!(period > 0.0)) throw DomainError("PeriodicGrid: period must be positive");
}

std::vector<double> PeriodicGrid::nodes() const { return uniform_grid(L, N); }

double PeriodicGrid::freq(int j) const {
    int m = j <= N / 2 ? j : j - N;
    return kTwoPi * m / L;
}

double aliasing_fraction(const std::vector<double>& values) {
    std::vector<cplx> spec = fft_forward(values);
    double total = 0.0, top = 0.0;
    for (size_t m = 1; m < spec.size(); ++m) { // exclude the mean
        double e = std::norm(spec[m]);
        total += e;
        if (3 * m >= 2 * (spec.size() - 1)) top += e;
    }
    return total == 0.0 ? 0.0 : top / total;
}

std::vector<double> apply_M(const std::vector<double>& values, const PeriodicGrid& g, double tau,
                            double alias_tol) {
    if (static_cast<int>(values.size()) != g.N) throw DomainError("apply_M: size mismatch");
    double alias = aliasing_fraction(values);
    if (alias > alias_tol) throw AliasingError("apply_M: top-third spectral energy too large");
    return apply_symbol(values, g,
                        [tau](double xi) { return m_eval(tau, cplx(xi, 0.0)).real(); });
}

std::vector<double> apply_symbol(const std::vector<double>& values, const PeriodicGrid& g,
                                 const std::function<double(double)>& symbol) {
    if (static_cast<int>(values.size()) != g.N) throw DomainError("apply_symbol: size mismatch");
    std::vector<cplx> spec = fft_forward(values);
    for (size_t m = 0; m < spec.size(); ++m) spec[m] *= symbol(kTwoPi * m / g.L);
    return fft_backward(std::move(spec), g.N);
}

std::vector<double> residual_values(const std::vector<double>& values, const PeriodicGrid& g,
                                    double c, double tau) {
    std::vector<double> r = apply_M(values, g, tau, 1.0); // aliasing reported, not fatal here
    for (int j = 0; j < g.N; ++j) r[j] += -c * values[j] + values[j] * values[j];
    return r;
}

ResidualReport residual(const std::vector<double>& values, const PeriodicGrid& g, double c,
                        double tau) {
    std::vector<double> r = residual_values(values, g, c, tau);
    ResidualReport rep;
    rep.aliasing = aliasing_fraction(values);
    double l2 = 0.0;
    for (int j = 0; j < g.N; ++j) {
        rep.sup_norm = std::max(rep.sup_norm, std::abs(r[j]));
        rep.sup_phi = std::max(rep.sup_phi, std::abs(values[j]));
        l2 += r[j] * r[j];
    }
    rep.l2_norm = std::sqrt(l2 * g.dx());
    return rep;
}

bool is_even_on_grid(const std::vector<double>& values, double tol) {
    int n = static_cast<int>(values.size());
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    for (int j = 1; j < n; ++j)
        if (std::abs(values[j] - values[(n - j) % n]) > tol * std::max(1.0, scale)) return false;
    return true;
}

NewtonResult newton_refine(const std::vector<double>& initial, const PeriodicGrid& g, double c,
                           double tau, const NewtonOptions& opts) {
    if (static_cast<int>(initial.size()) != g.N) throw DomainError("newton_refine: size mismatch");
    if (!is_even_on_grid(initial, 1e-8))
        throw DomainError("newton_refine: initial data must be even on the symmetric grid");

    const int M = g.N / 2; // cosine modes 0..M
    std::vector<double> mvals(M + 1);
    for (int m = 0; m <= M; ++m)
        mvals[m] = m_eval(tau, cplx(kTwoPi * m / g.L, 0.0)).real();

    NewtonResult res;
    res.values = initial;
    std::vector<double> a = cosine_coeffs(res.values);

    auto sup_residual = [&](const std::vector<double>& vals) {
        return residual(vals, g, c, tau).sup_norm;
    };
    res.residual_history.push_back(sup_residual(res.values));

    Eigen::MatrixXd J(M + 1, M + 1);
    for (int it = 0; it < opts.max_iter; ++it) {
        if (res.residual_history.back() < opts.tol) {
            res.converged = true;
            break;
        }
        if (aliasing_fraction(res.values) > opts.alias_tol)
            throw AliasingError("newton_refine: iterate lost spectral resolution");

        // residual in cosine coefficients
        std::vector<double> rvals = residual_values(res.values, g, c, tau);
        std::vector<double> rc = cosine_coeffs(rvals);

        // J = diag(m - c) + 2 * multiplication-by-phi in the cosine basis
        J.setZero();
        for (int m = 0; m <= M; ++m) J(m, m) = mvals[m] - c;
        for (int col = 0; col <= M; ++col)
            for (int m = 0; m <= M; ++m) {
                double am = a[m];
                if (am == 0.0) continue;
                // cos_m cos_col = (cos_{m+col} + cos_{|m-col|}) / 2
                int up = m + col, dn = std::abs(m - col);
                if (up <= M) J(up, col) += am;
                J(dn, col) += am;
            }

        Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
        Eigen::VectorXd rhs(M + 1);
        for (int m = 0; m <= M; ++m) rhs(m) = rc[m];
        Eigen::VectorXd delta = lu.solve(rhs);
        if (!delta.allFinite()) throw SingularJacobian("newton_refine: LU solve failed");
        double rel_check = (J * delta - rhs).norm() / std::max(1e-300, rhs.norm());
        if (rel_check > 1e-6) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
            double smin = svd.singularValues().tail(1)(0);
            throw SingularJacobian("newton_refine: Jacobian singular, sigma_min = " +
                                   std::to_string(smin));
        }

        for (int m = 0; m <= M; ++m) a[m] -= delta(m);
        std::vector<double> stepped = from_cosine_coeffs(a, g.N);
        if (it == 0) {
            double sup = 0.0;
            for (int j = 0; j < g.N; ++j)
                sup = std::max(sup, std::abs(stepped[j] - res.values[j]));
            res.first_step_norm = sup;
        }
        res.values = std::move(stepped);
        res.residual_history.push_back(sup_residual(res.values));
        res.iterations = it + 1;
    }
    if (!res.converged && res.residual_history.back() < opts.tol) res.converged = true;
    // on non-convergence the best iterate and history are returned for diagnosis
    return res;
}

} // namespace gcw
