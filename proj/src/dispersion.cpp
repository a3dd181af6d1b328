#include "gcw/dispersion.hpp"

#include <algorithm>
#include <cmath>

namespace gcw {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

struct Contour {
    double x0, x1, y0, y1; // rectangle [x0,x1] x [y0,y1]
};

// Integrand of the argument principle for w = 1 - c0 l: w'/w = -c0 l' / (1 - c0 l).
cplx log_deriv(const SymbolParams& p, cplx z) {
    cplx w = 1.0 - p.c0 * l_eval(p.tau, z);
    if (std::abs(w) < 1e-10) throw ContourThroughZero("contour passes through a zero of 1 - c0 l");
    return -p.c0 * l_deriv_analytic(p.tau, z) / w;
}

// Adaptive trapezoid of w'/w along the straight segment [a, b], with point
// reuse across refinement levels.
cplx segment_integral(const SymbolParams& p, cplx a, cplx b) {
    int n = 32;
    cplx acc = 0.5 * (log_deriv(p, a) + log_deriv(p, b));
    for (int j = 1; j < n; ++j) acc += log_deriv(p, a + (b - a) * (static_cast<double>(j) / n));
    cplx old_val = acc * (b - a) / static_cast<double>(n), older = 1e300;
    for (int pass = 0; pass < 12; ++pass) {
        for (int j = 0; j < n; ++j) // midpoints of the current panels
            acc += log_deriv(p, a + (b - a) * ((j + 0.5) / n));
        n *= 2;
        cplx val = acc * (b - a) / static_cast<double>(n);
        if (pass >= 1 && std::abs(val - old_val) < 0.25e-3 && std::abs(old_val - older) < 1e-3)
            return val;
        older = old_val;
        old_val = val;
    }
    return old_val;
}

ArcDecomposition arcs_on(const SymbolParams& p, const Contour& c) {
    const cplx i(0.0, 1.0);
    ArcDecomposition a;
    cplx bl(c.x0, c.y0), br(c.x1, c.y0), tr(c.x1, c.y1), tl(c.x0, c.y1);
    double inv = 1.0 / (kTwoPi);
    a.bottom = segment_integral(p, bl, br) * inv / i;
    a.right = segment_integral(p, br, tr) * inv / i;
    a.top = segment_integral(p, tr, tl) * inv / i;
    a.left = segment_integral(p, tl, bl) * inv / i;
    return a;
}

int winding_on(const SymbolParams& p, const Contour& c) {
    cplx total = arcs_on(p, c).total();
    double w = total.real();
    long nearest = std::lround(w);
    if (std::abs(w - static_cast<double>(nearest)) > 1e-3 || std::abs(total.imag()) > 1e-3)
        throw NonIntegerWinding("winding quadrature did not settle on an integer");
    return static_cast<int>(nearest);
}

// First moment of the argument principle over a segment:
// (1/2 pi i) \int z w'/w dz, by trapezoid refinement with point reuse.
cplx moment_segment(const SymbolParams& p, cplx a, cplx b) {
    const cplx itwo_pi(0.0, kTwoPi);
    auto f = [&](cplx z) { return z * log_deriv(p, z); };
    int n = 32;
    cplx acc = 0.5 * (f(a) + f(b));
    for (int j = 1; j < n; ++j) acc += f(a + (b - a) * (static_cast<double>(j) / n));
    cplx old_val = acc * (b - a) / static_cast<double>(n), older = 1e300;
    for (int pass = 0; pass < 14; ++pass) {
        for (int j = 0; j < n; ++j) acc += f(a + (b - a) * ((j + 0.5) / n));
        n *= 2;
        cplx val = acc * (b - a) / static_cast<double>(n);
        if (pass >= 1 && std::abs(val - old_val) < 1e-9 && std::abs(old_val - older) < 4e-9)
            return val / itwo_pi;
        older = old_val;
        old_val = val;
    }
    return old_val / itwo_pi;
}

// Root cluster centroid inside a small box: sum of roots / multiplicity.
// Exact for genuine multiple roots and for the epsilon-split pairs that
// rounding of the curve parameters produces.
cplx centroid_root(const SymbolParams& p, const Contour& c, int m) {
    cplx bl(c.x0, c.y0), br(c.x1, c.y0), tr(c.x1, c.y1), tl(c.x0, c.y1);
    cplx s1 = moment_segment(p, bl, br) + moment_segment(p, br, tr) +
              moment_segment(p, tr, tl) + moment_segment(p, tl, bl);
    return s1 / static_cast<double>(m);
}

void subdivide(const SymbolParams& p, const Contour& c, int winding, std::vector<Root>& out,
               int depth) {
    if (winding == 0) return;
    double dx = c.x1 - c.x0, dy = c.y1 - c.y0;
    if (std::max(dx, dy) < 2e-3 || depth > 40) {
        cplx center(0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1));
        cplx z = centroid_root(p, c, winding);
        // the centroid of the enclosed cluster must lie inside the box
        if (std::abs(z - center) > 2.0 * std::max(dx, dy) && depth <= 40)
            throw NonIntegerWinding("root centroid escaped its box");
        out.push_back({z, winding});
        return;
    }
    // Split the longer side; nudge the cut if it lands on a zero.
    for (double shift : {0.0, 0.07, -0.07, 0.13, -0.13}) {
        Contour c1 = c, c2 = c;
        if (dx >= dy) {
            double cut = 0.5 * (c.x0 + c.x1) + shift * dx;
            c1.x1 = cut;
            c2.x0 = cut;
        } else {
            double cut = 0.5 * (c.y0 + c.y1) + shift * dy;
            c1.y1 = cut;
            c2.y0 = cut;
        }
        try {
            int w1 = winding_on(p, c1);
            int w2 = winding_on(p, c2);
            if (w1 + w2 != winding) continue; // a root sat on the cut; try another shift
            subdivide(p, c1, w1, out, depth + 1);
            subdivide(p, c2, w2, out, depth + 1);
            return;
        } catch (const ContourThroughZero&) {
            continue;
        } catch (const NonIntegerWinding&) {
            continue;
        }
    }
    throw NonIntegerWinding("contour subdivision failed to separate roots");
}

void merge_and_symmetrize(std::vector<Root>& roots) {
    // Merge near-duplicates.
    std::vector<Root> merged;
    for (const Root& r : roots) {
        bool found = false;
        for (Root& m : merged)
            if (std::abs(m.z - r.z) < 1e-6) {
                m.multiplicity += r.multiplicity;
                found = true;
            }
        if (!found) merged.push_back(r);
    }
    // Snap tiny parts, enforce the z -> -z symmetry exactly.
    for (Root& r : merged) {
        if (std::abs(r.z.real()) < 1e-9) r.z = cplx(0.0, r.z.imag());
        if (std::abs(r.z.imag()) < 1e-9) r.z = cplx(r.z.real(), 0.0);
    }
    std::sort(merged.begin(), merged.end(),
              [](const Root& a, const Root& b) { return a.z.real() < b.z.real(); });
    for (const Root& r : merged)
        if (r.z.real() > 1e-9) {
            bool has_mirror = false;
            for (Root& m : merged)
                if (std::abs(m.z + r.z) < 1e-6 && m.multiplicity == r.multiplicity) {
                    m.z = -r.z;
                    has_mirror = true;
                }
            if (!has_mirror) {
                std::string msg = "root set not symmetric under z -> -z:";
                for (const Root& m : merged)
                    msg += " (" + std::to_string(m.z.real()) + "," +
                           std::to_string(m.z.imag()) + ")x" + std::to_string(m.multiplicity);
                throw NonIntegerWinding(msg);
            }
        }
    roots = std::move(merged);
}

} // namespace

double BifurcationPoint::c0() const { return 1.0 / std::sqrt(alpha); }

SymbolParams BifurcationPoint::params(double mu) const {
    SymbolParams p;
    p.tau = tau();
    p.c0 = c0();
    p.mu = mu;
    p.s = s;
    p.branch = curve == Curve::C2 ? Branch::C2 : (curve == Curve::C3 ? Branch::C3 : Branch::C4);
    return p;
}

int RootReport::multiplicity_sum() const {
    int n = 0;
    for (const Root& r : roots) n += r.multiplicity;
    return n;
}

double solve_k0(double tau) {
    if (!(tau > 0.0 && tau < 1.0 / 3.0))
        throw NoRoot("solve_k0: positive root exists only for 0 < tau < 1/3");
    auto g = [tau](double x) { return (1.0 + tau * x * x) * std::tanh(x) - x; };
    // g < 0 just right of 0, g > 0 for large x; the root sits near 1/tau
    // for small tau, so the scan range follows the parameter
    const double scan_max = std::max(60.0, 3.0 / tau);
    double lo = 1e-3, hi = 0.0;
    for (double x = 0.5; x <= scan_max; x += 0.5)
        if (g(x) > 0.0) {
            hi = x;
            break;
        } else
            lo = x;
    if (hi == 0.0) throw NoRoot("solve_k0: no sign change located in the scan range");
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    double k0 = 0.5 * (lo + hi);
    // Newton polish on m(xi) - 1.
    for (int it = 0; it < 8; ++it) {
        double f = m_eval(tau, cplx(k0, 0.0)).real() - 1.0;
        double df = -l_deriv(tau, k0, 1) * std::pow(m_eval(tau, cplx(k0, 0.0)).real(), 2);
        // m' = -l'/l^2 = -l' m^2
        k0 -= f / df;
    }
    if (std::abs(m_eval(tau, cplx(k0, 0.0)).real() - 1.0) > 1e-13)
        throw NoRoot("solve_k0: Newton polish did not reach 1e-13");
    return k0;
}

BifurcationPoint c2_point(double s) {
    BifurcationPoint b;
    b.curve = Curve::C2;
    b.s = s;
    c2_beta_alpha(s, b.beta, b.alpha);
    double c0 = b.c0(), tau = b.tau();
    double l_s = l_eval(tau, cplx(s, 0.0)).real();
    if (std::abs(l_s - 1.0 / c0) > 1e-10 || std::abs(l_deriv(tau, s, 1)) > 1e-10)
        throw DomainError("c2_point: double-root certificate failed");
    return b;
}

BifurcationPoint c3_point(double tau) {
    if (!(tau > 0.0 && tau < 1.0 / 3.0)) throw DomainError("c3_point: need 0 < tau < 1/3");
    BifurcationPoint b;
    b.curve = Curve::C3;
    b.alpha = 1.0;
    b.beta = tau;
    b.k0 = solve_k0(tau);
    return b;
}

RootReport roots_in_strip(const SymbolParams& params, double eta, double R) {
    if (!(eta > 0.0 && eta < strip_halfwidth(params.tau)))
        throw DomainError("roots_in_strip: need 0 < eta < eta*");
    RootReport rep;
    rep.strip_eta = eta;
    rep.contour_R = R;
    Contour c{-R, R, -eta, eta};
    double eta_run = eta;
    for (int attempt = 0;; ++attempt) {
        try {
            c.y0 = -eta_run;
            c.y1 = eta_run;
            rep.winding = winding_on(params, c);
            break;
        } catch (const ContourThroughZero&) {
            if (attempt >= 4) throw;
            eta_run *= 0.97;
        }
    }
    rep.strip_eta = eta_run;
    subdivide(params, c, rep.winding, rep.roots, 0);
    merge_and_symmetrize(rep.roots);
    if (rep.multiplicity_sum() != rep.winding)
        throw NonIntegerWinding("argument-principle self-consistency failed");
    return rep;
}

ArcDecomposition residue_index_decomposition(const SymbolParams& params, double eta, double R) {
    if (!(eta > 0.0 && eta < strip_halfwidth(params.tau)))
        throw DomainError("residue_index_decomposition: need 0 < eta < eta*");
    return arcs_on(params, Contour{-R, R, -eta, eta});
}

double default_contour_R(const SymbolParams& params) {
    double r = 1.0;
    if (params.branch == Branch::C3) r = solve_k0(params.tau);
    if (params.branch == Branch::C2) r = params.s;
    return r + 5.0;
}

double certify_eta(const SymbolParams& params, int expected_sum) {
    double eta_star = strip_halfwidth(params.tau);
    double R = default_contour_R(params);
    for (double f = 0.95; f >= 0.049; f -= 0.05) {
        try {
            // winding first (cheap); localize only when the count matches
            Contour c{-R, R, -f * eta_star, f * eta_star};
            if (winding_on(params, c) != expected_sum) continue;
            RootReport rep = roots_in_strip(params, f * eta_star, R);
            if (rep.multiplicity_sum() == expected_sum) return f * eta_star;
        } catch (const Error&) {
            continue;
        }
    }
    throw NoRoot("certify_eta: no strip width yielded the expected root count");
}

} // namespace gcw
