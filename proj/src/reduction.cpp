#include "gcw/reduction.hpp"

#include <cmath>

#include "gcw/dispersion.hpp"

namespace gcw {

namespace {

// multi-index over (A, B, C, D)
using Multi = std::array<int, 4>;

Multi add(const Multi& a, const Multi& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

CmIndex to_index(const Multi& m, int n) { return CmIndex{m[0], m[1], m[2], m[3], n}; }

} // namespace

ProjectionSpec projection_spec_Q1(double k0) {
    double k2 = k0 * k0, k3 = k2 * k0;
    ProjectionSpec s;
    s.kind = Projection::Q1;
    s.T = {{{1, 0, 1 / k2, 0}, {0, 1, 0, 1 / k2}, {0, 0, -1 / k2, 0}, {0, 0, 0, -1 / k3}}};
    return s;
}

ProjectionSpec projection_spec_Q2(double s0) {
    double s2 = s0 * s0, s3 = s2 * s0;
    ProjectionSpec s;
    s.kind = Projection::Q2;
    s.T = {{{1, 0, 0, 0},
            {0, -0.5, 0, -1 / (2 * s2)},
            {0, 3 / (2 * s0), 0, 1 / (2 * s3)},
            {s0 / 2, 0, 1 / (2 * s0), 0}}};
    return s;
}

Coords projection_apply(const ProjectionSpec& spec, const Jet& jet) {
    Coords out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += spec.T[i][j] * jet[j];
    return out;
}

Jet projection_jet(const ProjectionSpec& spec, const Jet& jet) {
    Coords c = projection_apply(spec, jet);
    Jet out{};
    // rebuild W * c where W is the Wronskian-at-0 matrix of the kernel basis
    if (spec.kind == Projection::Q1) {
        double k0 = std::sqrt(-1.0 / spec.T[2][2]);
        double k2 = k0 * k0, k3 = k2 * k0;
        double W[4][4] = {{1, 0, 1, 0}, {0, 1, 0, k0}, {0, 0, -k2, 0}, {0, 0, 0, -k3}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out[i] += W[i][j] * c[j];
    } else {
        double s0 = 2.0 * spec.T[3][0];
        double s2 = s0 * s0, s3 = s2 * s0;
        double W[4][4] = {{1, 0, 0, 0}, {0, 1, s0, 0}, {-s2, 0, 0, 2 * s0}, {0, -3 * s2, -s3, 0}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out[i] += W[i][j] * c[j];
    }
    return out;
}

double CmCoeffs::at(CmIndex i) const {
    auto it = psi.find(i);
    if (it == psi.end())
        throw DomainError("CmCoeffs: missing index psi_" + std::to_string(i.p) +
                          std::to_string(i.q) + std::to_string(i.l) + std::to_string(i.m) +
                          std::to_string(i.n));
    return it->second;
}

CmCoeffs cm_coeffs_closed_C3(double tau, const ClosedC3Options& opt) {
    CmCoeffs out;
    out.branch = Branch::C3;
    out.source = CoeffSource::ClosedForm;
    out.params = SymbolParams{tau, 1.0, 0.0, Branch::C3, 0.0};
    double k0 = solve_k0(tau);
    double k2 = k0 * k0, k3 = k2 * k0, k4 = k2 * k2;
    double sigma = 1.0 / (1.0 / 3.0 - tau);
    double l1 = l_deriv(tau, k0, 1);
    double l2k0 = l_eval(tau, cplx(2.0 * k0, 0.0)).real();
    double lk2 = l_deriv(tau, k0, 2);
    double l4 = l_deriv(tau, 0.0, 4);
    double F = opt.resonant_pair_factor;
    auto& psi = out.psi;
    psi[{1, 0, 0, 0, 1}] = 2.0 * sigma * k2;
    psi[{2, 0, 0, 0, 0}] = -2.0 * sigma * k2;
    psi[{0, 0, 1, 0, 1}] = -2.0 * k3 / l1;
    psi[{1, 0, 1, 0, 0}] = 4.0 * k3 / l1;
    psi[{0, 2, 0, 0, 0}] = -(l4 - 6.0 / (sigma * sigma)) / 3.0 * sigma * sigma * k2 - 4.0 * sigma;
    psi[{0, 1, 0, 1, 0}] = 2.0 * (lk2 - 2.0 * l1 * l1) / (l1 * l1) * k3 - 10.0 * k2 / l1;
    psi[{0, 0, 2, 0, 0}] = F * l2k0 / (l2k0 - 1.0) * k4 - sigma * k2;
    psi[{0, 0, 0, 2, 0}] = -F * l2k0 / (l2k0 - 1.0) * k4 - sigma * k2;
    return out;
}

CmCoeffs cm_coeffs_closed_C2(double s, const ClosedC2Options& opt) {
    CmCoeffs out;
    out.branch = Branch::C2;
    out.source = CoeffSource::ClosedForm;
    BifurcationPoint bp = c2_point(s);
    out.params = bp.params();
    C2Helpers h = c2_helpers(s, out.params);
    double a = h.a, b = h.b, c = h.c, d = h.d, e = h.e;
    double s2 = s * s, s4 = s2 * s2;
    auto& psi = out.psi;
    psi[{1, 0, 0, 0, 1}] = -8.0 * s2 * e;
    psi[{2, 0, 0, 0, 0}] = s4 * (a + 9.0 * b);
    psi[{0, 0, 2, 0, 0}] = s4 * (a - 9.0 * b);
    psi[{1, 0, 0, 1, 0}] = 9.0 * s4 * c - 48.0 * s * s2 * b;
    psi[{0, 1, 1, 0, 0}] = psi[{1, 0, 0, 1, 0}];
    psi[{3, 0, 0, 0, 0}] =
        ((-2.0 * a * (a + b) - 18.0 * b * (a + b) + 128.0 * b * d - 4.5 * s * (a - 3.0 * b) * c) *
             s2 +
         24.0 * s2 * b * (a - 3.0 * b) + 8.0 * (2.0 * a + b) * e) *
        s2;
    double doubtful = opt.psi10200_term_bs ? 256.0 * b * s : 256.0 * b * d;
    psi[{1, 0, 2, 0, 0}] =
        ((-2.0 * a * (a - b) - 18.0 * b * (a - b) - 128.0 * b * d - 4.5 * s * (a + 3.0 * b) * c) *
             s2 +
         24.0 * s2 * b * (a + 3.0 * b) + 8.0 * (2.0 * a - b) * e) *
            s2 +
        ((-54.0 * s * b * c + 4.0 * a * b - 36.0 * b * b - doubtful) * s2 + 288.0 * s2 * b * b +
         16.0 * b * e) *
            s2;
    return out;
}

std::array<TrigPoly, 4> kernel_basis(const SymbolParams& params) {
    if (params.branch == Branch::C2) {
        double s = params.s;
        return {TrigPoly::term(s, 0, 1, false, 1.0), TrigPoly::term(s, 1, 1, false, 1.0),
                TrigPoly::term(s, 0, 1, true, 1.0), TrigPoly::term(s, 1, 1, true, 1.0)};
    }
    double k0 = solve_k0(params.tau);
    return {TrigPoly::constant(1.0), TrigPoly::term(k0, 1, 0, false, 1.0),
            TrigPoly::term(k0, 0, 1, false, 1.0), TrigPoly::term(k0, 0, 1, true, 1.0)};
}

CmCoeffs cm_coeffs_ansatz(Branch branch, const SymbolParams& params) {
    if (branch != params.branch) throw DomainError("cm_coeffs_ansatz: branch mismatch");
    params.validate();
    CmCoeffs out;
    out.branch = branch;
    out.source = CoeffSource::AnsatzSolve;
    out.params = params;
    Projection proj = branch == Branch::C2 ? Projection::Q2 : Projection::Q1;
    // (1/c0)(Id - T) acts as l(D)
    MultiplierSpec lD = MultiplierSpec::l_of(params.tau);
    std::array<TrigPoly, 4> e = kernel_basis(params);

    // quadratic part of (sum X_j e_j)^2 grouped by exponent tuple
    std::map<Multi, TrigPoly> quad;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            Multi mi{};
            mi[i] += 1;
            mi[j] += 1;
            TrigPoly prod = e[i] * e[j];
            if (i != j) prod *= 2.0;
            auto it = quad.find(mi);
            if (it == quad.end())
                quad[mi] = prod;
            else
                it->second += prod;
        }

    std::map<Multi, TrigPoly> psi2; // second-order Psi functions
    // mu-linear: T Psi = + (1/c0)(Id - T) e_j = l(D) e_j
    for (int j = 0; j < 4; ++j) {
        Multi mi{};
        mi[j] = 1;
        TrigPoly rhs = apply_multiplier(lD, e[j]);
        TrigPoly p = solve_T_equation(rhs, params, proj);
        out.psi[to_index(mi, 1)] = fourth_deriv_at_zero(p);
    }
    // quadratic: T Psi = -(1/c0)(Id - T) [quad] = -l(D)[quad]
    for (const auto& [mi, g] : quad) {
        TrigPoly rhs = apply_multiplier(lD, g) * -1.0;
        TrigPoly p = solve_T_equation(rhs, params, proj);
        psi2[mi] = p;
        out.psi[to_index(mi, 0)] = fourth_deriv_at_zero(p);
    }
    // cubic (needed on C2 only): T Psi = -(2/c0)(Id - T)[ e_j Psi2 ] grouped
    if (branch == Branch::C2) {
        std::map<Multi, TrigPoly> cubic;
        for (int j = 0; j < 4; ++j) {
            Multi mj{};
            mj[j] = 1;
            for (const auto& [mi, p2] : psi2) {
                TrigPoly prod = e[j] * p2;
                Multi mc = add(mj, mi);
                auto it = cubic.find(mc);
                if (it == cubic.end())
                    cubic[mc] = prod;
                else
                    it->second += prod;
            }
        }
        for (const auto& [mi, g] : cubic) {
            // tuples whose sources involve the quartic-in-x quadratic
            // solutions leave the power-4 trig algebra; they are not
            // consumed by the normal-form reduction and are skipped
            try {
                TrigPoly rhs = apply_multiplier(lD, g) * -2.0;
                TrigPoly p = solve_T_equation(rhs, params, proj);
                out.psi[to_index(mi, 0)] = fourth_deriv_at_zero(p);
            } catch (const PowerOverflow&) {
                continue;
            } catch (const NotSolvable&) {
                continue;
            } catch (const RankDeficient&) {
                continue;
            }
        }
        if (!out.has({3, 0, 0, 0, 0}) || !out.has({1, 0, 2, 0, 0}))
            throw NotSolvable("cm_coeffs_ansatz: required cubic coefficients unreachable");
    }
    return out;
}

} // namespace gcw
