#include "gcw/trigpoly.hpp"

#include "gcw/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace gcw {

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int j = 2; j <= n; ++j) r *= j;
    return r;
}

long long key_bits(double y) {
    long long b;
    std::memcpy(&b, &y, sizeof b);
    return b;
}

} // namespace

TrigPoly TrigPoly::constant(double c) {
    TrigPoly p;
    p.add_term(0, 0, false, c);
    return p;
}

TrigPoly TrigPoly::term(double base, int pow, int harm, bool sine, double c) {
    TrigPoly p(base);
    p.add_term(pow, harm, sine, c);
    return p;
}

void TrigPoly::adopt_base(double b) {
    if (b == 0.0) return;
    if (base_ == 0.0) {
        base_ = b;
        return;
    }
    if (std::abs(base_ - b) > 1e-12 * std::max(std::abs(base_), std::abs(b)))
        throw DomainError("TrigPoly: incompatible harmonic bases");
}

void TrigPoly::add_term(int pow, int harm, bool sine, double c) {
    if (pow < 0) throw DomainError("TrigPoly: negative power");
    if (harm < 0) { // cos even, sin odd in the frequency
        harm = -harm;
        if (sine) c = -c;
    }
    if (harm == 0 && sine) return; // sin(0) = 0
    if (c == 0.0) return;
    TrigKey k{pow, harm, sine};
    auto it = terms_.find(k);
    if (it == terms_.end())
        terms_[k] = c;
    else {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    if (o.max_harmonic() > 0) adopt_base(o.base_);
    for (const auto& [k, c] : o.terms_) add_term(k.pow, k.harm, k.sine, c);
    return *this;
}

TrigPoly& TrigPoly::operator*=(double c) {
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

TrigPoly operator-(TrigPoly a, const TrigPoly& b) {
    TrigPoly nb = b;
    nb *= -1.0;
    return a += nb;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out(a.max_harmonic() > 0 ? a.base() : b.base());
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            int pow = ka.pow + kb.pow;
            double c = 0.5 * ca * cb;
            int np = ka.harm + kb.harm, nm = ka.harm - kb.harm;
            if (!ka.sine && !kb.sine) { // cos cos = (cos- + cos+)/2
                out.add_term(pow, nm, false, c);
                out.add_term(pow, np, false, c);
            } else if (ka.sine && kb.sine) { // sin sin = (cos- - cos+)/2
                out.add_term(pow, nm, false, c);
                out.add_term(pow, np, false, -c);
            } else if (ka.sine && !kb.sine) { // sin cos = (sin+ + sin-)/2
                out.add_term(pow, np, true, c);
                out.add_term(pow, nm, true, c);
            } else { // cos sin = (sin+ - sin-)/2
                out.add_term(pow, np, true, c);
                out.add_term(pow, nm, true, -c);
            }
        }
    return out;
}

int TrigPoly::max_power() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.pow);
    return m;
}

int TrigPoly::max_harmonic() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.harm);
    return m;
}

bool TrigPoly::is_even() const {
    for (const auto& [k, c] : terms_)
        if ((k.pow % 2 == 0) == k.sine) return false;
    return true;
}

bool TrigPoly::is_odd() const {
    for (const auto& [k, c] : terms_)
        if ((k.pow % 2 == 0) != k.sine) return false;
    return true;
}

void TrigPoly::split_parity(TrigPoly& even, TrigPoly& odd) const {
    even = TrigPoly(base_);
    odd = TrigPoly(base_);
    for (const auto& [k, c] : terms_)
        ((k.pow % 2 == 0) != k.sine ? even : odd).add_term(k.pow, k.harm, k.sine, c);
}

double TrigPoly::eval(double x) const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_) {
        double y = k.harm * base_;
        double t = k.sine ? std::sin(y * x) : std::cos(y * x);
        acc += c * std::pow(x, k.pow) * t;
    }
    return acc;
}

double TrigPoly::deriv_at_zero(int n) const {
    // n-th derivative at 0 = n! * [x^n] of the Maclaurin series
    double acc = 0.0;
    for (const auto& [k, c] : terms_) {
        int r = n - k.pow;
        if (r < 0) continue;
        double y = k.harm * base_;
        if (!k.sine) {
            if (r % 2 != 0) continue;
            int h = r / 2;
            acc += c * (h % 2 == 0 ? 1.0 : -1.0) * std::pow(y, r) * factorial(n) / factorial(r);
        } else {
            if (r % 2 != 1) continue;
            int h = (r - 1) / 2;
            acc += c * (h % 2 == 0 ? 1.0 : -1.0) * std::pow(y, r) * factorial(n) / factorial(r);
        }
    }
    return acc;
}

void TrigPoly::prune(double eps) {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = std::abs(it->second) <= eps ? terms_.erase(it) : std::next(it);
}

double TrigPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

std::string TrigPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        os << (first ? "" : " + ") << c;
        if (k.pow > 0) os << "*x^" << k.pow;
        if (k.harm > 0) os << (k.sine ? "*sin(" : "*cos(") << k.harm << "w x)";
        first = false;
    }
    return first ? "0" : os.str();
}

MultiplierSpec::MultiplierSpec(std::string name, DerivFn fn)
    : name_(std::move(name)), fn_(std::move(fn)) {
    if (std::abs(deriv(1, 0.0)) > 1e-10)
        throw DomainError("MultiplierSpec: multiplier is not even (m'(0) != 0)");
}

double MultiplierSpec::deriv(int n, double y) const {
    auto key = std::make_pair(n, key_bits(y));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    double v = fn_(n, y);
    cache_[key] = v;
    return v;
}

MultiplierSpec MultiplierSpec::identity() {
    return MultiplierSpec("Id", [](int n, double) { return n == 0 ? 1.0 : 0.0; });
}

MultiplierSpec MultiplierSpec::l_of(double tau) {
    return MultiplierSpec("l", [tau](int n, double y) {
        return n == 0 ? l_eval(tau, cplx(y, 0.0)).real() : l_deriv(tau, y, n);
    });
}

MultiplierSpec MultiplierSpec::one_minus_c0l(const SymbolParams& p) {
    double tau = p.tau, c0 = p.c0;
    return MultiplierSpec("1-c0*l", [tau, c0](int n, double y) {
        double l = n == 0 ? l_eval(tau, cplx(y, 0.0)).real() : l_deriv(tau, y, n);
        return (n == 0 ? 1.0 : 0.0) - c0 * l;
    });
}

MultiplierSpec MultiplierSpec::c0l(const SymbolParams& p) {
    double tau = p.tau, c0 = p.c0;
    return MultiplierSpec("c0*l", [tau, c0](int n, double y) {
        double l = n == 0 ? l_eval(tau, cplx(y, 0.0)).real() : l_deriv(tau, y, n);
        return c0 * l;
    });
}

TrigPoly apply_multiplier(const MultiplierSpec& m, const TrigPoly& p) {
    TrigPoly out(p.base());
    for (const auto& [k, c] : p.terms()) {
        if (k.pow > 4) throw PowerOverflow("apply_multiplier: power above 4");
        double y = k.harm * p.base();
        for (int j = 0; j <= k.pow; ++j) {
            double w = binom(k.pow, j) * m.deriv(j, y) * c;
            if (w == 0.0) continue;
            // action of m(D) on x^p e^{iyx} expanded through parity classes
            int ph = j % 4;
            if (!k.sine) {
                // cos row: j=0:+cos 1:+sin 2:-cos 3:-sin
                bool sine = ph % 2 == 1;
                double sgn = (ph == 2 || ph == 3) ? -1.0 : 1.0;
                out.add_term(k.pow - j, k.harm, sine, sgn * w);
            } else {
                // sin row: j=0:+sin 1:-cos 2:-sin 3:+cos
                bool sine = ph % 2 == 0;
                double sgn = (ph == 1 || ph == 2) ? -1.0 : 1.0;
                out.add_term(k.pow - j, k.harm, sine, sgn * w);
            }
        }
    }
    return out;
}

namespace {

TrigPoly solve_parity_pure(const TrigPoly& rhs, const SymbolParams& params, int extra) {
    const double kernel_freq = params.branch == Branch::C2 ? params.s : solve_k0(params.tau);
    double base = rhs.max_harmonic() > 0 ? rhs.base() : kernel_freq;
    if (std::abs(base - kernel_freq) > 1e-9 * kernel_freq)
        throw DomainError("solve_T_equation: rhs base must match the kernel frequency");

    MultiplierSpec T = MultiplierSpec::one_minus_c0l(params);

    // ansatz: all monomials of the rhs parity over the harmonic lattice
    std::set<int> harms{0, 1};
    for (const auto& [k, c] : rhs.terms()) harms.insert(k.harm);
    int pmax = std::min(rhs.max_power() + 2 + extra, 4);
    bool even = rhs.is_even();
    std::vector<TrigKey> basis;
    for (int h : harms)
        for (int pw = 0; pw <= pmax; ++pw)
            for (bool sine : {false, true}) {
                if (h == 0 && sine) continue;
                if (((pw % 2 == 0) != sine) != even) continue;
                basis.push_back({pw, h, sine});
            }

    // images and row space
    std::vector<TrigPoly> img;
    std::set<TrigKey> rows_set;
    for (const TrigKey& b : basis) {
        img.push_back(apply_multiplier(T, TrigPoly::term(base, b.pow, b.harm, b.sine, 1.0)));
        for (const auto& [k, c] : img.back().terms()) rows_set.insert(k);
    }
    for (const auto& [k, c] : rhs.terms()) rows_set.insert(k);
    std::vector<TrigKey> rows(rows_set.begin(), rows_set.end());
    std::map<TrigKey, int> row_of;
    for (size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);

    const int nr = static_cast<int>(rows.size()), nc = static_cast<int>(basis.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nr + 4, nc);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(nr + 4);
    for (int j = 0; j < nc; ++j)
        for (const auto& [k, c] : img[j].terms()) A(row_of[k], j) = c;
    for (const auto& [k, c] : rhs.terms()) b(row_of[k]) = c;
    // Q Psi = 0 is equivalent to a vanishing 4-jet at the origin
    for (int d = 0; d < 4; ++d)
        for (int j = 0; j < nc; ++j)
            A(nr + d, j) =
                TrigPoly::term(base, basis[j].pow, basis[j].harm, basis[j].sine, 1.0)
                    .deriv_at_zero(d);

    auto assemble = [&](const Eigen::VectorXd& x) {
        TrigPoly psi(base);
        for (int j = 0; j < nc; ++j)
            psi.add_term(basis[j].pow, basis[j].harm, basis[j].sine, x(j));
        psi.prune(1e-13 * std::max(1.0, psi.max_abs_coeff()));
        return psi;
    };
    double scale = std::max(1.0, rhs.max_abs_coeff());
    auto verified = [&](const TrigPoly& psi) {
        // 1e-10 against the data scale, plus the floating-point floor of
        // reassembling a solution with large coefficients (active only in
        // near-degenerate parameter corners)
        double tol = 1e-10 * scale + 1e-12 * psi.max_abs_coeff();
        TrigPoly resid = apply_multiplier(T, psi) - rhs;
        double jet = 0.0;
        for (int d = 0; d < 4; ++d) jet = std::max(jet, std::abs(psi.deriv_at_zero(d)));
        return resid.max_abs_coeff() <= tol && jet <= 10.0 * tol;
    };

    Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(b);
    TrigPoly psi = assemble(x);
    if (verified(psi)) return psi;

    // second attempt with column equilibration for badly scaled lattices
    Eigen::MatrixXd As = A;
    Eigen::VectorXd colscale(nc);
    for (int j = 0; j < nc; ++j) {
        double n = As.col(j).norm();
        colscale(j) = n > 0.0 ? n : 1.0;
        As.col(j) /= colscale(j);
    }
    Eigen::VectorXd xs = As.completeOrthogonalDecomposition().solve(b);
    xs.array() /= colscale.array();
    TrigPoly psis = assemble(xs);
    if (verified(psis)) return psis;

    if (extra == 0) return solve_parity_pure(rhs, params, 2);
    if ((A * x - b).norm() > 1e-8 * scale)
        throw NotSolvable("solve_T_equation: rhs violates the range conditions");
    throw RankDeficient("solve_T_equation: ansatz space too small");
}

} // namespace

TrigPoly solve_T_equation(const TrigPoly& rhs, const SymbolParams& params, Projection proj) {
    if ((params.branch == Branch::C2) != (proj == Projection::Q2))
        throw DomainError("solve_T_equation: projection does not match the branch");
    if (rhs.empty()) return TrigPoly(rhs.base());
    if (rhs.is_even() || rhs.is_odd()) return solve_parity_pure(rhs, params, 0);
    TrigPoly even, odd;
    rhs.split_parity(even, odd);
    return solve_parity_pure(even, params, 0) + solve_parity_pure(odd, params, 0);
}

} // namespace gcw
