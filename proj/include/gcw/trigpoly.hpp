#ifndef GCW_TRIGPOLY_HPP
#define GCW_TRIGPOLY_HPP

// Exact calculus on finite sums  sum c_{k,n} x^k {cos,sin}(n y0 x)  over a
// harmonic lattice with base frequency y0.  This is the algebra in which the
// center-manifold coefficient equations  T Psi = g,  Q Psi = 0  are solved.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gcw/symbols.hpp"

namespace gcw {

struct TrigKey {
    int pow;    // power of x, 0..
    int harm;   // harmonic index >= 0, frequency = harm * base
    bool sine;  // cos when false; (harm == 0, sine) never stored
    auto operator<=>(const TrigKey&) const = default;
};

class TrigPoly {
  public:
    TrigPoly() = default;
    explicit TrigPoly(double base) : base_(base) {}

    static TrigPoly constant(double c);
    // c * x^pow * cos/sin(harm * base * x)
    static TrigPoly term(double base, int pow, int harm, bool sine, double c);

    double base() const { return base_; }
    const std::map<TrigKey, double>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int max_power() const;
    int max_harmonic() const;

    void add_term(int pow, int harm, bool sine, double c);
    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator*=(double c);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b);
    friend TrigPoly operator*(TrigPoly a, double c) { return a *= c; }
    friend TrigPoly operator*(double c, TrigPoly a) { return a *= c; }
    // exact product-to-sum expansion
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

    // x^k cos even iff k even, x^k sin even iff k odd
    bool is_even() const;
    bool is_odd() const;
    void split_parity(TrigPoly& even, TrigPoly& odd) const;

    double eval(double x) const;
    // exact n-th derivative at x = 0
    double deriv_at_zero(int n) const;

    void prune(double eps = 0.0);
    double max_abs_coeff() const;
    std::string str() const;

  private:
    double base_ = 0.0; // 0 while no oscillatory term present
    std::map<TrigKey, double> terms_;
    void adopt_base(double b);
};

// Even Fourier multiplier presented through its derivatives at a frequency.
class MultiplierSpec {
  public:
    using DerivFn = std::function<double(int n, double y)>;
    MultiplierSpec(std::string name, DerivFn fn);
    // m^{(n)}(y), cached
    double deriv(int n, double y) const;
    const std::string& name() const { return name_; }

    static MultiplierSpec identity();
    static MultiplierSpec l_of(double tau);              // l_tau(D)
    static MultiplierSpec one_minus_c0l(const SymbolParams& p); // T = Id - c0 K*
    static MultiplierSpec c0l(const SymbolParams& p);           // Id - T

  private:
    std::string name_;
    DerivFn fn_;
    mutable std::map<std::pair<int, long long>, double> cache_;
};

// Term-by-term application of an even multiplier; input powers capped at 4.
TrigPoly apply_multiplier(const MultiplierSpec& m, const TrigPoly& p);

enum class Projection { Q1, Q2 };

// Unique Psi with T Psi = rhs and vanishing 4-jet at 0 (equivalent to
// Q1 Psi = 0 / Q2 Psi = 0), solved by undetermined coefficients over the
// harmonic lattice of rhs extended by the kernel frequency.
TrigPoly solve_T_equation(const TrigPoly& rhs, const SymbolParams& params, Projection proj);

inline double fourth_deriv_at_zero(const TrigPoly& p) { return p.deriv_at_zero(4); }

} // namespace gcw

#endif
