#pragma once

// Formal asymptotic expansions of the radial soliton slope equation
//
//     phi' = (1 + phi^2) (1 - (n-1) phi / r)
//
// by exact-rational substitution: the large-r tail ansatz
// phi ~ r/(n-1) + sum_k c_{-k} r^{-k} and the regular origin ansatz
// phi ~ sum_k a_k r^k.  Coefficients are generated order by order from the
// triangular system obtained by collecting powers of r.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mcflab/exact.hpp"

namespace mcflab::series {

inline constexpr int kMaxOrder = 21;  // guard against coefficient blowup

enum class Mode { numeric, symbolic };

/// Tail expansion phi ~ c1*r + sum_{k>=1} c_{-k} r^{-k}.
/// In numeric mode coefficients are exact rationals at a fixed rational n;
/// in symbolic mode they are polynomials in n over powers of (n-1).
struct TailSeries {
    Mode mode = Mode::numeric;
    std::optional<Rational> n;  // set in numeric mode
    int order = 0;              // highest negative power included
    Rational c1;                // numeric mode: 1/(n-1)
    SymCoef c1_sym;             // symbolic mode: 1/(n-1)
    std::map<int, Rational> coeff;      // power -> value (numeric mode)
    std::map<int, SymCoef> coeff_sym;   // power -> value (symbolic mode)

    Rational coefficient(int power) const;       // numeric mode
    SymCoef coefficient_sym(int power) const;    // symbolic mode

    /// Leading power of the exact formal residual left by this truncation;
    /// the triangular construction guarantees it is <= -(order+1).
    int residual_leading_power() const { return residual_power_; }
    int residual_power_ = 0;

    double eval(double r) const;
    /// Same evaluation in caller-chosen precision (used by the ODE oracle).
    template <class Real>
    Real eval_as(Real r) const {
        if (mode != Mode::numeric)
            throw ArgumentError("eval: series is in symbolic-n mode");
        Real x = Real(1) / r;
        Real acc = to_real<Real>(c1) * r;
        for (const auto& [p, v] : coeff) {
            Real term = to_real<Real>(v);
            for (int i = 0; i < -p; ++i) term *= x;
            acc += term;
        }
        return acc;
    }

    /// Termwise derivative of the truncation, same precision rules as eval_as.
    template <class Real>
    Real deriv_as(Real r) const {
        if (mode != Mode::numeric)
            throw ArgumentError("deriv: series is in symbolic-n mode");
        Real x = Real(1) / r;
        Real acc = to_real<Real>(c1);
        for (const auto& [p, v] : coeff) {
            Real term = to_real<Real>(v) * Real(p);
            for (int i = 0; i < -p + 1; ++i) term *= x;
            acc += term;
        }
        return acc;
    }

    std::string dump() const;  // one line per coefficient: power<TAB>value

    template <class Real>
    static Real to_real(const Rational& q) {
        return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
    }
};

template <>
inline double TailSeries::to_real<double>(const Rational& q) {
    return q.get_d();
}

/// Origin expansion phi ~ sum_{k>=1} a_k r^k (regular start of the bowl).
struct OriginSeries {
    int n = 0;
    int order = 0;  // highest power included
    std::map<int, Rational> coeff;  // power -> a_k

    Rational coefficient(int power) const;
    double eval(double r) const;
    /// Height integral int_0^r phi, term by term (anchors the bowl at r=0).
    double height(double r) const;
    /// Derivative phi'(r) from the series.
    double deriv(double r) const;
    std::string dump() const;
};

/// Generate the tail expansion at exact rational n >= 2.
TailSeries expand_tail(const Rational& n, int order);
/// Generate the tail expansion with n left symbolic.
TailSeries expand_tail_symbolic(int order);
/// Generate the regular origin expansion at integer n >= 2.
OriginSeries expand_origin(int n, int order);

/// Evaluate a numeric-mode series at radius r; throws on symbolic mode.
double eval_series(const TailSeries& s, double r);
double eval_series(const OriginSeries& s, double r);

}  // namespace mcflab::series
