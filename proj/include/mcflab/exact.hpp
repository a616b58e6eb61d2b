#pragma once

// Exact arithmetic for the formal series machinery: arbitrary-precision
// rationals (GMP) and dense polynomials in the dimension n over Q.  No
// floating point enters coefficient generation.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "mcflab/errors.hpp"

namespace mcflab {

using Rational = mpq_class;

/// `num/den` with no denominator printed when it is 1.
std::string rational_str(const Rational& q);

/// Dense polynomial in n with rational coefficients, coeff[k] multiplying n^k.
class Poly {
public:
    Poly() = default;
    explicit Poly(Rational constant) { c_ = {std::move(constant)}; trim(); }
    Poly(std::initializer_list<Rational> ascending) : c_(ascending) { trim(); }

    static Poly n() { return Poly{Rational(0), Rational(1)}; }
    static Poly n_minus(long a) { return Poly{Rational(-a), Rational(1)}; }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
    }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const Rational& s);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Rational eval(const Rational& x) const;

    /// Exact division by (n - a); throws InternalError on nonzero remainder.
    Poly div_exact_linear(const Rational& a) const;
    /// True when (n - a) divides this polynomial exactly.
    bool divisible_by_linear(const Rational& a) const;

    /// True when every coefficient is an integer.
    bool integer_coefficients() const;

    /// Human form with explicit signs and n^k powers, e.g. "n^2 - 5*n + 4".
    std::string str() const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Series coefficient in symbolic-n mode: num(n) / (n-1)^denom_pow, kept
/// normalized (num not divisible by (n-1) unless denom_pow == 0).
struct SymCoef {
    Poly num;
    int denom_pow = 0;

    SymCoef() = default;
    SymCoef(Poly p, int dp = 0) : num(std::move(p)), denom_pow(dp) { normalize(); }
    static SymCoef from_int(long v) { return SymCoef(Poly(Rational(v))); }

    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return denom_pow == 0; }
    void normalize();

    SymCoef operator+(const SymCoef& o) const;
    SymCoef operator-(const SymCoef& o) const;
    SymCoef operator*(const SymCoef& o) const;
    SymCoef operator*(const Rational& s) const;
    bool operator==(const SymCoef& o) const {
        return denom_pow == o.denom_pow && num == o.num;
    }

    Rational eval(const Rational& n) const;
    std::string str() const;
};

}  // namespace mcflab
