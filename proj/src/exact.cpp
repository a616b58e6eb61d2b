#include "mcflab/exact.hpp"

#include <sstream>

namespace mcflab {

std::string rational_str(const Rational& q) {
    return q.get_str();  // canonical "num/den", "num" when den == 1
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
}

Poly& Poly::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::div_exact_linear(const Rational& a) const {
    // synthetic division by (n - a)
    if (is_zero()) return Poly();
    std::vector<Rational> q(c_.size() - 1, Rational(0));
    Rational carry(0);
    for (int i = degree(); i >= 1; --i) {
        carry = c_[i] + carry * a;
        q[i - 1] = carry;
    }
    Rational rem = c_[0] + carry * a;
    if (rem != 0) throw InternalError("poly: division by (n-a) left a remainder");
    Poly r;
    r.c_ = std::move(q);
    r.trim();
    return r;
}

bool Poly::divisible_by_linear(const Rational& a) const {
    return is_zero() || eval(a) == 0;
}

bool Poly::integer_coefficients() const {
    for (const auto& v : c_)
        if (v.get_den() != 1) return false;
    return true;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rational v = coeff(k);
        if (v == 0) continue;
        bool neg = v < 0;
        Rational mag = neg ? Rational(-v) : v;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool unit = (mag == 1) && k > 0;
        if (!unit) os << rational_str(mag);
        if (k > 0) {
            if (!unit) os << "*";
            os << "n";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

void SymCoef::normalize() {
    if (num.is_zero()) {
        denom_pow = 0;
        return;
    }
    while (denom_pow > 0 && num.divisible_by_linear(Rational(1))) {
        num = num.div_exact_linear(Rational(1));
        --denom_pow;
    }
}

SymCoef SymCoef::operator+(const SymCoef& o) const {
    int dp = std::max(denom_pow, o.denom_pow);
    Poly nm1 = Poly::n_minus(1);
    Poly a = num, b = o.num;
    for (int i = denom_pow; i < dp; ++i) a *= nm1;
    for (int i = o.denom_pow; i < dp; ++i) b *= nm1;
    return SymCoef(a + b, dp);
}

SymCoef SymCoef::operator-(const SymCoef& o) const {
    return *this + (o * Rational(-1));
}

SymCoef SymCoef::operator*(const SymCoef& o) const {
    return SymCoef(num * o.num, denom_pow + o.denom_pow);
}

SymCoef SymCoef::operator*(const Rational& s) const {
    Poly p = num;
    p *= s;
    return SymCoef(std::move(p), denom_pow);
}

Rational SymCoef::eval(const Rational& n) const {
    Rational d(1);
    for (int i = 0; i < denom_pow; ++i) d *= (n - 1);
    if (d == 0) throw ArgumentError("symbolic coefficient has a pole at n=1");
    return num.eval(n) / d;
}

std::string SymCoef::str() const {
    if (denom_pow == 0) return num.str();
    std::ostringstream os;
    os << "(" << num.str() << ")/(n-1)";
    if (denom_pow > 1) os << "^" << denom_pow;
    return os.str();
}

}  // namespace mcflab
