#include "mcflab/series_expansion.hpp"

#include <sstream>

namespace mcflab::series {
namespace {

// Sparse Laurent series in r over a coefficient ring K.  Only the handful of
// operations the substitution needs.
template <class K>
struct Laurent {
    std::map<int, K> c;  // power -> coefficient

    K get(int p) const {
        auto it = c.find(p);
        return it == c.end() ? K() : it->second;
    }
    void add_to(int p, const K& v) {
        auto it = c.find(p);
        if (it == c.end()) {
            if (!is_zero(v)) c.emplace(p, v);
        } else {
            it->second = it->second + v;
            if (is_zero(it->second)) c.erase(it);
        }
    }

    static bool is_zero(const K& v);
};

template <>
bool Laurent<Rational>::is_zero(const Rational& v) { return v == 0; }
template <>
bool Laurent<SymCoef>::is_zero(const SymCoef& v) { return v.is_zero(); }

template <class K>
Laurent<K> mul(const Laurent<K>& a, const Laurent<K>& b, int lo_cut) {
    Laurent<K> r;
    for (const auto& [pa, va] : a.c)
        for (const auto& [pb, vb] : b.c) {
            int p = pa + pb;
            if (p < lo_cut) continue;
            r.add_to(p, va * vb);
        }
    return r;
}

template <class K>
Laurent<K> deriv(const Laurent<K>& a) {
    Laurent<K> r;
    for (const auto& [p, v] : a.c)
        if (p != 0) r.add_to(p - 1, v * Rational(p));
    return r;
}

// residual R(phi) = phi' - (1 + phi^2)(1 - (n-1) phi / r), truncated below
// lo_cut.  `nm1` is (n-1) in the ring, `one` the ring unit.
template <class K>
Laurent<K> ode_residual(const Laurent<K>& phi, const K& nm1, const K& one,
                        int lo_cut) {
    Laurent<K> a = mul(phi, phi, lo_cut);  // phi^2
    a.add_to(0, one);                      // 1 + phi^2
    Laurent<K> b;
    b.add_to(0, one);
    for (const auto& [p, v] : phi.c)       // 1 - (n-1) phi / r
        b.add_to(p - 1, v * nm1 * Rational(-1));
    Laurent<K> r = deriv(phi);
    Laurent<K> ab = mul(a, b, lo_cut);
    for (const auto& [p, v] : ab.c) r.add_to(p, v * Rational(-1));
    return r;
}

// Build the tail series generically.  c1 = 1/(n-1); the unknown coefficient
// e_k of r^{-k} enters the residual at power 1-k with weight +c1, so each
// order is solved by e_k = -(residual at 1-k) * (n-1).
template <class K>
void build_tail(Laurent<K>& phi, const K& c1, const K& nm1, const K& one,
                int order, int& residual_leading) {
    const int lo_cut = -(order + 4);
    phi.add_to(1, c1);
    for (int k = 0; k <= order; ++k) {
        Laurent<K> r = ode_residual(phi, nm1, one, lo_cut);
        K resid = r.get(1 - k);
        if (!Laurent<K>::is_zero(resid)) {
            K ek = resid * nm1 * Rational(-1);
            phi.add_to(-k, ek);
        }
    }
    // exact leading power of what is left
    Laurent<K> r = ode_residual(phi, nm1, one, lo_cut);
    residual_leading = lo_cut - 1;
    for (const auto& [p, v] : r.c)
        if (!Laurent<K>::is_zero(v)) {
            residual_leading = std::max(residual_leading, p);
        }
    if (residual_leading > -(order + 1))
        throw InternalError("tail expansion: residual order too low; "
                            "triangular solve failed");
}

void check_order_arg(int order) {
    if (order < 1 || order % 2 == 0)
        throw ArgumentError("series order must be an odd integer >= 1");
    if (order > kMaxOrder)
        throw ArgumentError("series order capped at " + std::to_string(kMaxOrder));
}

}  // namespace

TailSeries expand_tail(const Rational& n, int order) {
    check_order_arg(order);
    if (n < 2) throw ArgumentError("expand_tail: n must be >= 2");
    Laurent<Rational> phi;
    Rational nm1 = n - 1;
    Rational c1 = Rational(1) / nm1;
    TailSeries out;
    out.mode = Mode::numeric;
    out.n = n;
    out.order = order;
    out.c1 = c1;
    build_tail(phi, c1, nm1, Rational(1), order, out.residual_power_);
    for (const auto& [p, v] : phi.c)
        if (p <= 0 && v != 0) out.coeff[p] = v;
    return out;
}

TailSeries expand_tail_symbolic(int order) {
    check_order_arg(order);
    Laurent<SymCoef> phi;
    SymCoef one = SymCoef::from_int(1);
    SymCoef nm1(Poly::n_minus(1));
    SymCoef c1(Poly(Rational(1)), 1);  // 1/(n-1)
    TailSeries out;
    out.mode = Mode::symbolic;
    out.order = order;
    out.c1_sym = c1;
    build_tail(phi, c1, nm1, one, order, out.residual_power_);
    for (const auto& [p, v] : phi.c)
        if (p <= 0 && !v.is_zero()) out.coeff_sym[p] = v;
    return out;
}

OriginSeries expand_origin(int n, int order) {
    check_order_arg(order);
    if (n < 2) throw ArgumentError("expand_origin: n must be >= 2");
    const int lo_cut = -2;  // polynomial ansatz; keep a little slack below 0
    Laurent<Rational> phi;
    Rational nm1(n - 1);
    // unknown a_k of r^k enters the residual at power k-1 with weight
    // -(k + n - 1): from the derivative (k a_k) and the transport term.
    for (int k = 1; k <= order; ++k) {
        Laurent<Rational> r = ode_residual(phi, nm1, Rational(1), lo_cut);
        Rational resid = r.get(k - 1);
        if (resid != 0) {
            Rational ak = -resid / Rational(k + n - 1);
            phi.add_to(k, ak);
        }
    }
    OriginSeries out;
    out.n = n;
    out.order = order;
    for (const auto& [p, v] : phi.c)
        if (v != 0) out.coeff[p] = v;
    return out;
}

Rational TailSeries::coefficient(int power) const {
    if (mode != Mode::numeric)
        throw ArgumentError("coefficient: series is in symbolic-n mode");
    if (power == 1) return c1;
    auto it = coeff.find(power);
    return it == coeff.end() ? Rational(0) : it->second;
}

SymCoef TailSeries::coefficient_sym(int power) const {
    if (mode != Mode::symbolic)
        throw ArgumentError("coefficient_sym: series is in numeric-n mode");
    if (power == 1) return c1_sym;
    auto it = coeff_sym.find(power);
    return it == coeff_sym.end() ? SymCoef() : it->second;
}

double TailSeries::eval(double r) const { return eval_as<double>(r); }

std::string TailSeries::dump() const {
    std::ostringstream os;
    if (mode == Mode::numeric) {
        os << 1 << "\t" << rational_str(c1) << "\n";
        for (auto it = coeff.rbegin(); it != coeff.rend(); ++it)
            os << it->first << "\t" << rational_str(it->second) << "\n";
    } else {
        os << 1 << "\t" << c1_sym.str() << "\n";
        for (auto it = coeff_sym.rbegin(); it != coeff_sym.rend(); ++it)
            os << it->first << "\t" << it->second.str() << "\n";
    }
    return os.str();
}

Rational OriginSeries::coefficient(int power) const {
    auto it = coeff.find(power);
    return it == coeff.end() ? Rational(0) : it->second;
}

namespace {
double ipow(double x, int k) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= x;
    return acc;
}
}  // namespace

double OriginSeries::eval(double r) const {
    double acc = 0.0;
    for (const auto& [p, v] : coeff) acc += v.get_d() * ipow(r, p);
    return acc;
}

double OriginSeries::height(double r) const {
    double acc = 0.0;
    for (const auto& [p, v] : coeff) acc += v.get_d() / (p + 1) * ipow(r, p + 1);
    return acc;
}

double OriginSeries::deriv(double r) const {
    double acc = 0.0;
    for (const auto& [p, v] : coeff) acc += v.get_d() * p * ipow(r, p - 1);
    return acc;
}

std::string OriginSeries::dump() const {
    std::ostringstream os;
    for (const auto& [p, v] : coeff) os << p << "\t" << rational_str(v) << "\n";
    return os.str();
}

double eval_series(const TailSeries& s, double r) { return s.eval(r); }
double eval_series(const OriginSeries& s, double r) { return s.eval(r); }

}  // namespace mcflab::series
