#include "mcflab/soliton_profiles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcflab/csv_io.hpp"

namespace mcflab::soliton {
namespace {

constexpr double kNodeMatchTol = 1e-9;  // relative radius match for index_of

std::vector<double> default_targets(double a, double b, int count = 1024) {
    std::vector<double> t;
    t.reserve(count);
    for (int i = 1; i <= count; ++i) t.push_back(a + (b - a) * i / count);
    return t;
}

// three-point parabolic slope estimates for profiles without ODE derivatives
std::vector<double> fd_slopes(const std::vector<double>& x,
                              const std::vector<double>& y) {
    std::size_t m = x.size();
    std::vector<double> s(m);
    if (m == 1) return s;
    if (m == 2) {
        s[0] = s[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return s;
    }
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = std::clamp<std::size_t>(i, 1, m - 2);
        double h0 = x[j] - x[j - 1], h1 = x[j + 1] - x[j];
        double d0 = (y[j] - y[j - 1]) / h0, d1 = (y[j + 1] - y[j]) / h1;
        double c = (d1 - d0) / (h0 + h1);  // half the 2nd derivative
        s[i] = d0 + c * (h0 + 2.0 * (x[i] - x[j]));
    }
    return s;
}

}  // namespace

PhiProfile PhiProfile::from_samples(int n, std::vector<double> r,
                                    std::vector<double> phi) {
    if (n < 2) throw ArgumentError("PhiProfile: n must be >= 2");
    if (r.size() != phi.size() || r.empty())
        throw ArgumentError("PhiProfile: sample arrays empty or mismatched");
    PhiProfile p;
    p.n = n;
    p.r = std::move(r);
    p.phi = std::move(phi);
    p.validate();
    return p;
}

void PhiProfile::validate() const {
    if (r.size() != phi.size() || r.empty())
        throw ConsistencyError("PhiProfile: sample arrays empty or mismatched");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!std::isfinite(r[i]) || !std::isfinite(phi[i]))
            throw ConsistencyError("PhiProfile: non-finite sample");
        if (i > 0 && !(r[i] > r[i - 1]))
            throw ConsistencyError("PhiProfile: radii not strictly increasing");
    }
    if (r.front() <= 0.0) throw ConsistencyError("PhiProfile: radii must be positive");
    // solutions fall below the attracting line phi = r/(n-1); check the final
    // 10% of the sampled range
    double cut = r.back() - 0.1 * (r.back() - r.front());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < cut) continue;
        if (phi[i] > r[i] / (n - 1) * (1.0 + 1e-12))
            throw ConsistencyError("PhiProfile: tail above the attracting line");
    }
    if (origin_regular) {
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!(phi[i] > 0.0))
                throw ConsistencyError("PhiProfile: bowl slope not positive");
        for (std::size_t i = 1; i < r.size(); ++i)
            if (!(phi[i] > phi[i - 1]))
                throw ConsistencyError("PhiProfile: bowl slope not strictly increasing");
    }
}

double PhiProfile::eval(double radius) const {
    if (radius < r.front() - 1e-12 || radius > r.back() + 1e-12)
        throw ArgumentError("PhiProfile::eval: radius outside sampled range");
    auto it = std::lower_bound(r.begin(), r.end(), radius);
    std::size_t j = it - r.begin();
    if (j < r.size() && std::abs(r[j] - radius) <= kNodeMatchTol * std::max(1.0, radius))
        return phi[j];
    if (j == 0) return phi[0];
    if (j == r.size()) return phi.back();
    double a = r[j - 1], b = r[j], h = b - a;
    double t = (radius - a) / h;
    double ya = phi[j - 1], yb = phi[j];
    double da = dphi.empty() ? (yb - ya) / h : dphi[j - 1];
    double db = dphi.empty() ? (yb - ya) / h : dphi[j];
    // cubic Hermite
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ya + (t3 - 2 * t2 + t) * h * da +
           (-2 * t3 + 3 * t2) * yb + (t3 - t2) * h * db;
}

std::string PhiProfile::to_csv() const { return csv::two_columns("r", "phi", r, phi); }

double HeightProfile::eval(double radius) const {
    if (radius < r.front() - 1e-12 || radius > r.back() + 1e-12)
        throw ArgumentError("HeightProfile::eval: radius outside sampled range");
    auto it = std::lower_bound(r.begin(), r.end(), radius);
    std::size_t j = it - r.begin();
    if (j < r.size() && std::abs(r[j] - radius) <= kNodeMatchTol * std::max(1.0, radius))
        return u[j];
    if (j == 0) return u[0];
    if (j == r.size()) return u.back();
    double a = r[j - 1], b = r[j], h = b - a;
    double t = (radius - a) / h;
    double ya = u[j - 1], yb = u[j];
    double da = slope.empty() ? (yb - ya) / h : slope[j - 1];
    double db = slope.empty() ? (yb - ya) / h : slope[j];
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ya + (t3 - 2 * t2 + t) * h * da +
           (-2 * t3 + 3 * t2) * yb + (t3 - t2) * h * db;
}

std::size_t HeightProfile::index_of(double radius) const {
    auto it = std::lower_bound(r.begin(), r.end(), radius - kNodeMatchTol);
    std::size_t j = it - r.begin();
    if (j < r.size() && std::abs(r[j] - radius) <= kNodeMatchTol * std::max(1.0, radius))
        return j;
    throw ArgumentError("HeightProfile: no sample at requested radius");
}

void HeightProfile::validate() const {
    if (r.size() != u.size() || r.empty())
        throw ConsistencyError("HeightProfile: sample arrays empty or mismatched");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1]))
            throw ConsistencyError("HeightProfile: radii not strictly increasing");
    if (is_bowl) {
        for (std::size_t i = 1; i + 1 < r.size(); ++i) {
            double h0 = r[i] - r[i - 1], h1 = r[i + 1] - r[i];
            double dd = 2.0 * (h0 * u[i + 1] - (h0 + h1) * u[i] + h1 * u[i - 1]) /
                        (h0 * h1 * (h0 + h1));
            if (dd < -1e-9)
                throw ConsistencyError("HeightProfile: bowl second differences negative");
        }
    }
}

std::string HeightProfile::to_csv() const { return csv::two_columns("r", "u", r, u); }

HeightProfile HeightProfile::shifted(double c) const {
    HeightProfile out = *this;
    for (auto& v : out.u) v += c;
    out.anchor_u += c;
    return out;
}

PhiProfile integrate_phi(int n, double R, double phi0, double r_max, double tol,
                         std::vector<double> targets) {
    if (n < 2) throw ArgumentError("integrate_phi: n must be >= 2");
    if (!(R > 0.0)) throw ArgumentError("integrate_phi: R must be positive");
    if (!(r_max / R >= 2.0))
        throw ArgumentError("integrate_phi: r_max/R must be >= 2");
    if (!(tol > 0.0 && tol <= 1e-3))
        throw ArgumentError("integrate_phi: tol must lie in (0, 1e-3]");
    if (!std::isfinite(phi0)) throw ArgumentError("integrate_phi: phi0 not finite");

    if (targets.empty()) targets = default_targets(R, r_max);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (double t : targets)
        if (t < R - 1e-12 || t > r_max + 1e-12)
            throw ArgumentError("integrate_phi: target outside [R, r_max]");

    PhiProfile p;
    p.n = n;
    p.tol = tol;
    p.r.push_back(R);
    p.phi.push_back(phi0);
    p.dphi.push_back(phi_rhs<double>(n, R, phi0));

    auto f = [n](double r, const StateVec<double, 1>& y) -> StateVec<double, 1> {
        return {phi_rhs<double>(n, r, y[0])};
    };
    StepControl ctl;
    ctl.h_init = std::min(1e-3, 1e-3 * R);
    rkf78_integrate<double, 1>(
        f, R, {phi0}, r_max, tol, targets,
        [&](double r, const StateVec<double, 1>& y) {
            if (r > p.r.back()) {
                p.r.push_back(r);
                p.phi.push_back(y[0]);
                p.dphi.push_back(phi_rhs<double>(n, r, y[0]));
            }
        },
        [](double, const StateVec<double, 1>&) {}, ctl);

    p.validate();
    return p;
}

PhiProfile bowl_phi(int n, double r_max, double tol, std::vector<double> targets) {
    if (n < 2) throw ArgumentError("bowl_phi: n must be >= 2");
    if (!(r_max >= 10.0)) throw ArgumentError("bowl_phi: r_max must be >= 10");
    if (!(tol > 0.0 && tol <= 1e-3))
        throw ArgumentError("bowl_phi: tol must lie in (0, 1e-3]");

    const double r_start = 1e-3 * n;
    series::OriginSeries origin = series::expand_origin(n, 13);
    // the last retained term bounds the truncation error at r_start
    double trunc = std::abs(origin.coefficient(13).get_d()) * std::pow(r_start, 13);
    if (trunc >= tol)
        throw ConfigurationError("bowl_phi: series start radius does not resolve tol");
    double phi0 = origin.eval(r_start);

    std::erase_if(targets, [&](double t) { return t <= r_start; });
    PhiProfile p = integrate_phi(n, r_start, phi0, r_max, tol, std::move(targets));
    p.origin_regular = true;
    p.validate();
    return p;
}

HeightProfile height_from_phi(const PhiProfile& p, double anchor_r,
                              double anchor_u) {
    if (p.size() < 2) throw ArgumentError("height_from_phi: need >= 2 samples");
    if (anchor_r < p.r_min() - 1e-12 || anchor_r > p.r_max() + 1e-12)
        throw ArgumentError("height_from_phi: anchor outside sampled range");

    const std::vector<double>& d =
        p.dphi.empty() ? fd_slopes(p.r, p.phi) : p.dphi;

    // cumulative corrected-trapezoid quadrature (exact for cubics), Neumaier
    // compensated summation
    std::size_t m = p.size();
    std::vector<double> cum(m, 0.0);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        double h = p.r[i] - p.r[i - 1];
        double seg = 0.5 * h * (p.phi[i - 1] + p.phi[i]) +
                     h * h / 12.0 * (d[i - 1] - d[i]);
        double t = sum + seg;
        comp += (std::abs(sum) >= std::abs(seg)) ? (sum - t) + seg : (seg - t) + sum;
        sum = t;
        cum[i] = sum + comp;
    }

    // interpolate the cumulative integral at the anchor radius
    auto cum_at = [&](double radius) {
        auto it = std::lower_bound(p.r.begin(), p.r.end(), radius);
        std::size_t j = it - p.r.begin();
        if (j < m && std::abs(p.r[j] - radius) <= kNodeMatchTol * std::max(1.0, radius))
            return cum[j];
        if (j == 0 || j == m)
            throw ArgumentError("height_from_phi: anchor outside sampled range");
        double h = radius - p.r[j - 1];
        double phi_a = p.phi[j - 1], phi_r = p.eval(radius);
        double d_a = d[j - 1];
        double d_r = p.dphi.empty() ? d_a : phi_rhs<double>(p.n, radius, phi_r);
        return cum[j - 1] + 0.5 * h * (phi_a + phi_r) + h * h / 12.0 * (d_a - d_r);
    };
    double c0 = cum_at(anchor_r);

    HeightProfile out;
    out.n = p.n;
    out.r = p.r;
    out.slope = p.phi;
    out.anchor_r = anchor_r;
    out.anchor_u = anchor_u;
    out.is_bowl = p.origin_regular;
    out.u.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.u[i] = (cum[i] - c0) + anchor_u;
    out.validate();
    return out;
}

std::vector<double> translator_residual(const HeightProfile& h) {
    if (h.size() < 5)
        throw ArgumentError("translator_residual: need at least 5 samples");
    std::size_t m = h.size();
    std::vector<double> rho(m);

    // derivatives from local polynomial fits: interior quadratic through
    // (i-1, i, i+1); cubic through the first/last four nodes at the ends
    auto interior = [&](std::size_t i, double& v1, double& v2) {
        double h0 = h.r[i] - h.r[i - 1], h1 = h.r[i + 1] - h.r[i];
        double d0 = (h.u[i] - h.u[i - 1]) / h0, d1 = (h.u[i + 1] - h.u[i]) / h1;
        v2 = 2.0 * (d1 - d0) / (h0 + h1);
        v1 = (h1 * d0 + h0 * d1) / (h0 + h1);
    };
    auto one_sided = [&](std::size_t base, double at, double& v1, double& v2) {
        // Newton divided differences on four nodes, derivative of the cubic
        double x0 = h.r[base], x1 = h.r[base + 1], x2 = h.r[base + 2],
               x3 = h.r[base + 3];
        double f01 = (h.u[base + 1] - h.u[base]) / (x1 - x0);
        double f12 = (h.u[base + 2] - h.u[base + 1]) / (x2 - x1);
        double f23 = (h.u[base + 3] - h.u[base + 2]) / (x3 - x2);
        double f012 = (f12 - f01) / (x2 - x0);
        double f123 = (f23 - f12) / (x3 - x1);
        double f0123 = (f123 - f012) / (x3 - x0);
        double t0 = at - x0, t1 = at - x1, t2 = at - x2;
        v1 = f01 + f012 * (t0 + t1) + f0123 * (t0 * t1 + t0 * t2 + t1 * t2);
        v2 = 2.0 * f012 + f0123 * 2.0 * (t0 + t1 + t2);
    };

    for (std::size_t i = 0; i < m; ++i) {
        double v1, v2;
        if (i == 0)
            one_sided(0, h.r[0], v1, v2);
        else if (i + 1 == m)
            one_sided(m - 4, h.r[m - 1], v1, v2);
        else
            interior(i, v1, v2);
        rho[i] = 1.0 - (v2 / (1.0 + v1 * v1) + (h.n - 1) * v1 / h.r[i]);
    }
    return rho;
}

HeightProfile uniform_slice(const HeightProfile& h, double lo, double step) {
    if (!(step > 0.0)) throw ArgumentError("uniform_slice: step must be positive");
    HeightProfile out;
    out.n = h.n;
    out.is_bowl = h.is_bowl;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h.r[i] < lo - 1e-12) continue;
        double k = (h.r[i] - lo) / step;
        if (std::fabs(k - std::round(k)) < 1e-6) {
            out.r.push_back(h.r[i]);
            out.u.push_back(h.u[i]);
            if (!h.slope.empty()) out.slope.push_back(h.slope[i]);
        }
    }
    if (out.r.empty()) throw ArgumentError("uniform_slice: no matching nodes");
    out.anchor_r = out.r.front();
    out.anchor_u = out.u.front();
    return out;
}

double Bowl::u_at(double radius) const {
    if (radius < 0.0) throw ArgumentError("Bowl::u_at: negative radius");
    if (radius < r_start) return origin.height(radius);
    return height.eval(radius);
}

double Bowl::phi_at(double radius) const {
    if (radius < 0.0) throw ArgumentError("Bowl::phi_at: negative radius");
    if (radius < r_start) return origin.eval(radius);
    return phi.eval(radius);
}

Bowl bowl_translator(int n, double r_max, double tol, std::vector<double> targets) {
    Bowl b;
    b.n = n;
    b.r_start = 1e-3 * n;
    b.origin = series::expand_origin(n, 13);
    b.phi = bowl_phi(n, r_max, tol, std::move(targets));
    b.height = height_from_phi(b.phi, b.phi.r_min(), b.origin.height(b.phi.r_min()));
    b.height.is_bowl = true;
    b.height.validate();
    return b;
}

}  // namespace mcflab::soliton
