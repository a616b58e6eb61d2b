#pragma once

// Radial translating-soliton profiles: the slope ODE
//
//     phi' = (1 + phi^2) (1 - (n-1) phi / r),
//
// the entire convex bowl translator started from the regular origin series,
// height reconstruction by quadrature, and the translator residual
// rho = 1 - [V''/(1+V'^2) + (n-1) V'/r].

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcflab/errors.hpp"
#include "mcflab/rkf78.hpp"
#include "mcflab/series_expansion.hpp"

namespace mcflab::soliton {

/// Slope equation right-hand side; templated so the high-precision oracle can
/// reuse it.
template <class Real>
Real phi_rhs(int n, Real r, Real phi) {
    return (Real(1) + phi * phi) * (Real(1) - Real(n - 1) * phi / r);
}

/// Sampled solution of the slope ODE on [R, r_max].
struct PhiProfile {
    int n = 2;
    double tol = 1e-10;
    bool origin_regular = false;
    std::vector<double> r;     // strictly increasing
    std::vector<double> phi;
    std::vector<double> dphi;  // ODE slope at each sample; empty for synthetic

    /// Build a profile from plain samples (no ODE backing).
    static PhiProfile from_samples(int n, std::vector<double> r,
                                   std::vector<double> phi);

    std::size_t size() const { return r.size(); }
    double r_min() const { return r.front(); }
    double r_max() const { return r.back(); }

    /// Interpolated slope (quintic Hermite where ODE derivatives exist).
    double eval(double radius) const;

    /// Enforce the type invariants; throws ConsistencyError on violation.
    void validate() const;

    std::string to_csv() const;  // header "r,phi", 17 significant digits
};

/// Heights u(r) with the anchor pinned exactly.
struct HeightProfile {
    int n = 2;
    std::vector<double> r;
    std::vector<double> u;
    std::vector<double> slope;  // u' = phi at the samples, when known
    double anchor_r = 0.0;
    double anchor_u = 0.0;
    bool is_bowl = false;

    std::size_t size() const { return r.size(); }
    double r_min() const { return r.front(); }
    double r_max() const { return r.back(); }

    double eval(double radius) const;
    /// Index of the sample at `radius` (within 1e-9 relative); throws if none.
    std::size_t index_of(double radius) const;

    void validate() const;
    std::string to_csv() const;  // header "r,u"

    /// New profile shifted vertically by c (anchor moves with it).
    HeightProfile shifted(double c) const;
};

/// Integrate the slope ODE from (R, phi0) to r_max.  `targets` are radii the
/// integrator lands on exactly (they become samples); pass the consumer grid
/// here.  When `targets` is empty a uniform grid of ~1024 nodes is used.
PhiProfile integrate_phi(int n, double R, double phi0, double r_max, double tol,
                         std::vector<double> targets = {});

/// Entire bowl slope profile: regular series start at r_start = 1e-3*n,
/// then integrate_phi onward; origin_regular is set.
PhiProfile bowl_phi(int n, double r_max, double tol,
                    std::vector<double> targets = {});

/// Cumulative quadrature of phi pinned to u(anchor_r) = anchor_u.
HeightProfile height_from_phi(const PhiProfile& p, double anchor_r,
                              double anchor_u);

/// Translator residual rho(r_i) at every sample, second-order stencils
/// (one-sided at the ends).
std::vector<double> translator_residual(const HeightProfile& h);

/// Sub-profile at the nodes lo, lo+step, lo+2*step, ... that are present in
/// h (profiles built with these radii as targets carry them exactly).
/// Residual checks use this to stay on uniform spacing.
HeightProfile uniform_slice(const HeightProfile& h, double lo, double step);

/// Assembled bowl translator: slope + height profiles plus the origin series,
/// normalized so U(0) = 0.
struct Bowl {
    int n = 2;
    double r_start = 0.0;
    series::OriginSeries origin;
    PhiProfile phi;
    HeightProfile height;

    double u_at(double radius) const;    // exact-translator height U(r)
    double phi_at(double radius) const;  // slope U'(r)
};

Bowl bowl_translator(int n, double r_max, double tol,
                     std::vector<double> targets = {});

}  // namespace mcflab::soliton
