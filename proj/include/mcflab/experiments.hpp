#pragma once

// Desk-scale reproductions of the stability results: perturbed bowl data
// trapped between eps-shifted wing barriers relaxes back to the translator;
// plane data relaxes to zero between static catenoid barriers; quadratically
// growing data stays beneath the comparison-sphere envelope.

#include <optional>
#include <string>
#include <vector>

#include "mcflab/mcf_evolver.hpp"
#include "mcflab/soliton_profiles.hpp"
#include "mcflab/wing_builder.hpp"

namespace mcflab::experiments {

struct PerturbationSpec {
    enum class Kind { compact_bump, slow_decay };
    Kind kind = Kind::compact_bump;
    double amplitude = 1.0;
    double rho = 3.0;  // bump support radius
    double p = 0.5;          // slow decay exponent: a (1+r)^-p

    double eval(double r) const;
    void validate() const;
};

struct StabilityReport {
    std::vector<double> t;
    std::vector<double> sup_dev;            // s(t) = max |u - U - t|
    std::vector<int> omega_count;           // nodes with u - U - t > 2 eps
    std::vector<double> omega_max_radius;   // outermost such node (-1 if none)
    std::vector<double> barrier_violation;  // per sample time
    double barrier_violation_max = 0.0;
    std::optional<double> t_star;  // first sample with s <= 2 eps
    double epsilon = 0.0;
    double h = 0.0;

    std::string to_csv() const;  // t,sup_dev,omega_count,barrier_violation
    void validate() const;       // sup_dev >= 0 everywhere
    bool omega_nonincreasing_after_peak() const;
};

/// Theorem-1.1 experiment: evolve U + pert between eps-shifted wings.
/// sample_dt controls the observer cadence.
StabilityReport run_soliton_stability(int n, const PerturbationSpec& pert,
                                      double epsilon, double r_wing,
                                      const evolver::RadialGrid& grid,
                                      const evolver::SchemeConfig& scheme, double T,
                                      double sample_dt = 0.5);

/// Max positive part of (W^- - u) and (u - W^+) over sampled times and nodes
/// with r > 2 R_wing; wing heights at time t are the static branch + t.
double check_barrier_ordering(const evolver::Trajectory& traj,
                              const wings::WingPair& pair);

/// n-catenoid closed forms (n >= 3), slope chart r > c^{1/(n-1)}.
double catenoid_slope(int n, double c, double r);
double catenoid_slope_deriv(int n, double c, double r);
/// Static residual f''/(1+f'^2) + (n-1) f'/r from the closed forms.
double catenoid_static_residual(int n, double c, double r);
/// Tail integral int_r^inf f'(s) ds (height of the upper barrier above its
/// asymptote).
double catenoid_height_tail(int n, double c, double r);

/// Appendix-C experiment: plane stability with catenoid barriers.
StabilityReport run_plane_stability(int n, const PerturbationSpec& pert,
                                    double catenoid_c, double epsilon,
                                    const evolver::RadialGrid& grid,
                                    const evolver::SchemeConfig& scheme, double T,
                                    double sample_dt = 0.5);

/// Comparison-sphere envelope at time tau and radius r; algebraically equal
/// to C r^2 + 2 C n tau.
double sphere_envelope_height(int n, double C, double r, double tau);

/// Evolve u0 = C r^2 and return max over nodes and steps of
/// u - (C r^2 + 2 C n t).
double quadratic_growth_check(int n, double C, const evolver::RadialGrid& grid,
                              const evolver::SchemeConfig& scheme, double tau);

}  // namespace mcflab::experiments
