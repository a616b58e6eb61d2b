#pragma once

// Winglike translating solutions outside the ball of radius R: the union of
// two graphical branches joined through a neck where the radial gradient
// blows up.  Near the neck the surface is a graph h over the symmetry axis,
//
//     h'' = ((n-1)/h - h') (1 + h'^2),
//
// integrated from the turning point (y0, R) with h'(y0) = 0.  Once the
// radial chart is well conditioned the state hands off to the slope ODE of
// soliton_profiles and each branch is extended to r_max.

#include <vector>

#include "mcflab/soliton_profiles.hpp"

namespace mcflab::wings {

/// h-equation right-hand side (acceleration of the axial graph).
double h_accel(int n, double h, double dh);

/// Axial-chart arc through the turning point, sorted by y ascending.
struct InnerArc {
    int n = 2;
    double R = 1.0;
    double y0 = 0.0;
    std::vector<double> y, h, dh;

    std::size_t size() const { return y.size(); }
    std::size_t turning_index() const;  // sample at y0
    std::string to_csv() const;         // header "y,h"
};

/// Integrate the h-equation in both axial directions from (y0, R) until the
/// radial chart takes over on each side: either the radial slope 1/|h'| has
/// fallen to switch_slope, or (上 side) |h'| has peaked, whichever is first.
InnerArc integrate_height_over_axis(int n, double R, long arc_budget,
                                    double step, double switch_slope = 1.0);

struct WingPair {
    int n = 2;
    double R = 1.0;
    double switch_slope = 1.0;
    InnerArc arc;
    // geometric branches. The upper one (W^-) rises from the neck; the lower
    // one (W^+) dips below it and turns back up. Counterintuitively, W^+ is
    // the barrier that ends up on top: its slope stays below the slope of any
    // entire translator, so W^+ - U decreases to its limit and W^+ sits above
    // U + eps everywhere once shifted.
    soliton::HeightProfile upper_branch;
    soliton::HeightProfile lower_branch;
    double r_switch_upper = 0.0, r_switch_lower = 0.0;
    double shift_plus = 0.0, shift_minus = 0.0;  // applied to lower/upper
    double c_plus = 0.0, c_minus = 0.0;          // measured offsets vs bowl
    bool calibrated = false;

    /// Barrier view after calibration: W^+ >= U + eps >= U - eps >= W^-.
    const soliton::HeightProfile& barrier_upper() const { return lower_branch; }
    const soliton::HeightProfile& barrier_lower() const { return upper_branch; }
};

/// Build both branches out to r_max; `targets` become height samples on each
/// branch (pass the consumer grid).
WingPair build_wing_pair(int n, double R, double r_max, double switch_slope,
                         double tol = 1e-10, std::vector<double> targets = {});

/// Asymptotic offset C with lim (branch - bowl) = C, read at the outermost
/// common node and accepted only if the estimate at half that radius agrees
/// to tail_tol.
double asymptotic_offset(const soliton::HeightProfile& branch,
                         const soliton::HeightProfile& bowl,
                         double tail_tol = 1e-6);

/// Shift the branches so lim(W^+ - U) = +epsilon and lim(W^- - U) = -epsilon.
WingPair calibrate_shifts(WingPair pair, const soliton::HeightProfile& bowl,
                          double epsilon, double tail_tol = 1e-6);

}  // namespace mcflab::wings
