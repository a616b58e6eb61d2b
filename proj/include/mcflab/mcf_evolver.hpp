#pragma once

// Rotationally symmetric graphical mean curvature flow on [0, R_max] (or an
// annulus [r_min, R_max]),
//
//     u_t = u_rr / (1 + u_r^2) + (n-1) u_r / r,
//
// discretized in flux form: the curvature term is differenced as
// (arctan(u_r))_r, which is second-order accurate and makes the explicit
// update monotone in each stencil value under the CFL contract.  At the
// origin the symmetric ghost node gives u_t(0) = 2n (u_1 - u_0) / h^2.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mcflab/errors.hpp"

namespace mcflab::evolver {

struct RadialGrid {
    double r_min = 0.0;  // 0: full disc with symmetry at the origin
    double r_max = 1.0;
    int m = 16;  // interval count; nodes r_i = r_min + i h, i = 0..m

    double h() const { return (r_max - r_min) / m; }
    int nodes() const { return m + 1; }
    double node(int i) const { return r_min + (r_max - r_min) * i / m; }
    bool has_origin() const { return r_min == 0.0; }
    void validate() const;
};

struct EvolutionState {
    RadialGrid grid;
    int n = 2;
    std::vector<double> u;
    double t = 0.0;

    void validate() const;
};

struct BoundarySpec {
    std::function<double(double)> outer;  // Dirichlet trace g(t) at r_max
    std::function<double(double)> inner;  // Dirichlet at r_min (annulus only)
};

struct SchemeConfig {
    enum class Mode { explicit_euler, implicit_euler };
    Mode mode = Mode::explicit_euler;
    double cfl = 0.25;  // explicit: dt = cfl h^2
    double dt = 1e-3;   // implicit step
    double newton_tol = 1e-10;
    int newton_max_iters = 30;
};

/// Time derivative at every node (boundary slots are zero).
std::vector<double> radial_rhs(const EvolutionState& s);

/// Forward Euler step.  Refuses dt above the monotonicity bound
/// h^2 min(1/4, 1/(2n)) (the 1/(2n) factor comes from the origin stencil).
EvolutionState step_explicit(const EvolutionState& s, const BoundarySpec& bc,
                             double dt);

/// Backward Euler via damped Newton on the tridiagonal system.
EvolutionState step_implicit(const EvolutionState& s, const BoundarySpec& bc,
                             double dt, double newton_tol, int newton_max_iters);

/// Largest admissible explicit step for this state.
double explicit_dt_limit(const EvolutionState& s);

struct Trajectory {
    std::vector<EvolutionState> samples;
};

/// Thrown when a step fails mid-run; carries the samples collected so far.
struct EvolveAborted : StepError {
    Trajectory partial;
    EvolveAborted(const StepError& cause, double t, Trajectory sofar)
        : StepError(std::string(cause.what()) + " at t = " + std::to_string(t),
                    cause.residual),
          partial(std::move(sofar)) {}
};

/// Repeated stepping to horizon T with samples at the nearest completed step
/// at or after each requested time.  T = 0 returns the initial state only.
Trajectory evolve(const EvolutionState& initial, const BoundarySpec& bc,
                  double T, const SchemeConfig& scheme,
                  std::vector<double> sample_times = {});

}  // namespace mcflab::evolver
