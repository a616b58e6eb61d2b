#include "mcflab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcflab/csv_io.hpp"

namespace mcflab::experiments {
namespace {

constexpr double kBoundaryDecayTime = 1.0;  // e-folding of the boundary offset

std::vector<double> aligned_targets(const evolver::RadialGrid& grid, double r_hi) {
    std::vector<double> t;
    int k_max = static_cast<int>(std::ceil(r_hi / grid.h())) + 1;
    for (int k = 1; k <= k_max; ++k) {
        double r = grid.h() * k;
        if (r > r_hi) break;
        t.push_back(r);
    }
    return t;
}

// barrier heights resolved at the grid nodes with r > 2 R_wing
struct BarrierOnGrid {
    std::vector<int> idx;          // grid node index
    std::vector<double> w_plus;    // static upper barrier
    std::vector<double> w_minus;   // static lower barrier
};

BarrierOnGrid barriers_on_grid(const evolver::RadialGrid& grid,
                               const wings::WingPair& pair) {
    BarrierOnGrid b;
    const auto& up = pair.barrier_upper();
    const auto& lo = pair.barrier_lower();
    for (int i = 0; i <= grid.m; ++i) {
        double r = grid.node(i);
        if (r <= 2.0 * pair.R) continue;
        b.idx.push_back(i);
        b.w_plus.push_back(up.u[up.index_of(r)]);
        b.w_minus.push_back(lo.u[lo.index_of(r)]);
    }
    if (b.idx.empty())
        throw ConfigurationError("barrier check region r > 2 R_wing is empty");
    return b;
}

double violation_at(const evolver::EvolutionState& s, const BarrierOnGrid& b) {
    double v = 0.0;
    for (std::size_t k = 0; k < b.idx.size(); ++k) {
        double u = s.u[b.idx[k]];
        v = std::max(v, (b.w_minus[k] + s.t) - u);
        v = std::max(v, u - (b.w_plus[k] + s.t));
    }
    return std::max(v, 0.0);
}

std::vector<double> sample_schedule(double T, double dt) {
    std::vector<double> t;
    for (long k = 0; k * dt < T; ++k) t.push_back(k * dt);
    t.push_back(T);
    return t;
}

// adaptive Simpson; the stepper's embedded error estimate is blind to
// y-independent integrands, so quadrature gets its own routine
template <class F>
double simpson_rec(const F& f, double a, double fa, double b, double fb,
                   double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace

double PerturbationSpec::eval(double r) const {
    if (kind == Kind::compact_bump) {
        if (r >= rho) return 0.0;
        double x = r / rho;
        double s = 1.0 - x * x;
        return amplitude * s * s * s;
    }
    return amplitude * std::pow(1.0 + r, -p);
}

void PerturbationSpec::validate() const {
    if (!std::isfinite(amplitude)) throw ArgumentError("perturbation: amplitude not finite");
    if (kind == Kind::compact_bump && !(rho > 0.0))
        throw ArgumentError("perturbation: bump support radius must be positive");
    if (kind == Kind::slow_decay && !(p > 0.0))
        throw ArgumentError("perturbation: decay exponent must be positive");
}

std::string StabilityReport::to_csv() const {
    std::ostringstream os;
    os << "t,sup_dev,omega_count,barrier_violation\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        os << csv::fmt(t[i]) << "," << csv::fmt(sup_dev[i]) << "," << omega_count[i]
           << "," << csv::fmt(barrier_violation[i]) << "\n";
    return os.str();
}

void StabilityReport::validate() const {
    if (t.size() != sup_dev.size() || t.size() != omega_count.size() ||
        t.size() != barrier_violation.size() ||
        t.size() != omega_max_radius.size())
        throw ConsistencyError("StabilityReport: ragged series");
    for (double s : sup_dev)
        if (!(s >= 0.0)) throw ConsistencyError("StabilityReport: negative sup deviation");
}

bool StabilityReport::omega_nonincreasing_after_peak() const {
    if (omega_count.empty()) return true;
    int peak = *std::max_element(omega_count.begin(), omega_count.end());
    std::size_t last_peak = 0;
    for (std::size_t i = 0; i < omega_count.size(); ++i)
        if (omega_count[i] == peak) last_peak = i;
    for (std::size_t i = last_peak; i + 1 < omega_count.size(); ++i)
        if (omega_count[i + 1] > omega_count[i]) return false;
    return true;
}

StabilityReport run_soliton_stability(int n, const PerturbationSpec& pert,
                                      double epsilon, double r_wing,
                                      const evolver::RadialGrid& grid,
                                      const evolver::SchemeConfig& scheme, double T,
                                      double sample_dt) {
    grid.validate();
    pert.validate();
    if (!grid.has_origin())
        throw ArgumentError("run_soliton_stability: grid must start at the origin");
    if (!(epsilon > 0.0)) throw ArgumentError("run_soliton_stability: epsilon must be positive");
    if (!(r_wing > 0.0)) throw ArgumentError("run_soliton_stability: r_wing must be positive");
    if (!(T > 0.0)) throw ArgumentError("run_soliton_stability: horizon must be positive");
    if (!(sample_dt > 0.0)) throw ArgumentError("run_soliton_stability: sample_dt must be positive");

    // lemma hypothesis: |pert| <= eps beyond some R0 < R_max / 2
    double r0_hyp = 0.0;
    for (int i = 0; i <= grid.m; ++i)
        if (std::fabs(pert.eval(grid.node(i))) > epsilon) r0_hyp = grid.node(i);
    if (r0_hyp >= grid.r_max / 2.0)
        throw ConfigurationError(
            "run_soliton_stability: perturbation exceeds epsilon beyond R_max/2");

    const double tol = 1e-10;
    double r_build = std::max(grid.r_max, 20.0 * std::max(r_wing, double(n - 1)));
    std::vector<double> targets = aligned_targets(grid, r_build);

    soliton::Bowl bowl = soliton::bowl_translator(n, r_build + 1.0, tol, targets);
    wings::WingPair pair = wings::build_wing_pair(n, r_wing, r_build, 1.0, tol, targets);
    pair = wings::calibrate_shifts(pair, bowl.height, epsilon);

    std::vector<double> u_exact(grid.m + 1), u0(grid.m + 1);
    for (int i = 0; i <= grid.m; ++i) {
        u_exact[i] = bowl.u_at(grid.node(i));
        u0[i] = u_exact[i] + pert.eval(grid.node(i));
    }

    evolver::EvolutionState init{grid, n, u0, 0.0};
    double edge = pert.eval(grid.r_max);
    double u_edge = u_exact[grid.m];
    evolver::BoundarySpec bc;
    bc.outer = [u_edge, edge](double t) {
        return u_edge + t + edge * std::exp(-t / kBoundaryDecayTime);
    };

    evolver::Trajectory traj =
        evolver::evolve(init, bc, T, scheme, sample_schedule(T, sample_dt));

    BarrierOnGrid bar = barriers_on_grid(grid, pair);
    StabilityReport rep;
    rep.epsilon = epsilon;
    rep.h = grid.h();
    for (const auto& s : traj.samples) {
        double sup = 0.0, omega_r = -1.0;
        int omega = 0;
        for (int i = 0; i <= grid.m; ++i) {
            double dev = s.u[i] - u_exact[i] - s.t;
            sup = std::max(sup, std::fabs(dev));
            if (dev > 2.0 * epsilon) {
                ++omega;
                omega_r = grid.node(i);
            }
        }
        rep.t.push_back(s.t);
        rep.sup_dev.push_back(sup);
        rep.omega_count.push_back(omega);
        rep.omega_max_radius.push_back(omega_r);
        rep.barrier_violation.push_back(violation_at(s, bar));
        if (!rep.t_star && sup <= 2.0 * epsilon) rep.t_star = s.t;
    }
    rep.barrier_violation_max =
        *std::max_element(rep.barrier_violation.begin(), rep.barrier_violation.end());
    rep.validate();
    return rep;
}

double check_barrier_ordering(const evolver::Trajectory& traj,
                              const wings::WingPair& pair) {
    if (traj.samples.empty())
        throw ArgumentError("check_barrier_ordering: empty trajectory");
    if (traj.samples.front().n != pair.n)
        throw ArgumentError("check_barrier_ordering: dimension mismatch");
    BarrierOnGrid bar = barriers_on_grid(traj.samples.front().grid, pair);
    double v = 0.0;
    for (const auto& s : traj.samples) v = std::max(v, violation_at(s, bar));
    return v;
}

double catenoid_slope(int n, double c, double r) {
    if (n < 3) throw ArgumentError("catenoid: requires n >= 3");
    if (!(c > 0.0)) throw ArgumentError("catenoid: c must be positive");
    double x = c * std::pow(r, 1.0 - n);  // = c r^{-(n-1)}
    if (!(x < 1.0))
        throw ArgumentError("catenoid: radius inside the slope chart r > c^{1/(n-1)}");
    return x / std::sqrt(1.0 - x * x);
}

double catenoid_slope_deriv(int n, double c, double r) {
    double x = c * std::pow(r, 1.0 - n);
    if (!(x < 1.0))
        throw ArgumentError("catenoid: radius inside the slope chart r > c^{1/(n-1)}");
    return (1.0 - n) * x / r * std::pow(1.0 - x * x, -1.5);
}

double catenoid_static_residual(int n, double c, double r) {
    double fp = catenoid_slope(n, c, r);
    double fpp = catenoid_slope_deriv(n, c, r);
    return fpp / (1.0 + fp * fp) + (n - 1) * fp / r;
}

double catenoid_height_tail(int n, double c, double r) {
    if (n < 3) throw ArgumentError("catenoid: requires n >= 3");
    double neck = std::pow(c, 1.0 / (n - 1));
    if (!(r > neck))
        throw ArgumentError("catenoid: radius inside the slope chart r > c^{1/(n-1)}");

    // analytic series tail beyond r_far where x = c^2 r^{2-2n} <= 1e-4:
    // int_R^inf c s^{1-n} (1 - c^2 s^{2-2n})^{-1/2} ds
    //   = sum_k binom(2k,k)/4^k c^{2k+1} R^{2-n-(2n-2)k} / (n-2+(2n-2)k)
    double r_far = neck * std::pow(1e4, 1.0 / (2.0 * n - 2.0));
    double start = std::max(r, r_far);
    double tail = 0.0, a_k = 1.0;
    for (int k = 0; k < 12; ++k) {
        double power = 2.0 - n - (2.0 * n - 2.0) * k;
        tail += a_k * std::pow(c, 2 * k + 1) * std::pow(start, power) /
                (n - 2.0 + (2.0 * n - 2.0) * k);
        a_k *= (2.0 * k + 1.0) / (2.0 * k + 2.0);  // binom(2k,k)/4^k recurrence
    }
    if (r >= r_far) return tail;

    auto f = [&](double s) { return catenoid_slope(n, c, s); };
    return adaptive_simpson(f, r, r_far, 1e-13) + tail;
}

StabilityReport run_plane_stability(int n, const PerturbationSpec& pert,
                                    double catenoid_c, double epsilon,
                                    const evolver::RadialGrid& grid,
                                    const evolver::SchemeConfig& scheme, double T,
                                    double sample_dt) {
    if (n < 3)
        throw ArgumentError("run_plane_stability: requires n >= 3 "
                            "(the n-catenoid is not plane-asymptotic at n = 2)");
    grid.validate();
    pert.validate();
    if (!(catenoid_c > 0.0)) throw ArgumentError("run_plane_stability: c must be positive");
    if (!(epsilon > 0.0)) throw ArgumentError("run_plane_stability: epsilon must be positive");
    if (!(T > 0.0)) throw ArgumentError("run_plane_stability: horizon must be positive");

    double r0_hyp = 0.0;
    for (int i = 0; i <= grid.m; ++i)
        if (std::fabs(pert.eval(grid.node(i))) > epsilon) r0_hyp = grid.node(i);
    if (r0_hyp >= grid.r_max / 2.0)
        throw ConfigurationError(
            "run_plane_stability: perturbation exceeds epsilon beyond R_max/2");

    double neck = std::pow(catenoid_c, 1.0 / (n - 1));
    if (!(2.0 * neck < grid.r_max))
        throw ConfigurationError("run_plane_stability: catenoid neck outside the domain");

    std::vector<double> u0(grid.m + 1);
    for (int i = 0; i <= grid.m; ++i) u0[i] = pert.eval(grid.node(i));

    evolver::EvolutionState init{grid, n, u0, 0.0};
    double edge = pert.eval(grid.r_max);
    evolver::BoundarySpec bc;
    bc.outer = [edge](double t) { return edge * std::exp(-t / kBoundaryDecayTime); };

    evolver::Trajectory traj =
        evolver::evolve(init, bc, T, scheme, sample_schedule(T, sample_dt));

    // static catenoid barriers +-(eps + tail) outside twice the neck radius
    std::vector<int> idx;
    std::vector<double> wall;
    for (int i = 0; i <= grid.m; ++i) {
        double r = grid.node(i);
        if (r <= 2.0 * neck) continue;
        idx.push_back(i);
        wall.push_back(epsilon + catenoid_height_tail(n, catenoid_c, r));
    }

    StabilityReport rep;
    rep.epsilon = epsilon;
    rep.h = grid.h();
    for (const auto& s : traj.samples) {
        double sup = 0.0, omega_r = -1.0;
        int omega = 0;
        for (int i = 0; i <= grid.m; ++i) {
            double dev = s.u[i];
            sup = std::max(sup, std::fabs(dev));
            if (dev > 2.0 * epsilon) {
                ++omega;
                omega_r = grid.node(i);
            }
        }
        double viol = 0.0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            viol = std::max(viol, s.u[idx[k]] - wall[k]);
            viol = std::max(viol, -wall[k] - s.u[idx[k]]);
        }
        rep.t.push_back(s.t);
        rep.sup_dev.push_back(sup);
        rep.omega_count.push_back(omega);
        rep.omega_max_radius.push_back(omega_r);
        rep.barrier_violation.push_back(std::max(viol, 0.0));
        if (!rep.t_star && sup <= 2.0 * epsilon) rep.t_star = s.t;
    }
    rep.barrier_violation_max =
        *std::max_element(rep.barrier_violation.begin(), rep.barrier_violation.end());
    rep.validate();
    return rep;
}

double sphere_envelope_height(int n, double C, double r, double tau) {
    double radius0_sq = 2.0 * n * tau + r * r + 1.0 / (4.0 * C * C);
    double center = 1.0 / (2.0 * C) + C * (2.0 * n * tau + r * r);
    return center - std::sqrt(radius0_sq - 2.0 * n * tau - r * r);
}

double quadratic_growth_check(int n, double C, const evolver::RadialGrid& grid,
                              const evolver::SchemeConfig& scheme, double tau) {
    grid.validate();
    if (!(C > 0.0)) throw ArgumentError("quadratic_growth_check: C must be positive");
    if (!(tau > 0.0)) throw ArgumentError("quadratic_growth_check: tau must be positive");
    if (!grid.has_origin())
        throw ArgumentError("quadratic_growth_check: grid must start at the origin");

    std::vector<double> u0(grid.m + 1);
    for (int i = 0; i <= grid.m; ++i) {
        double r = grid.node(i);
        u0[i] = C * r * r;
    }
    evolver::EvolutionState state{grid, n, u0, 0.0};
    evolver::BoundarySpec bc;
    double edge = C * grid.r_max * grid.r_max;
    bc.outer = [edge, C, n](double t) { return edge + 2.0 * C * n * t; };

    double dt = scheme.mode == evolver::SchemeConfig::Mode::explicit_euler
                    ? scheme.cfl * grid.h() * grid.h()
                    : scheme.dt;
    double excess = 0.0;
    while (state.t < tau) {
        state = scheme.mode == evolver::SchemeConfig::Mode::explicit_euler
                    ? evolver::step_explicit(state, bc, dt)
                    : evolver::step_implicit(state, bc, dt, scheme.newton_tol,
                                            scheme.newton_max_iters);
        for (int i = 0; i <= grid.m; ++i) {
            double r = grid.node(i);
            excess = std::max(excess,
                              state.u[i] - (C * r * r + 2.0 * C * n * state.t));
        }
    }
    return excess;
}

}  // namespace mcflab::experiments
