#include "mcflab/mcf_evolver.hpp"

#include <algorithm>
#include <cmath>

namespace mcflab::evolver {

void RadialGrid::validate() const {
    if (m < 16) throw ArgumentError("RadialGrid: need at least 16 intervals");
    if (!(r_max > r_min) || r_min < 0.0)
        throw ArgumentError("RadialGrid: require 0 <= r_min < r_max");
}

void EvolutionState::validate() const {
    grid.validate();
    if (n < 2) throw ArgumentError("EvolutionState: n must be >= 2");
    if (static_cast<int>(u.size()) != grid.nodes())
        throw ArgumentError("EvolutionState: u length does not match the grid");
    for (double v : u)
        if (!std::isfinite(v)) throw ArgumentError("EvolutionState: non-finite value");
}

std::vector<double> radial_rhs(const EvolutionState& s) {
    s.validate();
    const int m = s.grid.m;
    const double h = s.grid.h();
    std::vector<double> f(m + 1, 0.0);
    if (s.grid.has_origin())
        f[0] = 2.0 * s.n * (s.u[1] - s.u[0]) / (h * h);
    for (int i = 1; i < m; ++i) {
        double dp = (s.u[i + 1] - s.u[i]) / h;
        double dm = (s.u[i] - s.u[i - 1]) / h;
        double r = s.grid.node(i);
        f[i] = (std::atan(dp) - std::atan(dm)) / h +
               (s.n - 1) * (dp + dm) / (2.0 * r);
    }
    return f;
}

double explicit_dt_limit(const EvolutionState& s) {
    double h = s.grid.h();
    double cap = s.grid.has_origin() ? 1.0 / (2.0 * s.n) : 0.25;
    return cap * h * h;
}

EvolutionState step_explicit(const EvolutionState& s, const BoundarySpec& bc,
                             double dt) {
    if (!(dt > 0.0)) throw ArgumentError("step_explicit: dt must be positive");
    if (dt > explicit_dt_limit(s) * (1.0 + 1e-12))
        throw ConfigurationError(
            "step_explicit: dt violates the monotone CFL bound h^2 min(1/4, 1/(2n))");
    if (!bc.outer) throw ArgumentError("step_explicit: missing outer boundary data");
    if (!s.grid.has_origin() && !bc.inner)
        throw ArgumentError("step_explicit: annulus grid needs inner boundary data");

    std::vector<double> f = radial_rhs(s);
    EvolutionState out = s;
    out.t = s.t + dt;
    const int m = s.grid.m;
    for (int i = 0; i < m; ++i) out.u[i] = s.u[i] + dt * f[i];
    out.u[m] = bc.outer(out.t);
    if (!s.grid.has_origin()) out.u[0] = bc.inner(out.t);
    return out;
}

EvolutionState step_implicit(const EvolutionState& s, const BoundarySpec& bc,
                             double dt, double newton_tol, int newton_max_iters) {
    if (!(dt > 0.0)) throw ArgumentError("step_implicit: dt must be positive");
    if (!(newton_tol > 0.0)) throw ArgumentError("step_implicit: newton_tol must be positive");
    if (!bc.outer) throw ArgumentError("step_implicit: missing outer boundary data");
    if (!s.grid.has_origin() && !bc.inner)
        throw ArgumentError("step_implicit: annulus grid needs inner boundary data");
    s.validate();

    const int m = s.grid.m;
    const double h = s.grid.h();
    const double t_new = s.t + dt;
    std::vector<double> v = s.u;  // Newton iterate, boundary slots pinned
    v[m] = bc.outer(t_new);
    if (!s.grid.has_origin()) v[0] = bc.inner(t_new);

    auto residual = [&](const std::vector<double>& w, std::vector<double>& F) {
        F.assign(m + 1, 0.0);
        if (s.grid.has_origin())
            F[0] = w[0] - s.u[0] - dt * 2.0 * s.n * (w[1] - w[0]) / (h * h);
        for (int i = 1; i < m; ++i) {
            double dp = (w[i + 1] - w[i]) / h;
            double dm = (w[i] - w[i - 1]) / h;
            double r = s.grid.node(i);
            double rhs = (std::atan(dp) - std::atan(dm)) / h +
                         (s.n - 1) * (dp + dm) / (2.0 * r);
            F[i] = w[i] - s.u[i] - dt * rhs;
        }
    };
    auto max_abs = [](const std::vector<double>& F) {
        double a = 0.0;
        for (double x : F) a = std::max(a, std::fabs(x));
        return a;
    };

    std::vector<double> F(m + 1), lo(m + 1), di(m + 1), up(m + 1), rhs(m + 1),
        step_dir(m + 1), trial(m + 1), Ft(m + 1);
    residual(v, F);
    double fnorm = max_abs(F);
    for (int it = 0; it < newton_max_iters; ++it) {
        if (fnorm <= newton_tol) break;
        // tridiagonal Jacobian; boundary rows are identity with zero residual
        lo[0] = 0.0;
        up[m] = 0.0;
        di[m] = 1.0;
        rhs[m] = 0.0;
        if (s.grid.has_origin()) {
            di[0] = 1.0 + dt * 2.0 * s.n / (h * h);
            up[0] = -dt * 2.0 * s.n / (h * h);
        } else {
            di[0] = 1.0;
            up[0] = 0.0;
        }
        rhs[0] = s.grid.has_origin() ? -F[0] : 0.0;
        for (int i = 1; i < m; ++i) {
            double dp = (v[i + 1] - v[i]) / h;
            double dm = (v[i] - v[i - 1]) / h;
            double ap = 1.0 / (1.0 + dp * dp), am = 1.0 / (1.0 + dm * dm);
            double b = (s.n - 1) / s.grid.node(i);
            di[i] = 1.0 + dt * (ap + am) / (h * h);
            up[i] = -dt * (ap / (h * h) + b / (2.0 * h));
            lo[i] = -dt * (am / (h * h) - b / (2.0 * h));
            rhs[i] = -F[i];
        }
        // Thomas solve
        for (int i = 1; i <= m; ++i) {
            double w = lo[i] / di[i - 1];
            di[i] -= w * up[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        step_dir[m] = rhs[m] / di[m];
        for (int i = m - 1; i >= 0; --i)
            step_dir[i] = (rhs[i] - up[i] * step_dir[i + 1]) / di[i];

        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= 1.0 / 1024.0) {
            for (int i = 0; i <= m; ++i) trial[i] = v[i] + lambda * step_dir[i];
            residual(trial, Ft);
            double fn = max_abs(Ft);
            if (fn < fnorm || fn <= newton_tol) {
                v = trial;
                F = Ft;
                fnorm = fn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw StepError("step_implicit: damped Newton stalled", fnorm);
    }
    if (fnorm > newton_tol)
        throw StepError("step_implicit: Newton did not converge within iteration budget",
                        fnorm);

    EvolutionState out = s;
    out.t = t_new;
    out.u = std::move(v);
    return out;
}

Trajectory evolve(const EvolutionState& initial, const BoundarySpec& bc, double T,
                  const SchemeConfig& scheme, std::vector<double> sample_times) {
    initial.validate();
    if (T < 0.0) throw ArgumentError("evolve: horizon must be >= 0");
    if (!(scheme.cfl > 0.0 && scheme.cfl <= 0.25))
        throw ConfigurationError("evolve: cfl must lie in (0, 0.25]");

    Trajectory traj;
    if (T == 0.0) {
        traj.samples.push_back(initial);
        return traj;
    }

    std::sort(sample_times.begin(), sample_times.end());
    sample_times.erase(std::unique(sample_times.begin(), sample_times.end()),
                       sample_times.end());
    std::erase_if(sample_times, [&](double t) { return t < 0.0 || t > T; });

    double dt;
    if (scheme.mode == SchemeConfig::Mode::explicit_euler) {
        dt = scheme.cfl * initial.grid.h() * initial.grid.h();
        if (dt > explicit_dt_limit(initial) * (1.0 + 1e-12))
            throw ConfigurationError(
                "evolve: cfl violates the origin monotonicity bound 1/(2n)");
    } else {
        dt = scheme.dt;
        if (!(dt > 0.0)) throw ConfigurationError("evolve: implicit dt must be positive");
    }

    EvolutionState state = initial;
    std::size_t next = 0;
    while (next < sample_times.size() && sample_times[next] <= state.t) {
        traj.samples.push_back(state);
        ++next;
    }
    long max_steps = static_cast<long>(std::ceil(T / dt)) + 2;
    for (long k = 0; k < max_steps && state.t < T; ++k) {
        try {
            state = (scheme.mode == SchemeConfig::Mode::explicit_euler)
                        ? step_explicit(state, bc, dt)
                        : step_implicit(state, bc, dt, scheme.newton_tol,
                                        scheme.newton_max_iters);
        } catch (const StepError& e) {
            throw EvolveAborted(e, state.t, std::move(traj));
        }
        while (next < sample_times.size() && state.t >= sample_times[next]) {
            traj.samples.push_back(state);
            ++next;
        }
    }
    if (sample_times.empty()) traj.samples.push_back(state);
    return traj;
}

}  // namespace mcflab::evolver
