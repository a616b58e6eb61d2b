#pragma once

// Adaptive embedded Runge-Kutta-Fehlberg 7(8) integrator, templated on the
// scalar type so the same stepper runs in double and in extended precision.
// The tableau entries are exact rationals; they are reconstructed in the
// working precision, so nothing is lost when Real carries 50 digits.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "mcflab/errors.hpp"

namespace mcflab {

template <class Real, int Dim>
using StateVec = std::array<Real, Dim>;

template <class Real, int Dim>
struct Rkf78Tableau {
    std::array<Real, 13> c{};
    std::array<std::array<Real, 12>, 13> a{};
    std::array<Real, 13> b{};  // 8th-order propagation weights
    Real err_w;                // 41/840; error = err_w*h*(k1 + k11 - k12 - k13)

    Rkf78Tableau() {
        auto q = [](long num, long den) { return Real(num) / Real(den); };
        c = {q(0, 1), q(2, 27), q(1, 9), q(1, 6), q(5, 12), q(1, 2), q(5, 6),
             q(1, 6), q(2, 3), q(1, 3), q(1, 1), q(0, 1), q(1, 1)};
        auto row = [&](int i, std::initializer_list<std::pair<long, long>> v) {
            int j = 0;
            for (auto& p : v) a[i][j++] = q(p.first, p.second);
        };
        row(1, {{2, 27}});
        row(2, {{1, 36}, {1, 12}});
        row(3, {{1, 24}, {0, 1}, {1, 8}});
        row(4, {{5, 12}, {0, 1}, {-25, 16}, {25, 16}});
        row(5, {{1, 20}, {0, 1}, {0, 1}, {1, 4}, {1, 5}});
        row(6, {{-25, 108}, {0, 1}, {0, 1}, {125, 108}, {-65, 27}, {125, 54}});
        row(7, {{31, 300}, {0, 1}, {0, 1}, {0, 1}, {61, 225}, {-2, 9}, {13, 900}});
        row(8, {{2, 1}, {0, 1}, {0, 1}, {-53, 6}, {704, 45}, {-107, 9}, {67, 90}, {3, 1}});
        row(9, {{-91, 108}, {0, 1}, {0, 1}, {23, 108}, {-976, 135}, {311, 54},
                {-19, 60}, {17, 6}, {-1, 12}});
        row(10, {{2383, 4100}, {0, 1}, {0, 1}, {-341, 164}, {4496, 1025}, {-301, 82},
                 {2133, 4100}, {45, 82}, {45, 164}, {18, 41}});
        row(11, {{3, 205}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {-6, 41}, {-3, 205},
                 {-3, 41}, {3, 41}, {6, 41}, {0, 1}});
        row(12, {{-1777, 4100}, {0, 1}, {0, 1}, {-341, 164}, {4496, 1025}, {-289, 82},
                 {2193, 4100}, {51, 82}, {33, 164}, {12, 41}, {0, 1}, {1, 1}});
        b = {q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(34, 105), q(9, 35),
             q(9, 35), q(9, 280), q(9, 280), q(0, 1), q(41, 840), q(41, 840)};
        err_w = q(41, 840);
    }

    // One step t -> t+h. Returns the 8th-order update and the embedded
    // 7th/8th error estimate (max-norm over components).
    template <class F>
    void step(const F& f, Real t, const StateVec<Real, Dim>& y, Real h,
              StateVec<Real, Dim>& y_new, Real& err_norm) const {
        std::array<StateVec<Real, Dim>, 13> k;
        k[0] = f(t, y);
        StateVec<Real, Dim> ytmp;
        for (int i = 1; i < 13; ++i) {
            for (int d = 0; d < Dim; ++d) {
                Real acc(0);
                for (int j = 0; j < i; ++j)
                    if (a[i][j] != 0) acc += a[i][j] * k[j][d];
                ytmp[d] = y[d] + h * acc;
            }
            k[i] = f(t + c[i] * h, ytmp);
        }
        err_norm = Real(0);
        for (int d = 0; d < Dim; ++d) {
            Real acc(0);
            for (int i = 0; i < 13; ++i)
                if (b[i] != 0) acc += b[i] * k[i][d];
            y_new[d] = y[d] + h * acc;
            Real e = err_w * h * (k[0][d] + k[10][d] - k[11][d] - k[12][d]);
            using std::abs;
            err_norm = std::max(err_norm, Real(abs(e)));
        }
    }
};

struct StepControl {
    double safety = 0.9;
    double shrink_min = 0.2;
    double grow_max = 5.0;
    double h_init = 1e-3;
    long max_steps = 50'000'000;
};

// Integrate y' = f(t, y) from t0 to t1 (t1 > t0), accepting steps while the
// embedded error estimate stays below tol*h (local error per unit step).
// `on_accept(t, y)` fires after every accepted step; `targets` is a sorted
// list of abscissae the integrator lands on exactly, each reported through
// `on_target(t, y)`.
template <class Real, int Dim, class F, class AcceptCb, class TargetCb>
void rkf78_integrate(const F& f, Real t0, StateVec<Real, Dim> y, Real t1,
                     double tol, const std::vector<Real>& targets,
                     AcceptCb&& on_accept, TargetCb&& on_target,
                     const StepControl& ctl = {}) {
    static const Rkf78Tableau<Real, Dim> tab;
    using std::abs;
    using std::isfinite;

    Real t = t0;
    Real h = Real(ctl.h_init);
    size_t next_target = 0;
    while (next_target < targets.size() && !(targets[next_target] > t0))
        ++next_target;  // skip targets at/before the start
    if (next_target < targets.size() && targets[next_target] == t0)
        on_target(t0, y);

    long steps = 0;
    while (t < t1) {
        // snap over sub-resolution gaps left by rejected clipped steps
        if (next_target < targets.size()) {
            Real gap = targets[next_target] - t;
            using std::abs;
            if (gap <= Real(4e-15) * std::max(Real(1), Real(abs(t)))) {
                t = targets[next_target];
                on_accept(t, y);
                on_target(t, y);
                ++next_target;
                while (next_target < targets.size() && !(targets[next_target] > t))
                    ++next_target;
                continue;
            }
        }
        bool clipped_target = false, clipped_end = false;
        Real h_try = h;
        // land on the target rather than producing a sliver step next to it
        if (next_target < targets.size() &&
            t + h_try + h_try / 50 >= targets[next_target]) {
            h_try = targets[next_target] - t;
            clipped_target = true;
        }
        if (!clipped_target && t + h_try + h_try / 50 >= t1) {
            h_try = t1 - t;
            clipped_end = true;
        }

        StateVec<Real, Dim> y_new;
        Real err;
        tab.step(f, t, y, h_try, y_new, err);

        bool finite = true;
        for (int d = 0; d < Dim; ++d)
            if (!isfinite(static_cast<double>(y_new[d]))) finite = false;
        if (!finite) {
            // overflow in a trial step: reject hard; give up only once the
            // step has collapsed to nothing (a genuine blowup of the solution)
            h = h_try * Real(ctl.shrink_min);
            if (static_cast<double>(h) <=
                4e-15 * std::max(1.0, std::fabs(static_cast<double>(t))))
                throw BlowupError("rkf78: non-finite state while integrating");
            if (++steps > ctl.max_steps)
                throw InternalError("rkf78: step budget exhausted");
            continue;
        }

        double e = static_cast<double>(err);
        double lim = tol * std::fabs(static_cast<double>(h_try));
        if (e <= lim) {
            t = clipped_end ? t1 : (clipped_target ? targets[next_target] : t + h_try);
            y = y_new;
            on_accept(t, y);
            if (clipped_target) {
                on_target(t, y);
                ++next_target;
                while (next_target < targets.size() && !(targets[next_target] > t))
                    ++next_target;
            }
        }
        double fac = (e > 0.0) ? ctl.safety * std::pow(lim / e, 1.0 / 8.0)
                               : ctl.grow_max;
        fac = std::clamp(fac, ctl.shrink_min, ctl.grow_max);
        if (clipped_target || clipped_end) {
            // resume from the natural step length, not the clipped one
            h = std::max(h, h_try) * Real(fac > 1.0 ? 1.0 : fac);
        } else {
            h = h_try * Real(fac);
        }
        if (++steps > ctl.max_steps)
            throw InternalError("rkf78: step budget exhausted");
    }
}

// Convenience wrapper: integrate and return only the final state.
template <class Real, int Dim, class F>
StateVec<Real, Dim> rkf78_solve(const F& f, Real t0, StateVec<Real, Dim> y0,
                                Real t1, double tol, const StepControl& ctl = {}) {
    StateVec<Real, Dim> out = y0;
    rkf78_integrate<Real, Dim>(
        f, t0, y0, t1, tol, {},
        [&](Real, const StateVec<Real, Dim>& y) { out = y; },
        [](Real, const StateVec<Real, Dim>&) {}, ctl);
    return out;
}

}  // namespace mcflab
