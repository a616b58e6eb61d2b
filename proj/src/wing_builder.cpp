#include "mcflab/wing_builder.hpp"

#include <algorithm>
#include <cmath>

#include "mcflab/csv_io.hpp"
#include "mcflab/rkf78.hpp"

namespace mcflab::wings {
namespace {

// One side of the arc in its own parameter s >= 0 (s = y - y0 upward,
// s = y0 - y downward).  State (h, v) with v = dh/ds; the sign flag picks the
// acceleration branch: upward v = h', downward v = -h'.
struct SideOde {
    int n;
    bool downward;
    StateVec<double, 2> operator()(double, const StateVec<double, 2>& z) const {
        double h = z[0], v = z[1];
        double acc = downward ? ((n - 1) / h + v) * (1.0 + v * v)
                              : ((n - 1) / h - v) * (1.0 + v * v);
        return {v, acc};
    }
};

struct SideArc {
    std::vector<double> s, h, v;  // event point is the last sample
};

// Fixed-step march with the RKF78 stage, bisecting the last step onto the
// stop condition.
template <class StopFn>
SideArc march_side(int n, double R, bool downward, long budget, double step,
                   const StopFn& stop) {
    static const Rkf78Tableau<double, 2> tab;
    SideOde f{n, downward};
    SideArc out;
    double s = 0.0;
    StateVec<double, 2> z{R, 0.0}, zn;
    double err;
    out.s.push_back(0.0);
    out.h.push_back(R);
    out.v.push_back(0.0);
    for (long k = 0; k < budget; ++k) {
        tab.step(f, s, z, step, zn, err);
        if (!(zn[0] > 0.0))
            throw GeometryError("wing arc: h reached zero before the switch");
        if (!std::isfinite(zn[0]) || !std::isfinite(zn[1]))
            throw GeometryError("wing arc: non-finite state; reduce step");
        if (stop(zn)) {
            // bisect the step fraction onto the event
            double lo = 0.0, hi = 1.0;
            StateVec<double, 2> zev = zn;
            for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
                double mid = 0.5 * (lo + hi);
                StateVec<double, 2> zm;
                tab.step(f, s, z, step * mid, zm, err);
                if (stop(zm)) {
                    hi = mid;
                    zev = zm;
                } else {
                    lo = mid;
                }
            }
            out.s.push_back(s + step * hi);
            out.h.push_back(zev[0]);
            out.v.push_back(zev[1]);
            return out;
        }
        s += step;
        z = zn;
        out.s.push_back(s);
        out.h.push_back(z[0]);
        out.v.push_back(z[1]);
    }
    throw ConfigurationError("wing arc: step budget exhausted before the switch");
}

// continue a side past its event for the chart-handoff consistency check
SideArc continue_side(int n, bool downward, const SideArc& base, double step,
                      int extra) {
    static const Rkf78Tableau<double, 2> tab;
    SideOde f{n, downward};
    SideArc out;
    double s = base.s.back();
    StateVec<double, 2> z{base.h.back(), base.v.back()}, zn;
    double err;
    for (int k = 0; k < extra; ++k) {
        tab.step(f, s, z, step, zn, err);
        if (!std::isfinite(zn[0]) || !std::isfinite(zn[1]) || !(zn[0] > 0.0)) break;
        s += step;
        z = zn;
        out.s.push_back(s);
        out.h.push_back(z[0]);
        out.v.push_back(z[1]);
        if (std::fabs(z[1]) > 8.0) break;  // keep clear of the slope blowup
    }
    return out;
}

double default_step(int n, double R) { return 1e-3 * std::min(R / (n - 1), 1.0); }

}  // namespace

double h_accel(int n, double h, double dh) {
    if (!(h > 0.0)) throw ArgumentError("h_accel: h must be positive");
    return ((n - 1) / h - dh) * (1.0 + dh * dh);
}

std::size_t InnerArc::turning_index() const {
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] == y0) return i;
    throw InternalError("inner arc lost its turning point");
}

std::string InnerArc::to_csv() const { return csv::two_columns("y", "h", y, h); }

InnerArc integrate_height_over_axis(int n, double R, long arc_budget, double step,
                                    double switch_slope) {
    if (n < 2) throw ArgumentError("integrate_height_over_axis: n must be >= 2");
    if (!(R > 0.0)) throw ArgumentError("integrate_height_over_axis: R must be positive");
    if (!(step > 0.0) || step * (n - 1) / R > 0.2)
        throw ArgumentError("integrate_height_over_axis: step does not resolve "
                            "the neck curvature (n-1)/R");
    if (arc_budget < 16) throw ArgumentError("integrate_height_over_axis: budget too small");
    if (!(switch_slope > 0.0))
        throw ArgumentError("integrate_height_over_axis: switch_slope must be positive");
    double v_stop = 1.0 / switch_slope;

    // downward side: |h'| grows monotonically through the stop value
    SideArc dn = march_side(n, R, true, arc_budget, step,
                            [&](const StateVec<double, 2>& z) { return z[1] >= v_stop; });
    // upward side: stop at the slope threshold or at the |h'| peak, whichever
    // comes first (for R > (n-1)*switch_slope the threshold is never reached)
    SideArc up = march_side(n, R, false, arc_budget, step,
                            [&](const StateVec<double, 2>& z) {
                                return z[1] >= v_stop || z[1] * z[0] >= double(n - 1);
                            });

    InnerArc arc;
    arc.n = n;
    arc.R = R;
    arc.y0 = 0.0;
    std::size_t m = dn.s.size();
    for (std::size_t i = 0; i < m; ++i) {  // downward side, most negative first
        std::size_t j = m - 1 - i;
        if (dn.s[j] == 0.0) continue;      // turning point added once below
        arc.y.push_back(-dn.s[j]);
        arc.h.push_back(dn.h[j]);
        arc.dh.push_back(-dn.v[j]);
    }
    arc.y.push_back(0.0);
    arc.h.push_back(R);
    arc.dh.push_back(0.0);
    for (std::size_t i = 1; i < up.s.size(); ++i) {
        arc.y.push_back(up.s[i]);
        arc.h.push_back(up.h[i]);
        arc.dh.push_back(up.v[i]);
    }
    return arc;
}

WingPair build_wing_pair(int n, double R, double r_max, double switch_slope,
                         double tol, std::vector<double> targets) {
    if (n < 2) throw ArgumentError("build_wing_pair: n must be >= 2");
    if (!(R > 0.0)) throw ArgumentError("build_wing_pair: R must be positive");
    if (!(r_max >= 20.0 * std::max(R, double(n - 1))))
        throw ArgumentError("build_wing_pair: r_max must be >= 20 max(R, n-1)");
    if (!(switch_slope >= 0.5 && switch_slope <= 2.0))
        throw ArgumentError("build_wing_pair: switch_slope must lie in [0.5, 2]");

    WingPair w;
    w.n = n;
    w.R = R;
    w.switch_slope = switch_slope;
    double step = default_step(n, R);
    w.arc = integrate_height_over_axis(n, R, 4'000'000, step, switch_slope);

    // branch construction from each arc end
    auto make_branch = [&](bool lower) {
        std::size_t idx = lower ? 0 : w.arc.size() - 1;
        double y_sw = w.arc.y[idx], h_sw = w.arc.h[idx], dh_sw = w.arc.dh[idx];
        double r0 = h_sw;
        double phi0 = 1.0 / dh_sw;  // radial slope; negative on the lower side
        std::vector<double> tg;
        for (double t : targets)
            if (t > r0 * (1.0 + 1e-12) && t <= r_max) tg.push_back(t);
        soliton::PhiProfile p = soliton::integrate_phi(n, r0, phi0, r_max, tol, tg);
        soliton::HeightProfile hp = soliton::height_from_phi(p, r0, y_sw);

        // chart-handoff consistency: continue the arc a few steps past the
        // event and compare against the branch near the switch point (farther
        // out the comparison only measures interpolation error)
        SideArc cont = continue_side(
            n, lower, SideArc{{std::fabs(y_sw)}, {h_sw}, {lower ? -dh_sw : dh_sw}},
            step, 3);
        double tol_check = std::max(300.0 * tol, 3e-9);
        for (std::size_t i = 0; i < cont.s.size(); ++i) {
            double rr = cont.h[i];
            if (rr <= r0 || rr > hp.r_max()) continue;
            double y_arc = lower ? -cont.s[i] : cont.s[i];
            double y_branch = hp.eval(rr);
            if (std::fabs(y_arc - y_branch) > tol_check * (1.0 + std::fabs(y_arc)))
                throw ConsistencyError("build_wing_pair: chart handoff mismatch");
        }
        return std::pair{hp, r0};
    };

    auto [lowerp, r_lo] = make_branch(true);
    auto [upperp, r_up] = make_branch(false);
    w.lower_branch = std::move(lowerp);
    w.upper_branch = std::move(upperp);
    w.r_switch_lower = r_lo;
    w.r_switch_upper = r_up;
    return w;
}

double asymptotic_offset(const soliton::HeightProfile& branch,
                         const soliton::HeightProfile& bowl, double tail_tol) {
    if (branch.n != bowl.n)
        throw ArgumentError("asymptotic_offset: dimension mismatch");
    // common nodes, walking both sorted sample sets
    auto match = [](double a, double b) {
        return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(a));
    };
    std::vector<std::pair<std::size_t, std::size_t>> common;
    std::size_t i = 0, j = 0;
    while (i < branch.size() && j < bowl.size()) {
        if (match(branch.r[i], bowl.r[j])) {
            common.emplace_back(i, j);
            ++i;
            ++j;
        } else if (branch.r[i] < bowl.r[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    if (common.size() < 3)
        throw ArgumentError("asymptotic_offset: too few common nodes");
    double r_out = branch.r[common.back().first];
    double r_in = branch.r[common.front().first];
    if (!(r_out >= 2.0 * r_in))
        throw ArgumentError("asymptotic_offset: tail shorter than half the range");

    auto diff_at = [&](std::size_t k) {
        return branch.u[common[k].first] - bowl.u[common[k].second];
    };
    // nearest common node to r_out/2
    std::size_t half = 0;
    double best = 1e300;
    for (std::size_t k = 0; k < common.size(); ++k) {
        double d = std::fabs(branch.r[common[k].first] - 0.5 * r_out);
        if (d < best) {
            best = d;
            half = k;
        }
    }
    if (best > 0.1 * r_out)
        throw ArgumentError("asymptotic_offset: no common node near half range");
    double est_out = diff_at(common.size() - 1);
    double est_half = diff_at(half);
    if (std::fabs(est_out - est_half) > tail_tol)
        throw TailError("asymptotic_offset: tail estimate unstable under doubling");
    return est_out;
}

WingPair calibrate_shifts(WingPair pair, const soliton::HeightProfile& bowl,
                          double epsilon, double tail_tol) {
    if (pair.n != bowl.n)
        throw ArgumentError("calibrate_shifts: dimension mismatch");
    if (!(epsilon >= 0.0))
        throw ArgumentError("calibrate_shifts: epsilon must be >= 0");
    double c_plus_raw = asymptotic_offset(pair.lower_branch, bowl, tail_tol);
    double c_minus_raw = asymptotic_offset(pair.upper_branch, bowl, tail_tol);
    pair.shift_plus = epsilon - c_plus_raw;
    pair.shift_minus = -epsilon - c_minus_raw;
    pair.lower_branch = pair.lower_branch.shifted(pair.shift_plus);
    pair.upper_branch = pair.upper_branch.shifted(pair.shift_minus);
    pair.c_plus = asymptotic_offset(pair.lower_branch, bowl, tail_tol);
    pair.c_minus = asymptotic_offset(pair.upper_branch, bowl, tail_tol);
    pair.calibrated = true;
    return pair;
}

}  // namespace mcflab::wings
