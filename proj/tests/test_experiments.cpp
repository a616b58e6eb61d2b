#include <doctest.h>

#include <cmath>

#include "mcflab/experiments.hpp"

using namespace mcflab;
using namespace mcflab::experiments;
using evolver::RadialGrid;
using evolver::SchemeConfig;

namespace {

PerturbationSpec bump(double a, double rho) {
    PerturbationSpec p;
    p.kind = PerturbationSpec::Kind::compact_bump;
    p.amplitude = a;
    p.rho = rho;
    return p;
}

SchemeConfig explicit_scheme(int n) {
    SchemeConfig s;
    s.mode = SchemeConfig::Mode::explicit_euler;
    s.cfl = 0.9 / (2.0 * n);
    return s;
}

}  // namespace

TEST_CASE("perturbation shapes") {
    PerturbationSpec b = bump(2.0, 3.0);
    CHECK(b.eval(0.0) == 2.0);
    CHECK(b.eval(3.0) == 0.0);
    CHECK(b.eval(5.0) == 0.0);
    CHECK(b.eval(1.0) > 0.0);
    PerturbationSpec s;
    s.kind = PerturbationSpec::Kind::slow_decay;
    s.amplitude = 1.0;
    s.p = 0.5;
    CHECK(s.eval(0.0) == 1.0);
    CHECK(s.eval(3.0) == doctest::Approx(0.5));
}

TEST_CASE("zero perturbation stays within discretization drift of the translator") {
    RadialGrid g{0.0, 20.0, 200};
    StabilityReport rep = run_soliton_stability(2, bump(0.0, 3.0), 0.05, 2.0, g,
                                                explicit_scheme(2), 3.0, 0.5);
    REQUIRE(rep.t_star.has_value());
    CHECK(*rep.t_star == 0.0);
    for (double s : rep.sup_dev) CHECK(s <= 10.0 * g.h() * g.h());
    CHECK(rep.barrier_violation_max <= 20.0 * g.h() * g.h());
}

TEST_CASE("small stability run relaxes back to the bowl between the wings") {
    RadialGrid g{0.0, 30.0, 300};
    double eps = 0.1;
    StabilityReport rep = run_soliton_stability(2, bump(0.5, 2.0), eps, 3.0, g,
                                                explicit_scheme(2), 30.0, 0.5);
    rep.validate();
    REQUIRE(rep.t_star.has_value());
    CHECK(*rep.t_star < 30.0);
    CHECK(rep.barrier_violation_max <= 20.0 * g.h() * g.h());
    // report sanity: s(t) never exceeds s(0) by more than the drift allowance
    for (double s : rep.sup_dev) CHECK(s <= rep.sup_dev.front() + 20.0 * g.h() * g.h());
    CHECK(rep.omega_nonincreasing_after_peak());
    // after T*, the overshoot set stays empty
    for (std::size_t i = 0; i < rep.t.size(); ++i)
        if (rep.t[i] >= *rep.t_star) CHECK(rep.omega_count[i] == 0);
    // barrier sandwich localization: overshoots live inside 2 R_wing + h
    for (std::size_t i = 0; i < rep.t.size(); ++i)
        if (rep.omega_count[i] > 0)
            CHECK(rep.omega_max_radius[i] <= 2.0 * 3.0 + g.h() + 1e-9);
}

TEST_CASE("perturbation and its negation give matching deviation histories") {
    RadialGrid g{0.0, 25.0, 250};
    StabilityReport up = run_soliton_stability(2, bump(0.4, 2.0), 0.1, 3.0, g,
                                               explicit_scheme(2), 10.0, 1.0);
    StabilityReport dn = run_soliton_stability(2, bump(-0.4, 2.0), 0.1, 3.0, g,
                                               explicit_scheme(2), 10.0, 1.0);
    REQUIRE(up.t.size() == dn.t.size());
    for (std::size_t i = 0; i < up.t.size(); ++i)
        CHECK(std::fabs(up.sup_dev[i] - dn.sup_dev[i]) <= 20.0 * g.h() * g.h());
}

TEST_CASE("slow-decay perturbations relax too (no decay rate imposed)") {
    PerturbationSpec slow;
    slow.kind = PerturbationSpec::Kind::slow_decay;
    slow.amplitude = 0.2;
    slow.p = 0.5;  // |pert| <= eps=0.1 beyond R0 = 3 < R_max/2
    RadialGrid g{0.0, 25.0, 250};
    StabilityReport rep = run_soliton_stability(2, slow, 0.1, 3.0, g,
                                                explicit_scheme(2), 25.0, 0.5);
    REQUIRE(rep.t_star.has_value());
    CHECK(rep.barrier_violation_max <= 20.0 * g.h() * g.h());
    CHECK(rep.sup_dev.back() <= 0.2);
}

TEST_CASE("check_barrier_ordering on an evolved bowl trajectory") {
    int n = 2;
    double r_wing = 1.0;
    std::vector<double> targets;
    for (int k = 1; 0.1 * k <= 24.0; ++k) targets.push_back(0.1 * k);
    soliton::Bowl bowl = soliton::bowl_translator(n, 25.0, 1e-11, targets);
    wings::WingPair pair = wings::build_wing_pair(n, r_wing, 24.0, 1.0, 1e-11, targets);
    pair = wings::calibrate_shifts(pair, bowl.height, 0.05);

    RadialGrid g{0.0, 20.0, 200};
    std::vector<double> u0(g.nodes());
    for (int i = 0; i <= g.m; ++i) u0[i] = bowl.u_at(g.node(i));
    evolver::EvolutionState init{g, n, u0, 0.0};
    evolver::BoundarySpec bc;
    double edge = u0.back();
    bc.outer = [edge](double t) { return edge + t; };
    evolver::Trajectory traj =
        evolver::evolve(init, bc, 2.0, explicit_scheme(n), {0.0, 1.0, 2.0});

    double viol = check_barrier_ordering(traj, pair);
    // at t = 0 the ordering holds by construction; afterwards up to drift
    CHECK(viol <= 20.0 * g.h() * g.h());
    evolver::Trajectory t0only;
    t0only.samples.push_back(init);
    CHECK(check_barrier_ordering(t0only, pair) == 0.0);
}

TEST_CASE("hypothesis violation is a configuration error") {
    // |pert| > eps persists out to ~0.79*rho = 11.1 > R_max/2
    RadialGrid g{0.0, 20.0, 200};
    CHECK_THROWS_AS(run_soliton_stability(2, bump(1.0, 14.0), 0.05, 5.0, g,
                                          explicit_scheme(2), 2.0, 0.5),
                    ConfigurationError);
}

TEST_CASE("evolved wings stay above the evolved bowl under the monotone scheme") {
    // annulus comparison: both initial states are exact translators, ordered;
    // the explicit scheme preserves the ordering exactly
    int n = 2;
    double r_wing = 1.0, r_lo = 4.0, r_hi = 24.0;
    std::vector<double> targets;
    for (int k = 0; 4.0 + 0.05 * k <= r_hi; ++k) targets.push_back(4.0 + 0.05 * k);
    soliton::Bowl bowl = soliton::bowl_translator(n, r_hi + 1.0, 1e-11, targets);
    wings::WingPair pair = wings::build_wing_pair(n, r_wing, r_hi, 1.0, 1e-11, targets);
    pair = wings::calibrate_shifts(pair, bowl.height, 0.05);

    RadialGrid g{r_lo, r_hi, 400};
    std::vector<double> uw(g.nodes()), ub(g.nodes());
    const auto& wp = pair.barrier_upper();
    for (int i = 0; i <= g.m; ++i) {
        uw[i] = wp.u[wp.index_of(g.node(i))];
        ub[i] = bowl.height.u[bowl.height.index_of(g.node(i))];
    }
    evolver::EvolutionState a{g, n, ub, 0.0}, b{g, n, uw, 0.0};
    evolver::BoundarySpec bca, bcb;
    double ai = ub.front(), ao = ub.back(), bi = uw.front(), bo = uw.back();
    bca.inner = [ai](double t) { return ai + t; };
    bca.outer = [ao](double t) { return ao + t; };
    bcb.inner = [bi](double t) { return bi + t; };
    bcb.outer = [bo](double t) { return bo + t; };
    double dt = 0.24 * g.h() * g.h();
    for (int k = 0; k < 200; ++k) {
        a = evolver::step_explicit(a, bca, dt);
        b = evolver::step_explicit(b, bcb, dt);
        for (int i = 0; i <= g.m; ++i) CHECK(b.u[i] >= a.u[i]);
    }
}

TEST_CASE("catenoid closed forms satisfy the static relation to machine precision") {
    for (double c : {0.5, 1.0, 4.0}) {
        for (int n : {3, 4, 6}) {
            double neck = std::pow(c, 1.0 / (n - 1));
            for (double f : {1.3, 2.0, 5.0, 20.0})
                CHECK(std::fabs(catenoid_static_residual(n, c, neck * f)) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(catenoid_slope(2, 1.0, 3.0), ArgumentError);
    CHECK_THROWS_AS(catenoid_slope(3, 1.0, 0.9), ArgumentError);
}

TEST_CASE("catenoid tail quadrature is stable and decays") {
    int n = 3;
    double c = 4.0;
    double t2 = catenoid_height_tail(n, c, 4.1);
    double t4 = catenoid_height_tail(n, c, 8.0);
    CHECK(t2 > t4);
    CHECK(t4 > 0.0);
    // c/r leading behaviour at n = 3
    CHECK(t4 == doctest::Approx(c / 8.0).epsilon(0.02));

    // dual route: the quadrature-backed value against an independent
    // binomial-series evaluation at a radius where x = c^2 r^{-4} ~ 1.6e-3
    double r = 10.0;
    double series = 0.0, a_k = 1.0;
    for (int k = 0; k < 8; ++k) {
        series += a_k * std::pow(c, 2 * k + 1) * std::pow(r, -1.0 - 4.0 * k) /
                  (1.0 + 4.0 * k);
        a_k *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
    }
    CHECK(catenoid_height_tail(n, c, r) == doctest::Approx(series).epsilon(1e-11));
}

TEST_CASE("plane stability requires n >= 3") {
    RadialGrid g{0.0, 20.0, 200};
    CHECK_THROWS_AS(run_plane_stability(2, bump(0.5, 2.0), 4.0, 0.05, g,
                                        explicit_scheme(2), 5.0, 0.5),
                    ArgumentError);
}

TEST_CASE("plane run: zero data stays flat, small bump relaxes to the plane") {
    int n = 3;
    RadialGrid g{0.0, 25.0, 250};
    StabilityReport flat = run_plane_stability(n, bump(0.0, 2.0), 4.0, 0.05, g,
                                               explicit_scheme(n), 2.0, 0.5);
    for (double s : flat.sup_dev) CHECK(s <= 10.0 * g.h() * g.h());

    StabilityReport rep = run_plane_stability(n, bump(0.5, 2.0), 4.0, 0.05, g,
                                              explicit_scheme(n), 30.0, 0.5);
    REQUIRE(rep.t_star.has_value());
    CHECK(rep.barrier_violation_max <= 20.0 * g.h() * g.h());
    // the deviation history decays monotonically for the plane (exact
    // discrete maximum principle; the plane is an exact steady state)
    for (std::size_t i = 1; i < rep.sup_dev.size(); ++i)
        CHECK(rep.sup_dev[i] <= rep.sup_dev[i - 1] + 1e-12);
}

TEST_CASE("comparison-sphere envelope identity") {
    for (int n : {2, 3, 7})
        for (double C : {0.25, 1.0, 3.0})
            for (double r : {0.0, 0.7, 2.0})
                for (double tau : {0.01, 0.1, 1.0}) {
                    double lhs = sphere_envelope_height(n, C, r, tau);
                    double rhs = C * r * r + 2.0 * C * n * tau;
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
                }
}

TEST_CASE("quadratic growth stays beneath the sphere-comparison envelope") {
    RadialGrid g{0.0, 4.0, 200};
    double excess = quadratic_growth_check(2, 1.0, g, explicit_scheme(2), 0.1);
    CHECK(excess <= 20.0 * g.h() * g.h());
    // vanishing curvature: the plane is static
    double excess0 = quadratic_growth_check(2, 1e-8, g, explicit_scheme(2), 0.1);
    CHECK(excess0 <= 10.0 * g.h() * g.h());
}

TEST_CASE("stability report CSV shape") {
    RadialGrid g{0.0, 20.0, 100};
    StabilityReport rep = run_soliton_stability(2, bump(0.0, 2.0), 0.05, 2.0, g,
                                                explicit_scheme(2), 1.0, 0.5);
    std::string csv_text = rep.to_csv();
    CHECK(csv_text.rfind("t,sup_dev,omega_count,barrier_violation\n", 0) == 0);
    // one row per sample plus header
    std::size_t rows = std::count(csv_text.begin(), csv_text.end(), '\n');
    CHECK(rows == rep.t.size() + 1);
}
