#include <doctest.h>

#include <cmath>
#include <random>

#include "mcflab/csv_io.hpp"
#include "mcflab/soliton_profiles.hpp"

using namespace mcflab;
using namespace mcflab::soliton;

TEST_CASE("slope equation sign structure at the left endpoint") {
    // phi0 = R/(n-1) zeroes the second factor
    CHECK(phi_rhs<double>(2, 1.0, 1.0) == 0.0);
    CHECK(phi_rhs<double>(5, 2.0, 0.5) == 0.0);
    // phi0 above the line: initially decreasing
    CHECK(phi_rhs<double>(2, 1.0, 1.5) < 0.0);
    CHECK(phi_rhs<double>(7, 3.0, 10.0) < 0.0);
    // below the line: increasing
    CHECK(phi_rhs<double>(2, 1.0, 0.0) > 0.0);
}

TEST_CASE("integrate_phi agrees with the order-9 tail at r=50 (n=2)") {
    PhiProfile p = integrate_phi(2, 1.0, 0.0, 50.0, 1e-10);
    double phi50 = p.phi.back();
    double series = 50.0 - 1.0 / 50 - 2.0 / std::pow(50, 3) - 11.0 / std::pow(50, 5);
    CHECK(std::fabs(phi50 - series) < 1e-4);
}

TEST_CASE("integrate_phi tail sits below the attracting line and above zero") {
    PhiProfile p = integrate_phi(3, 0.5, 7.0, 25.0, 1e-9);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.r[i] < 12.0) continue;  // final half for r_max >= 20 R
        CHECK(p.phi[i] > 0.0);
        CHECK(p.phi[i] < p.r[i] / (p.n - 1));
    }
}

TEST_CASE("solutions with ordered data stay ordered (no crossing)") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        double a = u(rng), b = u(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        std::vector<double> grid;
        for (int i = 0; i <= 60; ++i) grid.push_back(1.0 + 3.0 * i / 60.0);
        PhiProfile pa = integrate_phi(2, 1.0, a, 4.0, 1e-11, grid);
        PhiProfile pb = integrate_phi(2, 1.0, b, 4.0, 1e-11, grid);
        for (double r : grid)
            CHECK(pa.eval(r) < pb.eval(r));
    }
}

TEST_CASE("tail universality: initial data forgotten by a factor >= 10") {
    int n = 2;
    double R = 20.0 * (n - 1), r_max = 40.0 * (n - 1);
    std::vector<double> grid = {R, r_max / 2.0, r_max};
    PhiProfile a = integrate_phi(n, R, R / (n - 1) - 0.5, r_max, 1e-12, grid);
    PhiProfile b = integrate_phi(n, R, R / (n - 1) + 0.5, r_max, 1e-12, grid);
    double d_half = std::fabs(a.eval(r_max / 2) - b.eval(r_max / 2));
    double d_end = std::fabs(a.eval(r_max) - b.eval(r_max));
    CHECK(d_end * 10.0 <= d_half);
}

TEST_CASE("refinement: halving tol moves the endpoint by less than 10 tol") {
    for (double tol : {1e-8, 1e-10}) {
        PhiProfile a = integrate_phi(2, 1.0, 0.3, 30.0, tol);
        PhiProfile b = integrate_phi(2, 1.0, 0.3, 30.0, tol / 2);
        CHECK(std::fabs(a.phi.back() - b.phi.back()) < 10.0 * tol);
    }
}

TEST_CASE("bowl slope behaves like r/n near zero and r/(n-1) - 1/r far out") {
    for (int n : {2, 3}) {
        PhiProfile p = bowl_phi(n, 50.0 * (n - 1), 1e-11);
        CHECK(p.origin_regular);
        // near-origin limit via the regular series
        series::OriginSeries o = series::expand_origin(n, 9);
        CHECK(std::fabs(o.eval(1e-3) / 1e-3 - 1.0 / n) <= 1e-5);
        // profile and series agree where they meet
        double r0 = p.r_min();
        CHECK(std::fabs(p.phi.front() - o.eval(r0)) < 1e-12);
        // far field
        double r = p.r_max();
        CHECK(std::fabs(p.phi.back() - r / (n - 1) + 1.0 / r) < 1e-4);
    }
}

TEST_CASE("cubic origin correction r^3/(n^3 (n+2)) shows up in the profile") {
    PhiProfile p = bowl_phi(2, 10.0, 1e-12, {0.05});
    double r = 0.05;
    double predicted = r / 2.0 + std::pow(r, 3) / (8.0 * 4.0);
    CHECK(std::fabs(p.eval(r) - predicted) < 1e-8);
}

TEST_CASE("height_from_phi pins the anchor exactly") {
    PhiProfile p = integrate_phi(2, 1.0, 0.0, 10.0, 1e-10, {2.0, 5.0});
    HeightProfile h = height_from_phi(p, 2.0, 7.25);
    CHECK(h.u[h.index_of(2.0)] == 7.25);
}

TEST_CASE("zero slope integrates to a constant height") {
    std::vector<double> r, phi;
    for (int i = 0; i <= 40; ++i) {
        r.push_back(1.0 + i * 0.1);
        phi.push_back(0.0);
    }
    PhiProfile p = PhiProfile::from_samples(2, r, phi);
    HeightProfile h = height_from_phi(p, 1.0, 3.0);
    for (double v : h.u) CHECK(v == 3.0);
}

TEST_CASE("bowl height tracks r^2/(2(n-1)) - ln r with a bounded remainder") {
    int n = 2;
    Bowl b = bowl_translator(n, 60.0, 1e-11, {20.0, 30.0, 40.0, 50.0, 58.0});
    auto rem = [&](double r) {
        return b.u_at(r) - (r * r / (2.0 * (n - 1)) - std::log(r));
    };
    double r20 = rem(20.0), r58 = rem(58.0);
    CHECK(std::fabs(r20) < 10.0);           // bounded
    CHECK(std::fabs(r58 - r20) < 5e-3);     // remainder settles (O(1/r) decay)
    CHECK(std::fabs(rem(58.0) - rem(40.0)) < std::fabs(rem(30.0) - rem(20.0)));
}

TEST_CASE("translator residual of a plane is identically one") {
    std::vector<double> r, u;
    for (int i = 0; i <= 30; ++i) {
        r.push_back(0.5 + 0.25 * i);
        u.push_back(4.0);
    }
    HeightProfile h;
    h.n = 3;
    h.r = r;
    h.u = u;
    h.anchor_r = 0.5;
    h.anchor_u = 4.0;
    for (double v : translator_residual(h)) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("translator residual of the paraboloid matches the closed form") {
    for (int n : {2, 4}) {
        std::vector<double> r, u;
        for (int i = 0; i <= 200; ++i) {
            double x = 0.5 + i * 0.05;
            r.push_back(x);
            u.push_back(x * x / (2.0 * (n - 1)));
        }
        HeightProfile h;
        h.n = n;
        h.r = r;
        h.u = u;
        h.anchor_r = r.front();
        h.anchor_u = u.front();
        std::vector<double> rho = translator_residual(h);
        for (std::size_t i = 0; i < r.size(); ++i) {
            double denom = (n - 1) * (1.0 + r[i] * r[i] / ((n - 1.0) * (n - 1.0)));
            double expect = -1.0 / denom;
            CHECK(rho[i] == doctest::Approx(expect).epsilon(1e-10));
        }
        // rho -> 0 for large r
        double limit = 1.1 / ((n - 1) * (1.0 + 110.25 / ((n - 1.0) * (n - 1.0))));
        CHECK(std::fabs(rho.back()) < limit);
    }
}

TEST_CASE("bowl translator residual is small on a fine uniform grid") {
    int n = 2;
    std::vector<double> grid;
    for (int i = 0; i <= 10000; ++i) grid.push_back(0.01 + i * 0.001);
    Bowl b = bowl_translator(n, 10.011, 1e-11, grid);
    // restrict the residual check to the uniform part of the sampling
    HeightProfile h = uniform_slice(b.height, 0.01, 0.001);
    double worst = 0.0;
    for (double v : translator_residual(h)) worst = std::max(worst, std::fabs(v));
    CHECK(worst <= 1e-6);
}

TEST_CASE("profile and height CSV round-trip at full precision") {
    PhiProfile p = integrate_phi(2, 1.0, 0.25, 8.0, 1e-9);
    std::string csv_text = p.to_csv();
    CHECK(csv_text.substr(0, 6) == "r,phi\n");
    std::vector<double> r2, phi2;
    csv::parse_two_columns(csv_text, r2, phi2);
    REQUIRE(r2.size() == p.size());
    for (std::size_t i = 0; i < r2.size(); ++i) {
        CHECK(r2[i] == p.r[i]);
        CHECK(phi2[i] == p.phi[i]);
    }
}

TEST_CASE("argument errors") {
    CHECK_THROWS_AS(integrate_phi(1, 1.0, 0.0, 10.0, 1e-9), ArgumentError);
    CHECK_THROWS_AS(integrate_phi(2, -1.0, 0.0, 10.0, 1e-9), ArgumentError);
    CHECK_THROWS_AS(integrate_phi(2, 1.0, 0.0, 1.5, 1e-9), ArgumentError);   // r_max/R < 2
    CHECK_THROWS_AS(integrate_phi(2, 1.0, 0.0, 10.0, 5e-3), ArgumentError);  // tol too loose
    CHECK_THROWS_AS(bowl_phi(2, 5.0, 1e-9), ArgumentError);                  // r_max < 10
    PhiProfile p = integrate_phi(2, 1.0, 0.0, 10.0, 1e-9);
    CHECK_THROWS_AS(height_from_phi(p, 0.5, 0.0), ArgumentError);  // anchor below range
    CHECK_THROWS_AS(height_from_phi(p, 11.0, 0.0), ArgumentError);
}
