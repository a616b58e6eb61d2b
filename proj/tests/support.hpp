#pragma once

// Shared helpers for the comparison-principle property tests: random pairs of
// ordered states whose slopes respect the monotone envelope of the explicit
// scheme, 1 + (u_r)^2 <= 2 r / ((n-1) h) at every interior node.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mcflab/mcf_evolver.hpp"

namespace mcflab::testsupport {

struct OrderedPair {
    std::vector<double> u, v;  // v >= u + 1e-5 nodewise
};

inline double slope_limit(const evolver::RadialGrid& g, int n, int i) {
    double r = g.node(i);
    if (!g.has_origin()) {
        // annulus: r_min > 0, same Peclet-type bound
    }
    double cap = 2.0 * r / ((n - 1) * g.h()) - 1.0;
    return cap > 0.0 ? std::sqrt(cap) : 0.0;
}

inline OrderedPair random_ordered_pair(std::mt19937_64& rng,
                                       const evolver::RadialGrid& g, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int m = g.m;
    const double h = g.h();

    std::vector<double> u(m + 1), v(m + 1);
    u[0] = uni(rng);
    double s = 0.0;
    for (int i = 1; i <= m; ++i) {
        double L = 0.95 * slope_limit(g, n, i);
        s = std::clamp(0.8 * s + 0.4 * gauss(rng) * std::min(L, 2.0), -L, L);
        u[i] = u[i - 1] + h * s;
    }
    double gap = 1e-4 + 0.3 * std::fabs(uni(rng));
    double t = 0.0;
    v[0] = u[0] + gap;
    for (int i = 1; i <= m; ++i) {
        double L = slope_limit(g, n, i);
        t = std::clamp(0.8 * t + 0.05 * gauss(rng) * std::min(L, 1.0),
                       -0.04 * L, 0.04 * L);
        gap = gap + h * t;
        if (gap < 1e-5) gap = 1e-5;
        v[i] = u[i] + gap;
    }
    return {std::move(u), std::move(v)};
}

/// Evolve both states of the pair with ordered constant Dirichlet traces and
/// return the worst (most negative) nodewise min of v - u over all steps.
inline double ordering_margin(const evolver::RadialGrid& g, int n,
                              const OrderedPair& pair, int steps) {
    evolver::EvolutionState a{g, n, pair.u, 0.0};
    evolver::EvolutionState b{g, n, pair.v, 0.0};
    evolver::BoundarySpec bca, bcb;
    double ga = pair.u.back(), gb = pair.v.back();
    bca.outer = [ga](double) { return ga; };
    bcb.outer = [gb](double) { return gb; };
    if (!g.has_origin()) {
        double ia = pair.u.front(), ib = pair.v.front();
        bca.inner = [ia](double) { return ia; };
        bcb.inner = [ib](double) { return ib; };
    }
    double dt = 0.999 * std::min(evolver::explicit_dt_limit(a), 0.25 * g.h() * g.h());
    double margin = 1e300;
    for (int k = 0; k < steps; ++k) {
        a = evolver::step_explicit(a, bca, dt);
        b = evolver::step_explicit(b, bcb, dt);
        for (int i = 0; i <= g.m; ++i) margin = std::min(margin, b.u[i] - a.u[i]);
    }
    return margin;
}

}  // namespace mcflab::testsupport
