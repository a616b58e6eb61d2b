// Python bindings for the main operations: series expansion, soliton
// profiles, wing construction, and the stability experiments.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcflab/experiments.hpp"
#include "mcflab/series_expansion.hpp"
#include "mcflab/soliton_profiles.hpp"
#include "mcflab/wing_builder.hpp"

namespace py = pybind11;
using namespace mcflab;

namespace {

std::vector<std::pair<int, std::string>> tail_coefficients(int n, int order) {
    series::TailSeries s = series::expand_tail(Rational(n), order);
    std::vector<std::pair<int, std::string>> out;
    out.emplace_back(1, rational_str(s.c1));
    for (auto it = s.coeff.rbegin(); it != s.coeff.rend(); ++it)
        out.emplace_back(it->first, rational_str(it->second));
    return out;
}

std::vector<std::pair<int, std::string>> tail_coefficients_symbolic(int order) {
    series::TailSeries s = series::expand_tail_symbolic(order);
    std::vector<std::pair<int, std::string>> out;
    out.emplace_back(1, s.c1_sym.str());
    for (auto it = s.coeff_sym.rbegin(); it != s.coeff_sym.rend(); ++it)
        out.emplace_back(it->first, it->second.str());
    return out;
}

py::dict profile_dict(const soliton::PhiProfile& p) {
    py::dict d;
    d["r"] = p.r;
    d["phi"] = p.phi;
    d["n"] = p.n;
    d["origin_regular"] = p.origin_regular;
    return d;
}

py::dict bowl_dict(int n, double r_max, double tol, double resample) {
    std::vector<double> targets;
    if (resample > 0)
        for (int k = 1; k * resample <= r_max; ++k) targets.push_back(k * resample);
    soliton::Bowl b = soliton::bowl_translator(n, r_max, tol, targets);
    py::dict d;
    d["r"] = b.height.r;
    d["phi"] = b.phi.phi;
    d["u"] = b.height.u;
    d["n"] = n;
    return d;
}

py::dict wings_dict(int n, double r_wing, double r_max, double epsilon,
                    double switch_slope, double tol, double resample) {
    std::vector<double> targets;
    for (int k = 1; k * resample <= r_max; ++k) targets.push_back(k * resample);
    soliton::Bowl bowl = soliton::bowl_translator(n, r_max + 1.0, tol, targets);
    wings::WingPair pair =
        wings::build_wing_pair(n, r_wing, r_max, switch_slope, tol, targets);
    pair = wings::calibrate_shifts(pair, bowl.height, epsilon);
    double lo = std::max(pair.r_switch_lower, pair.r_switch_upper);
    std::vector<double> r, wp, wm, ub;
    for (double x : targets) {
        if (x <= lo + resample) continue;
        r.push_back(x);
        wp.push_back(pair.barrier_upper().u[pair.barrier_upper().index_of(x)]);
        wm.push_back(pair.barrier_lower().u[pair.barrier_lower().index_of(x)]);
        ub.push_back(bowl.height.u[bowl.height.index_of(x)]);
    }
    py::dict d;
    d["r"] = r;
    d["w_plus"] = wp;
    d["w_minus"] = wm;
    d["u_bowl"] = ub;
    d["c_plus"] = pair.c_plus;
    d["c_minus"] = pair.c_minus;
    d["arc_y"] = pair.arc.y;
    d["arc_h"] = pair.arc.h;
    return d;
}

py::dict report_dict(const experiments::StabilityReport& rep) {
    py::dict d;
    d["t"] = rep.t;
    d["sup_dev"] = rep.sup_dev;
    d["omega_count"] = rep.omega_count;
    d["barrier_violation"] = rep.barrier_violation;
    d["barrier_violation_max"] = rep.barrier_violation_max;
    d["t_star"] = rep.t_star ? py::cast(*rep.t_star) : py::none();
    return d;
}

experiments::PerturbationSpec make_pert(const std::string& kind, double amplitude,
                                        double rho, double p) {
    experiments::PerturbationSpec spec;
    spec.kind = kind == "slow" ? experiments::PerturbationSpec::Kind::slow_decay
                               : experiments::PerturbationSpec::Kind::compact_bump;
    spec.amplitude = amplitude;
    spec.rho = rho;
    spec.p = p;
    return spec;
}

py::dict soliton_stability(int n, double epsilon, double r_wing, double r_max,
                           double h, double T, const std::string& pert_kind,
                           double amplitude, double rho, double p, double cfl,
                           double sample_dt) {
    evolver::RadialGrid g{0.0, r_max, static_cast<int>(std::llround(r_max / h))};
    evolver::SchemeConfig sc;
    sc.cfl = cfl > 0 ? cfl : 0.9 / (2.0 * n);
    return report_dict(experiments::run_soliton_stability(
        n, make_pert(pert_kind, amplitude, rho, p), epsilon, r_wing, g, sc, T,
        sample_dt));
}

py::dict plane_stability(int n, double catenoid_c, double epsilon, double r_max,
                         double h, double T, const std::string& pert_kind,
                         double amplitude, double rho, double p, double cfl,
                         double sample_dt) {
    evolver::RadialGrid g{0.0, r_max, static_cast<int>(std::llround(r_max / h))};
    evolver::SchemeConfig sc;
    sc.cfl = cfl > 0 ? cfl : 0.9 / (2.0 * n);
    return report_dict(experiments::run_plane_stability(
        n, make_pert(pert_kind, amplitude, rho, p), catenoid_c, epsilon, g, sc, T,
        sample_dt));
}

double growth_check(int n, double C, double r_max, double h, double tau) {
    evolver::RadialGrid g{0.0, r_max, static_cast<int>(std::llround(r_max / h))};
    evolver::SchemeConfig sc;
    sc.cfl = 0.9 / (2.0 * n);
    return experiments::quadratic_growth_check(n, C, g, sc, tau);
}

std::vector<double> residual_of(const std::vector<double>& r,
                                const std::vector<double>& u, int n) {
    soliton::HeightProfile h;
    h.n = n;
    h.r = r;
    h.u = u;
    if (!r.empty()) {
        h.anchor_r = r.front();
        h.anchor_u = u.front();
    }
    return soliton::translator_residual(h);
}

}  // namespace

PYBIND11_MODULE(_mcflab, m) {
    m.doc() = "translating-soliton laboratory for graphical mean curvature flow";

    py::register_exception<ArgumentError>(m, "McflabArgumentError",
                                          PyExc_ValueError);
    py::register_exception<ConfigurationError>(m, "McflabConfigurationError",
                                               PyExc_ValueError);

    m.def("tail_coefficients", &tail_coefficients, py::arg("n"), py::arg("order"),
          "Exact tail coefficients [(power, 'num/den'), ...] of the slope "
          "expansion at integer n.");
    m.def("tail_coefficients_symbolic", &tail_coefficients_symbolic,
          py::arg("order"),
          "Tail coefficients as polynomials in n, [(power, text), ...].");
    m.def(
        "eval_tail",
        [](int n, int order, double r) {
            return series::expand_tail(Rational(n), order).eval(r);
        },
        py::arg("n"), py::arg("order"), py::arg("r"));
    m.def(
        "origin_coefficients",
        [](int n, int order) {
            series::OriginSeries s = series::expand_origin(n, order);
            std::vector<std::pair<int, std::string>> out;
            for (const auto& [p, v] : s.coeff) out.emplace_back(p, rational_str(v));
            return out;
        },
        py::arg("n"), py::arg("order"));

    m.def(
        "integrate_phi",
        [](int n, double R, double phi0, double r_max, double tol) {
            return profile_dict(soliton::integrate_phi(n, R, phi0, r_max, tol));
        },
        py::arg("n"), py::arg("R"), py::arg("phi0"), py::arg("r_max"),
        py::arg("tol") = 1e-10);
    m.def("bowl", &bowl_dict, py::arg("n"), py::arg("r_max"),
          py::arg("tol") = 1e-10, py::arg("resample") = 0.1);
    m.def("translator_residual", &residual_of, py::arg("r"), py::arg("u"),
          py::arg("n"));

    m.def("build_wings", &wings_dict, py::arg("n"), py::arg("r_wing"),
          py::arg("r_max"), py::arg("epsilon") = 0.05,
          py::arg("switch_slope") = 1.0, py::arg("tol") = 1e-10,
          py::arg("resample") = 0.1);

    m.def("run_soliton_stability", &soliton_stability, py::arg("n") = 2,
          py::arg("epsilon") = 0.05, py::arg("r_wing") = 5.0,
          py::arg("r_max") = 60.0, py::arg("h") = 0.1, py::arg("T") = 80.0,
          py::arg("pert") = "bump", py::arg("amplitude") = 1.0,
          py::arg("rho") = 3.0, py::arg("p") = 0.5, py::arg("cfl") = 0.0,
          py::arg("sample_dt") = 0.5);
    m.def("run_plane_stability", &plane_stability, py::arg("n") = 3,
          py::arg("catenoid_c") = 9.0, py::arg("epsilon") = 0.05,
          py::arg("r_max") = 40.0, py::arg("h") = 0.1, py::arg("T") = 60.0,
          py::arg("pert") = "bump", py::arg("amplitude") = 1.0,
          py::arg("rho") = 3.0, py::arg("p") = 0.5, py::arg("cfl") = 0.0,
          py::arg("sample_dt") = 0.5);
    m.def("quadratic_growth_check", &growth_check, py::arg("n") = 2,
          py::arg("C") = 1.0, py::arg("r_max") = 4.0, py::arg("h") = 0.02,
          py::arg("tau") = 0.1);
    m.def("catenoid_static_residual", &experiments::catenoid_static_residual,
          py::arg("n"), py::arg("c"), py::arg("r"));
}
