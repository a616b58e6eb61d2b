#include "mcflab/cli_run.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "mcflab/csv_io.hpp"
#include "mcflab/experiments.hpp"
#include "mcflab/series_expansion.hpp"
#include "mcflab/soliton_profiles.hpp"
#include "mcflab/wing_builder.hpp"

namespace mcflab::cli {
namespace fs = std::filesystem;
namespace {

std::string resolve_outdir(const RunConfig& cfg) {
    if (cfg.has("out")) return cfg.values.at("out");
    if (const char* env = std::getenv("MCFLAB_OUTDIR")) return env;
    return "mcflab_out";
}

struct RunDir {
    fs::path dir;
    std::vector<std::string> files;

    void write(const std::string& name, const std::string& content) {
        csv::write_file((dir / name).string(), content);
        files.push_back(name);
    }
};

void write_manifest(RunDir& rd, const std::string& subcommand,
                    const RunConfig& cfg,
                    const std::vector<std::pair<std::string, std::string>>& results) {
    std::ostringstream os;
    os << "subcommand = " << subcommand << "\n";
    RunConfig echoed = cfg;
    echoed.values.erase("out");  // not a reproduction parameter
    os << echoed.dump();
    for (const auto& [k, v] : results) os << k << " = " << v << "\n";
    os << "# files\n";
    for (const auto& f : rd.files) os << f << "\n";
    os << "manifest.txt\n";
    csv::write_file((rd.dir / "manifest.txt").string(), os.str());
}

void write_plot(RunDir& rd, const std::vector<std::string>& plot_lines) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set grid\n";
    for (const auto& l : plot_lines) os << l << "\n";
    rd.write("plot.gp", os.str());
}

std::vector<double> uniform_nodes(double step, double lo, double hi) {
    std::vector<double> t;
    for (int k = 1;; ++k) {
        double r = step * k;
        if (r > hi) break;
        if (r >= lo) t.push_back(r);
    }
    return t;
}

evolver::RadialGrid grid_from(const RunConfig& cfg, double r_max_dflt,
                             double h_dflt) {
    evolver::RadialGrid g;
    g.r_max = cfg.get_double("r_max", r_max_dflt);
    double h = cfg.get_double("h", h_dflt);
    g.m = static_cast<int>(std::llround(g.r_max / h));
    g.r_min = cfg.get_double("r_min", 0.0);
    g.validate();
    return g;
}

experiments::PerturbationSpec pert_from(const RunConfig& cfg) {
    experiments::PerturbationSpec p;
    p.kind = cfg.get_string("pert", "bump") == "slow"
                 ? experiments::PerturbationSpec::Kind::slow_decay
                 : experiments::PerturbationSpec::Kind::compact_bump;
    p.amplitude = cfg.get_double("amplitude", 1.0);
    p.rho = cfg.get_double("rho", 3.0);
    p.p = cfg.get_double("p", 0.5);
    return p;
}

int run_series(const RunConfig& cfg, RunDir& rd, std::ostream& out) {
    int n = cfg.get_int("n", 2);
    int order = cfg.get_int("order", 9);
    bool symbolic = cfg.get_bool("symbolic", false);
    std::string kind = cfg.get_string("kind", "tail");
    std::string text;
    if (kind == "origin") {
        text = series::expand_origin(n, order).dump();
    } else if (symbolic) {
        text = series::expand_tail_symbolic(order).dump();
    } else {
        text = series::expand_tail(Rational(n), order).dump();
    }
    out << text;
    rd.write("series.txt", text);

    // numeric evaluation curve for plotting
    std::vector<double> rr, pp;
    if (kind == "origin") {
        series::OriginSeries s = series::expand_origin(n, order);
        for (int k = 1; k <= 256; ++k) {
            rr.push_back(k / 256.0);
            pp.push_back(s.eval(rr.back()));
        }
    } else {
        series::TailSeries s = series::expand_tail(Rational(n), order);
        double lo = 2.0 * (n - 1), hi = 40.0 * (n - 1);
        for (int k = 0; k <= 256; ++k) {
            rr.push_back(lo + (hi - lo) * k / 256.0);
            pp.push_back(s.eval(rr.back()));
        }
    }
    rd.write("series_eval.csv", csv::two_columns("r", "phi", rr, pp));
    write_plot(rd, {"plot 'series_eval.csv' using 1:2 with lines"});
    write_manifest(rd, "series", cfg, {});
    return 0;
}

int run_soliton(const RunConfig& cfg, RunDir& rd, std::ostream& out) {
    int n = cfg.get_int("n", 2);
    double r_max = cfg.get_double("r_max", 60.0);
    double tol = cfg.get_double("tol", 1e-10);
    double resample = cfg.get_double("resample", r_max / 2048.0);
    soliton::Bowl bowl = soliton::bowl_translator(
        n, r_max, tol, uniform_nodes(resample, 0.0, r_max));
    rd.write("bowl_phi.csv", bowl.phi.to_csv());
    rd.write("bowl_height.csv", bowl.height.to_csv());
    soliton::HeightProfile uni =
        soliton::uniform_slice(bowl.height, resample, resample);
    std::vector<double> rho = soliton::translator_residual(uni);
    rd.write("residual.csv", csv::two_columns("r", "residual", uni.r, rho));
    double worst = 0.0;
    for (double v : rho) worst = std::max(worst, std::fabs(v));
    out << "bowl n=" << n << " r_max=" << r_max << " max|residual|=" << worst
        << "\n";
    write_plot(rd, {"plot 'bowl_height.csv' using 1:2 with lines"});
    write_manifest(rd, "soliton", cfg, {{"max_residual", csv::fmt(worst)}});
    return 0;
}

int run_wings(const RunConfig& cfg, RunDir& rd, std::ostream& out) {
    int n = cfg.get_int("n", 2);
    double r_wing = cfg.get_double("r_wing", 5.0);
    double r_max = cfg.get_double(
        "r_max", std::max(20.0 * std::max(r_wing, double(n - 1)), 40.0 * (n - 1)));
    double switch_slope = cfg.get_double("switch_slope", 1.0);
    double epsilon = cfg.get_double("epsilon", 0.05);
    double tol = cfg.get_double("tol", 1e-10);
    double resample = cfg.get_double("resample", 0.1);

    std::vector<double> targets = uniform_nodes(resample, 0.0, r_max);
    soliton::Bowl bowl = soliton::bowl_translator(n, r_max + 1.0, tol, targets);
    wings::WingPair pair =
        wings::build_wing_pair(n, r_wing, r_max, switch_slope, tol, targets);
    pair = wings::calibrate_shifts(pair, bowl.height, epsilon);

    double r_lo = std::max(pair.r_switch_lower, pair.r_switch_upper);
    std::vector<double> rr, wp, wm, ub;
    for (double r : uniform_nodes(resample, r_lo + resample, r_max)) {
        rr.push_back(r);
        const auto& up = pair.barrier_upper();
        const auto& lo = pair.barrier_lower();
        wp.push_back(up.u[up.index_of(r)]);
        wm.push_back(lo.u[lo.index_of(r)]);
        ub.push_back(bowl.height.u[bowl.height.index_of(r)]);
    }
    rd.write("wings.csv",
             csv::columns({"r", "w_plus", "w_minus", "u_bowl"}, {&rr, &wp, &wm, &ub}));
    rd.write("inner_arc.csv", pair.arc.to_csv());
    out << "wings n=" << n << " R=" << r_wing << " C+=" << pair.c_plus
        << " C-=" << pair.c_minus << "\n";
    write_plot(rd, {"plot 'wings.csv' using 1:2 with lines, "
                    "'wings.csv' using 1:3 with lines, "
                    "'wings.csv' using 1:4 with lines"});
    write_manifest(rd, "wings", cfg,
                   {{"c_plus", csv::fmt(pair.c_plus)},
                    {"c_minus", csv::fmt(pair.c_minus)},
                    {"shift_plus", csv::fmt(pair.shift_plus)},
                    {"shift_minus", csv::fmt(pair.shift_minus)},
                    {"r_switch_upper", csv::fmt(pair.r_switch_upper)},
                    {"r_switch_lower", csv::fmt(pair.r_switch_lower)}});
    return 0;
}

int run_evolve(const RunConfig& cfg, RunDir& rd, std::ostream& out) {
    int n = cfg.get_int("n", 2);
    evolver::RadialGrid grid = grid_from(cfg, 10.0, 0.05);
    double T = cfg.get_double("horizon", 1.0);
    evolver::SchemeConfig scheme;
    scheme.mode = cfg.get_string("scheme", "explicit") == "implicit"
                      ? evolver::SchemeConfig::Mode::implicit_euler
                      : evolver::SchemeConfig::Mode::explicit_euler;
    scheme.cfl = cfg.get_double("cfl", 0.9 / (2.0 * n));
    scheme.dt = cfg.get_double("dt", grid.h() * grid.h());
    scheme.newton_tol = cfg.get_double("newton_tol", 1e-10);
    scheme.newton_max_iters = cfg.get_int("newton_max_iters", 30);

    std::string initial = cfg.get_string("initial", "bowl");
    std::vector<double> u0(grid.nodes());
    evolver::BoundarySpec bc;
    if (initial == "bowl") {
        if (!grid.has_origin())
            throw ConfigurationError("evolve: bowl initial data needs r_min = 0");
        soliton::Bowl bowl = soliton::bowl_translator(
            n, grid.r_max + 1.0, cfg.get_double("tol", 1e-10),
            uniform_nodes(grid.h(), 0.0, grid.r_max));
        for (int i = 0; i <= grid.m; ++i) u0[i] = bowl.u_at(grid.node(i));
        double edge = u0[grid.m];
        bc.outer = [edge](double t) { return edge + t; };
    } else if (initial == "sphere") {
        double R = cfg.get_double("sphere_radius", 2.0 * grid.r_max);
        if (R <= grid.r_max)
            throw ConfigurationError("evolve: sphere_radius must exceed r_max");
        double t_max = (R * R - grid.r_max * grid.r_max) / (2.0 * n);
        if (T >= t_max)
            throw ConfigurationError("evolve: horizon outlives the shrinking sphere");
        for (int i = 0; i <= grid.m; ++i) {
            double r = grid.node(i);
            u0[i] = -std::sqrt(R * R - r * r);
        }
        double rm = grid.r_max;
        bc.outer = [R, rm, n](double t) {
            return -std::sqrt(R * R - 2.0 * n * t - rm * rm);
        };
    } else {  // plane
        bc.outer = [](double) { return 0.0; };
    }
    if (!grid.has_origin()) {
        double v0 = u0.front();
        bc.inner = [v0](double) { return v0; };
    }

    double sample_dt = cfg.get_double("sample_dt", T / 8.0);
    std::vector<double> times;
    for (long k = 0; k * sample_dt < T; ++k) times.push_back(k * sample_dt);
    times.push_back(T);
    evolver::EvolutionState init{grid, n, u0, 0.0};
    evolver::Trajectory traj = evolver::evolve(init, bc, T, scheme, times);

    std::vector<double> nodes(grid.nodes());
    for (int i = 0; i <= grid.m; ++i) nodes[i] = grid.node(i);
    std::ostringstream listing;
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof(name), "state_%04zu.csv", k);
        rd.write(name, csv::two_columns("r", "u", nodes, traj.samples[k].u));
        listing << csv::fmt(traj.samples[k].t) << " " << name << "\n";
    }
    rd.write("samples.txt", listing.str());
    out << "evolve " << initial << " samples=" << traj.samples.size() << "\n";
    write_plot(rd, {"plot 'state_0000.csv' using 1:2 with lines"});
    write_manifest(rd, "evolve", cfg, {});
    return 0;
}

int run_stability(const RunConfig& cfg, RunDir& rd, std::ostream& out) {
    int n = cfg.get_int("n", 2);
    double epsilon = cfg.get_double("epsilon", 0.05);
    double r_wing = cfg.get_double("r_wing", 5.0);
    evolver::RadialGrid grid = grid_from(cfg, 60.0, 0.1);
    evolver::SchemeConfig scheme;
    scheme.cfl = cfg.get_double("cfl", 0.9 / (2.0 * n));
    double T = cfg.get_double("horizon", 80.0);
    double sample_dt = cfg.get_double("sample_dt", 0.5);

    experiments::StabilityReport rep = experiments::run_soliton_stability(
        n, pert_from(cfg), epsilon, r_wing, grid, scheme, T, sample_dt);

    rd.write("report.csv", rep.to_csv());
    write_plot(rd, {"plot 'report.csv' using 1:2 with lines"});
    double barrier_limit = 20.0 * rep.h * rep.h;
    std::vector<std::pair<std::string, std::string>> res = {
        {"barrier_violation_max", csv::fmt(rep.barrier_violation_max)},
        {"t_star", rep.t_star ? csv::fmt(*rep.t_star) : "unreached"}};
    write_manifest(rd, "stability", cfg, res);
    out << "stability: t_star="
        << (rep.t_star ? csv::fmt(*rep.t_star) : std::string("unreached"))
        << " barrier_max=" << rep.barrier_violation_max << "\n";
    if (!rep.t_star || rep.barrier_violation_max > barrier_limit) return 1;
    return 0;
}

int run_plane(const RunConfig& cfg, RunDir& rd, std::ostream& out) {
    int n = cfg.get_int("n", 3);
    double epsilon = cfg.get_double("epsilon", 0.05);
    evolver::RadialGrid grid = grid_from(cfg, 40.0, 0.1);
    experiments::PerturbationSpec pert = pert_from(cfg);
    double dflt_c = std::pow(std::max(pert.rho, 1.0), n - 1);
    double c = cfg.get_double("catenoid_c", dflt_c);
    evolver::SchemeConfig scheme;
    scheme.cfl = cfg.get_double("cfl", 0.9 / (2.0 * n));
    double T = cfg.get_double("horizon", 60.0);
    double sample_dt = cfg.get_double("sample_dt", 0.5);

    experiments::StabilityReport rep = experiments::run_plane_stability(
        n, pert, c, epsilon, grid, scheme, T, sample_dt);

    rd.write("report.csv", rep.to_csv());
    write_plot(rd, {"plot 'report.csv' using 1:2 with lines"});
    write_manifest(rd, "plane", cfg,
                   {{"barrier_violation_max", csv::fmt(rep.barrier_violation_max)},
                    {"t_star", rep.t_star ? csv::fmt(*rep.t_star) : "unreached"}});
    out << "plane: t_star="
        << (rep.t_star ? csv::fmt(*rep.t_star) : std::string("unreached"))
        << " barrier_max=" << rep.barrier_violation_max << "\n";
    if (!rep.t_star || rep.barrier_violation_max > 20.0 * rep.h * rep.h) return 1;
    return 0;
}

int run_growth(const RunConfig& cfg, RunDir& rd, std::ostream& out) {
    int n = cfg.get_int("n", 2);
    double C = cfg.get_double("c", 1.0);
    double tau = cfg.get_double("tau", 0.1);
    evolver::RadialGrid grid = grid_from(cfg, 4.0, 0.02);
    evolver::SchemeConfig scheme;
    scheme.cfl = cfg.get_double("cfl", 0.9 / (2.0 * n));
    double excess = experiments::quadratic_growth_check(n, C, grid, scheme, tau);

    std::vector<double> nodes(grid.nodes()), env(grid.nodes());
    for (int i = 0; i <= grid.m; ++i) {
        nodes[i] = grid.node(i);
        env[i] = C * nodes[i] * nodes[i] + 2.0 * C * n * tau;
    }
    rd.write("envelope.csv", csv::two_columns("r", "bound", nodes, env));
    write_plot(rd, {"plot 'envelope.csv' using 1:2 with lines"});
    write_manifest(rd, "growth", cfg, {{"max_excess", csv::fmt(excess)}});
    out << "growth: max_excess=" << excess << "\n";
    if (excess > 20.0 * grid.h() * grid.h()) return 1;
    return 0;
}

}  // namespace

int run(const std::string& subcommand, const RunConfig& cfg, std::ostream& out,
        std::ostream& err) {
    try {
        require_valid(subcommand, cfg);
        RunDir rd;
        rd.dir = resolve_outdir(cfg);
        fs::create_directories(rd.dir);
        if (subcommand == "series") return run_series(cfg, rd, out);
        if (subcommand == "soliton") return run_soliton(cfg, rd, out);
        if (subcommand == "wings") return run_wings(cfg, rd, out);
        if (subcommand == "evolve") return run_evolve(cfg, rd, out);
        if (subcommand == "stability") return run_stability(cfg, rd, out);
        if (subcommand == "plane") return run_plane(cfg, rd, out);
        if (subcommand == "growth") return run_growth(cfg, rd, out);
        err << "unknown subcommand: " << subcommand << "\n";
        return 2;
    } catch (const ConfigurationError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "run failed: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace mcflab::cli
