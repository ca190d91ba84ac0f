// Command line driver for the extended-phase-space integrator library:
// runs the geodesic and van der Pol experiments, convergence and drift
// studies, pericenter precession analysis, and config sweeps.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "xps/harness/analysis.hpp"
#include "xps/harness/io.hpp"
#include "xps/harness/run.hpp"
#include "xps/problems/harmonic.hpp"

namespace {

using nlohmann::json;
using namespace xps;
using harness::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitDiverged = 2;
constexpr int kExitConfigError = 3;

LinearPhaseMap parse_map(const std::string& spec, MapKind numeric_kind, bool want_mixing) {
    LinearPhaseMap m;
    if (spec.find(',') != std::string::npos) {
        std::stringstream ss(spec);
        std::string a, b;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        m = LinearPhaseMap{std::stod(a), std::stod(b), numeric_kind};
    } else {
        m = preset(spec);
    }
    const bool is_mixing = m.kind == MapKind::Mixing;
    if (is_mixing != want_mixing)
        throw std::invalid_argument("map '" + spec + "' has the wrong kind for this flag");
    return m;
}

void apply_json_config(ExperimentConfig& cfg, const json& j) {
    auto map_from = [](const json& v, MapKind numeric_kind, bool want_mixing) {
        if (v.is_array()) {
            if (v.size() != 2) throw std::invalid_argument("map arrays need two entries");
            LinearPhaseMap m{v[0].get<double>(), v[1].get<double>(), numeric_kind};
            return m;
        }
        return parse_map(v.get<std::string>(), numeric_kind, want_mixing);
    };

    if (j.contains("problem")) cfg.problem = j["problem"].get<std::string>();
    if (j.contains("method")) cfg.method = j["method"].get<std::string>();
    if (j.contains("scheme")) cfg.scheme = j["scheme"].get<std::string>();
    if (j.contains("composition")) cfg.composition = j["composition"].get<std::string>();
    if (j.contains("mix1")) cfg.mix1 = map_from(j["mix1"], MapKind::Mixing, true);
    if (j.contains("mix2")) cfg.mix2 = map_from(j["mix2"], MapKind::Mixing, true);
    if (j.contains("proj")) cfg.proj = map_from(j["proj"], MapKind::Projection, false);
    if (j.contains("mode")) cfg.mode = driver_mode_by_name(j["mode"].get<std::string>());
    if (j.contains("h")) cfg.h = j["h"].get<double>();
    if (j.contains("orbits")) cfg.orbits = j["orbits"].get<double>();
    if (j.contains("t-end")) cfg.t_end = j["t-end"].get<double>();
    if (j.contains("sample-every")) cfg.sample_every = j["sample-every"].get<long>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("oracle-rtol")) cfg.oracle.rel_tol = j["oracle-rtol"].get<double>();
    if (j.contains("oracle-atol")) cfg.oracle.abs_tol = j["oracle-atol"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned>();
    if (j.contains("with-reference")) cfg.with_reference = j["with-reference"].get<bool>();
    if (j.contains("a")) cfg.geodesic.a = j["a"].get<double>();
    if (j.contains("e")) cfg.geodesic.e = j["e"].get<double>();
    if (j.contains("M")) cfg.geodesic.M = j["M"].get<double>();
    if (j.contains("m")) cfg.geodesic.m = j["m"].get<double>();
    if (j.contains("mu")) cfg.vdp.mu = j["mu"].get<double>();
    if (j.contains("amp")) cfg.vdp.A = j["amp"].get<double>();
    if (j.contains("period")) cfg.vdp.P_force = j["period"].get<double>();
}

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    f >> j;
    return j;
}

// Flag holders; a flag only overrides the config-file value when it was
// actually given on the command line.
struct CommonFlags {
    std::string config_path, method, scheme, composition, mix1, mix2, proj, mode, out;
    double h = 0, orbits = 0, t_end = 0, oracle_rtol = 0, oracle_atol = 0;
    long sample_every = 1;
    unsigned seed = 0;
    bool with_reference = false;
    double a = 0, e = 0, big_m = 0, small_m = 0, mu = 0, amp = 0, period = 0;

    void attach(CLI::App& app, bool geodesic_flavor) {
        app.set_help_flag("--help", "print help");
        app.add_option("--config", config_path, "JSON config file (flags override it)");
        app.add_option("--method", method,
                       geodesic_flavor ? "extended | implicit-midpoint | oracle"
                                       : "method1 | method2 | implicit-midpoint | oracle");
        app.add_option("--scheme", scheme, "leapfrog scheme name (see README)");
        app.add_option("--composition", composition, "none | kahan6");
        app.add_option("--mix1", mix1, "mixing map preset or 'aq,ap'");
        app.add_option("--mix2", mix2, "mixing map preset or 'aq,ap'");
        app.add_option("--proj", proj, "projection preset or 'aq,ap'");
        app.add_option("--mode", mode, "extended | project-each-step");
        app.add_option("--h", h,
                       geodesic_flavor ? "step size as a fraction of the orbital period"
                                       : "step size in time units");
        if (geodesic_flavor)
            app.add_option("--orbits", orbits, "duration in orbital periods");
        else
            app.add_option("--t-end", t_end, "duration in time units");
        app.add_option("--sample-every", sample_every, "output stride in steps");
        app.add_option("--out", out, "output base path (writes <out>.csv and <out>.json)");
        app.add_option("--oracle-rtol", oracle_rtol, "truth solver relative tolerance");
        app.add_option("--oracle-atol", oracle_atol, "truth solver absolute tolerance");
        app.add_option("--seed", seed, "seed for randomized self-checks");
        app.add_flag("--with-reference", with_reference,
                     "add error-vs-truth columns to the trajectory");
        if (geodesic_flavor) {
            app.add_option("--a", a, "semi-major axis");
            app.add_option("--e", e, "eccentricity");
            app.add_option("--M", big_m, "central mass");
            app.add_option("--m", small_m, "test particle mass");
        } else {
            app.add_option("--mu", mu, "nonlinearity");
            app.add_option("--amp", amp, "forcing amplitude");
            app.add_option("--period", period, "forcing period");
        }
    }

    ExperimentConfig resolve(const CLI::App& app, ExperimentConfig cfg) const {
        auto given = [&app](const char* name) {
            const CLI::Option* o = app.get_option_no_throw(name);
            return o != nullptr && o->count() > 0;
        };
        if (given("--config")) apply_json_config(cfg, load_json_file(config_path));
        if (given("--method")) cfg.method = method;
        if (given("--scheme")) cfg.scheme = scheme;
        if (given("--composition")) cfg.composition = composition;
        if (given("--mix1")) cfg.mix1 = parse_map(mix1, MapKind::Mixing, true);
        if (given("--mix2")) cfg.mix2 = parse_map(mix2, MapKind::Mixing, true);
        if (given("--proj")) cfg.proj = parse_map(proj, MapKind::Projection, false);
        if (given("--mode")) cfg.mode = driver_mode_by_name(mode);
        if (given("--h")) cfg.h = h;
        if (given("--orbits")) cfg.orbits = orbits;
        if (given("--t-end")) cfg.t_end = t_end;
        if (given("--sample-every")) cfg.sample_every = sample_every;
        if (given("--out")) cfg.out = out;
        if (given("--oracle-rtol")) cfg.oracle.rel_tol = oracle_rtol;
        if (given("--oracle-atol")) cfg.oracle.abs_tol = oracle_atol;
        if (given("--seed")) cfg.seed = seed;
        if (given("--with-reference")) cfg.with_reference = with_reference;
        if (given("--a")) cfg.geodesic.a = a;
        if (given("--e")) cfg.geodesic.e = e;
        if (given("--M")) cfg.geodesic.M = big_m;
        if (given("--m")) cfg.geodesic.m = small_m;
        if (given("--mu")) cfg.vdp.mu = mu;
        if (given("--amp")) cfg.vdp.A = amp;
        if (given("--period")) cfg.vdp.P_force = period;
        return cfg;
    }
};

int finish_run(const ExperimentConfig& cfg, const harness::RunResult& result) {
    if (!cfg.out.empty()) {
        harness::write_trajectory_csv(cfg.out + ".csv", result.traj);
        harness::write_summary_json(cfg.out + ".json", result.summary);
    }
    std::cout << harness::summary_to_json(result.summary);
    return result.summary.diverged ? kExitDiverged : kExitOk;
}

bool run_gradient_self_check(const ExperimentConfig& cfg) {
    problems::SchwarzschildSystem sys(cfg.geodesic);
    if (!check_gradients(sys, problems::schwarzschild_initial_conditions(cfg.geodesic), 1e-6))
        return false;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> r_dist(3.0 * cfg.geodesic.M, 100.0 * cfg.geodesic.M);
    std::uniform_real_distribution<double> p_dist(-1.0, 1.0);
    for (int i = 0; i < 16; ++i) {
        PhaseState s({0.0, r_dist(rng), 0.0}, {p_dist(rng), p_dist(rng), 5.0 * p_dist(rng)});
        if (!check_gradients(sys, s, 1e-6)) return false;
    }
    return true;
}

int cmd_geodesic(const CLI::App& app, const CommonFlags& flags, bool check_grads) {
    ExperimentConfig cfg = flags.resolve(app, ExperimentConfig::geodesic_defaults());
    if (check_grads && !run_gradient_self_check(cfg)) {
        std::cerr << "gradient self-check failed\n";
        return kExitConfigError;
    }
    return finish_run(cfg, harness::run_geodesic(cfg));
}

int cmd_vdp(const CLI::App& app, const CommonFlags& flags) {
    ExperimentConfig cfg = flags.resolve(app, ExperimentConfig::vdp_defaults());
    cfg.problem = "vdp";
    return finish_run(cfg, harness::run_vdp(cfg));
}

// Convergence study over a list of step sizes; endpoint errors are
// measured against the truth solver.
int cmd_converge(const CLI::App& app, const CommonFlags& flags, const std::string& problem,
                 const std::string& hs_csv) {
    std::vector<double> hs;
    {
        std::stringstream ss(hs_csv);
        std::string cell;
        while (std::getline(ss, cell, ',')) hs.push_back(std::stod(cell));
    }

    harness::ConvergenceResult res;
    if (problem == "harmonic") {
        ExperimentConfig cfg;
        cfg.method = "extended";
        cfg.scheme = "qptqtp";
        cfg.mix1 = cfg.mix2 = preset("identity");
        cfg.proj = preset("proj_primary_q_aux_p");
        cfg.t_end = 10.0;
        cfg = flags.resolve(app, cfg);
        const double t_end = cfg.t_end;

        problems::HarmonicOscillator ref_sys;
        const PhaseState start({1.0}, {0.0});
        const PhaseState exact = ref_sys.exact(start, t_end);
        const Vec reference = {exact.q[0], exact.p[0]};
        const auto scheme = scheme_by_name(cfg.scheme);
        const auto comp = composition_by_name(cfg.composition);

        auto runner = [&](double h) {
            problems::HarmonicOscillator sys;
            IntegrateOptions opt;
            opt.mix1 = cfg.mix1;
            opt.mix2 = cfg.mix2;
            opt.projection = cfg.proj;
            opt.mode = cfg.mode;
            opt.composition = comp;
            opt.h = h;
            opt.n_steps = std::lround(t_end / h);
            opt.sample_every = opt.n_steps;
            Trajectory traj = integrate(sys, scheme, start, opt);
            if (traj.diverged) throw std::runtime_error("converge: run diverged at h=" + std::to_string(h));
            return traj.rows.back().state;
        };
        res = harness::convergence_study(runner, reference, hs);
    } else if (problem == "vdp") {
        ExperimentConfig cfg = ExperimentConfig::vdp_defaults();
        cfg.composition = "none";
        cfg.t_end = 10.0;
        cfg = flags.resolve(app, cfg);
        const double t_end = cfg.t_end;
        const Vec x0 = {2.0, 2.0};

        problems::VdpSystem ref_sys(cfg.vdp);
        FieldFn ref_field = [&](const Vec& x, double t) { return ref_sys.field(x, t); };
        const Vec reference = oracle_endpoint(ref_field, x0, 0.0, t_end, cfg.oracle);
        const auto comp = composition_by_name(cfg.composition);

        auto runner = [&](double h) -> Vec {
            problems::VdpSystem sys(cfg.vdp);
            if (cfg.method == "implicit-midpoint") {
                FieldFn field = [&](const Vec& x, double t) { return sys.field(x, t); };
                Vec x = x0;
                const long n = std::lround(t_end / h);
                for (long i = 0; i < n; ++i)
                    x = implicit_midpoint_step(field, x, static_cast<double>(i) * h, h);
                return x;
            }
            OdeIntegrateOptions opt;
            opt.mix1 = cfg.mix1;
            opt.mix2 = cfg.mix2;
            opt.projection = cfg.proj;
            opt.mode = cfg.mode;
            opt.composition = comp;
            opt.h = h;
            opt.n_steps = std::lround(t_end / h);
            opt.sample_every = opt.n_steps;
            Trajectory traj =
                integrate_ode(sys, ode_method_by_name(cfg.method), x0, 0.0, opt);
            if (traj.diverged) throw std::runtime_error("converge: run diverged at h=" + std::to_string(h));
            return traj.rows.back().state;
        };
        res = harness::convergence_study(runner, reference, hs);
    } else if (problem == "schwarzschild") {
        ExperimentConfig cfg = ExperimentConfig::geodesic_defaults();
        cfg.orbits = 0.1;
        cfg = flags.resolve(app, cfg);
        const double P = cfg.geodesic.orbital_period();
        const double duration = cfg.orbits * P;
        const PhaseState start = schwarzschild_initial_conditions(cfg.geodesic);
        Vec z0 = start.q;
        z0.insert(z0.end(), start.p.begin(), start.p.end());

        problems::SchwarzschildSystem ref_sys(cfg.geodesic);
        const Vec reference =
            oracle_endpoint(hamiltonian_field(ref_sys), z0, 0.0, duration, cfg.oracle);
        const auto scheme = scheme_by_name(cfg.scheme);
        const auto comp = composition_by_name(cfg.composition);

        auto runner = [&](double h_frac) -> Vec {
            problems::SchwarzschildSystem sys(cfg.geodesic);
            const double h = h_frac * P;
            if (cfg.method == "implicit-midpoint") {
                FieldFn field = hamiltonian_field(sys);
                Vec z = z0;
                const long n = std::lround(duration / h);
                for (long i = 0; i < n; ++i)
                    z = implicit_midpoint_step(field, z, static_cast<double>(i) * h, h);
                return z;
            }
            IntegrateOptions opt;
            opt.mix1 = cfg.mix1;
            opt.mix2 = cfg.mix2;
            opt.projection = cfg.proj;
            opt.mode = cfg.mode;
            opt.composition = comp;
            opt.h = h;
            opt.n_steps = std::lround(duration / h);
            opt.sample_every = opt.n_steps;
            Trajectory traj = integrate(sys, scheme, start, opt);
            if (traj.diverged)
                throw std::runtime_error("converge: run diverged at h=" + std::to_string(h_frac));
            return traj.rows.back().state;
        };
        res = harness::convergence_study(runner, reference, hs);
    } else {
        throw std::invalid_argument("converge: unknown problem " + problem);
    }

    json j;
    j["slope"] = res.slope;
    j["n_used"] = res.n_used;
    json points = json::array();
    for (const auto& p : res.points)
        points.push_back({{"h", p.h}, {"error", p.error}, {"used", p.used}});
    j["points"] = points;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_drift(const CLI::App& app, const CommonFlags& flags, const std::string& in_csv) {
    Trajectory traj;
    double h_ref = 0.5;
    if (!in_csv.empty()) {
        traj = harness::read_trajectory_csv(in_csv);
    } else {
        ExperimentConfig cfg = ExperimentConfig::geodesic_defaults();
        cfg.orbits = 300.0;  // scaled-down default; pass --orbits 3000 for the full run
        cfg.sample_every = 10;
        cfg = flags.resolve(app, cfg);
        h_ref = 0.5 * cfg.geodesic.m * cfg.geodesic.m;
        harness::RunResult result = harness::run_geodesic(cfg);
        if (!cfg.out.empty()) {
            harness::write_trajectory_csv(cfg.out + ".csv", result.traj);
            harness::write_summary_json(cfg.out + ".json", result.summary);
        }
        if (result.summary.diverged) {
            std::cout << harness::summary_to_json(result.summary);
            return kExitDiverged;
        }
        traj = std::move(result.traj);
    }

    std::vector<double> steps, series;
    for (const auto& row : traj.rows) {
        steps.push_back(static_cast<double>(row.step));
        series.push_back(std::abs(row.invariant - h_ref));
    }
    harness::DriftResult res = harness::drift_study(steps, series);

    json j;
    j["slope_per_step"] = res.slope_per_step;
    j["loglog_exponent"] = res.loglog_exponent;
    j["growth_ratio"] = res.growth_ratio;
    j["max_envelope"] = res.envelope.back();
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_precession(const CLI::App& app, const CommonFlags& flags) {
    ExperimentConfig cfg = flags.resolve(app, ExperimentConfig::geodesic_defaults());
    cfg.sample_every = 1;  // pericenter refinement needs dense samples
    harness::RunResult result = harness::run_geodesic(cfg);
    if (result.summary.diverged) {
        std::cout << harness::summary_to_json(result.summary);
        return kExitDiverged;
    }
    harness::PrecessionResult res = harness::precession_study(result.traj);

    json j;
    j["mean_delta_omega"] = res.mean_delta_omega;
    j["std_delta_omega"] = res.std_delta_omega;
    j["n_pericenters"] = res.n_pericenters;
    j["first_order_estimate"] = problems::pericenter_precession_estimate(cfg.geodesic);
    std::cout << j.dump(2) << "\n";
    if (!cfg.out.empty()) harness::write_trajectory_csv(cfg.out + ".csv", result.traj);
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, int jobs) {
    const json j = load_json_file(config_path);
    if (!j.contains("runs") || !j["runs"].is_array())
        throw std::invalid_argument("sweep config needs a 'runs' array");

    struct Item {
        ExperimentConfig cfg;
        std::string label;
    };
    std::vector<Item> items;
    for (const auto& run : j["runs"]) {
        const std::string problem = run.value("problem", "schwarzschild");
        ExperimentConfig cfg = (problem == "vdp") ? ExperimentConfig::vdp_defaults()
                                                  : ExperimentConfig::geodesic_defaults();
        apply_json_config(cfg, run);
        if (cfg.out.empty())
            throw std::invalid_argument("sweep: every run needs an 'out' path");
        items.push_back({cfg, cfg.out});
    }

    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;

    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{kExitOk};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            const auto& item = items[i];
            try {
                harness::RunResult result = (item.cfg.problem == "vdp")
                                                ? harness::run_vdp(item.cfg)
                                                : harness::run_geodesic(item.cfg);
                harness::write_trajectory_csv(item.cfg.out + ".csv", result.traj);
                harness::write_summary_json(item.cfg.out + ".json", result.summary);
                if (result.summary.diverged) {
                    int expect = worst.load();
                    while (expect < kExitDiverged &&
                           !worst.compare_exchange_weak(expect, kExitDiverged)) {
                    }
                }
            } catch (...) {
                worst.store(kExitConfigError);
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    for (const auto& item : items) std::cout << "wrote " << item.label << ".{csv,json}\n";
    return worst.load();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extended-phase-space leapfrog integrators: experiments and analysis"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    CLI::App* geo = app.add_subcommand("geodesic", "Schwarzschild geodesic run");
    CommonFlags geo_flags;
    geo_flags.attach(*geo, true);
    bool check_grads = false;
    geo->add_flag("--check-gradients", check_grads, "run a seeded gradient self-check first");

    CLI::App* vdp = app.add_subcommand("vdp", "forced van der Pol run");
    CommonFlags vdp_flags;
    vdp_flags.attach(*vdp, false);

    CLI::App* conv = app.add_subcommand("converge", "order-of-convergence study");
    CommonFlags conv_flags;
    conv_flags.attach(*conv, false);
    std::string conv_problem = "harmonic";
    std::string conv_hs = "0.2,0.1,0.05,0.025";
    conv->add_option("--problem", conv_problem, "harmonic | vdp | schwarzschild");
    conv->add_option("--hs", conv_hs,
                     "comma separated step sizes (fractions of P for schwarzschild)");
    conv->add_option("--orbits", conv_flags.orbits, "schwarzschild horizon in periods");
    conv->add_option("--a", conv_flags.a, "semi-major axis");
    conv->add_option("--e", conv_flags.e, "eccentricity");
    conv->add_option("--M", conv_flags.big_m, "central mass");
    conv->add_option("--m", conv_flags.small_m, "test particle mass");

    CLI::App* drift = app.add_subcommand("drift", "secular error-envelope analysis");
    CommonFlags drift_flags;
    drift_flags.attach(*drift, true);
    std::string drift_in;
    drift->add_option("--in", drift_in, "analyze an existing trajectory CSV instead of running");

    CLI::App* prec = app.add_subcommand("precession", "pericenter precession analysis");
    CommonFlags prec_flags;
    prec_flags.attach(*prec, true);

    CLI::App* sweep = app.add_subcommand("sweep", "run a batch of configs concurrently");
    sweep->set_help_flag("--help", "print help");
    std::string sweep_config;
    int sweep_jobs = 0;
    sweep->add_option("--config", sweep_config, "JSON file with a 'runs' array")->required();
    sweep->add_option("--jobs", sweep_jobs, "worker threads (default: hardware concurrency)");

    try {
        app.parse(argc, argv);
        if (geo->parsed()) return cmd_geodesic(*geo, geo_flags, check_grads);
        if (vdp->parsed()) return cmd_vdp(*vdp, vdp_flags);
        if (conv->parsed()) return cmd_converge(*conv, conv_flags, conv_problem, conv_hs);
        if (drift->parsed()) return cmd_drift(*drift, drift_flags, drift_in);
        if (prec->parsed()) return cmd_precession(*prec, prec_flags);
        if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_jobs);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitDiverged;
    }
    return kExitConfigError;
}
