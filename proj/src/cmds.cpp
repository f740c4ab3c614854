#include "nscrit/cmds.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nscrit/calderon.hpp"
#include "nscrit/config.hpp"
#include "nscrit/diagnostics.hpp"
#include "nscrit/experiments.hpp"
#include "nscrit/run_io.hpp"
#include "nscrit/snapshot.hpp"
#include "nscrit/solver.hpp"

namespace fs = std::filesystem;

namespace nscrit {

namespace {

Grid grid_from_config(const Config& cfg) {
    int n = cfg.require_int("n");
    double box = cfg.get_double("box_length", kTwoPi);
    double frac = cfg.get_double("dealias_fraction", 2.0 / 3.0);
    return Grid(n, box, frac);
}

InitialDataSpec data_spec_from_config(const Config& cfg) {
    InitialDataSpec spec;
    spec.family = data_family_from_name(cfg.require_string("family"));
    spec.amplitude = cfg.get_double("amplitude", 1.0);
    spec.seed = (unsigned long long)cfg.get_int("seed", 0);
    spec.spectrum_slope = cfg.get_double("spectrum_slope", -2.0);
    spec.bump_radius = cfg.get_double("bump_radius", 1.0);
    spec.offset = {cfg.get_double("offset_x", 0.0), cfg.get_double("offset_y", 0.0),
                   cfg.get_double("offset_z", 0.0)};
    if (spec.family == DataFamily::from_file) spec.path = cfg.require_string("data_path");
    return spec;
}

EvolveOptions evolve_options_from_config(const Config& cfg) {
    EvolveOptions opts;
    opts.dt = cfg.get_double("dt", 1e-3);
    opts.snapshot_stride = cfg.get_int("snapshot_stride", 10);
    opts.norm_stride = cfg.get_int("norm_stride", 1);
    if (cfg.get_bool("caps_enabled", true)) {
        Caps caps;
        caps.hhalf_growth_factor = cfg.get_double("cap_hhalf_factor", 20.0);
        caps.tail_threshold = cfg.get_double("cap_tail", 1e-3);
        caps.x_norm_cap =
            cfg.get_double("cap_xnorm", std::numeric_limits<double>::infinity());
        opts.caps = caps;
    }
    return opts;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::runtime_error(std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw std::runtime_error(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (double v : parse_double_list(text, what)) out.push_back(int(std::llround(v)));
    return out;
}

// "x,y,z;x,y,z" -> list of points
std::vector<std::array<double, 3>> parse_point_list(const std::string& text,
                                                    const char* what) {
    std::vector<std::array<double, 3>> out;
    std::istringstream in(text);
    std::string group;
    while (std::getline(in, group, ';')) {
        if (group.empty()) continue;
        auto nums = parse_double_list(group, what);
        if (nums.size() != 3)
            throw std::runtime_error(std::string(what) + ": point '" + group +
                                     "' does not have three coordinates");
        out.push_back({nums[0], nums[1], nums[2]});
    }
    if (out.empty()) throw std::runtime_error(std::string(what) + ": empty list");
    return out;
}

int outcome_exit_code(Outcome o) {
    switch (o) {
        case Outcome::completed: return 0;
        case Outcome::blowup_proxy: return 2;
        case Outcome::underresolved: return 3;
    }
    return 1;
}

int run_impl(const std::string& config_path, const std::string& outdir) {
    Config cfg = Config::parse_file(config_path);
    Grid grid = grid_from_config(cfg);
    InitialDataSpec spec = data_spec_from_config(cfg);
    double horizon = cfg.require_double("horizon");
    EvolveOptions opts = evolve_options_from_config(cfg);
    bool write_snaps = cfg.get_bool("write_snapshots", true);

    SpectralVelocity u0 = make_initial_data(grid, spec);
    auto [traj, report] = evolve(u0, horizon, opts);

    fs::create_directories(outdir);
    write_norm_csv(outdir + "/norms.csv", report.norm_history);
    if (write_snaps) write_snapshot_series(outdir, traj);
    write_run_manifest(outdir + "/manifest.json", cfg, report, grid);

    std::cout << "outcome: " << outcome_name(report.outcome) << ", t_end "
              << format_double(report.t_end) << "\n";
    return outcome_exit_code(report.outcome);
}

Trajectory load_trajectory(const std::string& run_dir, double dealias_fraction) {
    std::vector<fs::path> files;
    if (!fs::is_directory(run_dir))
        throw std::runtime_error("run_dir '" + run_dir + "' is not a directory");
    for (const auto& e : fs::directory_iterator(run_dir)) {
        std::string name = e.path().filename().string();
        if (name.size() > 5 && name.rfind("snap_", 0) == 0 &&
            name.substr(name.size() - 5) == ".nssf")
            files.push_back(e.path());
    }
    if (files.empty())
        throw std::runtime_error("run_dir '" + run_dir + "' holds no snapshots");
    std::sort(files.begin(), files.end());

    Trajectory traj;
    for (const auto& f : files) {
        LoadedSnapshot snap = read_snapshot(f.string(), dealias_fraction);
        SpectralVelocity u = snap.as_velocity();
        if (traj.snapshots.empty()) {
            traj.grid = u.grid;
        } else if (!(u.grid == traj.grid)) {
            throw std::runtime_error("snapshot '" + f.string() +
                                     "' disagrees with the series grid");
        }
        if (!traj.times.empty() && snap.time <= traj.times.back())
            throw std::runtime_error("snapshot '" + f.string() +
                                     "' breaks the increasing time order");
        traj.times.push_back(snap.time);
        traj.snapshots.push_back(std::move(u));
    }
    traj.dt_policy = {"loaded", 0.0, 1};
    return traj;
}

int diagnose_impl(const std::string& config_path, const std::string& outdir) {
    Config cfg = Config::parse_file(config_path);
    std::string run_dir = cfg.require_string("run_dir");
    double frac = cfg.get_double("dealias_fraction", 2.0 / 3.0);
    Trajectory traj = load_trajectory(run_dir, frac);

    double half = 0.5 * traj.grid.box_length;
    std::ostringstream def_center;
    def_center << half << "," << half << "," << half;
    auto centers =
        parse_point_list(cfg.get_string("centers", def_center.str()), "centers");
    auto radii = parse_double_list(cfg.require_string("radii"), "radii");
    auto t_tops = parse_double_list(cfg.require_string("t_tops"), "t_tops");
    double eps0 = cfg.get_double("eps0", 0.05);

    auto rows = cylinder_sweep(traj, centers, radii, t_tops, eps0);
    fs::create_directories(outdir);
    write_sweep_csv(outdir + "/sweep.csv", rows);
    write_sweep_summary(outdir + "/summary.json", rows, eps0);
    std::cout << "sweep: " << rows.size() << " cylinders\n";
    return 0;
}

int experiment_impl(const std::string& kind, const std::string& config_path,
                    const std::string& outdir) {
    Config cfg = Config::parse_file(config_path);
    fs::create_directories(outdir);
    std::map<std::string, std::string> kv;

    if (kind == "covariance") {
        Grid grid = grid_from_config(cfg);
        InitialDataSpec spec = data_spec_from_config(cfg);
        int lambda = cfg.get_int("lambda", 2);
        double horizon = cfg.require_double("horizon");
        double dt = cfg.get_double("dt", 1e-3);
        SpectralVelocity u0 = make_initial_data(grid, spec);
        auto r = scaling_covariance_experiment(u0, lambda, horizon, dt);
        kv["kind"] = "covariance";
        kv["n_coarse"] = std::to_string(r.n_coarse);
        kv["n_fine"] = std::to_string(r.n_fine);
        kv["lambda"] = std::to_string(r.lambda);
        kv["horizon_coarse"] = format_double(r.horizon_coarse);
        kv["max_rel_coeff_error"] = format_double(r.max_rel_coeff_error);
        kv["max_unmatched_mag"] = format_double(r.max_unmatched_mag);
        kv["hhalf_rel_error"] = format_double(r.hhalf_rel_error);
    } else if (kind == "weak_convergence") {
        Grid grid = grid_from_config(cfg);
        InitialDataSpec spec = data_spec_from_config(cfg);
        std::string kind_name = cfg.get_string("perturbation", "modulation");
        PerturbationKind pk;
        if (kind_name == "modulation")
            pk = PerturbationKind::modulation;
        else if (kind_name == "translation")
            pk = PerturbationKind::translation;
        else
            throw std::runtime_error("perturbation must be modulation or translation");
        auto params = parse_int_list(cfg.require_string("params"), "params");
        double delta = cfg.get_double("delta_amplitude", 0.1);
        double horizon = cfg.require_double("horizon");
        EvolveOptions opts = evolve_options_from_config(cfg);
        int workers = cfg.get_int("workers", 1);
        SpectralVelocity base = make_initial_data(grid, spec);
        auto r = weak_convergence_experiment(base, pk, params, delta, horizon, opts,
                                             workers);
        kv["kind"] = "weak_convergence";
        kv["perturbation"] = kind_name;
        kv["diffs_strictly_decreasing"] = r.diffs_strictly_decreasing ? "true" : "false";
        for (std::size_t i = 0; i < r.cases.size(); ++i) {
            std::string p = "case_" + std::to_string(i) + "_";
            kv[p + "parameter"] = format_double(r.cases[i].parameter);
            kv[p + "delta_hhalf"] = format_double(r.cases[i].delta_hhalf);
            kv[p + "weak_pairing"] = format_double(r.cases[i].weak_pairing);
            kv[p + "final_l2_diff"] = format_double(r.cases[i].final_l2_diff);
            kv[p + "final_hhalf_diff"] = format_double(r.cases[i].final_hhalf_diff);
        }
    } else if (kind == "bisection") {
        Grid grid = grid_from_config(cfg);
        InitialDataSpec spec = data_spec_from_config(cfg);
        double amp_lo = cfg.require_double("amp_lo");
        double amp_hi = cfg.require_double("amp_hi");
        double horizon = cfg.require_double("horizon");
        EvolveOptions opts = evolve_options_from_config(cfg);
        double rel_tol = cfg.get_double("rel_tol", 1e-2);
        int max_iters = cfg.get_int("max_iters", 20);
        auto r = amplitude_bisection(grid, spec, amp_lo, amp_hi, horizon, opts, rel_tol,
                                     max_iters);
        kv["kind"] = "bisection";
        kv["status"] = bisection_status_name(r.status);
        kv["lower"] = format_double(r.lower);
        kv["upper"] = format_double(r.upper);
        kv["probes"] = std::to_string(r.runs.size());
        for (std::size_t i = 0; i < r.runs.size(); ++i) {
            std::string p = "run_" + std::to_string(i) + "_";
            kv[p + "amplitude"] = format_double(r.runs[i].amplitude);
            kv[p + "outcome"] = outcome_name(r.runs[i].outcome);
            kv[p + "t_end"] = format_double(r.runs[i].t_end);
        }
    } else if (kind == "calderon") {
        Grid grid = grid_from_config(cfg);
        InitialDataSpec spec = data_spec_from_config(cfg);
        double eta = cfg.require_double("eta");
        SpectralVelocity u0 = make_initial_data(grid, spec);
        auto s = calderon_split(u0, eta);
        kv["kind"] = "calderon";
        kv["eta"] = format_double(eta);
        kv["cutoff_radius"] = format_double(s.cutoff_radius);
        kv["a0_hhalf"] = format_double(s.a0_hhalf);
        kv["v0_l2"] = format_double(s.v0_l2);
        kv["eta_reached"] = s.eta_reached ? "true" : "false";
        write_snapshot(outdir + "/a0.nssf", s.a0, 0.0);
        write_snapshot(outdir + "/v0.nssf", s.v0, 0.0);
    } else {
        std::cerr << "unknown experiment kind '" << kind
                  << "' (expected covariance, weak_convergence, bisection, calderon)\n";
        return 1;
    }

    write_kv_manifest(outdir + "/manifest.txt", kv);
    std::cout << "experiment " << kind << ": wrote " << outdir << "/manifest.txt\n";
    return 0;
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& outdir) {
    try {
        return run_impl(config_path, outdir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_diagnose(const std::string& config_path, const std::string& outdir) {
    try {
        return diagnose_impl(config_path, outdir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_experiment(const std::string& kind, const std::string& config_path,
                   const std::string& outdir) {
    try {
        return experiment_impl(kind, config_path, outdir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace nscrit
