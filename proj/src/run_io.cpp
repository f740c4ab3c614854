#include "nscrit/run_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "nscrit/snapshot.hpp"

namespace nscrit {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

}  // namespace

std::string norm_csv_string(const std::vector<NormSample>& history) {
    std::string s = "time,l2,hhalf,h1,x_norm_cum,tail_fraction\n";
    for (const auto& r : history) {
        s += format_double(r.time);
        s += ',';
        s += format_double(r.l2);
        s += ',';
        s += format_double(r.hhalf);
        s += ',';
        s += format_double(r.h1);
        s += ',';
        s += format_double(r.x_norm_cum);
        s += ',';
        s += format_double(r.tail_fraction);
        s += '\n';
    }
    return s;
}

void write_norm_csv(const std::string& path, const std::vector<NormSample>& history) {
    write_text(path, norm_csv_string(history));
}

std::vector<std::string> write_snapshot_series(const std::string& dir,
                                               const Trajectory& traj) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%06zu.nssf", i);
        std::string path = dir + "/" + name;
        write_snapshot(path, traj.snapshots[i], traj.times[i]);
        names.push_back(name);
    }
    return names;
}

void write_run_manifest(const std::string& path, const Config& cfg,
                        const SolveReport& report, const Grid& grid) {
    nlohmann::ordered_json j;
    j["format"] = "nscrit-run-manifest";
    j["version"] = 1;
    j["grid"] = {{"n", grid.n},
                 {"box_length", grid.box_length},
                 {"dealias_fraction", grid.dealias_fraction}};
    nlohmann::ordered_json cfgj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.resolved()) cfgj[k] = v;  // sorted (std::map order)
    j["config"] = cfgj;
    j["outcome"] = outcome_name(report.outcome);
    j["t_end"] = report.t_end;
    j["cfl_at_start"] = report.cfl_at_start;
    if (!report.note.empty()) j["note"] = report.note;
    if (!report.norm_history.empty()) {
        const NormSample& last = report.norm_history.back();
        j["final_norms"] = {{"l2", last.l2},
                            {"hhalf", last.hhalf},
                            {"h1", last.h1},
                            {"x_norm_cum", last.x_norm_cum},
                            {"tail_fraction", last.tail_fraction}};
    }
    write_text(path, j.dump(2) + "\n");
}

void write_kv_manifest(const std::string& path,
                       const std::map<std::string, std::string>& kv) {
    std::string s;
    for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
    write_text(path, s);
}

std::string sweep_csv_string(const std::vector<SweepRow>& rows) {
    std::string s =
        "center_x,center_y,center_z,t_top,radius,ckn,classification,energy_sq,"
        "energy_over_r\n";
    for (const auto& r : rows) {
        s += format_double(r.center[0]);
        s += ',';
        s += format_double(r.center[1]);
        s += ',';
        s += format_double(r.center[2]);
        s += ',';
        s += format_double(r.t_top);
        s += ',';
        s += format_double(r.radius);
        s += ',';
        s += format_double(r.ckn);
        s += ',';
        s += r.classification == PointClass::small_regular ? "small_regular" : "not_small";
        s += ',';
        s += format_double(r.energy_sq);
        s += ',';
        s += format_double(r.energy_over_r);
        s += '\n';
    }
    return s;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    write_text(path, sweep_csv_string(rows));
}

void write_sweep_summary(const std::string& path, const std::vector<SweepRow>& rows,
                         double eps0) {
    std::size_t small = 0;
    double max_ckn = 0.0, max_ratio = 0.0;
    for (const auto& r : rows) {
        if (r.classification == PointClass::small_regular) ++small;
        max_ckn = std::max(max_ckn, r.ckn);
        max_ratio = std::max(max_ratio, r.energy_over_r);
    }
    nlohmann::ordered_json j;
    j["format"] = "nscrit-sweep-summary";
    j["version"] = 1;
    j["eps0"] = eps0;
    j["rows"] = rows.size();
    j["small_regular"] = small;
    j["not_small"] = rows.size() - small;
    j["max_ckn"] = max_ckn;
    j["max_energy_over_r"] = max_ratio;
    write_text(path, j.dump(2) + "\n");
}

}  // namespace nscrit
