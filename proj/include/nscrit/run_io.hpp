#pragma once

// Run artifact writers. All text output is locale-independent and
// deterministic: doubles are printed with %.17g, JSON keys keep insertion
// order, map-driven sections are emitted in sorted key order.

#include <map>
#include <string>
#include <vector>

#include "nscrit/config.hpp"
#include "nscrit/diagnostics.hpp"
#include "nscrit/trajectory.hpp"

namespace nscrit {

// norms.csv, exactly these columns:
//   time,l2,hhalf,h1,x_norm_cum,tail_fraction
std::string norm_csv_string(const std::vector<NormSample>& history);
void write_norm_csv(const std::string& path, const std::vector<NormSample>& history);

// snap_000000.nssf, snap_000001.nssf, ... under dir; returns the file names
std::vector<std::string> write_snapshot_series(const std::string& dir,
                                               const Trajectory& traj);

// manifest.json: effective config echo plus run results
void write_run_manifest(const std::string& path, const Config& cfg,
                        const SolveReport& report, const Grid& grid);

// sorted key=value lines, one per entry
void write_kv_manifest(const std::string& path,
                       const std::map<std::string, std::string>& kv);

// sweep.csv: one row per cylinder
std::string sweep_csv_string(const std::vector<SweepRow>& rows);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

// summary.json: row count, counts per classification, extrema, and the
// largest localized-energy to radius ratio over the sweep
void write_sweep_summary(const std::string& path, const std::vector<SweepRow>& rows,
                         double eps0);

std::string format_double(double v);  // %.17g

}  // namespace nscrit
