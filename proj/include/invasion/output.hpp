#pragma once

#include <filesystem>
#include <string>

#include "invasion/config.hpp"
#include "invasion/simulation.hpp"

namespace invasion {

/// series.csv text: header "t,<label>,..." then one row per record time,
/// every number in %.16e. No series gives the header "t" alone.
std::string series_csv(const std::vector<TimeSeries>& series);

/// One row per cell: i[,j[,k]], x[,y[,z]], u, v, m.
std::string snapshot_csv(const SimState& state, const ModelParams& params);

/// One line per claim: id, verdict, measured, threshold and, when a fit was
/// made, its rate and r^2.
std::string report_text(const TheoremReport& report);

/// Writes series.csv, snapshots/state_<t>.csv (per `snapshots`),
/// report.txt (when a report is given) and config_echo (the verbatim
/// `config_source`) into out_dir, creating it if needed. Filesystem
/// failures surface as std::filesystem::filesystem_error or Error with the
/// path in the message.
void emit_outputs(const RunResult& result, const TheoremReport* report,
                  const std::filesystem::path& out_dir, const std::string& config_source,
                  SnapshotMode snapshots = SnapshotMode::final_only);

}  // namespace invasion
