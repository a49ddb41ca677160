#include "invasion/output.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "invasion/error.hpp"
#include "invasion/text.hpp"

namespace invasion {

namespace fs = std::filesystem;
using text::e17;

std::string series_csv(const std::vector<TimeSeries>& series) {
  std::ostringstream o;
  o << "t";
  for (const TimeSeries& s : series) o << "," << s.label();
  o << "\n";
  if (series.empty()) return o.str();
  const std::size_t rows = series.front().size();
  for (const TimeSeries& s : series)
    if (s.size() != rows) throw ValidationError("series lengths differ");
  for (std::size_t r = 0; r < rows; ++r) {
    o << e17(series.front().samples()[r].t);
    for (const TimeSeries& s : series) o << "," << e17(s.samples()[r].value);
    o << "\n";
  }
  return o.str();
}

std::string snapshot_csv(const SimState& state, const ModelParams& params) {
  static const char* const index_names[] = {"i", "j", "k"};
  static const char* const coord_names[] = {"x", "y", "z"};
  const Grid& g = state.grid();
  const ScalarField u = cell_density(state, params);
  std::ostringstream o;
  for (int d = 0; d < g.dims; ++d) o << index_names[d] << ",";
  for (int d = 0; d < g.dims; ++d) o << coord_names[d] << ",";
  o << "u,v,m\n";
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    for (int d = 0; d < g.dims; ++d) o << g.coord(c, d) << ",";
    for (int d = 0; d < g.dims; ++d) o << e17(g.center(c, d)) << ",";
    o << e17(u[c]) << "," << e17(state.v[c]) << "," << e17(state.m[c]) << "\n";
  }
  return o.str();
}

std::string report_text(const TheoremReport& report) {
  std::ostringstream o;
  o << "# regime " << report.regime << "\n";
  for (const Claim& c : report.claims) {
    o << c.id << " " << to_string(c.verdict) << " measured=" << e17(c.measured)
      << " threshold=" << e17(c.threshold);
    if (c.fitted)
      o << " rate=" << e17(c.fitted->rate) << " r2=" << e17(c.fitted->r_squared);
    o << "\n";
  }
  return o.str();
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (out) out << content;
  if (!out) throw Error(path.string() + ": " + std::strerror(errno));
}

}  // namespace

void emit_outputs(const RunResult& result, const TheoremReport* report, const fs::path& out_dir,
                  const std::string& config_source, SnapshotMode snapshots) {
  fs::create_directories(out_dir);
  write_file(out_dir / "series.csv", series_csv(result.series));
  write_file(out_dir / "config_echo", config_source);
  if (report) write_file(out_dir / "report.txt", report_text(*report));

  if (snapshots == SnapshotMode::none || result.recorded_states.empty()) return;
  const fs::path dir = out_dir / "snapshots";
  fs::create_directories(dir);
  const auto emit = [&](const SimState& s) {
    write_file(dir / ("state_" + e17(s.t) + ".csv"), snapshot_csv(s, result.scenario.params));
  };
  if (snapshots == SnapshotMode::final_only) {
    emit(result.recorded_states.back());
  } else {
    for (const SimState& s : result.recorded_states) emit(s);
  }
}

}  // namespace invasion
