// Command-line front end: run, verify, convergence, presets.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "invasion/config.hpp"
#include "invasion/error.hpp"
#include "invasion/output.hpp"
#include "invasion/simulation.hpp"
#include "invasion/text.hpp"

namespace {

using namespace invasion;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_command(const std::string& config_path, std::string out_dir, bool with_verify) {
  const RunConfig cfg = parse_run_config(read_file(config_path));
  if (out_dir.empty()) out_dir = cfg.output.dir;
  const RunResult result = run(cfg.scenario);
  std::printf("%s: %zu steps, %.3f s\n", cfg.scenario.name.c_str(), result.steps, result.wall_time);
  if (!with_verify) {
    emit_outputs(result, nullptr, out_dir, cfg.source, cfg.output.snapshots);
    return 0;
  }
  const TheoremReport report = verify(result);
  emit_outputs(result, &report, out_dir, cfg.source, cfg.output.snapshots);
  std::fputs(report_text(report).c_str(), stdout);
  return report.all_passed() ? 0 : 2;
}

int convergence_command(const std::string& config_path, int levels) {
  const Scenario s = parse_config(read_file(config_path));
  std::printf("h,dt,error,observed_order\n");
  for (const ConvergenceRow& r : convergence_study(s, levels))
    std::printf("%s,%s,%s,%s\n", text::e17(r.h).c_str(), text::e17(r.dt).c_str(),
                text::e17(r.error).c_str(), text::e17(r.observed_order).c_str());
  return 0;
}

int presets_command() {
  for (const Scenario& s : presets()) {
    std::printf("# ---- preset %s\n", s.name.c_str());
    OutputConfig out;
    out.dir = "out/" + s.name;
    std::fputs(format_config(s, out).c_str(), stdout);
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haptotaxis invasion model solver"};
  app.require_subcommand(1);

  std::string config, out_dir;
  int levels = 4;

  auto* run_cmd = app.add_subcommand("run", "integrate a configured scenario and write outputs");
  run_cmd->add_option("-c,--config", config, "configuration file")->required();
  run_cmd->add_option("-o,--out", out_dir, "output directory (default: [output] dir)");

  auto* verify_cmd = app.add_subcommand("verify", "run, check the regime's claims and write a report");
  verify_cmd->add_option("-c,--config", config, "configuration file")->required();
  verify_cmd->add_option("-o,--out", out_dir, "output directory (default: [output] dir)");

  auto* conv_cmd = app.add_subcommand("convergence", "grid refinement study against the finest level");
  conv_cmd->add_option("-c,--config", config, "configuration file")->required();
  conv_cmd->add_option("--levels", levels, "number of levels (>= 3)")->check(CLI::Range(3, 12));

  auto* presets_cmd = app.add_subcommand("presets", "print every built-in scenario as a config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return run_command(config, out_dir, false);
    if (*verify_cmd) return run_command(config, out_dir, true);
    if (*conv_cmd) return convergence_command(config, levels);
    if (*presets_cmd) return presets_command();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
