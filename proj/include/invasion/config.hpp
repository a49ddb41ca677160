#pragma once

#include <string>
#include <string_view>

#include "invasion/scenario.hpp"

namespace invasion {

enum class SnapshotMode { none, final_only, all };

struct OutputConfig {
  std::string dir = "out";
  SnapshotMode snapshots = SnapshotMode::final_only;

  bool operator==(const OutputConfig&) const = default;
};

/// A parsed configuration document together with its verbatim text.
struct RunConfig {
  Scenario scenario;
  OutputConfig output;
  std::string source;
};

/// Parses a document of `key = value` lines grouped under [model], [grid],
/// [stepper], [initial] and [output]; `#` starts a comment.
///
///   [model]    name, regime, d, gamma, mu, chi, g, formulation
///   [grid]     dims, cells, extents, origin   (lists separated by commas or spaces)
///   [stepper]  dt_max, cfl, t_end, record_every, flux
///   [initial]  u0, v0, m0, u0_noise, v0_noise, m0_noise, seed
///   [output]   dir, snapshots (none | final | all)
///
/// Required: d, gamma, mu, chi, g, dims, cells, extents, dt_max, t_end,
/// u0, v0, m0. record_every defaults to t_end / 400.
/// Profiles: constant(c), gaussian(center=x [y [z]], width=w, amplitude=a,
/// offset=o), tabulated(x=x0 x1 ..., y=y0 y1 ...).
///
/// Throws ParseError (with the line number) for malformed lines, unknown
/// sections or keys, duplicates and missing keys; ValidationError when the
/// resulting scenario breaks a parameter contract or its regime hypotheses.
RunConfig parse_run_config(std::string_view text);
Scenario parse_config(std::string_view text);

/// Canonical document; parsing it reproduces the scenario exactly.
std::string format_config(const Scenario& s, const OutputConfig& out = {});

/// Function spec in the format_spec syntax. Throws ValidationError.
FunctionSpec parse_spec(std::string_view text);
/// Throws ValidationError.
InitialProfile parse_profile(std::string_view text);
std::string format_profile(const InitialProfile& p, int dims);

}  // namespace invasion
