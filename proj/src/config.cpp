#include "invasion/config.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "invasion/error.hpp"
#include "invasion/text.hpp"

namespace invasion {

namespace {

using text::g17;

double to_double(std::string_view s, const std::string& what) {
  double v = 0.0;
  if (!text::parse_double(s, v)) throw ValidationError(what + ": expected a number, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<double> number_list(std::string_view s, const std::string& what) {
  std::string flat(s);
  std::replace(flat.begin(), flat.end(), ',', ' ');
  std::vector<double> out;
  for (const std::string& w : words(flat)) out.push_back(to_double(w, what));
  return out;
}

std::string join(const std::vector<double>& xs, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? sep : "") + g17(xs[k]);
  return out;
}

// "head(arg, arg, ...)" -> head and trimmed args.
std::pair<std::string, std::vector<std::string>> call(std::string_view s, const std::string& what) {
  s = text::trim(s);
  const auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')')
    throw ValidationError(what + ": expected name(arguments), got '" + std::string(s) + "'");
  std::string head(text::trim(s.substr(0, open)));
  const std::string_view inner = s.substr(open + 1, s.size() - open - 2);
  std::vector<std::string> args;
  if (!text::trim(inner).empty()) args = text::split(inner, ',');
  return {head, args};
}

// Named arguments "k=v"; every name must be allowed and appear once.
std::map<std::string, std::string> named(const std::vector<std::string>& args,
                                         const std::set<std::string>& allowed,
                                         const std::string& what) {
  std::map<std::string, std::string> out;
  for (const std::string& a : args) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw ValidationError(what + ": expected name=value, got '" + a + "'");
    std::string k(text::trim(std::string_view(a).substr(0, eq)));
    if (!allowed.count(k)) throw ValidationError(what + ": unknown argument '" + k + "'");
    if (!out.emplace(k, std::string(text::trim(std::string_view(a).substr(eq + 1)))).second)
      throw ValidationError(what + ": duplicate argument '" + k + "'");
  }
  for (const std::string& k : allowed)
    if (!out.count(k)) throw ValidationError(what + ": missing argument '" + k + "'");
  return out;
}

void expect_args(const std::vector<std::string>& args, std::size_t n, const std::string& what) {
  if (args.size() != n)
    throw ValidationError(what + ": expected " + std::to_string(n) + " argument(s)");
}

}  // namespace

FunctionSpec parse_spec(std::string_view s) {
  const auto [head, args] = call(s, "function");
  if (head == "constant") {
    expect_args(args, 1, head);
    return FunctionSpec::constant(to_double(args[0], head));
  }
  if (head == "affine" || head == "saturating") {
    expect_args(args, 2, head);
    const double a = to_double(args[0], head), b = to_double(args[1], head);
    return head == "affine" ? FunctionSpec::affine(a, b) : FunctionSpec::saturating(a, b);
  }
  if (head == "tabulated") {
    auto kv = named(args, {"v", "y"}, head);
    return FunctionSpec::tabulated(number_list(kv["v"], head), number_list(kv["y"], head));
  }
  throw ValidationError("unknown function family '" + head + "'");
}

InitialProfile parse_profile(std::string_view s) {
  const auto [head, args] = call(s, "profile");
  if (head == "constant") {
    expect_args(args, 1, head);
    return InitialProfile::constant(to_double(args[0], head));
  }
  if (head == "gaussian") {
    auto kv = named(args, {"center", "width", "amplitude", "offset"}, head);
    const std::vector<double> c = number_list(kv["center"], head);
    if (c.empty() || c.size() > 3) throw ValidationError("gaussian: center needs 1 to 3 coordinates");
    std::array<double, 3> center{0.0, 0.0, 0.0};
    std::copy(c.begin(), c.end(), center.begin());
    return InitialProfile::gaussian(center, to_double(kv["width"], head),
                                    to_double(kv["amplitude"], head), to_double(kv["offset"], head));
  }
  if (head == "tabulated") {
    auto kv = named(args, {"x", "y"}, head);
    return InitialProfile::tabulated(number_list(kv["x"], head), number_list(kv["y"], head));
  }
  throw ValidationError("unknown profile kind '" + head + "'");
}

std::string format_profile(const InitialProfile& p, int dims) {
  switch (p.kind) {
    case InitialProfile::Kind::constant:
      return "constant(" + g17(p.offset) + ")";
    case InitialProfile::Kind::gaussian_bump: {
      std::size_t n = static_cast<std::size_t>(std::clamp(dims, 1, 3));
      for (std::size_t k = n; k < 3; ++k)
        if (p.center[k] != 0.0) n = k + 1;
      return "gaussian(center=" + join({p.center.begin(), p.center.begin() + n}, " ") +
             ", width=" + g17(p.width) + ", amplitude=" + g17(p.amplitude) +
             ", offset=" + g17(p.offset) + ")";
    }
    case InitialProfile::Kind::tabulated:
      return "tabulated(x=" + join(p.nodes, " ") + ", y=" + join(p.node_values, " ") + ")";
  }
  return {};
}

namespace {

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"model", {"name", "regime", "d", "gamma", "mu", "chi", "g", "formulation"}},
      {"grid", {"dims", "cells", "extents", "origin"}},
      {"stepper", {"dt_max", "cfl", "t_end", "record_every", "flux"}},
      {"initial", {"u0", "v0", "m0", "u0_noise", "v0_noise", "m0_noise", "seed"}},
      {"output", {"dir", "snapshots"}},
  };
  return s;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  const Entry& need(const std::string& section, const std::string& key) const {
    if (const Entry* e = find(section, key)) return *e;
    throw ParseError(last_line_, "missing required key '" + key + "' in [" + section + "]");
  }

  // Runs f on the entry's value, tagging any validation failure with its line.
  template <typename F>
  auto at(const Entry& e, const std::string& key, F f) const {
    try {
      return f(e.value);
    } catch (const ValidationError& err) {
      throw ValidationError("line " + std::to_string(e.line) + ": " + key + ": " + err.what());
    }
  }

  double number(const std::string& section, const std::string& key) const {
    return at(need(section, key), key, [&](const std::string& v) { return to_double(v, key); });
  }
  double number_or(const std::string& section, const std::string& key, double fallback) const {
    const Entry* e = find(section, key);
    return e ? at(*e, key, [&](const std::string& v) { return to_double(v, key); }) : fallback;
  }

  int last_line_ = 0;

 private:
  std::map<std::string, Section> sections_;
};

std::map<std::string, Section> tokenize(std::string_view text, int& last_line) {
  std::map<std::string, Section> sections;
  std::string current;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string_view line = text::trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "malformed section header");
      current = std::string(text::trim(line.substr(1, line.size() - 2)));
      if (!schema().count(current)) throw ParseError(line_no, "unknown section [" + current + "]");
      if (sections.count(current)) throw ParseError(line_no, "duplicate section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const std::string key(text::trim(line.substr(0, eq)));
    const std::string value(text::trim(line.substr(eq + 1)));
    if (current.empty()) throw ParseError(line_no, "key '" + key + "' outside any section");
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (!schema().at(current).count(key))
      throw ParseError(line_no, "unknown key '" + key + "' in [" + current + "]");
    if (value.empty()) throw ParseError(line_no, "empty value for '" + key + "'");
    if (!sections[current].emplace(key, Entry{value, line_no}).second)
      throw ParseError(line_no, "duplicate key '" + key + "'");
  }
  last_line = line_no;
  return sections;
}

const char* formulation_name(Formulation f) {
  return f == Formulation::original_uvm ? "original_uvm" : "transformed_wvm";
}

const char* flux_name(FluxMode f) { return f == FluxMode::upwind ? "upwind" : "centered"; }

const char* snapshot_name(SnapshotMode m) {
  switch (m) {
    case SnapshotMode::none: return "none";
    case SnapshotMode::final_only: return "final";
    case SnapshotMode::all: return "all";
  }
  return "final";
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  int last_line = 0;
  Reader r(tokenize(text, last_line));
  r.last_line_ = last_line;

  RunConfig cfg;
  cfg.source = std::string(text);
  Scenario& s = cfg.scenario;

  if (const Entry* e = r.find("model", "name")) s.name = e->value;
  if (const Entry* e = r.find("model", "regime"))
    s.regime = r.at(*e, "regime", [](const std::string& v) { return regime_from_string(v); });
  s.params.d = r.number("model", "d");
  s.params.gamma = r.number("model", "gamma");
  s.params.mu = r.number("model", "mu");
  s.params.chi = r.at(r.need("model", "chi"), "chi", [](const std::string& v) { return parse_spec(v); });
  s.params.g = r.at(r.need("model", "g"), "g", [](const std::string& v) { return parse_spec(v); });
  if (const Entry* e = r.find("model", "formulation")) {
    if (e->value == "original_uvm") s.formulation = Formulation::original_uvm;
    else if (e->value == "transformed_wvm") s.formulation = Formulation::transformed_wvm;
    else throw ParseError(e->line, "formulation must be original_uvm or transformed_wvm");
  }

  {
    const Entry& dims_e = r.need("grid", "dims");
    long long dims = 0;
    if (!text::parse_int(dims_e.value, dims)) throw ParseError(dims_e.line, "dims must be an integer");
    const Entry& cells_e = r.need("grid", "cells");
    std::vector<int> cells;
    for (double c : r.at(cells_e, "cells", [](const std::string& v) { return number_list(v, "cells"); })) {
      if (c != static_cast<int>(c)) throw ParseError(cells_e.line, "cells must be integers");
      cells.push_back(static_cast<int>(c));
    }
    const std::vector<double> extents =
        r.at(r.need("grid", "extents"), "extents", [](const std::string& v) { return number_list(v, "extents"); });
    std::vector<double> origin;
    if (const Entry* e = r.find("grid", "origin"))
      origin = r.at(*e, "origin", [](const std::string& v) { return number_list(v, "origin"); });
    s.grid = r.at(dims_e, "grid", [&](const std::string&) {
      return build_grid(static_cast<int>(dims), cells, extents, origin);
    });
  }

  s.stepper.dt_max = r.number("stepper", "dt_max");
  s.stepper.t_end = r.number("stepper", "t_end");
  s.stepper.cfl = r.number_or("stepper", "cfl", s.stepper.cfl);
  s.stepper.record_every = r.number_or("stepper", "record_every", s.stepper.t_end / 400.0);
  if (const Entry* e = r.find("stepper", "flux")) {
    if (e->value == "upwind") s.stepper.flux = FluxMode::upwind;
    else if (e->value == "centered") s.stepper.flux = FluxMode::centered;
    else throw ParseError(e->line, "flux must be upwind or centered");
  }

  const auto profile = [&](const std::string& key) {
    InitialProfile p = r.at(r.need("initial", key), key, [](const std::string& v) { return parse_profile(v); });
    p.noise = r.number_or("initial", key + "_noise", 0.0);
    return p;
  };
  s.initial.u0 = profile("u0");
  s.initial.v0 = profile("v0");
  s.initial.m0 = profile("m0");
  if (const Entry* e = r.find("initial", "seed")) {
    long long seed = 0;
    if (!text::parse_int(e->value, seed) || seed < 0)
      throw ParseError(e->line, "seed must be a nonnegative integer");
    s.initial.seed = static_cast<std::uint64_t>(seed);
  }

  if (const Entry* e = r.find("output", "dir")) cfg.output.dir = e->value;
  if (const Entry* e = r.find("output", "snapshots")) {
    if (e->value == "none") cfg.output.snapshots = SnapshotMode::none;
    else if (e->value == "final") cfg.output.snapshots = SnapshotMode::final_only;
    else if (e->value == "all") cfg.output.snapshots = SnapshotMode::all;
    else throw ParseError(e->line, "snapshots must be none, final or all");
  }

  validate_scenario(s);
  return cfg;
}

Scenario parse_config(std::string_view text) { return parse_run_config(text).scenario; }

std::string format_config(const Scenario& s, const OutputConfig& out) {
  const Grid& g = s.grid;
  std::vector<double> cells, extents, origin;
  for (int d = 0; d < g.dims; ++d) {
    cells.push_back(g.cells[d]);
    extents.push_back(g.extent(d));
    origin.push_back(g.origin[d]);
  }
  std::ostringstream o;
  o << "[model]\n"
    << "name = " << s.name << "\n"
    << "regime = " << to_string(s.regime) << "\n"
    << "d = " << g17(s.params.d) << "\n"
    << "gamma = " << g17(s.params.gamma) << "\n"
    << "mu = " << g17(s.params.mu) << "\n"
    << "chi = " << format_spec(s.params.chi) << "\n"
    << "g = " << format_spec(s.params.g) << "\n"
    << "formulation = " << formulation_name(s.formulation) << "\n\n"
    << "[grid]\n"
    << "dims = " << g.dims << "\n"
    << "cells = " << join(cells, ", ") << "\n"
    << "extents = " << join(extents, ", ") << "\n"
    << "origin = " << join(origin, ", ") << "\n\n"
    << "[stepper]\n"
    << "dt_max = " << g17(s.stepper.dt_max) << "\n"
    << "cfl = " << g17(s.stepper.cfl) << "\n"
    << "t_end = " << g17(s.stepper.t_end) << "\n"
    << "record_every = " << g17(s.stepper.record_every) << "\n"
    << "flux = " << flux_name(s.stepper.flux) << "\n\n"
    << "[initial]\n"
    << "seed = " << s.initial.seed << "\n";
  const std::pair<const char*, const InitialProfile*> profiles[] = {
      {"u0", &s.initial.u0}, {"v0", &s.initial.v0}, {"m0", &s.initial.m0}};
  for (const auto& [key, p] : profiles) {
    o << key << " = " << format_profile(*p, g.dims) << "\n";
    if (p->noise != 0.0) o << key << "_noise = " << g17(p->noise) << "\n";
  }
  o << "\n[output]\n"
    << "dir = " << out.dir << "\n"
    << "snapshots = " << snapshot_name(out.snapshots) << "\n";
  return o.str();
}

}  // namespace invasion
