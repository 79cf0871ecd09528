#include "kssim/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace kssim {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::Config, where + ": " + what);
}

double to_double(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) bad(where, "trailing characters in number '" + v + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    bad(where, "expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) bad(where, "trailing characters in integer '" + v + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    bad(where, "expected an integer, got '" + v + "'");
  }
}

unsigned long long to_seed(const std::string& v, const std::string& where) {
  try {
    size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) bad(where, "trailing characters in seed '" + v + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    bad(where, "expected an unsigned integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& v, const std::string& where) {
  if (v == "true") return true;
  if (v == "false") return false;
  bad(where, "expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), where));
  if (out.empty()) bad(where, "expected a comma-separated list of numbers");
  return out;
}

void set_field_spec(FieldSpec& f, const std::string& key, const std::string& value,
                    const std::string& where) {
  if (key == "kind")
    f.kind = generator_from_name(value);
  else if (key == "value")
    f.value = to_double(value, where);
  else if (key == "center_x")
    f.center_x = to_double(value, where);
  else if (key == "center_y")
    f.center_y = to_double(value, where);
  else if (key == "width")
    f.width = to_double(value, where);
  else if (key == "amplitude")
    f.amplitude = to_double(value, where);
  else if (key == "floor")
    f.floor = to_double(value, where);
  else if (key == "offset")
    f.offset = to_double(value, where);
  else if (key == "modes")
    f.modes = to_int(value, where);
  else
    bad(where, "unknown key '" + key + "'");
}

void set_value(ExperimentConfig& c, const std::string& section, const std::string& key,
               const std::string& value, const std::string& where) {
  if (section == "params") {
    if (key == "a")
      c.params.a = to_double(value, where);
    else if (key == "mu")
      c.params.mu = to_double(value, where);
    else if (key == "chi")
      c.params.chi = to_double(value, where);
    else
      bad(where, "unknown key '" + key + "' in [params]");
  } else if (section == "grid") {
    if (key == "kind") {
      if (value == "line")
        c.grid_dim = 1;
      else if (value == "rect")
        c.grid_dim = 2;
      else
        bad(where, "grid kind must be line or rect");
    } else if (key == "length")
      c.length_x = to_double(value, where);
    else if (key == "lx")
      c.length_x = to_double(value, where);
    else if (key == "ly")
      c.length_y = to_double(value, where);
    else if (key == "nx")
      c.nx = to_int(value, where);
    else if (key == "ny")
      c.ny = to_int(value, where);
    else
      bad(where, "unknown key '" + key + "' in [grid]");
  } else if (section == "step") {
    if (key == "dt_init")
      c.control.dt_init = to_double(value, where);
    else if (key == "dt_min")
      c.control.dt_min = to_double(value, where);
    else if (key == "safety")
      c.control.safety = to_double(value, where);
    else if (key == "cfl_diff")
      c.control.cfl_diff = to_double(value, where);
    else if (key == "v_floor")
      c.control.v_floor = to_double(value, where);
    else if (key == "u_cap")
      c.control.u_cap = to_double(value, where);
    else if (key == "fixed_dt")
      c.control.fixed_dt = to_bool(value, where);
    else
      bad(where, "unknown key '" + key + "' in [step]");
  } else if (section == "run") {
    if (key == "horizon")
      c.horizon = to_double(value, where);
    else if (key == "sample_every")
      c.sample_every = to_double(value, where);
    else if (key == "conv_tol")
      c.conv_tol = to_double(value, where);
    else if (key == "transport_only")
      c.transport_only = to_bool(value, where);
    else if (key == "eta0_hint")
      c.eta0_hint = to_double(value, where);
    else
      bad(where, "unknown key '" + key + "' in [run]");
  } else if (section == "initial") {
    if (key == "seed")
      c.initial.seed = to_seed(value, where);
    else if (key == "u_scale")
      c.initial.u_scale = to_double(value, where);
    else
      bad(where, "unknown key '" + key + "' in [initial]");
  } else if (section == "initial.u") {
    set_field_spec(c.initial.u, key, value, where);
  } else if (section == "initial.v") {
    set_field_spec(c.initial.v, key, value, where);
  } else if (section == "output") {
    if (key == "csv")
      c.output.csv_path = value;
    else if (key == "summary")
      c.output.summary_path = value;
    else if (key == "sweep_csv")
      c.output.sweep_csv_path = value;
    else
      bad(where, "unknown key '" + key + "' in [output]");
  } else if (section == "sweep") {
    if (key == "a")
      c.sweep.a = to_list(value, where);
    else if (key == "chi")
      c.sweep.chi = to_list(value, where);
    else if (key == "mu")
      c.sweep.mu = to_list(value, where);
    else if (key == "u_amp_scale") {
      if (value != "none" && value != "inv-mu-kappa")
        bad(where, "u_amp_scale must be none or inv-mu-kappa");
      c.sweep.u_amp_scale = value;
    } else
      bad(where, "unknown key '" + key + "' in [sweep]");
  } else {
    bad(where, "unknown section [" + section + "]");
  }
}

void finalize(ExperimentConfig& c) { c.params.dim = c.grid_dim; }

}  // namespace

Grid make_grid(const ExperimentConfig& cfg) {
  return cfg.grid_dim == 1 ? Grid::line(cfg.length_x, cfg.nx)
                           : Grid::rect(cfg.length_x, cfg.length_y, cfg.nx, cfg.ny);
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') bad(where, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) bad(where, "empty section name");
      continue;
    }
    const size_t eq = s.find('=');
    if (eq == std::string::npos) bad(where, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) bad(where, "empty key");
    if (section.empty()) bad(where, "key outside any [section]");
    set_value(cfg, section, key, value, where);
  }
  finalize(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    fail(ErrorKind::Config, "override '" + assignment + "' needs section.key=value");
  const std::string dotted = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const size_t dot = dotted.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == dotted.size())
    fail(ErrorKind::Config, "override key '" + dotted + "' needs section.key form");
  // initial.u and initial.v are sections themselves, so split on the last dot.
  const std::string section = dotted.substr(0, dot);
  const std::string key = dotted.substr(dot + 1);
  set_value(cfg, section, key, value, "override '" + assignment + "'");
  finalize(cfg);
}

}  // namespace kssim
