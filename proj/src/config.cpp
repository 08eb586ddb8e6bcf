#include "macproj/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace macproj {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

template <class T>
T number(const std::string& s) {
  const std::string t = trim(s);
  T v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw std::invalid_argument("'" + t + "' is not a valid number");
  }
  return v;
}

std::vector<double> number_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& w : tokens(s)) out.push_back(number<double>(w));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + fmt(v[i]);
  return out;
}

struct Key {
  const char* section;
  const char* name;
  std::function<void(RunConfig&, const std::string&)> read;
  std::function<std::string(const RunConfig&)> write;
  std::string full() const { return std::string(section) + "." + name; }
};

std::array<double, 3> triple(const std::string& s) {
  const auto v = number_list(s);
  if (v.size() != 2 && v.size() != 3) throw std::invalid_argument("expected 2 or 3 values");
  return {v[0], v[1], v.size() == 3 ? v[2] : 0.0};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back({"domain", "extent", [](RunConfig& c, const std::string& s) { c.extent = triple(s); },
                 [](const RunConfig& c) { return fmt_list({c.extent.begin(), c.extent.end()}); }});
    k.push_back({"grid", "dim", [](RunConfig& c, const std::string& s) { c.dim = number<int>(s); },
                 [](const RunConfig& c) { return std::to_string(c.dim); }});
    k.push_back({"grid", "n", [](RunConfig& c, const std::string& s) { c.n = number<int>(s); },
                 [](const RunConfig& c) { return std::to_string(c.n); }});
    k.push_back({"grid", "stretch", [](RunConfig& c, const std::string& s) { c.stretch = number<double>(s); },
                 [](const RunConfig& c) { return fmt(c.stretch); }});
    for (int a = 0; a < 3; ++a) {
      static const char* names[3] = {"x", "y", "z"};
      k.push_back({"grid", names[a], [a](RunConfig& c, const std::string& s) { c.coords[a] = number_list(s); },
                   [a](const RunConfig& c) { return fmt_list(c.coords[a]); }});
    }
    k.push_back({"time", "T", [](RunConfig& c, const std::string& s) { c.T = number<double>(s); },
                 [](const RunConfig& c) { return fmt(c.T); }});
    k.push_back({"time", "N", [](RunConfig& c, const std::string& s) { c.N = number<int>(s); },
                 [](const RunConfig& c) { return std::to_string(c.N); }});
    k.push_back({"problem", "name", [](RunConfig& c, const std::string& s) { c.problem = trim(s); },
                 [](const RunConfig& c) { return c.problem; }});
    k.push_back({"problem", "force",
                 [](RunConfig& c, const std::string& s) {
                   if (trim(s).empty()) {
                     c.force.reset();
                   } else {
                     c.force = triple(s);
                   }
                 },
                 [](const RunConfig& c) {
                   return c.force ? fmt_list({c.force->begin(), c.force->end()}) : std::string();
                 }});
    k.push_back({"solver", "pred_tol", [](RunConfig& c, const std::string& s) { c.pred_tol = number<double>(s); },
                 [](const RunConfig& c) { return fmt(c.pred_tol); }});
    k.push_back({"solver", "poisson_tol",
                 [](RunConfig& c, const std::string& s) { c.poisson_tol = number<double>(s); },
                 [](const RunConfig& c) { return fmt(c.poisson_tol); }});
    k.push_back({"solver", "max_iter", [](RunConfig& c, const std::string& s) { c.max_iter = number<int>(s); },
                 [](const RunConfig& c) { return std::to_string(c.max_iter); }});
    k.push_back({"output", "dir", [](RunConfig& c, const std::string& s) { c.out_dir = trim(s); },
                 [](const RunConfig& c) { return c.out_dir; }});
    k.push_back({"output", "every", [](RunConfig& c, const std::string& s) { c.every = number<int>(s); },
                 [](const RunConfig& c) { return std::to_string(c.every); }});
    k.push_back({"output", "format",
                 [](RunConfig& c, const std::string& s) {
                   const std::string f = trim(s);
                   if (f == "csv") {
                     c.format = FieldFormat::kCsv;
                   } else if (f == "vtk") {
                     c.format = FieldFormat::kVtk;
                   } else if (f == "none") {
                     c.format = FieldFormat::kNone;
                   } else {
                     throw std::invalid_argument("expected csv, vtk or none");
                   }
                 },
                 [](const RunConfig& c) -> std::string {
                   switch (c.format) {
                     case FieldFormat::kCsv: return "csv";
                     case FieldFormat::kVtk: return "vtk";
                     default: return "none";
                   }
                 }});
    k.push_back({"run", "seed", [](RunConfig& c, const std::string& s) { c.seed = number<std::uint64_t>(s); },
                 [](const RunConfig& c) { return std::to_string(c.seed); }});
    k.push_back({"study", "levels",
                 [](RunConfig& c, const std::string& s) {
                   c.levels.clear();
                   for (const auto& w : tokens(s)) {
                     const auto colon = w.find(':');
                     if (colon == std::string::npos) throw std::invalid_argument("expected n:N pairs");
                     c.levels.push_back({number<int>(w.substr(0, colon)), number<int>(w.substr(colon + 1))});
                   }
                 },
                 [](const RunConfig& c) {
                   std::string out;
                   for (std::size_t i = 0; i < c.levels.size(); ++i) {
                     out += (i ? " " : "") + std::to_string(c.levels[i][0]) + ":" + std::to_string(c.levels[i][1]);
                   }
                   return out;
                 }});
    k.push_back({"study", "taus", [](RunConfig& c, const std::string& s) { c.taus = number_list(s); },
                 [](const RunConfig& c) { return fmt_list(c.taus); }});
    k.push_back({"study", "trials", [](RunConfig& c, const std::string& s) { c.trials = number<int>(s); },
                 [](const RunConfig& c) { return std::to_string(c.trials); }});
    return k;
  }();
  return table;
}

const Key* find_key(const std::string& section, const std::string& name) {
  for (const Key& k : keys()) {
    if (section == k.section && name == k.name) return &k;
  }
  return nullptr;
}

bool known_section(const std::string& section) {
  return std::any_of(keys().begin(), keys().end(), [&](const Key& k) { return section == k.section; });
}

std::string join(const std::vector<std::string>& issues) {
  std::string out = "invalid configuration";
  for (const auto& i : issues) out += "\n  " + i;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::vector<std::string> issues;
  std::istringstream in(text);
  std::string section;
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back(where + "malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!known_section(section)) issues.push_back(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back(where + "expected key = value");
      continue;
    }
    const std::string name = trim(line.substr(0, eq));
    const Key* key = find_key(section, name);
    if (!key) {
      if (known_section(section)) issues.push_back(where + "unknown key " + section + "." + name);
      continue;
    }
    try {
      key->read(c, line.substr(eq + 1));
    } catch (const std::exception& e) {
      issues.push_back(key->full() + ": " + e.what());
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  validate(c);
  return c;
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  std::string section;
  for (const Key& k : keys()) {
    if (section != k.section) {
      section = k.section;
      out += (out.empty() ? "" : "\n") + std::string("[") + section + "]\n";
    }
    const std::string value = k.write(config);
    out += std::string(k.name) + (value.empty() ? " =" : " = " + value) + "\n";
  }
  return out;
}

void apply_env_overrides(RunConfig& config, const EnvLookup& getenv) {
  std::vector<std::string> issues;
  for (const Key& k : keys()) {
    std::string var = "MACPROJ_" + std::string(k.section) + "_" + k.name;
    std::transform(var.begin(), var.end(), var.begin(), [](unsigned char ch) { return std::toupper(ch); });
    const char* value = getenv(var.c_str());
    if (!value) continue;
    try {
      k.read(config, value);
    } catch (const std::exception& e) {
      issues.push_back(k.full() + " (from " + var + "): " + e.what());
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  validate(config);
}

void validate(const RunConfig& c) {
  std::vector<std::string> issues;
  auto need = [&](bool ok, const std::string& key, const std::string& what) {
    if (!ok) issues.push_back(key + ": " + what);
  };
  need(c.dim == 2 || c.dim == 3, "grid.dim", "must be 2 or 3");
  need(c.n >= 2, "grid.n", "must be at least 2");
  need(c.stretch >= 0.0 && c.stretch < 1.0, "grid.stretch", "must be in [0, 1)");
  static const char* axis_keys[3] = {"grid.x", "grid.y", "grid.z"};
  for (int a = 0; a < 3; ++a) {
    const auto& x = c.coords[a];
    if (a >= c.dim) {
      need(x.empty(), axis_keys[a], "given for an axis beyond grid.dim");
      continue;
    }
    need(c.extent[a] > 0.0, "domain.extent", "must be positive on every axis");
    if (x.empty()) continue;
    need(x.size() >= 3, axis_keys[a], "needs at least 3 coordinates");
    need(std::adjacent_find(x.begin(), x.end(), std::greater_equal<>()) == x.end(), axis_keys[a],
         "coordinates must be strictly increasing");
  }
  need(c.T > 0.0, "time.T", "must be positive");
  need(c.N >= 1, "time.N", "must be at least 1");
  if (!c.force) {
    const auto names = problem_names();
    if (std::find(names.begin(), names.end(), c.problem) == names.end()) {
      issues.push_back("problem.name: unknown problem '" + c.problem + "'");
    } else {
      need(mms_problem(c.problem).dim == c.dim, "problem.name", "dimension differs from grid.dim");
      if (!mms_problem(c.problem).stationary) {
        for (int a = 0; a < std::min(c.dim, 3); ++a) {
          const auto& x = c.coords[a];
          const bool unit = x.empty() ? c.extent[a] == 1.0 : (x.front() == 0.0 && x.back() == 1.0);
          need(unit, x.empty() ? "domain.extent" : axis_keys[a], "problem " + c.problem + " lives on the unit box");
        }
      }
    }
  }
  need(c.pred_tol > 0.0 && c.pred_tol < 1.0, "solver.pred_tol", "must be in (0, 1)");
  need(c.poisson_tol > 0.0 && c.poisson_tol < 1.0, "solver.poisson_tol", "must be in (0, 1)");
  need(c.max_iter >= 1, "solver.max_iter", "must be at least 1");
  need(!c.out_dir.empty(), "output.dir", "must not be empty");
  need(c.every >= 0, "output.every", "must not be negative");
  for (const auto& l : c.levels) need(l[0] >= 2 && l[1] >= 1, "study.levels", "each level needs n >= 2 and N >= 1");
  for (double t : c.taus) need(t >= 0.0, "study.taus", "must not be negative");
  need(c.trials >= 0, "study.trials", "must not be negative");
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const Key& k : keys()) out.push_back(k.full());
  return out;
}

MacGrid make_grid_from(const RunConfig& c) {
  std::vector<std::vector<double>> coords;
  for (int a = 0; a < c.dim; ++a) {
    coords.push_back(c.coords[a].empty() ? graded_coords(c.n, c.extent[a], c.stretch) : c.coords[a]);
  }
  return MacGrid::build(std::move(coords));
}

AnalyticProblem make_problem(const RunConfig& c) {
  if (c.force) return body_force_problem(c.dim, *c.force);
  return mms_problem(c.problem);
}

SchemeOptions scheme_options(const RunConfig& c) {
  SchemeOptions o;
  o.prediction_tolerance = c.pred_tol;
  o.poisson_tolerance = c.poisson_tol;
  o.max_iterations = c.max_iter;
  return o;
}

}  // namespace macproj
