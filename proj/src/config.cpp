#include "acsq/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace acsq {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

[[noreturn]] void fail_line(const std::string& path, int line,
                            const std::string& msg) {
  std::ostringstream os;
  os << path << ":" << line << ": " << msg;
  throw ConfigError(os.str());
}

double parse_double(const std::string& path, int line, const std::string& key,
                    const std::string& section, const std::string& text) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    fail_line(path, line,
              "key '" + key + "' in [" + section + "]: expected a number, got '" +
                  text + "'");
  return v;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

ConfigFile ConfigFile::parse_text(const std::string& text,
                                  const std::string& path) {
  ConfigFile cf;
  cf.path_ = path;
  cf.text_ = text;

  std::string section;
  bool have_section = false;
  int line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line[0] == '[') {
      auto close = line.find(']');
      if (close == std::string::npos)
        fail_line(path, line_no, "unterminated section header");
      if (trim(line.substr(close + 1)).size() != 0)
        fail_line(path, line_no, "trailing characters after section header");
      section = trim(line.substr(1, close - 1));
      if (section.empty()) fail_line(path, line_no, "empty section name");
      have_section = true;
      cf.sections_[section];  // a section may legitimately stay empty
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail_line(path, line_no, "expected 'key = value'");
    if (!have_section)
      fail_line(path, line_no, "key appears before any [section]");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail_line(path, line_no, "empty key name");
    std::string value = trim(line.substr(eq + 1));
    auto& sec = cf.sections_[section];
    if (sec.count(key))
      fail_line(path, line_no,
                "duplicate key '" + key + "' in [" + section + "]");
    sec[key] = Entry{value, line_no, false};
  }
  return cf;
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  return &k->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key,
                                   const std::string& fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  e->used = true;
  return e->value;
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key, double fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  e->used = true;
  return parse_double(path_, e->line, key, section, e->value);
}

int ConfigFile::get_int(const std::string& section, const std::string& key,
                        int fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  e->used = true;
  int v = 0;
  auto res =
      std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
  if (res.ec != std::errc{} || res.ptr != e->value.data() + e->value.size())
    fail_line(path_, e->line,
              "key '" + key + "' in [" + section +
                  "]: expected an integer, got '" + e->value + "'");
  return v;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  e->used = true;
  std::string v = lower(e->value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail_line(path_, e->line,
            "key '" + key + "' in [" + section + "]: expected a boolean, got '" +
                e->value + "'");
}

std::vector<double> ConfigFile::get_list(
    const std::string& section, const std::string& key,
    const std::vector<double>& fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  e->used = true;
  std::vector<double> out;
  std::string v = trim(e->value);
  if (v.empty()) return out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    std::size_t comma = v.find(',', pos);
    std::string piece =
        trim(v.substr(pos, comma == std::string::npos ? comma : comma - pos));
    out.push_back(parse_double(path_, e->line, key, section, piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void ConfigFile::fail_at(const std::string& section, const std::string& key,
                         const std::string& message) const {
  const Entry* e = find(section, key);
  fail_line(path_, e ? e->line : 0,
            "key '" + key + "' in [" + section + "]: " + message);
}

std::vector<std::string> ConfigFile::unknown_key_diagnostics() const {
  std::vector<std::string> out;
  for (const auto& [section, entries] : sections_)
    for (const auto& [key, e] : entries)
      if (!e.used) {
        std::ostringstream os;
        os << path_ << ":" << e.line << ": unknown key '" << key << "' in ["
           << section << "]";
        out.push_back(os.str());
      }
  return out;
}

RunConfig load_run_config(const ConfigFile& cf) {
  RunConfig rc;

  // ---- [fiducial] ----------------------------------------------------------
  std::string family = lower(cf.get_string("fiducial", "family", "kepler_cubic"));
  double kappa = cf.get_double("fiducial", "kappa", 1.0);
  if (kappa <= 0.0) cf.fail_at("fiducial", "kappa", "must be > 0");
  FiducialVector base;
  if (family == "kepler_cubic") {
    base = FiducialVector::kepler_cubic();
  } else if (family == "log_gaussian") {
    double nu = cf.get_double("fiducial", "nu", 2.0);
    if (nu <= 0.0) cf.fail_at("fiducial", "nu", "must be > 0");
    base = FiducialVector::log_gaussian(nu);
  } else if (family == "bessel_k") {
    double nu = cf.get_double("fiducial", "nu", 2.0);
    double xi = cf.get_double("fiducial", "xi", 1.0);
    if (nu <= 0.0) cf.fail_at("fiducial", "nu", "must be > 0");
    if (xi <= 0.0) cf.fail_at("fiducial", "xi", "must be > 0");
    base = FiducialVector::bessel_k_family(nu, xi);
  } else if (family == "laguerre") {
    int n = cf.get_int("fiducial", "n", 0);
    double alpha0 = cf.get_double("fiducial", "alpha0", 2.0);
    if (n < 0) cf.fail_at("fiducial", "n", "must be >= 0");
    if (alpha0 < 2.0) cf.fail_at("fiducial", "alpha0", "must be >= 2");
    base = FiducialVector::laguerre_basis(n, alpha0);
  } else {
    cf.fail_at("fiducial", "family",
               "unknown family '" + family +
                   "' (expected kepler_cubic, log_gaussian, bessel_k or "
                   "laguerre)");
  }
  rc.psi = kappa == 1.0 ? base : base.with_kappa(kappa);

  // ---- [model] -------------------------------------------------------------
  std::string model = lower(cf.get_string("model", "model", "kepler"));
  if (model == "kepler")
    rc.model.model = Model::Kepler;
  else if (model == "oscillator")
    rc.model.model = Model::Oscillator;
  else if (model == "linear")
    rc.model.model = Model::Linear;
  else
    cf.fail_at("model", "model",
               "unknown model '" + model +
                   "' (expected kepler, oscillator or linear)");
  rc.model.hbar = cf.get_double("model", "hbar", 1.0);
  rc.model.gm = cf.get_double("model", "gm", 2.0);
  rc.model.k = cf.get_double("model", "k", 1.0);
  rc.model.box = cf.get_double("model", "box", 40.0);
  if (rc.model.hbar <= 0.0) cf.fail_at("model", "hbar", "must be > 0");
  if (rc.model.gm <= 0.0) cf.fail_at("model", "gm", "must be > 0");
  if (rc.model.k <= 0.0) cf.fail_at("model", "k", "must be > 0");
  if (rc.model.box <= 0.0) cf.fail_at("model", "box", "must be > 0");

  // ---- [constants] ---------------------------------------------------------
  // default rows stop before the family's divergent moments
  std::vector<double> default_gammas =
      (family == "log_gaussian" || family == "bessel_k")
          ? std::vector<double>{-3, -2, -1, 0, 1, 2}
          : std::vector<double>{-4, -3, -2, -1, 0, 1};
  rc.gammas = cf.get_list("constants", "gammas", default_gammas);
  if (rc.gammas.empty())
    cf.fail_at("constants", "gammas", "at least one exponent is required");

  // ---- [spectrum] ----------------------------------------------------------
  rc.levels = cf.get_int("spectrum", "levels", 10);
  if (rc.levels <= 0) cf.fail_at("spectrum", "levels", "must be >= 1");
  if (cf.has("spectrum", "method")) {
    std::string m = lower(cf.get_string("spectrum", "method", ""));
    rc.method_given = true;
    if (m == "analytic")
      rc.method = SpectrumMethod::Analytic;
    else if (m == "fem" || m == "finite_element")
      rc.method = SpectrumMethod::FiniteElement;
    else
      cf.fail_at("spectrum", "method",
                 "unknown method '" + m + "' (expected analytic or fem)");
  }
  rc.grid.nodes = cf.get_int("spectrum", "nodes", rc.grid.nodes);
  rc.grid.x_max = cf.get_double("spectrum", "x_max", rc.grid.x_max);
  rc.eigenfunctions = cf.get_bool("spectrum", "eigenfunctions", false);

  // ---- [evolve] ------------------------------------------------------------
  double q0 = cf.get_double("evolve", "q0", 4.0);
  double p0 = cf.get_double("evolve", "p0", 0.0);
  if (q0 <= 0.0) cf.fail_at("evolve", "q0", "must be > 0");
  rc.origin = HalfPlanePoint(q0, p0);
  rc.expansion.n_max = cf.get_int("evolve", "n_max", rc.expansion.n_max);
  rc.expansion.auto_raise =
      cf.get_bool("evolve", "auto_raise", rc.expansion.auto_raise);
  rc.expansion.target = cf.get_double("evolve", "target", rc.expansion.target);
  rc.expansion.hard_cap = cf.get_int("evolve", "hard_cap", rc.expansion.hard_cap);
  rc.expansion.grid = rc.grid;
  rc.times = cf.get_list("evolve", "times", rc.times);
  if (rc.times.empty())
    cf.fail_at("evolve", "times", "at least one time value is required");
  rc.density.q_lo = cf.get_double("evolve", "q_lo", rc.density.q_lo);
  rc.density.q_hi = cf.get_double("evolve", "q_hi", rc.density.q_hi);
  rc.density.p_lo = cf.get_double("evolve", "p_lo", rc.density.p_lo);
  rc.density.p_hi = cf.get_double("evolve", "p_hi", rc.density.p_hi);
  rc.density.nq = cf.get_int("evolve", "nq", rc.density.nq);
  rc.density.np = cf.get_int("evolve", "np", rc.density.np);

  // ---- [trajectory] --------------------------------------------------------
  std::string kind = lower(cf.get_string("trajectory", "kind", "semiclassical"));
  if (kind == "semiclassical")
    rc.traj_semiclassical = true;
  else if (kind == "classical")
    rc.traj_semiclassical = false;
  else
    cf.fail_at("trajectory", "kind",
               "unknown kind '" + kind + "' (expected classical or "
                                         "semiclassical)");
  if (cf.has("trajectory", "energy")) {
    rc.energy = cf.get_double("trajectory", "energy", 0.0);
    rc.energy_given = true;
  }
  rc.contour.samples = cf.get_int("trajectory", "samples", rc.contour.samples);
  rc.contour.q_cap = cf.get_double("trajectory", "q_cap", rc.contour.q_cap);
  if (rc.contour.samples < 2)
    cf.fail_at("trajectory", "samples", "must be >= 2");

  // ---- [portrait] ----------------------------------------------------------
  rc.portrait_mode = lower(cf.get_string("portrait", "mode", "delta"));
  if (rc.portrait_mode != "delta" && rc.portrait_mode != "resolution")
    cf.fail_at("portrait", "mode",
               "unknown mode '" + rc.portrait_mode +
                   "' (expected delta or resolution)");
  double cq = cf.get_double("portrait", "center_q", 1.0);
  double cp = cf.get_double("portrait", "center_p", 0.0);
  if (cq <= 0.0) cf.fail_at("portrait", "center_q", "must be > 0");
  rc.center = HalfPlanePoint(cq, cp);
  PhaseSpaceWindow& win =
      rc.portrait_mode == "delta" ? rc.window : rc.base_window;
  win.q_lo = cf.get_double("portrait", "q_lo", win.q_lo);
  win.q_hi = cf.get_double("portrait", "q_hi", win.q_hi);
  win.p_lo = cf.get_double("portrait", "p_lo", win.p_lo);
  win.p_hi = cf.get_double("portrait", "p_hi", win.p_hi);
  if (win.q_lo <= 0.0) cf.fail_at("portrait", "q_lo", "must be > 0");
  if (win.q_hi <= win.q_lo) cf.fail_at("portrait", "q_hi", "must exceed q_lo");
  if (win.p_hi <= win.p_lo) cf.fail_at("portrait", "p_hi", "must exceed p_lo");
  rc.portrait_nq = cf.get_int("portrait", "nq", rc.portrait_nq);
  rc.portrait_np = cf.get_int("portrait", "np", rc.portrait_np);
  if (rc.portrait_nq < 2) cf.fail_at("portrait", "nq", "must be >= 2");
  if (rc.portrait_np < 2) cf.fail_at("portrait", "np", "must be >= 2");
  rc.scales = cf.get_list("portrait", "scales", rc.scales);
  if (rc.scales.empty())
    cf.fail_at("portrait", "scales", "at least one scale is required");
  for (double s : rc.scales)
    if (s <= 0.0) cf.fail_at("portrait", "scales", "scales must be > 0");
  rc.resolution_x_max = cf.get_double("portrait", "x_max", rc.resolution_x_max);

  // ---- [output] ------------------------------------------------------------
  rc.out_dir = cf.get_string("output", "dir", rc.out_dir);

  return rc;
}

}  // namespace acsq
