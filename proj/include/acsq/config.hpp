#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "acsq/affine.hpp"
#include "acsq/dynamics.hpp"
#include "acsq/spectra.hpp"
#include "acsq/trajectory.hpp"

namespace acsq {

// Malformed or invalid configuration input; the message carries
// "path:line:" context where available.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sectioned "key = value" text: [section] headers, '#'/';' comment lines,
// no nesting.  Keys are tracked so unconsumed (unknown) ones can be
// reported after a RunConfig has been assembled.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_text(const std::string& text,
                               const std::string& path = "<inline>");

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key,
              int fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  // comma-separated doubles; an empty value yields an empty list
  std::vector<double> get_list(const std::string& section,
                               const std::string& key,
                               const std::vector<double>& fallback) const;

  // ConfigError pinned to the key's source line
  [[noreturn]] void fail_at(const std::string& section, const std::string& key,
                            const std::string& message) const;

  // diagnostics for entries no getter ever touched
  std::vector<std::string> unknown_key_diagnostics() const;

  const std::string& text() const { return text_; }
  const std::string& path() const { return path_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };
  std::string path_;
  std::string text_;
  std::map<std::string, std::map<std::string, Entry>> sections_;

  const Entry* find(const std::string& section, const std::string& key) const;
};

// Everything the five commands can consume, assembled from one ConfigFile
// with defaults matching the reference figure parameters.
struct RunConfig {
  FiducialVector psi;
  ModelParams model;

  std::vector<double> gammas;  // moment-report rows

  int levels = 10;
  SpectrumMethod method = SpectrumMethod::Analytic;
  bool method_given = false;
  GridSpec grid;
  bool eigenfunctions = false;

  HalfPlanePoint origin{4.0, 0.0};
  ExpansionOptions expansion;
  DensityGridSpec density;
  std::vector<double> times{0.0, 0.75, 1.25, 14.25, 15.0, 15.5};

  bool traj_semiclassical = true;
  bool energy_given = false;
  double energy = 0.0;
  ContourOptions contour;

  std::string portrait_mode = "delta";
  HalfPlanePoint center{1.0, 0.0};
  PhaseSpaceWindow window{0.1, 3.0, -4.0, 4.0};
  int portrait_nq = 80, portrait_np = 80;
  std::vector<double> scales{0.25, 0.5, 0.75, 1.0};
  PhaseSpaceWindow base_window{0.01, 50.0, -50.0, 50.0};
  double resolution_x_max = 40.0;

  std::string out_dir = ".";
};

RunConfig load_run_config(const ConfigFile& cf);

}  // namespace acsq
