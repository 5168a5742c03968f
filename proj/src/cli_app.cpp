#include "acsq/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acsq/affine.hpp"
#include "acsq/config.hpp"
#include "acsq/dynamics.hpp"
#include "acsq/emit.hpp"
#include "acsq/quadrature.hpp"
#include "acsq/spectra.hpp"
#include "acsq/trajectory.hpp"
#include "acsq/version.hpp"
#include "json.hpp"

namespace acsq {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;  // object keys serialize sorted: reproducible manifests

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  long long seed = 0;  // reserved
  bool strict = false;
};

const char* model_name(Model m) {
  switch (m) {
    case Model::Oscillator: return "oscillator";
    case Model::Linear: return "linear";
    case Model::Kepler: return "kepler";
  }
  return "?";
}

json model_json(const ModelParams& mp) {
  json j;
  j["model"] = model_name(mp.model);
  j["hbar"] = mp.hbar;
  if (mp.model == Model::Kepler) j["gm"] = mp.gm;
  if (mp.model == Model::Oscillator) j["k"] = mp.k;
  if (mp.model == Model::Linear) {
    j["k"] = mp.k;
    j["box"] = mp.box;
  }
  return j;
}

// Collects the emitted files of one command run and writes the manifest.
class OutputSet {
 public:
  OutputSet(const std::string& dir, const std::string& command,
            const std::string& config_hash)
      : dir_(dir), command_(command), hash_(config_hash) {
    fs::create_directories(dir_);
  }

  std::ofstream open_csv(const std::string& name) {
    files_.push_back(name);
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write output file '" + name + "'");
    return out;
  }

  void write_manifest(json extra, const std::vector<std::string>& warnings) {
    std::sort(files_.begin(), files_.end());
    extra["command"] = command_;
    extra["config_hash"] = hash_;
    extra["library_version"] = version;
    extra["files"] = files_;
    extra["warnings"] = warnings;
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << extra.dump(2) << "\n";
    std::cout << "wrote " << (dir_ / "manifest.json").string() << " and "
              << files_.size() << " data file(s)\n";
  }

 private:
  fs::path dir_;
  std::string command_, hash_;
  std::vector<std::string> files_;
};

int finish(const CommonFlags& fl, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return (fl.strict && !warnings.empty()) ? 4 : 0;
}

// ---- constants -------------------------------------------------------------

int cmd_constants(const RunConfig& rc, const CommonFlags& fl,
                  const std::string& hash) {
  OutputSet out(rc.out_dir, "constants", hash);
  std::vector<std::string> warnings;

  auto csv = out.open_csv("constants.csv");
  csv << "gamma,c_gamma,c_gamma_quadrature,abs_delta\n";
  for (double g : rc.gammas) {
    double closed = c_gamma(rc.psi, g);
    double quad = c_gamma_quadrature(rc.psi, g);
    csv << format_sig17(g) << "," << format_sig17(closed) << ","
        << format_sig17(quad) << "," << format_sig17(std::abs(closed - quad))
        << "\n";
  }

  double kpsi = k_psi(rc.psi);
  double cpsi = c_psi(rc.psi);
  bool flag = self_adjointness_flag(rc.psi);
  std::cout << rc.psi.describe() << ": K_psi = " << format_sig17(kpsi)
            << ", c(psi) = " << format_sig17(cpsi)
            << ", c_{-1} = " << format_sig17(c_gamma(rc.psi, -1.0))
            << ", self-adjoint kinetic term: " << (flag ? "yes" : "no")
            << "\n";

  json j;
  j["fiducial"] = rc.psi.describe();
  j["k_psi"] = kpsi;
  j["c_psi"] = cpsi;
  j["c_minus1"] = c_gamma(rc.psi, -1.0);
  j["self_adjoint"] = flag;
  out.write_manifest(j, warnings);
  return finish(fl, warnings);
}

// ---- spectrum --------------------------------------------------------------

int cmd_spectrum(const RunConfig& rc, const CommonFlags& fl,
                 const std::string& hash) {
  SpectrumMethod method = rc.method_given
                              ? rc.method
                              : (rc.model.model == Model::Linear
                                     ? SpectrumMethod::FiniteElement
                                     : SpectrumMethod::Analytic);
  Spectrum sp = compute_spectrum(rc.model, rc.psi, rc.levels, method, rc.grid);

  OutputSet out(rc.out_dir, "spectrum", hash);
  auto csv = out.open_csv("spectrum.csv");
  bool two_branch = !sp.alternate_eigenvalues.empty();
  csv << (two_branch ? "n,E_n,E_n_alternate\n" : "n,E_n\n");
  for (std::size_t n = 0; n < sp.eigenvalues.size(); ++n) {
    csv << n << "," << format_sig17(sp.eigenvalues[n]);
    if (two_branch) csv << "," << format_sig17(sp.alternate_eigenvalues[n]);
    csv << "\n";
  }

  if (rc.eigenfunctions) {
    auto efn = out.open_csv("eigenfunctions.csv");
    efn << "x";
    for (std::size_t n = 0; n < sp.eigenvalues.size(); ++n) efn << ",phi_" << n;
    efn << "\n";
    std::vector<double> xs;
    if (!sp.grid.empty()) {
      xs = sp.grid;
    } else {
      // find where every level has decayed, then sample uniformly
      double hi = 10.0;
      auto tail = [&](double x) {
        double m = 0.0;
        for (std::size_t n = 0; n < sp.eigenvalues.size(); ++n)
          m = std::max(m, std::abs(sp.eigenfunction(static_cast<int>(n), x)));
        return m;
      };
      while (hi < 1e6 && tail(hi) > 1e-12) hi *= 2.0;
      for (int i = 0; i <= 480; ++i) xs.push_back(hi * i / 480.0);
    }
    for (double x : xs) {
      efn << format_sig17(x);
      for (std::size_t n = 0; n < sp.eigenvalues.size(); ++n)
        efn << "," << format_sig17(sp.eigenfunction(static_cast<int>(n), x));
      efn << "\n";
    }
  }

  json j;
  j["fiducial"] = rc.psi.describe();
  j["model_params"] = model_json(rc.model);
  j["levels"] = rc.levels;
  j["method"] = method == SpectrumMethod::Analytic ? "analytic" : "finite_element";
  if (rc.model.model == Model::Oscillator) {
    OscillatorBranchReport rep = oscillator_branch_report(rc.model, rc.psi,
                                                          rc.levels);
    json d;
    d["max_rel_difference"] = rep.max_rel_difference;
    d["note"] =
        "the second printed closed form for this ladder disagrees with the "
        "numerically verified branch; its values are the E_n_alternate column";
    j["alternate_branch"] = d;
  }
  out.write_manifest(j, sp.warnings);
  return finish(fl, sp.warnings);
}

// ---- evolve ----------------------------------------------------------------

void write_contour_csv(std::ofstream csv, const EnergyContour& c) {
  csv << "q,p_plus,p_minus\n";
  for (const auto& s : c.samples)
    csv << format_sig17(s.q) << "," << format_sig17(s.p) << ","
        << format_sig17(-s.p) << "\n";
}

json contour_json(const EnergyContour& c) {
  json j;
  j["energy"] = c.energy;
  j["ktilde"] = c.ktilde;
  j["strength"] = c.strength;
  j["turning_points"] = c.turning_points;
  j["hard_wall"] = c.hard_wall;
  if (c.hard_wall)
    j["wall_p"] = c.wall_p_finite ? json(c.wall_p) : json();  // null: diverges
  j["tangent"] = c.tangent;
  return j;
}

int cmd_evolve(const RunConfig& rc, const CommonFlags& fl,
               const std::string& hash) {
  ExpansionOptions eo = rc.expansion;
  CoherentExpansion ex = build_expansion(rc.model, rc.psi, rc.origin, eo);

  DensityGridSpec gs = rc.density;
  gs.threads = fl.threads;
  PhaseSpaceDensityGrid grid = evolve_density(ex, gs, rc.times);

  std::vector<std::string> warnings = ex.warnings;
  warnings.insert(warnings.end(), grid.warnings.begin(), grid.warnings.end());

  OutputSet out(rc.out_dir, "evolve", hash);
  for (std::size_t it = 0; it < grid.times.size(); ++it) {
    char name[32];
    std::snprintf(name, sizeof name, "density_%02zu.csv", it);
    auto csv = out.open_csv(name);
    csv << "q,p,rho\n";
    for (std::size_t iq = 0; iq < grid.q_nodes.size(); ++iq)
      for (std::size_t ip = 0; ip < grid.p_nodes.size(); ++ip)
        csv << format_sig17(grid.q_nodes[iq]) << ","
            << format_sig17(grid.p_nodes[ip]) << ","
            << format_sig17(grid.values[it][iq * grid.p_nodes.size() + ip])
            << "\n";
  }

  double energy = semiclassical_energy(rc.model, rc.psi, rc.origin.q,
                                       rc.origin.p);
  EnergyContour overlay = semiclassical_contour(rc.model, rc.psi, energy,
                                                rc.contour);
  write_contour_csv(out.open_csv("contour_overlay.csv"), overlay);

  const double two_pi = 2.0 * std::numbers::pi;
  json j;
  j["fiducial"] = rc.psi.describe();
  j["model_params"] = model_json(rc.model);
  j["origin"] = {{"q", rc.origin.q}, {"p", rc.origin.p}};
  j["n_max"] = static_cast<int>(ex.coefficients.size()) - 1;
  j["closed_form_coefficients"] = ex.closed_form;
  j["completeness"] = ex.completeness;
  j["times"] = rc.times;
  j["grid"] = {{"q_lo", gs.q_lo}, {"q_hi", gs.q_hi}, {"p_lo", gs.p_lo},
               {"p_hi", gs.p_hi}, {"nq", gs.nq},     {"np", gs.np}};
  j["matched_contour"] = contour_json(overlay);
  j["two_pi_rho_origin_t0"] =
      two_pi * density_at(ex, rc.origin.q, rc.origin.p, 0.0);
  out.write_manifest(j, warnings);
  return finish(fl, warnings);
}

// ---- trajectory ------------------------------------------------------------

int cmd_trajectory(const RunConfig& rc, const CommonFlags& fl,
                   const std::string& hash) {
  double energy;
  if (rc.energy_given) {
    energy = rc.energy;
  } else if (rc.traj_semiclassical) {
    energy = semiclassical_energy(rc.model, rc.psi, rc.origin.q, rc.origin.p);
  } else {
    double strength = rc.model.model == Model::Kepler ? rc.model.gm : rc.model.k;
    energy = 0.5 * rc.origin.p * rc.origin.p +
             effective_potential(rc.model.model, 0.0, strength, rc.origin.q);
  }

  EnergyContour c = rc.traj_semiclassical
                        ? semiclassical_contour(rc.model, rc.psi, energy,
                                                rc.contour)
                        : classical_contour(rc.model, energy, rc.contour);

  OutputSet out(rc.out_dir, "trajectory", hash);
  write_contour_csv(out.open_csv("contour.csv"), c);

  std::vector<std::string> warnings;
  json j = contour_json(c);
  j["kind"] = rc.traj_semiclassical ? "semiclassical" : "classical";
  j["model_params"] = model_json(rc.model);
  if (rc.traj_semiclassical) j["fiducial"] = rc.psi.describe();
  j["samples"] = static_cast<int>(c.samples.size());
  out.write_manifest(j, warnings);
  return finish(fl, warnings);
}

// ---- portrait --------------------------------------------------------------

int cmd_portrait(const RunConfig& rc, const CommonFlags& fl,
                 const std::string& hash) {
  OutputSet out(rc.out_dir, "portrait", hash);
  std::vector<std::string> warnings;
  json j;
  j["fiducial"] = rc.psi.describe();
  j["mode"] = rc.portrait_mode;
  j["center"] = {{"q", rc.center.q}, {"p", rc.center.p}};

  if (rc.portrait_mode == "delta") {
    auto csv = out.open_csv("portrait.csv");
    csv << "q,p,value\n";
    for (int iq = 0; iq < rc.portrait_nq; ++iq) {
      double q = rc.window.q_lo + (rc.window.q_hi - rc.window.q_lo) * iq /
                                      (rc.portrait_nq - 1);
      for (int ip = 0; ip < rc.portrait_np; ++ip) {
        double p = rc.window.p_lo + (rc.window.p_hi - rc.window.p_lo) * ip /
                                        (rc.portrait_np - 1);
        double v = delta_lower_symbol(rc.psi, rc.center, HalfPlanePoint(q, p));
        csv << format_sig17(q) << "," << format_sig17(p) << ","
            << format_sig17(v) << "\n";
      }
    }
    j["window"] = {{"q_lo", rc.window.q_lo}, {"q_hi", rc.window.q_hi},
                   {"p_lo", rc.window.p_lo}, {"p_hi", rc.window.p_hi}};
    j["nq"] = rc.portrait_nq;
    j["np"] = rc.portrait_np;
  } else {
    auto phi = [&](double x) { return acs_evaluate(rc.psi, rc.center, x); };
    ResolutionOptions opt;
    opt.x_max = rc.resolution_x_max;
    opt.threads = fl.threads;
    opt.freq_hint = std::abs(rc.center.p);
    auto csv = out.open_csv("resolution.csv");
    csv << "scale,q_lo,q_hi,p_lo,p_hi,value\n";
    for (double s : rc.scales) {
      PhaseSpaceWindow w;
      w.q_lo = rc.base_window.q_lo;
      w.q_hi = rc.base_window.q_lo +
               s * (rc.base_window.q_hi - rc.base_window.q_lo);
      w.p_lo = s * rc.base_window.p_lo;
      w.p_hi = s * rc.base_window.p_hi;
      double v = resolution_check(rc.psi, phi, w, opt);
      csv << format_sig17(s) << "," << format_sig17(w.q_lo) << ","
          << format_sig17(w.q_hi) << "," << format_sig17(w.p_lo) << ","
          << format_sig17(w.p_hi) << "," << format_sig17(v) << "\n";
    }
    j["base_window"] = {{"q_lo", rc.base_window.q_lo},
                        {"q_hi", rc.base_window.q_hi},
                        {"p_lo", rc.base_window.p_lo},
                        {"p_hi", rc.base_window.p_hi}};
    j["scales"] = rc.scales;
    j["x_max"] = rc.resolution_x_max;
  }
  out.write_manifest(j, warnings);
  return finish(fl, warnings);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"affine coherent-state quantization toolkit"};
  app.require_subcommand(1);

  CommonFlags fl;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", fl.config_path, "configuration file path");
    s->add_option("--out", fl.out_dir,
                  "output directory (overrides [output] dir)");
    s->add_option("--threads", fl.threads, "worker threads (0 = all cores)");
    s->add_option("--seed", fl.seed, "reserved for future stochastic modes");
    s->add_flag("--strict", fl.strict,
                "escalate convergence warnings to exit code 4 and reject "
                "unknown config keys");
  };
  CLI::App* c_constants =
      app.add_subcommand("constants", "moment constants of the fiducial vector");
  CLI::App* c_spectrum =
      app.add_subcommand("spectrum", "eigenvalues (and eigenfunctions) of a model");
  CLI::App* c_evolve =
      app.add_subcommand("evolve", "time-evolved phase-space density grids");
  CLI::App* c_trajectory =
      app.add_subcommand("trajectory", "classical / semiclassical energy contour");
  CLI::App* c_portrait = app.add_subcommand(
      "portrait", "point-mass lower symbol or windowed identity check");
  for (CLI::App* s :
       {c_constants, c_spectrum, c_evolve, c_trajectory, c_portrait})
    add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ConfigFile cf = fl.config_path.empty()
                        ? ConfigFile::parse_text("", "<defaults>")
                        : ConfigFile::parse_file(fl.config_path);
    RunConfig rc = load_run_config(cf);
    std::vector<std::string> unknown = cf.unknown_key_diagnostics();
    if (!unknown.empty()) {
      if (fl.strict) throw ConfigError(unknown.front());
      for (const auto& u : unknown) std::cerr << "warning: " << u << "\n";
    }
    if (!fl.out_dir.empty()) rc.out_dir = fl.out_dir;
    std::string hash = fnv1a64_hex(cf.text());

    if (c_constants->parsed()) return cmd_constants(rc, fl, hash);
    if (c_spectrum->parsed()) return cmd_spectrum(rc, fl, hash);
    if (c_evolve->parsed()) return cmd_evolve(rc, fl, hash);
    if (c_trajectory->parsed()) return cmd_trajectory(rc, fl, hash);
    if (c_portrait->parsed()) return cmd_portrait(rc, fl, hash);
    return 2;  // unreachable: a subcommand is required
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace acsq
