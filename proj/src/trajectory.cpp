#include "acsq/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acsq {

namespace {

const double kPi = 3.14159265358979323846;

double model_term(Model model, double strength, double q) {
  switch (model) {
    case Model::Oscillator:
      return 0.5 * strength * q * q;
    case Model::Linear:
      return -strength * q;
    case Model::Kepler:
      return -strength / q;
  }
  return 0.0;
}

double model_term_derivative(Model model, double strength, double q) {
  switch (model) {
    case Model::Oscillator:
      return strength * q;
    case Model::Linear:
      return -strength;
    case Model::Kepler:
      return strength / (q * q);
  }
  return 0.0;
}

// location of the effective-potential minimum on a log grid + ternary refine;
// only meaningful when ktilde > 0 (V diverges at 0)
double potential_argmin(Model model, double ktilde, double strength) {
  auto v = [&](double q) {
    return effective_potential(model, ktilde, strength, q);
  };
  double best_q = 1.0, best_v = v(1.0);
  for (int i = 0; i <= 4000; ++i) {
    double q = std::pow(10.0, -8.0 + 14.0 * i / 4000.0);
    double val = v(q);
    if (val < best_v) {
      best_v = val;
      best_q = q;
    }
  }
  double lo = best_q / 1.02, hi = best_q * 1.02;
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (v(m1) < v(m2))
      hi = m2;
    else
      lo = m1;
  }
  return 0.5 * (lo + hi);
}

double bisect_root(Model model, double ktilde, double strength, double energy,
                   double a, double b) {
  auto f = [&](double q) {
    return energy - effective_potential(model, ktilde, strength, q);
  };
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (a + b);
    if (b - a <= 1e-12 * std::max(1.0, std::abs(mid))) break;
    double fm = f(mid);
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double effective_potential(Model model, double ktilde, double strength,
                           double q) {
  if (q <= 0.0)
    throw std::domain_error("effective_potential: q must be positive");
  double v = model_term(model, strength, q);
  if (ktilde != 0.0) v += ktilde / (q * q);
  return v;
}

double semiclassical_ktilde(const ModelParams& mp, const FiducialVector& psi) {
  return 0.5 * mp.hbar * mp.hbar * c_psi(psi);
}

double semiclassical_strength(const ModelParams& mp,
                              const FiducialVector& psi) {
  double cm1 = c_gamma(psi, -1.0);
  switch (mp.model) {
    case Model::Oscillator:
      return mp.k * c_gamma(psi, 1.0) * c_gamma(psi, -4.0) / cm1;
    case Model::Linear:
      return mp.k * c_gamma(psi, 0.0) * c_gamma(psi, -3.0) / cm1;
    case Model::Kepler:
      return mp.gm;  // the 1/q coupling is not dressed
  }
  return 0.0;
}

double semiclassical_energy(const ModelParams& mp, const FiducialVector& psi,
                            double q, double p) {
  return 0.5 * p * p +
         effective_potential(mp.model, semiclassical_ktilde(mp, psi),
                             semiclassical_strength(mp, psi), q);
}

std::vector<double> turning_points(Model model, double ktilde, double strength,
                                   double energy) {
  auto f = [&](double q) {
    return energy - effective_potential(model, ktilde, strength, q);
  };
  // sign-change scan on a log grid; the effective potentials here are
  // monotone or single-welled, so at most two roots exist
  const int n_scan = 4000;
  std::vector<double> roots;
  double prev_q = 1e-9, prev_f = f(prev_q);
  for (int i = 1; i <= n_scan; ++i) {
    double q = std::pow(10.0, -9.0 + 15.0 * i / n_scan);
    double cur = f(q);
    if ((prev_f <= 0.0) != (cur <= 0.0))
      roots.push_back(bisect_root(model, ktilde, strength, energy, prev_q, q));
    prev_q = q;
    prev_f = cur;
  }
  if (roots.empty() && ktilde > 0.0) {
    // possible tangency at the potential minimum
    double qm = potential_argmin(model, ktilde, strength);
    double vm = effective_potential(model, ktilde, strength, qm);
    if (std::abs(energy - vm) <=
        1e-9 * (std::abs(energy) + std::abs(vm) + 1e-30)) {
      roots.push_back(qm);
      roots.push_back(qm);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

EnergyContour build_contour(Model model, bool semiclassical, double energy,
                            double ktilde, double strength,
                            const ContourOptions& opt) {
  EnergyContour c;
  c.model = model;
  c.semiclassical = semiclassical;
  c.energy = energy;
  c.ktilde = ktilde;
  c.strength = strength;
  c.turning_points = turning_points(model, ktilde, strength, energy);

  auto vel = [&](double q) {
    double tt = 2.0 * (energy - effective_potential(model, ktilde, strength, q));
    return std::sqrt(std::max(0.0, tt));
  };

  int n = std::max(2, opt.samples);
  const auto& tp = c.turning_points;

  if (ktilde == 0.0) {
    // classical branch: the allowed region may touch q = 0
    if (model == Model::Oscillator) {
      if (energy <= 0.0)
        throw std::domain_error(
            "classical_contour: energy below the reachable range");
      double b = tp.empty() ? opt.q_cap : tp.back();
      c.hard_wall = true;
      c.wall_p = std::sqrt(2.0 * energy);
      for (int j = 0; j < n; ++j) {
        double th = (j + 1) * kPi / n;
        double q = 0.5 * b * (1.0 - std::cos(th));
        c.samples.push_back({q, vel(q)});
      }
      return c;
    }
    if (model == Model::Kepler) {
      if (energy < 0.0) {
        double b = tp.back();  // outer turning point -GM/E
        c.hard_wall = true;
        c.wall_p_finite = false;  // |p| diverges toward the origin
        for (int j = 0; j < n; ++j) {
          double th = (j + 1) * kPi / n;
          double q = 0.5 * b * (1.0 - std::cos(th));
          c.samples.push_back({q, vel(q)});
        }
      } else {
        c.hard_wall = true;
        c.wall_p_finite = false;
        for (int j = 0; j < n; ++j) {
          double th = (j + 1) * kPi / n;
          double q = 0.5 * opt.q_cap * (1.0 - std::cos(th));
          c.samples.push_back({q, vel(q)});
        }
      }
      return c;
    }
    // linear model: the wall is reachable exactly when E >= V(0) = 0
    if (energy >= 0.0) {
      c.hard_wall = true;
      c.wall_p = std::sqrt(2.0 * energy);
      for (int j = 0; j < n; ++j) {
        double th = (j + 1) * kPi / n;
        double q = 0.5 * opt.q_cap * (1.0 - std::cos(th));
        c.samples.push_back({q, vel(q)});
      }
    } else {
      // inner turning point, unbounded outward
      double a = tp.front();
      for (int j = 0; j < n; ++j) {
        double th = j * (0.5 * kPi) / (n - 1);
        double q = a + (opt.q_cap - a) * (1.0 - std::cos(th));
        c.samples.push_back({q, vel(q)});
      }
    }
    return c;
  }

  // semiclassical branch: the screening term forbids q -> 0
  if (tp.empty())
    throw std::domain_error(
        "semiclassical_contour: energy below the effective minimum");
  if (tp.size() == 2 && tp[0] == tp[1]) {
    c.tangent = true;
    c.samples.push_back({tp[0], 0.0});
    return c;
  }
  if (tp.size() >= 2) {
    double a = tp.front(), b = tp.back();
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int j = 0; j < n; ++j) {
      double th = j * kPi / (n - 1);
      double q = mid - half * std::cos(th);
      c.samples.push_back({q, vel(q)});
    }
    return c;
  }
  // single bounce point, unbounded outward (linear pull, or E >= 0)
  double a = tp.front();
  for (int j = 0; j < n; ++j) {
    double th = j * (0.5 * kPi) / (n - 1);
    double q = a + (opt.q_cap - a) * (1.0 - std::cos(th));
    c.samples.push_back({q, vel(q)});
  }
  return c;
}

}  // namespace

EnergyContour classical_contour(const ModelParams& mp, double energy,
                                const ContourOptions& opt) {
  double strength = mp.model == Model::Kepler ? mp.gm : mp.k;
  return build_contour(mp.model, false, energy, 0.0, strength, opt);
}

EnergyContour semiclassical_contour(const ModelParams& mp,
                                    const FiducialVector& psi, double energy,
                                    const ContourOptions& opt) {
  return build_contour(mp.model, true, energy, semiclassical_ktilde(mp, psi),
                       semiclassical_strength(mp, psi), opt);
}

std::vector<FlowPoint> hamiltonian_flow(Model model, double ktilde,
                                        double strength, HalfPlanePoint start,
                                        const FlowOptions& opt) {
  auto force = [&](double q) {
    double f = -model_term_derivative(model, strength, q);
    if (ktilde != 0.0) f += 2.0 * ktilde / (q * q * q);
    return f;
  };
  std::vector<FlowPoint> out;
  out.reserve(opt.steps + 1);
  double q = start.q, p = start.p, t = 0.0;
  out.push_back({t, q, p});
  for (int i = 0; i < opt.steps; ++i) {
    double ph = p + 0.5 * opt.dt * force(q);
    double qn = q + opt.dt * ph;
    if (qn <= 0.0) break;  // crossed the wall; stop rather than extrapolate
    double pn = ph + 0.5 * opt.dt * force(qn);
    q = qn;
    p = pn;
    t += opt.dt;
    out.push_back({t, q, p});
  }
  return out;
}

}  // namespace acsq
