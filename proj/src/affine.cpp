#include "acsq/affine.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "acsq/parallel.hpp"
#include "acsq/specfun.hpp"

namespace acsq {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 16;
constexpr double gl_x[8] = {
    0.09501250983763744018531934, 0.2816035507792589132304605,
    0.4580167776572273863424194,  0.6178762444026437484466718,
    0.7554044083550030338951012,  0.8656312023878317438804679,
    0.9445750230732325760779884,  0.9894009349916499325961542};
constexpr double gl_w[8] = {
    0.1894506104550685854359671,  0.1826034150449236115321128,
    0.1691565193950026191327396,  0.1495959888165767637246972,
    0.1246289712555340295496720,  0.0951585116824925913991962,
    0.0622535239386477062817349,  0.0271524594117540374327291};

void fill_panel_nodes(double a, double b, std::vector<double>& xs,
                      std::vector<double>& ws) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < 8; ++i) {
    xs.push_back(mid - half * gl_x[i]);
    ws.push_back(half * gl_w[i]);
    xs.push_back(mid + half * gl_x[i]);
    ws.push_back(half * gl_w[i]);
  }
}

}  // namespace

HalfPlanePoint::HalfPlanePoint(double q_in, double p_in) : q(q_in), p(p_in) {
  if (!(q > 0.0)) throw std::domain_error("HalfPlanePoint: q must be > 0");
}

HalfPlanePoint compose(const HalfPlanePoint& a, const HalfPlanePoint& b) {
  return {a.q * b.q, b.p / a.q + a.p};
}

HalfPlanePoint inverse(const HalfPlanePoint& a) { return {1.0 / a.q, -a.q * a.p}; }

double act_on_line(const HalfPlanePoint& a, double x) { return x / a.q + a.p; }

std::complex<double> acs_evaluate(const FiducialVector& psi,
                                  const HalfPlanePoint& pt, double x) {
  if (!(x > 0.0)) throw std::domain_error("acs_evaluate: x must be > 0");
  double mag = evaluate(psi, x / pt.q) / std::sqrt(pt.q);
  return std::polar(mag, pt.p * x);
}

std::complex<double> overlap(const FiducialVector& psi, const HalfPlanePoint& a,
                             const HalfPlanePoint& b) {
  double norm = 1.0 / std::sqrt(a.q * b.q);
  auto g = [&](double x) {
    return norm * evaluate(psi, x / a.q) * evaluate(psi, x / b.q);
  };
  return fourier_halfline(g, b.p - a.p);
}

double resolution_check(const FiducialVector& psi,
                        const std::function<std::complex<double>(double)>& phi,
                        const PhaseSpaceWindow& window,
                        const ResolutionOptions& opt) {
  if (!(window.q_lo > 0.0) || !(window.q_hi > window.q_lo) ||
      !(window.p_hi > window.p_lo))
    throw std::domain_error("resolution_check: malformed window");
  if (!(opt.x_max > 0.0))
    throw std::domain_error("resolution_check: x_max must be > 0");

  // x grid: panels sized to resolve e^{ipx} at the largest |p| in the window
  // (plus any oscillation phi itself carries).
  double f_max =
      std::max(std::fabs(window.p_lo), std::fabs(window.p_hi)) + opt.freq_hint;
  double width = (f_max > 1e-12) ? std::min(2.5 * 2.0 * pi / f_max, 2.0) : 2.0;
  int nx_panels = static_cast<int>(std::ceil(opt.x_max / width));
  std::vector<double> xs, xw;
  xs.reserve(static_cast<std::size_t>(nx_panels) * kGL);
  xw.reserve(static_cast<std::size_t>(nx_panels) * kGL);
  for (int k = 0; k < nx_panels; ++k) {
    double a = opt.x_max * k / nx_panels, b = opt.x_max * (k + 1) / nx_panels;
    fill_panel_nodes(a, b, xs, xw);
  }
  const std::size_t nx = xs.size();

  // phi sampled once; the window's mean momentum is folded in as a phase so
  // the pair kernel below becomes the real function 2 sin(P d)/d.
  const double p_half = 0.5 * (window.p_hi - window.p_lo);
  const double p_mean = 0.5 * (window.p_hi + window.p_lo);
  std::vector<std::complex<double>> phi_tw(nx);
  for (std::size_t i = 0; i < nx; ++i)
    phi_tw[i] = phi(xs[i]) * std::polar(1.0, -p_mean * xs[i]);

  // q grid: composite panels uniform in log q.
  double s_lo = std::log(window.q_lo), s_hi = std::log(window.q_hi);
  int nq_panels = std::max(8, static_cast<int>(std::ceil(4.0 * (s_hi - s_lo))));
  std::vector<double> ss, sw;
  for (int k = 0; k < nq_panels; ++k) {
    double a = s_lo + (s_hi - s_lo) * k / nq_panels;
    double b = s_lo + (s_hi - s_lo) * (k + 1) / nq_panels;
    fill_panel_nodes(a, b, ss, sw);
  }
  const std::size_t nq = ss.size();

  // For each q: S(q) = int_{p window} |<q,p|phi>|^2 dp, computed exactly in p
  // via  S = sum_{ij} v_i conj(v_j) 2 sin(P (x_i - x_j)) / (x_i - x_j)
  // with v_i = w_i q^{-1/2} psi(x_i/q) phi(x_i) e^{-i p_mean x_i}.
  std::vector<double> partial(nq, 0.0);
  parallel_for(nq, opt.threads, [&](std::size_t k) {
    double q = std::exp(ss[k]);
    std::vector<double> vr(nx), vi(nx);
    double inv_sqrt_q = 1.0 / std::sqrt(q);
    for (std::size_t i = 0; i < nx; ++i) {
      double base = xw[i] * inv_sqrt_q * evaluate(psi, xs[i] / q);
      vr[i] = base * phi_tw[i].real();
      vi[i] = base * phi_tw[i].imag();
    }
    double diag = 0.0;
    for (std::size_t i = 0; i < nx; ++i) diag += vr[i] * vr[i] + vi[i] * vi[i];
    double s = diag * (window.p_hi - window.p_lo);
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      if (vr[i] == 0.0 && vi[i] == 0.0) continue;
      double acc = 0.0;
      for (std::size_t j = i + 1; j < nx; ++j) {
        double d = xs[i] - xs[j];
        double kern = 2.0 * std::sin(p_half * d) / d;
        acc += (vr[i] * vr[j] + vi[i] * vi[j]) * kern;
      }
      s += 2.0 * acc;
    }
    // dq = q ds for the outer integral in log q
    partial[k] = sw[k] * q * s;
  });

  double total = 0.0;
  for (double v : partial) total += v;
  return total / (2.0 * pi * c_gamma(psi, -1.0));
}

double delta_lower_symbol(const FiducialVector& psi, const HalfPlanePoint& center,
                          const HalfPlanePoint& pt) {
  double mag = std::abs(overlap(psi, pt, center));
  return mag * mag / (2.0 * pi * c_gamma(psi, -1.0));
}

}  // namespace acsq
