// Python bindings for the half-line coherent-state toolkit.  The surface
// mirrors the C++ headers: fiducial vectors and their moment constants, the
// quantization map with lower symbols, model spectra, the coherent expansion
// with its evolved phase-space density, and energy contours.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "acsq/affine.hpp"
#include "acsq/dynamics.hpp"
#include "acsq/fiducial.hpp"
#include "acsq/quantize.hpp"
#include "acsq/spectra.hpp"
#include "acsq/trajectory.hpp"
#include "acsq/version.hpp"

namespace py = pybind11;
using namespace acsq;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherent-state quantization toolkit for systems on the half-line";
  m.attr("__version__") = version;

  // ---- fiducial vectors and moment constants --------------------------------

  py::enum_<Family>(m, "Family")
      .value("KeplerCubic", Family::KeplerCubic)
      .value("LogGaussian", Family::LogGaussian)
      .value("BesselK", Family::BesselK)
      .value("LaguerreBasis", Family::LaguerreBasis);

  py::class_<FiducialVector>(m, "FiducialVector")
      .def_static("kepler_cubic", &FiducialVector::kepler_cubic)
      .def_static("log_gaussian", &FiducialVector::log_gaussian, py::arg("nu"))
      .def_static("bessel_k_family", &FiducialVector::bessel_k_family,
                  py::arg("nu"), py::arg("xi") = 1.0)
      .def_static("laguerre_basis", &FiducialVector::laguerre_basis,
                  py::arg("n"), py::arg("alpha") = 2.0)
      .def("with_kappa", &FiducialVector::with_kappa, py::arg("kappa"))
      .def_readonly("family", &FiducialVector::family)
      .def_readonly("nu", &FiducialVector::nu)
      .def_readonly("xi", &FiducialVector::xi)
      .def_readonly("n", &FiducialVector::n)
      .def_readonly("alpha", &FiducialVector::alpha)
      .def_readonly("kappa", &FiducialVector::kappa)
      .def("__call__",
           [](const FiducialVector& psi, double x) { return evaluate(psi, x); },
           py::arg("x"))
      .def("derivative",
           [](const FiducialVector& psi, double x, int order) {
             return evaluate_derivative(psi, x, order);
           },
           py::arg("x"), py::arg("order") = 1)
      .def("__repr__", &FiducialVector::describe);

  m.def("c_gamma", py::overload_cast<const FiducialVector&, double>(&c_gamma),
        py::arg("psi"), py::arg("gamma"),
        "Moment integral of |psi|^2 against x^{-(2+gamma)}");
  m.def("c_gamma_m",
        py::overload_cast<const FiducialVector&, double, int>(&c_gamma_m),
        py::arg("psi"), py::arg("gamma"), py::arg("order"));
  m.def("c_gamma_quadrature",
        [](const FiducialVector& psi, double gamma) {
          return c_gamma_quadrature(psi, gamma);
        },
        py::arg("psi"), py::arg("gamma"),
        "Same moment, forced through adaptive quadrature");
  m.def("k_psi", py::overload_cast<const FiducialVector&>(&k_psi),
        py::arg("psi"), "Centrifugal coefficient produced by quantizing p^2");
  m.def("c_psi", py::overload_cast<const FiducialVector&>(&c_psi),
        py::arg("psi"), "Screening coefficient of the lower symbol of p^2");
  m.def("self_adjointness_flag",
        py::overload_cast<const FiducialVector&>(&self_adjointness_flag),
        py::arg("psi"));

  // ---- phase-space points and coherent states -------------------------------

  py::class_<HalfPlanePoint>(m, "HalfPlanePoint")
      .def(py::init<double, double>(), py::arg("q"), py::arg("p"))
      .def_readonly("q", &HalfPlanePoint::q)
      .def_readonly("p", &HalfPlanePoint::p)
      .def("__repr__", [](const HalfPlanePoint& a) {
        return "HalfPlanePoint(q=" + std::to_string(a.q) +
               ", p=" + std::to_string(a.p) + ")";
      });

  m.def("compose", &compose, py::arg("a"), py::arg("b"),
        "Group product of two half-plane points");
  m.def("inverse", &inverse, py::arg("a"));
  m.def("acs_evaluate", &acs_evaluate, py::arg("psi"), py::arg("point"),
        py::arg("x"), "Coherent state labelled by `point`, evaluated at x");
  m.def("overlap", &overlap, py::arg("psi"), py::arg("a"), py::arg("b"),
        "Inner product of the coherent states at two labels");

  py::class_<PhaseSpaceWindow>(m, "PhaseSpaceWindow")
      .def(py::init([](double q_lo, double q_hi, double p_lo, double p_hi) {
             return PhaseSpaceWindow{q_lo, q_hi, p_lo, p_hi};
           }),
           py::arg("q_lo"), py::arg("q_hi"), py::arg("p_lo"), py::arg("p_hi"))
      .def_readwrite("q_lo", &PhaseSpaceWindow::q_lo)
      .def_readwrite("q_hi", &PhaseSpaceWindow::q_hi)
      .def_readwrite("p_lo", &PhaseSpaceWindow::p_lo)
      .def_readwrite("p_hi", &PhaseSpaceWindow::p_hi);

  m.def("resolution_check",
        [](const FiducialVector& psi, const FiducialVector& phi,
           const PhaseSpaceWindow& window, double x_max, int threads) {
          ResolutionOptions opt;
          opt.x_max = x_max;
          opt.threads = threads;
          auto f = [phi](double x) {
            return std::complex<double>(evaluate(phi, x), 0.0);
          };
          return resolution_check(psi, f, window, opt);
        },
        py::arg("psi"), py::arg("phi"), py::arg("window"),
        py::arg("x_max") = 40.0, py::arg("threads") = 0,
        "Windowed resolution-of-identity integral; approaches 1 as the window "
        "grows");
  m.def("delta_lower_symbol", &delta_lower_symbol, py::arg("psi"),
        py::arg("center"), py::arg("point"),
        "Lower symbol of the rank-one projector at `center`");

  // ---- quantization map and lower symbols -----------------------------------

  py::class_<OperatorTerm>(m, "OperatorTerm")
      .def_readonly("coeff", &OperatorTerm::coeff)
      .def_readonly("q_power", &OperatorTerm::q_power)
      .def_readonly("p_power", &OperatorTerm::p_power)
      .def_readonly("dilation", &OperatorTerm::dilation);

  py::class_<QuantizedOperator>(m, "QuantizedOperator")
      .def_readonly("terms", &QuantizedOperator::terms)
      .def_readonly("provenance", &QuantizedOperator::provenance)
      .def("coefficient", &QuantizedOperator::coefficient, py::arg("q_power"),
           py::arg("p_power"), py::arg("dilation") = false);

  py::class_<SymbolTerm>(m, "SymbolTerm")
      .def_readonly("coeff", &SymbolTerm::coeff)
      .def_readonly("q_power", &SymbolTerm::q_power)
      .def_readonly("p_power", &SymbolTerm::p_power);

  py::class_<PhaseSpaceSymbol>(m, "PhaseSpaceSymbol")
      .def_readonly("terms", &PhaseSpaceSymbol::terms)
      .def("eval", &PhaseSpaceSymbol::eval, py::arg("q"), py::arg("p"));

  m.def("quantize_power_q", &quantize_power_q, py::arg("beta"), py::arg("psi"),
        py::arg("kappa") = 1.0);
  m.def("quantize_power_p", &quantize_power_p, py::arg("n"), py::arg("psi"));
  m.def("quantize_qp", &quantize_qp, py::arg("psi"));
  m.def("lower_symbol_power_q", &lower_symbol_power_q, py::arg("beta"),
        py::arg("psi"), "Constant multiplying q^beta in the lower symbol");
  m.def("lower_symbol_power_p", &lower_symbol_power_p, py::arg("n"),
        py::arg("psi"));
  m.def("lower_symbol_qp", &lower_symbol_qp, py::arg("psi"),
        "Constant multiplying q p in the lower symbol");

  // ---- model spectra --------------------------------------------------------

  py::enum_<Model>(m, "Model")
      .value("Oscillator", Model::Oscillator)
      .value("Linear", Model::Linear)
      .value("Kepler", Model::Kepler);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](Model model, double hbar, double gm, double k,
                       double box) {
             ModelParams mp;
             mp.model = model;
             mp.hbar = hbar;
             mp.gm = gm;
             mp.k = k;
             mp.box = box;
             return mp;
           }),
           py::arg("model") = Model::Kepler, py::arg("hbar") = 1.0,
           py::arg("gm") = 1.0, py::arg("k") = 1.0, py::arg("box") = 40.0)
      .def_readwrite("model", &ModelParams::model)
      .def_readwrite("hbar", &ModelParams::hbar)
      .def_readwrite("gm", &ModelParams::gm)
      .def_readwrite("k", &ModelParams::k)
      .def_readwrite("box", &ModelParams::box);

  py::enum_<SpectrumMethod>(m, "SpectrumMethod")
      .value("Analytic", SpectrumMethod::Analytic)
      .value("FiniteElement", SpectrumMethod::FiniteElement);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int nodes, double x_max) {
             return GridSpec{nodes, x_max};
           }),
           py::arg("nodes") = 4000, py::arg("x_max") = 0.0)
      .def_readwrite("nodes", &GridSpec::nodes)
      .def_readwrite("x_max", &GridSpec::x_max);

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("eigenvalues", &Spectrum::eigenvalues)
      .def_readonly("alternate_eigenvalues", &Spectrum::alternate_eigenvalues)
      .def_readonly("warnings", &Spectrum::warnings)
      .def_readonly("grid", &Spectrum::grid)
      .def("eigenfunction", &Spectrum::eigenfunction, py::arg("n"),
           py::arg("x"));

  m.def("centrifugal_alpha", &centrifugal_alpha, py::arg("psi"),
        "Exponent controlling the small-x behaviour of the 1/q-model levels");
  m.def("kepler_eigenvalue", &kepler_eigenvalue, py::arg("params"),
        py::arg("psi"), py::arg("n"));
  m.def("oscillator_mu", &oscillator_mu, py::arg("psi"));
  m.def("oscillator_eigenvalue_verified", &oscillator_eigenvalue_verified,
        py::arg("params"), py::arg("psi"), py::arg("n"));
  m.def("oscillator_eigenvalue_alternate", &oscillator_eigenvalue_alternate,
        py::arg("params"), py::arg("psi"), py::arg("n"));

  py::class_<OscillatorBranchReport>(m, "OscillatorBranchReport")
      .def_readonly("verified", &OscillatorBranchReport::verified)
      .def_readonly("alternate", &OscillatorBranchReport::alternate)
      .def_readonly("max_rel_difference",
                    &OscillatorBranchReport::max_rel_difference);

  m.def("oscillator_branch_report", &oscillator_branch_report,
        py::arg("params"), py::arg("psi"), py::arg("n_levels"),
        "Both published level formulas side by side with their discrepancy");

  m.def("compute_spectrum",
        [](const ModelParams& mp, const FiducialVector& psi, int n_levels,
           SpectrumMethod method, const GridSpec& grid) {
          return compute_spectrum(mp, psi, n_levels, method, grid);
        },
        py::arg("params"), py::arg("psi"), py::arg("n_levels"),
        py::arg("method") = SpectrumMethod::Analytic,
        py::arg("grid") = GridSpec{},
        py::call_guard<py::gil_scoped_release>());

  // ---- coherent expansion and evolved density -------------------------------

  py::class_<ExpansionOptions>(m, "ExpansionOptions")
      .def(py::init([](int n_max, bool auto_raise, double target, int hard_cap,
                       const GridSpec& grid) {
             ExpansionOptions o;
             o.n_max = n_max;
             o.auto_raise = auto_raise;
             o.target = target;
             o.hard_cap = hard_cap;
             o.grid = grid;
             return o;
           }),
           py::arg("n_max") = 40, py::arg("auto_raise") = true,
           py::arg("target") = 0.995, py::arg("hard_cap") = 160,
           py::arg("grid") = GridSpec{})
      .def_readwrite("n_max", &ExpansionOptions::n_max)
      .def_readwrite("auto_raise", &ExpansionOptions::auto_raise)
      .def_readwrite("target", &ExpansionOptions::target)
      .def_readwrite("hard_cap", &ExpansionOptions::hard_cap);

  py::class_<CoherentExpansion>(m, "CoherentExpansion")
      .def_readonly("origin", &CoherentExpansion::origin)
      .def_readonly("coefficients", &CoherentExpansion::coefficients)
      .def_readonly("completeness", &CoherentExpansion::completeness)
      .def_readonly("alpha", &CoherentExpansion::alpha)
      .def_readonly("energies", &CoherentExpansion::energies)
      .def_readonly("closed_form", &CoherentExpansion::closed_form)
      .def_readonly("warnings", &CoherentExpansion::warnings);

  m.def("acs_coefficient", &acs_coefficient, py::arg("n"), py::arg("origin"),
        py::arg("params"), py::arg("psi"),
        "Closed-form expansion coefficient of the coherent state at `origin`");
  m.def("acs_coefficient_quadrature", &acs_coefficient_quadrature,
        py::arg("n"), py::arg("origin"), py::arg("spectrum"),
        py::call_guard<py::gil_scoped_release>());
  m.def("build_expansion",
        [](const ModelParams& mp, const FiducialVector& psi,
           const HalfPlanePoint& origin, const ExpansionOptions& opt) {
          return build_expansion(mp, psi, origin, opt);
        },
        py::arg("params"), py::arg("psi"), py::arg("origin"),
        py::arg("options") = ExpansionOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("density_at", &density_at, py::arg("expansion"), py::arg("q"),
        py::arg("p"), py::arg("t"),
        "Phase-space density of the evolved state at one point");

  py::class_<DensityGridSpec>(m, "DensityGridSpec")
      .def(py::init([](double q_lo, double q_hi, double p_lo, double p_hi,
                       int nq, int np, int threads) {
             DensityGridSpec g;
             g.q_lo = q_lo;
             g.q_hi = q_hi;
             g.p_lo = p_lo;
             g.p_hi = p_hi;
             g.nq = nq;
             g.np = np;
             g.threads = threads;
             return g;
           }),
           py::arg("q_lo") = 0.2, py::arg("q_hi") = 10.0,
           py::arg("p_lo") = -2.5, py::arg("p_hi") = 2.5, py::arg("nq") = 120,
           py::arg("np") = 120, py::arg("threads") = 0)
      .def_readwrite("q_lo", &DensityGridSpec::q_lo)
      .def_readwrite("q_hi", &DensityGridSpec::q_hi)
      .def_readwrite("p_lo", &DensityGridSpec::p_lo)
      .def_readwrite("p_hi", &DensityGridSpec::p_hi)
      .def_readwrite("nq", &DensityGridSpec::nq)
      .def_readwrite("np", &DensityGridSpec::np)
      .def_readwrite("threads", &DensityGridSpec::threads);

  py::class_<PhaseSpaceDensityGrid>(m, "PhaseSpaceDensityGrid")
      .def_readonly("q_nodes", &PhaseSpaceDensityGrid::q_nodes)
      .def_readonly("p_nodes", &PhaseSpaceDensityGrid::p_nodes)
      .def_readonly("times", &PhaseSpaceDensityGrid::times)
      .def_readonly("values", &PhaseSpaceDensityGrid::values)
      .def_readonly("warnings", &PhaseSpaceDensityGrid::warnings)
      .def("value", &PhaseSpaceDensityGrid::value, py::arg("time_index"),
           py::arg("iq"), py::arg("ip"));

  m.def("evolve_density", &evolve_density, py::arg("expansion"),
        py::arg("grid"), py::arg("times"),
        py::call_guard<py::gil_scoped_release>());

  // ---- energy contours ------------------------------------------------------

  py::class_<ContourSample>(m, "ContourSample")
      .def_readonly("q", &ContourSample::q)
      .def_readonly("p", &ContourSample::p);

  py::class_<ContourOptions>(m, "ContourOptions")
      .def(py::init([](int samples, double q_cap) {
             ContourOptions o;
             o.samples = samples;
             o.q_cap = q_cap;
             return o;
           }),
           py::arg("samples") = 512, py::arg("q_cap") = 50.0)
      .def_readwrite("samples", &ContourOptions::samples)
      .def_readwrite("q_cap", &ContourOptions::q_cap);

  py::class_<EnergyContour>(m, "EnergyContour")
      .def_readonly("semiclassical", &EnergyContour::semiclassical)
      .def_readonly("energy", &EnergyContour::energy)
      .def_readonly("ktilde", &EnergyContour::ktilde)
      .def_readonly("strength", &EnergyContour::strength)
      .def_readonly("turning_points", &EnergyContour::turning_points)
      .def_readonly("hard_wall", &EnergyContour::hard_wall)
      .def_readonly("wall_p", &EnergyContour::wall_p)
      .def_readonly("wall_p_finite", &EnergyContour::wall_p_finite)
      .def_readonly("tangent", &EnergyContour::tangent)
      .def_readonly("samples", &EnergyContour::samples);

  m.def("effective_potential", &effective_potential, py::arg("model"),
        py::arg("ktilde"), py::arg("strength"), py::arg("q"));
  m.def("semiclassical_ktilde", &semiclassical_ktilde, py::arg("params"),
        py::arg("psi"), "Screening coefficient hbar^2 c_psi / 2");
  m.def("semiclassical_strength", &semiclassical_strength, py::arg("params"),
        py::arg("psi"), "Moment-dressed coupling of the portrait");
  m.def("semiclassical_energy", &semiclassical_energy, py::arg("params"),
        py::arg("psi"), py::arg("q"), py::arg("p"));
  m.def("turning_points", &turning_points, py::arg("model"), py::arg("ktilde"),
        py::arg("strength"), py::arg("energy"),
        "Positive roots of E = V(q), ascending");
  m.def("classical_contour",
        [](const ModelParams& mp, double energy, const ContourOptions& opt) {
          return classical_contour(mp, energy, opt);
        },
        py::arg("params"), py::arg("energy"),
        py::arg("options") = ContourOptions{});
  m.def("semiclassical_contour",
        [](const ModelParams& mp, const FiducialVector& psi, double energy,
           const ContourOptions& opt) {
          return semiclassical_contour(mp, psi, energy, opt);
        },
        py::arg("params"), py::arg("psi"), py::arg("energy"),
        py::arg("options") = ContourOptions{});
}
