#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "torusfhn/analysis.hpp"
#include "torusfhn/cli.hpp"
#include "torusfhn/config.hpp"
#include "torusfhn/errors.hpp"
#include "torusfhn/normalform.hpp"
#include "torusfhn/spectrum.hpp"

namespace py = pybind11;
using namespace torusfhn;

namespace {

py::array_t<double> as_matrix(const Trajectory& t) {
  py::array_t<double> out({static_cast<py::ssize_t>(t.size()), static_cast<py::ssize_t>(t.dim)});
  std::copy(t.data.begin(), t.data.end(), out.mutable_data());
  return out;
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  return {a.data(), a.data() + a.size()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Torus networks of modified FitzHugh-Nagumo neurons";
  m.attr("__version__") = kToolVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<NoBoundaryError>(m, "NoBoundaryError", base.ptr());
  py::register_exception<NotAtHopfError>(m, "NotAtHopfError", base.ptr());
  py::register_exception<InvalidModeError>(m, "InvalidModeError", base.ptr());
  py::register_exception<SignalError>(m, "SignalError", base.ptr());

  py::class_<NeuronParams>(m, "NeuronParams")
      .def(py::init([](double a, double b, double c) { return NeuronParams{a, b, c}; }), py::arg("a") = 0.01, py::arg("b") = 0.9, py::arg("c") = 0.9)
      .def_readwrite("a", &NeuronParams::a)
      .def_readwrite("b", &NeuronParams::b)
      .def_readwrite("c", &NeuronParams::c);

  py::class_<TorusConfig>(m, "TorusConfig")
      .def(py::init([](int n, NeuronParams p, double gamma, double delta) { return TorusConfig{n, p, gamma, delta}; }),
           py::arg("n") = 3, py::arg("neuron") = NeuronParams{}, py::arg("gamma") = 0.0, py::arg("delta") = 0.0)
      .def_readwrite("n", &TorusConfig::n)
      .def_readwrite("neuron", &TorusConfig::neuron)
      .def_readwrite("gamma", &TorusConfig::gamma)
      .def_readwrite("delta", &TorusConfig::delta);

  py::class_<TwoToriConfig>(m, "TwoToriConfig")
      .def(py::init([](TorusConfig t, double eps) { return TwoToriConfig{t, eps}; }), py::arg("torus"),
           py::arg("epsilon") = 0.0)
      .def_readwrite("torus", &TwoToriConfig::torus)
      .def_readwrite("epsilon", &TwoToriConfig::epsilon);

  py::class_<IntegratorSettings>(m, "IntegratorSettings")
      .def(py::init([](double dt, double t_end, int stride, double discard) {
             return IntegratorSettings{dt, t_end, stride, discard};
           }),
           py::arg("dt") = 0.01, py::arg("t_end") = 400.0, py::arg("record_stride") = 1,
           py::arg("transient_discard") = 200.0)
      .def_readwrite("dt", &IntegratorSettings::dt)
      .def_readwrite("t_end", &IntegratorSettings::t_end)
      .def_readwrite("record_stride", &IntegratorSettings::record_stride)
      .def_readwrite("transient_discard", &IntegratorSettings::transient_discard);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("times", [](const Trajectory& t) { return py::array_t<double>(t.times.size(), t.times.data()); })
      .def_property_readonly("states", &as_matrix)
      .def_readonly("dim", &Trajectory::dim)
      .def("torus", &Trajectory::torus, py::arg("which"))
      .def("__len__", &Trajectory::size);

  py::enum_<PatternKind>(m, "PatternKind")
      .value("RotatingWave", PatternKind::RotatingWave)
      .value("InPhase", PatternKind::InPhase)
      .value("Decay", PatternKind::Decay)
      .value("Unclassified", PatternKind::Unclassified);

  py::class_<PatternReport>(m, "PatternReport")
      .def_readonly("kind", &PatternReport::kind)
      .def_readonly("phase_shift", &PatternReport::phase_shift)
      .def_readonly("dominant_freq_per_neuron", &PatternReport::dominant_freq_per_neuron)
      .def_readonly("diagonal_symmetry_ok", &PatternReport::diagonal_symmetry_ok)
      .def_readonly("consensus_frequency", &PatternReport::consensus_frequency)
      .def_readonly("amplitude", &PatternReport::amplitude)
      .def_readonly("note", &PatternReport::note);

  py::class_<TwoToriReport>(m, "TwoToriReport")
      .def_readonly("torus1", &TwoToriReport::torus1)
      .def_readonly("torus2", &TwoToriReport::torus2)
      .def_readonly("freq_ratio", &TwoToriReport::freq_ratio);

  py::class_<StabilityVerdict>(m, "StabilityVerdict")
      .def_readonly("stable", &StabilityVerdict::stable)
      .def_readonly("max_re", &StabilityVerdict::max_re)
      .def_property_readonly("critical_modes", [](const StabilityVerdict& v) {
        std::vector<std::pair<int, int>> out;
        for (const auto& mode : v.critical_modes) out.emplace_back(mode.r, mode.s);
        return out;
      });

  py::enum_<Parameter>(m, "Parameter")
      .value("gamma", Parameter::Gamma)
      .value("delta", Parameter::Delta)
      .value("a", Parameter::A)
      .value("c", Parameter::C);

  py::class_<HopfBoundary>(m, "HopfBoundary")
      .def_readonly("value", &HopfBoundary::value)
      .def_readonly("residual", &HopfBoundary::residual)
      .def_readonly("imag", &HopfBoundary::imag);

  py::class_<NormalFormData>(m, "NormalFormData")
      .def_readonly("varphi", &NormalFormData::varphi)
      .def_readonly("s_star_times_16", &NormalFormData::s_star_times_16)
      .def_property_readonly("classification",
                             [](const NormalFormData& d) { return std::string(to_string(d.classification)); });

  m.def("torus_rhs", [](py::array_t<double, py::array::c_style | py::array::forcecast> s, const TorusConfig& c) {
    return torus_rhs(to_vector(s), c);
  });
  m.def("two_tori_rhs", [](py::array_t<double, py::array::c_style | py::array::forcecast> s, const TwoToriConfig& c) {
    return two_tori_rhs(to_vector(s), c);
  });
  m.def("closed_form_eigenvalues",
        [](int r, int s, const TorusConfig& c) { return closed_form_eigenvalues({r, s}, c); }, py::arg("r"),
        py::arg("s"), py::arg("config"));
  m.def("closed_form_spectrum", [](const TorusConfig& c) {
    std::vector<std::complex<double>> out;
    for (const auto& ms : full_spectrum(c)) {
      out.push_back(ms.lambda1);
      out.push_back(ms.lambda2);
    }
    return out;
  });
  m.def("linearization", py::overload_cast<const TorusConfig&>(&assemble_linearization));
  m.def("origin_stability", py::overload_cast<const TorusConfig&>(&origin_stability));
  m.def("origin_stability", py::overload_cast<const TwoToriConfig&>(&origin_stability));
  m.def("find_hopf_boundary",
        [](int r, int s, const TorusConfig& c, Parameter vary, double lo, double hi) {
          return find_hopf_boundary({r, s}, c, vary, lo, hi);
        },
        py::arg("r"), py::arg("s"), py::arg("config"), py::arg("vary"), py::arg("lo"), py::arg("hi"));
  m.def("first_lyapunov_sign", &first_lyapunov_sign);

  m.def("fig2_initial_conditions", &fig2_initial_conditions);
  m.def("uniform_initial_conditions", &uniform_initial_conditions);
  m.def("simulate",
        [](const TorusConfig& c, py::array_t<double, py::array::c_style | py::array::forcecast> ic,
           const IntegratorSettings& s) { return simulate(c, to_vector(ic), s); },
        py::arg("config"), py::arg("ic"), py::arg("settings") = IntegratorSettings{});
  m.def("simulate",
        [](const TwoToriConfig& c, py::array_t<double, py::array::c_style | py::array::forcecast> ic,
           const IntegratorSettings& s) { return simulate(c, to_vector(ic), s); },
        py::arg("config"), py::arg("ic"), py::arg("settings") = IntegratorSettings{});

  m.def("classify_pattern", &classify_pattern);
  m.def("two_tori_report", &two_tori_report);
  m.def("dominant_frequency", [](py::array_t<double, py::array::c_style | py::array::forcecast> s, double dt) {
    return dominant_frequency(psd(to_vector(s), dt));
  });
  m.def("phase_shift", [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
                          py::array_t<double, py::array::c_style | py::array::forcecast> b,
                          double dt) { return phase_shift(to_vector(a), to_vector(b), dt); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
