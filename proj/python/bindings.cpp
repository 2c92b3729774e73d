#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "cvtele/channel.hpp"
#include "cvtele/errors.hpp"
#include "cvtele/moments.hpp"
#include "cvtele/optimize.hpp"
#include "cvtele/photonstats.hpp"
#include "cvtele/states.hpp"

namespace py = pybind11;
using namespace cvtele;

namespace {

ClosedFormDelta closed_form_kind(const std::string& name) {
  static const std::map<std::string, ClosedFormDelta> kinds = {
      {"fock1_fidelity", ClosedFormDelta::fock1_fidelity}, {"coherent_fidelity", ClosedFormDelta::coherent_fidelity},
      {"coherent_mu4_x", ClosedFormDelta::coherent_mu4_x}, {"squeezed_mu4_x", ClosedFormDelta::squeezed_mu4_x},
      {"fock1_mu4_x", ClosedFormDelta::fock1_mu4_x},       {"squeezed_mu4_p", ClosedFormDelta::squeezed_mu4_p}};
  const auto it = kinds.find(name);
  if (it == kinds.end()) throw InvalidArgument("unknown closed-form kind '" + name + "'");
  return it->second;
}

DerivativeSource source_of(const std::string& name) {
  if (name == "closed_form") return DerivativeSource::closed_form;
  if (name == "automatic") return DerivativeSource::automatic;
  if (name == "finite_difference") return DerivativeSource::finite_difference;
  throw InvalidArgument("unknown derivative source '" + name + "'");
}

/// State classes, or a descriptor string such as "fock:1".
InputState state_of(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return parse_state_descriptor(obj.cast<std::string>());
  if (py::isinstance<FockInput>(obj)) return obj.cast<FockInput>();
  if (py::isinstance<CoherentInput>(obj)) return obj.cast<CoherentInput>();
  if (py::isinstance<SqueezedVacuumInput>(obj)) return obj.cast<SqueezedVacuumInput>();
  if (py::isinstance<FockMixtureInput>(obj)) return obj.cast<FockMixtureInput>();
  throw InvalidArgument("expected an input state or a descriptor string");
}

std::optional<InputState> optional_state(const py::object& obj) {
  if (obj.is_none()) return std::nullopt;
  return state_of(obj);
}

py::object to_python(const InputState& s) {
  return std::visit([](const auto& v) { return py::cast(v); }, s);
}

Objective objective(const std::string& kind, double r, std::optional<InputState> input, double theta, double g, int N,
                    const std::string& source) {
  Objective o;
  o.kind = objective_kind_from_string(kind);
  o.r = r;
  o.input = std::move(input);
  o.theta = theta;
  o.g = g;
  o.N = N;
  o.source = source_of(source);
  return o;
}

}  // namespace

PYBIND11_MODULE(cvteleport, m) {
  m.doc() = "Continuous-variable teleportation with squeezed Bell-like resources";
  m.attr("__version__") = CVTELEPORT_VERSION;

  static py::exception<Error> base(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
  py::register_exception<DegenerateStateError>(m, "DegenerateStateError", base.ptr());
  py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());

  py::class_<FockInput>(m, "FockInput")
      .def(py::init<int>(), py::arg("n"))
      .def_readonly("n", &FockInput::n)
      .def("__repr__", [](const FockInput& s) { return "FockInput(" + std::to_string(s.n) + ")"; });
  py::class_<CoherentInput>(m, "CoherentInput")
      .def(py::init<std::complex<double>>(), py::arg("beta"))
      .def_readonly("beta", &CoherentInput::beta);
  py::class_<SqueezedVacuumInput>(m, "SqueezedVacuumInput")
      .def(py::init<double>(), py::arg("s"))
      .def_readonly("s", &SqueezedVacuumInput::s);
  py::class_<FockMixtureInput>(m, "FockMixtureInput")
      .def(py::init([](const std::vector<std::pair<int, double>>& w) {
             std::vector<FockWeight> weights;
             for (auto [n, p] : w) weights.push_back({n, p});
             return FockMixtureInput(std::move(weights));
           }),
           py::arg("weights"))
      .def_property_readonly("weights", [](const FockMixtureInput& s) {
        std::vector<std::pair<int, double>> out;
        for (const auto& w : s.weights) out.emplace_back(w.n, w.p);
        return out;
      });

  m.def("parse_state", [](const std::string& d) { return to_python(parse_state_descriptor(d)); }, py::arg("descriptor"));
  m.def("to_descriptor", [](const py::object& s) { return to_descriptor(state_of(s)); }, py::arg("state"));

  py::class_<SqueezedBellResource>(m, "SqueezedBellResource")
      .def(py::init<double, double, double>(), py::arg("delta"), py::arg("theta"), py::arg("r"))
      .def_readonly("delta", &SqueezedBellResource::delta)
      .def_readonly("theta", &SqueezedBellResource::theta)
      .def_readonly("r", &SqueezedBellResource::r);
  py::class_<Channel>(m, "Channel")
      .def(py::init<SqueezedBellResource, double>(), py::arg("resource"), py::arg("g") = 1.0)
      .def_readonly("resource", &Channel::resource)
      .def_readonly("gain", &Channel::gain);

  py::class_<CharFn>(m, "CharFn")
      .def("__call__", [](const CharFn& f, double w, double z) { return f(PhasePoint{w, z}); }, py::arg("w"), py::arg("z"))
      .def_property_readonly("ordering", [](const CharFn& f) { return to_int(f.ordering()); })
      .def_property_readonly("label", &CharFn::label);
  py::class_<OutputState>(m, "OutputState").def_readonly("charfn", &OutputState::charfn);

  m.def("input_charfn", [](const py::object& s) { return input_charfn(state_of(s)); }, py::arg("state"));
  m.def("transfer_fn", &transfer_fn, py::arg("channel"));
  m.def("transfer_value", &transfer_value, py::arg("channel"), py::arg("u"));
  m.def("teleport", [](const py::object& s, const Channel& ch) { return teleport(state_of(s), ch); }, py::arg("state"),
        py::arg("channel"));

  py::class_<MomentSet>(m, "MomentSet")
      .def_readonly("x_mean", &MomentSet::x_mean)
      .def_readonly("p_mean", &MomentSet::p_mean)
      .def_readonly("x2_central", &MomentSet::x2_central)
      .def_readonly("p2_central", &MomentSet::p2_central)
      .def_readonly("cov_xp", &MomentSet::cov_xp)
      .def_readonly("mu3_x", &MomentSet::mu3_x)
      .def_readonly("mu3_p", &MomentSet::mu3_p)
      .def_readonly("mu4_x", &MomentSet::mu4_x)
      .def_readonly("mu4_p", &MomentSet::mu4_p)
      .def_readonly("kappa4_x", &MomentSet::kappa4_x)
      .def_readonly("kappa4_p", &MomentSet::kappa4_p)
      .def_readonly("n_mean", &MomentSet::n_mean)
      .def_readonly("g2_zero", &MomentSet::g2_zero)
      .def_readonly("non_state", &MomentSet::non_state);
  m.def("moments", [](const py::object& s) { return moment_set(input_charfn(state_of(s))); }, py::arg("state"));
  m.def("output_moments", [](const py::object& s, const Channel& ch) { return moment_set(teleport(state_of(s), ch).charfn); },
        py::arg("state"), py::arg("channel"));
  m.def("transfer_moments", [](const Channel& ch) { return transfer_moment_set(ch); }, py::arg("channel"));

  py::class_<ResourceClosedForms>(m, "ResourceClosedForms")
      .def_readonly("x2_AB", &ResourceClosedForms::x2_AB)
      .def_readonly("n_AB", &ResourceClosedForms::n_AB)
      .def_readonly("n_AB_derivative", &ResourceClosedForms::n_AB_derivative)
      .def_readonly("kappa4_AB", &ResourceClosedForms::kappa4_AB);
  m.def("resource_closed_forms", &resource_closed_forms, py::arg("resource"));

  m.def("input_photon_probs", [](const py::object& s, int N) { return input_photon_probs(state_of(s), N); }, py::arg("state"), py::arg("N") = kDefaultPhotonCutoff);
  m.def(
      "output_photon_probs",
      [](const py::object& s, const Channel& ch, int N) {
        const auto out = teleport(state_of(s), ch);
        py::gil_scoped_release release;
        return output_photon_probs(out, N).probs;
      },
      py::arg("state"), py::arg("channel"), py::arg("N") = kDefaultPhotonCutoff);
  m.attr("d_functional") = py::cpp_function(
      [](const std::vector<double>& a, const std::vector<double>& b) { return d_functional(a, b); }, py::arg("p_in"),
      py::arg("p_out"));

  py::class_<DistortionMeasures>(m, "DistortionMeasures")
      .def_readonly("d_n", &DistortionMeasures::d_n)
      .def_readonly("d_n_next", &DistortionMeasures::d_n_next)
      .def_readonly("fidelity", &DistortionMeasures::fidelity)
      .def_readonly("frobenius", &DistortionMeasures::frobenius)
      .def_readonly("purity_in", &DistortionMeasures::purity_in)
      .def_readonly("purity_out", &DistortionMeasures::purity_out);
  m.def(
      "distortion_measures",
      [](const py::object& obj, const Channel& ch, int N) {
        const auto s = state_of(obj);
        const auto out = teleport(s, ch);
        py::gil_scoped_release release;
        return distortion_measures(s, out, N);
      },
      py::arg("state"), py::arg("channel"), py::arg("N") = kDefaultPhotonCutoff);

  py::class_<OptimumRecord>(m, "OptimumRecord")
      .def_readonly("delta_star", &OptimumRecord::delta_star)
      .def_readonly("objective_value", &OptimumRecord::objective_value)
      .def_readonly("r", &OptimumRecord::r)
      .def_property_readonly("kind", [](const OptimumRecord& rec) { return std::string(to_string(rec.kind)); })
      .def_readonly("bracket_lo", &OptimumRecord::bracket_lo)
      .def_readonly("bracket_hi", &OptimumRecord::bracket_hi)
      .def_readonly("iterations", &OptimumRecord::iterations)
      .def_readonly("error", &OptimumRecord::error);
  m.def(
      "minimize_delta",
      [](const std::string& kind, double r, const py::object& input, double theta, double g, int N,
         const std::string& source) {
        const auto obj = objective(kind, r, optional_state(input), theta, g, N, source);
        py::gil_scoped_release release;
        return minimize_delta(obj);
      },
      py::arg("kind"), py::arg("r"), py::arg("input") = py::none(), py::arg("theta") = 0.0, py::arg("g") = 1.0,
      py::arg("N") = kDefaultPhotonCutoff, py::arg("source") = "closed_form");
  m.def(
      "sweep_r",
      [](const std::vector<std::string>& kinds, const std::vector<double>& r_grid, const py::object& input,
         double theta, int jobs) {
        std::vector<ObjectiveKind> ks;
        for (const auto& k : kinds) ks.push_back(objective_kind_from_string(k));
        const auto base = objective("x2_transfer", 1.0, optional_state(input), theta, 1.0, kDefaultPhotonCutoff, "closed_form");
        py::gil_scoped_release release;
        return sweep_r(ks, r_grid, base, jobs);
      },
      py::arg("kinds"), py::arg("r_grid"), py::arg("input") = py::none(), py::arg("theta") = 0.0, py::arg("jobs") = 1);
  m.def(
      "closed_form_delta",
      [](const std::string& kind, double r, std::optional<double> s) { return closed_form_delta(closed_form_kind(kind), r, s); },
      py::arg("kind"), py::arg("r"), py::arg("s") = py::none());
}
