#include "bansync/errors.hpp"
#include "bansync/expression.hpp"
#include "bansync/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bansync;

namespace {

py::object to_python(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_python(v));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
    default:
      return py::none();
  }
}

Reading reading_of(const std::string& s) {
  if (s == "strictly-smaller") return Reading::StrictlySmaller;
  if (s == "smaller-than-n") return Reading::SmallerThanSize;
  if (s == "within-subcube") return Reading::WithinSubcube;
  throw InputError("unknown reading '" + s + "'");
}

Transition transition_of(const Network& net, const std::string& from, const std::string& to) {
  return make_synchronous(net, Configuration::parse(from), Configuration::parse(to));
}

}  // namespace

PYBIND11_MODULE(_bansync, m) {
  m.doc() = "Synchronism sensitivity of Boolean automata networks";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NonMonotoneNetworkError>(m, "NonMonotoneNetworkError", PyExc_ValueError);

  py::class_<Network>(m, "Network")
      .def_static("parse", &parse_network, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_network(path); }, py::arg("path"))
      .def_static("from_definitions", &build_network, py::arg("n"), py::arg("definitions"))
      .def_property_readonly("size", &Network::size)
      .def("value", [](const Network& net, int i, const std::string& x) {
        return net.value(i, Configuration::parse(x).bits());
      })
      .def("__str__", &format_network)
      .def("__eq__", [](const Network& a, const Network& b) { return a == b; });

  m.def("analyze", [](const Network& net) { return to_python(analysis_json(net)); });
  m.def(
      "attractors",
      [](const Network& net, const std::string& graph) {
        if (graph == "sig") return to_python(graph_json(TransitionGraph::asynchronous(net)));
        if (graph == "eig") return to_python(graph_json(TransitionGraph::elementary(net)));
        throw InputError("unknown graph '" + graph + "'");
      },
      py::arg("net"), py::arg("graph") = "sig");
  m.def(
      "normal_transitions",
      [](const Network& net, const std::string& reading) {
        Json j = Json::array();
        for (const auto& v : normal_transitions(net, reading_of(reading))) j.push_back(verdict_json(v));
        return to_python(j);
      },
      py::arg("net"), py::arg("reading") = "strictly-smaller");
  m.def(
      "sequentialise",
      [](const Network& net, const std::string& from, const std::string& to, const std::string& reading) {
        return to_python(verdict_json(is_sequentialisable(net, transition_of(net, from, to), reading_of(reading))));
      },
      py::arg("net"), py::arg("source"), py::arg("target"), py::arg("reading") = "strictly-smaller");
  m.def(
      "impact",
      [](const Network& net, const std::string& from, const std::string& to) {
        return to_python(impact_json(classify_impact(net, transition_of(net, from, to))));
      },
      py::arg("net"), py::arg("source"), py::arg("target"));
  m.def(
      "sensitivity",
      [](const Network& net, const std::string& reading) {
        return to_python(sensitivity_json(classify_sensitivity(net, reading_of(reading))));
      },
      py::arg("net"), py::arg("reading") = "strictly-smaller");
  m.def(
      "critical_cycles",
      [](const Network& net) {
        Json j = Json::array();
        for (const auto& c : critical_cycles(net)) j.push_back(cycle_json(c));
        return to_python(j);
      },
      py::arg("net"));
  m.def(
      "verify",
      [](int n, bool monotone, std::vector<std::string> claims, std::optional<std::size_t> sample,
         std::uint64_t seed, unsigned workers) {
        EnumerationSpec spec;
        spec.n = n;
        spec.monotone_only = monotone;
        spec.predicates = std::move(claims);
        spec.sample = sample;
        spec.seed = seed;
        spec.workers = workers;
        VerificationLedger ledger;
        {
          py::gil_scoped_release release;
          ledger = verify_lemmas_and_propositions(spec);
        }
        return to_python(ledger_json(ledger));
      },
      py::arg("n"), py::arg("monotone") = false, py::arg("claims") = std::vector<std::string>{},
      py::arg("sample") = std::nullopt, py::arg("seed") = 1, py::arg("workers") = 0);
  m.def("claim_ids", &claim_ids);
}
