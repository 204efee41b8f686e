#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "birs/error.hpp"
#include "birs/pipeline.hpp"
#include "birs/service.hpp"

namespace py = pybind11;
using namespace birs;

namespace {

// Read-only pipeline snapshot plus the request handler the broker uses.
class Pipeline {
 public:
  explicit Pipeline(const std::string& config_path)
      : artifacts_(std::make_shared<const Artifacts>(load_artifacts(load_config(config_path)))), handler_(artifacts_) {}

  std::string request_json(const std::string& op, const std::string& payload) const {
    auto p = payload.empty() ? service::Json::object() : service::Json::parse(payload);
    try {
      return service::encode(handler_.handle(op, p));
    } catch (const service::ServiceError& e) {
      throw Error(e.code(), e.what());
    }
  }

  std::string topo_text() const { return topo::write_topo_map(artifacts_->topo); }
  std::string model_summary() const { return write_model_summary(artifacts_->extraction); }
  std::string ntriples() const { return ontology::write_ntriples(artifacts_->store); }

  std::string plan(const std::string& from, const std::string& to) const {
    const auto& t = artifacts_->topo;
    return topo::write_route(t, topo::plan_path(t, t.resolve(from), t.resolve(to)));
  }

  std::string report(const std::string& as_of) const {
    auto run = run_progress(*artifacts_, progress::parse_date(as_of));
    return progress::write_findings(artifacts_->topo, run.findings);
  }

  std::vector<std::string> room_names() const {
    std::vector<std::string> out;
    for (const auto& n : artifacts_->topo.nodes) out.push_back(n.long_name);
    return out;
  }

 private:
  std::shared_ptr<const Artifacts> artifacts_;
  service::RequestHandler handler_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "BIRS core bindings";

  static py::exception<Error> birs_error(m, "BirsError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(birs_error.ptr())(py::str(e.what()));
      exc.attr("code") = e.code();
      PyErr_SetObject(birs_error.ptr(), exc.ptr());
    }
  });

  m.def("canonical_spf", [](const std::string& text) { return step::write_canonical(step::parse_spf(text)); },
        "Parse SPF text and return its canonical serialization.");
  m.def("entity_count", [](const std::string& text) { return step::parse_spf(text).size(); });
  m.def("taxonomy_edges", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [child, parent] : ontology::builtin_subclass_edges()) out.emplace_back(child.str(), parent.str());
    return out;
  });
  m.def("is_subclass_of", [](const std::string& a, const std::string& b) {
    static const auto store = ontology::builtin_taxonomy();
    return store.is_subclass_of(ontology::Iri::parse(a), ontology::Iri::parse(b));
  });
  m.def("parse_date_roundtrip", [](const std::string& s) { return progress::format_date(progress::parse_date(s)); });

  py::class_<Pipeline>(m, "Pipeline")
      .def(py::init<const std::string&>(), py::arg("config_path"))
      .def("request_json", &Pipeline::request_json, py::arg("op"), py::arg("payload") = "")
      .def("topo_text", &Pipeline::topo_text)
      .def("model_summary", &Pipeline::model_summary)
      .def("ntriples", &Pipeline::ntriples)
      .def("plan", &Pipeline::plan, py::arg("from_room"), py::arg("to_room"))
      .def("report", &Pipeline::report, py::arg("as_of"))
      .def("room_names", &Pipeline::room_names);
}
