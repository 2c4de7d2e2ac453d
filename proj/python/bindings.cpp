// Python face of the library. Reports cross the boundary as JSON text; the
// package wrapper turns them into dicts so the module carries no conversion
// dependencies.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ntfp/instance.hpp"

namespace py = pybind11;
using namespace ntfp;

namespace {

std::string classify_matrix_text(const std::vector<std::vector<int>>& rows,
                                 const std::vector<int>& A, const std::vector<int>& B) {
  BinaryOp op(static_cast<int>(rows.size()), rows);
  Partition part(op.n(), A, B);
  return classify_json("", op, part).dump();
}

std::string classify_preset_text(const std::string& name, std::optional<int> n) {
  auto res = preset(name, n);
  return classify_json(res.name, res.op, res.part).dump();
}

Instance instance_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  return parse_instance(j);
}

std::string solve_text(const std::string& instance_json, double tol, int max_iters,
                       int stall_window) {
  Instance inst = instance_from_text(instance_json);
  SolveOptions opts;
  opts.tol = tol;
  opts.max_iters = max_iters;
  opts.stall_window = stall_window;
  if (inst.finite()) {
    auto rep = validate_space(inst.fin().space);
    if (!rep.valid)
      throw DomainViolation("space axioms fail: " + std::to_string(rep.violations.size()) +
                            " violations; see validate_space");
    return solve_json(inst.fin(), solve(inst.fin(), opts)).dump();
  }
  return solve_json(inst.real(), solve(inst.real(), opts)).dump();
}

std::string verify_text(const std::string& instance_json, const std::string& theorem,
                        long long cap) {
  Instance inst = instance_from_text(instance_json);
  if (!inst.finite())
    throw HypothesesNotMachineVerified(
        "theorem certification enumerates the carrier; it needs a finite instance");
  auto rep = validate_space(inst.fin().space);
  if (!rep.valid) throw DomainViolation("space axioms fail; cannot certify");
  Certificate cert = certify_theorem(inst.fin(), theorem_from_string(theorem), cap);
  return certificate_json(inst.fin().space, cert).dump();
}

std::string lemma_suite_text(int min_n, int max_n, int max_size, int trials,
                             long long op_samples, std::uint64_t seed) {
  LemmaSuiteConfig config{min_n, max_n, max_size, trials, op_samples, seed};
  return lemma_suite_json(lemma_suite(config)).dump();
}

std::string validate_space_text(const std::string& instance_json) {
  Instance inst = instance_from_text(instance_json);
  if (!inst.finite()) throw DomainViolation("axiom validation applies to finite spaces");
  return space_report_json(inst.fin().space, validate_space(inst.fin().space)).dump();
}

}  // namespace

PYBIND11_MODULE(_ntfp, m) {
  m.doc() = "n-tupled fixed point laboratory (JSON-text core bindings)";

  // Translators run newest-first: the base class goes in first so the
  // subclasses are matched ahead of it.
  py::register_exception<Error>(m, "NtfpError", PyExc_RuntimeError);
  py::register_exception<SizeLimit>(m, "SizeLimitError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("preset_names", [] { return preset_names(); });
  m.def("classify_matrix", &classify_matrix_text, py::arg("rows"), py::arg("A"), py::arg("B"));
  m.def("classify_preset", &classify_preset_text, py::arg("name"), py::arg("n") = std::nullopt);
  m.def("solve", &solve_text, py::arg("instance_json"), py::arg("tol") = 1e-10,
        py::arg("max_iters") = 1000, py::arg("stall_window") = 50);
  m.def("verify", &verify_text, py::arg("instance_json"), py::arg("theorem"),
        py::arg("cap") = kDefaultOracleCap);
  m.def("lemma_suite", &lemma_suite_text, py::arg("min_n") = 2, py::arg("max_n") = 3,
        py::arg("max_size") = 4, py::arg("trials") = 200, py::arg("op_samples") = 10000,
        py::arg("seed") = 7);
  m.def("validate_space", &validate_space_text, py::arg("instance_json"));

  m.attr("__version__") = "0.1.0";
}
