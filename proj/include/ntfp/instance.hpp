#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "json.hpp"
#include "ntfp/oracle.hpp"
#include "ntfp/solver.hpp"

namespace ntfp {

using Json = nlohmann::ordered_json;

// A parsed problem instance. The JSON schema (all unknown keys rejected):
//   {
//     "name": "...",                          optional, echoed in reports
//     "n": 3,
//     "star": {"preset": "forward-cyclic"}    or {"matrix": [[...], ...]}
//             presets may carry "p"/"phis"/"psis" (block family) or
//             "sigmas" (selector family),
//     "partition": {"A": [1,3], "B": [2]},    optional when the preset has a
//                                             canonical partition,
//     "space": {"finite": {"elements": [...], "dist": [[...]], "leq": [[a,b],...],
//                          "closure": bool}}
//            | {"real": {"lo": -1, "hi": 1}},
//     "F": {"table": {"flat": [labels]}}
//        | {"table": {"entries": [{"args": [...], "value": l}], "default": l}}
//        | {"builtin": {"name": "weighted-sum", "coeffs": [...], "constant": c}}
//        | {"builtin": {"name": "product", "scale": s}},
//     "g": "identity" | {"table": {label: label}}
//        | {"builtin": {"name": "affine", "a": a, "b": b}},
//     "phi": "ratio" | "quad-clamped"
//          | {"name": "linear", "alpha": r}
//          | {"name": "piecewise-linear", "breaks": [...], "alphas": [...]}
//          with optional "declared_class",
//     "contraction_form": "sum"|"max"|"pointwise-sum"|"pointwise-max"|"weighted-linear",
//     "weights": [...],                       weighted-linear only
//     "mode": "compatible"|"range"|"fixed-point",
//     "assumptions": {flag: bool, ...},       declared hypothesis flags
//     "initial": [...],                       labels (finite) or numbers (real)
//     "E": [labels],                          finite target subspace
//     "samples": k, "seed": s                 real sampling budget
//   }
// Rational positions accept JSON integers, "p/q" strings, and decimal strings
// or numbers; decimals are converted exactly (0.25 -> 1/4), so finite-mode
// arithmetic stays exact.
struct Instance {
  std::string name;
  std::variant<std::monostate, FiniteProblem, RealProblem> problem;

  bool finite() const { return std::holds_alternative<FiniteProblem>(problem); }
  FiniteProblem& fin() { return std::get<FiniteProblem>(problem); }
  const FiniteProblem& fin() const { return std::get<FiniteProblem>(problem); }
  RealProblem& real() { return std::get<RealProblem>(problem); }
  const RealProblem& real() const { return std::get<RealProblem>(problem); }
};

Instance parse_instance(const Json& j);
Instance load_instance(const std::string& path);  // IoError on unreadable file

// Building blocks shared with the command line front end.
BinaryOp matrix_from_json(const Json& rows);
Partition partition_from_json(const Json& j, int n);
Rational rational_from_json(const Json& v, const std::string& where);

// Report serialization. Rationals become JSON integers when integral and
// "p/q" strings otherwise; finite tuples are rendered as label arrays.
Json json_rational(const Rational& r);
Json classify_json(const std::string& name, const BinaryOp& op, const Partition& part);
Json space_report_json(const FiniteSpace& space, const SpaceReport& rep);
Json solve_json(const FiniteProblem& prob, const SolveOutcome<FiniteProblem>& out);
Json solve_json(const RealProblem& prob, const SolveOutcome<RealProblem>& out);
Json certificate_json(const FiniteSpace& space, const Certificate& cert);
Json lemma_suite_json(const LemmaSuiteReport& rep);

// Line-delimited orbit trace: {"m":0,"tuple":[...]} for the start, then one
// {"m":k,"tuple":[...],"delta_residual":...,"nabla_residual":...} per step.
void write_trace(std::ostream& os, const FiniteSpace& space,
                 const IterationTrace<int, Rational>& tr);
void write_trace(std::ostream& os, const IterationTrace<double, double>& tr);

}  // namespace ntfp
