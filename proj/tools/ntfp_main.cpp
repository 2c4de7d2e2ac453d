// Batch front door: classify index operations, run the gated solver on
// instance files, certify statements against exhaustive enumeration, and run
// the randomized law suite. Every command prints a human summary followed by
// a machine-readable JSON document (suppress the former with --json-only).
//
// Exit codes:
//   0  success (classify report produced; solve converged with gates passed;
//      verify certified; lemmas all green)
//   1  command ran but the verdict is negative (verify not certified,
//      lemmas found violations)
//   2  unusable input: parse/validation errors, bad presets, axiom failures
//   3  a solver gate failed (membership, monotonicity, contraction, initial
//      point) or a g-section failed mid-orbit
//   4  the orbit ran out of budget (max-iters or stall)
//   5  refused: the requested enumeration exceeds the size cap
//   6  file I/O failure

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ntfp/instance.hpp"

namespace {

using namespace ntfp;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_tuple(const FiniteSpace& space, const std::vector<int>& U) {
  std::string out = "(";
  for (size_t i = 0; i < U.size(); ++i) out += (i ? ", " : "") + space.label(U[i]);
  return out + ")";
}

std::string fmt_tuple(const std::vector<double>& U) {
  std::string out = "(";
  for (size_t i = 0; i < U.size(); ++i) out += (i ? ", " : "") + fmt_double(U[i]);
  return out + ")";
}

std::string fmt_set(const std::vector<int>& xs) {
  std::string out = "{";
  for (size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + std::to_string(xs[i]);
  return out + "}";
}

void emit(std::ostream& os, const Json& j) { os << j.dump(2) << "\n"; }

Json parse_json_arg(const std::string& arg, const std::string& what) {
  // Inline JSON when it looks like JSON, otherwise a file path.
  std::string text = arg;
  if (!arg.empty() && arg[0] != '[' && arg[0] != '{') {
    std::ifstream in(arg);
    if (!in) throw IoError("cannot open " + what + " file '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

Partition parse_partition_flag(const std::string& text, int n) {
  if (text == "odd-even") return Partition::odd_even(n);
  const auto bar = text.find('|');
  if (bar == std::string::npos)
    throw ParseError("partition: expected 'odd-even' or 'a,b,..|c,d,..' (A parts | B parts)");
  auto parse_side = [&](const std::string& side) {
    std::vector<int> out;
    std::stringstream ss(side);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        out.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw ParseError("partition: '" + tok + "' is not an index");
      }
    }
    return out;
  };
  return Partition(n, parse_side(text.substr(0, bar)), parse_side(text.substr(bar + 1)));
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string preset_name, matrix, partition;
  int n = 0;
  std::optional<int> p;
  std::string phis, psis, sigmas;
  bool json_only = false;
};

int cmd_classify(const ClassifyArgs& a) {
  BinaryOp op(2, {{1, 2}, {2, 1}});
  Partition part(2, {1}, {2});
  std::string name;
  if (!a.preset_name.empty()) {
    PresetParams params;
    params.p = a.p;
    if (!a.phis.empty()) {
      auto rows = parse_json_arg(a.phis, "phis").get<std::vector<std::vector<int>>>();
      params.phis = rows;
    }
    if (!a.psis.empty()) params.psis = parse_json_arg(a.psis, "psis").get<std::vector<std::vector<int>>>();
    if (!a.sigmas.empty())
      params.sigmas = parse_json_arg(a.sigmas, "sigmas").get<std::vector<std::vector<int>>>();
    const int arity_hint =
        a.n > 0 ? a.n : (params.sigmas ? static_cast<int>(params.sigmas->size()) : 0);
    if (!a.partition.empty() && arity_hint > 0) {
      Partition p0 = parse_partition_flag(a.partition, arity_hint);
      params.partition = {p0.A(), p0.B()};
    }
    auto res = preset(a.preset_name, a.n > 0 ? std::optional<int>(a.n) : std::nullopt, params);
    op = res.op;
    part = res.part;
    name = res.name;
  } else if (!a.matrix.empty()) {
    op = matrix_from_json(parse_json_arg(a.matrix, "matrix"));
    if (a.partition.empty())
      throw ParseError("classify: an explicit matrix needs --partition");
  } else {
    throw ParseError("classify: need --preset or --matrix");
  }
  if (!a.partition.empty()) part = parse_partition_flag(a.partition, op.n());
  if (part.n() != op.n())
    throw DimensionMismatch("partition arity does not match the operation");

  Json j = classify_json(name, op, part);
  if (!a.json_only) {
    std::ostringstream os;
    os << "op: " << (name.empty() ? "explicit matrix" : name) << " (n = " << op.n() << ")\n";
    os << "partition: A = " << fmt_set(part.A()) << ", B = " << fmt_set(part.B()) << "\n";
    os << "matrix:\n";
    for (int i = 1; i <= op.n(); ++i) {
      os << "  [";
      for (int k = 1; k <= op.n(); ++k) os << (k > 1 ? " " : "") << op.at(i, k);
      os << "]\n";
    }
    auto verdict = is_member_U(op, part);
    if (verdict.in_U) {
      os << "membership: in U for this partition\n";
    } else {
      os << "membership: NOT in U for this partition; " << verdict.violations.size()
         << " violating entries\n";
      for (const auto& v : verdict.violations)
        os << "  *(" << v.i << "," << v.k << ") = " << v.value << " breaks "
           << j["violations"][&v - verdict.violations.data()]["condition"].get<std::string>()
           << "\n";
    }
    auto perm = is_permuted(op);
    os << "permuted: " << (perm.permuted ? "yes" : "no");
    if (perm.first_bad_row) os << " (row " << *perm.first_bad_row << " misses an index)";
    os << "\n";
    os << "selector rows:\n";
    for (int i = 1; i <= op.n(); ++i) {
      os << "  sigma_" << i << " = (";
      for (int k = 1; k <= op.n(); ++k) os << (k > 1 ? " " : "") << op.at(i, k);
      os << ")\n";
    }
    std::cout << os.str();
  }
  emit(std::cout, j);
  return 0;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
  std::string instance, trace;
  double tol = 1e-10;
  int max_iters = 1000;
  int stall_window = 50;
  std::optional<long long> samples;
  std::optional<std::uint64_t> seed;
  bool json_only = false;
};

template <class Prob>
int report_solve(const Prob& prob, const SolveOutcome<Prob>& out, const SolveArgs& a,
                 const std::string& name) {
  if (!a.trace.empty() && out.trace) {
    std::ofstream tf(a.trace);
    if (!tf) throw IoError("cannot open trace file '" + a.trace + "'");
    if constexpr (Prob::is_finite)
      write_trace(tf, prob.space, *out.trace);
    else
      write_trace(tf, *out.trace);
  }
  if (!a.json_only) {
    std::ostringstream os;
    os << "instance: " << (name.empty() ? "(unnamed)" : name) << " ("
       << (Prob::is_finite ? "finite" : "real") << " space, n = " << prob.op.n() << ")\n";
    os << "gate membership: " << (out.member_u.in_U ? "pass" : "FAIL") << "\n";
    if (out.monotone)
      os << "gate mixed-monotone: " << (out.monotone->holds ? "pass" : "FAIL") << " ("
         << out.monotone->cases << " cases, " << to_string(out.monotone->prov) << ")\n";
    if (out.contraction)
      os << "gate contraction: " << (out.contraction->holds ? "pass" : "FAIL") << " ("
         << out.contraction->cases << " comparable pairs, " << to_string(out.contraction->prov)
         << ")\n";
    if (out.initial) {
      os << "initial point: ";
      if constexpr (Prob::is_finite)
        os << fmt_tuple(prob.space, out.initial->tuple);
      else
        os << fmt_tuple(out.initial->tuple);
      os << " oriented " << to_string(out.initial->orientation) << "\n";
    } else if (out.failed_gate == Gate::InitialPoint) {
      os << "initial point: none found\n";
    }
    if (out.trace) {
      const auto& tr = *out.trace;
      os << "iteration: " << to_string(tr.status) << " after " << tr.steps() << " steps";
      if (!tr.nabla_residuals.empty()) {
        os << " (last max-residual ";
        if constexpr (Prob::is_finite)
          os << to_string(tr.nabla_residuals.back());
        else
          os << fmt_double(tr.nabla_residuals.back());
        os << ")";
      }
      os << "\n";
      if (tr.section_failure) {
        os << "section failure: equation " << tr.section_failure->first << ", value ";
        if constexpr (Prob::is_finite)
          os << prob.space.label(tr.section_failure->second);
        else
          os << fmt_double(tr.section_failure->second);
        os << " has no g-preimage\n";
      }
    }
    if (out.failed_gate) os << "failed gate: " << to_string(*out.failed_gate) << "\n";
    if (out.converged) {
      os << "answer: ";
      if constexpr (Prob::is_finite)
        os << fmt_tuple(prob.space, out.answer);
      else
        os << fmt_tuple(out.answer);
      os << "\n";
    }
    std::cout << os.str();
  }
  emit(std::cout, solve_json(prob, out));
  if (out.failed_gate) return 3;
  if (out.trace && out.trace->status == IterStatus::SectionFailed) return 3;
  if (out.converged) return 0;
  return 4;
}

int cmd_solve(const SolveArgs& a) {
  Instance inst = load_instance(a.instance);
  SolveOptions opts;
  opts.tol = a.tol;
  opts.max_iters = a.max_iters;
  opts.stall_window = a.stall_window;
  if (inst.finite()) {
    auto rep = validate_space(inst.fin().space);
    if (!rep.valid) {
      if (!a.json_only) {
        std::cout << "space axioms fail (" << rep.violations.size() << " violations)\n";
        for (const auto& v : rep.violations) std::cout << "  " << v.detail << "\n";
      }
      emit(std::cout, space_report_json(inst.fin().space, rep));
      return 2;
    }
    auto out = solve(inst.fin(), opts);
    return report_solve(inst.fin(), out, a, inst.name);
  }
  RealProblem& prob = inst.real();
  if (a.samples) prob.samples = *a.samples;
  if (a.seed) prob.seed = *a.seed;
  auto out = solve(prob, opts);
  return report_solve(prob, out, a, inst.name);
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
  std::string instance, theorem;
  long long cap = kDefaultOracleCap;
  bool json_only = false;
};

int cmd_verify(const VerifyArgs& a) {
  Instance inst = load_instance(a.instance);
  if (!inst.finite())
    throw HypothesesNotMachineVerified(
        "theorem certification enumerates the carrier; it needs a finite instance");
  auto rep = validate_space(inst.fin().space);
  if (!rep.valid) {
    if (!a.json_only) std::cout << "space axioms fail; cannot certify\n";
    emit(std::cout, space_report_json(inst.fin().space, rep));
    return 2;
  }
  Certificate cert = certify_theorem(inst.fin(), theorem_from_string(a.theorem), a.cap);
  if (!a.json_only) {
    std::ostringstream os;
    os << "statement " << to_string(cert.id) << " on instance "
       << (inst.name.empty() ? "(unnamed)" : inst.name) << "\n";
    for (const auto& h : cert.hypotheses) {
      os << "  [" << (h.value ? " ok " : "FAIL") << "] " << h.name << " ("
         << to_string(h.prov) << ")";
      if (!h.note.empty()) os << " -- " << h.note;
      os << "\n";
    }
    os << "hypotheses: " << (cert.hypotheses_hold ? "all hold" : "NOT all hold") << "\n";
    os << "conclusion: " << cert.conclusion_text << " -> "
       << (cert.conclusion_holds ? "holds" : "FAILS") << " against enumeration ("
       << cert.sets.tuples.size() << " coincidence tuples, " << cert.sets.images.size()
       << " points of coincidence, " << cert.sets.common.size() << " common fixed)\n";
    os << "certified: " << (cert.certified ? "yes" : "no") << "\n";
    std::cout << os.str();
  }
  emit(std::cout, certificate_json(inst.fin().space, cert));
  return cert.certified ? 0 : 1;
}

// ------------------------------------------------------------------ lemmas

struct LemmaArgs {
  LemmaSuiteConfig config;
  std::string out;
  bool json_only = false;
};

int cmd_lemmas(const LemmaArgs& a) {
  LemmaSuiteReport rep = lemma_suite(a.config);
  Json j = lemma_suite_json(rep);
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw IoError("cannot open report file '" + a.out + "'");
    emit(f, j);
  }
  if (!a.json_only) {
    std::ostringstream os;
    os << "law suite: n in [" << a.config.min_n << ", " << a.config.max_n << "], carrier <= "
       << a.config.max_size << ", " << a.config.trials << " trials, seed " << a.config.seed
       << "\n";
    for (const auto& l : rep.laws)
      os << "  " << (l.violations == 0 ? "ok  " : "FAIL") << " " << l.name << ": " << l.cases
         << " cases, " << l.violations << " violations\n";
    for (const auto& w : rep.warnings) os << "  warning: " << w << "\n";
    os << "total: " << rep.total_cases << " cases, " << (rep.all_hold ? "all laws hold" : "VIOLATIONS FOUND")
       << "\n";
    std::cout << os.str();
  }
  emit(std::cout, j);
  return rep.all_hold ? 0 : 1;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"n-tupled fixed point laboratory"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "classify an index operation against U");
  classify->add_option("--preset", ca.preset_name, "preset name");
  classify->add_option("--matrix", ca.matrix, "selection matrix: inline JSON or a file");
  classify->add_option("-n,--n", ca.n, "arity for arity-generic presets");
  classify->add_option("--partition", ca.partition, "'odd-even' or 'a,b|c,d'");
  int p_value = 0;
  auto* p_opt = classify->add_option("--p", p_value, "block split for the block-family preset");
  classify->add_option("--phis", ca.phis, "block maps (JSON rows)");
  classify->add_option("--psis", ca.psis, "block maps (JSON rows)");
  classify->add_option("--sigmas", ca.sigmas, "selector rows (JSON rows)");
  classify->add_flag("--json-only", ca.json_only, "suppress the human summary");

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "run the gated orbit solver on an instance file");
  solve_cmd->add_option("instance", sa.instance, "instance JSON file")->required();
  solve_cmd->add_option("--tol", sa.tol, "real-mode convergence tolerance");
  solve_cmd->add_option("--max-iters", sa.max_iters, "orbit step budget");
  solve_cmd->add_option("--stall-window", sa.stall_window, "non-decreasing steps before stalling");
  solve_cmd->add_option("--trace", sa.trace, "write line-delimited orbit trace to this file");
  long long samples_value = 0;
  std::uint64_t seed_value = 0;
  auto* samples_opt = solve_cmd->add_option("--samples", samples_value, "sampling budget (real mode)");
  auto* seed_opt = solve_cmd->add_option("--seed", seed_value, "sampling seed (real mode)");
  solve_cmd->add_flag("--json-only", sa.json_only, "suppress the human summary");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "certify a statement against exhaustive enumeration");
  verify->add_option("instance", va.instance, "instance JSON file")->required();
  verify->add_option("--theorem", va.theorem, "statement id, T1..T9")->required();
  verify->add_option("--cap", va.cap, "enumeration size cap");
  verify->add_flag("--json-only", va.json_only, "suppress the human summary");

  LemmaArgs la;
  auto* lemmas = app.add_subcommand("lemmas", "run the randomized law suite");
  lemmas->add_option("--min-n", la.config.min_n, "smallest arity");
  lemmas->add_option("-n,--max-n", la.config.max_n, "largest arity");
  lemmas->add_option("--max-size", la.config.max_size, "largest carrier size");
  lemmas->add_option("--trials", la.config.trials, "randomized instances per arity");
  lemmas->add_option("--op-samples", la.config.op_samples, "classification samples per arity");
  lemmas->add_option("--seed", la.config.seed, "suite seed");
  lemmas->add_option("--out", la.out, "also write the JSON report to this file");
  lemmas->add_flag("--json-only", la.json_only, "suppress the human summary");

  CLI11_PARSE(app, argc, argv);

  if (*p_opt) ca.p = p_value;
  if (*samples_opt) sa.samples = samples_value;
  if (*seed_opt) sa.seed = seed_value;

  if (app.got_subcommand(classify)) return cmd_classify(ca);
  if (app.got_subcommand(solve_cmd)) return cmd_solve(sa);
  if (app.got_subcommand(verify)) return cmd_verify(va);
  return cmd_lemmas(la);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ntfp::IoError& e) {
    std::cerr << "error (io): " << e.what() << "\n";
    return 6;
  } catch (const ntfp::SizeLimit& e) {
    std::cerr << "error (refused): " << e.what() << "\n";
    return 5;
  } catch (const ntfp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
