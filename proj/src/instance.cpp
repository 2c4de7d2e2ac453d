#include "ntfp/instance.hpp"

#include <fstream>
#include <ostream>
#include <set>

namespace ntfp {

namespace {

const Json& need(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing required key '" + key + "'");
  return *it;
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) throw ParseError(where + ": unknown key '" + it.key() + "'");
  }
}

int get_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

double get_double(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

std::string get_str(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::vector<int>> int_matrix(const Json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty())
    throw ParseError(where + ": expected a nonempty array of rows");
  std::vector<std::vector<int>> out;
  for (const Json& row : rows) {
    if (!row.is_array()) throw ParseError(where + ": each row must be an array");
    std::vector<int> r;
    for (const Json& v : row) r.push_back(get_int(v, where));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<int> int_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of integers");
  std::vector<int> out;
  for (const Json& e : v) out.push_back(get_int(e, where));
  return out;
}

const char* condition_name(UCondition c) {
  switch (c) {
    case UCondition::AAtoA: return "AxA->A";
    case UCondition::ABtoB: return "AxB->B";
    case UCondition::BAtoB: return "BxA->B";
    case UCondition::BBtoA: return "BxB->A";
  }
  return "?";
}

const char* violation_kind_name(SpaceViolation::Kind k) {
  switch (k) {
    case SpaceViolation::Kind::SelfDistanceNonZero: return "self-distance-nonzero";
    case SpaceViolation::Kind::DistinctDistanceZero: return "distinct-distance-zero";
    case SpaceViolation::Kind::NegativeDistance: return "negative-distance";
    case SpaceViolation::Kind::Asymmetric: return "asymmetric";
    case SpaceViolation::Kind::Triangle: return "triangle";
    case SpaceViolation::Kind::NotReflexive: return "order-not-reflexive";
    case SpaceViolation::Kind::NotAntisymmetric: return "order-not-antisymmetric";
    case SpaceViolation::Kind::NotTransitive: return "order-not-transitive";
  }
  return "?";
}

Json label_tuple(const FiniteSpace& space, const std::vector<int>& U) {
  Json arr = Json::array();
  for (int x : U) arr.push_back(space.label(x));
  return arr;
}

Json number_tuple(const std::vector<double>& U) {
  Json arr = Json::array();
  for (double x : U) arr.push_back(x);
  return arr;
}

ControlFunction parse_phi(const Json& v, const std::string& where) {
  std::string name;
  const Json* obj = nullptr;
  if (v.is_string()) {
    name = v.get<std::string>();
  } else if (v.is_object()) {
    obj = &v;
    check_keys(v, {"name", "alpha", "breaks", "alphas", "declared_class"}, where);
    name = get_str(need(v, "name", where), where + ".name");
  } else {
    throw ParseError(where + ": expected a name or an object with 'name'");
  }

  ControlFunction phi = ControlFunction::ratio();
  if (name == "linear") {
    if (!obj) throw ParseError(where + ": 'linear' needs an object with 'alpha'");
    phi = ControlFunction::linear(rational_from_json(need(*obj, "alpha", where), where + ".alpha"));
  } else if (name == "ratio") {
    phi = ControlFunction::ratio();
  } else if (name == "quad-clamped") {
    phi = ControlFunction::quad_clamped();
  } else if (name == "piecewise-linear") {
    if (!obj) throw ParseError(where + ": 'piecewise-linear' needs 'breaks' and 'alphas'");
    std::vector<Rational> breaks, alphas;
    for (const Json& b : need(*obj, "breaks", where))
      breaks.push_back(rational_from_json(b, where + ".breaks"));
    for (const Json& a : need(*obj, "alphas", where))
      alphas.push_back(rational_from_json(a, where + ".alphas"));
    phi = ControlFunction::piecewise_linear(std::move(breaks), std::move(alphas));
  } else {
    throw ParseError(where + ": unknown comparison function '" + name + "'");
  }
  if (obj && obj->contains("declared_class"))
    phi.declare_class(phi_class_from_string(get_str((*obj)["declared_class"], where)));
  return phi;
}

AssumptionSet parse_assumptions(const Json& v, const std::string& where) {
  check_keys(v,
             {"o_complete", "F_o_continuous", "g_o_continuous", "g_mcb", "mcb",
              "star_o_compatible", "weak_star_compatible", "commuting", "g_one_one", "directed"},
             where);
  AssumptionSet out;
  auto read = [&](const char* key, Assumption& slot) {
    if (!v.contains(key)) return;
    if (!v[key].is_boolean()) throw ParseError(where + "." + key + ": expected a boolean");
    slot = {v[key].get<bool>(), Provenance::Declared};
  };
  read("o_complete", out.o_complete);
  read("F_o_continuous", out.F_o_continuous);
  read("g_o_continuous", out.g_o_continuous);
  read("g_mcb", out.g_mcb);
  read("mcb", out.mcb);
  read("star_o_compatible", out.star_o_compatible);
  read("weak_star_compatible", out.weak_star_compatible);
  read("commuting", out.commuting);
  read("g_one_one", out.g_one_one);
  read("directed", out.directed);
  return out;
}

FiniteSpace parse_finite_space(const Json& v) {
  check_keys(v, {"elements", "dist", "leq", "closure"}, "space.finite");
  const Json& els = need(v, "elements", "space.finite");
  if (!els.is_array() || els.empty())
    throw ParseError("space.finite.elements: expected a nonempty array of labels");
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (const Json& e : els) {
    std::string l = get_str(e, "space.finite.elements");
    if (!seen.insert(l).second)
      throw ParseError("space.finite.elements: duplicate label '" + l + "'");
    labels.push_back(std::move(l));
  }
  const int m = static_cast<int>(labels.size());

  const Json& dj = need(v, "dist", "space.finite");
  if (!dj.is_array() || static_cast<int>(dj.size()) != m)
    throw ParseError("space.finite.dist: expected an " + std::to_string(m) + "-row matrix");
  std::vector<std::vector<Rational>> dist;
  for (const Json& row : dj) {
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw ParseError("space.finite.dist: each row needs " + std::to_string(m) + " entries");
    std::vector<Rational> r;
    for (const Json& x : row) r.push_back(rational_from_json(x, "space.finite.dist"));
    dist.push_back(std::move(r));
  }

  std::vector<std::pair<int, int>> pairs;
  std::map<std::string, int> index;
  for (int i = 0; i < m; ++i) index[labels[i]] = i;
  auto idx = [&](const Json& e) {
    std::string l = get_str(e, "space.finite.leq");
    auto it = index.find(l);
    if (it == index.end()) throw ParseError("space.finite.leq: unknown label '" + l + "'");
    return it->second;
  };
  if (v.contains("leq")) {
    if (!v["leq"].is_array()) throw ParseError("space.finite.leq: expected an array of pairs");
    for (const Json& p : v["leq"]) {
      if (!p.is_array() || p.size() != 2)
        throw ParseError("space.finite.leq: each entry must be a [lo, hi] pair");
      pairs.push_back({idx(p[0]), idx(p[1])});
    }
  }
  const bool closure = v.value("closure", false);
  return FiniteSpace(std::move(labels), std::move(dist), pairs, closure);
}

FiniteNMap parse_finite_F(const Json& v, const FiniteSpace& space, int n) {
  check_keys(v, {"table"}, "F");
  const Json& t = need(v, "table", "F");
  check_keys(t, {"flat", "entries", "default"}, "F.table");
  const int m = space.size();
  const long long total = FiniteNMap::table_size(n, m);
  auto idx = [&](const Json& e, const char* where) {
    return space.index_of(get_str(e, where));
  };
  if (t.contains("flat")) {
    const Json& flat = t["flat"];
    if (!flat.is_array() || static_cast<long long>(flat.size()) != total)
      throw ParseError("F.table.flat: expected exactly " + std::to_string(total) +
                       " values (first argument varies slowest)");
    std::vector<int> table;
    table.reserve(flat.size());
    for (const Json& e : flat) table.push_back(idx(e, "F.table.flat"));
    return FiniteNMap(n, m, std::move(table));
  }
  if (!t.contains("entries"))
    throw ParseError("F.table: need either 'flat' or 'entries'");
  std::vector<int> table(static_cast<size_t>(total), -1);
  for (const Json& e : t["entries"]) {
    check_keys(e, {"args", "value"}, "F.table.entries");
    const Json& args = need(e, "args", "F.table.entries");
    if (!args.is_array() || static_cast<int>(args.size()) != n)
      throw ParseError("F.table.entries: 'args' must list " + std::to_string(n) + " labels");
    std::vector<int> U;
    for (const Json& a : args) U.push_back(idx(a, "F.table.entries.args"));
    long long flat = 0;
    for (int x : U) flat = flat * m + x;
    const int val = idx(need(e, "value", "F.table.entries"), "F.table.entries.value");
    if (table[flat] != -1 && table[flat] != val)
      throw ParseError("F.table.entries: conflicting values for one argument tuple");
    table[flat] = val;
  }
  if (t.contains("default")) {
    const int dflt = idx(t["default"], "F.table.default");
    for (int& x : table)
      if (x == -1) x = dflt;
  } else {
    for (long long i = 0; i < total; ++i)
      if (table[i] == -1)
        throw PartialMapping("F.table.entries covers only part of X^n and no default is given");
  }
  return FiniteNMap(n, m, std::move(table));
}

FiniteMap parse_finite_g(const Json& v, const FiniteSpace& space) {
  if (v.is_string()) {
    if (v.get<std::string>() == "identity") return FiniteMap::identity(space.size());
    throw ParseError("g: the only string form is \"identity\"");
  }
  check_keys(v, {"table"}, "g");
  const Json& t = need(v, "table", "g");
  if (!t.is_object()) throw ParseError("g.table: expected an object mapping labels to labels");
  std::vector<int> image(space.size(), -1);
  for (auto it = t.begin(); it != t.end(); ++it)
    image[space.index_of(it.key())] = space.index_of(get_str(it.value(), "g.table"));
  for (int x = 0; x < space.size(); ++x)
    if (image[x] == -1)
      throw PartialMapping("g.table misses element '" + space.label(x) + "'");
  return FiniteMap(std::move(image));
}

RealNMap parse_real_F(const Json& v, int n, const std::string& where) {
  check_keys(v, {"builtin"}, where);
  const Json& b = need(v, "builtin", where);
  check_keys(b, {"name", "coeffs", "constant", "scale"}, where + ".builtin");
  const std::string name = get_str(need(b, "name", where), where + ".builtin.name");
  RealNMap F;
  F.n = n;
  if (name == "weighted-sum") {
    F.kind = RealNMap::Kind::WeightedSum;
    const Json& cj = need(b, "coeffs", where);
    if (!cj.is_array() || static_cast<int>(cj.size()) != n)
      throw ParseError(where + ".builtin.coeffs: expected " + std::to_string(n) + " numbers");
    for (const Json& c : cj) F.coeffs.push_back(get_double(c, where + ".builtin.coeffs"));
    F.constant = b.contains("constant") ? get_double(b["constant"], where) : 0.0;
  } else if (name == "product") {
    F.kind = RealNMap::Kind::Product;
    F.scale = b.contains("scale") ? get_double(b["scale"], where) : 1.0;
  } else {
    throw ParseError(where + ".builtin.name: unknown real map '" + name + "'");
  }
  return F;
}

RealSelfMap parse_real_g(const Json& v) {
  RealSelfMap g;
  if (v.is_string()) {
    if (v.get<std::string>() == "identity") return g;
    throw ParseError("g: the only string form is \"identity\"");
  }
  check_keys(v, {"builtin"}, "g");
  const Json& b = need(v, "builtin", "g");
  check_keys(b, {"name", "a", "b"}, "g.builtin");
  const std::string name = get_str(need(b, "name", "g"), "g.builtin.name");
  if (name == "identity") return g;
  if (name != "affine") throw ParseError("g.builtin.name: unknown real self-map '" + name + "'");
  g.kind = RealSelfMap::Kind::Affine;
  g.a = get_double(need(b, "a", "g.builtin"), "g.builtin.a");
  g.b = b.contains("b") ? get_double(b["b"], "g.builtin.b") : 0.0;
  if (g.a == 0) throw ParseError("g.builtin.a: affine self-map needs a != 0");
  return g;
}

Json membership_json(const MembershipVerdict& v) {
  Json out;
  out["holds"] = v.in_U;
  Json arr = Json::array();
  for (const UViolation& viol : v.violations)
    arr.push_back({{"i", viol.i},
                   {"k", viol.k},
                   {"value", viol.value},
                   {"condition", condition_name(viol.cond)}});
  out["violations"] = arr;
  return out;
}

template <class P, class Render>
Json monotone_json(const MonotoneReport<P>& rep, Render&& tuple) {
  Json out;
  out["holds"] = rep.holds;
  out["cases"] = rep.cases;
  out["provenance"] = to_string(rep.prov);
  Json arr = Json::array();
  for (const auto& v : rep.violations)
    arr.push_back({{"position", v.position}, {"lo_args", tuple(v.lo_args)}, {"hi_args", tuple(v.hi_args)}});
  out["violations"] = arr;
  return out;
}

template <class P, class D, class Render, class Dist>
Json contraction_json(const ContractionReport<P, D>& rep, Render&& tuple, Dist&& dist) {
  Json out;
  out["holds"] = rep.holds;
  out["cases"] = rep.cases;
  out["provenance"] = to_string(rep.prov);
  Json arr = Json::array();
  for (const auto& v : rep.violations)
    arr.push_back({{"U", tuple(v.U)}, {"V", tuple(v.V)}, {"lhs", dist(v.lhs)}, {"rhs", dist(v.rhs)}});
  out["violations"] = arr;
  return out;
}

template <class Prob, class Render, class Dist, class Point>
Json solve_json_impl(const Prob& prob, const SolveOutcome<Prob>& out, Render&& tuple, Dist&& dist,
                     Point&& point) {
  Json j;
  j["space"] = Prob::is_finite ? "finite" : "real";
  j["n"] = prob.op.n();
  j["mode"] = to_string(prob.mode);
  j["form"] = to_string(prob.form);
  j["phi"] = prob.phi.describe();

  Json gates;
  gates["membership"] = membership_json(out.member_u);
  if (out.monotone) gates["mixed_monotone"] = monotone_json(*out.monotone, tuple);
  if (out.contraction) gates["contraction"] = contraction_json(*out.contraction, tuple, dist);
  if (out.initial || out.failed_gate == Gate::InitialPoint) {
    Json init;
    init["found"] = out.initial.has_value();
    if (out.initial) {
      init["tuple"] = tuple(out.initial->tuple);
      init["orientation"] = to_string(out.initial->orientation);
    }
    gates["initial_point"] = init;
  }
  j["gates"] = gates;
  j["failed_gate"] = out.failed_gate ? Json(to_string(*out.failed_gate)) : Json(nullptr);

  if (out.trace) {
    const auto& tr = *out.trace;
    Json it;
    it["status"] = to_string(tr.status);
    it["steps"] = tr.steps();
    if (!tr.delta_residuals.empty()) {
      it["final_delta_residual"] = dist(tr.delta_residuals.back());
      it["final_nabla_residual"] = dist(tr.nabla_residuals.back());
    }
    if (tr.section_failure)
      it["section_failure"] = {{"equation", tr.section_failure->first},
                               {"value", point(tr.section_failure->second)}};
    Json pv = Json::array();
    for (const auto& v : tr.phi_violations) pv.push_back({{"t", dist(v.t)}, {"phi_t", dist(v.phi_t)}});
    it["phi_violations"] = pv;
    j["iteration"] = it;
  }
  j["converged"] = out.converged;
  j["answer"] = out.converged ? tuple(out.answer) : Json(nullptr);
  return j;
}

}  // namespace

Rational rational_from_json(const Json& v, const std::string& where) {
  try {
    if (v.is_string()) return rational_from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float()) return rational_from_string(v.dump());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected a number or a rational string");
}

Json json_rational(const Rational& r) {
  if (r.denominator() == 1) return Json(r.numerator());
  return Json(to_string(r));
}

BinaryOp matrix_from_json(const Json& rows) {
  return BinaryOp(static_cast<int>(rows.is_array() ? rows.size() : 0),
                  int_matrix(rows, "star.matrix"));
}

Partition partition_from_json(const Json& j, int n) {
  check_keys(j, {"A", "B"}, "partition");
  return Partition(n, int_list(need(j, "A", "partition"), "partition.A"),
                   int_list(need(j, "B", "partition"), "partition.B"));
}

Instance parse_instance(const Json& j) {
  if (!j.is_object()) throw ParseError("instance: top level must be a JSON object");
  check_keys(j,
             {"name", "n", "star", "partition", "space", "F", "g", "phi", "contraction_form",
              "weights", "mode", "assumptions", "initial", "E", "samples", "seed"},
             "instance");
  Instance inst;
  inst.name = j.contains("name") ? get_str(j["name"], "name") : "";
  const int n = get_int(need(j, "n", "instance"), "n");
  if (n < 2) throw ParseError("n: need n >= 2");

  const Json& star = need(j, "star", "instance");
  check_keys(star, {"preset", "matrix", "p", "phis", "psis", "sigmas"}, "star");
  std::optional<BinaryOp> op;
  std::optional<Partition> canonical;
  if (star.contains("preset")) {
    PresetParams params;
    if (star.contains("p")) params.p = get_int(star["p"], "star.p");
    if (star.contains("phis")) params.phis = int_matrix(star["phis"], "star.phis");
    if (star.contains("psis")) params.psis = int_matrix(star["psis"], "star.psis");
    if (star.contains("sigmas")) params.sigmas = int_matrix(star["sigmas"], "star.sigmas");
    if (j.contains("partition")) {
      const Json& pj = j["partition"];
      check_keys(pj, {"A", "B"}, "partition");
      params.partition = {int_list(need(pj, "A", "partition"), "partition.A"),
                          int_list(need(pj, "B", "partition"), "partition.B")};
    }
    auto res = preset(get_str(star["preset"], "star.preset"), n, params);
    op = res.op;
    canonical = res.part;
  } else if (star.contains("matrix")) {
    op = matrix_from_json(star["matrix"]);
    if (op->n() != n)
      throw ParseError("star.matrix: matrix is " + std::to_string(op->n()) + "x" +
                       std::to_string(op->n()) + " but n = " + std::to_string(n));
  } else {
    throw ParseError("star: need either 'preset' or 'matrix'");
  }
  std::optional<Partition> part_opt;
  if (j.contains("partition")) part_opt = partition_from_json(j["partition"], n);
  else if (canonical) part_opt = *canonical;
  else throw ParseError("partition: required when 'star' is an explicit matrix");
  const Partition& part = *part_opt;

  const Json& sp = need(j, "space", "instance");
  check_keys(sp, {"finite", "real"}, "space");

  if (sp.contains("finite")) {
    FiniteSpace space = parse_finite_space(sp["finite"]);
    FiniteNMap F = parse_finite_F(need(j, "F", "instance"), space, n);
    FiniteMap g = parse_finite_g(need(j, "g", "instance"), space);
    FiniteProblem prob{space, F, g, *op, part};
    if (j.contains("phi")) prob.phi = parse_phi(j["phi"], "phi");
    if (j.contains("contraction_form"))
      prob.form = contraction_form_from_string(get_str(j["contraction_form"], "contraction_form"));
    if (j.contains("weights"))
      for (const Json& w : j["weights"])
        prob.weights.push_back(rational_from_json(w, "weights"));
    if (j.contains("mode")) prob.mode = solve_mode_from_string(get_str(j["mode"], "mode"));
    if (j.contains("assumptions")) prob.assumptions = parse_assumptions(j["assumptions"], "assumptions");
    if (j.contains("initial")) {
      const Json& ij = j["initial"];
      if (!ij.is_array() || static_cast<int>(ij.size()) != n)
        throw ParseError("initial: expected " + std::to_string(n) + " labels");
      std::vector<int> U;
      for (const Json& e : ij) U.push_back(space.index_of(get_str(e, "initial")));
      prob.initial = U;
    }
    if (j.contains("E")) {
      std::vector<char> mask(space.size(), 0);
      for (const Json& e : j["E"]) mask[space.index_of(get_str(e, "E"))] = 1;
      prob.E = mask;
    }
    if (j.contains("samples") || j.contains("seed"))
      throw ParseError("samples/seed: only meaningful for the real space");
    inst.problem = std::move(prob);
  } else if (sp.contains("real")) {
    const Json& rj = sp["real"];
    check_keys(rj, {"lo", "hi"}, "space.real");
    RealLine line(get_double(need(rj, "lo", "space.real"), "space.real.lo"),
                  get_double(need(rj, "hi", "space.real"), "space.real.hi"));
    RealNMap F = parse_real_F(need(j, "F", "instance"), n, "F");
    RealSelfMap g = j.contains("g") ? parse_real_g(j["g"]) : RealSelfMap{};
    RealProblem prob{line, F, g, *op, part};
    if (j.contains("phi")) prob.phi = parse_phi(j["phi"], "phi");
    if (j.contains("contraction_form"))
      prob.form = contraction_form_from_string(get_str(j["contraction_form"], "contraction_form"));
    if (j.contains("weights"))
      for (const Json& w : j["weights"]) prob.weights.push_back(get_double(w, "weights"));
    if (j.contains("mode")) prob.mode = solve_mode_from_string(get_str(j["mode"], "mode"));
    if (j.contains("assumptions")) prob.assumptions = parse_assumptions(j["assumptions"], "assumptions");
    if (j.contains("initial")) {
      const Json& ij = j["initial"];
      if (!ij.is_array() || static_cast<int>(ij.size()) != n)
        throw ParseError("initial: expected " + std::to_string(n) + " numbers");
      std::vector<double> U;
      for (const Json& e : ij) U.push_back(get_double(e, "initial"));
      prob.initial = U;
    }
    if (j.contains("E")) throw ParseError("E: only meaningful for a finite space");
    if (j.contains("samples")) prob.samples = get_int(j["samples"], "samples");
    if (j.contains("seed")) prob.seed = static_cast<std::uint64_t>(get_int(j["seed"], "seed"));
    inst.problem = std::move(prob);
  } else {
    throw ParseError("space: need either 'finite' or 'real'");
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("instance '" + path + "': " + e.what());
  }
  return parse_instance(j);
}

Json classify_json(const std::string& name, const BinaryOp& op, const Partition& part) {
  Json j;
  if (!name.empty()) j["name"] = name;
  j["n"] = op.n();
  j["matrix"] = op.rows();
  j["partition"] = {{"A", part.A()}, {"B", part.B()}};
  auto verdict = is_member_U(op, part);
  j["member_of_U"] = verdict.in_U;
  j["violations"] = membership_json(verdict)["violations"];
  auto perm = is_permuted(op);
  j["permuted"] = perm.permuted;
  if (perm.first_bad_row) j["first_bad_row"] = *perm.first_bad_row;
  j["selectors"] = to_upsilon(op).sigmas();
  return j;
}

Json space_report_json(const FiniteSpace& space, const SpaceReport& rep) {
  Json j;
  j["valid"] = rep.valid;
  Json arr = Json::array();
  for (const SpaceViolation& v : rep.violations) {
    Json e;
    e["kind"] = violation_kind_name(v.kind);
    Json els = Json::array();
    for (int x : v.elems) els.push_back(space.label(x));
    e["elements"] = els;
    e["detail"] = v.detail;
    arr.push_back(e);
  }
  j["violations"] = arr;
  j["notes"] = rep.notes;
  return j;
}

Json solve_json(const FiniteProblem& prob, const SolveOutcome<FiniteProblem>& out) {
  auto tuple = [&](const std::vector<int>& U) { return label_tuple(prob.space, U); };
  auto dist = [](const Rational& d) { return json_rational(d); };
  auto point = [&](int x) { return Json(prob.space.label(x)); };
  return solve_json_impl(prob, out, tuple, dist, point);
}

Json solve_json(const RealProblem& prob, const SolveOutcome<RealProblem>& out) {
  auto tuple = [](const std::vector<double>& U) { return number_tuple(U); };
  auto dist = [](double d) { return Json(d); };
  auto point = [](double x) { return Json(x); };
  return solve_json_impl(prob, out, tuple, dist, point);
}

Json certificate_json(const FiniteSpace& space, const Certificate& cert) {
  Json j;
  j["theorem"] = to_string(cert.id);
  Json hyps = Json::array();
  for (const HypothesisRecord& h : cert.hypotheses) {
    Json e;
    e["name"] = h.name;
    e["holds"] = h.value;
    e["provenance"] = to_string(h.prov);
    if (!h.note.empty()) e["note"] = h.note;
    hyps.push_back(e);
  }
  j["hypotheses"] = hyps;
  j["hypotheses_hold"] = cert.hypotheses_hold;
  j["conclusion"] = {{"text", cert.conclusion_text}, {"holds", cert.conclusion_holds}};
  j["certified"] = cert.certified;

  constexpr size_t kListCap = 16;
  auto listed = [&](const std::vector<std::vector<int>>& tuples) {
    Json arr = Json::array();
    for (size_t i = 0; i < tuples.size() && i < kListCap; ++i)
      arr.push_back(label_tuple(space, tuples[i]));
    return arr;
  };
  Json en;
  en["scanned"] = cert.sets.scanned;
  en["coincidence_count"] = cert.sets.tuples.size();
  en["coincidence_tuples"] = listed(cert.sets.tuples);
  en["points_of_coincidence_count"] = cert.sets.images.size();
  en["points_of_coincidence"] = listed(cert.sets.images);
  en["common_fixed_count"] = cert.sets.common.size();
  en["common_fixed"] = listed(cert.sets.common);
  j["enumeration"] = en;
  if (!cert.counterexample.empty()) j["counterexample"] = listed(cert.counterexample);
  return j;
}

Json lemma_suite_json(const LemmaSuiteReport& rep) {
  Json j;
  j["config"] = {{"min_n", rep.config.min_n},   {"max_n", rep.config.max_n},
                 {"max_size", rep.config.max_size}, {"trials", rep.config.trials},
                 {"op_samples", rep.config.op_samples}, {"seed", rep.config.seed}};
  Json laws = Json::array();
  for (const LawResult& l : rep.laws) {
    Json e;
    e["name"] = l.name;
    e["cases"] = l.cases;
    e["violations"] = l.violations;
    if (!l.samples.empty()) e["samples"] = l.samples;
    laws.push_back(e);
  }
  j["laws"] = laws;
  j["total_cases"] = rep.total_cases;
  j["all_hold"] = rep.all_hold;
  j["warnings"] = rep.warnings;
  return j;
}

void write_trace(std::ostream& os, const FiniteSpace& space,
                 const IterationTrace<int, Rational>& tr) {
  for (size_t m = 0; m < tr.tuples.size(); ++m) {
    Json line;
    line["m"] = m;
    line["tuple"] = label_tuple(space, tr.tuples[m]);
    if (m > 0) {
      line["delta_residual"] = json_rational(tr.delta_residuals[m - 1]);
      line["nabla_residual"] = json_rational(tr.nabla_residuals[m - 1]);
    }
    os << line.dump() << "\n";
  }
}

void write_trace(std::ostream& os, const IterationTrace<double, double>& tr) {
  for (size_t m = 0; m < tr.tuples.size(); ++m) {
    Json line;
    line["m"] = m;
    line["tuple"] = number_tuple(tr.tuples[m]);
    if (m > 0) {
      line["delta_residual"] = tr.delta_residuals[m - 1];
      line["nabla_residual"] = tr.nabla_residuals[m - 1];
    }
    os << line.dump() << "\n";
  }
}

}  // namespace ntfp
