#include "ntfp/solver.hpp"

#include <algorithm>
#include <cmath>

#include "ntfp/rng.hpp"

namespace ntfp {

namespace {

constexpr long long kEnumCap = 10'000'000;  // refuse exhaustive scans beyond this
constexpr int kViolationCap = 8;            // stored (not counted) violations per report

// Float-noise guard for sampled real-mode inequalities. The contraction bound
// is tight on a fat set of sampled pairs (equality in exact arithmetic), so a
// raw <= would flip on the last ulp; genuine violations dwarf this slack.
bool leq_with_slack(double lhs, double rhs) {
  return lhs <= rhs + 1e-14 + 1e-9 * std::max(std::fabs(lhs), std::fabs(rhs));
}

long long checked_count(long long base, int exp, const char* what) {
  long long total = 1;
  for (int i = 0; i < exp; ++i) {
    if (total > kEnumCap / base)
      throw SizeLimit(std::string(what) + ": enumeration of " + std::to_string(base) + "^" +
                          std::to_string(exp) + " states exceeds the cap",
                      -1, kEnumCap);
    total *= base;
  }
  return total;
}

// Shared form preconditions; the weight checks are done by the callers since
// the scalar types differ.
void enforce_form_preconditions(const BinaryOp& op, const ControlFunction& phi,
                                ContractionForm form) {
  if (form == ContractionForm::PointwiseSum && !is_permuted(op).permuted)
    throw PreconditionUnmet("pointwise-sum contraction form needs a permuted op");
  if (form == ContractionForm::PointwiseMax && !is_permuted(op).permuted) {
    auto grid = log_grid(1e-3, 1e3, 64);
    if (!sampled_increasing(phi, grid))
      throw PreconditionUnmet(
          "pointwise-max contraction form needs a permuted op or an increasing phi "
          "(sampled check failed)");
  }
}

template <class T>
void validate_weights(const std::vector<T>& w, int n) {
  if (static_cast<int>(w.size()) != n)
    throw WeightsOutOfRange("weighted-linear form needs exactly n weights");
  T sum{0};
  for (const T& x : w) {
    if (x < T(0)) throw WeightsOutOfRange("weighted-linear weights must be nonnegative");
    sum += x;
  }
  if (!(sum < T(1))) throw WeightsOutOfRange("weighted-linear weights must sum below 1");
}

}  // namespace

std::string to_string(SolveMode m) {
  switch (m) {
    case SolveMode::Compatible: return "compatible";
    case SolveMode::Range: return "range";
    case SolveMode::FixedPoint: return "fixed-point";
  }
  return "?";
}

SolveMode solve_mode_from_string(const std::string& name) {
  if (name == "compatible") return SolveMode::Compatible;
  if (name == "range") return SolveMode::Range;
  if (name == "fixed-point") return SolveMode::FixedPoint;
  throw ParseError("unknown mode '" + name + "'");
}

std::string to_string(ContractionForm f) {
  switch (f) {
    case ContractionForm::SumAvg: return "sum";
    case ContractionForm::Max: return "max";
    case ContractionForm::PointwiseSum: return "pointwise-sum";
    case ContractionForm::PointwiseMax: return "pointwise-max";
    case ContractionForm::WeightedLinear: return "weighted-linear";
  }
  return "?";
}

ContractionForm contraction_form_from_string(const std::string& name) {
  if (name == "sum") return ContractionForm::SumAvg;
  if (name == "max") return ContractionForm::Max;
  if (name == "pointwise-sum") return ContractionForm::PointwiseSum;
  if (name == "pointwise-max") return ContractionForm::PointwiseMax;
  if (name == "weighted-linear") return ContractionForm::WeightedLinear;
  throw ParseError("unknown contraction form '" + name + "'");
}

std::string to_string(Orientation o) { return o == Orientation::Up ? "up" : "down"; }

std::string to_string(IterStatus s) {
  switch (s) {
    case IterStatus::Converged: return "converged";
    case IterStatus::MaxIters: return "max-iters";
    case IterStatus::Stalled: return "stalled";
    case IterStatus::SectionFailed: return "section-failed";
  }
  return "?";
}

std::string to_string(Gate g) {
  switch (g) {
    case Gate::MemberU: return "membership";
    case Gate::MixedMonotone: return "mixed-monotone";
    case Gate::Contraction: return "contraction";
    case Gate::InitialPoint: return "initial-point";
  }
  return "?";
}

double RealNMap::operator()(std::span<const double> xs) const {
  if (static_cast<int>(xs.size()) != n)
    throw DimensionMismatch("real map expects " + std::to_string(n) + " arguments");
  if (kind == Kind::WeightedSum) {
    double acc = constant;
    for (int i = 0; i < n; ++i) acc += coeffs[i] * xs[i];
    return acc;
  }
  double acc = scale;
  for (double x : xs) acc *= x;
  return acc;
}

std::string RealNMap::describe() const {
  if (kind == Kind::WeightedSum) {
    std::string s = "F(x) = " + std::to_string(constant);
    for (int i = 0; i < n; ++i)
      s += " + " + std::to_string(coeffs[i]) + "*x" + std::to_string(i + 1);
    return s;
  }
  return "F(x) = " + std::to_string(scale) + " * x1*..*x" + std::to_string(n);
}

std::string RealSelfMap::describe() const {
  if (is_identity()) return "g = id";
  return "g(x) = " + std::to_string(a) + "*x + " + std::to_string(b);
}

// ---------------------------------------------------------------------------
// mixed monotonicity

MonotoneReport<int> check_mixed_monotone(const FiniteProblem& prob) {
  const int n = prob.op.n(), m = prob.space.size();
  checked_count(m, n + 1, "mixed-monotone check");  // m^2 pairs * m^(n-1) contexts per slot
  MonotoneReport<int> rep;
  rep.prov = Provenance::MachineVerified;
  std::vector<int> lo(n), hi(n);
  for (int pos = 1; pos <= n; ++pos) {
    const bool increasing = prob.part.in_A(pos);
    for (int u = 0; u < m; ++u) {
      for (int v = 0; v < m; ++v) {
        if (!prob.space.leq(prob.g(u), prob.g(v))) continue;
        std::vector<int> ctx(n - 1, 0);
        do {
          for (int j = 0, c = 0; j < n; ++j) {
            int x = j + 1 == pos ? -1 : ctx[c++];
            lo[j] = hi[j] = x;
          }
          lo[pos - 1] = u;
          hi[pos - 1] = v;
          ++rep.cases;
          const int fu = prob.F(lo), fv = prob.F(hi);
          const bool ok = increasing ? prob.space.leq(fu, fv) : prob.space.leq(fv, fu);
          if (!ok && static_cast<int>(rep.violations.size()) < kViolationCap)
            rep.violations.push_back({pos, lo, hi});
        } while (next_tuple(ctx, m));
      }
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

MonotoneReport<double> check_mixed_monotone(const RealProblem& prob) {
  const int n = prob.op.n();
  MonotoneReport<double> rep;
  rep.prov = Provenance::Sampled;
  Rng rng(prob.seed ^ 0xA11CEull);
  const double lo = prob.space.lo(), hi = prob.space.hi();
  std::vector<double> a(n), b(n);
  for (long long s = 0; s < prob.samples; ++s) {
    const int pos = 1 + rng.below(n);
    double u = rng.uniform(lo, hi), v = rng.uniform(lo, hi);
    if (!(prob.g(u) <= prob.g(v))) std::swap(u, v);
    for (int j = 0; j < n; ++j) a[j] = b[j] = rng.uniform(lo, hi);
    a[pos - 1] = u;
    b[pos - 1] = v;
    ++rep.cases;
    const double fu = prob.F(a), fv = prob.F(b);
    const bool increasing = prob.part.in_A(pos);
    const bool ok = increasing ? leq_with_slack(fu, fv) : leq_with_slack(fv, fu);
    if (!ok) {
      rep.holds = false;
      if (static_cast<int>(rep.violations.size()) < kViolationCap)
        rep.violations.push_back({pos, a, b});
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// contraction inequality

namespace {

template <class Prob, class P, class D>
D contraction_lhs(const Prob& prob, ContractionForm form, std::span<const P> U,
                  std::span<const P> V) {
  if (form == ContractionForm::SumAvg || form == ContractionForm::Max) {
    auto FU = apply_F_star<P>(prob.op, prob.F, U);
    auto FV = apply_F_star<P>(prob.op, prob.F, V);
    return form == ContractionForm::SumAvg
               ? delta_n(prob.space, std::span<const P>(FU), std::span<const P>(FV))
               : nabla_n(prob.space, std::span<const P>(FU), std::span<const P>(FV));
  }
  return prob.space.dist(prob.F(U), prob.F(V));
}

template <class Prob, class P, class D>
D contraction_rhs(const Prob& prob, ContractionForm form, std::span<const P> GU,
                  std::span<const P> GV) {
  switch (form) {
    case ContractionForm::SumAvg:
    case ContractionForm::PointwiseSum:
      return prob.phi.eval(delta_n(prob.space, GU, GV));
    case ContractionForm::Max:
    case ContractionForm::PointwiseMax:
      return prob.phi.eval(nabla_n(prob.space, GU, GV));
    case ContractionForm::WeightedLinear: {
      D acc{0};
      for (size_t i = 0; i < GU.size(); ++i) acc += prob.weights[i] * prob.space.dist(GU[i], GV[i]);
      return acc;
    }
  }
  return D{0};
}

}  // namespace

ContractionReport<int, Rational> check_contraction(const FiniteProblem& prob) {
  const int n = prob.op.n(), m = prob.space.size();
  enforce_form_preconditions(prob.op, prob.phi, prob.form);
  if (prob.form == ContractionForm::WeightedLinear) validate_weights(prob.weights, n);
  checked_count(m, 2 * n, "contraction check");
  ContractionReport<int, Rational> rep;
  rep.prov = Provenance::MachineVerified;
  std::vector<int> U(n, 0);
  do {
    auto GU = apply_G<int>(prob.g, U);
    std::vector<int> V(n, 0);
    do {
      auto GV = apply_G<int>(prob.g, V);
      if (!comparable(prob.space, prob.part, std::span<const int>(GU), std::span<const int>(GV)))
        continue;
      ++rep.cases;
      const Rational lhs =
          contraction_lhs<FiniteProblem, int, Rational>(prob, prob.form, U, V);
      const Rational rhs = contraction_rhs<FiniteProblem, int, Rational>(
          prob, prob.form, std::span<const int>(GU), std::span<const int>(GV));
      if (!(lhs <= rhs) && static_cast<int>(rep.violations.size()) < kViolationCap)
        rep.violations.push_back({U, V, lhs, rhs});
    } while (next_tuple(V, m));
  } while (next_tuple(U, m));
  rep.holds = rep.violations.empty();
  return rep;
}

ContractionReport<double, double> check_contraction(const RealProblem& prob) {
  const int n = prob.op.n();
  enforce_form_preconditions(prob.op, prob.phi, prob.form);
  if (prob.form == ContractionForm::WeightedLinear) validate_weights(prob.weights, n);
  ContractionReport<double, double> rep;
  rep.prov = Provenance::Sampled;
  Rng rng(prob.seed ^ 0xC0117ull);
  const double lo = prob.space.lo(), hi = prob.space.hi();
  std::vector<double> U(n), V(n);
  for (long long s = 0; s < prob.samples; ++s) {
    // Build a pair with comparable G-images directly: push each g-image up on
    // A-coordinates and down on B-coordinates (or the reverse).
    const bool up = rng.coin();
    for (int i = 1; i <= n; ++i) {
      U[i - 1] = rng.uniform(lo, hi);
      const double d = rng.uniform(0.0, hi - lo);
      const double sign = prob.part.in_A(i) == up ? 1.0 : -1.0;
      V[i - 1] = prob.g.section(prob.g(U[i - 1]) + sign * d);
    }
    auto GU = apply_G<double>(prob.g, U);
    auto GV = apply_G<double>(prob.g, V);
    ++rep.cases;
    const double lhs = contraction_lhs<RealProblem, double, double>(prob, prob.form, U, V);
    const double rhs = contraction_rhs<RealProblem, double, double>(
        prob, prob.form, std::span<const double>(GU), std::span<const double>(GV));
    if (!leq_with_slack(lhs, rhs) && static_cast<int>(rep.violations.size()) < kViolationCap)
      rep.violations.push_back({U, V, lhs, rhs});
  }
  rep.holds = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// initial point

namespace {

template <class Prob, class P>
std::optional<Orientation> initial_orientation(const Prob& prob, std::span<const P> U) {
  const int n = prob.op.n();
  bool up = true, down = true;
  for (int i = 1; i <= n && (up || down); ++i) {
    const auto S = slice(prob.op, i, U);
    const P w = prob.F(std::span<const P>(S));
    const P gx = prob.g(U[i - 1]);
    const bool a = prob.part.in_A(i);
    // Up: G(U) [= F_*(U), i.e. g(x_i) <= F(U*_i) on A and >= on B.
    if (a ? !prob.space.leq(gx, w) : !prob.space.leq(w, gx)) up = false;
    if (a ? !prob.space.leq(w, gx) : !prob.space.leq(gx, w)) down = false;
  }
  if (up) return Orientation::Up;
  if (down) return Orientation::Down;
  return std::nullopt;
}

}  // namespace

std::optional<InitialPoint<int>> find_initial(const FiniteProblem& prob) {
  const int n = prob.op.n(), m = prob.space.size();
  if (prob.initial) {
    if (auto o = initial_orientation<FiniteProblem, int>(prob, *prob.initial))
      return InitialPoint<int>{*prob.initial, *o};
  }
  checked_count(m, n, "initial-point scan");
  std::vector<int> U(n, 0);
  do {
    if (auto o = initial_orientation<FiniteProblem, int>(prob, U)) return InitialPoint<int>{U, *o};
  } while (next_tuple(U, m));
  return std::nullopt;
}

std::optional<InitialPoint<double>> find_initial(const RealProblem& prob) {
  const int n = prob.op.n();
  if (prob.initial) {
    if (auto o = initial_orientation<RealProblem, double>(prob, *prob.initial))
      return InitialPoint<double>{*prob.initial, *o};
  }
  // Coarse deterministic grid scan over the sampling box.
  int points = 9;
  while (points > 3 && std::pow(points, n) > 20000.0) points -= 2;
  const double lo = prob.space.lo(), hi = prob.space.hi();
  std::vector<int> idx(n, 0);
  std::vector<double> U(n);
  do {
    for (int j = 0; j < n; ++j) U[j] = lo + (hi - lo) * idx[j] / (points - 1);
    if (auto o = initial_orientation<RealProblem, double>(prob, U))
      return InitialPoint<double>{U, *o};
  } while (next_tuple(idx, points));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// orbit

IterationTrace<int, Rational> iterate(const FiniteProblem& prob, std::vector<int> U0,
                                      const SolveOptions& opts) {
  const int n = prob.op.n(), m = prob.space.size();
  IterationTrace<int, Rational> trace;
  // Deterministic section of g: smallest-index preimage.
  std::vector<int> section(m, -1);
  for (int x = m - 1; x >= 0; --x) section[prob.g(x)] = x;

  std::vector<int> U = std::move(U0);
  trace.tuples.push_back(U);
  auto lifted = apply_F_star<int>(prob.op, prob.F, U);
  if (lifted == apply_G<int>(prob.g, U)) {
    trace.status = IterStatus::Converged;  // already an exact coincidence tuple
    return trace;
  }

  int stall_streak = 0;
  std::optional<Rational> prev_nr;
  for (int step = 1; step <= opts.max_iters; ++step) {
    lifted = apply_F_star<int>(prob.op, prob.F, U);
    std::vector<int> next(n);
    for (int i = 1; i <= n; ++i) {
      if (section[lifted[i - 1]] < 0) {
        trace.section_failure = {i, lifted[i - 1]};
        trace.status = IterStatus::SectionFailed;
        return trace;
      }
      next[i - 1] = section[lifted[i - 1]];
    }
    const auto GU = apply_G<int>(prob.g, U);
    const auto GN = apply_G<int>(prob.g, next);
    const Rational dr = delta_n(prob.space, std::span<const int>(GN), std::span<const int>(GU));
    const Rational nr = nabla_n(prob.space, std::span<const int>(GN), std::span<const int>(GU));
    for (const Rational& r : {dr, nr})
      if (r > Rational(0) && !(prob.phi.eval(r) < r)) trace.phi_violations.push_back({r, prob.phi.eval(r)});
    trace.delta_residuals.push_back(dr);
    trace.nabla_residuals.push_back(nr);
    trace.tuples.push_back(next);
    U = std::move(next);
    if (nr == Rational(0)) {
      trace.status = IterStatus::Converged;
      return trace;
    }
    if (prev_nr && !(nr < *prev_nr)) {
      if (++stall_streak >= opts.stall_window) {
        trace.status = IterStatus::Stalled;
        return trace;
      }
    } else {
      stall_streak = 0;
    }
    prev_nr = nr;
  }
  trace.status = IterStatus::MaxIters;
  return trace;
}

IterationTrace<double, double> iterate(const RealProblem& prob, std::vector<double> U0,
                                       const SolveOptions& opts) {
  const int n = prob.op.n();
  IterationTrace<double, double> trace;
  std::vector<double> U = std::move(U0);
  trace.tuples.push_back(U);
  auto lifted = apply_F_star<double>(prob.op, prob.F, U);
  {
    const auto GU = apply_G<double>(prob.g, U);
    if (nabla_n(prob.space, std::span<const double>(lifted), std::span<const double>(GU)) <=
        opts.tol) {
      trace.status = IterStatus::Converged;
      return trace;
    }
  }

  int stall_streak = 0;
  std::optional<double> prev_nr;
  for (int step = 1; step <= opts.max_iters; ++step) {
    lifted = apply_F_star<double>(prob.op, prob.F, U);
    std::vector<double> next(n);
    for (int i = 0; i < n; ++i) next[i] = prob.g.section(lifted[i]);
    const auto GU = apply_G<double>(prob.g, U);
    const auto GN = apply_G<double>(prob.g, next);
    const double dr = delta_n(prob.space, std::span<const double>(GN), std::span<const double>(GU));
    const double nr = nabla_n(prob.space, std::span<const double>(GN), std::span<const double>(GU));
    for (double r : {dr, nr})
      if (r > opts.tol && !(prob.phi.eval(r) < r)) trace.phi_violations.push_back({r, prob.phi.eval(r)});
    trace.delta_residuals.push_back(dr);
    trace.nabla_residuals.push_back(nr);
    trace.tuples.push_back(next);
    U = std::move(next);
    if (nr <= opts.tol) {
      trace.status = IterStatus::Converged;
      return trace;
    }
    if (prev_nr && !(nr < *prev_nr)) {
      if (++stall_streak >= opts.stall_window) {
        trace.status = IterStatus::Stalled;
        return trace;
      }
    } else {
      stall_streak = 0;
    }
    prev_nr = nr;
  }
  trace.status = IterStatus::MaxIters;
  return trace;
}

// ---------------------------------------------------------------------------
// gate pipeline

namespace {

template <class Prob>
SolveOutcome<Prob> run_gates(const Prob& prob, const SolveOptions& opts) {
  SolveOutcome<Prob> out;
  out.member_u = is_member_U(prob.op, prob.part);
  if (!out.member_u.in_U) {
    out.failed_gate = Gate::MemberU;
    return out;
  }
  out.monotone = check_mixed_monotone(prob);
  if (!out.monotone->holds) {
    out.failed_gate = Gate::MixedMonotone;
    return out;
  }
  out.contraction = check_contraction(prob);
  if (!out.contraction->holds) {
    out.failed_gate = Gate::Contraction;
    return out;
  }
  out.initial = find_initial(prob);
  if (!out.initial) {
    out.failed_gate = Gate::InitialPoint;
    return out;
  }
  out.trace = iterate(prob, out.initial->tuple, opts);
  out.converged = out.trace->status == IterStatus::Converged;
  if (out.converged) {
    const auto& ts = out.trace->tuples;
    if constexpr (Prob::is_finite) {
      // The previous tuple satisfies the coincidence system exactly.
      out.answer = ts.size() >= 2 ? ts[ts.size() - 2] : ts.front();
    } else {
      out.answer = ts.back();
    }
  }
  return out;
}

}  // namespace

SolveOutcome<FiniteProblem> solve(const FiniteProblem& prob, const SolveOptions& opts) {
  return run_gates(prob, opts);
}

SolveOutcome<RealProblem> solve(const RealProblem& prob, const SolveOptions& opts) {
  return run_gates(prob, opts);
}

// ---------------------------------------------------------------------------
// uniqueness hypotheses

UniquenessReport check_uniqueness_hypothesis(const FiniteProblem& prob) {
  const int n = prob.op.n(), m = prob.space.size();
  const long long tuples = checked_count(m, n, "uniqueness scan");
  if (static_cast<double>(tuples) * tuples * tuples > static_cast<double>(kEnumCap))
    throw SizeLimit("uniqueness scan needs (m^n)^3 comparisons beyond the cap", tuples, kEnumCap);
  UniquenessReport rep;

  std::vector<std::vector<int>> gimages;
  gimages.reserve(tuples);
  std::vector<int> U(n, 0);
  do {
    gimages.push_back(apply_G<int>(prob.g, U));
  } while (next_tuple(U, m));
  rep.bridge_candidates = static_cast<long long>(gimages.size());

  auto comp = [&](const std::vector<int>& a, const std::vector<int>& b) {
    return comparable(prob.space, prob.part, std::span<const int>(a), std::span<const int>(b));
  };
  rep.directed = true;
  for (size_t a = 0; a < gimages.size() && rep.directed; ++a) {
    for (size_t b = a + 1; b < gimages.size() && rep.directed; ++b) {
      bool bridged = false;
      for (size_t w = 0; w < gimages.size() && !bridged; ++w)
        bridged = comp(gimages[w], gimages[a]) && comp(gimages[w], gimages[b]);
      if (!bridged) {
        rep.directed = false;
        // Recover the witness tuples from their flat positions.
        auto tuple_at = [&](size_t flat) {
          std::vector<int> t(n);
          for (int j = n - 1; j >= 0; --j) {
            t[j] = static_cast<int>(flat % m);
            flat /= m;
          }
          return t;
        };
        rep.undirected_witness = {tuple_at(a), tuple_at(b)};
      }
    }
  }

  rep.g_one_one = true;
  for (int x = 0; x < m && rep.g_one_one; ++x)
    for (int y = x + 1; y < m; ++y)
      if (prob.g(x) == prob.g(y)) {
        rep.g_one_one = false;
        rep.g_collision = {x, y};
        break;
      }

  auto weak = check_weak_star_compat(prob.space, prob.F, prob.g, prob.op);
  rep.weak_star_compatible = weak.holds;
  rep.weak_compat_witness = weak.witness;
  return rep;
}

}  // namespace ntfp
