#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ntfp/contractions.hpp"
#include "ntfp/index_algebra.hpp"
#include "ntfp/product_lift.hpp"
#include "ntfp/spaces.hpp"

namespace ntfp {

// Which hypothesis bundle the instance claims: with a compatibility condition
// (range inside g(X) and the subspace), with the range condition E between
// F's image and g(X), or the g = identity reading.
enum class SolveMode { Compatible, Range, FixedPoint };

// Shape of the contraction inequality on comparable G-images:
//   SumAvg        avg_i d(F(U*_i), F(V*_i)) <= phi(avg_i d(g x_i, g y_i))
//   Max           max_i d(F(U*_i), F(V*_i)) <= phi(max_i d(g x_i, g y_i))
//   PointwiseSum  d(F(U), F(V)) <= phi(avg_i d(g x_i, g y_i))   [op permuted]
//   PointwiseMax  d(F(U), F(V)) <= phi(max_i d(g x_i, g y_i))   [op permuted or phi increasing]
//   WeightedLinear d(F(U), F(V)) <= sum_i w_i d(g x_i, g y_i),  sum w_i < 1
enum class ContractionForm { SumAvg, Max, PointwiseSum, PointwiseMax, WeightedLinear };

std::string to_string(SolveMode m);
std::string to_string(ContractionForm f);
SolveMode solve_mode_from_string(const std::string& name);
ContractionForm contraction_form_from_string(const std::string& name);

// Built-in real-line maps. F is affine in the coordinates or a scaled product;
// both have exactly monotone double evaluations.
struct RealNMap {
  enum class Kind { WeightedSum, Product };
  Kind kind = Kind::WeightedSum;
  int n = 0;
  std::vector<double> coeffs;  // WeightedSum: F(x) = constant + sum coeffs[i] * x[i]
  double constant = 0;
  double scale = 1;            // Product: F(x) = scale * prod_i x[i]
  double operator()(std::span<const double> xs) const;
  std::string describe() const;
};

struct RealSelfMap {
  enum class Kind { Identity, Affine };
  Kind kind = Kind::Identity;
  double a = 1, b = 0;  // Affine: g(x) = a*x + b, a != 0
  double operator()(double x) const { return kind == Kind::Identity ? x : a * x + b; }
  double section(double y) const { return kind == Kind::Identity ? y : (y - b) / a; }
  bool is_identity() const { return kind == Kind::Identity || (a == 1 && b == 0); }
  std::string describe() const;
};

struct FiniteProblem {
  using point_type = int;
  using dist_type = Rational;
  static constexpr bool is_finite = true;

  FiniteSpace space;
  FiniteNMap F;
  FiniteMap g;
  BinaryOp op;
  Partition part;
  ControlFunction phi = ControlFunction::linear(Rational(1, 2));
  ContractionForm form = ContractionForm::SumAvg;
  std::vector<Rational> weights;  // WeightedLinear only
  SolveMode mode = SolveMode::Compatible;
  AssumptionSet assumptions;
  std::optional<std::vector<int>> initial;
  std::vector<char> E;  // target subspace mask; empty means the whole carrier

  bool in_E(int x) const { return E.empty() || E[x] != 0; }
};

struct RealProblem {
  using point_type = double;
  using dist_type = double;
  static constexpr bool is_finite = false;

  RealLine space;
  RealNMap F;
  RealSelfMap g;
  BinaryOp op;
  Partition part;
  ControlFunction phi = ControlFunction::linear(Rational(1, 2));
  ContractionForm form = ContractionForm::SumAvg;
  std::vector<double> weights;
  SolveMode mode = SolveMode::FixedPoint;
  AssumptionSet assumptions;
  std::optional<std::vector<double>> initial;
  long long samples = 10000;   // sampled hypothesis checks: pair budget
  std::uint64_t seed = 1;
};

template <class P>
struct MonotoneViolation {
  int position = 0;  // 1-based argument slot of F
  std::vector<P> lo_args, hi_args;  // complete argument tuples that broke the direction
};

template <class P>
struct MonotoneReport {
  bool holds = false;
  long long cases = 0;  // premise-satisfying combinations examined
  Provenance prov = Provenance::MachineVerified;
  std::vector<MonotoneViolation<P>> violations;  // capped at a handful
};

template <class P, class D>
struct ContractionViolation {
  std::vector<P> U, V;
  D lhs{}, rhs{};
};

template <class P, class D>
struct ContractionReport {
  bool holds = false;
  long long cases = 0;  // comparable pairs examined
  Provenance prov = Provenance::MachineVerified;
  std::vector<ContractionViolation<P, D>> violations;  // capped
};

enum class Orientation { Up, Down };  // Up: G(U0) [= F_*(U0); Down: the reverse

std::string to_string(Orientation o);

template <class P>
struct InitialPoint {
  std::vector<P> tuple;
  Orientation orientation = Orientation::Up;
};

enum class IterStatus { Converged, MaxIters, Stalled, SectionFailed };

std::string to_string(IterStatus s);

template <class P, class D>
struct IterationTrace {
  std::vector<std::vector<P>> tuples;       // U^(0) .. U^(M)
  std::vector<D> delta_residuals;           // length = steps = tuples.size() - 1
  std::vector<D> nabla_residuals;
  IterStatus status = IterStatus::MaxIters;
  std::optional<std::pair<int, P>> section_failure;  // (equation i, value with no g-preimage)
  std::vector<BelowIdentityViolation<D>> phi_violations;  // phi(r) >= r at an observed residual r
  int steps() const { return static_cast<int>(tuples.size()) - 1; }
};

enum class Gate { MemberU, MixedMonotone, Contraction, InitialPoint };

std::string to_string(Gate g);

template <class Prob>
struct SolveOutcome {
  using P = typename Prob::point_type;
  using D = typename Prob::dist_type;

  MembershipVerdict member_u;
  std::optional<MonotoneReport<P>> monotone;
  std::optional<ContractionReport<P, D>> contraction;
  std::optional<InitialPoint<P>> initial;
  std::optional<Gate> failed_gate;  // set iff a gate stopped the run
  std::optional<IterationTrace<P, D>> trace;
  bool converged = false;
  std::vector<P> answer;  // the (approximate) coincidence tuple when converged
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iters = 1000;
  int stall_window = 50;  // consecutive non-decreasing residual steps before giving up
};

// Argumentwise monotonicity of F relative to g-images: position in A means
// g-increasing, position in B means g-decreasing. Exhaustive on the finite
// carrier; seeded sampling on the line (reported as such).
MonotoneReport<int> check_mixed_monotone(const FiniteProblem& prob);
MonotoneReport<double> check_mixed_monotone(const RealProblem& prob);

// The chosen contraction inequality over every (sampled) pair of tuples with
// comparable G-images. Form preconditions enforced via PreconditionUnmet.
ContractionReport<int, Rational> check_contraction(const FiniteProblem& prob);
ContractionReport<double, double> check_contraction(const RealProblem& prob);

// A tuple whose G-image sits below (Up) or above (Down) its F_*-image in the
// twisted product order. The instance's own candidate is tried first, then an
// exhaustive scan (finite) or a coarse grid scan over the sampling box (real).
std::optional<InitialPoint<int>> find_initial(const FiniteProblem& prob);
std::optional<InitialPoint<double>> find_initial(const RealProblem& prob);

// Picard orbit of the lifted map with g-sections: solve g(x^(m+1)_i) = F(U^(m)*_i).
// The g-section picks the smallest-index preimage (finite) or the exact affine
// inverse (real). Stops on exact repetition of G-images (finite) or residual
// <= tol (real). The answer tuple for a converged finite run is the previous
// tuple, which satisfies the coincidence system exactly.
IterationTrace<int, Rational> iterate(const FiniteProblem& prob, std::vector<int> U0,
                                      const SolveOptions& opts = {});
IterationTrace<double, double> iterate(const RealProblem& prob, std::vector<double> U0,
                                       const SolveOptions& opts = {});

// Gate pipeline: membership in U (hard gate), mixed monotonicity, contraction,
// initial point, then the orbit.
SolveOutcome<FiniteProblem> solve(const FiniteProblem& prob, const SolveOptions& opts = {});
SolveOutcome<RealProblem> solve(const RealProblem& prob, const SolveOptions& opts = {});

struct UniquenessReport {
  bool directed = false;  // every pair of G-images admits a comparable bridge
  std::optional<std::pair<std::vector<int>, std::vector<int>>> undirected_witness;
  bool g_one_one = false;
  std::optional<std::pair<int, int>> g_collision;  // two elements with equal g-image
  bool weak_star_compatible = false;
  std::optional<std::pair<std::vector<int>, int>> weak_compat_witness;
  long long bridge_candidates = 0;
  Provenance prov = Provenance::MachineVerified;
};

// The extra hypotheses behind uniqueness conclusions, machine-checked by
// exhaustive enumeration on the finite carrier.
UniquenessReport check_uniqueness_hypothesis(const FiniteProblem& prob);

}  // namespace ntfp
