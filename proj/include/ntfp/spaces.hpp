#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntfp/errors.hpp"
#include "ntfp/index_algebra.hpp"
#include "ntfp/rational.hpp"

namespace ntfp {

// Finite carrier with an exact-rational metric and an explicit order relation.
// Elements are addressed internally by 0-based index; labels are the external
// identity. The constructor checks shapes only; metric and order axioms are
// the validator's job, so invalid tables can be loaded and then reported.
class FiniteSpace {
 public:
  using point_type = int;
  using dist_type = Rational;

  FiniteSpace(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist,
              const std::vector<std::pair<int, int>>& leq_pairs, bool apply_closure = false);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  int index_of(const std::string& label) const;  // ParseError if unknown
  const std::vector<std::string>& labels() const { return labels_; }

  const Rational& dist(int a, int b) const { return dist_[a * size() + b]; }
  bool leq(int a, int b) const { return leq_[a * size() + b] != 0; }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
  std::vector<Rational> dist_;
  std::vector<char> leq_;
};

struct SpaceViolation {
  enum class Kind {
    SelfDistanceNonZero,   // d(x,x) != 0
    DistinctDistanceZero,  // d(x,y) = 0 for x != y
    NegativeDistance,
    Asymmetric,            // d(x,y) != d(y,x)
    Triangle,              // d(x,z) > d(x,y) + d(y,z)
    NotReflexive,
    NotAntisymmetric,      // x <= y and y <= x for x != y
    NotTransitive,         // x <= y <= z but not x <= z
  };
  Kind kind{};
  std::vector<int> elems;  // the offending indices, in axiom order
  std::string detail;
};

struct SpaceReport {
  bool valid = false;
  std::vector<SpaceViolation> violations;
  std::vector<std::string> notes;
};

// Decision procedure over all element pairs/triples; lists every violation.
// Also records the facts that hold automatically on a finite carrier (every
// monotone convergent sequence is eventually constant, so completeness-style
// hypotheses are vacuous).
SpaceReport validate_space(const FiniteSpace& space);

// The real line, ordered by <= with d(x,y) = |x-y|. The bounds delimit the
// box used for sampling and grid scans, not the carrier itself.
class RealLine {
 public:
  using point_type = double;
  using dist_type = double;

  RealLine(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw DomainViolation("real-line bounds must satisfy lo < hi");
  }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double dist(double a, double b) const { return std::fabs(a - b); }
  bool leq(double a, double b) const { return a <= b; }

 private:
  double lo_, hi_;
};

// Self-map of a finite carrier, stored as its image table.
class FiniteMap {
 public:
  explicit FiniteMap(std::vector<int> image);
  static FiniteMap identity(int m);
  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int x) const { return image_[x]; }
  const std::vector<int>& image() const { return image_; }
  bool is_identity() const;

 private:
  std::vector<int> image_;
};

// Total map X^n -> X as a flat table in row-major order: the first argument
// varies slowest. Totality is enforced by the size check.
class FiniteNMap {
 public:
  FiniteNMap(int n, int m, std::vector<int> table);
  int n() const { return n_; }
  int m() const { return m_; }
  int operator()(std::span<const int> args) const { return table_[flat_index(args)]; }
  const std::vector<int>& table() const { return table_; }
  long long flat_index(std::span<const int> args) const;
  static long long table_size(int n, int m);  // m^n, SizeLimit-guarded

 private:
  int n_, m_;
  std::vector<int> table_;
};

// Advances args through X^n in row-major order; false once exhausted.
bool next_tuple(std::vector<int>& args, int m);

struct CommuteReport {
  bool holds = false;
  long long cases = 0;
  std::optional<std::vector<int>> witness;  // tuple with g(F(U)) != F(g x_1,...)
};

// g(F(x_1..x_n)) = F(g x_1, .., g x_n) for every tuple. Exhaustive.
CommuteReport check_commuting(const FiniteSpace& space, const FiniteNMap& F, const FiniteMap& g);

struct WeakCompatReport {
  bool holds = false;
  long long coincidence_tuples = 0;  // premise count; vacuous truth when 0
  std::optional<std::pair<std::vector<int>, int>> witness;  // (tuple, failing i)
};

// At every tuple satisfying g(x_i) = F(x_{i_1},..,x_{i_n}) for all i, the pair
// must also satisfy g(F(x_{i_1},..)) = F(g x_{i_1},..,g x_{i_n}) for all i.
WeakCompatReport check_weak_star_compat(const FiniteSpace& space, const FiniteNMap& F,
                                        const FiniteMap& g, const BinaryOp& op);

// How a hypothesis flag earned its value.
enum class Provenance { Declared, MachineVerified, VacuousOnFinite, Sampled };

std::string to_string(Provenance p);

struct Assumption {
  bool value = false;
  Provenance prov = Provenance::Declared;
};

// Hypothesis flags a problem instance carries. On a finite carrier the
// order-convergence flags are promoted to vacuous truths and the algebraic
// ones are machine-checked; on the real line they stay as declared.
struct AssumptionSet {
  Assumption o_complete;            // the target subspace is complete for monotone limits
  Assumption F_o_continuous;
  Assumption g_o_continuous;
  Assumption g_mcb;                 // monotone convergent sequences have g-comparable limits
  Assumption mcb;                   // same, without g
  Assumption star_o_compatible;
  Assumption weak_star_compatible;
  Assumption commuting;
  Assumption g_one_one;
  Assumption directed;              // pairwise comparability can be bridged
};

}  // namespace ntfp
