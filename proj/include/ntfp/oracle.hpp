#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ntfp/solver.hpp"

namespace ntfp {

inline constexpr long long kDefaultOracleCap = 10'000'000;

// Tuples U with F(U*_i) = x_i for every equation i. Exhaustive; refuses with
// SizeLimit when m^n exceeds the cap instead of silently sampling.
struct StarFixedSet {
  std::vector<std::vector<int>> tuples;
  long long scanned = 0;
};
StarFixedSet enumerate_star_fixed(const FiniteSpace& space, const FiniteNMap& F, const BinaryOp& op,
                                  long long cap = kDefaultOracleCap);

// Coincidence structure of the pair (F, g):
//   tuples  : U with F(U*_i) = g(x_i) for all i
//   images  : the distinct G(U) over those tuples (points of coincidence)
//   common  : tuples that additionally satisfy g(x_i) = x_i
struct CoincidenceSets {
  std::vector<std::vector<int>> tuples;
  std::vector<std::vector<int>> images;
  std::vector<std::vector<int>> common;
  long long scanned = 0;
};
CoincidenceSets enumerate_star_coincidence(const FiniteSpace& space, const FiniteNMap& F,
                                           const FiniteMap& g, const BinaryOp& op,
                                           long long cap = kDefaultOracleCap);

enum class TheoremId { T1, T2, T3, T4, T5, T6, T7, T8, T9 };

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& name);

struct HypothesisRecord {
  std::string name;
  bool value = false;
  Provenance prov = Provenance::MachineVerified;
  std::string note;
};

struct Certificate {
  TheoremId id{};
  std::vector<HypothesisRecord> hypotheses;
  bool hypotheses_hold = false;
  std::string conclusion_text;
  bool conclusion_holds = false;
  bool certified = false;  // hypotheses_hold && conclusion_holds
  CoincidenceSets sets;    // the enumeration backing the verdict
  std::vector<std::vector<int>> counterexample;  // two distinct members when uniqueness fails
};

// Machine-checks every hypothesis of the chosen statement on the finite
// instance (order-convergence hypotheses are vacuous on a finite carrier;
// sequence compatibility reduces to the weak compatibility identity) and
// confronts the claimed conclusion with the enumerated ground truth.
Certificate certify_theorem(const FiniteProblem& prob, TheoremId id,
                            long long cap = kDefaultOracleCap);

struct LawResult {
  std::string name;
  long long cases = 0;
  long long violations = 0;
  std::vector<std::string> samples;  // first few violation descriptions
};

struct LemmaSuiteConfig {
  int min_n = 2;
  int max_n = 3;
  int max_size = 4;        // carrier size bound for randomized instances
  int trials = 200;        // randomized instances per n
  long long op_samples = 10000;  // classification-law samples for n > 2
  std::uint64_t seed = 7;
};

struct LemmaSuiteReport {
  LemmaSuiteConfig config;
  std::vector<LawResult> laws;
  long long total_cases = 0;
  bool all_hold = false;
  std::vector<std::string> warnings;
};

// Randomized checks of the transport identities, order-preservation,
// aggregation laws, classification equivalences, convergence transfer, and
// the promotion of coincidence images under weak compatibility. Exhaustive
// over all index ops at n = 2; seeded sampling above that. Deterministic for
// a fixed config.
LemmaSuiteReport lemma_suite(const LemmaSuiteConfig& config = {});

}  // namespace ntfp
