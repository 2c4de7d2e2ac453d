#include "ntfp/oracle.hpp"

#include <algorithm>
#include <set>

#include "ntfp/product_lift.hpp"
#include "ntfp/rng.hpp"

namespace ntfp {

namespace {

long long scan_size_or_refuse(int m, int n, long long cap, const char* what) {
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > (1LL << 62) / m)  // required size not even representable
      throw SizeLimit(std::string(what) + ": m^n exceeds the enumeration cap", -1, cap);
    total *= m;
  }
  if (total > cap)
    throw SizeLimit(std::string(what) + ": m^n exceeds the enumeration cap", total, cap);
  return total;
}

}  // namespace

StarFixedSet enumerate_star_fixed(const FiniteSpace& space, const FiniteNMap& F, const BinaryOp& op,
                                  long long cap) {
  if (F.n() != op.n() || F.m() != space.size())
    throw DimensionMismatch("mapping, op and carrier sizes must agree");
  const int n = op.n(), m = space.size();
  scan_size_or_refuse(m, n, cap, "star-fixed enumeration");
  StarFixedSet out;
  std::vector<int> U(n, 0), s(n);
  do {
    ++out.scanned;
    bool ok = true;
    for (int i = 1; ok && i <= n; ++i) {
      for (int k = 1; k <= n; ++k) s[k - 1] = U[op.at(i, k) - 1];
      ok = F(s) == U[i - 1];
    }
    if (ok) out.tuples.push_back(U);
  } while (next_tuple(U, m));
  return out;
}

CoincidenceSets enumerate_star_coincidence(const FiniteSpace& space, const FiniteNMap& F,
                                           const FiniteMap& g, const BinaryOp& op, long long cap) {
  if (F.n() != op.n() || F.m() != space.size() || g.size() != space.size())
    throw DimensionMismatch("mapping, op and carrier sizes must agree");
  const int n = op.n(), m = space.size();
  scan_size_or_refuse(m, n, cap, "coincidence enumeration");
  CoincidenceSets out;
  std::set<std::vector<int>> images;
  std::vector<int> U(n, 0), s(n);
  do {
    ++out.scanned;
    bool coincide = true, common = true;
    for (int i = 1; coincide && i <= n; ++i) {
      for (int k = 1; k <= n; ++k) s[k - 1] = U[op.at(i, k) - 1];
      const int v = F(s), gx = g(U[i - 1]);
      coincide = v == gx;
      common = common && coincide && gx == U[i - 1];
    }
    if (coincide) {
      out.tuples.push_back(U);
      images.insert(apply_G<int>(g, U));
      if (common) out.common.push_back(U);
    }
  } while (next_tuple(U, m));
  out.images.assign(images.begin(), images.end());
  return out;
}

std::string to_string(TheoremId id) {
  return "T" + std::to_string(static_cast<int>(id) + 1);
}

TheoremId theorem_from_string(const std::string& name) {
  for (int i = 0; i < 9; ++i)
    if (name == "T" + std::to_string(i + 1) || name == std::to_string(i + 1))
      return static_cast<TheoremId>(i);
  throw UnknownTheorem("unknown theorem id '" + name + "' (expected T1..T9)");
}

namespace {

bool needs_compat(TheoremId id) { return id == TheoremId::T1 || id == TheoremId::T2 || id == TheoremId::T3; }
bool range_mode(TheoremId id) {
  return id == TheoremId::T4 || id == TheoremId::T5 || id == TheoremId::T6 || id == TheoremId::T7;
}
bool identity_mode(TheoremId id) { return id == TheoremId::T8 || id == TheoremId::T9; }
bool needs_directed(TheoremId id) {
  return id == TheoremId::T2 || id == TheoremId::T3 || id == TheoremId::T5 || id == TheoremId::T6 ||
         id == TheoremId::T7 || id == TheoremId::T9;
}
bool needs_one_one(TheoremId id) { return id == TheoremId::T3 || id == TheoremId::T6; }

}  // namespace

Certificate certify_theorem(const FiniteProblem& prob, TheoremId id, long long cap) {
  Certificate cert;
  cert.id = id;
  const int m = prob.space.size();
  auto add = [&](const std::string& name, bool value, Provenance prov, const std::string& note = "") {
    cert.hypotheses.push_back({name, value, prov, note});
  };

  auto verdict = is_member_U(prob.op, prob.part);
  add("op-in-U", verdict.in_U, Provenance::MachineVerified,
      verdict.in_U ? "" : std::to_string(verdict.violations.size()) + " violating entries");

  // Range condition. g(X) and E are scanned directly off the tables.
  std::vector<char> in_gX(m, 0);
  for (int x = 0; x < m; ++x) in_gX[prob.g(x)] = 1;
  bool F_in_gX = true, F_in_E = true, E_in_gX = true;
  for (int v : prob.F.table()) {
    F_in_gX = F_in_gX && in_gX[v];
    F_in_E = F_in_E && prob.in_E(v);
  }
  for (int x = 0; x < m; ++x)
    if (prob.in_E(x) && !in_gX[x]) E_in_gX = false;
  if (needs_compat(id))
    add("range: F(X^n) inside g(X) and E", F_in_gX && F_in_E, Provenance::MachineVerified);
  else if (range_mode(id))
    add("range: F(X^n) inside E inside g(X)", F_in_E && E_in_gX, Provenance::MachineVerified);
  else
    add("range: F(X^n) inside E", F_in_E, Provenance::MachineVerified);

  if (identity_mode(id))
    add("g = identity", prob.g.is_identity(), Provenance::MachineVerified);

  auto mono = check_mixed_monotone(prob);
  add("mixed monotonicity", mono.holds, Provenance::MachineVerified,
      std::to_string(mono.cases) + " cases");

  add("order-convergence bundle (completeness, continuity, monotone limits)", true,
      Provenance::VacuousOnFinite, "finite carrier");

  if (needs_compat(id)) {
    // On a finite carrier every convergent sequence is eventually constant, so
    // sequence compatibility collapses to the weak-compatibility identity over
    // coincidence tuples.
    auto weak = check_weak_star_compat(prob.space, prob.F, prob.g, prob.op);
    add("sequence compatibility (finite reduction)", weak.holds, Provenance::MachineVerified,
        std::to_string(weak.coincidence_tuples) + " coincidence tuples examined");
  }
  if (id == TheoremId::T7) {
    auto weak = check_weak_star_compat(prob.space, prob.F, prob.g, prob.op);
    add("weak compatibility", weak.holds, Provenance::MachineVerified);
  }

  auto contraction = check_contraction(prob);
  add("contraction (" + to_string(prob.form) + " form, phi = " + prob.phi.describe() + ")",
      contraction.holds, Provenance::MachineVerified,
      std::to_string(contraction.cases) + " comparable pairs");

  auto init = find_initial(prob);
  add("initial point", init.has_value(), Provenance::MachineVerified,
      init ? "orientation " + to_string(init->orientation) : "no admissible start found");

  // The records so far are the core machinery: if any of them is refuted the
  // statement does not apply and no claim is made, failure report included.
  // The uniqueness add-ons below merely narrow the conclusion, so their
  // failure stays a reportable hypothesis miss.
  for (const HypothesisRecord& h : cert.hypotheses)
    if (!h.value)
      throw HypothesesNotMachineVerified("hypothesis '" + h.name +
                                         "' is machine-refuted; no claim made");

  if (needs_directed(id) || needs_one_one(id)) {
    auto uniq = check_uniqueness_hypothesis(prob);
    if (needs_directed(id))
      add("directed G-images", uniq.directed, Provenance::MachineVerified,
          std::to_string(uniq.bridge_candidates) + " bridge candidates");
    if (needs_one_one(id)) add("g one-one", uniq.g_one_one, Provenance::MachineVerified);
  }

  cert.hypotheses_hold = std::all_of(cert.hypotheses.begin(), cert.hypotheses.end(),
                                     [](const HypothesisRecord& h) { return h.value; });

  cert.sets = enumerate_star_coincidence(prob.space, prob.F, prob.g, prob.op, cap);
  const auto& sets = cert.sets;
  auto pick_two = [&](const std::vector<std::vector<int>>& v) {
    if (v.size() >= 2) cert.counterexample = {v[0], v[1]};
  };
  switch (id) {
    case TheoremId::T1:
    case TheoremId::T4:
      cert.conclusion_text = "a coincidence tuple exists";
      cert.conclusion_holds = !sets.tuples.empty();
      break;
    case TheoremId::T2:
      cert.conclusion_text = "unique point of coincidence and unique common fixed tuple";
      cert.conclusion_holds = sets.images.size() == 1 && sets.common.size() == 1;
      if (sets.images.size() > 1) pick_two(sets.images);
      else if (sets.common.size() > 1) pick_two(sets.common);
      break;
    case TheoremId::T3:
      cert.conclusion_text = "unique coincidence tuple, point of coincidence and common fixed tuple";
      cert.conclusion_holds =
          sets.tuples.size() == 1 && sets.images.size() == 1 && sets.common.size() == 1;
      if (sets.tuples.size() > 1) pick_two(sets.tuples);
      break;
    case TheoremId::T5:
      cert.conclusion_text = "unique point of coincidence";
      cert.conclusion_holds = sets.images.size() == 1;
      pick_two(sets.images);
      break;
    case TheoremId::T6:
      cert.conclusion_text = "unique point of coincidence and unique coincidence tuple";
      cert.conclusion_holds = sets.images.size() == 1 && sets.tuples.size() == 1;
      if (sets.images.size() > 1) pick_two(sets.images);
      else if (sets.tuples.size() > 1) pick_two(sets.tuples);
      break;
    case TheoremId::T7:
      cert.conclusion_text = "unique point of coincidence and unique common fixed tuple";
      cert.conclusion_holds = sets.images.size() == 1 && sets.common.size() == 1;
      if (sets.images.size() > 1) pick_two(sets.images);
      else if (sets.common.size() > 1) pick_two(sets.common);
      break;
    case TheoremId::T8:
      cert.conclusion_text = "a fixed tuple exists";
      cert.conclusion_holds = !sets.tuples.empty();
      break;
    case TheoremId::T9:
      cert.conclusion_text = "unique fixed tuple";
      cert.conclusion_holds = sets.tuples.size() == 1;
      pick_two(sets.tuples);
      break;
  }
  cert.certified = cert.hypotheses_hold && cert.conclusion_holds;
  return cert;
}

// ---------------------------------------------------------------------------
// randomized law suite

namespace {

std::string tuple_str(const FiniteSpace& s, const std::vector<int>& U) {
  std::string out = "(";
  for (size_t j = 0; j < U.size(); ++j) out += (j ? "," : "") + s.label(U[j]);
  return out + ")";
}

struct SuiteSpace {
  FiniteSpace space;
  bool chain = false;
};

SuiteSpace random_space(Rng& rng, int max_size) {
  const int s = max_size <= 1 ? 1 : max_size == 2 ? 2 : 2 + rng.below(max_size - 1);
  std::vector<std::string> labels(s);
  for (int i = 0; i < s; ++i) labels[i] = "e" + std::to_string(i + 1);
  const int kind = rng.below(3);  // 0: chain, 1: random order, 2: antichain
  std::vector<std::vector<Rational>> dist(s, std::vector<Rational>(s, Rational(0)));
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      // Chains get the line metric; otherwise 1 + k/4 keeps every triangle
      // inequality automatic while varying the values.
      Rational d = kind == 0 ? Rational(j - i) : Rational(4 + rng.below(5), 4);
      dist[i][j] = dist[j][i] = d;
    }
  std::vector<std::pair<int, int>> pairs;
  if (kind == 0) {
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j) pairs.push_back({i, j});
  } else if (kind == 1) {
    std::vector<int> rank(s);
    for (int i = 0; i < s; ++i) rank[i] = i;
    for (int i = s - 1; i > 0; --i) std::swap(rank[i], rank[rng.below(i + 1)]);
    for (int u = 0; u < s; ++u)
      for (int v = 0; v < s; ++v)
        if (rank[u] < rank[v] && rng.coin()) pairs.push_back({u, v});
  }
  return {FiniteSpace(std::move(labels), std::move(dist), pairs, true), kind == 0};
}

BinaryOp random_op(Rng& rng, int n) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (auto& row : rows)
    for (int& v : row) v = 1 + rng.below(n);
  return BinaryOp(n, std::move(rows));
}

BinaryOp random_op_in_U(Rng& rng, const Partition& part) {
  const int n = part.n();
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) {
      const auto& target = part.in_A(i) == part.in_A(k) ? part.A() : part.B();
      rows[i - 1][k - 1] = target[rng.below(static_cast<int>(target.size()))];
    }
  return BinaryOp(n, std::move(rows));
}

BinaryOp random_permuted_op(Rng& rng, int n) {
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (auto& row : rows) {
    for (int k = 0; k < n; ++k) row[k] = k + 1;
    for (int k = n - 1; k > 0; --k) std::swap(row[k], row[rng.below(k + 1)]);
  }
  return BinaryOp(n, std::move(rows));
}

Partition random_partition(Rng& rng, int n) {
  const int mask = 1 + rng.below((1 << n) - 2);  // both parts nonempty
  std::vector<int> A, B;
  for (int i = 1; i <= n; ++i) ((mask >> (i - 1)) & 1 ? A : B).push_back(i);
  return Partition(n, std::move(A), std::move(B));
}

FiniteMap random_map(Rng& rng, int m) {
  std::vector<int> image(m);
  for (int& v : image) v = rng.below(m);
  return FiniteMap(std::move(image));
}

FiniteNMap random_nmap(Rng& rng, int n, int m) {
  std::vector<int> table(static_cast<size_t>(FiniteNMap::table_size(n, m)));
  for (int& v : table) v = rng.below(m);
  return FiniteNMap(n, m, std::move(table));
}

// On a chain carrier (order = index order) this is mixed g-monotone by
// construction: each slot contributes +-a_k * g-rank with the sign fixed by
// the slot's part, then the total is clamped into the carrier.
FiniteNMap monotone_nmap(Rng& rng, int n, int m, const Partition& part, const FiniteMap& g) {
  std::vector<int> coeff(n);
  for (int& c : coeff) c = rng.below(2);
  const int base = rng.below(2 * n * m + 1) - n * m;
  std::vector<int> table(static_cast<size_t>(FiniteNMap::table_size(n, m)));
  std::vector<int> U(n, 0);
  size_t idx = 0;
  do {
    int val = base;
    for (int k = 1; k <= n; ++k) val += (part.in_A(k) ? 1 : -1) * coeff[k - 1] * g(U[k - 1]);
    table[idx++] = std::clamp(val, 0, m - 1);
  } while (next_tuple(U, m));
  return FiniteNMap(n, m, std::move(table));
}

struct LawTally {
  std::vector<LawResult> laws;

  LawResult& operator[](const std::string& name) {
    for (auto& l : laws)
      if (l.name == name) return l;
    laws.push_back({name, 0, 0, {}});
    return laws.back();
  }

  void hit(const std::string& name, bool ok, const std::string& detail = "") {
    auto& l = (*this)[name];
    ++l.cases;
    if (!ok) {
      ++l.violations;
      if (l.samples.size() < 4) l.samples.push_back(detail);
    }
  }
};

std::vector<int> random_tuple(Rng& rng, int n, int m) {
  std::vector<int> U(n);
  for (int& x : U) x = rng.below(m);
  return U;
}

// V with G(U) [= G(V): each coordinate moves up the order on A slots and down
// on B slots (staying put always qualifies, the order being reflexive).
std::vector<int> dominating_tuple(Rng& rng, const FiniteSpace& space, const FiniteMap& g,
                                  const Partition& part, const std::vector<int>& U) {
  const int m = space.size();
  std::vector<int> V(U.size());
  for (int i = 1; i <= part.n(); ++i) {
    std::vector<int> candidates;
    for (int y = 0; y < m; ++y) {
      const bool ok = part.in_A(i) ? space.leq(g(U[i - 1]), g(y)) : space.leq(g(y), g(U[i - 1]));
      if (ok) candidates.push_back(y);
    }
    V[i - 1] = candidates[rng.below(static_cast<int>(candidates.size()))];
  }
  return V;
}

}  // namespace

LemmaSuiteReport lemma_suite(const LemmaSuiteConfig& config) {
  LemmaSuiteReport report;
  report.config = config;
  Rng rng(config.seed);
  LawTally tally;
  // Fixed registration order keeps reports byte-stable.
  for (const char* name :
       {"selector_roundtrip", "membership_matches_selector_form", "permuted_iff_rows_cover",
        "slice_image_commutes_with_g", "average_max_bracket", "coincidence_set_transport",
        "slice_order_preservation", "lifted_map_monotone", "row_average_equality",
        "row_max_equality", "row_max_bound", "coordinatewise_convergence",
        "coordinatewise_monotone", "image_coincidence_promotion", "commuting_implies_weak_compat"})
    tally[name];

  if (config.max_size < 2)
    report.warnings.push_back("degenerate bound: carrier size < 2 makes most laws vacuous");
  if (config.min_n < 2 || config.max_n < config.min_n)
    throw DomainViolation("law suite needs 2 <= min_n <= max_n");

  for (int n = config.min_n; n <= config.max_n; ++n) {
    // --- classification laws ---------------------------------------------
    auto classify = [&](const BinaryOp& op) {
      bool round = from_upsilon(to_upsilon(op)) == op;
      tally.hit("selector_roundtrip", round, "n=" + std::to_string(n));
      // Manual permutedness oracle: sorted row must be exactly 1..n.
      bool manual = true;
      for (int i = 1; i <= n && manual; ++i) {
        auto row = op.row(i);
        std::sort(row.begin(), row.end());
        for (int k = 0; k < n; ++k) manual = manual && row[k] == k + 1;
      }
      tally.hit("permuted_iff_rows_cover", is_permuted(op).permuted == manual,
                "n=" + std::to_string(n));
    };
    auto prop3 = [&](const BinaryOp& op, const Partition& part) {
      const bool lhs = is_member_U(op, part).in_U;
      const bool rhs = upsilon_compatible(to_upsilon(op), part);
      tally.hit("membership_matches_selector_form", lhs == rhs, "n=" + std::to_string(n));
    };

    if (n == 2) {
      // All 16 ops on {1,2}, against both ordered partitions.
      for (int bits = 0; bits < 16; ++bits) {
        std::vector<std::vector<int>> rows = {{1 + (bits & 1), 1 + ((bits >> 1) & 1)},
                                              {1 + ((bits >> 2) & 1), 1 + ((bits >> 3) & 1)}};
        BinaryOp op(2, rows);
        classify(op);
        prop3(op, Partition(2, {1}, {2}));
        prop3(op, Partition(2, {2}, {1}));
      }
    } else {
      for (long long s = 0; s < config.op_samples; ++s) {
        BinaryOp op = random_op(rng, n);
        classify(op);
        if (s % 5 == 0) prop3(op, random_partition(rng, n));
      }
      // Constructed members of U must classify as members through both forms.
      for (int s = 0; s < 200; ++s) {
        Partition part = random_partition(rng, n);
        BinaryOp op = random_op_in_U(rng, part);
        tally.hit("membership_matches_selector_form",
                  is_member_U(op, part).in_U && upsilon_compatible(to_upsilon(op), part),
                  "constructed member, n=" + std::to_string(n));
      }
    }

    // --- randomized instance laws ----------------------------------------
    for (int trial = 0; trial < config.trials; ++trial) {
      SuiteSpace ss = random_space(rng, config.max_size);
      const FiniteSpace& space = ss.space;
      const int m = space.size();
      Partition part = random_partition(rng, n);
      BinaryOp opU = random_op_in_U(rng, part);
      BinaryOp opAny = random_op(rng, n);
      BinaryOp opPerm = random_permuted_op(rng, n);
      FiniteMap g = random_map(rng, m);
      FiniteNMap F = random_nmap(rng, n, m);

      // Transport of the coincidence notions through the lifted pair.
      {
        std::vector<int> U(n, 0), s(n);
        do {
          bool per_eq_coincide = true, per_eq_fixed = true;
          for (int i = 1; i <= n; ++i) {
            for (int k = 1; k <= n; ++k) s[k - 1] = U[opAny.at(i, k) - 1];
            per_eq_coincide = per_eq_coincide && F(s) == g(U[i - 1]);
            per_eq_fixed = per_eq_fixed && F(s) == U[i - 1];
          }
          auto lifted = apply_F_star<int>(opAny, F, U);
          auto GU = apply_G<int>(g, U);
          tally.hit("coincidence_set_transport", per_eq_coincide == (lifted == GU),
                    tuple_str(space, U));
          tally.hit("coincidence_set_transport", per_eq_fixed == (lifted == U),
                    tuple_str(space, U));
          tally.hit("coincidence_set_transport",
                    (per_eq_coincide && per_eq_fixed) == (lifted == GU && GU == U),
                    tuple_str(space, U));
        } while (next_tuple(U, m));
      }

      // Slice/aggregate identities on random tuples.
      for (int rep = 0; rep < 12; ++rep) {
        auto U = random_tuple(rng, n, m);
        auto V = random_tuple(rng, n, m);
        auto GU = apply_G<int>(g, U);
        for (int i = 1; i <= n; ++i) {
          auto a = slice(opAny, i, std::span<const int>(GU));
          auto sliced = slice(opAny, i, std::span<const int>(U));
          auto b = apply_G<int>(g, sliced);
          tally.hit("slice_image_commutes_with_g", a == b,
                    "i=" + std::to_string(i) + " " + tuple_str(space, U));
        }
        const Rational d = delta_n(space, std::span<const int>(U), std::span<const int>(V));
        const Rational nb = nabla_n(space, std::span<const int>(U), std::span<const int>(V));
        tally.hit("average_max_bracket", nb / Rational(n) <= d && d <= nb,
                  tuple_str(space, U) + " vs " + tuple_str(space, V));
      }

      // Order preservation of slices under members of U.
      for (int rep = 0; rep < 10; ++rep) {
        auto U = random_tuple(rng, n, m);
        auto V = dominating_tuple(rng, space, g, part, U);
        auto slice_report = lemma4_check(space, g, opU, part, std::span<const int>(U),
                                         std::span<const int>(V));
        tally.hit("slice_order_preservation", slice_report.holds,
                  tuple_str(space, U) + " [= " + tuple_str(space, V));
      }

      // Monotone lifted maps on chains (mixed monotone by construction).
      if (ss.chain) {
        FiniteNMap Fm = monotone_nmap(rng, n, m, part, g);
        FiniteProblem probe{space, Fm, g, opU, part};
        auto mono = check_mixed_monotone(probe);
        tally.hit("lifted_map_monotone", mono.holds, "generator premise");
        if (mono.holds) {
          for (int rep = 0; rep < 10; ++rep) {
            auto U = random_tuple(rng, n, m);
            auto V = dominating_tuple(rng, space, g, part, U);
            auto FU = apply_F_star<int>(opU, Fm, U);
            auto FV = apply_F_star<int>(opU, Fm, V);
            tally.hit("lifted_map_monotone",
                      product_leq(space, part, std::span<const int>(FU), std::span<const int>(FV)),
                      tuple_str(space, U) + " [= " + tuple_str(space, V));
          }
        }
      }

      // Row aggregation laws.
      for (int rep = 0; rep < 8; ++rep) {
        auto U = random_tuple(rng, n, m);
        auto V = random_tuple(rng, n, m);
        auto rp = lemma6_check(space, g, opPerm, std::span<const int>(U), std::span<const int>(V));
        tally.hit("row_average_equality", rp.avg_mismatch.empty(),
                  tuple_str(space, U) + " vs " + tuple_str(space, V));
        tally.hit("row_max_equality", rp.max_mismatch.empty(),
                  tuple_str(space, U) + " vs " + tuple_str(space, V));
        tally.hit("row_max_bound", rp.max_exceeds.empty(), "permuted op");
        auto ra = lemma6_check(space, g, opAny, std::span<const int>(U), std::span<const int>(V));
        tally.hit("row_max_bound", ra.max_exceeds.empty(), "arbitrary op");
      }

      // Convergence transfer: all three notions agree on eventually-constant
      // tails and all three fail on an oscillating coordinate.
      for (int rep = 0; rep < 4 && m >= 2; ++rep) {
        auto target = random_tuple(rng, n, m);
        // Constant tail: residuals against the target vanish; coordinates match.
        tally.hit("coordinatewise_convergence",
                  delta_n(space, std::span<const int>(target), std::span<const int>(target)) ==
                          Rational(0) &&
                      nabla_n(space, std::span<const int>(target), std::span<const int>(target)) ==
                          Rational(0),
                  "constant tail");
        // Oscillating coordinate: pick j and b != target[j]; the tail then
        // alternates between target and the perturbed tuple.
        const int j = rng.below(n);
        const int b = (target[j] + 1 + rng.below(m - 1)) % m;
        auto other = target;
        other[j] = b;
        const Rational dd = delta_n(space, std::span<const int>(other), std::span<const int>(target));
        const Rational nn = nabla_n(space, std::span<const int>(other), std::span<const int>(target));
        const bool coord_diverges = other[j] != target[j];
        tally.hit("coordinatewise_convergence",
                  coord_diverges == (dd > Rational(0)) && coord_diverges == (nn > Rational(0)),
                  "oscillating tail at slot " + std::to_string(j + 1));
      }

      // Monotone product walks have monotone coordinates, twisted by part.
      for (int rep = 0; rep < 4; ++rep) {
        auto U = random_tuple(rng, n, m);
        std::vector<std::vector<int>> walk = {U};
        for (int step = 0; step < 3; ++step)
          walk.push_back(dominating_tuple(rng, space, FiniteMap::identity(m), part, walk.back()));
        for (size_t w = 1; w < walk.size(); ++w) {
          tally.hit("coordinatewise_monotone",
                    product_leq(space, part, std::span<const int>(walk[w - 1]),
                                std::span<const int>(walk[w])),
                    "walk step " + std::to_string(w));
          for (int i = 1; i <= n; ++i) {
            const bool ok = part.in_A(i) ? space.leq(walk[w - 1][i - 1], walk[w][i - 1])
                                         : space.leq(walk[w][i - 1], walk[w - 1][i - 1]);
            tally.hit("coordinatewise_monotone", ok, "slot " + std::to_string(i));
          }
        }
      }

      // Promotion of coincidence images under weak compatibility, plus the
      // commuting => weakly compatible implication. Three (F, g) variants:
      // fully random, identity g, constant F with a fixed point of g.
      for (int variant = 0; variant < 3; ++variant) {
        FiniteNMap Fv = F;
        FiniteMap gv = g;
        if (variant == 1) {
          gv = FiniteMap::identity(m);
        } else if (variant == 2) {
          const int c = rng.below(m);
          std::vector<int> table(static_cast<size_t>(FiniteNMap::table_size(n, m)), c);
          Fv = FiniteNMap(n, m, std::move(table));
          auto image = gv.image();
          image[c] = c;
          gv = FiniteMap(std::move(image));
        }
        auto commute = check_commuting(space, Fv, gv);
        auto weak = check_weak_star_compat(space, Fv, gv, opU);
        if (commute.holds)
          tally.hit("commuting_implies_weak_compat", weak.holds, "variant " + std::to_string(variant));
        if (weak.holds) {
          auto sets = enumerate_star_coincidence(space, Fv, gv, opU);
          for (const auto& image : sets.images) {
            bool image_is_coincidence = false;
            for (const auto& t : sets.tuples)
              if (t == image) {
                image_is_coincidence = true;
                break;
              }
            tally.hit("image_coincidence_promotion", image_is_coincidence,
                      tuple_str(space, image));
          }
        }
      }
    }
  }

  report.laws = tally.laws;
  for (const auto& l : report.laws) report.total_cases += l.cases;
  report.all_hold = std::all_of(report.laws.begin(), report.laws.end(),
                                [](const LawResult& l) { return l.violations == 0; });
  return report;
}

}  // namespace ntfp
