#include "ntfp/index_algebra.hpp"

#include <algorithm>
#include <set>

namespace ntfp {

namespace {

void require_n(int n) {
  if (n < 2) throw BadArity("index arity must be at least 2, got " + std::to_string(n));
}

std::vector<std::vector<int>> make_rows(int n) {
  return std::vector<std::vector<int>>(n, std::vector<int>(n, 0));
}

}  // namespace

BinaryOp::BinaryOp(int n, std::vector<std::vector<int>> rows) : n_(n), rows_(std::move(rows)) {
  require_n(n);
  if (static_cast<int>(rows_.size()) != n)
    throw ShapeMismatch("expected " + std::to_string(n) + " rows, got " + std::to_string(rows_.size()));
  for (int i = 1; i <= n; ++i) {
    if (static_cast<int>(rows_[i - 1].size()) != n)
      throw ShapeMismatch("row " + std::to_string(i) + " has " +
                          std::to_string(rows_[i - 1].size()) + " entries, expected " + std::to_string(n));
    for (int k = 1; k <= n; ++k) {
      int v = rows_[i - 1][k - 1];
      if (v < 1 || v > n)
        throw OutOfRangeEntry("entry (" + std::to_string(i) + "," + std::to_string(k) + ") = " +
                                  std::to_string(v) + " outside 1.." + std::to_string(n),
                              i, k, v);
    }
  }
}

BinaryOp BinaryOp::forward_cyclic(int n) {
  require_n(n);
  auto rows = make_rows(n);
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) rows[i - 1][k - 1] = k <= n - i + 1 ? i + k - 1 : i + k - n - 1;
  return BinaryOp(n, std::move(rows));
}

BinaryOp BinaryOp::backward_cyclic(int n) {
  require_n(n);
  auto rows = make_rows(n);
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) rows[i - 1][k - 1] = k <= i ? i - k + 1 : n + i - k + 1;
  return BinaryOp(n, std::move(rows));
}

BinaryOp BinaryOp::skew_1(int n) {
  require_n(n);
  auto rows = make_rows(n);
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) rows[i - 1][k - 1] = k <= i ? i - k + 1 : k - i + 1;
  return BinaryOp(n, std::move(rows));
}

BinaryOp BinaryOp::skew_n(int n) {
  require_n(n);
  auto rows = make_rows(n);
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) rows[i - 1][k - 1] = k <= n - i + 1 ? i + k - 1 : 2 * n - i - k + 1;
  return BinaryOp(n, std::move(rows));
}

BinaryOp BinaryOp::berzig_samet(int n, int p, const std::vector<std::vector<int>>& phis,
                                const std::vector<std::vector<int>>& psis) {
  require_n(n);
  if (p < 1 || p >= n)
    throw DomainViolation("split point p = " + std::to_string(p) + " must satisfy 1 <= p < n = " +
                          std::to_string(n));
  if (static_cast<int>(phis.size()) != n || static_cast<int>(psis.size()) != n)
    throw ShapeMismatch("need n = " + std::to_string(n) + " phi maps and n psi maps");

  auto expect = [](int i, const char* which, int got, int want) {
    if (got != want)
      throw ShapeMismatch(std::string(which) + "_" + std::to_string(i) + " has " +
                          std::to_string(got) + " values, expected " + std::to_string(want));
  };
  auto check_range = [&](int i, const char* which, int k, int v, int lo, int hi) {
    if (v < lo || v > hi)
      throw DomainViolation(std::string(which) + "_" + std::to_string(i) + "(" + std::to_string(k) +
                            ") = " + std::to_string(v) + " must lie in {" + std::to_string(lo) +
                            ".." + std::to_string(hi) + "}");
  };

  auto rows = make_rows(n);
  for (int i = 1; i <= n; ++i) {
    const auto& phi = phis[i - 1];
    const auto& psi = psis[i - 1];
    expect(i, "phi", static_cast<int>(phi.size()), p);
    expect(i, "psi", static_cast<int>(psi.size()), n - p);
    // First block maps {1..p}, second maps {p+1..n}; i <= p keeps each block
    // on its own side, i > p sends each block to the other side.
    const int phi_lo = i <= p ? 1 : p + 1, phi_hi = i <= p ? p : n;
    const int psi_lo = i <= p ? p + 1 : 1, psi_hi = i <= p ? n : p;
    for (int k = 1; k <= p; ++k) {
      check_range(i, "phi", k, phi[k - 1], phi_lo, phi_hi);
      rows[i - 1][k - 1] = phi[k - 1];
    }
    for (int k = p + 1; k <= n; ++k) {
      check_range(i, "psi", k, psi[k - p - 1], psi_lo, psi_hi);
      rows[i - 1][k - 1] = psi[k - p - 1];
    }
  }
  return BinaryOp(n, std::move(rows));
}

Partition::Partition(int n, std::vector<int> A, std::vector<int> B)
    : n_(n), A_(std::move(A)), B_(std::move(B)) {
  require_n(n);
  if (A_.empty() || B_.empty()) throw DomainViolation("both partition parts must be nonempty");
  std::sort(A_.begin(), A_.end());
  std::sort(B_.begin(), B_.end());
  in_A_.assign(n, 0);
  std::vector<char> seen(n, 0);
  auto take = [&](const std::vector<int>& part, bool isA) {
    for (int i : part) {
      if (i < 1 || i > n)
        throw OutOfRangeEntry("partition index " + std::to_string(i) + " outside 1.." + std::to_string(n),
                              i, 0, i);
      if (seen[i - 1]) throw DomainViolation("partition parts overlap at index " + std::to_string(i));
      seen[i - 1] = 1;
      if (isA) in_A_[i - 1] = 1;
    }
  };
  take(A_, true);
  take(B_, false);
  for (int i = 1; i <= n; ++i)
    if (!seen[i - 1]) throw DomainViolation("partition misses index " + std::to_string(i));
}

Partition Partition::odd_even(int n) {
  std::vector<int> A, B;
  for (int i = 1; i <= n; ++i) (i % 2 ? A : B).push_back(i);
  return Partition(n, std::move(A), std::move(B));
}

MembershipVerdict is_member_U(const BinaryOp& op, const Partition& part) {
  if (op.n() != part.n())
    throw DimensionMismatch("op has n = " + std::to_string(op.n()) + " but partition has n = " +
                            std::to_string(part.n()));
  MembershipVerdict verdict;
  for (int i = 1; i <= op.n(); ++i) {
    for (int k = 1; k <= op.n(); ++k) {
      const int v = op.at(i, k);
      const bool iA = part.in_A(i), kA = part.in_A(k), vA = part.in_A(v);
      // Result must land in A when both arguments come from the same part,
      // in B when they come from different parts.
      const bool want_A = iA == kA;
      if (vA == want_A) continue;
      UCondition cond = iA ? (kA ? UCondition::AAtoA : UCondition::ABtoB)
                           : (kA ? UCondition::BAtoB : UCondition::BBtoA);
      verdict.violations.push_back({i, k, v, cond});
    }
  }
  verdict.in_U = verdict.violations.empty();
  return verdict;
}

PermutedVerdict is_permuted(const BinaryOp& op) {
  for (int i = 1; i <= op.n(); ++i) {
    std::vector<char> hit(op.n(), 0);
    for (int v : op.row(i)) hit[v - 1] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return {false, i};
  }
  return {true, std::nullopt};
}

UpsilonTuple::UpsilonTuple(int n, std::vector<std::vector<int>> sigmas)
    : n_(n), sigmas_(std::move(sigmas)) {
  require_n(n);
  if (static_cast<int>(sigmas_.size()) != n)
    throw ShapeMismatch("expected " + std::to_string(n) + " self-maps, got " +
                        std::to_string(sigmas_.size()));
  for (int i = 1; i <= n; ++i) {
    if (static_cast<int>(sigmas_[i - 1].size()) != n)
      throw ShapeMismatch("sigma_" + std::to_string(i) + " must list " + std::to_string(n) + " values");
    for (int k = 1; k <= n; ++k) {
      int v = sigmas_[i - 1][k - 1];
      if (v < 1 || v > n)
        throw OutOfRangeEntry("sigma_" + std::to_string(i) + "(" + std::to_string(k) + ") = " +
                                  std::to_string(v) + " outside 1.." + std::to_string(n),
                              i, k, v);
    }
  }
}

UpsilonTuple to_upsilon(const BinaryOp& op) { return UpsilonTuple(op.n(), op.rows()); }

BinaryOp from_upsilon(const UpsilonTuple& u) { return BinaryOp(u.n(), u.sigmas()); }

bool upsilon_compatible(const UpsilonTuple& u, const Partition& part) {
  if (u.n() != part.n())
    throw DimensionMismatch("upsilon tuple has n = " + std::to_string(u.n()) +
                            " but partition has n = " + std::to_string(part.n()));
  for (int i = 1; i <= u.n(); ++i) {
    const bool preserve = part.in_A(i);  // i in A: sigma_i keeps parts; i in B: swaps them
    for (int k = 1; k <= u.n(); ++k) {
      const bool kA = part.in_A(k), vA = part.in_A(u.sigma(i, k));
      if (vA != (preserve ? kA : !kA)) return false;
    }
  }
  return true;
}

namespace {

const std::vector<std::string> kPresetNames = {
    "coupled",        "berinde-borcut",      "wu-liu-3",  "berzig-samet-3",
    "karapinar-luong", "wu-liu-4",           "berzig-samet-4",
    "forward-cyclic", "backward-cyclic",     "skew-1",    "skew-n",
    "berzig-samet-general", "upsilon"};

int fixed_arity(const std::string& name, std::optional<int> n, int want) {
  if (n && *n != want)
    throw BadArity("preset '" + name + "' is fixed at n = " + std::to_string(want) + ", got n = " +
                   std::to_string(*n));
  return want;
}

int generic_arity(const std::string& name, std::optional<int> n) {
  if (!n) throw BadArity("preset '" + name + "' needs n");
  require_n(*n);
  return *n;
}

}  // namespace

const std::vector<std::string>& preset_names() { return kPresetNames; }

PresetResult preset(const std::string& name, std::optional<int> n, const PresetParams& extra) {
  if (name == "coupled") {
    fixed_arity(name, n, 2);
    return {BinaryOp::skew_1(2), Partition(2, {1}, {2}), name};
  }
  if (name == "berinde-borcut") {
    fixed_arity(name, n, 3);
    return {BinaryOp::skew_1(3), Partition(3, {1, 3}, {2}), name};
  }
  if (name == "wu-liu-3") {
    fixed_arity(name, n, 3);
    return {BinaryOp::skew_n(3), Partition(3, {1, 3}, {2}), name};
  }
  if (name == "berzig-samet-3") {
    fixed_arity(name, n, 3);
    // n = 3, p = 2 instance of the two-block family.
    return {BinaryOp::berzig_samet(3, 2, {{1, 2}, {2, 1}, {3, 3}}, {{3}, {3}, {2}}),
            Partition(3, {1, 2}, {3}), name};
  }
  if (name == "karapinar-luong") {
    fixed_arity(name, n, 4);
    return {BinaryOp::forward_cyclic(4), Partition::odd_even(4), name};
  }
  if (name == "wu-liu-4") {
    fixed_arity(name, n, 4);
    return {BinaryOp::backward_cyclic(4), Partition::odd_even(4), name};
  }
  if (name == "berzig-samet-4") {
    fixed_arity(name, n, 4);
    return {BinaryOp::berzig_samet(4, 2, {{1, 2}, {1, 2}, {3, 4}, {3, 4}},
                                   {{3, 4}, {4, 3}, {2, 1}, {1, 2}}),
            Partition(4, {1, 2}, {3, 4}), name};
  }
  if (name == "forward-cyclic")
    return {BinaryOp::forward_cyclic(generic_arity(name, n)), Partition::odd_even(*n), name};
  if (name == "backward-cyclic")
    return {BinaryOp::backward_cyclic(generic_arity(name, n)), Partition::odd_even(*n), name};
  if (name == "skew-1")
    return {BinaryOp::skew_1(generic_arity(name, n)), Partition::odd_even(*n), name};
  if (name == "skew-n")
    return {BinaryOp::skew_n(generic_arity(name, n)), Partition::odd_even(*n), name};
  if (name == "berzig-samet-general") {
    int nn = generic_arity(name, n);
    if (!extra.p || !extra.phis || !extra.psis)
      throw DomainViolation("preset 'berzig-samet-general' needs p, phis and psis");
    std::vector<int> A, B;
    for (int i = 1; i <= nn; ++i) (i <= *extra.p ? A : B).push_back(i);
    return {BinaryOp::berzig_samet(nn, *extra.p, *extra.phis, *extra.psis),
            Partition(nn, std::move(A), std::move(B)), name};
  }
  if (name == "upsilon") {
    int nn = generic_arity(name, n);
    if (!extra.sigmas) throw DomainViolation("preset 'upsilon' needs sigmas");
    if (!extra.partition) throw DomainViolation("preset 'upsilon' needs an explicit partition");
    return {from_upsilon(UpsilonTuple(nn, *extra.sigmas)),
            Partition(nn, extra.partition->first, extra.partition->second), name};
  }
  throw UnknownPreset("unknown preset '" + name + "'");
}

}  // namespace ntfp
