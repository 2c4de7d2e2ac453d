#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ntfp/errors.hpp"

namespace ntfp {

// A binary operation * on the index set I_n = {1..n}, stored as its n x n
// selection matrix: at(i, k) = *(i, k) is which coordinate the k-th argument
// of the i-th equation selects. Indices and entries are 1-based everywhere;
// this is the external convention and the internal one.
class BinaryOp {
 public:
  BinaryOp(int n, std::vector<std::vector<int>> rows);

  // *(i,k) = i+k-1 if k <= n-i+1, else i+k-n-1 (wrap forward).
  static BinaryOp forward_cyclic(int n);
  // *(i,k) = i-k+1 if k <= i, else n+i-k+1 (wrap backward).
  static BinaryOp backward_cyclic(int n);
  // *(i,k) = i-k+1 if k <= i, else k-i+1 (reflect at 1).
  static BinaryOp skew_1(int n);
  // *(i,k) = i+k-1 if k <= n-i+1, else 2n-i-k+1 (reflect at n).
  static BinaryOp skew_n(int n);

  // Row i is (phi_i(1..p), psi_i(p+1..n)). phis[i-1] holds phi_i(1..p) and
  // psis[i-1] holds psi_i(p+1..n). Required ranges:
  //   i <= p: phi_i into {1..p},   psi_i into {p+1..n};
  //   i >  p: phi_i into {p+1..n}, psi_i into {1..p}.
  static BinaryOp berzig_samet(int n, int p,
                               const std::vector<std::vector<int>>& phis,
                               const std::vector<std::vector<int>>& psis);

  int n() const { return n_; }
  int at(int i, int k) const { return rows_[i - 1][k - 1]; }
  const std::vector<int>& row(int i) const { return rows_[i - 1]; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  bool operator==(const BinaryOp&) const = default;

 private:
  int n_;
  std::vector<std::vector<int>> rows_;
};

// Ordered partition (A, B) of {1..n}: both parts nonempty, disjoint, covering.
// The four membership conditions treat A and B asymmetrically, so the pair is
// ordered.
class Partition {
 public:
  Partition(int n, std::vector<int> A, std::vector<int> B);

  // A = odd indices, B = even indices.
  static Partition odd_even(int n);

  int n() const { return n_; }
  const std::vector<int>& A() const { return A_; }
  const std::vector<int>& B() const { return B_; }
  bool in_A(int i) const { return in_A_[i - 1] != 0; }
  bool in_B(int i) const { return !in_A(i); }

  bool operator==(const Partition& o) const {
    return n_ == o.n_ && A_ == o.A_ && B_ == o.B_;
  }

 private:
  int n_;
  std::vector<int> A_, B_;
  std::vector<char> in_A_;
};

// Which of the four closure conditions a violating entry breaks:
//   AAtoA: *(A x A) must land in A      ABtoB: *(A x B) must land in B
//   BAtoB: *(B x A) must land in B      BBtoA: *(B x B) must land in A
enum class UCondition { AAtoA, ABtoB, BAtoB, BBtoA };

struct UViolation {
  int i = 0, k = 0, value = 0;
  UCondition cond{};
  bool operator==(const UViolation&) const = default;
};

struct MembershipVerdict {
  bool in_U = false;
  std::vector<UViolation> violations;  // all of them, row-major order
};

// Checks the four closure conditions of the admissible family U for (op, part).
MembershipVerdict is_member_U(const BinaryOp& op, const Partition& part);

struct PermutedVerdict {
  bool permuted = false;
  std::optional<int> first_bad_row;  // 1-based, set iff !permuted
};

// An op is permuted iff every row is a permutation of {1..n}; equivalently
// every row's entry set covers {1..n}.
PermutedVerdict is_permuted(const BinaryOp& op);

// The same data as n self-maps sigma_i of {1..n}: sigma_i(k) = *(i, k).
// Maps need not be injective.
class UpsilonTuple {
 public:
  UpsilonTuple(int n, std::vector<std::vector<int>> sigmas);
  int n() const { return n_; }
  int sigma(int i, int k) const { return sigmas_[i - 1][k - 1]; }
  const std::vector<std::vector<int>>& sigmas() const { return sigmas_; }
  bool operator==(const UpsilonTuple&) const = default;

 private:
  int n_;
  std::vector<std::vector<int>> sigmas_;
};

UpsilonTuple to_upsilon(const BinaryOp& op);
BinaryOp from_upsilon(const UpsilonTuple& u);

// Row-wise compatibility with the partition: sigma_i preserves {A, B} for
// i in A and swaps them for i in B. Equivalent to is_member_U on the matrix.
bool upsilon_compatible(const UpsilonTuple& u, const Partition& part);

// Extra inputs for the parametric presets.
struct PresetParams {
  std::optional<int> p;
  std::optional<std::vector<std::vector<int>>> phis, psis;  // berzig-samet-general
  std::optional<std::vector<std::vector<int>>> sigmas;      // upsilon
  std::optional<std::pair<std::vector<int>, std::vector<int>>> partition;  // upsilon
};

struct PresetResult {
  BinaryOp op;
  Partition part;
  std::string name;  // canonical preset name
};

// Catalog of named operations with their canonical partitions. Fixed-arity
// presets reject a mismatched n with BadArity; the generic families require
// n >= 2. Validity in U is a separate query: e.g. forward-cyclic with odd n
// constructs fine and is_member_U then reports the violations.
PresetResult preset(const std::string& name, std::optional<int> n = {},
                    const PresetParams& extra = {});

const std::vector<std::string>& preset_names();

}  // namespace ntfp
