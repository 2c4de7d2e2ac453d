#pragma once

#include <span>
#include <vector>

#include "ntfp/errors.hpp"
#include "ntfp/index_algebra.hpp"

namespace ntfp {

namespace detail {
inline void require_tuple_size(int n, size_t got, const char* what) {
  if (static_cast<size_t>(n) != got)
    throw DimensionMismatch(std::string(what) + ": tuple has " + std::to_string(got) +
                            " coordinates, expected " + std::to_string(n));
}
}  // namespace detail

// The i-th argument slice U*_i = (x_{i_1}, .., x_{i_n}).
template <class P>
std::vector<P> slice(const BinaryOp& op, int i, std::span<const P> U) {
  detail::require_tuple_size(op.n(), U.size(), "slice");
  std::vector<P> out;
  out.reserve(op.n());
  for (int k = 1; k <= op.n(); ++k) out.push_back(U[op.at(i, k) - 1]);
  return out;
}

// Lifted map F_*(U) = (F(U*_1), .., F(U*_n)).
template <class P, class Fn>
std::vector<P> apply_F_star(const BinaryOp& op, Fn&& F, std::span<const P> U) {
  detail::require_tuple_size(op.n(), U.size(), "apply_F_star");
  std::vector<P> out;
  out.reserve(op.n());
  for (int i = 1; i <= op.n(); ++i) out.push_back(F(std::span<const P>(slice(op, i, U))));
  return out;
}

// Coordinatewise image G(U) = (g x_1, .., g x_n).
template <class P, class Gn>
std::vector<P> apply_G(Gn&& g, std::span<const P> U) {
  std::vector<P> out;
  out.reserve(U.size());
  for (const P& x : U) out.push_back(g(x));
  return out;
}

// Average product metric (1/n) * sum_i d(x_i, y_i).
template <class S, class P = typename S::point_type>
typename S::dist_type delta_n(const S& space, std::span<const P> U, std::span<const P> V) {
  if (U.size() != V.size() || U.empty())
    throw DimensionMismatch("delta_n needs two nonempty tuples of equal length");
  using D = typename S::dist_type;
  D sum = space.dist(U[0], V[0]);
  for (size_t j = 1; j < U.size(); ++j) sum += space.dist(U[j], V[j]);
  return sum / static_cast<D>(static_cast<int>(U.size()));
}

// Max product metric: max_i d(x_i, y_i).
template <class S, class P = typename S::point_type>
typename S::dist_type nabla_n(const S& space, std::span<const P> U, std::span<const P> V) {
  if (U.size() != V.size() || U.empty())
    throw DimensionMismatch("nabla_n needs two nonempty tuples of equal length");
  auto best = space.dist(U[0], V[0]);
  for (size_t j = 1; j < U.size(); ++j) {
    auto d = space.dist(U[j], V[j]);
    if (d > best) best = d;
  }
  return best;
}

// Partition-twisted product order: U [= V iff x_i <= y_i on A-coordinates and
// x_i >= y_i on B-coordinates.
template <class S, class P = typename S::point_type>
bool product_leq(const S& space, const Partition& part, std::span<const P> U, std::span<const P> V) {
  detail::require_tuple_size(part.n(), U.size(), "product_leq");
  detail::require_tuple_size(part.n(), V.size(), "product_leq");
  for (int i = 1; i <= part.n(); ++i) {
    const P &x = U[i - 1], &y = V[i - 1];
    if (part.in_A(i) ? !space.leq(x, y) : !space.leq(y, x)) return false;
  }
  return true;
}

template <class S, class P = typename S::point_type>
bool comparable(const S& space, const Partition& part, std::span<const P> U, std::span<const P> V) {
  return product_leq(space, part, U, V) || product_leq(space, part, V, U);
}

struct SliceOrderViolation {
  int i = 0;           // offending equation index
  bool expected_leq{}; // true: wanted G(U*_i) [= G(V*_i); false: the reverse
};

struct SliceOrderReport {
  bool holds = false;
  std::vector<SliceOrderViolation> violations;
};

// With op in U and G(U) [= G(V), the slices inherit the order: G(U*_i) [= G(V*_i)
// for i in A and the reverse for i in B. Preconditions are enforced.
template <class S, class Gn, class P = typename S::point_type>
SliceOrderReport lemma4_check(const S& space, Gn&& g, const BinaryOp& op, const Partition& part,
                              std::span<const P> U, std::span<const P> V) {
  auto verdict = is_member_U(op, part);
  if (!verdict.in_U)
    throw PreconditionUnmet("slice order preservation needs op in U for the partition");
  const auto GU = apply_G<P>(g, U), GV = apply_G<P>(g, V);
  if (!product_leq(space, part, std::span<const P>(GU), std::span<const P>(GV)))
    throw PreconditionUnmet("slice order preservation needs G(U) [= G(V)");
  SliceOrderReport report;
  for (int i = 1; i <= op.n(); ++i) {
    const auto SU = slice(op, i, std::span<const P>(GU));
    const auto SV = slice(op, i, std::span<const P>(GV));
    const bool want_leq = part.in_A(i);
    const bool ok = want_leq
                        ? product_leq(space, part, std::span<const P>(SU), std::span<const P>(SV))
                        : product_leq(space, part, std::span<const P>(SV), std::span<const P>(SU));
    if (!ok) report.violations.push_back({i, want_leq});
  }
  report.holds = report.violations.empty();
  return report;
}

template <class D>
struct RowAggregate {
  int i = 0;
  D row_avg{}, row_max{};
};

template <class D>
struct RowAggregateReport {
  bool permuted = false;
  D delta{}, nabla{};
  std::vector<RowAggregate<D>> rows;
  std::vector<int> avg_mismatch;   // rows where row_avg != delta (permuted ops only)
  std::vector<int> max_mismatch;   // rows where row_max != nabla (permuted ops only)
  std::vector<int> max_exceeds;    // rows where row_max > nabla (never expected)
  bool holds() const { return avg_mismatch.empty() && max_mismatch.empty() && max_exceeds.empty(); }
};

// Per-row averages and maxima of d(g x_{i_k}, g y_{i_k}) against the product
// metrics of the G-images. For permuted ops both collapse to the global
// values; the max is bounded by nabla for every op.
template <class S, class Gn, class P = typename S::point_type>
RowAggregateReport<typename S::dist_type> lemma6_check(const S& space, Gn&& g, const BinaryOp& op,
                                                       std::span<const P> U, std::span<const P> V) {
  using D = typename S::dist_type;
  detail::require_tuple_size(op.n(), U.size(), "lemma6_check");
  detail::require_tuple_size(op.n(), V.size(), "lemma6_check");
  const auto GU = apply_G<P>(g, U), GV = apply_G<P>(g, V);
  RowAggregateReport<D> report;
  report.permuted = is_permuted(op).permuted;
  report.delta = delta_n(space, std::span<const P>(GU), std::span<const P>(GV));
  report.nabla = nabla_n(space, std::span<const P>(GU), std::span<const P>(GV));
  for (int i = 1; i <= op.n(); ++i) {
    const auto SU = slice(op, i, std::span<const P>(GU));
    const auto SV = slice(op, i, std::span<const P>(GV));
    RowAggregate<D> row{i, delta_n(space, std::span<const P>(SU), std::span<const P>(SV)),
                        nabla_n(space, std::span<const P>(SU), std::span<const P>(SV))};
    if (report.permuted && row.row_avg != report.delta) report.avg_mismatch.push_back(i);
    if (report.permuted && row.row_max != report.nabla) report.max_mismatch.push_back(i);
    if (row.row_max > report.nabla) report.max_exceeds.push_back(i);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace ntfp
