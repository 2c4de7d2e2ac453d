#include "doctest.h"

#include "ntfp/product_lift.hpp"
#include "ntfp/spaces.hpp"

using namespace ntfp;

namespace {

FiniteSpace chain(int m) {
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> dist(m, std::vector<Rational>(m));
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < m; ++i) {
    labels.push_back(std::string(1, static_cast<char>('a' + i)));
    for (int j = 0; j < m; ++j) dist[i][j] = Rational(i < j ? j - i : i - j);
    if (i + 1 < m) leq.emplace_back(i, i + 1);
  }
  return FiniteSpace(std::move(labels), std::move(dist), leq, /*apply_closure=*/true);
}

std::span<const int> sp(const std::vector<int>& v) { return {v.data(), v.size()}; }

const auto kId = [](int x) { return x; };

}  // namespace

TEST_CASE("argument slices follow the matrix rows") {
  BinaryOp op = BinaryOp::forward_cyclic(3);
  std::vector<int> U = {10, 20, 30};
  CHECK(slice(op, 1, sp(U)) == std::vector<int>{10, 20, 30});
  CHECK(slice(op, 2, sp(U)) == std::vector<int>{20, 30, 10});
  CHECK(slice(op, 3, sp(U)) == std::vector<int>{30, 10, 20});

  std::vector<int> bad = {1, 2};
  CHECK_THROWS_AS(slice(op, 1, sp(bad)), DimensionMismatch);
}

TEST_CASE("lifted map evaluates each equation on its own slice") {
  BinaryOp flip(2, {{1, 2}, {2, 1}});
  auto F = [](std::span<const int> a) { return 10 * a[0] + a[1]; };
  std::vector<int> U = {3, 7};
  CHECK(apply_F_star(flip, F, sp(U)) == std::vector<int>{37, 73});

  auto g = [](int x) { return x + 1; };
  CHECK(apply_G<int>(g, sp(U)) == std::vector<int>{4, 8});
}

TEST_CASE("product metrics are exact rationals") {
  FiniteSpace s = chain(3);
  std::vector<int> U = {0, 2}, V = {2, 2};
  CHECK(delta_n(s, sp(U), sp(V)) == Rational(1));       // (2 + 0) / 2
  CHECK(nabla_n(s, sp(U), sp(V)) == Rational(2));

  std::vector<int> U3 = {0, 1, 2}, V3 = {2, 1, 1};
  CHECK(delta_n(s, sp(U3), sp(V3)) == Rational(1));     // (2 + 0 + 1) / 3
  CHECK(nabla_n(s, sp(U3), sp(V3)) == Rational(2));

  // nabla/n <= delta <= nabla, with both equalities attainable.
  const Rational d = delta_n(s, sp(U3), sp(V3)), nb = nabla_n(s, sp(U3), sp(V3));
  CHECK(nb / Rational(3) <= d);
  CHECK(d <= nb);

  std::vector<int> empty, one = {0};
  CHECK_THROWS_AS(delta_n(s, sp(empty), sp(empty)), DimensionMismatch);
  CHECK_THROWS_AS(nabla_n(s, sp(one), sp(empty)), DimensionMismatch);
}

TEST_CASE("product order flips on the second part") {
  FiniteSpace s = chain(3);
  Partition part(2, {1}, {2});
  std::vector<int> U = {0, 2}, V = {1, 1};
  CHECK(product_leq(s, part, sp(U), sp(V)));   // 0 <= 1 and 1 <= 2
  CHECK_FALSE(product_leq(s, part, sp(V), sp(U)));
  CHECK(comparable(s, part, sp(U), sp(V)));

  std::vector<int> W = {1, 2};
  CHECK_FALSE(product_leq(s, part, sp(V), sp(W)));  // 2 <= 1 fails on the flipped side
  CHECK(product_leq(s, part, sp(W), sp(V)));

  // Incomparable pair: each direction fails on a different coordinate.
  std::vector<int> P1 = {0, 0}, P2 = {1, 1};
  CHECK_FALSE(comparable(s, part, sp(P1), sp(P2)));

  std::vector<int> bad = {0, 1, 2};
  CHECK_THROWS_AS(product_leq(s, part, sp(bad), sp(U)), DimensionMismatch);
}

TEST_CASE("slice order preservation holds under the membership precondition") {
  FiniteSpace s = chain(3);
  Partition part(2, {1}, {2});
  BinaryOp flip(2, {{1, 2}, {2, 1}});
  std::vector<int> U = {0, 2}, V = {1, 1};

  auto r = lemma4_check(s, kId, flip, part, sp(U), sp(V));
  CHECK(r.holds);
  CHECK(r.violations.empty());

  // Nonidentity g: order the G-images, not the points.
  auto g_swap = [](int x) { return 2 - x; };  // order-reversing on the chain
  // G(U) = (2,0), G(V) = (1,1): G(V) [= G(U) in the twisted order.
  auto r2 = lemma4_check(s, g_swap, flip, part, sp(V), sp(U));
  CHECK(r2.holds);

  // Precondition failures: op outside U, then incomparable G-images.
  CHECK_THROWS_AS(lemma4_check(s, kId, BinaryOp::forward_cyclic(3), Partition::odd_even(3),
                               sp(std::vector<int>{0, 0, 0}), sp(std::vector<int>{0, 0, 0})),
                  PreconditionUnmet);
  CHECK_THROWS_AS(lemma4_check(s, kId, flip, part, sp(V), sp(U)), PreconditionUnmet);
}

TEST_CASE("slice order preservation across all members at n = 3, |X| = 3") {
  // Exhaustive: every op in U for the odd/even partition, every comparable
  // pair in a 3-chain, identity g. 32 ops x ordered pairs.
  FiniteSpace s = chain(3);
  Partition part = Partition::odd_even(3);
  int ops_seen = 0;
  std::vector<int> flat(9, 1);
  for (;;) {
    BinaryOp op(3, {{flat[0], flat[1], flat[2]}, {flat[3], flat[4], flat[5]}, {flat[6], flat[7], flat[8]}});
    if (is_member_U(op, part).in_U) {
      ++ops_seen;
      std::vector<int> U = {0, 0, 0};
      do {
        std::vector<int> V = {0, 0, 0};
        do {
          if (product_leq(s, part, sp(U), sp(V)))
            CHECK(lemma4_check(s, kId, op, part, sp(U), sp(V)).holds);
        } while (next_tuple(V, 3));
      } while (next_tuple(U, 3));
    }
    int j = 8;
    while (j >= 0 && flat[j] == 3) flat[j--] = 1;
    if (j < 0) break;
    ++flat[j];
  }
  CHECK(ops_seen == 32);
}

TEST_CASE("row aggregates collapse for permuted ops and stay bounded otherwise") {
  FiniteSpace s = chain(2);
  std::vector<int> U = {0, 0, 0}, V = {1, 0, 0};

  SUBCASE("permuted: every row equals the global metrics") {
    auto r = lemma6_check(s, kId, BinaryOp::forward_cyclic(3), sp(U), sp(V));
    CHECK(r.permuted);
    CHECK(r.delta == Rational(1, 3));
    CHECK(r.nabla == Rational(1));
    CHECK(r.avg_mismatch.empty());
    CHECK(r.max_mismatch.empty());
    CHECK(r.max_exceeds.empty());
    CHECK(r.holds());
    REQUIRE(r.rows.size() == 3);
    for (const auto& row : r.rows) {
      CHECK(row.row_avg == Rational(1, 3));
      CHECK(row.row_max == Rational(1));
    }
  }

  SUBCASE("non-permuted: the average genuinely deviates but the max stays bounded") {
    BinaryOp op(3, {{1, 2, 3}, {2, 1, 3}, {3, 3, 2}});  // row 3 repeats index 3
    auto r = lemma6_check(s, kId, op, sp(U), sp(V));
    CHECK_FALSE(r.permuted);
    CHECK(r.delta == Rational(1, 3));
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].row_avg == Rational(1, 3));
    CHECK(r.rows[1].row_avg == Rational(1, 3));
    CHECK(r.rows[2].row_avg == Rational(0));  // row (3,3,2) never sees coordinate 1
    CHECK(r.rows[2].row_max == Rational(0));
    CHECK(r.max_exceeds.empty());
    CHECK(r.holds());  // mismatch lists only apply to permuted ops
  }

  SUBCASE("dimension mismatch") {
    std::vector<int> bad = {0, 1};
    CHECK_THROWS_AS(lemma6_check(s, kId, BinaryOp::forward_cyclic(3), sp(bad), sp(bad)),
                    DimensionMismatch);
  }
}

TEST_CASE("row maxima never exceed the global max across random data") {
  FiniteSpace s = chain(4);
  // A handful of fixed ops, all tuples over a 4-chain at n = 2.
  for (const BinaryOp& op : {BinaryOp(2, {{1, 1}, {2, 2}}), BinaryOp(2, {{2, 1}, {1, 1}}),
                             BinaryOp(2, {{1, 2}, {2, 1}})}) {
    std::vector<int> U = {0, 0};
    do {
      std::vector<int> V = {0, 0};
      do {
        auto r = lemma6_check(s, kId, op, sp(U), sp(V));
        CHECK(r.max_exceeds.empty());
        // nabla/n <= delta <= nabla on the same G-images.
        CHECK(r.nabla / Rational(2) <= r.delta);
        CHECK(r.delta <= r.nabla);
      } while (next_tuple(V, 4));
    } while (next_tuple(U, 4));
  }
}
