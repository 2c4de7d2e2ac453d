#include "doctest.h"

#include <algorithm>
#include <set>

#include "ntfp/spaces.hpp"

using namespace ntfp;

namespace {

// Chain a < b < ... with the line metric d(i, j) = |i - j|.
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

std::multiset<SpaceViolation::Kind> kinds(const SpaceReport& r) {
  std::multiset<SpaceViolation::Kind> out;
  for (const auto& v : r.violations) out.insert(v.kind);
  return out;
}

const std::vector<std::vector<Rational>> kDist2 = {{Rational(0), Rational(1)},
                                                   {Rational(1), Rational(0)}};

}  // namespace

TEST_CASE("finite space construction and lookup") {
  FiniteSpace s = chain(3);
  CHECK(s.size() == 3);
  CHECK(s.label(0) == "a");
  CHECK(s.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(s.index_of("c") == 2);
  CHECK_THROWS_AS(s.index_of("z"), ParseError);

  CHECK(s.dist(0, 2) == Rational(2));
  CHECK(s.leq(0, 0));      // closure added reflexivity
  CHECK(s.leq(0, 2));      // and transitivity
  CHECK_FALSE(s.leq(2, 0));

  CHECK_THROWS_AS(FiniteSpace({}, {}, {}), ShapeMismatch);
  CHECK_THROWS_AS(FiniteSpace({"x", "x"}, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}, {}),
                  ShapeMismatch);
  CHECK_THROWS_AS(FiniteSpace({"x", "y"}, {{Rational(0)}}, {}), ShapeMismatch);
  CHECK_THROWS_AS(FiniteSpace({"x", "y"}, {{Rational(0), Rational(1)}, {Rational(1)}}, {}),
                  ShapeMismatch);
  CHECK_THROWS_AS(FiniteSpace({"x", "y"}, kDist2, {{0, 2}}), ShapeMismatch);
}

TEST_CASE("space validation accepts a chain and reports the vacuous-facts note") {
  SpaceReport r = validate_space(chain(4));
  CHECK(r.valid);
  CHECK(r.violations.empty());
  REQUIRE_FALSE(r.notes.empty());
  CHECK(r.notes[0].find("eventually constant") != std::string::npos);
}

TEST_CASE("space validation flags each metric axiom") {
  using K = SpaceViolation::Kind;
  auto loops2 = std::vector<std::pair<int, int>>{{0, 0}, {1, 1}};

  SUBCASE("self distance nonzero") {
    FiniteSpace s({"x", "y"}, {{Rational(1), Rational(1)}, {Rational(1), Rational(0)}}, loops2);
    auto r = validate_space(s);
    CHECK_FALSE(r.valid);
    CHECK(kinds(r).count(K::SelfDistanceNonZero) == 1);
    CHECK(r.violations[0].elems == std::vector<int>{0});
  }
  SUBCASE("distinct elements at distance zero") {
    FiniteSpace s({"x", "y"}, {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}, loops2);
    CHECK(kinds(validate_space(s)).count(K::DistinctDistanceZero) == 1);
  }
  SUBCASE("negative distance") {
    FiniteSpace s({"x", "y"}, {{Rational(0), Rational(-1)}, {Rational(-1), Rational(0)}}, loops2);
    CHECK(kinds(validate_space(s)).count(K::NegativeDistance) == 2);
  }
  SUBCASE("asymmetric") {
    FiniteSpace s({"x", "y"}, {{Rational(0), Rational(1)}, {Rational(2), Rational(0)}}, loops2);
    auto k = kinds(validate_space(s));
    CHECK(k.count(K::Asymmetric) == 1);
    CHECK(k.size() == 1);
  }
  SUBCASE("triangle") {
    FiniteSpace s({"x", "y", "z"},
                  {{Rational(0), Rational(1), Rational(5)},
                   {Rational(1), Rational(0), Rational(1)},
                   {Rational(5), Rational(1), Rational(0)}},
                  {{0, 0}, {1, 1}, {2, 2}});
    auto r = validate_space(s);
    CHECK_FALSE(r.valid);
    CHECK(kinds(r).count(K::Triangle) == 2);  // (x,y,z) and (z,y,x)
  }
}

TEST_CASE("space validation flags each order axiom") {
  using K = SpaceViolation::Kind;
  SUBCASE("not reflexive") {
    FiniteSpace s({"x", "y"}, kDist2, {});
    CHECK(kinds(validate_space(s)).count(K::NotReflexive) == 2);
  }
  SUBCASE("not antisymmetric") {
    FiniteSpace s({"x", "y"}, kDist2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}});
    CHECK(kinds(validate_space(s)).count(K::NotAntisymmetric) == 1);
  }
  SUBCASE("not transitive") {
    FiniteSpace s({"x", "y", "z"},
                  {{Rational(0), Rational(1), Rational(2)},
                   {Rational(1), Rational(0), Rational(1)},
                   {Rational(2), Rational(1), Rational(0)}},
                  {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}});
    auto r = validate_space(s);
    REQUIRE(kinds(r).count(K::NotTransitive) == 1);
    for (const auto& v : r.violations)
      if (v.kind == K::NotTransitive) CHECK(v.elems == std::vector<int>{0, 1, 2});
  }
  SUBCASE("closure repairs reflexivity and transitivity") {
    FiniteSpace s({"x", "y", "z"},
                  {{Rational(0), Rational(1), Rational(2)},
                   {Rational(1), Rational(0), Rational(1)},
                   {Rational(2), Rational(1), Rational(0)}},
                  {{0, 1}, {1, 2}}, /*apply_closure=*/true);
    CHECK(validate_space(s).valid);
  }
}

TEST_CASE("real line carrier") {
  RealLine line(-1.0, 1.0);
  CHECK(line.lo() == -1.0);
  CHECK(line.hi() == 1.0);
  CHECK(line.dist(-0.5, 0.75) == doctest::Approx(1.25));
  CHECK(line.leq(-0.5, -0.5));
  CHECK_FALSE(line.leq(0.5, -0.5));
  CHECK_THROWS_AS(RealLine(1.0, 1.0), DomainViolation);
  CHECK_THROWS_AS(RealLine(2.0, -2.0), DomainViolation);
}

TEST_CASE("finite self-maps") {
  FiniteMap id = FiniteMap::identity(3);
  CHECK(id.is_identity());
  CHECK(id(2) == 2);

  FiniteMap g({2, 2, 0});
  CHECK_FALSE(g.is_identity());
  CHECK(g(0) == 2);
  CHECK(g.image() == std::vector<int>{2, 2, 0});

  CHECK_THROWS_AS(FiniteMap({}), ShapeMismatch);
  CHECK_THROWS_AS(FiniteMap({0, 3, 1}), OutOfRangeEntry);
}

TEST_CASE("n-ary map tables index row-major with the first argument slowest") {
  // table(x, y) read back by flat index: idx = 3x + y.
  std::vector<int> table(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) table[3 * x + y] = (2 * x + y) % 3;
  FiniteNMap F(2, 3, table);
  CHECK(F.n() == 2);
  CHECK(F.m() == 3);
  CHECK(F.flat_index(std::vector<int>{1, 2}) == 5);
  CHECK(F.flat_index(std::vector<int>{2, 0}) == 6);
  std::vector<int> args = {1, 2};
  CHECK(F(args) == (2 * 1 + 2) % 3);

  CHECK(FiniteNMap::table_size(2, 3) == 9);
  CHECK(FiniteNMap::table_size(3, 4) == 64);
  CHECK_THROWS_AS(FiniteNMap::table_size(40, 10), SizeLimit);

  CHECK_THROWS_AS(FiniteNMap(2, 3, {0, 1}), PartialMapping);
  CHECK_THROWS_AS(FiniteNMap(2, 2, {0, 1, 2, 0}), OutOfRangeEntry);
  CHECK_THROWS_AS(F.flat_index(std::vector<int>{1}), DimensionMismatch);
  CHECK_THROWS_AS(F.flat_index(std::vector<int>{1, 3}), OutOfRangeEntry);
}

TEST_CASE("tuple odometer walks the full grid in row-major order") {
  std::vector<int> t = {0, 0};
  std::vector<std::vector<int>> seen;
  do {
    seen.push_back(t);
  } while (next_tuple(t, 3));
  CHECK(seen.size() == 9);
  CHECK(seen.front() == std::vector<int>{0, 0});
  CHECK(seen[1] == std::vector<int>{0, 1});  // last coordinate fastest
  CHECK(seen.back() == std::vector<int>{2, 2});
  CHECK(std::set<std::vector<int>>(seen.begin(), seen.end()).size() == 9);
}

TEST_CASE("commuting check") {
  FiniteSpace s = chain(3);
  // F(a,b) = F(b,a) = c, F(c,c) = b, everything else a; g: a,b -> c, c -> a.
  FiniteNMap F(2, 3, {0, 2, 0, 2, 0, 0, 0, 0, 1});
  FiniteMap g({2, 2, 0});

  auto bad = check_commuting(s, F, g);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(*bad.witness == std::vector<int>{0, 0});  // g(F(a,a)) = c but F(c,c) = b
  CHECK(bad.cases == 1);

  auto good = check_commuting(s, F, FiniteMap::identity(3));
  CHECK(good.holds);
  CHECK(good.cases == 9);
  CHECK_FALSE(good.witness.has_value());

  CHECK_THROWS_AS(check_commuting(s, FiniteNMap(2, 2, {0, 1, 1, 0}), g), DimensionMismatch);
}

TEST_CASE("weak compatibility at coincidence tuples") {
  FiniteSpace s = chain(3);
  BinaryOp flip(2, {{1, 2}, {2, 1}});
  FiniteNMap F(2, 3, {0, 2, 0, 2, 0, 0, 0, 0, 1});
  FiniteMap g({2, 2, 0});

  // (a,b) satisfies g(x_i) = F(slice_i): g(a) = c = F(a,b), g(b) = c = F(b,a).
  // But g(F(a,b)) = g(c) = a while F(g a, g b) = F(c,c) = b.
  auto r = check_weak_star_compat(s, F, g, flip);
  CHECK_FALSE(r.holds);
  CHECK(r.coincidence_tuples == 1);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->first == std::vector<int>{0, 1});
  CHECK(r.witness->second == 1);

  // The identity is weakly compatible with anything; (a,a) is the one
  // coincidence tuple here since F(a,a) = a.
  auto id_ok = check_weak_star_compat(s, F, FiniteMap::identity(3), flip);
  CHECK(id_ok.holds);
  CHECK(id_ok.coincidence_tuples == 1);

  // Vacuous truth: a shift has no coincidence tuple against the identity.
  FiniteNMap shift(2, 3, {1, 1, 1, 2, 2, 2, 0, 0, 0});  // F(x,y) = x+1 mod 3
  auto vac = check_weak_star_compat(s, shift, FiniteMap::identity(3), flip);
  CHECK(vac.holds);
  CHECK(vac.coincidence_tuples == 0);

  CHECK_THROWS_AS(check_weak_star_compat(s, F, g, BinaryOp::forward_cyclic(3)), DimensionMismatch);
}

TEST_CASE("provenance labels") {
  CHECK(to_string(Provenance::Declared) == "declared");
  CHECK(to_string(Provenance::MachineVerified) == "machine-verified");
  CHECK(to_string(Provenance::VacuousOnFinite) == "vacuous-on-finite");
  CHECK(to_string(Provenance::Sampled) == "sampled");
}
