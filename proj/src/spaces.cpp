#include "ntfp/spaces.hpp"

#include <algorithm>
#include <numeric>

namespace ntfp {

FiniteSpace::FiniteSpace(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist,
                         const std::vector<std::pair<int, int>>& leq_pairs, bool apply_closure)
    : labels_(std::move(labels)) {
  const int m = size();
  if (m == 0) throw ShapeMismatch("finite space needs at least one element");
  for (int i = 0; i < m; ++i) {
    if (!index_.emplace(labels_[i], i).second)
      throw ShapeMismatch("duplicate element label '" + labels_[i] + "'");
  }
  if (static_cast<int>(dist.size()) != m)
    throw ShapeMismatch("distance table must have one row per element");
  dist_.reserve(static_cast<size_t>(m) * m);
  for (const auto& row : dist) {
    if (static_cast<int>(row.size()) != m)
      throw ShapeMismatch("distance table rows must have one entry per element");
    dist_.insert(dist_.end(), row.begin(), row.end());
  }
  leq_.assign(static_cast<size_t>(m) * m, 0);
  for (auto [a, b] : leq_pairs) {
    if (a < 0 || a >= m || b < 0 || b >= m)
      throw ShapeMismatch("order pair index outside the element range");
    leq_[a * m + b] = 1;
  }
  if (apply_closure) {
    for (int i = 0; i < m; ++i) leq_[i * m + i] = 1;
    // Floyd-Warshall style transitive closure.
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        if (leq_[i * m + k])
          for (int j = 0; j < m; ++j)
            if (leq_[k * m + j]) leq_[i * m + j] = 1;
  }
}

int FiniteSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ParseError("unknown element label '" + label + "'");
  return it->second;
}

SpaceReport validate_space(const FiniteSpace& s) {
  SpaceReport report;
  const int m = s.size();
  const Rational zero(0);
  auto name = [&](int i) { return "'" + s.label(i) + "'"; };

  for (int x = 0; x < m; ++x) {
    if (s.dist(x, x) != zero)
      report.violations.push_back({SpaceViolation::Kind::SelfDistanceNonZero, {x},
                                   "d(" + s.label(x) + "," + s.label(x) + ") = " + to_string(s.dist(x, x))});
    if (!s.leq(x, x))
      report.violations.push_back({SpaceViolation::Kind::NotReflexive, {x}, name(x) + " not <= itself"});
  }
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      if (x == y) continue;
      if (s.dist(x, y) < zero)
        report.violations.push_back({SpaceViolation::Kind::NegativeDistance, {x, y},
                                     "d(" + s.label(x) + "," + s.label(y) + ") < 0"});
      if (x < y) {
        if (s.dist(x, y) == zero)
          report.violations.push_back({SpaceViolation::Kind::DistinctDistanceZero, {x, y},
                                       "d(" + s.label(x) + "," + s.label(y) + ") = 0 for distinct elements"});
        if (s.dist(x, y) != s.dist(y, x))
          report.violations.push_back({SpaceViolation::Kind::Asymmetric, {x, y},
                                       "d(" + s.label(x) + "," + s.label(y) + ") != d(" + s.label(y) +
                                           "," + s.label(x) + ")"});
        if (s.leq(x, y) && s.leq(y, x))
          report.violations.push_back({SpaceViolation::Kind::NotAntisymmetric, {x, y},
                                       name(x) + " <= " + name(y) + " and back, but they differ"});
      }
    }
  }
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        if (s.dist(x, z) > s.dist(x, y) + s.dist(y, z))
          report.violations.push_back({SpaceViolation::Kind::Triangle, {x, y, z},
                                       "d(" + s.label(x) + "," + s.label(z) + ") > d(" + s.label(x) + "," +
                                           s.label(y) + ") + d(" + s.label(y) + "," + s.label(z) + ")"});
        if (s.leq(x, y) && s.leq(y, z) && !s.leq(x, z))
          report.violations.push_back({SpaceViolation::Kind::NotTransitive, {x, y, z},
                                       name(x) + " <= " + name(y) + " <= " + name(z) + " but not " +
                                           name(x) + " <= " + name(z)});
      }

  report.valid = report.violations.empty();
  report.notes.push_back(
      "finite carrier: every monotone convergent sequence is eventually constant, so "
      "order-completeness and monotone-limit-comparability hypotheses hold vacuously");
  return report;
}

FiniteMap::FiniteMap(std::vector<int> image) : image_(std::move(image)) {
  const int m = size();
  if (m == 0) throw ShapeMismatch("self-map needs a nonempty image table");
  for (int v : image_)
    if (v < 0 || v >= m)
      throw OutOfRangeEntry("self-map image " + std::to_string(v) + " outside the carrier", 0, 0, v);
}

FiniteMap FiniteMap::identity(int m) {
  std::vector<int> image(m);
  std::iota(image.begin(), image.end(), 0);
  return FiniteMap(std::move(image));
}

bool FiniteMap::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

long long FiniteNMap::table_size(int n, int m) {
  long long size = 1;
  for (int i = 0; i < n; ++i) {
    if (size > (1LL << 62) / m) throw SizeLimit("mapping table m^n overflows", -1, 1LL << 62);
    size *= m;
  }
  return size;
}

FiniteNMap::FiniteNMap(int n, int m, std::vector<int> table) : n_(n), m_(m), table_(std::move(table)) {
  if (n < 1 || m < 1) throw ShapeMismatch("mapping arity and carrier size must be positive");
  const long long want = table_size(n, m);
  if (static_cast<long long>(table_.size()) != want)
    throw PartialMapping("mapping table has " + std::to_string(table_.size()) + " entries, expected m^n = " +
                         std::to_string(want));
  for (int v : table_)
    if (v < 0 || v >= m)
      throw OutOfRangeEntry("mapping image " + std::to_string(v) + " outside the carrier", 0, 0, v);
}

long long FiniteNMap::flat_index(std::span<const int> args) const {
  if (static_cast<int>(args.size()) != n_)
    throw DimensionMismatch("mapping expects " + std::to_string(n_) + " arguments, got " +
                            std::to_string(args.size()));
  long long idx = 0;
  for (int a : args) {
    if (a < 0 || a >= m_) throw OutOfRangeEntry("argument index outside the carrier", 0, 0, a);
    idx = idx * m_ + a;
  }
  return idx;
}

bool next_tuple(std::vector<int>& args, int m) {
  for (int pos = static_cast<int>(args.size()) - 1; pos >= 0; --pos) {
    if (++args[pos] < m) return true;
    args[pos] = 0;
  }
  return false;
}

CommuteReport check_commuting(const FiniteSpace& space, const FiniteNMap& F, const FiniteMap& g) {
  if (F.m() != space.size() || g.size() != space.size())
    throw DimensionMismatch("mapping tables must match the carrier size");
  CommuteReport report;
  std::vector<int> U(F.n(), 0), gU(F.n());
  do {
    ++report.cases;
    for (int j = 0; j < F.n(); ++j) gU[j] = g(U[j]);
    if (g(F(U)) != F(gU)) {
      report.witness = U;
      report.holds = false;
      return report;
    }
  } while (next_tuple(U, space.size()));
  report.holds = true;
  return report;
}

WeakCompatReport check_weak_star_compat(const FiniteSpace& space, const FiniteNMap& F,
                                        const FiniteMap& g, const BinaryOp& op) {
  if (F.n() != op.n()) throw DimensionMismatch("mapping arity and op arity differ");
  if (F.m() != space.size() || g.size() != space.size())
    throw DimensionMismatch("mapping tables must match the carrier size");
  const int n = op.n();
  WeakCompatReport report;
  std::vector<int> U(n, 0), slice(n), gslice(n);
  do {
    bool premise = true;
    for (int i = 1; premise && i <= n; ++i) {
      for (int k = 1; k <= n; ++k) slice[k - 1] = U[op.at(i, k) - 1];
      premise = g(U[i - 1]) == F(slice);
    }
    if (premise) {
      ++report.coincidence_tuples;
      for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= n; ++k) {
          slice[k - 1] = U[op.at(i, k) - 1];
          gslice[k - 1] = g(U[op.at(i, k) - 1]);
        }
        if (g(F(slice)) != F(gslice)) {
          report.witness = {U, i};
          report.holds = false;
          return report;
        }
      }
    }
  } while (next_tuple(U, space.size()));
  report.holds = true;
  return report;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Declared: return "declared";
    case Provenance::MachineVerified: return "machine-verified";
    case Provenance::VacuousOnFinite: return "vacuous-on-finite";
    case Provenance::Sampled: return "sampled";
  }
  return "?";
}

}  // namespace ntfp
