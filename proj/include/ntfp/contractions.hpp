#pragma once

#include <span>
#include <string>
#include <vector>

#include "ntfp/errors.hpp"
#include "ntfp/rational.hpp"

namespace ntfp {

// Regularity classes for comparison functions phi with phi(t) < t for t > 0,
// ordered by the strength of the limit condition at t from the right:
//   Im      continuous
//   Theta   right continuous
//   Psi     right upper semicontinuous
//   PhiLim  lim_{r->t+} phi(r) < t
//   Omega   limsup_{r->t+} phi(r) < t
// Linear marks alpha * t with 0 <= alpha < 1, which lies in all of them.
enum class PhiClass { Omega, PhiLim, Psi, Theta, Im, Linear };

std::string to_string(PhiClass c);
PhiClass phi_class_from_string(const std::string& name);

// Upward closure in the containment lattice:
//   Im c Theta c Psi c Omega and Im c Theta c PhiLim c Omega.
std::vector<PhiClass> implied_classes(PhiClass c);

// A comparison function from the built-in catalog. Every entry has an exact
// rational closed form, so finite-mode checks stay exact; the same formula is
// evaluated in double for real-mode work.
class ControlFunction {
 public:
  enum class Kind { Linear, Ratio, QuadClamped, PiecewiseLinear };

  // alpha * t, 0 <= alpha < 1.
  static ControlFunction linear(const Rational& alpha);
  // t / (1 + t).
  static ControlFunction ratio();
  // max(t - t^2/2, 0).
  static ControlFunction quad_clamped();
  // alphas[j] * t on the cell [breaks[j-1], breaks[j]) (right continuous);
  // needs every alpha in [0,1) and strictly increasing positive breaks.
  static ControlFunction piecewise_linear(std::vector<Rational> breaks, std::vector<Rational> alphas);

  Kind kind() const { return kind_; }
  PhiClass declared_class() const { return declared_; }
  void declare_class(PhiClass c) { declared_ = c; }

  Rational eval(const Rational& t) const;
  double eval(double t) const;
  std::string describe() const;

 private:
  ControlFunction(Kind kind, PhiClass declared) : kind_(kind), declared_(declared) {}
  Kind kind_;
  PhiClass declared_;
  Rational alpha_{0};
  std::vector<Rational> breaks_, alphas_;
};

template <class T>
struct BelowIdentityViolation {
  T t{}, phi_t{};
};

// Samples phi(t) < t on the grid; returns every violating point.
template <class T>
std::vector<BelowIdentityViolation<T>> check_below_identity(const ControlFunction& phi,
                                                            std::span<const T> grid) {
  std::vector<BelowIdentityViolation<T>> out;
  for (const T& t : grid) {
    if (!(t > T(0))) continue;
    T v = phi.eval(t);
    if (!(v < t)) out.push_back({t, v});
  }
  return out;
}

// count points, logarithmically spaced over [lo, hi]; needs 0 < lo < hi.
std::vector<double> log_grid(double lo, double hi, int count);

// Pairwise monotonicity of phi on the grid (t <= s implies phi(t) <= phi(s)).
// A sampled statement, reported as such, never as a proof.
bool sampled_increasing(const ControlFunction& phi, std::span<const double> grid);

}  // namespace ntfp
