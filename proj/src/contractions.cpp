#include "ntfp/contractions.hpp"

#include <algorithm>
#include <cmath>

namespace ntfp {

std::string to_string(PhiClass c) {
  switch (c) {
    case PhiClass::Omega: return "Omega";
    case PhiClass::PhiLim: return "PhiLim";
    case PhiClass::Psi: return "Psi";
    case PhiClass::Theta: return "Theta";
    case PhiClass::Im: return "Im";
    case PhiClass::Linear: return "Linear";
  }
  return "?";
}

PhiClass phi_class_from_string(const std::string& name) {
  if (name == "Omega") return PhiClass::Omega;
  if (name == "PhiLim") return PhiClass::PhiLim;
  if (name == "Psi") return PhiClass::Psi;
  if (name == "Theta") return PhiClass::Theta;
  if (name == "Im") return PhiClass::Im;
  if (name == "Linear") return PhiClass::Linear;
  throw ParseError("unknown comparison-function class '" + name + "'");
}

std::vector<PhiClass> implied_classes(PhiClass c) {
  switch (c) {
    case PhiClass::Linear:
      return {PhiClass::Linear, PhiClass::Im, PhiClass::Theta, PhiClass::Psi, PhiClass::PhiLim,
              PhiClass::Omega};
    case PhiClass::Im:
      return {PhiClass::Im, PhiClass::Theta, PhiClass::Psi, PhiClass::PhiLim, PhiClass::Omega};
    case PhiClass::Theta:
      return {PhiClass::Theta, PhiClass::Psi, PhiClass::PhiLim, PhiClass::Omega};
    case PhiClass::Psi:
      return {PhiClass::Psi, PhiClass::Omega};
    case PhiClass::PhiLim:
      return {PhiClass::PhiLim, PhiClass::Omega};
    case PhiClass::Omega:
      return {PhiClass::Omega};
  }
  return {};
}

ControlFunction ControlFunction::linear(const Rational& alpha) {
  if (alpha < Rational(0) || alpha >= Rational(1))
    throw AlphaOutOfRange("linear coefficient must satisfy 0 <= alpha < 1, got " + to_string(alpha));
  ControlFunction f(Kind::Linear, PhiClass::Linear);
  f.alpha_ = alpha;
  return f;
}

ControlFunction ControlFunction::ratio() { return ControlFunction(Kind::Ratio, PhiClass::Im); }

ControlFunction ControlFunction::quad_clamped() {
  return ControlFunction(Kind::QuadClamped, PhiClass::Im);
}

ControlFunction ControlFunction::piecewise_linear(std::vector<Rational> breaks,
                                                  std::vector<Rational> alphas) {
  if (alphas.size() != breaks.size() + 1)
    throw ShapeMismatch("piecewise linear needs one more coefficient than breakpoints");
  for (const auto& a : alphas)
    if (a < Rational(0) || a >= Rational(1))
      throw AlphaOutOfRange("piecewise coefficient must satisfy 0 <= alpha < 1, got " + to_string(a));
  for (size_t j = 0; j < breaks.size(); ++j) {
    if (breaks[j] <= Rational(0))
      throw DomainViolation("piecewise breakpoints must be positive");
    if (j + 1 < breaks.size() && !(breaks[j] < breaks[j + 1]))
      throw DomainViolation("piecewise breakpoints must be strictly increasing");
  }
  // Cells are [b_j, b_{j+1}), so the function is right continuous.
  ControlFunction f(Kind::PiecewiseLinear, PhiClass::Theta);
  f.breaks_ = std::move(breaks);
  f.alphas_ = std::move(alphas);
  return f;
}

Rational ControlFunction::eval(const Rational& t) const {
  switch (kind_) {
    case Kind::Linear:
      return alpha_ * t;
    case Kind::Ratio:
      return t / (Rational(1) + t);
    case Kind::QuadClamped: {
      Rational v = t - t * t / Rational(2);
      return v < Rational(0) ? Rational(0) : v;
    }
    case Kind::PiecewiseLinear: {
      size_t j = 0;
      while (j < breaks_.size() && breaks_[j] <= t) ++j;
      return alphas_[j] * t;
    }
  }
  return Rational(0);
}

double ControlFunction::eval(double t) const {
  switch (kind_) {
    case Kind::Linear:
      return to_double(alpha_) * t;
    case Kind::Ratio:
      return t / (1.0 + t);
    case Kind::QuadClamped:
      return std::max(t - t * t / 2.0, 0.0);
    case Kind::PiecewiseLinear: {
      size_t j = 0;
      while (j < breaks_.size() && to_double(breaks_[j]) <= t) ++j;
      return to_double(alphas_[j]) * t;
    }
  }
  return 0.0;
}

std::string ControlFunction::describe() const {
  switch (kind_) {
    case Kind::Linear:
      return to_string(alpha_) + " * t";
    case Kind::Ratio:
      return "t / (1 + t)";
    case Kind::QuadClamped:
      return "max(t - t^2/2, 0)";
    case Kind::PiecewiseLinear: {
      std::string s = "piecewise";
      for (size_t j = 0; j < alphas_.size(); ++j) {
        s += " " + to_string(alphas_[j]) + "*t";
        if (j < breaks_.size()) s += " | t >= " + to_string(breaks_[j]) + ":";
      }
      return s;
    }
  }
  return "?";
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0) || !(lo < hi) || count < 2)
    throw DomainViolation("log grid needs 0 < lo < hi and at least two points");
  std::vector<double> grid(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    grid[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

bool sampled_increasing(const ControlFunction& phi, std::span<const double> grid) {
  std::vector<double> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (phi.eval(sorted[i - 1]) > phi.eval(sorted[i])) return false;
  return true;
}

}  // namespace ntfp
