#pragma once

#include <utility>
#include <vector>

#include "atto/linalg.hpp"

namespace atto::diskgeom {

/// Point strictly inside the unit disk. Construction rejects anything
/// with |z| >= 1 - 1e-12 so the metrics below stay finite.
class DiskPoint {
 public:
  DiskPoint() = default;
  explicit DiskPoint(Cx value);
  DiskPoint(double re, double im) : DiskPoint(Cx(re, im)) {}

  Cx value() const { return value_; }

 private:
  Cx value_{0.0, 0.0};
};

/// pseudohyperbolic metric |(z - w)/(1 - conj(w) z)|
double rho(const DiskPoint& z, const DiskPoint& w);

/// Poincare distance log((1 + rho)/(1 - rho))
double hyp_dist(const DiskPoint& z, const DiskPoint& w);

/// psi(z) = omega (z - a)/(1 - conj(a) z) with |omega| = 1.
class Automorphism {
 public:
  Automorphism() = default;
  Automorphism(DiskPoint a, Cx omega);

  static Automorphism identity() { return Automorphism(DiskPoint(0.0, 0.0), Cx(1.0)); }

  DiskPoint apply(const DiskPoint& z) const;
  Cx apply(Cx z) const;
  Automorphism inverse() const;

  DiskPoint a() const { return a_; }
  Cx omega() const { return omega_; }

 private:
  DiskPoint a_;
  Cx omega_{1.0, 0.0};
};

/// Finite Blaschke product front * prod (z - z_i)/(1 - conj(z_i) z);
/// zeros may repeat, the front factor is unimodular.
class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<DiskPoint> zeros, Cx front = Cx(1.0));
  static BlaschkeProduct monomial(int order);  // Theta = z^order

  int order() const { return static_cast<int>(zeros_.size()); }
  const std::vector<DiskPoint>& zeros() const { return zeros_; }
  Cx front() const { return front_; }

  Cx eval(Cx z) const;
  /// value and derivative by the accumulated product rule; exact at zeros.
  std::pair<Cx, Cx> eval_derivative(Cx z) const;

  bool zeros_distinct(double gap = 1e-10) const;

 private:
  std::vector<DiskPoint> zeros_;
  Cx front_{1.0, 0.0};
};

}  // namespace atto::diskgeom
