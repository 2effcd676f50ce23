#include "atto/diskgeom.hpp"

#include <cmath>

#include "atto/error.hpp"

namespace atto::diskgeom {

DiskPoint::DiskPoint(Cx value) : value_(value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw Error(ErrorCode::BadInput, "disk point must be finite");
  if (std::abs(value) >= 1.0 - 1e-12)
    throw Error(ErrorCode::OutOfDisk, "|z| = " + std::to_string(std::abs(value)));
}

double rho(const DiskPoint& z, const DiskPoint& w) {
  const Cx zz = z.value();
  const Cx ww = w.value();
  return std::abs((zz - ww) / (1.0 - std::conj(ww) * zz));
}

double hyp_dist(const DiskPoint& z, const DiskPoint& w) {
  const double r = rho(z, w);
  return std::log((1.0 + r) / (1.0 - r));
}

Automorphism::Automorphism(DiskPoint a, Cx omega) : a_(a), omega_(omega) {
  if (std::abs(std::abs(omega) - 1.0) > 1e-14)
    throw Error(ErrorCode::BadInput, "rotation factor must be unimodular");
  omega_ = omega / std::abs(omega);
}

Cx Automorphism::apply(Cx z) const {
  const Cx a = a_.value();
  return omega_ * (z - a) / (1.0 - std::conj(a) * z);
}

DiskPoint Automorphism::apply(const DiskPoint& z) const { return DiskPoint(apply(z.value())); }

Automorphism Automorphism::inverse() const {
  // psi^{-1}(w) = conj(omega) (w - psi(0)) / (1 - conj(psi(0)) w)
  const Cx a0 = -omega_ * a_.value();
  return Automorphism(DiskPoint(a0), std::conj(omega_));
}

BlaschkeProduct::BlaschkeProduct(std::vector<DiskPoint> zeros, Cx front)
    : zeros_(std::move(zeros)), front_(front) {
  if (zeros_.empty()) throw Error(ErrorCode::BadInput, "Blaschke product needs at least one zero");
  if (std::abs(std::abs(front) - 1.0) > 1e-12)
    throw Error(ErrorCode::BadInput, "front factor must be unimodular");
  front_ = front / std::abs(front);
}

BlaschkeProduct BlaschkeProduct::monomial(int order) {
  return BlaschkeProduct(std::vector<DiskPoint>(static_cast<size_t>(order), DiskPoint(0.0, 0.0)));
}

Cx BlaschkeProduct::eval(Cx z) const {
  Cx v = front_;
  for (const DiskPoint& p : zeros_) {
    const Cx a = p.value();
    v *= (z - a) / (1.0 - std::conj(a) * z);
  }
  return v;
}

std::pair<Cx, Cx> BlaschkeProduct::eval_derivative(Cx z) const {
  Cx v = front_;
  Cx d = 0.0;
  for (const DiskPoint& p : zeros_) {
    const Cx a = p.value();
    const Cx den = 1.0 - std::conj(a) * z;
    const Cx b = (z - a) / den;
    const Cx bp = (1.0 - std::norm(a)) / (den * den);
    d = d * b + v * bp;
    v *= b;
  }
  return {v, d};
}

bool BlaschkeProduct::zeros_distinct(double gap) const {
  for (size_t i = 0; i < zeros_.size(); ++i)
    for (size_t j = i + 1; j < zeros_.size(); ++j)
      if (std::abs(zeros_[i].value() - zeros_[j].value()) <= gap) return false;
  return true;
}

}  // namespace atto::diskgeom
