#pragma once

#include <map>
#include <span>
#include <vector>

#include "atto/diskgeom.hpp"
#include "atto/linalg.hpp"
#include "atto/modelspace.hpp"

namespace atto::tto {

/// Polynomial symbol, coefficients in ascending degree, trailing zeros
/// trimmed (the zero polynomial keeps a single coefficient).
class AnalyticSymbol {
 public:
  AnalyticSymbol() : coeffs_{Cx(0.0)} {}
  explicit AnalyticSymbol(std::vector<Cx> coeffs);
  static AnalyticSymbol constant(Cx c) { return AnalyticSymbol({c}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Cx>& coeffs() const { return coeffs_; }
  Cx eval(Cx z) const;

 private:
  std::vector<Cx> coeffs_;
};

/// Finitely supported Fourier symbol sum c_k e^{ik theta}; negative
/// indices make it non-analytic (experimental support).
class TrigSymbol {
 public:
  TrigSymbol() = default;
  explicit TrigSymbol(std::map<int, Cx> coeffs) : coeffs_(std::move(coeffs)) {}
  static TrigSymbol from_analytic(const AnalyticSymbol& p);

  const std::map<int, Cx>& coeffs() const { return coeffs_; }
  Cx eval_boundary(Cx z) const;  // |z| = 1
  TrigSymbol conjugated() const;  // symbol of conj(phi) on the boundary

 private:
  std::map<int, Cx> coeffs_;
};

TrigSymbol operator+(const TrigSymbol& a, const TrigSymbol& b);

enum class BasisTag { TM, KernelOrthonormalized };

struct TTOMatrix {
  CMatrix matrix;
  modelspace::ModelSpace space;
  BasisTag basis_tag;
};

/// Interpolating polynomial of degree <= n-1 through (node_i, value_i),
/// computed in Newton form and expanded.
AnalyticSymbol lagrange_symbol(std::span<const diskgeom::DiskPoint> nodes,
                               std::span<const Cx> values);

/// Coordinates of the conjugate kernels at the (distinct) zeros of Theta
/// in the Cholesky-orthonormalized basis; column i represents the
/// normalized conjugate kernel at zero i.
CMatrix conjugate_kernel_coordinates(const diskgeom::BlaschkeProduct& theta);

/// Matrix of the analytic truncated Toeplitz operator in the orthonormal
/// basis obtained by Cholesky-orthonormalizing the conjugate kernels at
/// the (distinct) zeros of Theta. Its spectrum is {phi(z_i)} by
/// construction.
TTOMatrix build_atto_eigenbasis(const diskgeom::BlaschkeProduct& theta, const AnalyticSymbol& phi);

/// Matrix entries <phi e_j, e_i> in the Takenaka-Malmquist basis by
/// boundary quadrature; works for repeated zeros and non-analytic
/// symbols.
TTOMatrix build_tto_tm_quadrature(const diskgeom::BlaschkeProduct& theta, const TrigSymbol& phi,
                                  const modelspace::QuadratureGrid& grid = modelspace::QuadratureGrid());

/// Theta composed with a disk automorphism together with the transported
/// symbol phi (as the rational function phi of psi).
struct TransportResult {
  diskgeom::BlaschkeProduct theta;
  AnalyticSymbol phi;
  diskgeom::Automorphism psi;

  Cx eval_symbol(Cx z) const { return phi.eval(psi.apply(z)); }
};

TransportResult transport(const diskgeom::BlaschkeProduct& theta, const AnalyticSymbol& phi,
                          const diskgeom::Automorphism& psi);

}  // namespace atto::tto
