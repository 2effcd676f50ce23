#pragma once

#include <span>
#include <vector>

#include "atto/diskgeom.hpp"
#include "atto/linalg.hpp"

namespace atto::modelspace {

/// The model space attached to a finite Blaschke product; its dimension
/// is the order of the product.
class ModelSpace {
 public:
  explicit ModelSpace(diskgeom::BlaschkeProduct theta);

  int dim() const { return theta_.order(); }
  const diskgeom::BlaschkeProduct& theta() const { return theta_; }
  bool same_space(const ModelSpace& o) const;

  /// normalization factor sqrt((1-|lambda|^2)/(1-|Theta(lambda)|^2))
  double normalization(Cx lambda) const;

 private:
  diskgeom::BlaschkeProduct theta_;
};

enum class KernelKind { Raw, Normalized, Conjugate };

struct KernelVector {
  ModelSpace space;
  diskgeom::DiskPoint lambda;
  KernelKind kind = KernelKind::Normalized;
};

/// Pointwise value of a kernel vector at z in the closed disk.
Cx kernel_eval(const KernelVector& v, Cx z);

/// Closed-form inner product, linear in the first argument. Conjugate
/// kinds go through <Cf, Cg> = <g, f>.
Cx kernel_inner(const KernelVector& u, const KernelVector& v);

/// Equispaced boundary nodes exp(2*pi*i*m/N); N a power of two >= 256.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int size = 2048);

  int size() const { return size_; }
  Cx node(int m) const { return nodes_[static_cast<size_t>(m)]; }
  std::span<const Cx> nodes() const { return nodes_; }

 private:
  int size_;
  std::vector<Cx> nodes_;
};

/// Trapezoid value of (1/2pi) \int f conj(g) over the boundary samples.
Cx circle_inner(std::span<const Cx> f, std::span<const Cx> g);

/// Takenaka-Malmquist orthonormal basis ordered by the zeros of Theta.
class TMBasis {
 public:
  explicit TMBasis(ModelSpace space);

  int size() const { return space_.dim(); }
  const ModelSpace& space() const { return space_; }

  Cx eval(int k, Cx z) const;
  Cx eval_conj(int k, Cx z) const;  // (C e_k)(z), also a rational function

  std::vector<Cx> sample(int k, const QuadratureGrid& grid) const;

 private:
  ModelSpace space_;
};

/// Coordinates of a kernel vector in the TM basis (closed form via the
/// reproducing property).
CVector tm_coords(const ModelSpace& ms, const KernelVector& v);

/// Matrix S with S_ij = <C e_j, e_i> computed by quadrature; C acts in
/// coordinates as x -> S conj(x). S is symmetric unitary, S conj(S) = I.
CMatrix conjugation_matrix(const ModelSpace& ms, const TMBasis& basis,
                           const QuadratureGrid& grid = QuadratureGrid());

/// Unitary change of coordinates W_ij = <e_j^{from}, e_i^{to}> between TM
/// bases of the same inner function under two zero orderings.
CMatrix tm_change_of_basis(const ModelSpace& from, const ModelSpace& to,
                           const QuadratureGrid& grid = QuadratureGrid());

}  // namespace atto::modelspace
