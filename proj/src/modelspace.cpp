#include "atto/modelspace.hpp"

#include <cmath>

#include "atto/error.hpp"

namespace atto::modelspace {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// (C K_a)(z) = (Theta(z) - Theta(a)) / (z - a), continued through z = a.
// Near the diagonal the difference quotient cancels, so switch to a
// Taylor form there.
Cx conj_kernel_raw_eval(const diskgeom::BlaschkeProduct& theta, Cx a, Cx z) {
  const Cx dz = z - a;
  if (std::abs(dz) < 1e-5) {
    const Cx d1 = theta.eval_derivative(a).second;
    const double h = 1e-4;
    const Cx d2 = (theta.eval_derivative(a + h).second - theta.eval_derivative(a - h).second) / (2.0 * h);
    return d1 + 0.5 * dz * d2;
  }
  return (theta.eval(z) - theta.eval(a)) / dz;
}

}  // namespace

ModelSpace::ModelSpace(diskgeom::BlaschkeProduct theta) : theta_(std::move(theta)) {}

bool ModelSpace::same_space(const ModelSpace& o) const {
  if (theta_.order() != o.theta_.order()) return false;
  if (std::abs(theta_.front() - o.theta_.front()) > 1e-14) return false;
  for (int i = 0; i < theta_.order(); ++i)
    if (std::abs(theta_.zeros()[static_cast<size_t>(i)].value() -
                 o.theta_.zeros()[static_cast<size_t>(i)].value()) > 1e-14)
      return false;
  return true;
}

double ModelSpace::normalization(Cx lambda) const {
  const double t = std::norm(theta_.eval(lambda));
  return std::sqrt((1.0 - std::norm(lambda)) / (1.0 - t));
}

Cx kernel_eval(const KernelVector& v, Cx z) {
  const diskgeom::BlaschkeProduct& theta = v.space.theta();
  const Cx a = v.lambda.value();
  switch (v.kind) {
    case KernelKind::Raw:
      return (1.0 - std::conj(theta.eval(a)) * theta.eval(z)) / (1.0 - std::conj(a) * z);
    case KernelKind::Normalized:
      return v.space.normalization(a) *
             (1.0 - std::conj(theta.eval(a)) * theta.eval(z)) / (1.0 - std::conj(a) * z);
    case KernelKind::Conjugate:
      return v.space.normalization(a) * conj_kernel_raw_eval(theta, a, z);
  }
  return 0.0;
}

Cx kernel_inner(const KernelVector& u, const KernelVector& v) {
  if (!u.space.same_space(v.space))
    throw Error(ErrorCode::SpaceMismatch, "kernel vectors live in different model spaces");

  const bool uc = u.kind == KernelKind::Conjugate;
  const bool vc = v.kind == KernelKind::Conjugate;
  if (uc && vc) {
    // <C k_a, C k_b> = conj(<k_a, k_b>)
    KernelVector un = u, vn = v;
    un.kind = KernelKind::Normalized;
    vn.kind = KernelKind::Normalized;
    return std::conj(kernel_inner(un, vn));
  }
  if (!uc && !vc) {
    // <f, K_b> = f(b), with normalization factors as requested
    const Cx val = kernel_eval(u, v.lambda.value());
    const double nb = v.kind == KernelKind::Normalized ? v.space.normalization(v.lambda.value()) : 1.0;
    return nb * val;
  }
  if (uc && !vc) {
    // conjugate kernel against an analytic kernel: evaluate C k_a at b
    const Cx val = kernel_eval(u, v.lambda.value());
    const double nb = v.kind == KernelKind::Normalized ? v.space.normalization(v.lambda.value()) : 1.0;
    return nb * val;
  }
  // <k-type, C k_b> = conj(<C k_b, k-type>)
  return std::conj(kernel_inner(v, u));
}

QuadratureGrid::QuadratureGrid(int size) : size_(size) {
  if (size_ < 256 || !is_power_of_two(size_))
    throw Error(ErrorCode::BadInput, "grid size must be a power of two >= 256");
  nodes_.resize(static_cast<size_t>(size_));
  const double step = 2.0 * 3.14159265358979323846 / size_;
  for (int m = 0; m < size_; ++m)
    nodes_[static_cast<size_t>(m)] = Cx(std::cos(step * m), std::sin(step * m));
}

Cx circle_inner(std::span<const Cx> f, std::span<const Cx> g) {
  if (f.size() != g.size()) throw Error(ErrorCode::Dimension, "sample lengths differ");
  Cx s = 0.0;
  for (size_t m = 0; m < f.size(); ++m) s += f[m] * std::conj(g[m]);
  return s / static_cast<double>(f.size());
}

TMBasis::TMBasis(ModelSpace space) : space_(std::move(space)) {}

Cx TMBasis::eval(int k, Cx z) const {
  const auto& zeros = space_.theta().zeros();
  const Cx ak = zeros[static_cast<size_t>(k)].value();
  Cx v = std::sqrt(1.0 - std::norm(ak)) / (1.0 - std::conj(ak) * z);
  for (int j = 0; j < k; ++j) {
    const Cx aj = zeros[static_cast<size_t>(j)].value();
    v *= (z - aj) / (1.0 - std::conj(aj) * z);
  }
  return v;
}

Cx TMBasis::eval_conj(int k, Cx z) const {
  const auto& zeros = space_.theta().zeros();
  const int n = size();
  const Cx ak = zeros[static_cast<size_t>(k)].value();
  Cx v = std::sqrt(1.0 - std::norm(ak)) / (1.0 - std::conj(ak) * z);
  for (int j = k + 1; j < n; ++j) {
    const Cx aj = zeros[static_cast<size_t>(j)].value();
    v *= (z - aj) / (1.0 - std::conj(aj) * z);
  }
  return space_.theta().front() * v;
}

std::vector<Cx> TMBasis::sample(int k, const QuadratureGrid& grid) const {
  std::vector<Cx> s(static_cast<size_t>(grid.size()));
  for (int m = 0; m < grid.size(); ++m) s[static_cast<size_t>(m)] = eval(k, grid.node(m));
  return s;
}

CVector tm_coords(const ModelSpace& ms, const KernelVector& v) {
  if (!ms.same_space(v.space))
    throw Error(ErrorCode::SpaceMismatch, "kernel vector lives in a different model space");
  const int n = ms.dim();
  const TMBasis basis(ms);
  const Cx a = v.lambda.value();
  CVector c(n);
  switch (v.kind) {
    case KernelKind::Raw:
      // <K_a, e_k> = conj(e_k(a))
      for (int k = 0; k < n; ++k) c[k] = std::conj(basis.eval(k, a));
      break;
    case KernelKind::Normalized:
      for (int k = 0; k < n; ++k) c[k] = ms.normalization(a) * std::conj(basis.eval(k, a));
      break;
    case KernelKind::Conjugate:
      // <C k_a, e_k> = <C e_k, k_a> = n_a (C e_k)(a)
      for (int k = 0; k < n; ++k) c[k] = ms.normalization(a) * basis.eval_conj(k, a);
      break;
  }
  return c;
}

CMatrix conjugation_matrix(const ModelSpace& ms, const TMBasis& basis, const QuadratureGrid& grid) {
  const int n = ms.dim();
  const int nn = grid.size();

  std::vector<std::vector<Cx>> e(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) e[static_cast<size_t>(k)] = basis.sample(k, grid);

  std::vector<Cx> theta_b(static_cast<size_t>(nn));
  for (int m = 0; m < nn; ++m) theta_b[static_cast<size_t>(m)] = ms.theta().eval(grid.node(m));

  CMatrix s(n, n);
  std::vector<Cx> cej(static_cast<size_t>(nn));
  for (int j = 0; j < n; ++j) {
    // (C e_j)(z) = conj(e_j(z) z) Theta(z) on the boundary
    for (int m = 0; m < nn; ++m)
      cej[static_cast<size_t>(m)] =
          std::conj(e[static_cast<size_t>(j)][static_cast<size_t>(m)] * grid.node(m)) *
          theta_b[static_cast<size_t>(m)];
    for (int i = 0; i < n; ++i) s(i, j) = circle_inner(cej, e[static_cast<size_t>(i)]);
  }
  return s;
}

CMatrix tm_change_of_basis(const ModelSpace& from, const ModelSpace& to, const QuadratureGrid& grid) {
  if (from.dim() != to.dim()) throw Error(ErrorCode::SpaceMismatch, "orders differ");
  const int n = from.dim();
  TMBasis bf(from), bt(to);
  CMatrix w(n, n);
  for (int j = 0; j < n; ++j) {
    const std::vector<Cx> ej = bf.sample(j, grid);
    for (int i = 0; i < n; ++i) w(i, j) = circle_inner(ej, bt.sample(i, grid));
  }
  return w;
}

}  // namespace atto::modelspace
