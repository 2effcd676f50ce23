#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "atto/modelspace.hpp"
#include "atto/random.hpp"

using namespace atto;
using namespace atto::diskgeom;
using namespace atto::modelspace;

namespace {

DiskPoint random_point(Rng& rng, double rmax = 0.9) {
  const double r = rmax * std::sqrt(rng.uniform());
  const double t = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  return DiskPoint(r * std::cos(t), r * std::sin(t));
}

BlaschkeProduct random_blaschke(Rng& rng, int order, double rmax = 0.9) {
  std::vector<DiskPoint> zeros;
  for (int i = 0; i < order; ++i) zeros.push_back(random_point(rng, rmax));
  return BlaschkeProduct(std::move(zeros));
}

std::vector<Cx> sample_kernel(const KernelVector& v, const QuadratureGrid& grid) {
  std::vector<Cx> s(static_cast<size_t>(grid.size()));
  for (int m = 0; m < grid.size(); ++m) s[static_cast<size_t>(m)] = kernel_eval(v, grid.node(m));
  return s;
}

}  // namespace

TEST_CASE("circle_inner: monomials") {
  QuadratureGrid grid(512);
  std::vector<Cx> one(512, Cx(1.0));
  std::vector<Cx> z(512);
  for (int m = 0; m < 512; ++m) z[static_cast<size_t>(m)] = grid.node(m);
  CHECK(std::abs(circle_inner(one, one) - Cx(1.0)) < 1e-15);
  CHECK(std::abs(circle_inner(z, z) - Cx(1.0)) < 1e-14);
  CHECK(std::abs(circle_inner(z, one)) < 1e-15);
}

TEST_CASE("quadrature grid: validation and self-convergence") {
  CHECK_THROWS_AS(QuadratureGrid(100), Error);
  CHECK_THROWS_AS(QuadratureGrid(1000), Error);

  Rng rng(21);
  QuadratureGrid g1(1024), g2(2048);
  for (int trial = 0; trial < 10; ++trial) {
    ModelSpace ms(random_blaschke(rng, 4));
    KernelVector u{ms, random_point(rng), KernelKind::Normalized};
    KernelVector v{ms, random_point(rng), KernelKind::Conjugate};
    const Cx a = circle_inner(sample_kernel(u, g1), sample_kernel(v, g1));
    const Cx b = circle_inner(sample_kernel(u, g2), sample_kernel(v, g2));
    CHECK(std::abs(a - b) < 1e-12);
  }
}

TEST_CASE("kernel_inner: unit norms and the zero-pair metric identity") {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    BlaschkeProduct theta = random_blaschke(rng, 5);
    ModelSpace ms(theta);
    for (const DiskPoint& z : theta.zeros()) {
      KernelVector k{ms, z, KernelKind::Normalized};
      CHECK(std::abs(kernel_inner(k, k) - Cx(1.0)) < 1e-12);
      KernelVector kt{ms, z, KernelKind::Conjugate};
      CHECK(std::abs(kernel_inner(kt, kt) - Cx(1.0)) < 1e-12);
    }
    for (size_t i = 0; i < theta.zeros().size(); ++i)
      for (size_t j = i + 1; j < theta.zeros().size(); ++j) {
        const DiskPoint zi = theta.zeros()[i];
        const DiskPoint zj = theta.zeros()[j];
        KernelVector ki{ms, zi, KernelKind::Normalized};
        KernelVector kj{ms, zj, KernelKind::Normalized};
        const double lhs = std::norm(kernel_inner(ki, kj));
        const double r = rho(zi, zj);
        CHECK(std::abs(lhs + r * r - 1.0) < 1e-12);
      }
  }
}

TEST_CASE("kernel_inner: closed form matches quadrature for all kind pairs") {
  Rng rng(23);
  QuadratureGrid grid;
  const KernelKind kinds[] = {KernelKind::Raw, KernelKind::Normalized, KernelKind::Conjugate};
  for (int trial = 0; trial < 12; ++trial) {
    ModelSpace ms(random_blaschke(rng, 3 + trial % 3));
    const DiskPoint a = random_point(rng);
    const DiskPoint b = random_point(rng);
    for (KernelKind ku : kinds)
      for (KernelKind kv : kinds) {
        KernelVector u{ms, a, ku};
        KernelVector v{ms, b, kv};
        const Cx closed = kernel_inner(u, v);
        const Cx quad = circle_inner(sample_kernel(u, grid), sample_kernel(v, grid));
        CHECK(std::abs(closed - quad) < 1e-10);
      }
  }
}

TEST_CASE("kernel_inner: space mismatch is rejected") {
  Rng rng(24);
  ModelSpace a(random_blaschke(rng, 3));
  ModelSpace b(random_blaschke(rng, 3));
  KernelVector u{a, random_point(rng), KernelKind::Normalized};
  KernelVector v{b, random_point(rng), KernelKind::Normalized};
  CHECK_THROWS_AS(kernel_inner(u, v), Error);
}

TEST_CASE("tm basis: Gram matrix is the identity") {
  Rng rng(25);
  QuadratureGrid grid;
  for (int trial = 0; trial < 12; ++trial) {
    const int order = 2 + trial % 7;  // up to 8
    ModelSpace ms(random_blaschke(rng, order));
    TMBasis basis(ms);
    std::vector<std::vector<Cx>> e;
    for (int k = 0; k < order; ++k) e.push_back(basis.sample(k, grid));
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j) {
        const Cx g = circle_inner(e[static_cast<size_t>(i)], e[static_cast<size_t>(j)]);
        CHECK(std::abs(g - (i == j ? Cx(1.0) : Cx(0.0))) < 1e-10);
      }
  }
}

TEST_CASE("tm basis: reproducing property against raw kernels") {
  Rng rng(26);
  QuadratureGrid grid;
  ModelSpace ms(random_blaschke(rng, 4));
  TMBasis basis(ms);
  for (int trial = 0; trial < 20; ++trial) {
    const DiskPoint mu = random_point(rng);
    KernelVector kmu{ms, mu, KernelKind::Raw};
    const std::vector<Cx> kms = sample_kernel(kmu, grid);
    for (int k = 0; k < 4; ++k) {
      const Cx lhs = circle_inner(basis.sample(k, grid), kms);
      CHECK(std::abs(lhs - basis.eval(k, mu.value())) < 1e-10);
    }
  }
}

TEST_CASE("tm_coords: monomial-prefix space sends the constant to e_1") {
  // Theta = z^2 (z - r)/(1 - r z); K_0 is the constant function 1
  BlaschkeProduct theta({DiskPoint(0.0, 0.0), DiskPoint(0.0, 0.0), DiskPoint(0.6, 0.0)});
  ModelSpace ms(theta);
  CVector c = tm_coords(ms, KernelVector{ms, DiskPoint(0.0, 0.0), KernelKind::Raw});
  CHECK(std::abs(c[0] - Cx(1.0)) < 1e-14);
  CHECK(std::abs(c[1]) < 1e-14);
  CHECK(std::abs(c[2]) < 1e-14);
}

TEST_CASE("tm_coords: unit norm at zeros and pointwise reconstruction") {
  Rng rng(27);
  for (int trial = 0; trial < 8; ++trial) {
    BlaschkeProduct theta = random_blaschke(rng, 4);
    ModelSpace ms(theta);
    TMBasis basis(ms);
    for (const DiskPoint& z : theta.zeros()) {
      const CVector c = tm_coords(ms, KernelVector{ms, z, KernelKind::Normalized});
      CHECK(std::abs(c.norm() - 1.0) < 1e-12);
    }
    const KernelKind kinds[] = {KernelKind::Raw, KernelKind::Normalized, KernelKind::Conjugate};
    for (KernelKind kind : kinds) {
      KernelVector v{ms, random_point(rng), kind};
      const CVector c = tm_coords(ms, v);
      for (int pt = 0; pt < 20; ++pt) {
        const Cx z = random_point(rng, 0.8).value();
        Cx rec = 0.0;
        for (int k = 0; k < 4; ++k) rec += c[k] * basis.eval(k, z);
        CHECK(std::abs(rec - kernel_eval(v, z)) < 1e-10);
      }
    }
  }
}

TEST_CASE("conjugation matrix: monomial space gives the flip") {
  ModelSpace ms(BlaschkeProduct::monomial(4));
  CMatrix s = conjugation_matrix(ms, TMBasis(ms));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(s(i, j) - (i + j == 3 ? Cx(1.0) : Cx(0.0))) < 1e-12);
}

TEST_CASE("conjugation matrix: symmetric, unitary, involutive, antiunitary") {
  Rng rng(28);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 4;
    ModelSpace ms(random_blaschke(rng, n));
    CMatrix s = conjugation_matrix(ms, TMBasis(ms));
    CHECK((s - s.transpose()).norm_fro() < 1e-10);
    CHECK((s * s.conj() - CMatrix::identity(n)).norm_fro() < 1e-10);

    // involution and antiunitarity in coordinates
    auto apply_c = [&](const CVector& x) {
      CVector cx(n);
      for (int i = 0; i < n; ++i) cx[i] = std::conj(x[i]);
      return s * cx;
    };
    CVector x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.normal_cx();
      y[i] = rng.normal_cx();
    }
    CHECK((apply_c(apply_c(x)) - x).norm() < 1e-10 * x.norm());
    CHECK(std::abs(inner(apply_c(x), apply_c(y)) - inner(y, x)) < 1e-10 * x.norm() * y.norm());
  }
}
