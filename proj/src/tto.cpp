#include "atto/tto.hpp"

#include <algorithm>
#include <cmath>

#include "atto/error.hpp"
#include "atto/numkit.hpp"

namespace atto::tto {

AnalyticSymbol::AnalyticSymbol(std::vector<Cx> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(Cx(0.0));
}

Cx AnalyticSymbol::eval(Cx z) const {
  Cx v = 0.0;
  for (size_t k = coeffs_.size(); k-- > 0;) v = v * z + coeffs_[k];
  return v;
}

TrigSymbol TrigSymbol::from_analytic(const AnalyticSymbol& p) {
  std::map<int, Cx> c;
  for (int k = 0; k <= p.degree(); ++k) {
    const Cx v = p.coeffs()[static_cast<size_t>(k)];
    if (std::abs(v) > 0.0) c[k] = v;
  }
  return TrigSymbol(std::move(c));
}

Cx TrigSymbol::eval_boundary(Cx z) const {
  Cx v = 0.0;
  for (const auto& [k, c] : coeffs_) {
    if (k >= 0)
      v += c * std::pow(z, k);
    else
      v += c * std::pow(std::conj(z), -k);  // z^{-1} = conj(z) on the circle
  }
  return v;
}

TrigSymbol TrigSymbol::conjugated() const {
  std::map<int, Cx> c;
  for (const auto& [k, v] : coeffs_) c[-k] = std::conj(v);
  return TrigSymbol(std::move(c));
}

TrigSymbol operator+(const TrigSymbol& a, const TrigSymbol& b) {
  std::map<int, Cx> c = a.coeffs();
  for (const auto& [k, v] : b.coeffs()) c[k] += v;
  return TrigSymbol(std::move(c));
}

AnalyticSymbol lagrange_symbol(std::span<const diskgeom::DiskPoint> nodes,
                               std::span<const Cx> values) {
  const size_t n = nodes.size();
  if (n == 0 || values.size() != n) throw Error(ErrorCode::BadInput, "empty or mismatched data");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (std::abs(nodes[i].value() - nodes[j].value()) <= 1e-12)
        throw Error(ErrorCode::DuplicateNodes, "interpolation nodes coincide");

  // Newton divided differences
  std::vector<Cx> coef(values.begin(), values.end());
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i)
      coef[i] = (coef[i] - coef[i - 1]) / (nodes[i].value() - nodes[i - level].value());

  // expand Newton form to monomial coefficients
  std::vector<Cx> poly{coef[n - 1]};
  for (size_t k = n - 1; k-- > 0;) {
    const Cx zk = nodes[k].value();
    poly.insert(poly.begin(), Cx(0.0));
    for (size_t i = 0; i + 1 < poly.size(); ++i) poly[i] -= zk * poly[i + 1];
    poly[0] += coef[k];
  }
  return AnalyticSymbol(std::move(poly));
}

CMatrix conjugate_kernel_coordinates(const diskgeom::BlaschkeProduct& theta) {
  if (!theta.zeros_distinct(1e-10))
    throw Error(ErrorCode::RepeatedZeros, "eigenbasis route needs distinct zeros");
  const int n = theta.order();
  std::vector<Cx> z(static_cast<size_t>(n));
  std::vector<double> p(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    z[static_cast<size_t>(i)] = theta.zeros()[static_cast<size_t>(i)].value();
    p[static_cast<size_t>(i)] = 1.0 - std::norm(z[static_cast<size_t>(i)]);
  }

  // Gram of the conjugate kernels, arranged so that the coordinate
  // vectors are the columns of L^*.
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = std::sqrt(p[static_cast<size_t>(i)] * p[static_cast<size_t>(j)]) /
                (1.0 - z[static_cast<size_t>(j)] * std::conj(z[static_cast<size_t>(i)]));

  return numkit::cholesky_hermitian(g, 1e-14).adjoint();
}

TTOMatrix build_atto_eigenbasis(const diskgeom::BlaschkeProduct& theta, const AnalyticSymbol& phi) {
  const int n = theta.order();
  const CMatrix y = conjugate_kernel_coordinates(theta);

  CMatrix yd = y;
  for (int j = 0; j < n; ++j) {
    const Cx fj = phi.eval(theta.zeros()[static_cast<size_t>(j)].value());
    for (int i = 0; i < n; ++i) yd(i, j) *= fj;
  }
  CMatrix a = solve_upper_right(yd, y);
  return TTOMatrix{std::move(a), modelspace::ModelSpace(theta), BasisTag::KernelOrthonormalized};
}

TTOMatrix build_tto_tm_quadrature(const diskgeom::BlaschkeProduct& theta, const TrigSymbol& phi,
                                  const modelspace::QuadratureGrid& grid) {
  const int n = theta.order();
  modelspace::ModelSpace space(theta);
  modelspace::TMBasis basis(space);

  std::vector<std::vector<Cx>> e(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) e[static_cast<size_t>(k)] = basis.sample(k, grid);

  std::vector<Cx> phib(static_cast<size_t>(grid.size()));
  for (int m = 0; m < grid.size(); ++m)
    phib[static_cast<size_t>(m)] = phi.eval_boundary(grid.node(m));

  CMatrix a(n, n);
  std::vector<Cx> fj(static_cast<size_t>(grid.size()));
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < grid.size(); ++m)
      fj[static_cast<size_t>(m)] = phib[static_cast<size_t>(m)] * e[static_cast<size_t>(j)][static_cast<size_t>(m)];
    for (int i = 0; i < n; ++i) a(i, j) = modelspace::circle_inner(fj, e[static_cast<size_t>(i)]);
  }
  return TTOMatrix{std::move(a), std::move(space), BasisTag::TM};
}

TransportResult transport(const diskgeom::BlaschkeProduct& theta, const AnalyticSymbol& phi,
                          const diskgeom::Automorphism& psi) {
  const diskgeom::Automorphism inv = psi.inverse();
  std::vector<diskgeom::DiskPoint> zeros;
  zeros.reserve(static_cast<size_t>(theta.order()));
  for (const diskgeom::DiskPoint& zi : theta.zeros()) zeros.push_back(inv.apply(zi));

  // fix the front factor by matching values at a probe point away from
  // the transported zeros
  diskgeom::BlaschkeProduct plain(zeros, Cx(1.0));
  const Cx probes[] = {Cx(0.0), Cx(0.31, 0.17), Cx(-0.43, 0.11), Cx(0.12, -0.52)};
  Cx front(1.0);
  double best = -1.0;
  for (const Cx& pr : probes) {
    const Cx denom = plain.eval(pr);
    if (std::abs(denom) > best) {
      best = std::abs(denom);
      front = theta.eval(psi.apply(pr)) / denom;
    }
  }
  front /= std::abs(front);
  return TransportResult{diskgeom::BlaschkeProduct(std::move(zeros), front), phi, psi};
}

}  // namespace atto::tto
