#pragma once

#include <array>
#include <vector>

#include "atto/linalg.hpp"

namespace atto::numkit {

/// Eigenvalues sorted lexicographically by (re, im), unit eigenvectors
/// gauge-fixed so the first entry of largest modulus is positive real.
struct EigenSystem {
  std::vector<Cx> values;
  std::vector<CVector> vectors;
  double min_gap = 0.0;
  bool distinct = false;  // min_gap > 1e-8 * ||M||
};

/// M = unitary * triangular * unitary^*, triangular is lower triangular
/// with the eigenvalues on the diagonal.
struct SchurForm {
  CMatrix unitary;
  CMatrix triangular;
};

/// S = unitary * diag * unitary^t for complex symmetric S; diag entries
/// are the singular values in descending order.
struct TakagiForm {
  CMatrix unitary;
  std::vector<double> diagonal;
};

EigenSystem eig_dense(const CMatrix& m, double tol = 1e-10);

SchurForm schur_triangularize(const CMatrix& m);

/// Reorder the diagonal of a lower-triangular Schur form so that entry
/// `order[k]` of the current diagonal lands in slot k, by stable adjacent
/// swaps with 2x2 unitary similarities.
void schur_reorder(SchurForm& s, const std::vector<int>& order);

CMatrix cholesky_hermitian(const CMatrix& g, double tol = 1e-12);

TakagiForm takagi_factorize(const CMatrix& s, double tol = 1e-10);

/// The seven trace words (tr X, tr X^2, tr X^3, tr X*X, tr X*X^2,
/// tr X*^2X^2, tr X*X^2X*^2X) that separate 3x3 unitary equivalence
/// classes (Pearcy-Sibirskii).
std::array<Cx, 7> phi_invariants(const CMatrix& m);

}  // namespace atto::numkit
