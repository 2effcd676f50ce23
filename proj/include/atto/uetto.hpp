#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atto/diskgeom.hpp"
#include "atto/linalg.hpp"
#include "atto/tto.hpp"

namespace atto::uetto {

/// Explicit witness (Theta, phi, U) for M being unitarily equivalent to
/// an analytic truncated Toeplitz operator. `zeros` lists z_1..z_{n-1};
/// the last zero of Theta is always 0. Main-theorem certificates carry
/// distinct nonzero z_i; the Schur-route witnesses for repeated
/// eigenvalues carry repeated zeros (Theta = z^n and relatives) and are
/// rebuilt through the TM-quadrature route when verified.
struct Certificate {
  std::vector<Cx> zeros;
  tto::AnalyticSymbol symbol;
  CMatrix unitary;
  std::vector<Cx> phases;

  int n() const { return unitary.rows(); }
  std::vector<diskgeom::DiskPoint> full_zeros() const;
  diskgeom::BlaschkeProduct theta() const;
};

enum class Verdict { Yes, No, Inconclusive };

const char* verdict_name(Verdict v);

struct Violation {
  int i = 0;
  int j = 0;
  Cx lhs;
  Cx rhs;
  std::string kind;
};

struct Decision {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Certificate> certificate;
  std::optional<Violation> violation;
  std::string reason;
};

struct VerifyReport {
  bool pass = false;
  double unitary_residual = 0.0;
  double equivalence_residual = 0.0;  // relative to ||M||
  double spectrum_residual = 0.0;
  double phi_residual = 0.0;  // n = 3 only
  std::string detail;
};

/// Main-theorem test with certificate construction.
Decision decide(const CMatrix& m, double tol = 1e-8);

/// Core of the test on an eigensystem in caller-given order; the last
/// vector is the distinguished one. decide() passes the sorted system.
Decision decide_from_eigensystem(const CMatrix& m, const std::vector<Cx>& values,
                                 const std::vector<CVector>& vectors, double tol = 1e-8);

/// alpha_i = <x_i,x_k>/<y_i,y_k> after checking the anchored triple
/// conditions; guarantees <x_i,x_j> = alpha_i conj(alpha_j) <y_i,y_j>.
std::vector<Cx> recover_phases(const std::vector<CVector>& xs, const std::vector<CVector>& ys,
                               int anchor, double tol = 1e-8);

/// Structural check of a certificate against M; never throws on a mere
/// numeric mismatch.
VerifyReport verify(const CMatrix& m, const Certificate& cert, double tol = 1e-7);

/// 2x2 classification: yes iff scalar or non-normal.
Decision classify_2x2(const CMatrix& m, double tol = 1e-8);

struct DetTest3 {
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};
DetTest3 det_test_3x3(const CMatrix& m, double tol = 1e-8);

struct TraceTest3 {
  bool pass = false;
  Cx lhs;
  Cx rhs;
  double residual = 0.0;
  double threshold = 0.0;
};
TraceTest3 trace_test_3x3(const CMatrix& m, double tol = 1e-8);

struct Summand {
  CMatrix block;
  std::string kind;  // "scalar", "atto_2x2", "atto"
  std::optional<Certificate> certificate;
};

struct TTOMRealization {
  double r = 0.0;
  Cx alpha;
  Cx beta;
  Cx shift;  // M corresponds to shift*I + scale*(canonical frame)
  Cx scale;
  CMatrix matrix;  // realized canonical matrix
  double residual = 0.0;
};

struct Decomposition {
  int case_id = 0;  // number of distinct eigenvalues
  std::string subcase;
  std::vector<Summand> summands;
  CMatrix unitary;  // Q with Q M Q^* block diagonal in summand order
  double residual = 0.0;
  std::optional<TTOMRealization> ttom;
  std::optional<Certificate> certificate;  // single-operator witness when available
};

/// Direct-sum decomposition of a UECSM 3x3 matrix into truncated
/// Toeplitz summands, with explicit analytic witnesses where the
/// classification provides them.
Decomposition decompose_3x3(const CMatrix& m, double tol = 1e-8);

struct CsmIndexReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};
struct CsmReport {
  std::vector<CsmIndexReport> index;
  bool all_pass = false;
  bool sufficient = false;  // the condition is also sufficient for n <= 3
};
CsmReport necessary_csm(const CMatrix& m, double tol = 1e-8);

struct CounterexampleFamily {
  int n = 2;
  double g = 0.5;
  std::vector<Cx> eigenvalues;
};
struct FamilyMatrices {
  CMatrix m;
  CMatrix x;
  CMatrix y;
};
/// Equal-correlation eigenvector family: X = sqrt(G) columnwise unit,
/// M = X D X^{-1}, Y the normalized inverse columns.
FamilyMatrices gen_family(const CounterexampleFamily& fam);

}  // namespace atto::uetto
