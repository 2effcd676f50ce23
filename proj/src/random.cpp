#include "atto/random.hpp"

namespace atto {

CMatrix Rng::haar_unitary(int n) {
  CMatrix a = gaussian_matrix(n, n);
  // modified Gram-Schmidt with the R-diagonal phase fix
  CMatrix q(n, n);
  for (int j = 0; j < n; ++j) {
    CVector v = a.col(j);
    for (int k = 0; k < j; ++k) {
      const CVector qk = q.col(k);
      v -= inner(v, qk) * qk;
    }
    const CVector qk0 = v;
    // re-orthogonalize once for numerical safety
    CVector w = qk0;
    for (int k = 0; k < j; ++k) {
      const CVector qk = q.col(k);
      w -= inner(w, qk) * qk;
    }
    const double nw = w.norm();
    w *= 1.0 / nw;
    // diagonal of R is inner(a_j, q_j); rotate so it is positive
    const Cx d = inner(a.col(j), w);
    const double ad = std::abs(d);
    if (ad > 0.0) w *= d / ad;
    q.set_col(j, w);
  }
  return q;
}

}  // namespace atto
