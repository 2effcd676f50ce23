#include "atto/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "atto/error.hpp"

namespace atto::numkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
  double c = 1.0;
  Cx s = 0.0;
};

// [c, s; -conj(s), c] * (f, g) = (r, 0)
Givens make_givens(Cx f, Cx g) {
  Givens rot;
  const double af = std::abs(f);
  const double ag = std::abs(g);
  if (ag == 0.0) return rot;
  if (af == 0.0) {
    rot.c = 0.0;
    rot.s = std::conj(g) / ag;
    return rot;
  }
  const double d = std::sqrt(af * af + ag * ag);
  rot.c = af / d;
  rot.s = (f / af) * std::conj(g) / d;
  return rot;
}

void rot_rows(CMatrix& m, int k, const Givens& g, int col_lo, int col_hi) {
  for (int j = col_lo; j <= col_hi; ++j) {
    const Cx a = m(k, j);
    const Cx b = m(k + 1, j);
    m(k, j) = g.c * a + g.s * b;
    m(k + 1, j) = -std::conj(g.s) * a + g.c * b;
  }
}

// apply G^* from the right on columns k, k+1
void rot_cols(CMatrix& m, int k, const Givens& g, int row_lo, int row_hi) {
  for (int i = row_lo; i <= row_hi; ++i) {
    const Cx a = m(i, k);
    const Cx b = m(i, k + 1);
    m(i, k) = g.c * a + std::conj(g.s) * b;
    m(i, k + 1) = -g.s * a + g.c * b;
  }
}

// Householder reduction to upper Hessenberg form; accumulates Q if given.
void hessenberg(CMatrix& h, CMatrix* q) {
  const int n = h.rows();
  for (int k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm <= kEps * h.norm_fro()) continue;

    const Cx x0 = h(k + 1, k);
    const Cx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Cx(1.0);
    const Cx alpha = -phase * xnorm;

    std::vector<Cx> v(static_cast<size_t>(n), Cx(0.0));
    v[static_cast<size_t>(k + 1)] = x0 - alpha;
    for (int i = k + 2; i < n; ++i) v[static_cast<size_t>(i)] = h(i, k);
    double vnorm = 0.0;
    for (const Cx& c : v) vnorm += std::norm(c);
    if (vnorm <= 0.0) continue;
    const double beta = 2.0 / vnorm;

    // h <- (I - beta v v^*) h
    for (int j = 0; j < n; ++j) {
      Cx dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += std::conj(v[static_cast<size_t>(i)]) * h(i, j);
      dot *= beta;
      for (int i = k + 1; i < n; ++i) h(i, j) -= v[static_cast<size_t>(i)] * dot;
    }
    // h <- h (I - beta v v^*)
    for (int i = 0; i < n; ++i) {
      Cx dot = 0.0;
      for (int j = k + 1; j < n; ++j) dot += h(i, j) * v[static_cast<size_t>(j)];
      dot *= beta;
      for (int j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[static_cast<size_t>(j)]);
    }
    if (q != nullptr) {
      for (int i = 0; i < n; ++i) {
        Cx dot = 0.0;
        for (int j = k + 1; j < n; ++j) dot += (*q)(i, j) * v[static_cast<size_t>(j)];
        dot *= beta;
        for (int j = k + 1; j < n; ++j) (*q)(i, j) -= dot * std::conj(v[static_cast<size_t>(j)]);
      }
    }
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
    h(k + 1, k) = alpha;
  }
}

Cx wilkinson_shift(const CMatrix& h, int hi) {
  const Cx a = h(hi - 1, hi - 1);
  const Cx b = h(hi - 1, hi);
  const Cx c = h(hi, hi - 1);
  const Cx d = h(hi, hi);
  const Cx t = 0.5 * (a + d);
  const Cx disc = std::sqrt(t * t - (a * d - b * c));
  const Cx l1 = t + disc;
  const Cx l2 = t - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

// Shifted QR on a Hessenberg matrix; converges it to upper triangular.
// Accumulates the similarity into q when given.
void qr_iterate(CMatrix& h, CMatrix* q) {
  const int n = h.rows();
  const double hnorm = std::max(h.norm_fro(), kEps);
  int hi = n - 1;
  int total = 0;
  int since_deflation = 0;
  const int max_total = 80 * std::max(n, 4);

  while (hi > 0) {
    // set negligible subdiagonals to zero
    for (int k = 0; k < hi; ++k) {
      double ref = std::abs(h(k, k)) + std::abs(h(k + 1, k + 1));
      if (ref == 0.0) ref = hnorm;
      if (std::abs(h(k + 1, k)) <= kEps * ref) h(k + 1, k) = 0.0;
    }
    if (h(hi, hi - 1) == Cx(0.0)) {
      --hi;
      since_deflation = 0;
      continue;
    }
    int lo = hi;
    while (lo > 0 && h(lo, lo - 1) != Cx(0.0)) --lo;

    if (++total > max_total) throw Error(ErrorCode::NonConverged, "QR iteration stalled");
    ++since_deflation;

    Cx sigma = wilkinson_shift(h, hi);
    if (since_deflation % 16 == 0) {
      sigma = h(hi, hi) + Cx(0.75, 0.3) * std::abs(h(hi, hi - 1));
    }

    for (int i = lo; i <= hi; ++i) h(i, i) -= sigma;
    std::vector<Givens> rots;
    rots.reserve(static_cast<size_t>(hi - lo));
    for (int k = lo; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot_rows(h, k, g, k, n - 1);
      h(k + 1, k) = 0.0;
      rots.push_back(g);
    }
    for (int k = lo; k < hi; ++k) {
      const Givens& g = rots[static_cast<size_t>(k - lo)];
      rot_cols(h, k, g, 0, std::min(k + 2, n - 1));
      if (q != nullptr) rot_cols(*q, k, g, 0, n - 1);
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += sigma;
  }
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) h(i, j) = 0.0;
}

bool value_less(const Cx& a, const Cx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Swap diagonal entries k, k+1 of a lower-triangular t by a unitary
// similarity; u (if given) accumulates the rotation on the right.
void swap_adjacent(CMatrix& t, CMatrix* u, int k) {
  const int n = t.rows();
  const Cx a = t(k, k);
  const Cx b = t(k + 1, k + 1);
  const Cx c = t(k + 1, k);
  const double scale = std::abs(a) + std::abs(b) + std::abs(c);
  Cx v1 = std::conj(c);
  Cx v2 = std::conj(b - a);
  const double vn = std::sqrt(std::norm(v1) + std::norm(v2));
  Givens g;
  if (vn <= kEps * std::max(scale, 1.0)) {
    // nearly scalar block: a plain transposition
    g.c = 0.0;
    g.s = 1.0;
  } else {
    // first column of the rotation is the eigenvector of b
    g.c = 0.0;
    v1 /= vn;
    v2 /= vn;
    // rotation with columns (v1, v2), (-conj(v2), conj(v1)) equals
    // [c, s; -conj(s), c]^* with c = conj(v1)... express via rot helpers:
    // G^* rows:  [conj(v1), conj(v2); -v2, v1]
    // Use explicit application below instead of the Givens helpers.
  }

  auto apply = [&](Cx w1, Cx w2) {
    // G columns: (w1, w2) and (-conj(w2), conj(w1)); apply t <- G^* t G, u <- u G
    for (int j = 0; j < n; ++j) {  // rows k, k+1 from the left by G^*
      const Cx r1 = t(k, j);
      const Cx r2 = t(k + 1, j);
      t(k, j) = std::conj(w1) * r1 + std::conj(w2) * r2;
      t(k + 1, j) = -w2 * r1 + w1 * r2;
    }
    for (int i = 0; i < n; ++i) {  // columns k, k+1 from the right by G
      const Cx c1 = t(i, k);
      const Cx c2 = t(i, k + 1);
      t(i, k) = c1 * w1 + c2 * w2;
      t(i, k + 1) = -c1 * std::conj(w2) + c2 * std::conj(w1);
    }
    if (u != nullptr) {
      for (int i = 0; i < u->rows(); ++i) {
        const Cx c1 = (*u)(i, k);
        const Cx c2 = (*u)(i, k + 1);
        (*u)(i, k) = c1 * w1 + c2 * w2;
        (*u)(i, k + 1) = -c1 * std::conj(w2) + c2 * std::conj(w1);
      }
    }
  };

  if (vn <= kEps * std::max(scale, 1.0)) {
    apply(Cx(0.0), Cx(1.0));
  } else {
    apply(v1, v2);
  }
  t(k, k + 1) = 0.0;
}

}  // namespace

SchurForm schur_triangularize(const CMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::Dimension, "schur requires a square matrix");
  const int n = m.rows();
  SchurForm s;
  s.unitary = CMatrix::identity(n);
  s.triangular = m;
  if (n > 1) {
    hessenberg(s.triangular, &s.unitary);
    qr_iterate(s.triangular, &s.unitary);
  }

  // flip upper triangular to lower triangular: T_low = J T J, U = Q J
  CMatrix tl(n, n);
  CMatrix ul(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) tl(i, j) = s.triangular(n - 1 - i, n - 1 - j);
    for (int j = 0; j < n; ++j) ul(i, j) = s.unitary(i, n - 1 - j);
  }
  s.triangular = tl;
  s.unitary = ul;

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return value_less(s.triangular(a, a), s.triangular(b, b));
  });
  schur_reorder(s, order);
  return s;
}

void schur_reorder(SchurForm& s, const std::vector<int>& order) {
  const int n = s.triangular.rows();
  std::vector<int> cur(static_cast<size_t>(n));  // cur[slot] = original index
  std::iota(cur.begin(), cur.end(), 0);
  for (int k = 0; k < n; ++k) {
    int p = k;
    while (cur[static_cast<size_t>(p)] != order[static_cast<size_t>(k)]) ++p;
    for (; p > k; --p) {
      swap_adjacent(s.triangular, &s.unitary, p - 1);
      std::swap(cur[static_cast<size_t>(p - 1)], cur[static_cast<size_t>(p)]);
    }
  }
}

EigenSystem eig_dense(const CMatrix& m, double tol) {
  if (!m.square()) throw Error(ErrorCode::Dimension, "eig requires a square matrix");
  const int n = m.rows();
  if (n > 16) throw Error(ErrorCode::Dimension, "eig_dense is limited to n <= 16");
  const double mnorm = std::max(m.norm_fro(), kEps);

  EigenSystem sys;
  if (n == 1) {
    sys.values = {m(0, 0)};
    CVector v(1);
    v[0] = 1.0;
    sys.vectors = {v};
    sys.min_gap = std::numeric_limits<double>::infinity();
    sys.distinct = true;
    return sys;
  }

  CMatrix h = m;
  hessenberg(h, nullptr);
  qr_iterate(h, nullptr);
  sys.values.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) sys.values[static_cast<size_t>(i)] = h(i, i);
  std::sort(sys.values.begin(), sys.values.end(), value_less);

  sys.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      sys.min_gap = std::min(sys.min_gap, std::abs(sys.values[static_cast<size_t>(i)] -
                                                   sys.values[static_cast<size_t>(j)]));
  sys.distinct = sys.min_gap > 1e-8 * mnorm;

  // Inverse iteration per eigenvalue. For clustered eigenvalues the
  // attainable residual degrades with the gap; widen acceptance there
  // rather than fail (the caller sees the min_gap flag).
  const double accept = std::max(tol * mnorm, 4.0 * std::min(sys.min_gap, 1.0) + 64.0 * kEps * mnorm);
  sys.vectors.resize(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e) {
    const Cx lambda = sys.values[static_cast<size_t>(e)];
    CMatrix b = m;
    for (int i = 0; i < n; ++i) b(i, i) -= lambda;
    LuFactors lu(std::move(b), 32.0 * kEps * mnorm);

    CVector best(n);
    double best_res = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= n && best_res > tol * mnorm; ++attempt) {
      CVector v(n);
      if (attempt == 0) {
        for (int i = 0; i < n; ++i) v[i] = Cx(1.0, 0.3 * (i + 1));
      } else {
        v[(attempt - 1 + e) % n] = 1.0;
      }
      v *= 1.0 / v.norm();
      for (int it = 0; it < 4; ++it) {
        v = lu.solve(v);
        const double nv = v.norm();
        if (!(nv > 0.0) || !std::isfinite(nv)) break;
        v *= 1.0 / nv;
        const double res = (m * v - lambda * v).norm();
        if (res < best_res) {
          best_res = res;
          best = v;
        }
        if (res <= tol * mnorm) break;
      }
    }
    if (!(best_res <= accept))
      throw Error(ErrorCode::NonConverged, "inverse iteration residual " + std::to_string(best_res));

    // gauge: first entry of largest modulus made positive real
    int gi = 0;
    double gm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(best[i]);
      if (a > gm * (1.0 + 1e-12)) {
        gm = a;
        gi = i;
      }
    }
    if (gm > 0.0) best *= std::conj(best[gi]) / gm;
    best *= 1.0 / best.norm();
    sys.vectors[static_cast<size_t>(e)] = best;
  }
  return sys;
}

CMatrix cholesky_hermitian(const CMatrix& g, double tol) {
  if (!g.square()) throw Error(ErrorCode::Dimension, "cholesky requires a square matrix");
  const int n = g.rows();
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(g(i, i)));
  if (scale == 0.0) scale = 1.0;

  CMatrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = g(j, j).real();
    for (int k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (d <= tol * scale) throw Error(ErrorCode::NotPositiveDefinite, "pivot " + std::to_string(d));
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      Cx s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / l(j, j).real();
    }
  }
  return l;
}

TakagiForm takagi_factorize(const CMatrix& s_in, double tol) {
  if (!s_in.square()) throw Error(ErrorCode::Dimension, "takagi requires a square matrix");
  const int n = s_in.rows();
  const double snorm = s_in.norm_fro();
  if ((s_in - s_in.transpose()).norm_fro() > tol * std::max(1.0, snorm))
    throw Error(ErrorCode::NotSymmetric, "input is not complex symmetric");

  CMatrix s = 0.5 * (s_in + s_in.transpose());
  CMatrix h = s * s.conj();
  h = 0.5 * (h + h.adjoint());

  // Hermitian: the Schur form is diagonal, columns of U are an
  // orthonormal eigenbasis even with repeated eigenvalues.
  SchurForm es = schur_triangularize(h);
  std::vector<double> sig(static_cast<size_t>(n));
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    sig[static_cast<size_t>(i)] = std::sqrt(std::max(es.triangular(i, i).real(), 0.0));
    idx[static_cast<size_t>(i)] = i;
  }
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return sig[static_cast<size_t>(a)] > sig[static_cast<size_t>(b)];
  });

  TakagiForm tf;
  tf.unitary = CMatrix(n, n);
  tf.diagonal.resize(static_cast<size_t>(n));

  const double smax = std::max(sig[static_cast<size_t>(idx[0])], 1.0);
  auto tau = [&](const CVector& u) {
    CVector cu(n);
    for (int i = 0; i < n; ++i) cu[i] = std::conj(u[i]);
    return s * cu;
  };

  int pos = 0;
  while (pos < n) {
    int end = pos;
    const double s0 = sig[static_cast<size_t>(idx[static_cast<size_t>(pos)])];
    while (end < n &&
           std::abs(sig[static_cast<size_t>(idx[static_cast<size_t>(end)])] - s0) <= 1e-8 * smax)
      ++end;
    const int m = end - pos;

    std::vector<CVector> eigvecs;
    for (int k = pos; k < end; ++k) eigvecs.push_back(es.unitary.col(idx[static_cast<size_t>(k)]));

    std::vector<CVector> chosen;
    if (s0 <= 1e-12 * smax) {
      chosen = eigvecs;  // kernel: any orthonormal basis works
    } else {
      std::vector<CVector> cands;
      for (const CVector& u : eigvecs) {
        CVector t = tau(u);
        t *= 1.0 / s0;
        cands.push_back(u + t);
        CVector d = u - t;
        d *= Cx(0.0, 1.0);
        cands.push_back(d);
      }
      for (const CVector& cand : cands) {
        if (static_cast<int>(chosen.size()) == m) break;
        CVector v = cand;
        for (const CVector& w : chosen) v -= inner(v, w) * w;
        const double nv = v.norm();
        if (nv > 1e-6) {
          v *= 1.0 / nv;
          chosen.push_back(v);
        }
      }
      if (static_cast<int>(chosen.size()) != m)
        throw Error(ErrorCode::NonConverged, "takagi cluster basis incomplete");
    }
    for (int k = 0; k < m; ++k) {
      tf.unitary.set_col(pos + k, chosen[static_cast<size_t>(k)]);
      tf.diagonal[static_cast<size_t>(pos + k)] = s0 <= 1e-12 * smax ? 0.0 : s0;
    }
    pos = end;
  }
  return tf;
}

std::array<Cx, 7> phi_invariants(const CMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3) throw Error(ErrorCode::Dimension, "phi_invariants needs 3x3");
  const CMatrix x = m;
  const CMatrix xs = m.adjoint();
  const CMatrix x2 = x * x;
  const CMatrix xs2 = xs * xs;
  return {
      x.trace(),
      x2.trace(),
      (x2 * x).trace(),
      (xs * x).trace(),
      (xs * x2).trace(),
      (xs2 * x2).trace(),
      (xs * x2 * xs2 * x).trace(),
  };
}

}  // namespace atto::numkit
