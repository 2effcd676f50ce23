#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "atto/numkit.hpp"
#include "atto/random.hpp"
#include "atto/uetto.hpp"

using namespace atto;
using namespace atto::diskgeom;
using namespace atto::uetto;

namespace {

DiskPoint random_point(Rng& rng, double rmax = 0.9) {
  const double r = rmax * std::sqrt(rng.uniform());
  const double t = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  return DiskPoint(r * std::cos(t), r * std::sin(t));
}

BlaschkeProduct random_separated_blaschke(Rng& rng, int order, double gap = 0.05) {
  for (;;) {
    std::vector<DiskPoint> zeros;
    for (int i = 0; i < order; ++i) zeros.push_back(random_point(rng));
    bool ok = true;
    for (size_t i = 0; i < zeros.size() && ok; ++i)
      for (size_t j = i + 1; j < zeros.size(); ++j)
        if (std::abs(zeros[i].value() - zeros[j].value()) < gap) {
          ok = false;
          break;
        }
    if (ok) return BlaschkeProduct(std::move(zeros));
  }
}

/// Random instance M = U A U^* with known ATTO structure.
CMatrix random_atto_instance(Rng& rng, int n, CMatrix* a_out = nullptr) {
  for (;;) {
    BlaschkeProduct theta = random_separated_blaschke(rng, n);
    std::vector<Cx> coeffs;
    for (int k = 0; k < n; ++k) coeffs.push_back(rng.normal_cx());
    tto::AnalyticSymbol phi(coeffs);
    std::vector<Cx> vals;
    for (const DiskPoint& z : theta.zeros()) vals.push_back(phi.eval(z.value()));
    double mingap = 1e9;
    for (size_t i = 0; i < vals.size(); ++i)
      for (size_t j = i + 1; j < vals.size(); ++j) mingap = std::min(mingap, std::abs(vals[i] - vals[j]));
    if (mingap < 1e-2) continue;
    CMatrix a = tto::build_atto_eigenbasis(theta, phi).matrix;
    CMatrix u = rng.haar_unitary(n);
    if (a_out != nullptr) *a_out = a;
    return u * a * u.adjoint();
  }
}

CMatrix random_symmetric_hypotheses(Rng& rng, int n, double tol = 1e-3) {
  for (;;) {
    CMatrix m = rng.symmetric_gaussian(n);
    numkit::EigenSystem es = numkit::eig_dense(m, 1e-10);
    if (!es.distinct || es.min_gap < tol) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(inner(es.vectors[static_cast<size_t>(i)], es.vectors[static_cast<size_t>(j)])) < tol) {
          ok = false;
          break;
        }
    if (ok) return m;
  }
}

}  // namespace

TEST_CASE("decide: worked 2x2 example with certificate") {
  CMatrix m{{1.0, 2.0}, {0.0, 3.0}};
  Decision d = decide(m);
  REQUIRE(d.verdict == Verdict::Yes);
  REQUIRE(d.certificate.has_value());
  const Certificate& cert = *d.certificate;
  REQUIRE(cert.zeros.size() == 1);
  CHECK(std::abs(cert.zeros[0] - Cx(1.0 / std::sqrt(2.0))) < 1e-10);
  CHECK(std::abs(cert.symbol.coeffs()[0] - Cx(3.0)) < 1e-10);
  CHECK(std::abs(cert.symbol.coeffs()[1] - Cx(-2.0 * std::sqrt(2.0))) < 1e-10);
  CHECK(verify(m, cert, 1e-9).pass);
}

TEST_CASE("decide: 1x1 and normal 2x2") {
  Decision one = decide(CMatrix{{Cx(5.0)}});
  CHECK(one.verdict == Verdict::Yes);
  CHECK(one.certificate->zeros.empty());
  CHECK(std::abs(one.certificate->symbol.coeffs()[0] - Cx(5.0)) < 1e-14);

  Decision no = decide(CMatrix::diagonal({Cx(1.0), Cx(2.0)}));
  CHECK(no.verdict == Verdict::No);
  REQUIRE(no.violation.has_value());
  CHECK(no.violation->kind == "orthogonal_eigenvectors");
}

TEST_CASE("decide: counterexample family says NO with a violated pair") {
  for (int n : {3, 4, 5, 6}) {
    CounterexampleFamily fam;
    fam.n = n;
    fam.g = 0.5;
    for (int i = 1; i <= n; ++i) fam.eigenvalues.push_back(Cx(static_cast<double>(i)));
    FamilyMatrices fm = gen_family(fam);
    Decision d = decide(fm.m);
    CHECK(d.verdict == Verdict::No);
    CHECK(d.violation.has_value());
  }
}

TEST_CASE("decide: round trips verify at 1e-7") {
  Rng rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    CMatrix m = random_atto_instance(rng, n);
    Decision d = decide(m);
    REQUIRE(d.verdict == Verdict::Yes);
    VerifyReport rep = verify(m, *d.certificate, 1e-7);
    CHECK(rep.pass);
    CHECK(rep.equivalence_residual <= 1e-7);
  }
}

TEST_CASE("decide: verdict invariant under unitary conjugation") {
  Rng rng(72);
  for (int trial = 0; trial < 6; ++trial) {
    CMatrix m = random_atto_instance(rng, 4);
    CMatrix u = rng.haar_unitary(4);
    CHECK(decide(u * m * u.adjoint()).verdict == Verdict::Yes);

    CounterexampleFamily fam{4, 0.5, {Cx(1.0), Cx(2.0), Cx(3.0), Cx(4.0)}};
    CMatrix bad = gen_family(fam).m;
    CMatrix u2 = rng.haar_unitary(4);
    CHECK(decide(u2 * bad * u2.adjoint()).verdict == Verdict::No);
  }
}

TEST_CASE("decide: gauge invariance under phases and relabeling") {
  Rng rng(73);
  CMatrix yes = random_atto_instance(rng, 4);
  CounterexampleFamily fam{4, 0.5, {Cx(1.0), Cx(2.0), Cx(3.0), Cx(4.0)}};
  CMatrix no = gen_family(fam).m;

  for (const auto& [m, expect] : {std::pair<CMatrix, Verdict>{yes, Verdict::Yes}, {no, Verdict::No}}) {
    numkit::EigenSystem es = numkit::eig_dense(m, 1e-10);
    std::vector<int> perm = {0, 1, 2, 3};
    do {
      std::vector<Cx> values;
      std::vector<CVector> vectors;
      for (int i : perm) {
        values.push_back(es.values[static_cast<size_t>(i)]);
        CVector v = es.vectors[static_cast<size_t>(i)];
        const double t = rng.uniform(0.0, 6.28);
        v *= Cx(std::cos(t), std::sin(t));
        vectors.push_back(v);
      }
      CHECK(decide_from_eigensystem(m, values, vectors).verdict == expect);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("recover_phases: identity, gauge recovery, errors") {
  Rng rng(74);
  std::vector<CVector> xs;
  for (int i = 0; i < 3; ++i) {
    CVector v(3);
    for (int k = 0; k < 3; ++k) v[k] = rng.normal_cx() + (i == k ? 2.0 : 0.0);
    v *= 1.0 / v.norm();
    xs.push_back(v);
  }
  std::vector<Cx> same = recover_phases(xs, xs, 2);
  for (const Cx& a : same) CHECK(std::abs(a - Cx(1.0)) < 1e-12);

  std::vector<CVector> ys = xs;
  std::vector<Cx> ph = {Cx(std::cos(0.3), std::sin(0.3)), Cx(std::cos(-1.2), std::sin(-1.2)), Cx(1.0)};
  for (int i = 0; i < 3; ++i) ys[static_cast<size_t>(i)] *= ph[static_cast<size_t>(i)];
  std::vector<Cx> al = recover_phases(xs, ys, 2);
  // alpha_i recovers conj(phase_i) up to the anchor convention alpha_k = 1
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(al[static_cast<size_t>(i)] * ph[static_cast<size_t>(i)] -
                   al[2] * ph[2]) < 1e-12);

  std::vector<CVector> orth = {CVector{Cx(1.0), Cx(0.0)}, CVector{Cx(0.0), Cx(1.0)}};
  CHECK_THROWS_AS(recover_phases(orth, orth, 0), Error);

  std::vector<CVector> bad = xs;
  CVector t = bad[0];
  t[0] += 0.4;
  t *= 1.0 / t.norm();
  bad[0] = t;
  CHECK_THROWS_AS(recover_phases(xs, bad, 2), Error);
}

TEST_CASE("verify: tampered certificates fail with a residual report") {
  Rng rng(75);
  CMatrix m = random_atto_instance(rng, 3);
  Decision d = decide(m);
  REQUIRE(d.verdict == Verdict::Yes);
  CHECK(verify(m, *d.certificate, 1e-7).pass);

  Certificate bad = *d.certificate;
  bad.zeros[0] -= 0.1 * bad.zeros[0] / std::abs(bad.zeros[0]);  // stay inside the disk
  VerifyReport rep = verify(m, bad, 1e-7);
  CHECK_FALSE(rep.pass);
  CHECK(rep.detail.size() > 0);
}

TEST_CASE("classify_2x2: the paper's trichotomy") {
  CHECK(classify_2x2(CMatrix::diagonal({Cx(2.0), Cx(2.0)})).verdict == Verdict::Yes);
  CHECK(classify_2x2(CMatrix::diagonal({Cx(1.0), Cx(2.0)})).verdict == Verdict::No);
  CHECK(classify_2x2(CMatrix{{1.0, 2.0}, {0.0, 3.0}}).verdict == Verdict::Yes);

  // non-normal with repeated eigenvalue: Toeplitz witness on K_{z^2}
  Rng rng(76);
  CMatrix u = rng.haar_unitary(2);
  CMatrix j{{Cx(1.0, 0.5), Cx(0.8, -0.2)}, {0.0, Cx(1.0, 0.5)}};
  CMatrix m = u * j * u.adjoint();
  Decision d = classify_2x2(m);
  REQUIRE(d.verdict == Verdict::Yes);
  CHECK(d.certificate->zeros == std::vector<Cx>{Cx(0.0)});
  CHECK(verify(m, *d.certificate, 1e-7).pass);
}

TEST_CASE("det test: constructed instances pass, the family fails") {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix m = random_atto_instance(rng, 3);
    DetTest3 r = det_test_3x3(m, 1e-7);
    CHECK(r.pass);
    CHECK(r.residual <= 1e-9);
  }
  CounterexampleFamily fam{3, 0.5, {Cx(1.0), Cx(2.0), Cx(3.0)}};
  DetTest3 r = det_test_3x3(gen_family(fam).m);
  CHECK_FALSE(r.pass);
  CHECK_THROWS_AS(det_test_3x3(CMatrix::diagonal({Cx(0.0), Cx(1.0), Cx(2.0)})), Error);
}

TEST_CASE("det test agrees with trace test on random symmetric matrices") {
  Rng rng(78);
  for (int trial = 0; trial < 50; ++trial) {
    CMatrix m = random_symmetric_hypotheses(rng, 3);
    DetTest3 dt = det_test_3x3(m, 1e-7);
    TraceTest3 tt = trace_test_3x3(m, 1e-7);
    CHECK(dt.pass == tt.pass);
  }
}

TEST_CASE("trace test: canonical nilpotent form") {
  // [[0,0,0],[a,0,0],[b,c,0]] is UECSM iff |a|^2|c|^2(|a|^2-|c|^2) = 0
  CMatrix bad{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {Cx(0.3, 0.2), 2.0, 0.0}};
  TraceTest3 r = trace_test_3x3(bad);
  CHECK_FALSE(r.pass);
  CHECK(std::abs(r.residual - 12.0) < 1e-10);  // |a|^2|c|^2||a|^2-|c|^2| = 12

  CMatrix good{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {Cx(0.3, 0.2), Cx(0.0, 1.0), 0.0}};
  CHECK(trace_test_3x3(good).pass);

  Rng rng(79);
  CMatrix m = rng.symmetric_gaussian(3);
  CMatrix u = rng.haar_unitary(3);
  CHECK(trace_test_3x3(u * m * u.adjoint()).pass);  // any UECSM passes

  CMatrix normal = CMatrix::diagonal({Cx(1.0, 2.0), Cx(0.0), Cx(-1.0)});
  CHECK(trace_test_3x3(normal).pass);
}

TEST_CASE("decompose: Jordan block J3 gets a Toeplitz witness") {
  Rng rng(80);
  CMatrix j3(3, 3);
  j3(1, 0) = 1.0;
  j3(2, 1) = 1.0;
  CMatrix u = rng.haar_unitary(3);
  CMatrix m = u * j3 * u.adjoint();
  Decomposition dec = decompose_3x3(m);
  CHECK(dec.case_id == 1);
  CHECK(dec.subcase == "toeplitz_z3");
  REQUIRE(dec.certificate.has_value());
  CHECK(verify(m, *dec.certificate, 1e-7).pass);
  CHECK(dec.residual <= 1e-8);
}

TEST_CASE("decompose: case 2 worked instance hits eq (TTOM)") {
  // c = 1, a = 1, b = sqrt(2) - 1 satisfies |b + ac|^2 = 2 = |c|^2 (1 + |c|^2)
  CMatrix m(3, 3);
  m(1, 0) = 1.0;
  m(2, 0) = std::sqrt(2.0) - 1.0;
  m(2, 1) = 1.0;
  m(2, 2) = 1.0;
  Decomposition dec = decompose_3x3(m);
  CHECK(dec.case_id == 2);
  CHECK(dec.subcase == "ttom");
  REQUIRE(dec.ttom.has_value());
  CHECK(std::abs(dec.ttom->r - 1.0 / std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(dec.ttom->alpha - Cx(1.0)) < 1e-10);
  CHECK(std::abs(dec.ttom->beta - Cx((std::sqrt(2.0) - 1.0) * std::sqrt(2.0))) < 1e-10);
  CHECK(dec.ttom->residual <= 1e-9);
  REQUIRE(dec.certificate.has_value());
  CHECK(verify(m, *dec.certificate, 1e-7).pass);
}

TEST_CASE("decompose: diagonal and rank-one subcases") {
  Decomposition diag = decompose_3x3(CMatrix::diagonal({Cx(0.0), Cx(1.0), Cx(0.0, 2.0)}));
  CHECK(diag.case_id == 3);
  CHECK(diag.summands.size() == 3);
  for (const Summand& s : diag.summands) CHECK(s.kind == "scalar");

  // rank-one nilpotent: a = c = 0, b != 0
  Rng rng(81);
  CMatrix n0(3, 3);
  n0(2, 0) = Cx(0.6, 0.3);
  CMatrix u = rng.haar_unitary(3);
  CMatrix m = u * (n0 + Cx(0.5, -0.25) * CMatrix::identity(3)) * u.adjoint();
  Decomposition dec = decompose_3x3(m);
  CHECK(dec.case_id == 1);
  CHECK(dec.subcase == "rank_one");
  REQUIRE(dec.certificate.has_value());
  CHECK(verify(m, *dec.certificate, 1e-7).pass);
  CHECK(dec.summands.size() == 2);

  // rejects clear non-UECSM inputs
  CMatrix bad{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}};
  CHECK_THROWS_AS(decompose_3x3(bad), Error);
}

TEST_CASE("decompose: case-2 rank-one idempotent family and jordan+scalar") {
  Rng rng(82);
  // a = 0 subcase: certificate exists
  CMatrix t(3, 3);
  t(2, 0) = Cx(0.4, 0.2);
  t(2, 1) = 0.8;
  t(2, 2) = 1.0;
  CMatrix u = rng.haar_unitary(3);
  CMatrix m = u * t * u.adjoint();
  Decomposition dec = decompose_3x3(m);
  CHECK(dec.case_id == 2);
  CHECK(dec.subcase == "rank_one");
  REQUIRE(dec.certificate.has_value());
  CHECK(verify(m, *dec.certificate, 1e-7).pass);
  CHECK(decide(m).verdict == Verdict::Yes);

  // b = c = 0 subcase: direct sum only; as a single operator the answer
  // is NO (both eigenvectors unique and orthogonal)
  CMatrix t2(3, 3);
  t2(1, 0) = 0.7;
  t2(2, 2) = 1.0;
  CMatrix m2 = u * t2 * u.adjoint();
  Decomposition dec2 = decompose_3x3(m2);
  CHECK(dec2.subcase == "jordan_plus_scalar");
  CHECK_FALSE(dec2.certificate.has_value());
  CHECK(dec2.summands.size() == 2);
  CHECK(decide(m2).verdict == Verdict::No);
}

TEST_CASE("decide: 3x3 repeated-eigenvalue matrix routed through decompose") {
  Rng rng(83);
  CMatrix u = rng.haar_unitary(3);
  // scalar
  CHECK(decide(Cx(2.0, 1.0) * CMatrix::identity(3)).verdict == Verdict::Yes);
  // normal, repeated, non-scalar
  CMatrix nm = u * CMatrix::diagonal({Cx(1.0), Cx(1.0), Cx(3.0)}) * u.adjoint();
  CHECK(decide(nm).verdict == Verdict::No);
  // trace-test failure
  CMatrix bad{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}};
  CHECK(decide(u * bad * u.adjoint()).verdict == Verdict::No);
}

TEST_CASE("necessary_csm: 2x2 and constructed 3x3 pass, guards work") {
  Rng rng(84);
  for (int trial = 0; trial < 10; ++trial) {
    CMatrix m = random_symmetric_hypotheses(rng, 2);
    CsmReport rep = necessary_csm(m, 1e-8);
    // every non-normal 2x2 is ATTO-realizable, so the condition holds
    CHECK(rep.all_pass);
    CHECK(decide(m).verdict == Verdict::Yes);
  }
  CHECK_THROWS_AS(necessary_csm(CMatrix{{0.0, 1.0}, {0.0, 0.0}}, 1e-8), Error);
  CHECK_THROWS_AS(necessary_csm(CMatrix::diagonal({Cx(1.0), Cx(2.0)}), 1e-8), Error);
}

TEST_CASE("necessary_csm: symmetric representative of an ATTO passes all indices") {
  Rng rng(85);
  for (int trial = 0; trial < 8; ++trial) {
    BlaschkeProduct theta = random_separated_blaschke(rng, 3);
    std::vector<Cx> coeffs = {rng.normal_cx(), rng.normal_cx(), rng.normal_cx()};
    tto::AnalyticSymbol phi(coeffs);
    tto::TTOMatrix a = tto::build_tto_tm_quadrature(theta, tto::TrigSymbol::from_analytic(phi));
    modelspace::ModelSpace ms(theta);
    CMatrix s = modelspace::conjugation_matrix(ms, modelspace::TMBasis(ms));
    numkit::TakagiForm tf = numkit::takagi_factorize(s);
    CMatrix msym = tf.unitary.adjoint() * a.matrix * tf.unitary;
    CHECK((msym - msym.transpose()).norm_fro() < 1e-9);
    numkit::EigenSystem es = numkit::eig_dense(msym, 1e-10);
    if (!es.distinct) continue;
    bool hyp = true;
    for (int i = 0; i < 3 && hyp; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (std::abs(inner(es.vectors[static_cast<size_t>(i)], es.vectors[static_cast<size_t>(j)])) < 1e-6) hyp = false;
    if (!hyp) continue;
    CsmReport rep = necessary_csm(msym, 1e-8);
    for (const CsmIndexReport& ir : rep.index) CHECK(std::abs(ir.lhs - ir.rhs) < 1e-8);
  }
}

TEST_CASE("gen_family: closed forms and the witness values") {
  CounterexampleFamily fam{4, 0.5, {Cx(1.0), Cx(2.0), Cx(3.0), Cx(4.0)}};
  FamilyMatrices fm = gen_family(fam);

  // eigenvalues of G = X^2: 1-g three times, 1+3g once
  CMatrix g = fm.x * fm.x;
  std::vector<Cx> ev = numkit::eig_dense(g).values;
  CHECK(std::abs(ev[0] - Cx(0.5)) < 1e-12);
  CHECK(std::abs(ev[1] - Cx(0.5)) < 1e-12);
  CHECK(std::abs(ev[2] - Cx(0.5)) < 1e-12);
  CHECK(std::abs(ev[3] - Cx(2.5)) < 1e-12);

  // columns of X and Y are unit vectors
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(fm.x.col(j).norm() - 1.0) < 1e-12);
    CHECK(std::abs(fm.y.col(j).norm() - 1.0) < 1e-12);
  }

  // witness pair: |<x_i,x_j>| = g and |<y_i,y_j>| = g/(1+(n-2)g)
  CHECK(std::abs(std::abs(inner(fm.x.col(0), fm.x.col(1))) - 0.5) < 1e-12);
  CHECK(std::abs(std::abs(inner(fm.y.col(0), fm.y.col(1))) - 0.25) < 1e-12);

  // n = 3 analogue of the witness value
  CounterexampleFamily f3{3, 0.5, {Cx(1.0), Cx(2.0), Cx(3.0)}};
  FamilyMatrices fm3 = gen_family(f3);
  CHECK(std::abs(std::abs(inner(fm3.y.col(0), fm3.y.col(1))) - 0.5 / 1.5) < 1e-12);

  // M has the requested eigenvalues and eigenvector matrix X
  for (int i = 0; i < 4; ++i) {
    CVector xi = fm.x.col(i);
    CHECK((fm.m * xi - fam.eigenvalues[static_cast<size_t>(i)] * xi).norm() < 1e-12);
  }
}

TEST_CASE("choice identities and symmetric eigenvector orthogonality") {
  Rng rng(86);
  for (int trial = 0; trial < 25; ++trial) {
    CMatrix m = random_symmetric_hypotheses(rng, 3);
    numkit::EigenSystem es = numkit::eig_dense(m, 1e-10);
    const CVector& x1 = es.vectors[0];
    const CVector& x2 = es.vectors[1];
    const CVector& x3 = es.vectors[2];

    // <x_i, conj(x_j)> = 0 for i != j
    auto conj_inner = [](const CVector& a, const CVector& b) {
      Cx s = 0.0;
      for (int k = 0; k < a.dim(); ++k) s += a[k] * b[k];
      return s;  // <a, conj(b)>
    };
    CHECK(std::abs(conj_inner(x1, x2)) < 1e-10);
    CHECK(std::abs(conj_inner(x2, x3)) < 1e-10);
    CHECK(std::abs(conj_inner(x3, x1)) < 1e-10);

    const double i12 = std::norm(inner(x1, x2));
    const double i23 = std::norm(inner(x2, x3));
    const double i31 = std::norm(inner(x3, x1));
    CHECK(std::abs(std::norm(conj_inner(x1, x1)) - (1.0 - i12) * (1.0 - i31)) < 1e-9);
    CHECK(std::abs(std::norm(conj_inner(x2, x2)) - (1.0 - i12) * (1.0 - i23)) < 1e-9);
    CHECK(std::abs(std::norm(conj_inner(x3, x3)) - (1.0 - i23) * (1.0 - i31)) < 1e-9);
  }
}

TEST_CASE("product formula on certificates") {
  Rng rng(87);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 4;
    CMatrix m = random_atto_instance(rng, n);
    Decision d = decide(m);
    REQUIRE(d.verdict == Verdict::Yes);
    const BlaschkeProduct theta = d.certificate->theta();
    numkit::EigenSystem es = numkit::eig_dense(m, 1e-10);
    for (int i = 0; i < n; ++i) {
      double prod = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) prod *= 1.0 - std::norm(inner(es.vectors[static_cast<size_t>(j)], es.vectors[static_cast<size_t>(i)]));
      const Cx zi = theta.zeros()[static_cast<size_t>(i)].value();
      const Cx dtheta = theta.eval_derivative(zi).second;
      const double rhs = std::pow(1.0 - std::norm(zi), 2) * std::norm(dtheta);
      CHECK(std::abs(prod - rhs) < 1e-9);
    }
  }
}
