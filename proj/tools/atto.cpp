#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "atto/error.hpp"
#include "atto/modelspace.hpp"
#include "atto/numkit.hpp"
#include "atto/random.hpp"
#include "atto/tto.hpp"
#include "atto/uetto.hpp"

using json = nlohmann::ordered_json;
using namespace atto;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInputError = 3;

json cx_pair(Cx z) { return json::array({z.real(), z.imag()}); }

Cx parse_cx(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw Error(ErrorCode::BadInput, "complex values are [re, im] pairs");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

json read_input(const std::string& path) {
  try {
    if (path.empty() || path == "-") return json::parse(std::cin);
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + path);
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadInput, e.what());  // message carries the byte position
  }
}

CMatrix parse_matrix_doc(const json& j) {
  if (!j.contains("n") || !j.contains("entries"))
    throw Error(ErrorCode::BadInput, "matrix document needs fields n and entries");
  const int n = j["n"].get<int>();
  const json& e = j["entries"];
  if (n <= 0 || !e.is_array() || static_cast<int>(e.size()) != n)
    throw Error(ErrorCode::BadInput, "entries must be an n x n array");
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(e[static_cast<size_t>(i)].size()) != n)
      throw Error(ErrorCode::BadInput, "entries must be an n x n array");
    for (int k = 0; k < n; ++k) {
      m(i, k) = parse_cx(e[static_cast<size_t>(i)][static_cast<size_t>(k)]);
      if (!std::isfinite(m(i, k).real()) || !std::isfinite(m(i, k).imag()))
        throw Error(ErrorCode::BadInput, "matrix entries must be finite");
    }
  }
  return m;
}

json matrix_doc(const CMatrix& m, const std::string& label = "") {
  json entries = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(cx_pair(m(i, k)));
    entries.push_back(std::move(row));
  }
  json doc;
  doc["n"] = m.rows();
  doc["entries"] = std::move(entries);
  if (!label.empty()) doc["label"] = label;
  return doc;
}

json certificate_doc(const uetto::Certificate& cert, const uetto::VerifyReport& rep) {
  json zeros = json::array();
  for (const Cx& z : cert.zeros) zeros.push_back(cx_pair(z));
  zeros.push_back(cx_pair(Cx(0.0)));  // the implicit final zero of Theta

  json coeffs = json::array();
  for (const Cx& c : cert.symbol.coeffs()) coeffs.push_back(cx_pair(c));

  json unit = json::array();
  for (int i = 0; i < cert.unitary.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < cert.unitary.cols(); ++k) row.push_back(cx_pair(cert.unitary(i, k)));
    unit.push_back(std::move(row));
  }

  json doc;
  doc["zeros"] = std::move(zeros);
  doc["symbol_coeffs"] = std::move(coeffs);
  doc["unitary"] = std::move(unit);
  doc["residuals"] = {{"unitary", rep.unitary_residual},
                      {"equivalence", rep.equivalence_residual},
                      {"spectrum", rep.spectrum_residual},
                      {"phi", rep.phi_residual}};
  doc["verdict"] = "YES";
  return doc;
}

uetto::Certificate parse_certificate_doc(const json& j, int n) {
  if (!j.contains("zeros") || !j.contains("symbol_coeffs") || !j.contains("unitary"))
    throw Error(ErrorCode::BadInput, "certificate document needs zeros, symbol_coeffs, unitary");
  uetto::Certificate cert;
  const json& zeros = j["zeros"];
  if (static_cast<int>(zeros.size()) != n)
    throw Error(ErrorCode::BadInput, "certificate zeros must list all n zeros of Theta");
  for (size_t i = 0; i + 1 < zeros.size(); ++i) cert.zeros.push_back(parse_cx(zeros[i]));
  if (std::abs(parse_cx(zeros.back())) > 1e-9)
    throw Error(ErrorCode::BadInput, "the final zero of Theta must be 0");
  std::vector<Cx> coeffs;
  for (const json& c : j["symbol_coeffs"]) coeffs.push_back(parse_cx(c));
  cert.symbol = tto::AnalyticSymbol(std::move(coeffs));
  const json& u = j["unitary"];
  if (static_cast<int>(u.size()) != n) throw Error(ErrorCode::BadInput, "unitary must be n x n");
  cert.unitary = CMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      cert.unitary(i, k) = parse_cx(u[static_cast<size_t>(i)][static_cast<size_t>(k)]);
  cert.phases.assign(static_cast<size_t>(n), Cx(1.0));
  return cert;
}

json violation_doc(const uetto::Violation& v) {
  return json{{"pair", {v.i, v.j}}, {"lhs", cx_pair(v.lhs)}, {"rhs", cx_pair(v.rhs)}, {"kind", v.kind}};
}

json decision_doc(const CMatrix& m, const uetto::Decision& d, double tol) {
  json doc;
  doc["verdict"] = uetto::verdict_name(d.verdict);
  doc["reason"] = d.reason;
  if (d.certificate) {
    const uetto::VerifyReport rep = uetto::verify(m, *d.certificate, std::max(tol, 1e-7));
    doc["certificate"] = certificate_doc(*d.certificate, rep);
  }
  if (d.violation) doc["violation"] = violation_doc(*d.violation);
  return doc;
}

int verdict_exit(uetto::Verdict v) {
  switch (v) {
    case uetto::Verdict::Yes: return kExitYes;
    case uetto::Verdict::No: return kExitNo;
    case uetto::Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitInputError;
}

void emit(const json& doc, bool json_mode, const std::string& human) {
  if (json_mode)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << human << "\n";
}

std::string fmt_cx(Cx z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

// ---- plot ------------------------------------------------------------

void write_svg(const json& certdoc, const std::string& path) {
  std::vector<Cx> zeros;
  for (const json& z : certdoc["zeros"]) zeros.push_back(parse_cx(z));

  const double cxp = 240.0, cyp = 240.0, rad = 200.0;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
       "viewBox=\"0 0 640 480\">\n";
  s << "  <rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "  <circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"none\" stroke=\"black\" "
                "stroke-width=\"1\"/>\n",
                cxp, cyp, rad);
  s << buf;
  // axes
  std::snprintf(buf, sizeof(buf),
                "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#cccccc\"/>\n",
                cxp - rad, cyp, cxp + rad, cyp);
  s << buf;
  std::snprintf(buf, sizeof(buf),
                "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#cccccc\"/>\n",
                cxp, cyp - rad, cxp, cyp + rad);
  s << buf;

  for (size_t i = 0; i < zeros.size(); ++i) {
    const double px = cxp + rad * zeros[i].real();
    const double py = cyp - rad * zeros[i].imag();
    std::snprintf(buf, sizeof(buf), "  <circle cx=\"%.6f\" cy=\"%.6f\" r=\"4\" fill=\"crimson\"/>\n",
                  px, py);
    s << buf;
    std::snprintf(buf, sizeof(buf),
                  "  <text x=\"%.6f\" y=\"%.6f\" font-family=\"monospace\" font-size=\"12\">z%zu</text>\n",
                  px + 6.0, py - 6.0, i + 1);
    s << buf;
  }

  s << "  <text x=\"460\" y=\"30\" font-family=\"monospace\" font-size=\"12\">pairwise rho</text>\n";
  int line = 0;
  for (size_t i = 0; i < zeros.size(); ++i)
    for (size_t j = i + 1; j < zeros.size(); ++j) {
      const double r = std::abs((zeros[i] - zeros[j]) / (1.0 - std::conj(zeros[j]) * zeros[i]));
      std::snprintf(buf, sizeof(buf),
                    "  <text x=\"460\" y=\"%d\" font-family=\"monospace\" font-size=\"11\">rho(z%zu,z%zu) = "
                    "%.6f</text>\n",
                    50 + 16 * line, i + 1, j + 1, r);
      s << buf;
      ++line;
    }
  s << "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
  f << s.str();
}

// ---- sample ----------------------------------------------------------

json run_sample(int n, int count, std::uint64_t seed, double tol) {
  Rng rng(seed);
  int accepted = 0;
  int csm_all_fail = 0;
  int csm_any_pass = 0;
  int concord_agree = 0;
  int concord_total = 0;
  int attempts = 0;

  while (accepted < count && attempts < 200 * count) {
    ++attempts;
    CMatrix m = rng.symmetric_gaussian(n);
    numkit::EigenSystem es;
    try {
      es = numkit::eig_dense(m, 1e-10);
    } catch (const Error&) {
      continue;
    }
    if (!es.distinct) continue;
    bool hyp = true;
    for (int i = 0; i < n && hyp; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(inner(es.vectors[static_cast<size_t>(i)], es.vectors[static_cast<size_t>(j)])) <= tol) {
          hyp = false;
          break;
        }
    if (!hyp) continue;
    ++accepted;

    uetto::CsmReport rep = uetto::necessary_csm(m, std::max(tol, 1e-7));
    bool all_fail = true;
    for (const uetto::CsmIndexReport& ir : rep.index) all_fail = all_fail && !ir.pass;
    if (all_fail)
      ++csm_all_fail;
    else if (rep.all_pass)
      ++csm_any_pass;

    if (n == 3) {
      try {
        const bool dt = uetto::det_test_3x3(m, std::max(tol, 1e-7)).pass;
        const bool tt = uetto::trace_test_3x3(m, std::max(tol, 1e-7)).pass;
        const bool dd = uetto::decide(m, tol).verdict == uetto::Verdict::Yes;
        ++concord_total;
        if (dt == tt && tt == dd) ++concord_agree;
      } catch (const Error&) {
      }
    }
  }

  json doc;
  doc["n"] = n;
  doc["requested"] = count;
  doc["accepted"] = accepted;
  doc["attempts"] = attempts;
  doc["csm_all_fail"] = csm_all_fail;
  doc["csm_all_fail_rate"] = accepted > 0 ? static_cast<double>(csm_all_fail) / accepted : 0.0;
  doc["csm_all_pass"] = csm_any_pass;
  if (n == 3) {
    doc["concordance_total"] = concord_total;
    doc["concordance_agree"] = concord_agree;
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analytic truncated Toeplitz operator workbench"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path = "plot.svg";
  double tol = 1e-8;
  int grid = 2048;
  std::uint64_t seed = 1;
  bool json_mode = false;

  app.add_option("--tol", tol, "decision tolerance")->capture_default_str();
  app.add_option("--grid", grid, "quadrature grid size (power of two >= 256)")->capture_default_str();
  app.add_option("--seed", seed, "random seed for sampling")->capture_default_str();
  app.add_option("--in", in_path, "input file (default: stdin)");
  app.add_flag("--json", json_mode, "emit machine-readable JSON documents");

  auto* cmd_decide = app.add_subcommand("decide", "decide unitary equivalence to an analytic TTO");
  auto* cmd_verify = app.add_subcommand("verify", "check a certificate against a matrix");
  auto* cmd_classify2 = app.add_subcommand("classify2", "2x2 classification");
  auto* cmd_dettest3 = app.add_subcommand("dettest3", "3x3 determinant test");
  auto* cmd_tracetest3 = app.add_subcommand("tracetest3", "3x3 trace-word test (UECSM)");
  auto* cmd_decompose3 = app.add_subcommand("decompose3", "3x3 direct-sum decomposition");
  auto* cmd_csmtest = app.add_subcommand("csmtest", "complex-symmetric necessary condition");
  auto* cmd_genfamily = app.add_subcommand("genfamily", "equal-correlation counterexample family");
  auto* cmd_build = app.add_subcommand("build", "construct a TTO matrix from zeros and symbol");
  auto* cmd_transport = app.add_subcommand("transport", "move (Theta, phi) by a disk automorphism");
  auto* cmd_sample = app.add_subcommand("sample", "random complex symmetric sampling experiment");
  auto* cmd_plot = app.add_subcommand("plot", "render certificate zeros as an SVG");

  int fam_n = 4;
  double fam_g = 0.5;
  std::string fam_eigs = "1,2,3,4";
  cmd_genfamily->add_option("--n", fam_n, "family size");
  cmd_genfamily->add_option("--g", fam_g, "off-diagonal correlation, 0 < g < 1");
  cmd_genfamily->add_option("--eigs", fam_eigs, "comma-separated real eigenvalues");

  std::string build_route = "eigen";
  cmd_build->add_option("--route", build_route, "eigen | quad")->capture_default_str();

  int sample_n = 4;
  int sample_count = 1000;
  cmd_sample->add_option("--n", sample_n, "matrix size");
  cmd_sample->add_option("--count", sample_count, "accepted sample count");

  cmd_plot->add_option("--out", out_path, "output SVG path")->capture_default_str();

  for (CLI::App* sub : {cmd_decide, cmd_verify, cmd_classify2, cmd_dettest3, cmd_tracetest3,
                        cmd_decompose3, cmd_csmtest, cmd_genfamily, cmd_build, cmd_transport,
                        cmd_sample, cmd_plot})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_decide->parsed() || cmd_classify2->parsed()) {
      const json j = read_input(in_path);
      const CMatrix m = parse_matrix_doc(j);
      const uetto::Decision d =
          cmd_classify2->parsed() ? uetto::classify_2x2(m, tol) : uetto::decide(m, tol);
      json doc = decision_doc(m, d, tol);
      std::string human = std::string(uetto::verdict_name(d.verdict)) + ": " + d.reason;
      if (d.certificate && !d.certificate->zeros.empty())
        human += "\n  z_1 = " + fmt_cx(d.certificate->zeros[0]);
      emit(doc, json_mode, human);
      return verdict_exit(d.verdict);
    }

    if (cmd_verify->parsed()) {
      const json j = read_input(in_path);
      if (!j.contains("matrix") || !j.contains("certificate"))
        throw Error(ErrorCode::BadInput, "verify expects {matrix, certificate}");
      const CMatrix m = parse_matrix_doc(j["matrix"]);
      const uetto::Certificate cert = parse_certificate_doc(j["certificate"], m.rows());
      const uetto::VerifyReport rep = uetto::verify(m, cert, std::max(tol, 1e-12));
      json doc = {{"pass", rep.pass},
                  {"unitary_residual", rep.unitary_residual},
                  {"equivalence_residual", rep.equivalence_residual},
                  {"spectrum_residual", rep.spectrum_residual},
                  {"phi_residual", rep.phi_residual}};
      emit(doc, json_mode,
           std::string(rep.pass ? "PASS" : "FAIL") +
               ": equivalence residual " + std::to_string(rep.equivalence_residual));
      return rep.pass ? kExitYes : kExitNo;
    }

    if (cmd_dettest3->parsed()) {
      const CMatrix m = parse_matrix_doc(read_input(in_path));
      const uetto::DetTest3 r = uetto::det_test_3x3(m, tol);
      json doc = {{"pass", r.pass}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"residual", r.residual}};
      emit(doc, json_mode,
           std::string(r.pass ? "PASS" : "FAIL") + ": det " + std::to_string(r.lhs) +
               " vs product " + std::to_string(r.rhs));
      return r.pass ? kExitYes : kExitNo;
    }

    if (cmd_tracetest3->parsed()) {
      const CMatrix m = parse_matrix_doc(read_input(in_path));
      const uetto::TraceTest3 r = uetto::trace_test_3x3(m, tol);
      json doc = {{"pass", r.pass},
                  {"lhs", cx_pair(r.lhs)},
                  {"rhs", cx_pair(r.rhs)},
                  {"residual", r.residual},
                  {"threshold", r.threshold}};
      emit(doc, json_mode,
           std::string(r.pass ? "PASS" : "FAIL") + ": |lhs - rhs| = " + std::to_string(r.residual));
      return r.pass ? kExitYes : kExitNo;
    }

    if (cmd_decompose3->parsed()) {
      const CMatrix m = parse_matrix_doc(read_input(in_path));
      uetto::Decomposition dec;
      try {
        dec = uetto::decompose_3x3(m, tol);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NotUecsm) {
          emit(json{{"error", e.what()}}, json_mode, std::string("FAIL: ") + e.what());
          return kExitNo;
        }
        throw;
      }
      json summands = json::array();
      for (const uetto::Summand& s : dec.summands) {
        json sj;
        sj["kind"] = s.kind;
        sj["block"] = matrix_doc(s.block);
        if (s.certificate) {
          const uetto::VerifyReport rep = uetto::verify(s.block, *s.certificate, std::max(tol, 1e-7));
          sj["certificate"] = certificate_doc(*s.certificate, rep);
        }
        summands.push_back(std::move(sj));
      }
      json doc;
      doc["case"] = dec.case_id;
      doc["subcase"] = dec.subcase;
      doc["residual"] = dec.residual;
      doc["summands"] = std::move(summands);
      if (dec.ttom) {
        doc["ttom"] = {{"r", dec.ttom->r},
                       {"alpha", cx_pair(dec.ttom->alpha)},
                       {"beta", cx_pair(dec.ttom->beta)},
                       {"shift", cx_pair(dec.ttom->shift)},
                       {"scale", cx_pair(dec.ttom->scale)},
                       {"residual", dec.ttom->residual}};
      }
      if (dec.certificate) {
        const uetto::VerifyReport rep = uetto::verify(m, *dec.certificate, std::max(tol, 1e-7));
        doc["certificate"] = certificate_doc(*dec.certificate, rep);
      }
      emit(doc, json_mode,
           "case " + std::to_string(dec.case_id) + " (" + dec.subcase + "), residual " +
               std::to_string(dec.residual));
      return kExitYes;
    }

    if (cmd_csmtest->parsed()) {
      const CMatrix m = parse_matrix_doc(read_input(in_path));
      const uetto::CsmReport rep = uetto::necessary_csm(m, tol);
      json idx = json::array();
      for (const uetto::CsmIndexReport& ir : rep.index)
        idx.push_back(json{{"lhs", ir.lhs}, {"rhs", ir.rhs}, {"pass", ir.pass}});
      json doc = {{"index", idx}, {"all_pass", rep.all_pass}, {"sufficient", rep.sufficient}};
      emit(doc, json_mode, std::string(rep.all_pass ? "PASS" : "FAIL") + " (necessary condition)");
      return rep.all_pass ? kExitYes : kExitNo;
    }

    if (cmd_genfamily->parsed()) {
      uetto::CounterexampleFamily fam;
      fam.n = fam_n;
      fam.g = fam_g;
      std::stringstream ss(fam_eigs);
      std::string item;
      while (std::getline(ss, item, ',')) fam.eigenvalues.push_back(Cx(std::stod(item), 0.0));
      const uetto::FamilyMatrices fm = uetto::gen_family(fam);
      std::cout << matrix_doc(fm.m, "family n=" + std::to_string(fam.n)).dump(2) << "\n";
      return kExitYes;
    }

    if (cmd_build->parsed()) {
      const json j = read_input(in_path);
      if (!j.contains("zeros")) throw Error(ErrorCode::BadInput, "build expects zeros");
      std::vector<diskgeom::DiskPoint> zeros;
      for (const json& z : j["zeros"]) zeros.push_back(diskgeom::DiskPoint(parse_cx(z)));
      diskgeom::BlaschkeProduct theta(zeros);
      if (build_route == "eigen") {
        std::vector<Cx> coeffs;
        for (const json& c : j["symbol_coeffs"]) coeffs.push_back(parse_cx(c));
        const tto::TTOMatrix a = tto::build_atto_eigenbasis(theta, tto::AnalyticSymbol(coeffs));
        std::cout << matrix_doc(a.matrix, "atto eigenbasis").dump(2) << "\n";
      } else if (build_route == "quad") {
        std::map<int, Cx> tc;
        if (j.contains("trig_coeffs")) {
          for (const json& t : j["trig_coeffs"])
            tc[t[0].get<int>()] = Cx(t[1].get<double>(), t[2].get<double>());
        } else {
          std::vector<Cx> coeffs;
          for (const json& c : j["symbol_coeffs"]) coeffs.push_back(parse_cx(c));
          const tto::AnalyticSymbol p(coeffs);
          for (int k = 0; k <= p.degree(); ++k) tc[k] = p.coeffs()[static_cast<size_t>(k)];
        }
        const tto::TTOMatrix a =
            tto::build_tto_tm_quadrature(theta, tto::TrigSymbol(tc), modelspace::QuadratureGrid(grid));
        std::cout << matrix_doc(a.matrix, "tto tm quadrature").dump(2) << "\n";
      } else {
        throw Error(ErrorCode::BadInput, "route must be eigen or quad");
      }
      return kExitYes;
    }

    if (cmd_transport->parsed()) {
      const json j = read_input(in_path);
      std::vector<diskgeom::DiskPoint> zeros;
      for (const json& z : j["zeros"]) zeros.push_back(diskgeom::DiskPoint(parse_cx(z)));
      std::vector<Cx> coeffs;
      for (const json& c : j["symbol_coeffs"]) coeffs.push_back(parse_cx(c));
      if (!j.contains("psi")) throw Error(ErrorCode::BadInput, "transport expects psi = {a, omega}");
      const diskgeom::Automorphism psi(diskgeom::DiskPoint(parse_cx(j["psi"]["a"])),
                                       parse_cx(j["psi"]["omega"]));
      const tto::TransportResult tr =
          tto::transport(diskgeom::BlaschkeProduct(zeros), tto::AnalyticSymbol(coeffs), psi);

      std::vector<Cx> values;
      for (const diskgeom::DiskPoint& w : tr.theta.zeros()) values.push_back(tr.eval_symbol(w.value()));
      json doc;
      json zs = json::array();
      for (const diskgeom::DiskPoint& w : tr.theta.zeros()) zs.push_back(cx_pair(w.value()));
      doc["zeros"] = std::move(zs);
      doc["front"] = cx_pair(tr.theta.front());
      if (tr.theta.zeros_distinct(1e-10)) {
        const tto::AnalyticSymbol re = tto::lagrange_symbol(tr.theta.zeros(), values);
        json cs = json::array();
        for (const Cx& c : re.coeffs()) cs.push_back(cx_pair(c));
        doc["symbol_coeffs"] = std::move(cs);
      }
      json vals = json::array();
      for (const Cx& v : values) vals.push_back(cx_pair(v));
      doc["symbol_values_at_zeros"] = std::move(vals);
      std::cout << doc.dump(2) << "\n";
      return kExitYes;
    }

    if (cmd_sample->parsed()) {
      const json doc = run_sample(sample_n, sample_count, seed, tol);
      std::cout << doc.dump(2) << "\n";
      return kExitYes;
    }

    if (cmd_plot->parsed()) {
      const json j = read_input(in_path);
      const json& certdoc = j.contains("certificate") ? j["certificate"] : j;
      if (!certdoc.contains("zeros")) throw Error(ErrorCode::BadInput, "plot expects a certificate");
      write_svg(certdoc, out_path);
      std::cout << out_path << "\n";
      return kExitYes;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
