#include "antilinear/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "antilinear/coneig.hpp"
#include "antilinear/funcalc.hpp"
#include "antilinear/io.hpp"
#include "antilinear/jacobi.hpp"
#include "antilinear/measures.hpp"
#include "antilinear/rlgmres.hpp"

namespace antilinear::cli {

namespace {

using io::Json;

struct Options {
  std::string in;
  std::string out;
  std::size_t order = 0;
  std::size_t samples = 32;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::string u;
  std::string v = "1";
  std::string angles;
  std::string rhs;
  std::size_t maxit = 0;
  std::string demo;
  std::size_t circles = 2;
};

// Raised when a computed result fails one of the command's checks.
struct Violation {
  std::string invariant;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::string read_text(const Options& o, std::istream& in) {
  std::ostringstream buf;
  if (o.in.empty() || o.in == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(o.in);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open input file '" + o.in + "'");
    buf << f.rdbuf();
  }
  return buf.str();
}

Json read_document(const Options& o, std::istream& in) { return io::parse_document(read_text(o, in)); }

void write_text(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open output file '" + o.out + "'");
  f << text;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

PlanarAtomicMeasure checked_planar(const PlanarAtomicMeasure& mu) {
  if (mu.atoms.empty()) throw Error(ErrorKind::MassNotNormalizable, "measure has no atoms");
  for (const Atom& a : mu.atoms)
    if (!(a.weight > 0.0)) throw Error(ErrorKind::NonPositiveWeight, "weight " + num(a.weight) + " is not positive");
  return mu;
}

double moment_scale(double R, std::size_t k) { return std::max(1.0, std::pow(R, static_cast<double>(k))); }

double max_modulus(const PlanarAtomicMeasure& mu) {
  double R = 0.0;
  for (const Atom& a : mu.atoms) R = std::max(R, std::abs(a.point));
  return R;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const cplx& z : parse_complex_list(text)) {
    if (z.imag() != 0.0) throw Error(ErrorKind::InvalidArgument, "expected real values, got an imaginary part");
    out.push_back(z.real());
  }
  return out;
}

BiradialFunction function_from(const Options& o) {
  BiradialFunction f;
  f.u.coeffs = parse_complex_list(o.u);
  f.v.coeffs = parse_complex_list(o.v);
  return f;
}

Json function_json(const BiradialFunction& f) {
  Json u = Json::array();
  Json v = Json::array();
  for (const cplx& c : f.u.coeffs) u.push_back(io::complex_to_json(c));
  for (const cplx& c : f.v.coeffs) v.push_back(io::complex_to_json(c));
  return Json{{"u", u}, {"v", v}};
}

// ---- subcommands --------------------------------------------------------

int cmd_ortho(const Options& o, Streams s) {
  const BiradialMeasure rho = canonicalize(io::measure_from_json(read_document(o, s.in)));
  const Orthogonalization orth = orthogonalize(rho);
  const CMatrix J = orth.params.matrix();
  const CMatrix& Q = orth.system.values;
  CVector d(static_cast<Eigen::Index>(rho.size()));
  for (std::size_t k = 0; k < rho.size(); ++k) d(static_cast<Eigen::Index>(k)) = rho[k].point;
  const double model = (d.asDiagonal() * Q.conjugate() - Q * J).norm() / std::max(J.norm(), 1e-300);
  const double unit = (Q.adjoint() * Q - CMatrix::Identity(Q.cols(), Q.cols())).norm();

  write_text(o, s.out, io::dump_document(io::jacobi_to_json(orth.params)));
  s.err << "model residual " << short_num(model) << ", orthonormality defect " << short_num(unit) << "\n";
  if (model > 1e-8) throw Violation{"model identity D conj(Q) = Q J (residual " + short_num(model) + ")"};
  if (unit > 1e-8) throw Violation{"orthonormality of Q (defect " + short_num(unit) + ")"};
  return kExitOk;
}

int cmd_recover(const Options& o, Streams s) {
  const JacobiParams p = io::jacobi_from_json(read_document(o, s.in));
  for (std::size_t k = 0; k < p.betas.size(); ++k) {
    if (p.betas[k] == 0.0) {
      throw Error(ErrorKind::InvalidJacobi, "beta_" + std::to_string(k + 1) +
                                                " = 0, the matrix is reducible; split it with krylov-decompose");
    }
  }
  const BiradialMeasure rho = jacobi_to_measure(p);
  const double gap = max_param_difference(p, orthogonalize(rho).params);
  write_text(o, s.out, io::dump_document(io::measure_to_json(rho)));
  s.err << "round-trip parameter error " << short_num(gap) << "\n";
  return kExitOk;
}

// Moments of a measure, Jacobi, or moments document.
MomentSequence moments_of(const Json& doc, std::size_t K, std::size_t& n_out) {
  const std::string schema = io::schema_of(doc);
  if (schema == "measure") {
    const PlanarAtomicMeasure mu = checked_planar(io::measure_from_json(doc));
    n_out = mu.atoms.size();
    return measure_moments(mu, K == 0 ? 2 * n_out - 1 : K);
  }
  if (schema == "jacobi") {
    const JacobiParams p = io::jacobi_from_json(doc);
    p.validate();
    n_out = p.size();
    if (n_out == 0) throw Error(ErrorKind::InvalidJacobi, "empty parameter set");
    return jacobi_moments(p, K == 0 ? 2 * n_out - 1 : K);
  }
  if (schema == "moments") {
    MomentSequence m = io::moments_from_json(doc);
    if (m.m.empty()) throw Error(ErrorKind::InsufficientMoments, "document holds no moments");
    n_out = (m.size() + 1) / 2;
    if (K != 0) {
      if (K + 1 > m.size()) {
        throw Error(ErrorKind::InsufficientMoments,
                    "order " + std::to_string(K) + " requested, document holds m_0..m_" + std::to_string(m.size() - 1));
      }
      m.m.resize(K + 1);
    }
    return m;
  }
  throw Error(ErrorKind::ParseError, "expected a measure, jacobi or moments document, got '" + schema + "'");
}

int cmd_moments(const Options& o, Streams s) {
  std::size_t n = 0;
  const MomentSequence m = moments_of(read_document(o, s.in), o.order, n);
  write_text(o, s.out, io::dump_document(io::moments_to_json(m)));
  return kExitOk;
}

int cmd_psd(const Options& o, Streams s) {
  const Json doc = read_document(o, s.in);
  std::size_t n = 0;
  MomentSequence m = moments_of(doc, 0, n);
  const std::size_t k = o.order == 0 ? n : o.order;
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "order must be positive");
  if (io::schema_of(doc) != "moments") {
    // recompute far enough for the requested order
    m = moments_of(doc, 2 * k - 2 == 0 ? 1 : 2 * k - 2, n);
  }
  if (m.size() < 2 * k - 1) {
    throw Error(ErrorKind::InsufficientMoments, "order " + std::to_string(k) + " needs m_0..m_" +
                                                    std::to_string(2 * k - 2) + ", got " + std::to_string(m.size()) +
                                                    " moments");
  }
  const PsdResult r = psd_check(m, k);
  Json rep = io::report("psd");
  rep["order"] = k;
  rep["psd"] = r.psd;
  rep["min_eigenvalue"] = r.min_eigenvalue;
  write_text(o, s.out, io::dump_document(rep));
  if (!r.psd) {
    throw Violation{"moment matrix of order " + std::to_string(k) + " is not positive semidefinite (min eigenvalue " +
                    short_num(r.min_eigenvalue) + ")"};
  }
  return kExitOk;
}

int cmd_fcalc(const Options& o, Streams s) {
  const CMatrix G = io::matrix_from_json(read_document(o, s.in));
  const BiradialFunction f = function_from(o);
  const RealLinearOp op = apply_calculus(G, f);
  const NormFormula nf = norm_formula_check(G, f);
  const double dev = std::abs(nf.lhs - nf.rhs) / std::max(1.0, nf.lhs);

  Json radii = Json::array();
  for (double r : antilinear_spectrum(G).radii) radii.push_back(r);
  Json rep = io::report("fcalc");
  rep["function"] = function_json(f);
  rep["C"] = io::matrix_to_json(op.C);
  rep["A"] = io::matrix_to_json(op.A);
  rep["spectral_radii"] = radii;
  rep["norm"] = nf.lhs;
  rep["norm_formula"] = nf.rhs;
  rep["ok"] = dev <= 1e-8;
  write_text(o, s.out, io::dump_document(rep));
  if (dev > 1e-8) throw Violation{"norm formula (relative deviation " + short_num(dev) + ")"};
  return kExitOk;
}

int cmd_specmap(const Options& o, Streams s) {
  const CMatrix G = io::matrix_from_json(read_document(o, s.in));
  const BiradialFunction f = function_from(o);
  if (o.samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be positive");
  const SpecmapReport r = specmap_check(G, f, o.samples);
  Json rep = io::report("specmap");
  rep["function"] = function_json(f);
  rep["samples"] = o.samples;
  rep["inclusion_checked"] = r.inclusion_checked;
  rep["inclusion_violations"] = r.inclusion_violations;
  rep["max_inclusion_residual"] = r.max_inclusion_residual;
  rep["converse_checked"] = r.converse_checked;
  rep["converse_violations"] = r.converse_violations;
  rep["min_converse_residual"] = r.min_converse_residual;
  rep["ok"] = r.ok();
  write_text(o, s.out, io::dump_document(rep));
  if (r.inclusion_violations > 0)
    throw Violation{"spectral inclusion f(sigma) in sigma(f) (" + std::to_string(r.inclusion_violations) + " violations)"};
  if (r.converse_violations > 0)
    throw Violation{"converse inclusion (" + std::to_string(r.converse_violations) + " violations)"};
  return kExitOk;
}

std::string residual_csv(const std::vector<double>& res, const std::vector<bool>& flags) {
  std::string csv = "k,residual,ratio,flag\n";
  for (std::size_t k = 0; k < res.size(); ++k) {
    const double ratio = k == 0 ? 1.0 : res[k] / res[k - 1];
    csv += std::to_string(k) + "," + num(res[k]) + "," + num(ratio) + "," + (flags[k] ? "stagnation" : "") + "\n";
  }
  return csv;
}

int cmd_gmres(const Options& o, Streams s) {
  if (!o.demo.empty()) {
    if (o.demo != "staircase") throw Error(ErrorKind::InvalidArgument, "unknown demo '" + o.demo + "'");
    const StaircaseTable t = staircase_demo(o.circles);
    std::vector<double> res;
    std::vector<bool> flags;
    for (const StaircaseRow& row : t.rows) {
      res.push_back(row.residual);
      flags.push_back(row.stagnation);
    }
    write_text(o, s.out, residual_csv(res, flags));
    if (!t.odd_steps_stagnate) throw Violation{"odd-step stagnation r_{2j+1} = r_{2j}"};
    if (!res.empty() && res.back() > 1e-10 * res.front())
      throw Violation{"finite termination (final residual " + short_num(res.back() / res.front()) + " r_0)"};
    return kExitOk;
  }

  const CMatrix M = io::matrix_from_json(read_document(o, s.in));
  const Eigen::Index n = M.rows();
  CVector b;
  if (o.rhs.empty()) {
    b = CVector::Ones(n) / std::sqrt(static_cast<double>(std::max<Eigen::Index>(n, 1)));
  } else {
    const std::vector<cplx> vals = parse_complex_list(o.rhs);
    b = Eigen::Map<const CVector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  }
  const std::size_t maxit = o.maxit == 0 ? static_cast<std::size_t>(n) : o.maxit;
  const SolveResult r = solve(M, b, o.tol, maxit);

  const double r0 = r.residuals.front();
  std::vector<bool> flags(r.residuals.size(), false);
  for (std::size_t k = 1; k < r.residuals.size(); ++k) flags[k] = r.residuals[k] >= (1.0 - 1e-10) * r.residuals[k - 1];
  write_text(o, s.out, residual_csv(r.residuals, flags));
  if (!r.converged) s.err << "stagnation: maxit " << maxit << " reached\n";

  for (std::size_t k = 1; k < r.residuals.size(); ++k)
    if (r.residuals[k] > r.residuals[k - 1] + 1e-12 * r0) throw Violation{"monotone residuals at k = " + std::to_string(k)};
  const double direct = (b - M * r.x.conjugate()).norm();
  if (std::abs(direct - r.residuals.back()) > 1e-10 * r0)
    throw Violation{"recomputed residual " + short_num(direct) + " differs from " + short_num(r.residuals.back())};
  const std::size_t kcheck = std::min<std::size_t>(10, r.iterations);
  for (std::size_t k = 0; k <= kcheck; ++k) {
    const double oracle = residual_oracle(M, b, k);
    if (std::abs(oracle - r.residuals[k]) > 1e-8 * r0)
      throw Violation{"residual optimality at k = " + std::to_string(k) + " (oracle " + short_num(oracle) + ")"};
  }
  return kExitOk;
}

int cmd_equiv(const Options& o, Streams s) {
  const BiradialMeasure rho = canonicalize(io::measure_from_json(read_document(o, s.in)));
  const std::size_t pairs = rho.pair_count();
  std::vector<double> offsets;
  if (!o.angles.empty()) {
    offsets = parse_real_list(o.angles);
    if (offsets.size() != pairs) {
      throw Error(ErrorKind::InvalidArgument,
                  "expected " + std::to_string(pairs) + " angles, got " + std::to_string(offsets.size()));
    }
  } else {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < pairs; ++k) offsets.push_back(angle(rng));
  }

  // offsets rotate the first atom of each pair around its circle
  BiradialMeasure out = rho;
  if (std::any_of(offsets.begin(), offsets.end(), [](double a) { return a != 0.0; })) {
    std::vector<double> angles(pairs);
    for (std::size_t k = 0; k < pairs; ++k) angles[k] = std::arg(rho[2 * k].point) + offsets[k];
    out = equivalent_sample(rho, angles);
  }
  const double drift = max_param_difference(orthogonalize(rho).params, orthogonalize(out).params);
  write_text(o, s.out, io::dump_document(io::measure_to_json(out)));
  s.err << "parameter drift " << short_num(drift) << "\n";
  if (!are_equivalent(rho, out)) throw Violation{"equivalence of the resampled measure"};
  if (drift > 1e-8) throw Violation{"identical Jacobi parameters (drift " + short_num(drift) + ")"};
  return kExitOk;
}

int cmd_symmetrize(const Options& o, Streams s) {
  const PlanarAtomicMeasure mu = checked_planar(io::measure_from_json(read_document(o, s.in)));
  const BiradialMeasure sym = symmetrize(mu);
  const std::size_t K = o.order == 0 ? 20 : o.order;
  const MomentSequence a = measure_moments(mu, K);
  const MomentSequence b = measure_moments(sym, K);
  const double R = max_modulus(mu);
  double gap = 0.0;
  for (std::size_t k = 0; k <= K; ++k) gap = std::max(gap, std::abs(a[k] - b[k]) / moment_scale(R, k));
  write_text(o, s.out, io::dump_document(io::measure_to_json(sym)));
  s.err << "moment mismatch " << short_num(gap) << " through order " << K << "\n";
  if (gap > 1e-10) throw Violation{"moment preservation (mismatch " + short_num(gap) + ")"};
  for (std::size_t k = 0; k < sym.pair_count(); ++k) {
    if (std::abs(sym[2 * k].point + sym[2 * k + 1].point) > 1e-10 * std::max(1.0, std::abs(sym[2 * k].point)))
      throw Violation{"antipodal pair on circle " + std::to_string(k)};
  }
  return kExitOk;
}

int cmd_krylov(const Options& o, Streams s) {
  const CMatrix G = io::matrix_from_json(read_document(o, s.in));
  const std::vector<KrylovBlock> blocks = krylov_decompose(G);
  Json list = Json::array();
  Eigen::Index total = 0;
  for (const KrylovBlock& b : blocks) {
    list.push_back(Json{{"dimension", b.basis.cols()},
                        {"start", io::vector_to_json(b.start)},
                        {"jacobi", io::jacobi_to_json(b.params)}});
    total += b.basis.cols();
  }
  double overlap = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) overlap = std::max(overlap, (blocks[i].basis.adjoint() * blocks[j].basis).norm());

  Json rep = io::report("krylov-decompose");
  rep["size"] = G.rows();
  rep["blocks"] = list;
  rep["max_block_overlap"] = overlap;
  write_text(o, s.out, io::dump_document(rep));
  if (total != G.rows())
    throw Violation{"block dimensions sum to " + std::to_string(total) + ", not " + std::to_string(G.rows())};
  if (overlap > 1e-8) throw Violation{"mutual orthogonality of blocks (overlap " + short_num(overlap) + ")"};
  return kExitOk;
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Breakdown:
    case ErrorKind::ZeroFirstEntry:
      return kExitBreakdown;
    default:
      return kExitInvalid;
  }
}

cplx parse_complex(const std::string& token) {
  const auto bad = [&] { return Error(ErrorKind::InvalidArgument, "cannot parse '" + token + "' as a number"); };
  std::string t;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw bad();

  const auto real_part = [&](const std::string& x) {
    if (x.empty() || x == "+") return 1.0;
    if (x == "-") return -1.0;
    std::size_t used = 0;
    double val = 0.0;
    try {
      val = std::stod(x, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != x.size() || !std::isfinite(val)) throw bad();
    return val;
  };

  if (t.back() != 'i') return real_part(t);
  t.pop_back();
  // split at the last sign that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, real_part(t)};
  return {real_part(t.substr(0, split)), real_part(t.substr(split))};
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_complex(token));
  if (!text.empty() && text.back() == ',') throw Error(ErrorKind::InvalidArgument, "trailing comma in list");
  return out;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Antilinear Jacobi operators and biradial measures", "antilinear"};
  app.require_subcommand(1);

  const auto io_flags = [&](CLI::App* sub) {
    sub->add_option("--in", o.in, "Input document (stdin when omitted)");
    sub->add_option("--out", o.out, "Output path (stdout when omitted)");
  };
  const auto function_flags = [&](CLI::App* sub) {
    sub->add_option("--u", o.u, "Coefficients of u(t), lowest power first, comma separated");
    sub->add_option("--v", o.v, "Coefficients of v(t), lowest power first, comma separated")->capture_default_str();
  };

  std::vector<std::pair<CLI::App*, std::function<int(const Options&, Streams)>>> commands;
  const auto add = [&](const char* name, const char* help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    io_flags(sub);
    commands.emplace_back(sub, fn);
    return sub;
  };

  add("ortho", "Measure to Jacobi parameters", cmd_ortho);
  add("recover", "Jacobi parameters to a biradial measure", cmd_recover);
  add("moments", "Moments of a measure, Jacobi or moments document", cmd_moments)
      ->add_option("--order", o.order, "Highest moment index (default 2n - 1)");
  add("psd", "Moment matrix positive semidefiniteness", cmd_psd)
      ->add_option("--order", o.order, "Moment matrix size (default n)");
  function_flags(add("fcalc", "Biradial functional calculus of a complex symmetric matrix", cmd_fcalc));
  {
    CLI::App* sub = add("specmap", "Spectral mapping check", cmd_specmap);
    function_flags(sub);
    sub->add_option("--samples", o.samples, "Angles per spectral circle")->capture_default_str();
  }
  {
    CLI::App* sub = add("gmres", "R-linear GMRES for M conj(x) = b", cmd_gmres);
    sub->add_option("--demo", o.demo, "Built-in instance (staircase)");
    sub->add_option("--circles", o.circles, "Circles in the staircase instance")->capture_default_str();
    sub->add_option("--rhs", o.rhs, "Right-hand side, comma separated (default ones / sqrt(n))");
    sub->add_option("--tol", o.tol, "Relative residual tolerance")->capture_default_str();
    sub->add_option("--maxit", o.maxit, "Iteration limit (default n)");
  }
  {
    CLI::App* sub = add("equiv", "Resample a measure within its equivalence class", cmd_equiv);
    sub->add_option("--angles", o.angles, "Rotation of the first atom of each pair, radians, comma separated");
    sub->add_option("--seed", o.seed, "Seed for random rotations when --angles is omitted")->capture_default_str();
  }
  add("symmetrize", "Symmetric biradial measure with the same moments", cmd_symmetrize)
      ->add_option("--order", o.order, "Moments checked (default 20)");
  add("krylov-decompose", "Split into invariant Krylov blocks", cmd_krylov);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  for (auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    try {
      return fn(o, Streams{in, out, err});
    } catch (const Violation& v) {
      err << "invariant violated: " << v.invariant << "\n";
      return kExitViolated;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
      err << "error: ParseError: " << e.what() << "\n";
      return kExitInvalid;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitBreakdown;
    }
  }
  return kExitInvalid;
}

}  // namespace antilinear::cli
