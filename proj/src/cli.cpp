#include "mla/cli.hpp"

#include <complex>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "mla/mla.hpp"

namespace mla::cli {

namespace {

using C = std::complex<double>;
using T = TensorXcd;
using Sq = SquareTensorXcd;

struct GenerateOpts {
  PoissonSpec spec;
  std::string in, out;
  std::uint64_t seed = 0;
};

struct InvertOpts {
  std::string kind = "drazin";
  std::string in, weight, out;
};

struct SolveOpts {
  std::string method = "drazin";
  std::string a, b, out, residuals;
  double tol = 1e-10;
  Index max_iter = 10000;
};

struct VerifyOpts {
  std::string suite = "drazin-axioms";
  std::string in, b, weight;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

struct SpectrumOpts {
  std::string in;
};

Sq read_square(const std::string& path) {
  return Sq(io::read_tensor(std::filesystem::path(path)));
}

void emit(const T& t, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-")
    io::write_tensor(out, t);
  else
    io::write_tensor(std::filesystem::path(path), t);
}

void print_report(std::ostream& out, const CheckReport& rep) {
  for (const auto& c : rep.checks())
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  " << c.residual << '\n';
}

int do_generate_poisson(const GenerateOpts& o, std::ostream& out) {
  emit(generate(o.spec), o.out, out);
  return kOk;
}

int do_generate_rhs(const GenerateOpts& o, std::ostream& out) {
  emit(consistent_rhs(read_square(o.in), o.seed), o.out, out);
  return kOk;
}

int do_invert(const InvertOpts& o, std::ostream& out) {
  const T a = io::read_tensor(std::filesystem::path(o.in));
  T x;
  if (o.kind == "mp") {
    x = moore_penrose(a);
    const auto r = penrose_residuals(a, x);
    out << "rshrank " << rshrank(a) << '\n';
    out << "residual AXA=A " << r.axa << "\nresidual XAX=X " << r.xax << "\nresidual (AX)*=AX " << r.ax_h
        << "\nresidual (XA)*=XA " << r.xa_h << '\n';
  } else if (o.kind == "drazin" || o.kind == "group") {
    const Sq sa(a);
    const auto idx = index(sa);
    const Sq xs = o.kind == "drazin" ? drazin(sa, idx.k) : group_inverse(sa);
    const auto r = drazin_residuals(sa, xs, o.kind == "drazin" ? idx.k : 1);
    out << "index " << idx.k << "\nrank_sequence";
    for (Index v : idx.rank_sequence) out << ' ' << v;
    out << "\nresidual A^{k+1}X=A^k " << r.power_eq << "\nresidual XAX=X " << r.outer_eq
        << "\nresidual AX=XA " << r.commute_eq << '\n';
    x = xs;
  } else {
    const T w = o.weight.empty() ? conj_transpose(a) : io::read_tensor(std::filesystem::path(o.weight));
    const WeightedPair<C> p(a, w);
    x = w_drazin(p);
    const auto r = verify_w_drazin(p, x);
    out << "index " << weighted_index(p) << '\n';
    out << "residual (BW)^{k+1}XW=(BW)^k " << r.power_eq << "\nresidual XWBWX=X " << r.outer_eq
        << "\nresidual BWX=XWB " << r.commute_eq << '\n';
  }
  out << "frobenius_norm " << frobenius_norm(x) << '\n';
  if (!o.out.empty()) io::write_tensor(std::filesystem::path(o.out), x);
  return kOk;
}

int do_solve(const SolveOpts& o, std::ostream& out, std::ostream& err) {
  const Sq a = read_square(o.a);
  const T b = io::read_tensor(std::filesystem::path(o.b));
  const double nb = frobenius_norm(b);
  int code = kOk;
  T x;
  std::vector<double> history;
  if (o.method == "drazin") {
    const auto sol = drazin_solve(a, b);
    x = sol.particular;
    history.push_back(residual_norm(a, x, b));
    out << "index " << sol.index_used << "\nconsistent " << (sol.consistent ? "true" : "false") << '\n';
    if (!sol.consistent) {
      err << "solve: right-hand side is not in R(A^k)\n";
      code = kShape;
    }
  } else {
    IterationOptions<C> opts;
    opts.tol = o.tol;
    opts.max_iter = o.max_iter;
    const auto res = o.method == "gs" ? gauss_seidel(a, b, opts) : jacobi(a, b, opts);
    x = res.solution;
    history = res.report.residual_history;
    out << "iterations " << res.report.iterations << "\nstop_reason " << to_string(res.report.stop_reason) << '\n';
    if (res.report.spectral_radius_estimate) out << "rho_estimate " << *res.report.spectral_radius_estimate << '\n';
    if (!res.report.converged) {
      err << "solve: " << o.method << " stopped on " << to_string(res.report.stop_reason) << '\n';
      code = kConvergence;
    }
  }
  out << "residual " << history.back() << "\nrelative_residual " << (nb > 0 ? history.back() / nb : history.back())
      << '\n';
  if (!o.out.empty()) io::write_tensor(std::filesystem::path(o.out), x);
  if (!o.residuals.empty()) io::write_residuals(std::filesystem::path(o.residuals), history);
  return code;
}

CheckReport solver_checks(const Sq& a, const T& b, double tol) {
  CheckReport rep(tol);
  const double nb = frobenius_norm(b);
  const double scale = nb > 0 ? nb : 1.0;
  const auto sol = drazin_solve(a, b);
  rep.expect_small("B in R(A^k)", sol.consistent ? 0.0 : 1.0);
  rep.expect_small("A X = B (X = A^D B)", residual_norm(a, sol.particular, b) / scale);

  const Index k = sol.index_used;
  const Sq ak = power(a, k);
  const Sq ak1 = ak * a;
  const T akb = ak * b;
  const double sk = std::max<double>(frobenius_norm(akb), 1e-300);
  const T xn = normal_solve(a, b, NormalVariant::DrazinNormal);
  rep.expect_small("A^{k+1} X = A^k B", relative_gap(T(ak1 * xn), akb, sk));
  const T xm = normal_solve(a, b, NormalVariant::Modified);
  rep.expect_small("A^{2k} X = A^k B", relative_gap(T(ak * ak * xm), akb, sk));

  bool diag_ok = true;
  for (Index i = 0; i < a.rows(); ++i) diag_ok = diag_ok && a(i, i) != C(0);
  if (diag_ok && convergence_check(a, Method::GaussSeidel).converges) {
    IterationOptions<C> opts;
    opts.tol = 1e-12;
    opts.max_iter = 100000;
    const auto gs = gauss_seidel(a, b, opts);
    rep.expect_small("gauss-seidel converged", gs.report.converged ? 0.0 : 1.0);
    rep.expect_small("gauss-seidel A X = B", residual_norm(a, gs.solution, b) / scale);
  }
  return rep;
}

int do_verify(const VerifyOpts& o, std::ostream& out) {
  const T a = io::read_tensor(std::filesystem::path(o.in));
  CheckReport rep(o.tol);
  if (o.suite == "drazin-axioms") {
    rep.merge(drazin_axiom_checks(Sq(a), o.tol));
    rep.merge(penrose_checks(a, std::min(o.tol, 1e-10)));
  } else if (o.suite == "identities") {
    rep.merge(drazin_identity_checks(Sq(a), o.tol));
  } else if (o.suite == "wdrazin") {
    const T w = o.weight.empty() ? conj_transpose(a) : io::read_tensor(std::filesystem::path(o.weight));
    rep.merge(weighted_identity_checks(WeightedPair<C>(a, w), o.tol));
  } else {
    const Sq sa(a);
    T b;
    if (o.b.empty()) {
      b = consistent_rhs(sa, o.seed);
    } else {
      b = io::read_tensor(std::filesystem::path(o.b));
    }
    rep.merge(solver_checks(sa, b, o.tol));
  }
  print_report(out, rep);
  const bool ok = rep.all_passed();
  out << (ok ? "all checks passed" : "some checks failed") << '\n';
  return ok ? kOk : kCheckFailed;
}

int do_spectrum(const SpectrumOpts& o, std::ostream& out) {
  const Sq a = read_square(o.in);
  out << "spectral_radius " << spectral_radius(a) << '\n';
  out << "frobenius_norm " << frobenius_norm(a) << '\n';
  out << "max_norm " << max_norm(a) << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense multilinear algebra: generalized inverses and tensor solvers", "mla"};
  app.require_subcommand(1);

  GenerateOpts gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate test tensors");
  generate_cmd->require_subcommand(1);
  auto* poisson_cmd = generate_cmd->add_subcommand("poisson", "Kronecker-sum Poisson tensor");
  poisson_cmd->add_option("--dim", gen.spec.dim, "Grid dimension")->check(CLI::IsMember({2, 3, 4}))->capture_default_str();
  poisson_cmd->add_option("--n", gen.spec.n, "Grid points per axis")->check(CLI::Range(Index{2}, Index{1} << 20))->capture_default_str();
  poisson_cmd->add_option("--bc", gen.spec.bc, "Boundary condition")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, BoundaryCondition>{{"dirichlet", BoundaryCondition::Dirichlet},
                                                   {"neumann", BoundaryCondition::Neumann}},
          CLI::ignore_case))
      ->default_str("dirichlet");
  poisson_cmd->add_option("--out", gen.out, "Output tensor JSON (stdout when omitted)");
  auto* rhs_cmd = generate_cmd->add_subcommand("rhs", "Right-hand side B = A^k Y in R(A^k)");
  rhs_cmd->add_option("--in", gen.in, "Operator tensor JSON")->required();
  rhs_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  rhs_cmd->add_option("--out", gen.out, "Output tensor JSON (stdout when omitted)");

  InvertOpts inv;
  auto* invert_cmd = app.add_subcommand("invert", "Compute a generalized inverse");
  invert_cmd->add_option("--kind", inv.kind, "Inverse kind")
      ->check(CLI::IsMember({"mp", "drazin", "group", "wdrazin"}))
      ->capture_default_str();
  invert_cmd->add_option("--in", inv.in, "Input tensor JSON")->required();
  invert_cmd->add_option("--weight", inv.weight, "Weight W for wdrazin (default B^*)");
  invert_cmd->add_option("--out", inv.out, "Output tensor JSON");

  SolveOpts sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve A * X = B");
  solve_cmd->add_option("--method", sol.method, "Solver")->check(CLI::IsMember({"drazin", "gs", "jacobi"}))->capture_default_str();
  solve_cmd->add_option("--a", sol.a, "Operator tensor JSON")->required();
  solve_cmd->add_option("--b", sol.b, "Right-hand side tensor JSON")->required();
  solve_cmd->add_option("--tol", sol.tol, "Stop when ||X_k - X_{k-1}||_F < tol")->check(CLI::PositiveNumber)->capture_default_str();
  solve_cmd->add_option("--max-iter", sol.max_iter, "Iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  solve_cmd->add_option("--out", sol.out, "Output tensor JSON");
  solve_cmd->add_option("--residuals", sol.residuals, "Residual history CSV");

  VerifyOpts ver;
  auto* verify_cmd = app.add_subcommand("verify", "Run a residual check suite; exit 0 iff all pass");
  verify_cmd->add_option("--suite", ver.suite, "Check suite")
      ->check(CLI::IsMember({"drazin-axioms", "identities", "wdrazin", "solver"}))
      ->capture_default_str();
  verify_cmd->add_option("--in", ver.in, "Input tensor JSON")->required();
  verify_cmd->add_option("--b", ver.b, "Right-hand side for the solver suite (random B in R(A^k) when omitted)");
  verify_cmd->add_option("--weight", ver.weight, "Weight W for the wdrazin suite (default B^*)");
  verify_cmd->add_option("--tol", ver.tol, "Relative tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  verify_cmd->add_option("--seed", ver.seed, "Random seed")->capture_default_str();

  SpectrumOpts spec;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Print spectral radius and norms");
  spectrum_cmd->add_option("--in", spec.in, "Input tensor JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  out << std::setprecision(10);
  try {
    if (poisson_cmd->parsed()) return do_generate_poisson(gen, out);
    if (rhs_cmd->parsed()) return do_generate_rhs(gen, out);
    if (invert_cmd->parsed()) return do_invert(inv, out);
    if (solve_cmd->parsed()) return do_solve(sol, out, err);
    if (verify_cmd->parsed()) return do_verify(ver, out);
    if (spectrum_cmd->parsed()) return do_spectrum(spec, out);
  } catch (const ShapeMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kShape;
  } catch (const Inconsistent& e) {
    err << "error: " << e.what() << '\n';
    return kShape;
  } catch (const IndexNotOne& e) {
    err << "error: " << e.what() << '\n';
    return kShape;
  } catch (const ZeroDiagonal& e) {
    err << "error: " << e.what() << '\n';
    return kShape;
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << '\n';
    return kConvergence;
  } catch (const NotConvergent& e) {
    err << "error: " << e.what() << '\n';
    return kConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace mla::cli
