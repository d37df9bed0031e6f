#include "cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bispectral/error.hpp"
#include "bispectral/parser.hpp"
#include "problem.hpp"

namespace bispectral::cli {

namespace {

constexpr std::size_t kFastCandidateLimit = 100;

enum Exit { ok = 0, invalid = 1, parse_failure = 2, constants_only = 3, plane_rejected = 4 };

struct CommonFlags {
  std::optional<std::string> context;
  std::optional<std::string> nu;
  std::optional<std::string> x_endpoint;
  std::optional<std::string> y_endpoint;
  std::optional<std::string> x_mode;
  std::optional<std::string> y_mode;
  std::optional<int> L;
  std::optional<int> M;
  std::vector<std::string> params;
  std::optional<std::string> bounds;
  std::optional<std::string> out;
  bool slow_ok = false;

  void attach(CLI::App* app, bool with_solve_flags) {
    app->add_option("--context", context, "exp | airy | bessel");
    app->add_option("--nu", nu, "Bessel order, e.g. 1/2");
    app->add_option("--x-endpoint", x_endpoint, "finite x endpoint (exact literal)");
    app->add_option("--y-endpoint", y_endpoint, "finite y endpoint (exact literal)");
    app->add_option("--x-mode", x_mode, "sym | inf");
    app->add_option("--y-mode", y_mode, "sym | inf");
    app->add_option("--param", params, "name=value (repeatable)");
    if (with_solve_flags) {
      app->add_option("--L", L, "order bound L");
      app->add_option("--M", M, "co-order bound M");
      app->add_option("--bounds-override", bounds, "JSON object with u_family, p_family, constant");
      app->add_option("--out", out, "write the result file here instead of standard output");
      app->add_flag("--slow-ok", slow_ok, "allow candidate spaces larger than the fast limit");
    }
  }

  void apply(Problem& p) const {
    if (context) p.context_kind = *context;
    if (nu) p.nu = *nu;
    if (x_endpoint) p.x_point = *x_endpoint;
    if (y_endpoint) p.y_point = *y_endpoint;
    if (x_mode) p.x_mode = *x_mode;
    if (y_mode) p.y_mode = *y_mode;
    if (L) p.L = *L;
    if (M) p.M = *M;
    for (const auto& kv : params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw SchemaError("--param expects name=value, got '" + kv + "'");
      std::string name = kv.substr(0, eq);
      auto it = std::find_if(p.param_texts.begin(), p.param_texts.end(), [&](const auto& e) { return e.first == name; });
      if (it != p.param_texts.end()) {
        it->second = kv.substr(eq + 1);
      } else {
        p.param_texts.emplace_back(name, kv.substr(eq + 1));
      }
    }
    if (bounds) p.bounds = bounds_from_json(Json::parse(*bounds));
  }
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  return Json::parse(in);
}

void emit(const Json& j, const std::optional<std::string>& path, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (path) {
    std::ofstream f(*path);
    if (!f) throw SchemaError("cannot write " + *path);
    f << text;
  } else {
    out << text;
  }
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnboundParameter:
    case ErrorKind::ReservedSymbolMisuse: return parse_failure;
    case ErrorKind::NotLagrangian:
    case ErrorKind::NotSigmaStable: return plane_rejected;
    default: return invalid;
  }
}

int solve_and_emit(const Problem& p, const DarbouxTransform& t, const CommonFlags& flags, std::ostream& out,
                   std::ostream& err) {
  auto [L, M] = default_degrees(p, t);
  EndpointSpec ep = make_endpoints(p);
  std::size_t count = candidate_count(t, L, M, p.bounds);
  if (count > kFastCandidateLimit && !flags.slow_ok) {
    throw Error(ErrorKind::InvalidArgument, std::to_string(count) + " candidates exceed the fast limit of " +
                                                std::to_string(kFastCandidateLimit) + "; pass --slow-ok");
  }
  std::vector<CandidatePair> cands = candidate_space(t, L, M, p.bounds);
  SolveResult r = solve_candidates(cands, L, M, ep);
  emit(result_to_json(p, t, L, M, r), flags.out, out);
  err << "dimension " << r.dimension << " (" << r.stats.independent << " independent candidates, rank "
      << r.stats.rank << ")\n";
  if (!r.nonconstant_witness) {
    err << "only constant solutions\n";
    return constants_only;
  }
  err << "witness: " << print_op(r.nonconstant_witness->x_op) << "\n";
  return ok;
}

int cmd_solve(const std::optional<std::string>& file, const std::optional<std::string>& u,
              const std::optional<std::string>& u_dialect, const std::optional<std::string>& p_text,
              const std::optional<std::string>& q_text, const CommonFlags& flags, std::ostream& out,
              std::ostream& err) {
  Problem p = file ? problem_from_json(read_json_file(*file)) : Problem{};
  flags.apply(p);
  if (u) p.u_text = *u;
  if (u_dialect) p.u_dialect = *u_dialect;
  if (p_text) p.p_text = *p_text;
  if (q_text) p.q_text = *q_text;
  Context ctx = make_context(p);
  DarbouxTransform t = make_transform(p, ctx);
  return solve_and_emit(p, t, flags, out, err);
}

int cmd_verify(const std::string& op, const std::optional<std::string>& y_op, const CommonFlags& flags,
               std::ostream& out) {
  Problem p;
  flags.apply(p);
  Context ctx = make_context(p);
  EndpointSpec ep = make_endpoints(p);
  ParamEnv env = resolve_params(p.param_texts);
  CandidatePair pair;
  if (y_op) {
    pair.x_op = parse_op(op, Var::x, env);
    pair.y_op = parse_op(*y_op, Var::y, env);
  } else {
    GenExpr g = fourier(ctx, parse(op, ctx.dialect(), env));
    pair.x_op = g.x_op;
    pair.y_op = g.y_op;
  }
  VerifyReport rep = verify_report(pair, ep);
  out << "context: " << ctx.describe() << "\n";
  out << "x-operator: " << print_op(pair.x_op) << "\n";
  out << "y-operator: " << print_op(pair.y_op) << (y_op ? "" : " (Fourier image)") << "\n";
  out << "formally symmetric: x " << (rep.x_symmetric ? "yes" : "no") << ", y " << (rep.y_symmetric ? "yes" : "no") << "\n";
  out << "endpoints: x = " << ep.x_point << " (" << endpoint_mode_name(ep.x_mode) << "), y = " << ep.y_point << " ("
      << endpoint_mode_name(ep.y_mode) << ")\n";
  if (rep.residuals.empty()) {
    out << "concomitant residuals: none\n";
  } else {
    out << "concomitant residuals (side, point, j, k, C(v^j, v^k)):\n";
    for (const auto& r : rep.residuals) {
      out << "  " << r.side << " " << r.point << " " << r.j << " " << r.k << " " << r.value << "\n";
    }
  }
  if (rep.passed()) {
    out << "bisymmetric: yes\n";
    return ok;
  }
  out << "bisymmetric: no";
  if (!rep.x_symmetric || !rep.y_symmetric) {
    out << " (not formally symmetric)";
  } else {
    const Residual& r = rep.residuals.front();
    out << " (first failing jet pair: " << r.side << " j=" << r.j << " k=" << r.k << " at " << r.point << ")";
  }
  out << "\n";
  return invalid;
}

int cmd_grassmannian(const std::string& file, bool chain, const CommonFlags& flags, std::ostream& out,
                     std::ostream& err) {
  ConditionsFile cf = conditions_from_json(read_json_file(file));
  AdelicPlane plane = make_plane(cf.conditions, cf.ambient);
  out << "V:";
  for (const auto& f : plane.V) out << " [" << f.to_string() << "]";
  out << "\n";
  out << "ambient: " << print_op(constant_operator(plane.ambient)) << "\n";
  out << "q: " << plane.q.to_string() << "\n";
  bool stable = is_sigma_stable(plane);
  out << "sigma-stable: " << (stable ? "yes" : "no") << "\n";
  if (!stable) throw Error(ErrorKind::NotSigmaStable, "span V is not preserved by x -> -x");
  bool lagrangian = is_lagrangian(plane);
  out << "lagrangian: " << (lagrangian ? "yes" : "no") << "\n";
  if (!lagrangian) throw Error(ErrorKind::NotLagrangian, "V is not a Lagrangian subspace of the ambient kernel");
  DarbouxTransform t = to_darboux(plane);
  out << "u: " << print_op(t.u) << "\n";
  out << "p: " << t.p.to_string() << "\n";
  out << "q: " << t.q.to_string() << "\n";
  out << "b(u): " << print_op(t.w) << "\n";
  out << "factorization: u*(1/p^2)u = " << t.unit << " * f(D), f(T) = " << poly_text(t.f, "T") << "\n";
  if (!chain) return ok;
  Problem p = cf.solve;
  p.context_kind = "exp";
  flags.apply(p);
  if (p.context_kind != "exp") throw Error(ErrorKind::InvalidContext, "Grassmannian planes live in the exp context");
  p.u_text = to_string(tree_from_operator(Context::exp(), t.u));
  p.u_dialect = "generators";
  p.p_text = t.p.to_string();
  p.q_text = t.q.to_string();
  return solve_and_emit(p, t, flags, out, err);
}

Var var_of(const std::string& v) {
  if (v == "x") return Var::x;
  if (v == "y") return Var::y;
  throw SchemaError("--var must be x or y");
}

Context context_from(const CommonFlags& flags) {
  Problem p;
  flags.apply(p);
  return make_context(p);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact commuting differential operators for bispectral integral operators", "bispec"};
  app.require_subcommand(1);

  CommonFlags solve_flags;
  std::optional<std::string> solve_file, u_text, u_dialect, p_text, q_text;
  CLI::App* solve = app.add_subcommand("solve", "solve the concomitant system for a problem file");
  solve->add_option("problem", solve_file, "problem JSON file");
  solve->add_option("--u", u_text, "Darboux operator u");
  solve->add_option("--u-dialect", u_dialect, "generators | raw");
  solve->add_option("--p", p_text, "expected p(x)");
  solve->add_option("--q", q_text, "expected q(y)");
  solve_flags.attach(solve, true);

  CommonFlags verify_flags;
  std::string verify_op;
  std::optional<std::string> verify_y;
  CLI::App* verify = app.add_subcommand("verify", "check bisymmetry of an operator at the given endpoints");
  verify->add_option("operator", verify_op, "operator text")->required();
  verify->add_option("--y-op", verify_y, "explicit y-side operator (raw dialect)");
  verify_flags.attach(verify, false);

  CommonFlags grass_flags;
  std::string grass_file;
  bool grass_solve = false;
  CLI::App* grass = app.add_subcommand("grassmannian", "build Darboux data from adelic conditions");
  grass->add_option("conditions", grass_file, "conditions JSON file")->required();
  grass->add_flag("--solve", grass_solve, "continue into solve");
  grass_flags.attach(grass, true);

  CLI::App* algebra = app.add_subcommand("algebra", "operator algebra primitives");
  algebra->require_subcommand(1);
  std::string var_text = "x";
  std::string a_text, b_text;
  CLI::App* mul = algebra->add_subcommand("mul", "product A*B");
  mul->add_option("a", a_text)->required();
  mul->add_option("b", b_text)->required();
  mul->add_option("--var", var_text, "x | y");
  CLI::App* adj = algebra->add_subcommand("adjoint", "formal adjoint");
  adj->add_option("a", a_text)->required();
  adj->add_option("--var", var_text, "x | y");
  CLI::App* app_cmd = algebra->add_subcommand("apply", "apply an operator to a rational function");
  app_cmd->add_option("operator", a_text)->required();
  app_cmd->add_option("function", b_text)->required();
  app_cmd->add_option("--var", var_text, "x | y");
  CommonFlags alg_flags;
  CLI::App* four = algebra->add_subcommand("fourier", "image of a generator expression");
  four->add_option("expression", a_text)->required();
  alg_flags.attach(four, false);
  CommonFlags basis_flags;
  int basis_l = 0;
  int basis_m = 0;
  CLI::App* basis = algebra->add_subcommand("basis", "symmetric basis elements");
  basis->add_option("--l", basis_l)->required();
  basis->add_option("--m", basis_m)->required();
  basis_flags.attach(basis, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : parse_failure;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_file, u_text, u_dialect, p_text, q_text, solve_flags, out, err);
    if (verify->parsed()) return cmd_verify(verify_op, verify_y, verify_flags, out);
    if (grass->parsed()) return cmd_grassmannian(grass_file, grass_solve, grass_flags, out, err);
    Var v = var_of(var_text);
    if (mul->parsed()) {
      out << print_op(parse_op(a_text, v) * parse_op(b_text, v)) << "\n";
    } else if (adj->parsed()) {
      out << print_op(adjoint(parse_op(a_text, v))) << "\n";
    } else if (app_cmd->parsed()) {
      OreOp f = parse_op(b_text, v);
      if (f.order() > 0) throw Error(ErrorKind::InvalidArgument, "the function argument must not contain derivations");
      out << apply(parse_op(a_text, v), f.coeff(0)).to_string() << "\n";
    } else if (four->parsed()) {
      Problem p;
      alg_flags.apply(p);
      Context ctx = make_context(p);
      ParamEnv env = resolve_params(p.param_texts);
      out << print_op(fourier(ctx, parse(a_text, ctx.dialect(), env)).y_op) << "\n";
    } else if (basis->parsed()) {
      Context ctx = context_from(basis_flags);
      for (const auto& b : sym_basis(ctx, basis_l, basis_m)) {
        out << b.family << "(" << b.j << "," << b.k << "): " << to_string(b.expr.tree) << " | "
            << print_op(b.expr.x_op) << " | " << print_op(b.expr.y_op) << "\n";
      }
    }
    return ok;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return parse_failure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const Json::parse_error& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return parse_failure;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return invalid;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return invalid;
  }
}

}  // namespace bispectral::cli
