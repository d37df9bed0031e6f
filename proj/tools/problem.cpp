#include "problem.hpp"

#include <algorithm>

#include "bispectral/error.hpp"
#include "bispectral/parser.hpp"

namespace bispectral::cli {

namespace {

std::string text_field(const Json& j, const char* key, const std::string& where) {
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw SchemaError(where + "." + key + " must be a string (exact literal) or an integer");
}

int int_field(const Json& j, const char* key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw SchemaError(where + "." + key + " must be a nonnegative integer");
  return v.get<int>();
}

FamilyBounds family_bounds(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw SchemaError(where + " must be a pair [l, m] of integers");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

void read_endpoints(const Json& j, Problem& p) {
  if (!j.contains("endpoints")) return;
  const Json& e = j.at("endpoints");
  if (e.contains("x")) {
    if (e["x"].contains("point")) p.x_point = text_field(e["x"], "point", "endpoints.x");
    if (e["x"].contains("mode")) p.x_mode = e["x"]["mode"].get<std::string>();
  }
  if (e.contains("y")) {
    if (e["y"].contains("point")) p.y_point = text_field(e["y"], "point", "endpoints.y");
    if (e["y"].contains("mode")) p.y_mode = e["y"]["mode"].get<std::string>();
  }
}

void read_params(const Json& j, Problem& p) {
  if (!j.contains("params")) return;
  const Json& ps = j.at("params");
  if (!ps.is_object()) throw SchemaError("params must be an object of name: value");
  for (const auto& [name, v] : ps.items()) {
    p.param_texts.emplace_back(name, v.is_string() ? v.get<std::string>() : v.dump());
  }
}

}  // namespace

std::string poly_text(const Poly& p, const char* var) {
  std::string s = p.to_string();
  std::string out;
  for (char c : s) {
    if (c == 'x' || c == 'y') {
      out += var;
    } else {
      out += c;
    }
  }
  return out;
}

CandidateBounds bounds_from_json(const Json& b) {
  CandidateBounds out;
  if (!b.is_object()) throw SchemaError("bounds must be an object");
  if (b.contains("u_family")) out.u_family = family_bounds(b["u_family"], "bounds.u_family");
  if (b.contains("p_family")) out.p_family = family_bounds(b["p_family"], "bounds.p_family");
  if (b.contains("constant")) {
    if (!b["constant"].is_boolean()) throw SchemaError("bounds.constant must be a boolean");
    out.include_constant = b["constant"].get<bool>();
  }
  return out;
}

Problem problem_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("problem must be a JSON object");
  try {
    Problem p;
    if (j.contains("context")) {
      const Json& c = j["context"];
      if (c.is_string()) {
        p.context_kind = c.get<std::string>();
      } else {
        p.context_kind = c.at("kind").get<std::string>();
        if (c.contains("nu")) p.nu = text_field(c, "nu", "context");
      }
    }
    read_params(j, p);
    if (j.contains("u")) {
      const Json& u = j["u"];
      if (u.is_string()) {
        p.u_text = u.get<std::string>();
      } else {
        p.u_text = u.at("text").get<std::string>();
        if (u.contains("dialect")) p.u_dialect = u["dialect"].get<std::string>();
      }
    }
    if (j.contains("p")) p.p_text = text_field(j, "p", "problem");
    if (j.contains("q")) p.q_text = text_field(j, "q", "problem");
    read_endpoints(j, p);
    if (j.contains("L")) p.L = int_field(j, "L", "problem");
    if (j.contains("M")) p.M = int_field(j, "M", "problem");
    if (j.contains("bounds")) p.bounds = bounds_from_json(j["bounds"]);
    return p;
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("problem file: ") + e.what());
  }
}

Json problem_to_json(const Problem& p) {
  Json j;
  j["context"] = {{"kind", p.context_kind}};
  if (p.nu) j["context"]["nu"] = *p.nu;
  if (!p.param_texts.empty()) {
    Json ps = Json::object();
    for (const auto& [k, v] : p.param_texts) ps[k] = v;
    j["params"] = ps;
  }
  if (p.u_text) j["u"] = {{"text", *p.u_text}, {"dialect", p.u_dialect}};
  if (p.p_text) j["p"] = *p.p_text;
  if (p.q_text) j["q"] = *p.q_text;
  j["endpoints"] = {{"x", {{"point", p.x_point}, {"mode", p.x_mode}}}, {"y", {{"point", p.y_point}, {"mode", p.y_mode}}}};
  if (p.L) j["L"] = *p.L;
  if (p.M) j["M"] = *p.M;
  if (!p.bounds.empty()) {
    Json b = Json::object();
    if (p.bounds.u_family) b["u_family"] = {p.bounds.u_family->l, p.bounds.u_family->m};
    if (p.bounds.p_family) b["p_family"] = {p.bounds.p_family->l, p.bounds.p_family->m};
    if (p.bounds.include_constant) b["constant"] = *p.bounds.include_constant;
    j["bounds"] = b;
  }
  return j;
}

ParamEnv resolve_params(const std::vector<std::pair<std::string, std::string>>& texts) {
  ParamEnv env;
  for (const auto& [name, text] : texts) {
    ParamEnv one{{name, GaussianRational(0)}};
    validate_env(one);
    env[name] = parse_scalar(text, env);
  }
  return env;
}

Context make_context(const Problem& p) {
  ParamEnv env = resolve_params(p.param_texts);
  if (p.context_kind == "exp") return Context::exp();
  if (p.context_kind == "airy") return Context::airy();
  if (p.context_kind == "bessel") {
    if (!p.nu) throw Error(ErrorKind::InvalidContext, "the Bessel context needs nu");
    return Context::bessel(parse_scalar(*p.nu, env));
  }
  throw Error(ErrorKind::InvalidContext, "unknown context '" + p.context_kind + "' (expected exp, airy or bessel)");
}

EndpointSpec make_endpoints(const Problem& p) {
  ParamEnv env = resolve_params(p.param_texts);
  EndpointSpec ep;
  ep.x_point = parse_scalar(p.x_point, env);
  ep.y_point = parse_scalar(p.y_point, env);
  ep.x_mode = parse_endpoint_mode(p.x_mode);
  ep.y_mode = parse_endpoint_mode(p.y_mode);
  return ep;
}

DarbouxTransform make_transform(const Problem& p, const Context& ctx) {
  ParamEnv env = resolve_params(p.param_texts);
  if (ctx.kind == ContextKind::bessel && !env.count("nu")) env["nu"] = ctx.nu;
  if (!p.u_text) return trivial_transform(ctx);
  GenExpr u;
  if (p.u_dialect == "generators") {
    u = fourier(ctx, parse(*p.u_text, ctx.dialect(), env));
  } else if (p.u_dialect == "raw") {
    u = fourier(ctx, tree_from_operator(ctx, parse_op(*p.u_text, Var::x, env)));
  } else {
    throw SchemaError("u.dialect must be 'generators' or 'raw'");
  }
  std::optional<Poly> po;
  std::optional<Poly> qo;
  if (p.p_text) po = parse_poly(*p.p_text, Var::x, env);
  if (p.q_text) qo = parse_poly(*p.q_text, Var::y, env);
  return build_transform(ctx, u, po, qo);
}

std::pair<int, int> default_degrees(const Problem& p, const DarbouxTransform& t) {
  int d = std::max(1, t.d1 * t.d2);
  return {p.L.value_or(d), p.M.value_or(d)};
}

Json pair_to_json(const CandidatePair& c) {
  Json j;
  j["x"] = print_op(c.x_op);
  j["y"] = print_op(c.y_op);
  j["order"] = c.x_op.order();
  j["coorder"] = c.y_op.order();
  return j;
}

Json transform_to_json(const DarbouxTransform& t) {
  Json j;
  j["u"] = print_op(t.u);
  j["b_u"] = print_op(t.w);
  j["p"] = t.p.to_string();
  j["q"] = t.q.to_string();
  j["bidegree"] = {t.d1, t.d2};
  j["factorization_x"] = {{"unit", t.unit.to_string()}, {"f", poly_text(t.f, "T")}};
  j["factorization_y"] = {{"unit", t.unit_y.to_string()}, {"f", poly_text(t.g, "T")}};
  return j;
}

Json result_to_json(const Problem& p, const DarbouxTransform& t, int L, int M, const SolveResult& r) {
  Json j;
  j["problem"] = problem_to_json(p);
  j["transform"] = transform_to_json(t);
  j["degrees"] = {{"L", L}, {"M", M}};
  j["system"] = {{"candidates", r.stats.candidates},     {"independent", r.stats.independent},
                 {"rows", r.stats.rows},                 {"rank", r.stats.rank},
                 {"jet_order_x", r.stats.jet_order_x},   {"jet_order_y", r.stats.jet_order_y}};
  j["lower_bound"] = {{"value", r.lower_bound}, {"positive_order_guaranteed", r.positive_order_guaranteed}};
  j["dimension"] = r.dimension;
  Json basis = Json::array();
  for (const auto& b : r.solution_basis) basis.push_back(pair_to_json(b));
  j["basis"] = basis;
  j["witness"] = r.nonconstant_witness ? pair_to_json(*r.nonconstant_witness) : Json(nullptr);
  return j;
}

ConditionsFile conditions_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("conditions file must be a JSON object");
  try {
    ConditionsFile f;
    read_params(j, f.solve);
    ParamEnv env = resolve_params(f.solve.param_texts);
    const Json& cs = j.at("conditions");
    if (!cs.is_array() || cs.empty()) throw SchemaError("conditions must be a nonempty array");
    for (const auto& c : cs) {
      ConditionFunctional chi;
      chi.point = parse_scalar(text_field(c, "point", "conditions[]"), env);
      const Json& co = c.at("coeffs");
      if (!co.is_array() || co.empty()) throw SchemaError("conditions[].coeffs must be a nonempty array");
      for (const auto& a : co) chi.coeffs.push_back(parse_scalar(a.is_string() ? a.get<std::string>() : a.dump(), env));
      f.conditions.push_back(std::move(chi));
    }
    if (j.contains("ambient")) {
      ExponentMultiset e;
      for (const auto& a : j["ambient"]) {
        e[parse_scalar(text_field(a, "point", "ambient[]"), env)] += int_field(a, "multiplicity", "ambient[]");
      }
      f.ambient = e;
    }
    read_endpoints(j, f.solve);
    if (j.contains("L")) f.solve.L = int_field(j, "L", "conditions file");
    if (j.contains("M")) f.solve.M = int_field(j, "M", "conditions file");
    return f;
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("conditions file: ") + e.what());
  }
}

}  // namespace bispectral::cli
